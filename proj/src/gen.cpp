#include "plmu/gen.hpp"

namespace plmu {

namespace {

enum class Pick { Leaf, Or, And, Diamond, Box, Mu, Nu, Coprod, Prod, Pgt0, Peq1 };

struct Gen {
    const FormulaGenConfig& cfg;
    Rng& rng;
    uint32_t binderCounter = 0;
    uint32_t sugarCounter = 0;
    std::vector<std::string> scope;

    std::string freshBinder() { return "X" + std::to_string(binderCounter++); }
    std::string freshSugar() {
        return std::string(kReservedPrefix) + std::to_string(sugarCounter++);
    }

    Formula tt() {
        std::string x = freshSugar();
        return Formula::nu(x, Formula::var(x));
    }
    Formula ff() {
        std::string x = freshSugar();
        return Formula::mu(x, Formula::var(x));
    }

    const std::string& pickLabel() { return cfg.labels[rng.below(cfg.labels.size())]; }

    Formula leaf() {
        uint32_t options = 2 + (scope.empty() ? 0 : 2) + (cfg.freeVars.empty() ? 0 : 1);
        uint32_t r = static_cast<uint32_t>(rng.below(options));
        if (r == 0) return tt();
        if (r == 1) return ff();
        if (!scope.empty() && r <= 3) return Formula::var(scope[rng.below(scope.size())]);
        return Formula::var(cfg.freeVars[rng.below(cfg.freeVars.size())]);
    }

    Formula gen(uint32_t depth) {
        if (depth == 0) return leaf();
        const uint32_t wBranch = cfg.branchingLight ? 1 : 3;
        const uint32_t wThresh = cfg.allowThresholds ? (cfg.branchingLight ? 1 : 2) : 0;
        std::vector<std::pair<Pick, uint32_t>> table = {
            {Pick::Leaf, 2},    {Pick::Or, 3},      {Pick::And, 3},
            {Pick::Diamond, 3}, {Pick::Box, 2},     {Pick::Mu, 2},
            {Pick::Nu, 2},      {Pick::Coprod, wBranch}, {Pick::Prod, wBranch},
            {Pick::Pgt0, wThresh}, {Pick::Peq1, wThresh},
        };
        uint32_t total = 0;
        for (auto& [_, w] : table) total += w;
        uint32_t r = static_cast<uint32_t>(rng.below(total));
        Pick pick = Pick::Leaf;
        for (auto& [p, w] : table) {
            if (r < w) {
                pick = p;
                break;
            }
            r -= w;
        }

        switch (pick) {
        case Pick::Leaf: return leaf();
        case Pick::Or: {
            Formula l = gen(depth - 1), r2 = gen(depth - 1);
            return Formula::disj(std::move(l), std::move(r2));
        }
        case Pick::And: {
            Formula l = gen(depth - 1), r2 = gen(depth - 1);
            return Formula::conj(std::move(l), std::move(r2));
        }
        case Pick::Coprod: {
            Formula l = gen(depth - 1), r2 = gen(depth - 1);
            return Formula::coprod(std::move(l), std::move(r2));
        }
        case Pick::Prod: {
            Formula l = gen(depth - 1), r2 = gen(depth - 1);
            return Formula::prod(std::move(l), std::move(r2));
        }
        case Pick::Diamond: return Formula::diamond(pickLabel(), gen(depth - 1));
        case Pick::Box: return Formula::box(pickLabel(), gen(depth - 1));
        case Pick::Mu: {
            std::string x = freshBinder();
            scope.push_back(x);
            Formula body = gen(depth - 1);
            scope.pop_back();
            return Formula::mu(x, Formula::disj(std::move(body), Formula::var(x)));
        }
        case Pick::Nu: {
            std::string x = freshBinder();
            scope.push_back(x);
            Formula body = gen(depth - 1);
            scope.pop_back();
            return Formula::nu(x, Formula::conj(std::move(body), Formula::var(x)));
        }
        case Pick::Pgt0: {
            std::string x = freshSugar();
            return Formula::mu(x, Formula::coprod(gen(depth - 1), Formula::var(x)));
        }
        case Pick::Peq1: {
            std::string x = freshSugar();
            return Formula::nu(x, Formula::prod(gen(depth - 1), Formula::var(x)));
        }
        }
        return tt();
    }
};

} // namespace

Formula randomFormula(const FormulaGenConfig& cfg, Rng& rng) {
    Gen g{cfg, rng, 0, 0, {}};
    return g.gen(cfg.maxDepth);
}

Env randomEnv(const Plts& m, const std::vector<std::string>& names, Rng& rng) {
    Env rho;
    for (const std::string& x : names) {
        Valuation v(m.stateCount(), 0.0);
        for (double& p : v) p = rng.real01();
        rho.bindings[x] = std::move(v);
    }
    return rho;
}

} // namespace plmu
