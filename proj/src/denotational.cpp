#include "plmu/denotational.hpp"

#include "plmu/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace plmu {

double coproduct(double x, double y) {
    if (!(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0))
        throw std::domain_error("coproduct: arguments must lie in [0,1]");
    if (x == 1.0 || y == 1.0) return 1.0;
    double r = x + y - x * y;
    return std::clamp(r, 0.0, 1.0);
}

uint64_t approxWeight(uint32_t n) {
    if (n >= 6) return std::numeric_limits<uint64_t>::max(); // 2^(2^6+1) > 2^64
    return uint64_t{1} << ((uint64_t{1} << n) + 1);
}

double approxWeightInv(uint32_t n) {
    if (n >= 11) return 0.0; // exponent below double range
    return std::ldexp(1.0, -static_cast<int>((uint64_t{1} << n) + 1));
}

double partialProduct(const std::vector<double>& xs, bool coprod) {
    double acc = coprod ? 0.0 : 1.0;
    for (double x : xs) acc = coprod ? coproduct(acc, x) : acc * x;
    return acc;
}

void FixpointConfig::check() const {
    if (!(tolerance >= 1e-12))
        throw ValidationError("FixpointConfig: tolerance must be >= 1e-12");
    if (maxIters < 1)
        throw ValidationError("FixpointConfig: maxIters must be >= 1");
}

bool ConvergenceReport::allConverged() const {
    for (const auto& b : binders)
        if (!b.converged) return false;
    return true;
}

std::string ConvergenceReport::toTable() const {
    std::ostringstream os;
    os << "binder     solves  iterations  residual      status\n";
    for (const auto& b : binders) {
        std::string var = b.var;
        if (var.size() < 10) var.resize(10, ' ');
        std::string iters = std::to_string(b.iterations);
        if (iters.size() < 10) iters.resize(10, ' ');
        std::string solves = std::to_string(b.solves);
        if (solves.size() < 6) solves.resize(6, ' ');
        std::string res = fmtDouble(b.residual);
        if (res.size() < 12) res.resize(12, ' ');
        os << var << " " << solves << "  " << iters << "  " << res << "  "
           << (b.exact ? "exact" : b.converged ? "converged" : "NOT CONVERGED") << "\n";
    }
    return os.str();
}

void ConvergenceReport::merge(const ConvergenceReport& other) {
    for (const auto& ob : other.binders) {
        bool found = false;
        for (auto& b : binders) {
            if (b.var == ob.var) {
                b.iterations += ob.iterations;
                b.solves += ob.solves;
                b.residual = std::max(b.residual, ob.residual);
                b.converged = b.converged && ob.converged;
                b.exact = b.exact && ob.exact;
                found = true;
                break;
            }
        }
        if (!found) binders.push_back(ob);
    }
}

double expectation(const std::vector<std::pair<uint32_t, double>>& weights,
                   const Valuation& values) {
    double num = 0.0, mass = 0.0;
    for (const auto& [q, w] : weights) {
        num += w * values[q];
        mass += w;
    }
    if (mass <= 0.0) return 0.0;
    return std::clamp(num / mass, 0.0, 1.0);
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace {

// If f is mu X.(G (+) X) or nu X.(G * X) with X not free in G, returns G.
// Both orders of the commutative connective are accepted.
const Formula* thresholdBase(const Formula& f) {
    if (!f.isBinder()) return nullptr;
    const Formula& b = f.body();
    FKind want = f.kind() == FKind::Mu ? FKind::Coprod : FKind::Prod;
    if (b.kind() != want) return nullptr;
    const std::string& x = f.name();
    auto isVarX = [&](const Formula& g) { return g.kind() == FKind::Var && g.name() == x; };
    if (isVarX(b.rhs()) && !freeVars(b.lhs()).count(x)) return &b.lhs();
    if (isVarX(b.lhs()) && !freeVars(b.rhs()).count(x)) return &b.rhs();
    return nullptr;
}

struct Evaluator {
    const Plts& m;
    const FixpointConfig& cfg;
    std::map<std::string, Valuation> env;
    ConvergenceReport report;

    BinderStats& statsFor(const std::string& var) {
        for (auto& b : report.binders)
            if (b.var == var) return b;
        report.binders.push_back(BinderStats{var, 0, 0, 0.0, true, true});
        return report.binders.back();
    }

    Valuation run(const Formula& f) {
        const uint32_t n = m.stateCount();
        switch (f.kind()) {
            case FKind::Var: {
                auto it = env.find(f.name());
                if (it != env.end()) return it->second;
                return Valuation(n, 0.0);
            }
            case FKind::Or:
            case FKind::And: {
                Valuation l = run(f.lhs()), r = run(f.rhs());
                bool mx = f.kind() == FKind::Or;
                for (uint32_t i = 0; i < n; ++i)
                    l[i] = mx ? std::max(l[i], r[i]) : std::min(l[i], r[i]);
                return l;
            }
            case FKind::Coprod:
            case FKind::Prod: {
                Valuation l = run(f.lhs()), r = run(f.rhs());
                bool co = f.kind() == FKind::Coprod;
                for (uint32_t i = 0; i < n; ++i)
                    l[i] = co ? coproduct(l[i], r[i]) : l[i] * r[i];
                return l;
            }
            case FKind::Diamond:
            case FKind::Box: {
                Valuation g = run(f.body());
                bool dia = f.kind() == FKind::Diamond;
                Valuation out(n, dia ? 0.0 : 1.0); // empty sup / empty inf
                auto lab = m.labelIndex(f.name());
                if (!lab) return out; // unknown label: no transitions anywhere
                for (uint32_t p = 0; p < n; ++p) {
                    for (uint32_t id : m.trans[p][*lab]) {
                        double e = 0.0, mass = 0.0;
                        for (const auto& w : m.dists[id].entries) {
                            e += w.w * g[w.state];
                            mass += w.w;
                        }
                        e = std::clamp(e / mass, 0.0, 1.0);
                        out[p] = dia ? std::max(out[p], e) : std::min(out[p], e);
                    }
                }
                return out;
            }
            case FKind::Mu:
            case FKind::Nu:
                return fixpoint(f);
        }
        return Valuation(n, 0.0); // unreachable
    }

    Valuation fixpoint(const Formula& f) {
        const uint32_t n = m.stateCount();
        const std::string& x = f.name();
        bool isMu = f.kind() == FKind::Mu;

        if (cfg.exactThresholds) {
            if (const Formula* base = thresholdBase(f)) {
                Valuation g = run(*base);
                Valuation out(n);
                for (uint32_t i = 0; i < n; ++i)
                    out[i] = isMu ? (g[i] > 0.0 ? 1.0 : 0.0) : (g[i] == 1.0 ? 1.0 : 0.0);
                BinderStats& st = statsFor(x);
                st.solves += 1;
                return out;
            }
        }

        Valuation cur(n, isMu ? 0.0 : 1.0);
        auto saved = env.find(x) != env.end() ? std::optional<Valuation>(env[x])
                                              : std::nullopt;
        uint64_t it = 0;
        double residual = 0.0;
        bool converged = false;
        while (it < cfg.maxIters) {
            env[x] = cur;
            Valuation next = run(f.body());
            ++it;
            residual = 0.0;
            for (uint32_t i = 0; i < n; ++i)
                residual = std::max(residual, std::abs(next[i] - cur[i]));
            cur = std::move(next);
            if (residual < cfg.tolerance) { converged = true; break; }
        }
        if (saved) env[x] = std::move(*saved); else env.erase(x);

        BinderStats& st = statsFor(x);
        st.iterations += it;
        st.solves += 1;
        st.residual = std::max(st.residual, residual);
        st.converged = st.converged && converged;
        st.exact = false;
        return cur;
    }
};

} // namespace

EvalResult eval(const Formula& f, const Env& rho, const Plts& m, const FixpointConfig& cfg) {
    cfg.check();
    Evaluator ev{m, cfg, rho.bindings, {}};
    Valuation v = ev.run(f);
    for (double& x : v) x = std::clamp(x, 0.0, 1.0);
    return {std::move(v), std::move(ev.report)};
}

namespace {

void annotateRec(const Formula& f, Env& acc, const Plts& m, const FixpointConfig& cfg,
                 ConvergenceReport& rep) {
    switch (f.kind()) {
        case FKind::Var: return;
        case FKind::Or:
        case FKind::And:
        case FKind::Coprod:
        case FKind::Prod:
            annotateRec(f.lhs(), acc, m, cfg, rep);
            annotateRec(f.rhs(), acc, m, cfg, rep);
            return;
        case FKind::Diamond:
        case FKind::Box:
            annotateRec(f.body(), acc, m, cfg, rep);
            return;
        case FKind::Mu:
        case FKind::Nu: {
            EvalResult r = eval(f, acc, m, cfg);
            rep.merge(r.report);
            acc.bindings[f.name()] = std::move(r.value);
            annotateRec(f.body(), acc, m, cfg, rep);
            return;
        }
    }
}

} // namespace

AnnotateResult annotateEnv(const Formula& f, const Env& rho, const Plts& m,
                           const FixpointConfig& cfg) {
    cfg.check();
    AnnotateResult out{rho, {}};
    annotateRec(f, out.env, m, cfg, out.report);
    return out;
}

Env loadEnv(const std::string& text, const Plts& m) {
    Env env;
    std::istringstream is(text);
    std::string raw;
    int lineNo = 0;
    while (std::getline(is, raw)) {
        ++lineNo;
        if (size_t h = raw.find('#'); h != std::string::npos) raw.erase(h);
        std::istringstream ls(raw);
        std::string kw, var, state, prob;
        if (!(ls >> kw)) continue;
        if (kw != "env" || !(ls >> var >> state >> prob))
            throw ParseError("expected 'env X state prob'", lineNo, 1);
        std::string rest;
        if (ls >> rest) throw ParseError("trailing tokens on env line", lineNo, 1);
        auto s = m.stateIndex(state);
        if (!s) throw ParseError("unknown state '" + state + "'", lineNo, 1);
        if (isReservedName(var))
            throw ParseError("reserved variable name '" + var + "'", lineNo, 1);
        double v = 0.0;
        {
            // reuse the model probability syntax: decimal or rational
            size_t slash = prob.find('/');
            try {
                if (slash != std::string::npos) {
                    double num = std::stod(prob.substr(0, slash));
                    double den = std::stod(prob.substr(slash + 1));
                    v = num / den;
                } else {
                    v = std::stod(prob);
                }
            } catch (const std::exception&) {
                throw ParseError("bad probability '" + prob + "'", lineNo, 1);
            }
        }
        if (!(v >= 0.0 && v <= 1.0))
            throw ParseError("probability out of range '" + prob + "'", lineNo, 1);
        auto it = env.bindings.find(var);
        if (it == env.bindings.end())
            it = env.bindings.emplace(var, Valuation(m.stateCount(), 0.0)).first;
        it->second[*s] = v;
    }
    return env;
}

} // namespace plmu
