#include "plmu/game.hpp"

#include "plmu/errors.hpp"
#include "plmu/rng.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_set>

namespace plmu {

std::vector<uint32_t> FiniteTree::pathTo(uint32_t node) const {
    std::vector<uint32_t> path;
    for (uint32_t cur = node;; cur = nodes[cur].parent) {
        path.push_back(nodes[cur].state);
        if (cur == 0) break;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

bool TruncatedPlay::hasFrontier() const {
    return std::find(kind.begin(), kind.end(), LeafKind::Frontier) != kind.end();
}

Strategy makeGreedyStrategy(const Arena& a, std::vector<double> v, Owner player) {
    return [&a, v = std::move(v), player](const std::vector<uint32_t>& path)
               -> std::optional<uint32_t> {
        const uint32_t s = path.back();
        const auto& succ = a.edges[s];
        if (succ.empty()) return std::nullopt;
        uint32_t best = succ[0];
        for (uint32_t t : succ) {
            if (player == Owner::P1 ? v[t] > v[best] : v[t] < v[best]) best = t;
        }
        return best;
    };
}

Strategy makeSeededStrategy(const Arena& a, uint64_t seed) {
    return [&a, seed](const std::vector<uint32_t>& path) -> std::optional<uint32_t> {
        const uint32_t s = path.back();
        const auto& succ = a.edges[s];
        if (succ.empty()) return std::nullopt;
        return succ[hashSpan(seed, path) % succ.size()];
    };
}

namespace {

void checkTree(const Arena& a, const FiniteTree& f) {
    if (f.nodes.empty()) throw ValidationError("finite tree: no root");
    const uint32_t n = static_cast<uint32_t>(f.nodes.size());
    std::vector<uint32_t> seenAsChild(n, 0);
    for (uint32_t i = 0; i < n; ++i) {
        const auto& nd = f.nodes[i];
        if (nd.state >= a.size()) throw ValidationError("finite tree: state id out of range");
        std::unordered_set<uint32_t> childStates;
        for (uint32_t c : nd.children) {
            if (c >= n || c <= i)
                throw ValidationError("finite tree: child ids must follow their parent");
            if (f.nodes[c].parent != i) throw ValidationError("finite tree: parent link broken");
            const auto& succ = a.edges[nd.state];
            if (std::find(succ.begin(), succ.end(), f.nodes[c].state) == succ.end())
                throw ValidationError("finite tree: child is not an arena successor");
            if (!childStates.insert(f.nodes[c].state).second)
                throw ValidationError("finite tree: duplicate child state (paths must be a set)");
            ++seenAsChild[c];
        }
    }
    for (uint32_t i = 1; i < n; ++i)
        if (seenAsChild[i] != 1) throw ValidationError("finite tree: node not linked exactly once");
}

double natureFactor(const Arena& a, uint32_t s, uint32_t childState) {
    double mass = 0.0, w = 0.0;
    const auto& succ = a.edges[s];
    for (size_t i = 0; i < succ.size(); ++i) {
        mass += a.nature[s][i];
        if (succ[i] == childState) w = a.nature[s][i];
    }
    return mass > 0.0 ? w / mass : 0.0;
}

} // namespace

double cylinderProb(const MarkovBranchingPlay& m, const FiniteTree& f) {
    const Arena& a = *m.arena;
    checkTree(a, f);
    if (f.nodes[0].state != m.root) return 0.0;

    double prob = 1.0;
    // Index order is topological, so a running path per node is rebuildable
    // from the parent chain; trees here are small.
    for (uint32_t i = 0; i < f.nodes.size(); ++i) {
        const auto& nd = f.nodes[i];
        if (nd.children.empty()) continue;
        switch (a.owner[nd.state]) {
        case Owner::P1:
        case Owner::P2: {
            if (nd.children.size() > 1) return 0.0; // player nodes branch uniquely
            const Strategy& sigma = a.owner[nd.state] == Owner::P1 ? m.sigma1 : m.sigma2;
            auto choice = sigma(f.pathTo(i));
            if (!choice || *choice != f.nodes[nd.children[0]].state) return 0.0;
            break;
        }
        case Owner::Nature: {
            if (nd.children.size() > 1) return 0.0; // the cylinder is empty
            prob *= natureFactor(a, nd.state, f.nodes[nd.children[0]].state);
            if (prob == 0.0) return 0.0;
            break;
        }
        case Owner::Branch1:
        case Owner::Branch2:
            break; // any subset of the full branching is a valid restriction
        }
    }
    return prob;
}

TruncatedPlay samplePlay(const MarkovBranchingPlay& m, uint32_t depthBudget, uint32_t nodeBudget,
                         uint64_t seed) {
    if (depthBudget < 1 || nodeBudget < 1)
        throw ValidationError("samplePlay: budgets must be at least 1");
    const Arena& a = *m.arena;

    TruncatedPlay t;
    auto& nodes = t.tree.nodes;
    std::vector<uint32_t> depth;
    std::vector<uint64_t> pathHash;

    auto addNode = [&](uint32_t state, uint32_t parent, uint32_t d, uint64_t h) {
        nodes.push_back({state, parent, {}});
        t.kind.push_back(LeafKind::Internal);
        t.lassoWin.push_back(0);
        t.natureSeed.push_back(0);
        depth.push_back(d);
        pathHash.push_back(h);
        return static_cast<uint32_t>(nodes.size() - 1);
    };

    addNode(m.root, 0, 0, mix64(0, m.root));
    std::deque<uint32_t> work{0};

    while (!work.empty()) {
        const uint32_t node = work.front();
        work.pop_front();
        const uint32_t s = nodes[node].state;
        const auto& succ = a.edges[s];

        if (succ.empty()) {
            t.kind[node] = LeafKind::Terminal;
            continue;
        }
        if (auto lasso = forcedLasso(a, t.tree.pathTo(node))) {
            t.kind[node] = LeafKind::Lasso;
            t.lassoWin[node] = lasso->second ? 1 : 0;
            continue;
        }
        if (depth[node] >= depthBudget) {
            t.kind[node] = LeafKind::Frontier;
            continue;
        }

        std::vector<uint32_t> chosen;
        switch (a.owner[s]) {
        case Owner::P1:
        case Owner::P2: {
            const Strategy& sigma = a.owner[s] == Owner::P1 ? m.sigma1 : m.sigma2;
            auto choice = sigma(t.tree.pathTo(node));
            if (!choice || std::find(succ.begin(), succ.end(), *choice) == succ.end())
                throw ValidationError("samplePlay: strategy returned an invalid choice");
            chosen.push_back(*choice);
            break;
        }
        case Owner::Nature: {
            const uint64_t nodeSeed = mix64(seed, pathHash[node]);
            t.natureSeed[node] = nodeSeed;
            double mass = 0.0;
            for (double w : a.nature[s]) mass += w;
            Rng rng(nodeSeed);
            const double r = rng.real01() * mass;
            double acc = 0.0;
            uint32_t pick = static_cast<uint32_t>(succ.size()) - 1;
            for (size_t i = 0; i < succ.size(); ++i) {
                acc += a.nature[s][i];
                if (r < acc) {
                    pick = static_cast<uint32_t>(i);
                    break;
                }
            }
            chosen.push_back(succ[pick]);
            break;
        }
        case Owner::Branch1:
        case Owner::Branch2:
            chosen.assign(succ.begin(), succ.end());
            break;
        }

        if (nodes.size() + chosen.size() > nodeBudget) {
            t.kind[node] = LeafKind::Frontier;
            continue;
        }
        for (uint32_t cs : chosen) {
            uint32_t child = addNode(cs, node, depth[node] + 1, mix64(pathHash[node], cs));
            nodes[node].children.push_back(child);
            work.push_back(child);
        }
    }
    return t;
}

bool solveInner(const TruncatedPlay& t, const Arena& a, SolveMode mode) {
    checkTree(a, t.tree);
    const auto& nodes = t.tree.nodes;
    if (t.kind.size() != nodes.size() || t.lassoWin.size() != nodes.size())
        throw ValidationError("solveInner: annotation vectors out of step with the tree");

    std::vector<uint8_t> wins(nodes.size(), 0);
    for (uint32_t i = static_cast<uint32_t>(nodes.size()); i-- > 0;) {
        const auto& nd = nodes[i];
        if (nd.children.empty()) {
            switch (t.kind[i]) {
            case LeafKind::Terminal:
                if (!a.terminal(nd.state))
                    throw ValidationError("solveInner: Terminal leaf at a non-terminal state");
                wins[i] = a.priority[nd.state] % 2;
                break;
            case LeafKind::Lasso:
                wins[i] = t.lassoWin[i];
                break;
            case LeafKind::Frontier:
                wins[i] = mode == SolveMode::Optimistic ? 1 : 0;
                break;
            case LeafKind::Internal:
                throw ValidationError("solveInner: leaf marked Internal");
            }
            continue;
        }
        if (t.kind[i] != LeafKind::Internal)
            throw ValidationError("solveInner: internal node marked as a leaf");
        switch (a.owner[nd.state]) {
        case Owner::Branch1: {
            bool any = false;
            for (uint32_t c : nd.children) any = any || wins[c];
            wins[i] = any;
            break;
        }
        case Owner::Branch2: {
            bool all = true;
            for (uint32_t c : nd.children) all = all && wins[c];
            wins[i] = all;
            break;
        }
        default:
            if (nd.children.size() != 1)
                throw ValidationError("solveInner: non-branch node must have one child");
            wins[i] = wins[nd.children[0]];
            break;
        }
    }
    return wins[0] != 0;
}

ValueEstimate estimateValue(const Arena& a, uint32_t s0, const Strategy& sigma1,
                            const Strategy& sigma2, uint32_t nSamples, uint32_t depthBudget,
                            uint32_t nodeBudget, uint64_t seed) {
    if (nSamples < 1) throw ValidationError("estimateValue: need at least one sample");
    MarkovBranchingPlay m{&a, s0, sigma1, sigma2};
    uint64_t winsLo = 0, winsHi = 0;
    for (uint32_t i = 0; i < nSamples; ++i) {
        TruncatedPlay t = samplePlay(m, depthBudget, nodeBudget, mix64(seed, i));
        if (solveInner(t, a, SolveMode::Pessimistic)) ++winsLo;
        if (solveInner(t, a, SolveMode::Optimistic)) ++winsHi;
    }
    ValueEstimate e;
    e.lo = static_cast<double>(winsLo) / nSamples;
    e.hi = static_cast<double>(winsHi) / nSamples;
    e.stderrLo = std::sqrt(e.lo * (1.0 - e.lo) / nSamples);
    e.stderrHi = std::sqrt(e.hi * (1.0 - e.hi) / nSamples);
    e.samples = nSamples;
    e.depth = depthBudget;
    e.nodes = nodeBudget;
    e.seed = seed;
    return e;
}

ValueEstimate bestResponseSweep(const Arena& a, uint32_t s0, const Strategy& fixed,
                                Owner fixedPlayer, const std::vector<uint64_t>& seeds,
                                const std::vector<double>& v, uint32_t nSamples,
                                uint32_t depthBudget, uint32_t nodeBudget, uint64_t seed) {
    const Owner advPlayer = fixedPlayer == Owner::P1 ? Owner::P2 : Owner::P1;
    std::vector<Strategy> adversaries;
    adversaries.push_back(makeGreedyStrategy(a, v, advPlayer));
    for (uint64_t s : seeds) adversaries.push_back(makeSeededStrategy(a, s));

    std::optional<ValueEstimate> worst;
    for (const Strategy& adv : adversaries) {
        const Strategy& s1 = fixedPlayer == Owner::P1 ? fixed : adv;
        const Strategy& s2 = fixedPlayer == Owner::P1 ? adv : fixed;
        ValueEstimate e = estimateValue(a, s0, s1, s2, nSamples, depthBudget, nodeBudget, seed);
        bool better;
        if (!worst) {
            better = true;
        } else if (fixedPlayer == Owner::P1) {
            better = e.lo < worst->lo || (e.lo == worst->lo && e.hi < worst->hi);
        } else {
            better = e.hi > worst->hi || (e.hi == worst->hi && e.lo > worst->lo);
        }
        if (better) worst = e;
    }
    return *worst;
}

} // namespace plmu
