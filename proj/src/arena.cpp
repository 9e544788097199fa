#include "plmu/arena.hpp"

#include "plmu/errors.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_map>

namespace plmu {

const char* ownerName(Owner o) {
    switch (o) {
    case Owner::P1: return "P1";
    case Owner::P2: return "P2";
    case Owner::Nature: return "Nature";
    case Owner::Branch1: return "Branch1";
    case Owner::Branch2: return "Branch2";
    }
    return "?";
}

std::string Arena::describe(uint32_t s, const Plts& m) const {
    const GameState& st = states.at(s);
    switch (st.kind) {
    case GameState::Kind::Bot: return "Bot";
    case GameState::Kind::Top: return "Top";
    case GameState::Kind::PF:
        return "(" + m.states.at(st.state) + ", " + printFormula(subs.at(st.sub)) + ")";
    case GameState::Kind::DF:
        return "(d" + std::to_string(st.dist) + ", " + printFormula(subs.at(st.sub)) + ")";
    }
    return "?";
}

namespace {

struct BinderInfo {
    Formula body;
    bool isMu;
};

void collectBinders(const Formula& f, std::map<std::string, BinderInfo>& out) {
    switch (f.kind()) {
    case FKind::Var:
        return;
    case FKind::Mu:
    case FKind::Nu:
        out.insert({f.name(), BinderInfo{f.body(), f.kind() == FKind::Mu}});
        collectBinders(f.body(), out);
        return;
    case FKind::Diamond:
    case FKind::Box:
        collectBinders(f.body(), out);
        return;
    default:
        collectBinders(f.lhs(), out);
        collectBinders(f.rhs(), out);
        return;
    }
}

// Returns the maximum priority assigned inside the subtree (0 if none).
uint32_t assignRec(const Formula& f, std::map<std::string, uint32_t>& out) {
    switch (f.kind()) {
    case FKind::Var:
        return 0;
    case FKind::Mu:
    case FKind::Nu: {
        uint32_t inner = assignRec(f.body(), out);
        uint32_t p = inner + 1;
        if (p < 2) p = 2;
        bool wantOdd = f.kind() == FKind::Mu;
        if ((p % 2 == 1) != wantOdd) ++p;
        out[f.name()] = p;
        return std::max(p, inner);
    }
    case FKind::Diamond:
    case FKind::Box:
        return assignRec(f.body(), out);
    default:
        return std::max(assignRec(f.lhs(), out), assignRec(f.rhs(), out));
    }
}

} // namespace

std::map<std::string, uint32_t> assignPriorities(const Formula& f) {
    std::map<std::string, uint32_t> out;
    assignRec(f, out);
    return out;
}

Arena buildArena(const Formula& f, const Plts& m, const Env& rho) {
    if (!isNormalForm(f))
        throw ValidationError("buildArena requires a formula in normal form");
    if (!isProductNormalForm(f))
        throw ValidationError("buildArena requires a formula in product normal form");

    Arena a;
    a.subs = subformulas(f);
    a.varPriority = assignPriorities(f);

    std::unordered_map<Formula, uint32_t, FormulaHash> subIndex;
    for (uint32_t i = 0; i < a.subs.size(); ++i) subIndex.emplace(a.subs[i], i);

    std::map<std::string, BinderInfo> binders;
    collectBinders(f, binders);
    const auto fv = freeVars(f);

    const uint32_t n = m.stateCount();

    auto addState = [&](GameState st, Owner ow, uint32_t prio) {
        a.states.push_back(st);
        a.owner.push_back(ow);
        a.priority.push_back(prio);
        a.edges.emplace_back();
        a.nature.emplace_back();
        return static_cast<uint32_t>(a.states.size() - 1);
    };

    const uint32_t botId = addState(GameState{GameState::Kind::Bot, 0, 0, 0}, Owner::P1, 0);
    const uint32_t topId = addState(GameState{GameState::Kind::Top, 0, 0, 0}, Owner::P2, 1);

    // Keys pack (model index, subformula index); PF and DF interned apart.
    std::unordered_map<uint64_t, uint32_t> pfIds;
    std::unordered_map<uint64_t, uint32_t> dfIds;
    auto key = [](uint32_t x, uint32_t sub) {
        return (static_cast<uint64_t>(x) << 32) | sub;
    };

    std::deque<uint32_t> work;

    auto ownerOf = [&](const Formula& g) {
        switch (g.kind()) {
        case FKind::Var: {
            auto it = binders.find(g.name());
            if (it == binders.end()) return Owner::Nature;
            return it->second.isMu ? Owner::P1 : Owner::P2;
        }
        case FKind::Or:
        case FKind::Diamond:
        case FKind::Mu: return Owner::P1;
        case FKind::And:
        case FKind::Box:
        case FKind::Nu: return Owner::P2;
        case FKind::Coprod: return Owner::Branch1;
        case FKind::Prod: return Owner::Branch2;
        }
        return Owner::P1;
    };

    auto internPf = [&](uint32_t p, const Formula& g) {
        uint32_t sub = subIndex.at(g);
        auto [it, fresh] = pfIds.emplace(key(p, sub), 0);
        if (!fresh) return it->second;
        Owner ow = ownerOf(g);
        uint32_t prio = 0;
        if (g.kind() == FKind::Var) {
            auto vp = a.varPriority.find(g.name());
            if (vp != a.varPriority.end()) prio = vp->second;
        }
        uint32_t id = addState(GameState{GameState::Kind::PF, p, 0, sub}, ow, prio);
        it->second = id;
        work.push_back(id);
        return id;
    };

    auto internDf = [&](uint32_t d, const Formula& g) {
        uint32_t sub = subIndex.at(g);
        auto [it, fresh] = dfIds.emplace(key(d, sub), 0);
        if (!fresh) return it->second;
        uint32_t id = addState(GameState{GameState::Kind::DF, 0, d, sub}, Owner::Nature, 0);
        it->second = id;
        work.push_back(id);
        return id;
    };

    for (uint32_t p = 0; p < n; ++p) a.roots.push_back(internPf(p, f));

    while (!work.empty()) {
        uint32_t id = work.front();
        work.pop_front();
        const GameState st = a.states[id];
        const Formula& g = a.subs[st.sub];

        // Interning successors may grow a.edges/a.nature, so successors are
        // collected locally and assigned when the id's row can no longer move.
        std::vector<uint32_t> succ;
        std::vector<double> wts;

        if (st.kind == GameState::Kind::DF) {
            const Distribution& d = m.dists[st.dist];
            for (const WeightEntry& e : d.entries) {
                succ.push_back(internPf(e.state, g));
                wts.push_back(e.w);
            }
        } else {
            const uint32_t p = st.state;
            switch (g.kind()) {
            case FKind::Var: {
                auto it = binders.find(g.name());
                if (it != binders.end()) {
                    succ.push_back(internPf(p, it->second.body));
                } else {
                    // Nature resolves a free variable: Top with the
                    // environment weight, Bot with the complement. Both
                    // edges stay even when one weight is 0; the support
                    // just shrinks.
                    double w = rho.lookup(g.name(), n)[p];
                    succ = {topId, botId};
                    wts = {w, 1.0 - w};
                }
                break;
            }
            case FKind::Mu:
            case FKind::Nu:
                succ.push_back(internPf(p, g.body()));
                break;
            case FKind::Diamond:
            case FKind::Box: {
                auto lab = m.labelIndex(g.name());
                if (lab) {
                    for (uint32_t d : m.trans[p][*lab]) succ.push_back(internDf(d, g.body()));
                }
                break;
            }
            default: { // Or, And, Coprod, Prod
                uint32_t l = internPf(p, g.lhs());
                uint32_t r = internPf(p, g.rhs());
                succ.push_back(l);
                if (r != l) succ.push_back(r); // successor sets, not lists
                break;
            }
            }
        }

        a.edges[id] = std::move(succ);
        a.nature[id] = std::move(wts);
    }

    // Getting stuck loses, so a terminal keeps a priority of its owner's
    // losing parity: 0 for Player 1 states, 1 for Player 2 states. Top and
    // Bot are covered by the same rule.
    for (uint32_t s = 0; s < a.size(); ++s) {
        if (!a.edges[s].empty()) continue;
        if (a.owner[s] == Owner::P2) a.priority[s] = 1;
        else if (a.owner[s] == Owner::P1) a.priority[s] = 0;
    }

    return a;
}

namespace {

void checkPath(const Arena& a, const std::vector<uint32_t>& path, const char* what) {
    if (path.empty()) throw ValidationError(std::string(what) + ": empty path");
    for (uint32_t s : path)
        if (s >= a.size()) throw ValidationError(std::string(what) + ": state id out of range");
    for (size_t i = 0; i + 1 < path.size(); ++i) {
        const auto& succ = a.edges[path[i]];
        if (std::find(succ.begin(), succ.end(), path[i + 1]) == succ.end())
            throw ValidationError(std::string(what) + ": not a path (missing edge " +
                                  std::to_string(path[i]) + " -> " + std::to_string(path[i + 1]) +
                                  ")");
    }
}

} // namespace

bool omegaWinsFinite(const Arena& a, const std::vector<uint32_t>& path) {
    checkPath(a, path, "omegaWinsFinite");
    if (!a.terminal(path.back()))
        throw ValidationError("omegaWinsFinite: path does not end at a terminal state");
    return a.priority[path.back()] % 2 == 1;
}

bool omegaWinsLasso(const Arena& a, const std::vector<uint32_t>& prefix,
                    const std::vector<uint32_t>& cycle) {
    if (cycle.empty()) throw ValidationError("omegaWinsLasso: empty cycle");
    std::vector<uint32_t> path = prefix;
    path.insert(path.end(), cycle.begin(), cycle.end());
    path.push_back(cycle.front());
    checkPath(a, path, "omegaWinsLasso");
    uint32_t maxPrio = 0;
    for (uint32_t s : cycle) maxPrio = std::max(maxPrio, a.priority[s]);
    return maxPrio % 2 == 0;
}

std::optional<std::pair<size_t, bool>> forcedLasso(const Arena& a,
                                                   const std::vector<uint32_t>& path) {
    if (path.empty()) return std::nullopt;
    const uint32_t last = path.back();
    if (last >= a.size() || a.edges[last].size() != 1) return std::nullopt;
    uint32_t maxPrio = 0;
    for (size_t i = path.size() - 1; i-- > 0;) {
        const uint32_t s = path[i];
        if (s >= a.size() || a.edges[s].size() != 1) return std::nullopt;
        maxPrio = std::max(maxPrio, a.priority[s]);
        if (s == last) return std::make_pair(i, maxPrio % 2 == 0);
    }
    return std::nullopt;
}

std::vector<double> valueFunctional(const Arena& a, const std::vector<double>& v) {
    if (v.size() != a.size())
        throw ValidationError("valueFunctional: value vector size mismatch");
    std::vector<double> out(a.size(), 0.0);
    for (uint32_t s = 0; s < a.size(); ++s) {
        const auto& succ = a.edges[s];
        if (succ.empty()) {
            out[s] = static_cast<double>(a.priority[s] % 2);
            continue;
        }
        switch (a.owner[s]) {
        case Owner::P1: {
            double best = 0.0;
            for (uint32_t t : succ) best = std::max(best, v[t]);
            out[s] = best;
            break;
        }
        case Owner::P2: {
            double best = 1.0;
            for (uint32_t t : succ) best = std::min(best, v[t]);
            out[s] = best;
            break;
        }
        case Owner::Nature: {
            // Normalized by total weight so a constant successor value is
            // reproduced exactly even when the stored mass is 1 after
            // rounding.
            double num = 0.0, mass = 0.0;
            for (size_t i = 0; i < succ.size(); ++i) {
                num += a.nature[s][i] * v[succ[i]];
                mass += a.nature[s][i];
            }
            out[s] = mass > 0.0 ? num / mass : 0.0;
            break;
        }
        case Owner::Branch1: {
            double acc = 0.0;
            for (uint32_t t : succ) acc = coproduct(acc, v[t]);
            out[s] = acc;
            break;
        }
        case Owner::Branch2: {
            double acc = 1.0;
            for (uint32_t t : succ) acc *= v[t];
            out[s] = acc;
            break;
        }
        }
    }
    return out;
}

std::vector<double> annotateArenaValues(const Arena& a, const Env& envStar, const Plts& m,
                                        const FixpointConfig& cfg) {
    std::vector<Valuation> subVal(a.subs.size());
    for (size_t i = 0; i < a.subs.size(); ++i)
        subVal[i] = eval(a.subs[i], envStar, m, cfg).value;

    std::vector<double> v(a.size(), 0.0);
    for (uint32_t s = 0; s < a.size(); ++s) {
        const GameState& st = a.states[s];
        switch (st.kind) {
        case GameState::Kind::Bot: v[s] = 0.0; break;
        case GameState::Kind::Top: v[s] = 1.0; break;
        case GameState::Kind::PF: v[s] = subVal[st.sub][st.state]; break;
        case GameState::Kind::DF: {
            std::vector<std::pair<uint32_t, double>> ws;
            for (const WeightEntry& e : m.dists[st.dist].entries) ws.emplace_back(e.state, e.w);
            v[s] = expectation(ws, subVal[st.sub]);
            break;
        }
        }
    }
    return v;
}

std::string dumpArena(const Arena& a, const Plts& m) {
    std::ostringstream os;
    size_t edgeCount = 0;
    for (const auto& e : a.edges) edgeCount += e.size();
    os << "arena states=" << a.size() << " edges=" << edgeCount << "\n";
    std::map<Owner, size_t> byOwner;
    for (Owner o : a.owner) ++byOwner[o];
    os << "owners";
    for (Owner o : {Owner::P1, Owner::P2, Owner::Nature, Owner::Branch1, Owner::Branch2})
        os << " " << ownerName(o) << "=" << byOwner[o];
    os << "\n";
    os << "roots";
    for (uint32_t r : a.roots) os << " " << r;
    os << "\n";
    if (!a.varPriority.empty()) {
        os << "priority";
        for (const auto& [x, p] : a.varPriority) os << " " << x << "=" << p;
        os << "\n";
    }
    for (uint32_t s = 0; s < a.size(); ++s) {
        os << s << " | " << a.describe(s, m) << " | " << ownerName(a.owner[s]) << " | "
           << a.priority[s] << " |";
        for (size_t i = 0; i < a.edges[s].size(); ++i) {
            os << " " << a.edges[s][i];
            if (a.owner[s] == Owner::Nature) os << ":" << fmtDouble(a.nature[s][i]);
        }
        os << "\n";
    }
    return os.str();
}

} // namespace plmu
