#pragma once

#include "plmu/denotational.hpp"
#include "plmu/formula.hpp"
#include "plmu/plts.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace plmu {

enum class Owner : uint8_t { P1, P2, Nature, Branch1, Branch2 };

const char* ownerName(Owner o);

// Game positions: a model state paired with a subformula (PF), a transition
// distribution paired with a subformula (DF), or the immediate win/loss
// sinks. `sub` indexes Arena::subs; `state`/`dist` index the model.
struct GameState {
    enum class Kind : uint8_t { Bot, Top, PF, DF } kind = Kind::Bot;
    uint32_t state = 0;
    uint32_t dist = 0;
    uint32_t sub = 0;
};

// Materialized game arena. State 0 is Bot, state 1 is Top, the rest are
// discovered breadth-first from the roots PF(p, f) in model-state order, so
// ids are deterministic. Nature states carry weights parallel to their edge
// list; a weight may be 0 (the edge stays, the support does not include it).
struct Arena {
    std::vector<Formula> subs;
    std::vector<GameState> states;
    std::vector<std::vector<uint32_t>> edges;
    std::vector<Owner> owner;
    std::vector<uint32_t> priority;
    std::vector<std::vector<double>> nature;
    std::vector<uint32_t> roots;               // PF(p, f) per model state
    std::map<std::string, uint32_t> varPriority;

    uint32_t size() const { return static_cast<uint32_t>(states.size()); }
    bool terminal(uint32_t s) const { return edges[s].empty(); }
    std::string describe(uint32_t s, const Plts& m) const;
};

// Compiles (f, m, rho) into the arena. Preconditions: f in normal form and
// product normal form (throws ValidationError otherwise). rho supplies the
// Nature weights of free-variable states: weight rho(X)(p) on Top and the
// complement on Bot; both edges are always present.
Arena buildArena(const Formula& f, const Plts& m, const Env& rho);

// Priorities for bound variables: mu odd, nu even, processed innermost
// first, each getting the smallest value >= 2 of its parity strictly above
// everything assigned inside its body. Hence an outer binder always beats
// the binders it subsumes. Precondition: normal form.
std::map<std::string, uint32_t> assignPriorities(const Formula& f);

// Finite play adjudication: Player 1 wins iff the last priority is odd
// (getting stuck loses, and the sinks carry priority 1/0). Throws
// ValidationError unless `path` is a valid path ending at a terminal.
bool omegaWinsFinite(const Arena& a, const std::vector<uint32_t>& path);

// Ultimately periodic play prefix.cycle^omega: Player 1 wins iff the
// maximum priority on the cycle is even. Throws ValidationError on an
// invalid lasso.
bool omegaWinsLasso(const Arena& a, const std::vector<uint32_t>& prefix,
                    const std::vector<uint32_t>& cycle);

// Detects a play whose continuation is already forced: the last state of
// `path` occurred earlier, and every state from that occurrence on has
// exactly one successor, so the infinite extension is unique and periodic.
// Returns the index of the earlier occurrence and the parity winner of the
// forced cycle (per omegaWinsLasso), or nullopt.
std::optional<std::pair<size_t, bool>> forcedLasso(const Arena& a,
                                                   const std::vector<uint32_t>& path);

// One application of the value-iteration functional: terminals map to their
// priority parity, P1/P2 to max/min over successors, Nature to the expected
// successor value, Branch1/Branch2 to the coproduct/product over successors.
// The denotational annotation is a fixed point of this map.
std::vector<double> valueFunctional(const Arena& a, const std::vector<double>& v);

// Denotational labeling: PF(p,G) gets the value of G at p under envStar
// (an annotateEnv result), DF(d,G) the expected value over d, Top 1, Bot 0.
std::vector<double> annotateArenaValues(const Arena& a, const Env& envStar, const Plts& m,
                                        const FixpointConfig& cfg = {});

// Deterministic text dump: header with counts and the variable priority
// table, then one line per state (id, description, owner, priority,
// successors, nature weights).
std::string dumpArena(const Arena& a, const Plts& m);

} // namespace plmu
