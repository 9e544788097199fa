#pragma once

#include "plmu/arena.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace plmu {

// A deterministic strategy: maps a finite path (arena state ids, root first)
// ending in a state the strategy is responsible for to the chosen successor,
// or nullopt at a terminal. Every returned id lies in edges(path.back()).
using Strategy = std::function<std::optional<uint32_t>(const std::vector<uint32_t>&)>;

// Memoryless chooser over a value labeling: P1 picks an argmax successor of
// the last state, P2 an argmin; ties go to the earliest successor.
Strategy makeGreedyStrategy(const Arena& a, std::vector<double> v, Owner player);

// Pure function of (seed, path): hashes the path and picks a successor by
// index. Repeated queries agree by construction, so this is a legitimate
// deterministic strategy; different seeds give different play.
Strategy makeSeededStrategy(const Arena& a, uint64_t seed);

// A Markov branching play is determined by the root and one strategy per
// player: player nodes branch uniquely (the strategy's choice), Nature and
// Branch nodes branch fully. The tree itself stays implicit; sampling and
// cylinder probabilities interrogate it lazily.
struct MarkovBranchingPlay {
    const Arena* arena = nullptr;
    uint32_t root = 0;
    Strategy sigma1;
    Strategy sigma2;
};

// Finite rooted tree over the arena. Node 0 is the root; children ids are
// strictly larger than the parent's, so index order is topological. A node
// stands for the path of states from the root down to it.
struct FiniteTree {
    struct Node {
        uint32_t state = 0;
        uint32_t parent = 0;
        std::vector<uint32_t> children;
    };
    std::vector<Node> nodes;

    // Arena states from the root down to `node`, root first.
    std::vector<uint32_t> pathTo(uint32_t node) const;
};

enum class LeafKind : uint8_t {
    Internal, // has children
    Terminal, // genuine arena terminal
    Lasso,    // forced cycle: from here the play is uniquely determined and
              // periodic, so the parity winner is already known
    Frontier  // cut by the depth or node budget; true continuation unknown
};

// A sampled truncation of a Markov branching play. Internal Nature nodes
// have exactly one child (the sampled resolution); Branch nodes branch
// fully; player nodes carry the strategy's unique choice.
struct TruncatedPlay {
    FiniteTree tree;
    std::vector<LeafKind> kind;     // parallel to tree.nodes
    std::vector<uint8_t> lassoWin;  // parallel; 1 = Player 1 wins, Lasso leaves only
    std::vector<uint64_t> natureSeed; // parallel; seed used at internal Nature nodes

    bool hasFrontier() const;
};

// Probability mass of the cylinder generated by the finite tree f under the
// play m: the product of normalized Nature weights along f's Nature edges if
// f is consistent with m's expansion (same root, player nodes agree with the
// strategies and branch uniquely, Nature nodes have at most one child), and
// 0 otherwise. The empty product is 1. Throws ValidationError if f is not a
// tree over the arena.
double cylinderProb(const MarkovBranchingPlay& m, const FiniteTree& f);

// Samples a truncated play breadth-first. Nature nodes resolve by a seed
// derived from (seed, path hash) alone, so enlarging either budget extends
// the smaller tree instead of resampling it. A branch stops at a terminal,
// at a forced cycle, at depthBudget edges from the root, or when expanding
// would exceed nodeBudget nodes; the latter two cases mark a Frontier leaf.
TruncatedPlay samplePlay(const MarkovBranchingPlay& m, uint32_t depthBudget,
                         uint32_t nodeBudget, uint64_t seed);

enum class SolveMode : uint8_t { Pessimistic, Optimistic };

// Backward induction over the truncated play; true iff Player 1 wins the
// inner parity game. Terminal leaves adjudicate by last-priority parity,
// Lasso leaves by their recorded cycle parity, Frontier leaves by mode:
// Pessimistic concedes them to Player 2, Optimistic to Player 1. Branch1
// nodes need some winning child, Branch2 all, unary nodes inherit. A
// pessimistic win is therefore a guarantee over every consistent extension,
// an optimistic loss likewise for Player 2.
bool solveInner(const TruncatedPlay& t, const Arena& a, SolveMode mode);

struct ValueEstimate {
    double lo = 0.0;       // fraction of samples Player 1 wins pessimistically
    double hi = 0.0;       // fraction won optimistically; lo <= hi always
    double stderrLo = 0.0; // binomial standard error of lo
    double stderrHi = 0.0;
    uint32_t samples = 0;
    uint32_t depth = 0;
    uint32_t nodes = 0;
    uint64_t seed = 0;
};

// Monte-Carlo estimate of the expected value of the play rooted at s0.
// Sample i uses seed mix64(seed, i); each sample is solved in both modes.
ValueEstimate estimateValue(const Arena& a, uint32_t s0, const Strategy& sigma1,
                            const Strategy& sigma2, uint32_t nSamples, uint32_t depthBudget,
                            uint32_t nodeBudget, uint64_t seed);

// Plays the fixed strategy against the greedy adversary (built from the
// value labeling v) and one seeded adversary per entry of seeds, and returns
// the estimate least favorable to the fixed player: minimal (lo, hi) when
// fixedPlayer is P1, maximal (hi, lo) when P2. A heuristic probe of the
// lower/upper game value, not an exact best response.
ValueEstimate bestResponseSweep(const Arena& a, uint32_t s0, const Strategy& fixed,
                                Owner fixedPlayer, const std::vector<uint64_t>& seeds,
                                const std::vector<double>& v, uint32_t nSamples,
                                uint32_t depthBudget, uint32_t nodeBudget, uint64_t seed);

} // namespace plmu
