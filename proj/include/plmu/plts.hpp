#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace plmu {

// One weight of a finite-support distribution. `display` preserves the
// source spelling ("1/3", "0.25") so saving round-trips exact rationals.
struct WeightEntry {
    uint32_t state = 0;
    double w = 0.0;
    std::string display;
};

// Finite-support probability distribution over state indices.
// Invariants: weights strictly positive, sum within 1e-9 of 1, no duplicate
// states; the support is exactly the entry list.
struct Distribution {
    std::vector<WeightEntry> entries;

    double mass() const {
        double s = 0.0;
        for (const auto& e : entries) s += e.w;
        return s;
    }
    std::optional<double> weightOf(uint32_t state) const {
        for (const auto& e : entries)
            if (e.state == state) return e.w;
        return std::nullopt;
    }
};

// Finite probabilistic labeled transition system. States and labels are
// string ids with dense internal indices; trans[s][l] lists distribution
// ids in file order.
struct Plts {
    std::vector<std::string> states;
    std::vector<std::string> labels;
    std::vector<Distribution> dists;
    std::vector<std::vector<std::vector<uint32_t>>> trans;

    std::optional<uint32_t> stateIndex(std::string_view name) const;
    std::optional<uint32_t> labelIndex(std::string_view name) const;
    uint32_t stateCount() const { return static_cast<uint32_t>(states.size()); }

    // Throws ValidationError on any invariant violation.
    void validate() const;
};

// Line-oriented format:
//   states: p z
//   labels: a
//   trans p a { p: 1/2, z: 1/2 }
// '#' starts a comment; probabilities are decimals or rationals "n/d".
Plts loadPlts(const std::string& text);
std::string savePlts(const Plts& m);

// True iff every distribution is a point mass.
bool isNonProbabilistic(const Plts& m);

// Deterministic random model: states s0.., labels a0..; per (state,label)
// between 0 and maxChoices transitions with 1..maxSupport-state supports and
// small-denominator rational weights.
Plts randomPlts(uint64_t seed, uint32_t nStates, uint32_t nLabels, uint32_t maxChoices,
                uint32_t maxSupport);

// Shortest round-trip decimal form of x (used by every text output so that
// identical runs are byte-identical).
std::string fmtDouble(double x);

} // namespace plmu
