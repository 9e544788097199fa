#pragma once

#include "plmu/denotational.hpp"
#include "plmu/formula.hpp"
#include "plmu/plts.hpp"
#include "plmu/rng.hpp"

#include <string>
#include <vector>

namespace plmu {

struct FormulaGenConfig {
    uint32_t maxDepth = 5;
    std::vector<std::string> labels = {"a"};
    // Names the formula may use free (bind them in the environment). Empty
    // means closed formulas only.
    std::vector<std::string> freeVars;
    // Rarely emits product/coproduct/threshold connectives, keeping sampled
    // play trees narrow.
    bool branchingLight = false;
    bool allowThresholds = true;
};

// Random formula in normal form by construction: user-level binders are
// named X0, X1, ... and sugar binders use the reserved prefix, all from one
// counter sweep, so no name is ever bound twice or both bound and free.
Formula randomFormula(const FormulaGenConfig& cfg, Rng& rng);

// Uniform random valuation in [0,1) per listed name over m's states.
Env randomEnv(const Plts& m, const std::vector<std::string>& names, Rng& rng);

} // namespace plmu
