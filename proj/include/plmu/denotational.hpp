#pragma once

#include "plmu/formula.hpp"
#include "plmu/plts.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace plmu {

// One value in [0,1] per model state (indexed like Plts::states).
using Valuation = std::vector<double>;

// Interpretation of variables. Unbound variables read as all-zero.
struct Env {
    std::map<std::string, Valuation> bindings;

    Valuation lookup(const std::string& x, uint32_t nStates) const {
        auto it = bindings.find(x);
        if (it != bindings.end()) return it->second;
        return Valuation(nStates, 0.0);
    }
};

// x + y - x*y on [0,1], clamped against rounding. Exact at the absorbing
// and unit boundaries: coproduct(x,1) = 1 and coproduct(x,0) = x hold
// bit-for-bit, which the threshold characteristic functions rely on.
// Throws std::domain_error outside [0,1].
double coproduct(double x, double y);

// The perturbation denominators 2^(2^n + 1): 4, 8, 32, 512, ...
// Values for n >= 6 exceed 64 bits; UINT64_MAX is returned as a saturation
// sentinel.
uint64_t approxWeight(uint32_t n);

// 1 / 2^(2^n + 1) as a double; underflows to 0 for large n. Convenient for
// the approximation-inequality checks where the exact integer would not fit.
double approxWeightInv(uint32_t n);

// Left fold of product (unit 1) or coproduct (unit 0) over a finite prefix.
double partialProduct(const std::vector<double>& xs, bool coprod);

struct FixpointConfig {
    double tolerance = 1e-9;
    uint64_t maxIters = 100000;
    bool exactThresholds = true;

    void check() const; // throws ValidationError if tolerance < 1e-12 or maxIters < 1
};

// Aggregated per-binder iteration record. A binder may be solved many times
// (inner binders are re-solved at every outer iterate): iterations
// accumulate, residual keeps the worst final sup-norm step, converged is the
// conjunction over solves. Exact-threshold solves count as converged with
// residual 0.
struct BinderStats {
    std::string var;
    uint64_t iterations = 0;
    uint64_t solves = 0;
    double residual = 0.0;
    bool converged = true;
    bool exact = false;
};

struct ConvergenceReport {
    std::vector<BinderStats> binders; // first-solve order

    bool allConverged() const;
    std::string toTable() const;
    void merge(const ConvergenceReport& other);
};

struct EvalResult {
    Valuation value;
    ConvergenceReport report;
};

// Denotational semantics over the model: Or/And pointwise max/min, Coprod/
// Prod pointwise coproduct/product, Diamond/Box sup/inf over a-successor
// distributions of the expected child value (empty sup = 0, empty inf = 1),
// Mu/Nu by Kleene iteration from the constant-0/constant-1 valuation until
// the sup-norm step drops below cfg.tolerance or maxIters is hit
// (nonconvergence is flagged in the report, never silent). With
// cfg.exactThresholds, binders shaped mu X.(G (+) X) / nu X.(G * X) with X
// not free in G evaluate exactly as the characteristic function of
// [G] > 0 / [G] = 1; both argument orders of the commutative connective are
// recognized.
EvalResult eval(const Formula& f, const Env& rho, const Plts& m,
                const FixpointConfig& cfg = {});

struct AnnotateResult {
    Env env;
    ConvergenceReport report;
};

// Extends rho with the solution of every binder of f, outermost first: each
// bound X gets the valuation of its binder formula evaluated under the
// environment extended so far. The result interprets every variable state
// of the game arena.
AnnotateResult annotateEnv(const Formula& f, const Env& rho, const Plts& m,
                           const FixpointConfig& cfg = {});

// Environment file: lines "env X p 0.5"; unspecified pairs default to 0.
Env loadEnv(const std::string& text, const Plts& m);

// Expected value of `values` under the weight list, normalized by the weight
// mass (which is 1 up to the model's 1e-9 tolerance). Normalizing keeps the
// all-zero and all-one boundaries exact.
double expectation(const std::vector<std::pair<uint32_t, double>>& weights,
                   const Valuation& values);

} // namespace plmu
