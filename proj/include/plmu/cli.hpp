#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace plmu {

// Settings shared by the subcommands. Every command is a deterministic
// function of this struct plus the referenced files (and, for play, the
// input stream), so identical invocations print identical bytes.
struct RunConfig {
    std::string command;     // eval | arena | simulate | equiv | play | gen
    std::string modelPath;
    std::string formulaText; // exactly one of formulaText/formulaPath
    std::string formulaPath;
    std::string envPath;
    std::string state;       // restrict reports to one model state; empty = all
    uint64_t seed = 0;
    double tolerance = 1e-9;
    uint64_t maxIters = 100000;
    uint32_t samples = 10000;
    uint32_t depth = 64;
    uint32_t nodes = 200000;  // guards Branch blowup during sampling
    double slack = 0.05;
    double injectBias = 0.0;  // equiv test hook: offsets the denotational side
    bool kvFormat = false;    // key=value lines instead of prose
    bool noExact = false;     // force iterative fixpoints even on threshold shapes

    int humanPlayer = 1;      // play: which side the terminal controls
    uint32_t maxSteps = 64;   // play: step limit before declaring undetermined

    std::string outModelPath;   // gen targets; empty prints to stdout
    std::string outFormulaPath;
    uint32_t genStates = 4;
    uint32_t genLabels = 1;
    uint32_t genMaxChoices = 2;
    uint32_t genMaxSupport = 3;
    uint32_t genDepth = 4;
};

// Runs one subcommand. Exit codes: 0 success (all PASS / converged),
// 1 unusable input (parse, validation, file errors), 2 semantic failure
// (nonconvergence or a FAIL verdict).
int runCli(const RunConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace plmu
