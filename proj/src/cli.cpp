#include "plmu/cli.hpp"

#include "plmu/arena.hpp"
#include "plmu/denotational.hpp"
#include "plmu/errors.hpp"
#include "plmu/formula.hpp"
#include "plmu/game.hpp"
#include "plmu/gen.hpp"
#include "plmu/plts.hpp"
#include "plmu/rng.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace plmu {

namespace {

std::string readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void writeFile(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write file: " + path);
    out << text;
    if (!out) throw ValidationError("write failed: " + path);
}

struct Inputs {
    Plts model;
    Formula formula;
    Env rho;
};

// Shared pipeline: load and validate the model, parse the formula, move it
// into normal form and product normal form, and read the optional
// environment file.
Inputs loadInputs(const RunConfig& cfg) {
    if (cfg.modelPath.empty()) throw ValidationError("--model is required");
    if (cfg.formulaText.empty() == cfg.formulaPath.empty())
        throw ValidationError("give exactly one of --formula and --formula-file");
    Plts m = loadPlts(readFile(cfg.modelPath));
    std::string text = cfg.formulaText.empty() ? readFile(cfg.formulaPath) : cfg.formulaText;
    Formula f = toProductNormalForm(toNormalForm(parseFormula(text)));
    Env rho;
    if (!cfg.envPath.empty()) rho = loadEnv(readFile(cfg.envPath), m);
    return Inputs{std::move(m), std::move(f), std::move(rho)};
}

FixpointConfig fixpointConfig(const RunConfig& cfg) {
    FixpointConfig fc;
    fc.tolerance = cfg.tolerance;
    fc.maxIters = cfg.maxIters;
    fc.exactThresholds = !cfg.noExact;
    fc.check();
    return fc;
}

std::vector<uint32_t> selectStates(const Plts& m, const RunConfig& cfg) {
    if (cfg.state.empty()) {
        std::vector<uint32_t> all(m.stateCount());
        for (uint32_t i = 0; i < all.size(); ++i) all[i] = i;
        return all;
    }
    auto idx = m.stateIndex(cfg.state);
    if (!idx) throw ValidationError("unknown state: " + cfg.state);
    return {*idx};
}

void printReport(const RunConfig& cfg, const ConvergenceReport& report, std::ostream& out) {
    if (cfg.kvFormat) {
        for (const BinderStats& b : report.binders) {
            out << "binder." << b.var << ".solves=" << b.solves << "\n";
            out << "binder." << b.var << ".iterations=" << b.iterations << "\n";
            out << "binder." << b.var << ".residual=" << fmtDouble(b.residual) << "\n";
            out << "binder." << b.var << ".exact=" << (b.exact ? 1 : 0) << "\n";
        }
        out << "converged=" << (report.allConverged() ? 1 : 0) << "\n";
    } else {
        if (!report.binders.empty()) out << report.toTable();
        out << "converged: " << (report.allConverged() ? "yes" : "NO") << "\n";
    }
}

int cmdEval(const RunConfig& cfg, std::ostream& out) {
    Inputs in = loadInputs(cfg);
    EvalResult r = eval(in.formula, in.rho, in.model, fixpointConfig(cfg));
    if (cfg.kvFormat) {
        out << "formula=" << printFormula(in.formula) << "\n";
        for (uint32_t p : selectStates(in.model, cfg))
            out << "value." << in.model.states[p] << "=" << fmtDouble(r.value[p]) << "\n";
    } else {
        out << "formula: " << printFormula(in.formula) << "\n";
        for (uint32_t p : selectStates(in.model, cfg))
            out << "value " << in.model.states[p] << " = " << fmtDouble(r.value[p]) << "\n";
    }
    printReport(cfg, r.report, out);
    return r.report.allConverged() ? 0 : 2;
}

int cmdArena(const RunConfig& cfg, std::ostream& out) {
    Inputs in = loadInputs(cfg);
    Arena a = buildArena(in.formula, in.model, in.rho);
    out << dumpArena(a, in.model);
    return 0;
}

struct Annotated {
    Arena arena;
    std::vector<double> values;
    ConvergenceReport report;
};

Annotated annotate(const Inputs& in, const FixpointConfig& fc) {
    AnnotateResult ar = annotateEnv(in.formula, in.rho, in.model, fc);
    Arena a = buildArena(in.formula, in.model, in.rho);
    std::vector<double> v = annotateArenaValues(a, ar.env, in.model, fc);
    return Annotated{std::move(a), std::move(v), std::move(ar.report)};
}

void printEstimate(const RunConfig& cfg, const std::string& name, const ValueEstimate& e,
                   std::ostream& out) {
    if (cfg.kvFormat) {
        out << name << ".lo=" << fmtDouble(e.lo) << "\n";
        out << name << ".hi=" << fmtDouble(e.hi) << "\n";
        out << name << ".stderr_lo=" << fmtDouble(e.stderrLo) << "\n";
        out << name << ".stderr_hi=" << fmtDouble(e.stderrHi) << "\n";
        out << name << ".samples=" << e.samples << "\n";
        out << name << ".depth=" << e.depth << "\n";
        out << name << ".nodes=" << e.nodes << "\n";
        out << name << ".seed=" << e.seed << "\n";
    } else {
        out << "state " << name << ": lo=" << fmtDouble(e.lo) << " hi=" << fmtDouble(e.hi)
            << " stderr_lo=" << fmtDouble(e.stderrLo) << " stderr_hi=" << fmtDouble(e.stderrHi)
            << " samples=" << e.samples << " depth=" << e.depth << " nodes=" << e.nodes
            << " seed=" << e.seed << "\n";
    }
}

int cmdSimulate(const RunConfig& cfg, std::ostream& out) {
    Inputs in = loadInputs(cfg);
    FixpointConfig fc = fixpointConfig(cfg);
    Annotated an = annotate(in, fc);
    Strategy s1 = makeGreedyStrategy(an.arena, an.values, Owner::P1);
    Strategy s2 = makeGreedyStrategy(an.arena, an.values, Owner::P2);
    for (uint32_t p : selectStates(in.model, cfg)) {
        const uint32_t root = an.arena.roots[p];
        ValueEstimate e = estimateValue(an.arena, root, s1, s2, cfg.samples, cfg.depth, cfg.nodes,
                                        mix64(cfg.seed, root));
        printEstimate(cfg, in.model.states[p], e, out);
    }
    printReport(cfg, an.report, out);
    return an.report.allConverged() ? 0 : 2;
}

int cmdEquiv(const RunConfig& cfg, std::ostream& out) {
    Inputs in = loadInputs(cfg);
    FixpointConfig fc = fixpointConfig(cfg);
    Annotated an = annotate(in, fc);
    Strategy s1 = makeGreedyStrategy(an.arena, an.values, Owner::P1);
    Strategy s2 = makeGreedyStrategy(an.arena, an.values, Owner::P2);
    bool allPass = true;
    for (uint32_t p : selectStates(in.model, cfg)) {
        const uint32_t root = an.arena.roots[p];
        const double denot = an.values[root] + cfg.injectBias;
        ValueEstimate e = estimateValue(an.arena, root, s1, s2, cfg.samples, cfg.depth, cfg.nodes,
                                        mix64(cfg.seed, root));
        const bool pass = denot >= e.lo - 3.0 * e.stderrLo - cfg.slack &&
                          denot <= e.hi + 3.0 * e.stderrHi + cfg.slack;
        allPass = allPass && pass;
        const std::string& name = in.model.states[p];
        if (cfg.kvFormat) {
            out << name << ".denot=" << fmtDouble(denot) << "\n";
            printEstimate(cfg, name, e, out);
            out << name << ".pass=" << (pass ? 1 : 0) << "\n";
        } else {
            out << "state " << name << ": denot=" << fmtDouble(denot) << " lo=" << fmtDouble(e.lo)
                << " hi=" << fmtDouble(e.hi) << " stderr_lo=" << fmtDouble(e.stderrLo)
                << " stderr_hi=" << fmtDouble(e.stderrHi) << " " << (pass ? "PASS" : "FAIL")
                << "\n";
        }
    }
    if (cfg.kvFormat) out << "pass=" << (allPass ? 1 : 0) << "\n";
    printReport(cfg, an.report, out);
    return allPass && an.report.allConverged() ? 0 : 2;
}

int cmdPlay(const RunConfig& cfg, std::istream& in, std::ostream& out) {
    Inputs inputs = loadInputs(cfg);
    FixpointConfig fc = fixpointConfig(cfg);
    Annotated an = annotate(inputs, fc);
    const Arena& a = an.arena;
    const Plts& m = inputs.model;
    if (cfg.humanPlayer != 1 && cfg.humanPlayer != 2)
        throw ValidationError("--as must be 1 or 2");
    const bool humanIsP1 = cfg.humanPlayer == 1;

    const std::vector<uint32_t> sel = selectStates(m, cfg);
    const uint32_t root = a.roots[sel.front()];

    out << "game: " << printFormula(inputs.formula) << " on " << cfg.modelPath << "\n";
    out << "you play Player " << cfg.humanPlayer << "; seed " << cfg.seed << "\n";
    out << "note: at branching states the real game forks independent subgames; this session\n"
        << "follows one focused child and abandons the sibling, so it demonstrates the rules\n"
        << "but does not by itself measure the game value (use simulate for that).\n";

    Rng rng(cfg.seed);
    std::vector<uint32_t> path{root};

    auto describePick = [&](uint32_t t) { return a.describe(t, m); };

    // Re-prompts until a valid successor index arrives; nullopt on EOF.
    auto promptChoice = [&](const std::vector<uint32_t>& succ) -> std::optional<uint32_t> {
        for (size_t i = 0; i < succ.size(); ++i)
            out << "  [" << i << "] " << describePick(succ[i]) << "\n";
        std::string line;
        while (true) {
            out << "choose 0-" << succ.size() - 1 << "> ";
            if (!std::getline(in, line)) return std::nullopt;
            uint32_t k = 0;
            auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), k);
            if (ec == std::errc() && ptr == line.data() + line.size() && k < succ.size()) {
                out << "you chose [" << k << "]\n";
                return succ[k];
            }
            out << "invalid choice\n";
        }
    };

    auto greedyPick = [&](uint32_t s, bool maximize) {
        const auto& succ = a.edges[s];
        uint32_t best = succ[0];
        for (uint32_t t : succ)
            if (maximize ? an.values[t] > an.values[best] : an.values[t] < an.values[best])
                best = t;
        return best;
    };

    for (uint32_t step = 0;; ++step) {
        const uint32_t s = path.back();
        out << "step " << step << ": " << a.describe(s, m) << " [" << ownerName(a.owner[s])
            << ", priority " << a.priority[s] << "]\n";

        if (a.terminal(s)) {
            const bool p1 = omegaWinsFinite(a, path);
            out << "Player " << (p1 ? 1 : 2) << " wins: final priority " << a.priority[s]
                << " is " << (a.priority[s] % 2 ? "odd" : "even") << "\n";
            out << (p1 == humanIsP1 ? "you win\n" : "you lose\n");
            return 0;
        }
        if (auto lasso = forcedLasso(a, path)) {
            out << "forced cycle back to step " << lasso->first << ": every state on it has a "
                << "single successor, so the play repeats forever\n";
            const bool p1 = lasso->second;
            out << "Player " << (p1 ? 1 : 2) << " wins: the maximum cycle priority is "
                << (p1 ? "even" : "odd") << "\n";
            out << (p1 == humanIsP1 ? "you win\n" : "you lose\n");
            return 0;
        }
        if (step >= cfg.maxSteps) {
            out << "undetermined at depth limit (" << cfg.maxSteps << " steps)\n";
            return 0;
        }

        const auto& succ = a.edges[s];
        uint32_t next = succ[0];
        switch (a.owner[s]) {
        case Owner::P1:
        case Owner::P2: {
            const bool humanTurn = (a.owner[s] == Owner::P1) == humanIsP1;
            if (succ.size() == 1) {
                next = succ[0];
                out << "only move: " << describePick(next) << "\n";
            } else if (humanTurn) {
                auto c = promptChoice(succ);
                if (!c) {
                    out << "input closed, session aborted\n";
                    return 0;
                }
                next = *c;
            } else {
                next = greedyPick(s, a.owner[s] == Owner::P1);
                out << "engine moves to " << describePick(next) << "\n";
            }
            break;
        }
        case Owner::Nature: {
            double mass = 0.0;
            for (double w : a.nature[s]) mass += w;
            const double r = rng.real01() * mass;
            double acc = 0.0;
            size_t pick = succ.size() - 1;
            for (size_t i = 0; i < succ.size(); ++i) {
                acc += a.nature[s][i];
                if (r < acc) {
                    pick = i;
                    break;
                }
            }
            next = succ[pick];
            out << "nature samples " << describePick(next) << " (weight "
                << fmtDouble(a.nature[s][pick]) << ")\n";
            break;
        }
        case Owner::Branch1:
        case Owner::Branch2: {
            const bool humanTurn = (a.owner[s] == Owner::Branch1) == humanIsP1;
            out << "branching state: the game forks into " << succ.size()
                << " independent subgames; picking a focused child\n";
            if (humanTurn) {
                auto c = promptChoice(succ);
                if (!c) {
                    out << "input closed, session aborted\n";
                    return 0;
                }
                next = *c;
            } else {
                next = greedyPick(s, a.owner[s] == Owner::Branch1);
                out << "engine focuses " << describePick(next) << "\n";
            }
            for (uint32_t t : succ)
                if (t != next) out << "abandoned sibling: " << describePick(t) << "\n";
            break;
        }
        }
        path.push_back(next);
    }
}

int cmdGen(const RunConfig& cfg, std::ostream& out) {
    Plts m = randomPlts(cfg.seed, cfg.genStates, cfg.genLabels, cfg.genMaxChoices,
                        cfg.genMaxSupport);
    FormulaGenConfig fc;
    fc.maxDepth = cfg.genDepth;
    fc.labels = m.labels;
    fc.branchingLight = true;
    Rng rng(mix64(cfg.seed, 0x666f726d)); // distinct stream from the model's
    Formula f = randomFormula(fc, rng);

    const std::string modelText = savePlts(m);
    const std::string formulaText = printFormula(f) + "\n";
    if (cfg.outModelPath.empty()) {
        out << modelText;
    } else {
        writeFile(cfg.outModelPath, modelText);
        out << "wrote model " << cfg.outModelPath << "\n";
    }
    if (cfg.outFormulaPath.empty()) {
        out << "formula: " << printFormula(f) << "\n";
    } else {
        writeFile(cfg.outFormulaPath, formulaText);
        out << "wrote formula " << cfg.outFormulaPath << "\n";
    }
    return 0;
}

} // namespace

int runCli(const RunConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.command == "eval") return cmdEval(cfg, out);
        if (cfg.command == "arena") return cmdArena(cfg, out);
        if (cfg.command == "simulate") return cmdSimulate(cfg, out);
        if (cfg.command == "equiv") return cmdEquiv(cfg, out);
        if (cfg.command == "play") return cmdPlay(cfg, in, out);
        if (cfg.command == "gen") return cmdGen(cfg, out);
        err << "error: unknown command '" << cfg.command << "'\n";
        return 1;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace plmu
