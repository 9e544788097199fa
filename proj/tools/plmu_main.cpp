#include "plmu/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"pLmu(x) toolkit: denotational evaluation, meta-parity game arenas, "
                 "simulation, and the denotational/game equivalence harness"};
    app.require_subcommand(1);

    plmu::RunConfig cfg;

    auto addCommon = [&](CLI::App* cmd, bool needsModel) {
        if (needsModel) {
            cmd->add_option("--model", cfg.modelPath, "PLTS file")->required();
            cmd->add_option("--formula", cfg.formulaText, "formula text");
            cmd->add_option("--formula-file", cfg.formulaPath, "file holding the formula");
            cmd->add_option("--env", cfg.envPath, "environment file for free variables");
            cmd->add_option("--state", cfg.state, "restrict reports to this model state");
        }
        cmd->add_option("--seed", cfg.seed, "random seed");
        cmd->add_option("--tol", cfg.tolerance, "fixpoint stopping tolerance");
        cmd->add_option("--max-iters", cfg.maxIters, "fixpoint iteration cap");
        cmd->add_flag("--kv", cfg.kvFormat, "key=value output");
        cmd->add_flag("--no-exact", cfg.noExact, "iterate threshold binders instead of solving exactly");
        cmd->add_option("--format", [&cfg](const std::vector<std::string>& v) {
            if (v.back() == "kv") cfg.kvFormat = true;
            else if (v.back() == "text") cfg.kvFormat = false;
            else return false;
            return true;
        }, "text|kv");
    };
    auto addSampling = [&](CLI::App* cmd) {
        cmd->add_option("--samples", cfg.samples, "Monte-Carlo sample count");
        cmd->add_option("--depth", cfg.depth, "per-sample depth budget");
        cmd->add_option("--nodes", cfg.nodes, "per-sample node budget");
    };

    CLI::App* evalCmd = app.add_subcommand("eval", "denotational values at every state");
    addCommon(evalCmd, true);

    CLI::App* arenaCmd = app.add_subcommand("arena", "dump the compiled game arena");
    addCommon(arenaCmd, true);

    CLI::App* simCmd = app.add_subcommand("simulate", "Monte-Carlo value estimates under greedy strategies");
    addCommon(simCmd, true);
    addSampling(simCmd);

    CLI::App* equivCmd = app.add_subcommand("equiv", "compare denotational values against simulated intervals");
    addCommon(equivCmd, true);
    addSampling(equivCmd);
    equivCmd->add_option("--slack", cfg.slack, "tolerance added around the simulated interval");
    equivCmd->add_option("--inject-bias", cfg.injectBias, "test hook: offset the denotational value")
        ->group(""); // hidden
    CLI::App* playCmd = app.add_subcommand("play", "step through one focused play interactively");
    addCommon(playCmd, true);
    playCmd->add_option("--as", cfg.humanPlayer, "side to play, 1 or 2");
    playCmd->add_option("--max-steps", cfg.maxSteps, "step limit before declaring undetermined");

    CLI::App* genCmd = app.add_subcommand("gen", "generate a random model and formula");
    addCommon(genCmd, false);
    genCmd->add_option("--out-model", cfg.outModelPath, "write the model here");
    genCmd->add_option("--out-formula", cfg.outFormulaPath, "write the formula here");
    genCmd->add_option("--states", cfg.genStates, "state count");
    genCmd->add_option("--labels", cfg.genLabels, "label count");
    genCmd->add_option("--max-choices", cfg.genMaxChoices, "max transitions per state and label");
    genCmd->add_option("--max-support", cfg.genMaxSupport, "max support size per distribution");
    genCmd->add_option("--fdepth", cfg.genDepth, "formula depth");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // Usage errors share exit 1 with input errors; only nonconvergence
        // and equivalence failures use 2. --help stays 0.
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    for (CLI::App* sub : app.get_subcommands()) cfg.command = sub->get_name();
    return plmu::runCli(cfg, std::cin, std::cout, std::cerr);
}
