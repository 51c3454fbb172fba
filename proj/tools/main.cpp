#include "config.hpp"
#include "experiment.hpp"

#include "qgan/bars_and_stripes.hpp"
#include "qgan/gradcheck.hpp"
#include "qgan/version.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>

namespace {

qgan::cli::ExperimentOptions flag_options;
std::optional<std::string> config_path;

void add_train_flags(CLI::App& train) {
    train.add_option("--config", config_path, "config file (flat key = value; flags override)");
    train.add_option("--circuit", flag_options.circuit, "generator family: layered or mps")
        ->check(CLI::IsMember({"layered", "mps"}));
    train.add_option("--m", flag_options.m, "image side length (samples are m*m bits)");
    train.add_option("--layers", flag_options.layers, "layers per block (L)");
    train.add_option("--ancilla", flag_options.ancilla, "mps carry qubits (V)");
    train.add_option("--epochs", flag_options.epochs, "training epochs [5000]");
    train.add_option("--runs", flag_options.runs, "independent repetitions [1]");
    train.add_option("--seed", flag_options.seed, "master seed [0]");
    train.add_option("--batch-d", flag_options.batch_d, "discriminator mini-batch size [64]");
    train.add_option("--batch-g", flag_options.batch_g, "generator mini-batch size [100]");
    train.add_option("--d-step", flag_options.d_step, "discriminator updates per epoch [1]");
    train.add_option("--g-step", flag_options.g_step, "generator updates per epoch [1]");
    train.add_option("--lr-g", flag_options.lr_g, "generator learning rate [0.02]");
    train.add_option("--lr-d", flag_options.lr_d, "discriminator Adam learning rate [0.001]");
    train.add_option("--grad-mode", flag_options.grad_mode,
                     "generator gradient mode: exact or sampled [sampled]")
        ->check(CLI::IsMember({"exact", "sampled"}));
    train.add_option("--report-interval", flag_options.report_interval,
                     "epochs between metric records [50]");
    train.add_option("--out", flag_options.out, "output directory [.]");
}

int run_train() {
    try {
        qgan::cli::ExperimentOptions options;
        if (config_path.has_value()) {
            options = qgan::cli::load_config_file(*config_path);
        }
        options = qgan::cli::merge_options(options, flag_options);
        const qgan::cli::ExperimentConfig config = qgan::cli::resolve_config(options);
        return qgan::cli::run_experiment(config, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

int run_gradcheck(std::uint64_t seed, int trials) {
    try {
        const qgan::GradcheckReport report = qgan::run_gradcheck(seed, trials);
        std::printf("gradcheck: %d trials, seed %llu\n", report.trials,
                    static_cast<unsigned long long>(seed));
        std::printf("  parameter-shift vs finite difference: max |dev| = %.3e (threshold %.1e) %s\n",
                    report.max_param_shift_dev, report.param_shift_threshold,
                    report.param_shift_ok() ? "ok" : "FAIL");
        std::printf("  backprop vs finite difference:        max rel dev = %.3e (threshold %.1e) %s\n",
                    report.max_backprop_rel_dev, report.backprop_threshold,
                    report.backprop_ok() ? "ok" : "FAIL");
        if (!report.passed()) {
            if (!report.param_shift_ok()) {
                std::fprintf(stderr, "gradcheck failed: parameter-shift gradient\n");
            }
            if (!report.backprop_ok()) {
                std::fprintf(stderr, "gradcheck failed: discriminator backprop\n");
            }
            return 1;
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

int run_patterns(int m, const std::optional<std::string>& out) {
    try {
        const qgan::BasSpec spec = qgan::bas_patterns(m);
        if (out.has_value()) {
            qgan::write_patterns(spec, *out);
            std::cout << "wrote " << spec.patterns.size() << " patterns to " << *out << '\n';
        } else {
            for (std::uint64_t p : spec.patterns) {
                std::cout << qgan::to_bitstring(m * m, p) << '\n';
            }
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"adversarial trainer for quantum-circuit generators of discrete data"};
    app.set_version_flag("--version", qgan::kVersion);
    app.require_subcommand(1);

    CLI::App* train = app.add_subcommand("train", "run a training experiment");
    add_train_flags(*train);

    std::uint64_t gc_seed = 1;
    int gc_trials = 50;
    CLI::App* gradcheck =
        app.add_subcommand("gradcheck", "verify analytic gradients against finite differences");
    gradcheck->add_option("--seed", gc_seed, "seed for the random trials [1]");
    gradcheck->add_option("--trials", gc_trials, "number of random configurations [50]")
        ->check(CLI::PositiveNumber);

    int pat_m = 0;
    std::optional<std::string> pat_out;
    CLI::App* patterns =
        app.add_subcommand("patterns", "emit the bars-and-stripes pattern set");
    patterns->add_option("--m", pat_m, "image side length")->required()->check(CLI::Range(1, 4));
    patterns->add_option("--out", pat_out, "output file (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    if (train->parsed()) {
        return run_train();
    }
    if (gradcheck->parsed()) {
        return run_gradcheck(gc_seed, gc_trials);
    }
    if (patterns->parsed()) {
        return run_patterns(pat_m, pat_out);
    }
    return 1;
}
