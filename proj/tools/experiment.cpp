#include "experiment.hpp"

#include "qgan/version.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>

namespace qgan::cli {

namespace {

// Fixed-format numbers keep output files byte-reproducible for a given
// config and seed.
std::string fmt(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", value);
    return buf;
}

std::string fmt_theta(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    }
    return out;
}

void finish_output(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out.good()) {
        throw std::runtime_error("failed while writing '" + path.string() + "'");
    }
}

void write_metrics_csv(const std::filesystem::path& path, const MultiRunResult& result) {
    auto out = open_output(path);
    if (result.runs.size() == 1) {
        out << "run,epoch,accuracy,kld,loss_g,loss_d\n";
        const auto& records = result.runs.front().records;
        for (const MetricsRecord& rec : records) {
            out << 0 << ',' << rec.epoch << ',' << fmt(rec.accuracy) << ',' << fmt(rec.kld)
                << ',' << fmt(rec.loss_g) << ',' << fmt(rec.loss_d) << '\n';
        }
    } else {
        out << "epoch,acc_mean,acc_std,kld_mean,kld_std,lossg_mean,lossg_std,lossd_mean,"
               "lossd_std\n";
        for (const AggregateRecord& agg : result.aggregate) {
            out << agg.epoch << ',' << fmt(agg.acc_mean) << ',' << fmt(agg.acc_std) << ','
                << fmt(agg.kld_mean) << ',' << fmt(agg.kld_std) << ',' << fmt(agg.lossg_mean)
                << ',' << fmt(agg.lossg_std) << ',' << fmt(agg.lossd_mean) << ','
                << fmt(agg.lossd_std) << '\n';
        }
    }
    finish_output(out, path);
}

void write_theta_files(const std::filesystem::path& dir, const MultiRunResult& result) {
    for (std::size_t k = 0; k < result.runs.size(); ++k) {
        const auto path = dir / ("theta_run" + std::to_string(k) + ".txt");
        auto out = open_output(path);
        for (double v : result.runs[k].final_theta) {
            out << fmt_theta(v) << '\n';
        }
        finish_output(out, path);
    }
}

nlohmann::ordered_json config_json(const ExperimentConfig& config) {
    nlohmann::ordered_json j;
    j["circuit"] = config.circuit;
    j["m"] = config.m;
    j["layers"] = config.layers;
    if (config.circuit == "mps") {
        j["ancilla"] = config.ancilla;
    }
    j["epochs"] = config.epochs;
    j["runs"] = config.runs;
    j["seed"] = config.seed;
    j["batch-d"] = config.batch_d;
    j["batch-g"] = config.batch_g;
    j["d-step"] = config.d_step;
    j["g-step"] = config.g_step;
    j["lr-g"] = config.lr_g;
    j["lr-d"] = config.lr_d;
    j["grad-mode"] = config.grad_mode;
    j["report-interval"] = config.report_interval;
    j["out"] = config.out;
    return j;
}

void write_summary(const std::filesystem::path& path, const ExperimentConfig& config,
                   const MultiRunResult& result, double wall_seconds) {
    nlohmann::ordered_json j;
    j["version"] = kVersion;
    j["config"] = config_json(config);
    if (result.aggregate.empty()) {
        j["final"] = nullptr;
    } else {
        const AggregateRecord& last = result.aggregate.back();
        nlohmann::ordered_json final;
        final["epoch"] = last.epoch;
        final["accuracy_mean"] = last.acc_mean;
        final["accuracy_std"] = last.acc_std;
        final["kld_mean"] = last.kld_mean;
        final["kld_std"] = last.kld_std;
        final["loss_g_mean"] = last.lossg_mean;
        final["loss_g_std"] = last.lossg_std;
        final["loss_d_mean"] = last.lossd_mean;
        final["loss_d_std"] = last.lossd_std;
        j["final"] = final;
    }
    j["kld_clamp_saturated"] = result.kld_clamped_any;
    j["wall_time_seconds"] = wall_seconds;

    auto out = open_output(path);
    out << j.dump(2) << '\n';
    finish_output(out, path);
}

} // namespace

int env_thread_cap() {
    const char* raw = std::getenv("QGAN_THREADS");
    if (raw == nullptr || *raw == '\0') {
        return 0;
    }
    char* end = nullptr;
    const long value = std::strtol(raw, &end, 10);
    if (end == raw || *end != '\0' || value < 1) {
        throw ConfigError("QGAN_THREADS must be a positive integer, got '" + std::string(raw) +
                          "'");
    }
    return static_cast<int>(value);
}

int run_experiment(const ExperimentConfig& config, std::ostream& log, std::ostream& err) {
    try {
        const TrainConfig tc = to_train_config(config);
        validate_config(tc);
        const int workers = env_thread_cap();

        log << "training " << config.circuit << " circuit: m=" << config.m
            << " layers=" << config.layers;
        if (config.circuit == "mps") {
            log << " ancilla=" << config.ancilla;
        }
        log << " epochs=" << config.epochs << " runs=" << config.runs
            << " grad-mode=" << config.grad_mode << " seed=" << config.seed << '\n';

        const auto start = std::chrono::steady_clock::now();
        const MultiRunResult result = run_many(tc, config.runs, workers);
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        const std::filesystem::path dir(config.out);
        std::filesystem::create_directories(dir);
        write_metrics_csv(dir / "metrics.csv", result);
        write_theta_files(dir, result);
        write_summary(dir / "summary.json", config, result, wall);

        if (!result.aggregate.empty()) {
            const AggregateRecord& last = result.aggregate.back();
            log << "final epoch " << last.epoch << ": accuracy " << fmt(last.acc_mean) << " +- "
                << fmt(last.acc_std) << ", kld " << fmt(last.kld_mean) << " +- "
                << fmt(last.kld_std) << '\n';
        }
        log << "wrote " << (dir / "metrics.csv").string() << " (" << wall << " s)\n";
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace qgan::cli
