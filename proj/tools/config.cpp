#include "config.hpp"

#include <charconv>
#include <fstream>

namespace qgan::cli {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) {
        return "";
    }
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
    T parsed{};
    const char* first = value.data();
    const char* last = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(first, last, parsed);
    if (ec != std::errc{} || ptr != last) {
        throw ConfigError("config key '" + key + "': cannot parse value '" + value + "'");
    }
    return parsed;
}

// from_chars for double is incomplete on some toolchains; go through stod.
double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t consumed = 0;
        const double parsed = std::stod(value, &consumed);
        if (consumed != value.size()) {
            throw std::invalid_argument(value);
        }
        return parsed;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': cannot parse value '" + value + "'");
    }
}

void apply_entry(ExperimentOptions& options, const std::string& key, const std::string& value) {
    if (key == "circuit") {
        options.circuit = value;
    } else if (key == "m") {
        options.m = parse_number<int>(key, value);
    } else if (key == "layers") {
        options.layers = parse_number<int>(key, value);
    } else if (key == "ancilla") {
        options.ancilla = parse_number<int>(key, value);
    } else if (key == "epochs") {
        options.epochs = parse_number<int>(key, value);
    } else if (key == "runs") {
        options.runs = parse_number<int>(key, value);
    } else if (key == "seed") {
        options.seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "batch-d") {
        options.batch_d = parse_number<int>(key, value);
    } else if (key == "batch-g") {
        options.batch_g = parse_number<int>(key, value);
    } else if (key == "d-step") {
        options.d_step = parse_number<int>(key, value);
    } else if (key == "g-step") {
        options.g_step = parse_number<int>(key, value);
    } else if (key == "lr-g") {
        options.lr_g = parse_double(key, value);
    } else if (key == "lr-d") {
        options.lr_d = parse_double(key, value);
    } else if (key == "grad-mode") {
        options.grad_mode = value;
    } else if (key == "report-interval") {
        options.report_interval = parse_number<int>(key, value);
    } else if (key == "out") {
        options.out = value;
    } else {
        throw ConfigError("unknown config key '" + key + "'");
    }
}

void require_positive(const std::string& key, long value) {
    if (value < 1) {
        throw ConfigError("config key '" + key + "': must be >= 1");
    }
}

} // namespace

ExperimentOptions load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    ExperimentOptions options;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') {
            continue;
        }
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": expected 'key = value', got '" + stripped + "'");
        }
        apply_entry(options, trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)));
    }
    return options;
}

ExperimentOptions merge_options(ExperimentOptions base, const ExperimentOptions& over) {
    auto pick = [](auto& dst, const auto& src) {
        if (src.has_value()) {
            dst = src;
        }
    };
    pick(base.circuit, over.circuit);
    pick(base.m, over.m);
    pick(base.layers, over.layers);
    pick(base.ancilla, over.ancilla);
    pick(base.epochs, over.epochs);
    pick(base.runs, over.runs);
    pick(base.seed, over.seed);
    pick(base.batch_d, over.batch_d);
    pick(base.batch_g, over.batch_g);
    pick(base.d_step, over.d_step);
    pick(base.g_step, over.g_step);
    pick(base.lr_g, over.lr_g);
    pick(base.lr_d, over.lr_d);
    pick(base.grad_mode, over.grad_mode);
    pick(base.report_interval, over.report_interval);
    pick(base.out, over.out);
    return base;
}

ExperimentConfig resolve_config(const ExperimentOptions& options) {
    ExperimentConfig config;
    if (!options.circuit.has_value()) {
        throw ConfigError("missing required config key 'circuit'");
    }
    config.circuit = *options.circuit;
    if (config.circuit != "layered" && config.circuit != "mps") {
        throw ConfigError("config key 'circuit': must be 'layered' or 'mps'");
    }
    if (!options.m.has_value()) {
        throw ConfigError("missing required config key 'm'");
    }
    config.m = *options.m;
    if (config.m < 1 || config.m > 4) {
        throw ConfigError("config key 'm': must be in 1..4");
    }
    if (!options.layers.has_value()) {
        throw ConfigError("missing required config key 'layers'");
    }
    config.layers = *options.layers;
    require_positive("layers", config.layers);

    if (config.circuit == "mps") {
        if (!options.ancilla.has_value()) {
            throw ConfigError("missing required config key 'ancilla' (mps circuit)");
        }
        config.ancilla = *options.ancilla;
        require_positive("ancilla", config.ancilla);
    } else if (options.ancilla.has_value()) {
        throw ConfigError("config key 'ancilla': only valid for circuit = mps");
    }

    if (options.epochs.has_value()) {
        config.epochs = *options.epochs;
        if (config.epochs < 0) {
            throw ConfigError("config key 'epochs': must be >= 0");
        }
    }
    if (options.runs.has_value()) {
        config.runs = *options.runs;
        require_positive("runs", config.runs);
    }
    if (options.seed.has_value()) {
        config.seed = *options.seed;
    }
    if (options.batch_d.has_value()) {
        config.batch_d = *options.batch_d;
        require_positive("batch-d", config.batch_d);
    }
    if (options.batch_g.has_value()) {
        config.batch_g = *options.batch_g;
        require_positive("batch-g", config.batch_g);
    }
    if (options.d_step.has_value()) {
        config.d_step = *options.d_step;
        require_positive("d-step", config.d_step);
    }
    if (options.g_step.has_value()) {
        config.g_step = *options.g_step;
        require_positive("g-step", config.g_step);
    }
    if (options.lr_g.has_value()) {
        config.lr_g = *options.lr_g;
        if (config.lr_g <= 0.0) {
            throw ConfigError("config key 'lr-g': must be > 0");
        }
    }
    if (options.lr_d.has_value()) {
        config.lr_d = *options.lr_d;
        if (config.lr_d <= 0.0) {
            throw ConfigError("config key 'lr-d': must be > 0");
        }
    }
    if (options.grad_mode.has_value()) {
        config.grad_mode = *options.grad_mode;
    }
    if (config.grad_mode != "exact" && config.grad_mode != "sampled") {
        throw ConfigError("config key 'grad-mode': must be 'exact' or 'sampled'");
    }
    if (options.report_interval.has_value()) {
        config.report_interval = *options.report_interval;
        require_positive("report-interval", config.report_interval);
    }
    if (options.out.has_value()) {
        config.out = *options.out;
    }
    return config;
}

TrainConfig to_train_config(const ExperimentConfig& config) {
    TrainConfig tc;
    tc.circuit.family =
        config.circuit == "mps" ? CircuitFamily::Mps : CircuitFamily::Layered;
    tc.circuit.num_bits = config.m * config.m;
    tc.circuit.layers = config.layers;
    tc.circuit.ancillas = config.ancilla;
    tc.bas_m = config.m;
    tc.batch_d = config.batch_d;
    tc.batch_g = config.batch_g;
    tc.d_step = config.d_step;
    tc.g_step = config.g_step;
    tc.epochs = config.epochs;
    tc.lr_g = config.lr_g;
    tc.lr_d = config.lr_d;
    tc.grad_mode.kind = config.grad_mode == "exact" ? GradKind::Exact : GradKind::Sampled;
    tc.grad_mode.batch_g = config.batch_g;
    tc.report_interval = config.report_interval;
    tc.seed = config.seed;
    return tc;
}

} // namespace qgan::cli
