#include "qgan/trainer.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace qgan {

namespace {

constexpr double kKldFloor = 1e-12;

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double std_of(const std::vector<double>& v, double mean) {
    double s = 0.0;
    for (double x : v) s += (x - mean) * (x - mean);
    return std::sqrt(s / static_cast<double>(v.size()));
}

double sampled_loss_estimate(const CircuitSpec& spec, const ParamVector& theta,
                             const Discriminator& d, int batch_g, Rng& rng) {
    const auto batch = sample_batch(spec, theta, batch_g, rng);
    double s = 0.0;
    for (std::uint64_t x : batch) {
        s += std::log(clamp_prob(forward(d, x)));
    }
    return -s / static_cast<double>(batch_g);
}

} // namespace

void validate_config(const TrainConfig& config) {
    validate_spec(config.circuit);
    if (config.bas_m < 1 || config.bas_m > 4) {
        throw std::invalid_argument("bas_m must be in 1..4");
    }
    if (config.circuit.num_bits != config.bas_m * config.bas_m) {
        throw std::invalid_argument("circuit output bits must equal bas_m * bas_m");
    }
    if (config.batch_d < 1 || config.batch_g < 1 || config.d_step < 1 || config.g_step < 1 ||
        config.report_interval < 1 || config.hidden_dim < 1) {
        throw std::invalid_argument("batch sizes, step counts and report interval must be >= 1");
    }
    if (config.epochs < 0) {
        throw std::invalid_argument("epochs must be >= 0");
    }
    if (config.lr_g <= 0.0 || config.lr_d <= 0.0) {
        throw std::invalid_argument("learning rates must be positive");
    }
    if (config.grad_mode.kind == GradKind::Sampled && config.grad_mode.batch_g < 1) {
        throw std::invalid_argument("sampled gradient mode needs batch_g >= 1");
    }
}

RunResult train(const TrainConfig& config) {
    validate_config(config);
    const BasSpec bas = bas_patterns(config.bas_m);
    Rng rng(config.seed);

    ParamVector theta = random_params(config.circuit, rng);
    Discriminator d = init_discriminator(config.circuit.num_bits, config.hidden_dim, rng);
    AdamState adam = init_adam(d, config.lr_d);

    GradMode grad_mode = config.grad_mode;
    grad_mode.batch_g = config.batch_g;

    RunResult result;
    double last_loss_d = 0.0;
    double last_loss_g = 0.0;

    for (int epoch = 1; epoch <= config.epochs; ++epoch) {
        for (int s = 0; s < config.d_step; ++s) {
            LabeledBatch batch;
            batch.samples = sample_real_batch(bas, config.batch_d, rng);
            batch.labels.assign(static_cast<std::size_t>(config.batch_d), 1);
            const auto fake = sample_batch(config.circuit, theta, config.batch_d, rng);
            batch.samples.insert(batch.samples.end(), fake.begin(), fake.end());
            batch.labels.insert(batch.labels.end(), static_cast<std::size_t>(config.batch_d), 0);

            last_loss_d = batch_loss(d, batch);
            const DiscGradients grads = backward(d, batch);
            adam_step(d, adam, grads);
        }
        for (int s = 0; s < config.g_step; ++s) {
            if (grad_mode.kind == GradKind::Exact) {
                last_loss_g =
                    generator_loss_exact(exact_distribution(config.circuit, theta), d);
            } else {
                last_loss_g =
                    sampled_loss_estimate(config.circuit, theta, d, config.batch_g, rng);
            }
            const auto grad = generator_gradient(config.circuit, theta, d, grad_mode, rng);
            theta = sgd_update(theta, grad, config.lr_g);
        }
        if (epoch % config.report_interval == 0) {
            MetricsRecord record;
            record.epoch = epoch;
            const auto fresh = sample_batch(config.circuit, theta, config.batch_d, rng);
            record.accuracy = accuracy(fresh, bas);
            record.kld = kl_divergence(bas.target, exact_distribution(config.circuit, theta),
                                       &record.kld_clamped);
            record.loss_g = last_loss_g;
            record.loss_d = last_loss_d;
            result.records.push_back(record);
        }
    }
    result.final_theta = std::move(theta);
    return result;
}

double accuracy(const std::vector<std::uint64_t>& samples, const BasSpec& spec) {
    if (samples.empty()) {
        throw std::invalid_argument("accuracy needs a non-empty sample array");
    }
    std::size_t valid = 0;
    for (std::uint64_t x : samples) {
        if (is_valid(spec, x)) {
            ++valid;
        }
    }
    return static_cast<double>(valid) / static_cast<double>(samples.size());
}

double kl_divergence(const Distribution& target, const Distribution& generated, bool* clamped) {
    if (target.size() != generated.size()) {
        throw std::invalid_argument("distributions must share one outcome space");
    }
    double target_sum = 0.0;
    double generated_sum = 0.0;
    for (std::size_t x = 0; x < target.size(); ++x) {
        target_sum += target[x];
        generated_sum += generated[x];
    }
    if (std::abs(target_sum - 1.0) > 1e-8 || std::abs(generated_sum - 1.0) > 1e-8) {
        throw std::invalid_argument("distributions must each sum to 1");
    }
    bool hit_floor = false;
    double kld = 0.0;
    for (std::size_t x = 0; x < target.size(); ++x) {
        if (target[x] > 0.0) {
            double q = generated[x];
            if (q < kKldFloor) {
                q = kKldFloor;
                hit_floor = true;
            }
            kld += target[x] * std::log(target[x] / q);
        }
    }
    if (clamped != nullptr) {
        *clamped = hit_floor;
    }
    return kld;
}

double equilibrium_loss() { return std::numbers::ln2; }

MultiRunResult run_many(const TrainConfig& config, int num_runs, int max_workers) {
    validate_config(config);
    if (num_runs < 1) {
        throw std::invalid_argument("num_runs must be >= 1");
    }
    MultiRunResult result;
    result.runs.resize(static_cast<std::size_t>(num_runs));

    unsigned workers = max_workers > 0 ? static_cast<unsigned>(max_workers)
                                       : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(num_runs));

    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            const int k = next.fetch_add(1);
            if (k >= num_runs) {
                return;
            }
            TrainConfig run_config = config;
            run_config.seed = Rng::mix_seed(config.seed, static_cast<std::uint64_t>(k));
            result.runs[static_cast<std::size_t>(k)] = train(run_config);
        }
    };
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned t = 0; t < workers; ++t) {
            pool.emplace_back(worker);
        }
        for (auto& t : pool) {
            t.join();
        }
    }

    const std::size_t rows = result.runs.front().records.size();
    for (const RunResult& run : result.runs) {
        if (run.records.size() != rows) {
            throw std::logic_error("runs produced misaligned metric records");
        }
        for (const MetricsRecord& rec : run.records) {
            result.kld_clamped_any = result.kld_clamped_any || rec.kld_clamped;
        }
    }
    result.aggregate.resize(rows);
    std::vector<double> acc(result.runs.size()), kld(result.runs.size()),
        lossg(result.runs.size()), lossd(result.runs.size());
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t k = 0; k < result.runs.size(); ++k) {
            const MetricsRecord& rec = result.runs[k].records[r];
            acc[k] = rec.accuracy;
            kld[k] = rec.kld;
            lossg[k] = rec.loss_g;
            lossd[k] = rec.loss_d;
        }
        AggregateRecord& agg = result.aggregate[r];
        agg.epoch = result.runs.front().records[r].epoch;
        agg.acc_mean = mean_of(acc);
        agg.acc_std = std_of(acc, agg.acc_mean);
        agg.kld_mean = mean_of(kld);
        agg.kld_std = std_of(kld, agg.kld_mean);
        agg.lossg_mean = mean_of(lossg);
        agg.lossg_std = std_of(lossg, agg.lossg_mean);
        agg.lossd_mean = mean_of(lossd);
        agg.lossd_std = std_of(lossd, agg.lossd_mean);
    }
    return result;
}

} // namespace qgan
