#include "oddball/trainer.hpp"

#include <stdexcept>
#include <string>

#include "oddball/novelty.hpp"
#include "oddball/rng.hpp"

namespace oddball {

void TrainConfig::validate() const {
    if (sweeps < 1) throw std::invalid_argument("sweeps must be >= 1");
    if (metrics_interval < 1 || waterfall_interval < 1)
        throw std::invalid_argument("intervals must be >= 1");
    if (!(learning_rate > 0.0)) throw std::invalid_argument("learning_rate must be > 0");
    if (!(power >= 0.0)) throw std::invalid_argument("power must be >= 0");
}

ExperimentResult train(Network net, const FrameSet& data, const TrainConfig& config) {
    config.validate();
    data.validate();
    const std::size_t n = data.size();
    if (net.input_size() != n)
        throw std::invalid_argument("network input size " + std::to_string(net.input_size()) +
                                    " does not match training-set size " + std::to_string(n));
    if (net.output_size() != data.frame_length())
        throw std::invalid_argument("network output size " + std::to_string(net.output_size()) +
                                    " does not match frame length " +
                                    std::to_string(data.frame_length()));

    const RngStream stream = config.method == TrainMethod::traditional
                                 ? RngStream::traditional_shuffle
                                 : RngStream::oddball_sample;
    Rng rng(derive_seed(config.seed, stream));

    ExperimentResult result;
    result.total_steps = config.sweeps * n;
    result.usage_counts.assign(n, 0);

    const auto record_metrics = [&](std::uint64_t step, const NoveltyVector& novelty) {
        const auto [mean, std] = error_stats(novelty);
        result.log.rows.push_back({step, mean, std});
    };
    const auto record_waterfall = [&](std::uint64_t step, const NoveltyVector& novelty) {
        result.log.waterfall.push_back({step, novelty});
    };

    NoveltyVector novelty = compute_novelty(net, data);
    record_metrics(0, novelty);
    record_waterfall(0, novelty);

    std::vector<double> input(n, 0.0);
    std::vector<std::size_t> order;
    std::size_t order_pos = 0;

    for (std::uint64_t step = 1; step <= result.total_steps; ++step) {
        std::size_t index;
        if (config.method == TrainMethod::traditional) {
            if (order_pos == 0) order = shuffled_order(n, rng);
            index = order[order_pos];
            order_pos = (order_pos + 1) % n;
        } else {
            // novelty reflects every update through step-1: no stale probabilities
            index = sample_index(novelty_to_probs(novelty, config.power), rng);
        }

        input[index] = 1.0;
        sgd_step(net, input, data.frames[index], config.learning_rate);
        input[index] = 0.0;
        ++result.usage_counts[index];

        const bool metrics_due =
            step % config.metrics_interval == 0 || step == result.total_steps;
        const bool waterfall_due = step % config.waterfall_interval == 0;
        // oddball needs fresh novelty for the next selection anyway; reuse it
        // as the post-step measurement instead of sweeping twice
        const bool need_fresh = metrics_due || waterfall_due ||
                                (config.method == TrainMethod::oddball &&
                                 step < result.total_steps);
        if (need_fresh) novelty = compute_novelty(net, data);
        if (metrics_due) record_metrics(step, novelty);
        if (waterfall_due) record_waterfall(step, novelty);
    }

    result.net = std::move(net);
    return result;
}

PairedResult run_paired_experiment(const FrameSet& data, const NetworkConfig& net_config,
                                   const TrainConfig& traditional_config,
                                   const TrainConfig& oddball_config) {
    if (traditional_config.method != TrainMethod::traditional ||
        oddball_config.method != TrainMethod::oddball)
        throw std::invalid_argument("paired configs must be one traditional, one oddball");
    if (traditional_config.sweeps != oddball_config.sweeps ||
        traditional_config.learning_rate != oddball_config.learning_rate ||
        traditional_config.metrics_interval != oddball_config.metrics_interval ||
        traditional_config.waterfall_interval != oddball_config.waterfall_interval ||
        traditional_config.seed != oddball_config.seed)
        throw std::invalid_argument(
            "paired configs may differ only in method and power");

    const Network initial = init_network(net_config);
    PairedResult result;
    result.traditional = train(initial, data, traditional_config);
    result.oddball = train(initial, data, oddball_config);
    return result;
}

}  // namespace oddball
