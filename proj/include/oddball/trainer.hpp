#pragma once

#include <cstdint>
#include <vector>

#include "oddball/dataset.hpp"
#include "oddball/metrics.hpp"
#include "oddball/netcore.hpp"

namespace oddball {

enum class TrainMethod { traditional, oddball };

struct TrainConfig {
    TrainMethod method = TrainMethod::traditional;
    double power = 100.0;          // novelty exponent (oddball only)
    double learning_rate = 1.0;
    std::uint64_t sweeps = 10;     // total steps = sweeps * N
    std::uint64_t seed = 0;        // experiment master seed
    std::uint64_t metrics_interval = 1;
    std::uint64_t waterfall_interval = 1;

    void validate() const;
};

struct ExperimentResult {
    Network net;
    MetricsLog log;
    std::uint64_t total_steps = 0;
    // How many updates each example received; traditional uses each index
    // exactly `sweeps` times, oddball samples with replacement.
    std::vector<std::uint64_t> usage_counts;
};

// Runs one training regime for sweeps*N steps.
//
// traditional: each sweep visits all N examples once in a fresh random
// permutation. oddball: every step recomputes the full novelty vector
// (reflecting all updates so far), converts it to selection probabilities,
// and samples the next example with replacement.
//
// Metrics rows are recorded at step 0, every metrics_interval steps
// (measured after the step's update), and at the final step; waterfall rows
// at step 0 and every waterfall_interval steps.
ExperimentResult train(Network net, const FrameSet& data, const TrainConfig& config);

struct PairedResult {
    ExperimentResult traditional;
    ExperimentResult oddball;
};

// Trains both regimes from a single shared initial network. The two runs
// draw from independent rng streams derived from the common experiment
// seed. Configs must agree on everything except method and power.
PairedResult run_paired_experiment(const FrameSet& data, const NetworkConfig& net_config,
                                   const TrainConfig& traditional_config,
                                   const TrainConfig& oddball_config);

}  // namespace oddball
