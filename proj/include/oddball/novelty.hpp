#pragma once

#include <cstddef>
#include <vector>

#include "oddball/dataset.hpp"
#include "oddball/netcore.hpp"
#include "oddball/rng.hpp"

namespace oddball {

// Per-example summed absolute output error, length N.
using NoveltyVector = std::vector<double>;

// Power-transformed, normalized novelty: a categorical distribution over
// the training examples.
struct SelectionProbabilities {
    std::vector<double> probs;
    double power_used = 0.0;
};

// novelty[i] = sum_j |synthesize(net, i)[j] - frames[i][j]|. Examples may be
// evaluated by parallel workers; each per-example sum runs in fixed index
// order, so the result is identical for any worker count.
NoveltyVector compute_novelty(const Network& net, const FrameSet& data);

// probs[i] = novelty[i]^power / sum_j novelty[j]^power, evaluated in the log
// domain so paper-scale magnitudes (values up to 1024, power 100) cannot
// overflow. Zero entries get probability 0 while any entry is positive; an
// all-zero vector falls back to the uniform distribution.
SelectionProbabilities novelty_to_probs(const NoveltyVector& novelty, double power);

// Smallest i with cumulative probability > u (u in [0,1)).
std::size_t index_for_quantile(const SelectionProbabilities& probs, double u);

// Inverse-CDF draw: index_for_quantile at a uniform u from rng.
std::size_t sample_index(const SelectionProbabilities& probs, Rng& rng);

// Unbiased Fisher-Yates permutation of [0, n).
std::vector<std::size_t> shuffled_order(std::size_t n, Rng& rng);

}  // namespace oddball
