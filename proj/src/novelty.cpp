#include "oddball/novelty.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "oddball/util.hpp"

namespace oddball {

NoveltyVector compute_novelty(const Network& net, const FrameSet& data) {
    if (data.size() == 0) throw std::invalid_argument("frame set is empty");
    if (net.input_size() != data.size())
        throw std::invalid_argument("network input size " + std::to_string(net.input_size()) +
                                    " does not match training-set size " +
                                    std::to_string(data.size()));
    if (net.output_size() != data.frame_length())
        throw std::invalid_argument("network output size " + std::to_string(net.output_size()) +
                                    " does not match frame length " +
                                    std::to_string(data.frame_length()));

    NoveltyVector novelty(data.size());
    parallel_for(data.size(), [&](std::size_t begin, std::size_t end) {
        SynthesisBuffers buffers;
        for (std::size_t i = begin; i < end; ++i) {
            const auto& prediction = synthesize(net, i, buffers);
            const auto& frame = data.frames[i];
            double sum = 0.0;
            for (std::size_t j = 0; j < frame.size(); ++j)
                sum += std::abs(prediction[j] - frame[j]);
            novelty[i] = sum;
        }
    });
    return novelty;
}

SelectionProbabilities novelty_to_probs(const NoveltyVector& novelty, double power) {
    if (novelty.empty()) throw std::invalid_argument("novelty vector is empty");
    if (!(power >= 0.0) || !std::isfinite(power))
        throw std::invalid_argument("power must be finite and >= 0");
    for (std::size_t i = 0; i < novelty.size(); ++i)
        if (!(novelty[i] >= 0.0) || !std::isfinite(novelty[i]))
            throw std::invalid_argument("novelty[" + std::to_string(i) +
                                        "] is negative or non-finite");

    constexpr double kNegInf = -std::numeric_limits<double>::infinity();
    const std::size_t n = novelty.size();
    SelectionProbabilities result;
    result.power_used = power;
    result.probs.assign(n, 0.0);

    // Logits power*ln(e); exact-zero novelty stays at -inf for every power.
    std::vector<double> logit(n, kNegInf);
    double max_logit = kNegInf;
    for (std::size_t i = 0; i < n; ++i) {
        if (novelty[i] > 0.0) {
            logit[i] = power * std::log(novelty[i]);
            if (logit[i] > max_logit) max_logit = logit[i];
        }
    }
    if (max_logit == kNegInf) {
        // Converged to exact reproduction everywhere; fall back to uniform.
        const double u = 1.0 / static_cast<double>(n);
        result.probs.assign(n, u);
        return result;
    }

    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = logit[i] == kNegInf ? 0.0 : std::exp(logit[i] - max_logit);
        result.probs[i] = e;
        sum += e;
    }
    for (double& p : result.probs) p /= sum;
    return result;
}

std::size_t index_for_quantile(const SelectionProbabilities& probs, double u) {
    double cumulative = 0.0;
    std::size_t last_positive = probs.probs.size() - 1;
    for (std::size_t i = 0; i < probs.probs.size(); ++i) {
        if (probs.probs[i] > 0.0) last_positive = i;
        cumulative += probs.probs[i];
        if (cumulative > u) return i;
    }
    // Rounding left the cumulative sum at most u; land on the last
    // positive-probability entry.
    return last_positive;
}

std::size_t sample_index(const SelectionProbabilities& probs, Rng& rng) {
    return index_for_quantile(probs, rng.next_double());
}

std::vector<std::size_t> shuffled_order(std::size_t n, Rng& rng) {
    if (n < 1) throw std::invalid_argument("permutation length must be >= 1");
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = n - 1; i > 0; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.uniform_index(i + 1));
        std::swap(order[i], order[j]);
    }
    return order;
}

}  // namespace oddball
