#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace oddball {

// Shape and initialization recipe for the 3-layer (input-hidden-output)
// fully connected sigmoid network.
struct NetworkConfig {
    std::size_t input_size = 0;
    std::size_t hidden_size = 0;
    std::size_t output_size = 0;
    std::uint64_t init_seed = 0;
    // Half-width of the uniform weight initialization. Unset -> per-layer
    // sqrt(6 / (fan_in + fan_out)).
    std::optional<double> init_scale;

    void validate() const;  // throws std::invalid_argument
};

struct Layer {
    std::size_t out_dim = 0;
    std::size_t in_dim = 0;
    std::vector<double> weights;  // row-major, out_dim x in_dim
    std::vector<double> biases;   // out_dim

    double weight(std::size_t row, std::size_t col) const { return weights[row * in_dim + col]; }
    double& weight(std::size_t row, std::size_t col) { return weights[row * in_dim + col]; }
};

struct Network {
    std::vector<Layer> layers;

    std::size_t input_size() const { return layers.front().in_dim; }
    std::size_t output_size() const { return layers.back().out_dim; }
    std::size_t weight_count() const;     // excludes biases
    std::size_t parameter_count() const;  // includes biases
    bool all_finite() const;
};

// Everything backprop needs from one forward evaluation.
struct ForwardTrace {
    std::vector<double> input;
    std::vector<std::vector<double>> pre;  // per-layer pre-activations
    std::vector<std::vector<double>> act;  // per-layer post-sigmoid activations

    const std::vector<double>& output() const { return act.back(); }
};

struct LayerGradients {
    std::vector<double> dw;  // row-major, matches Layer::weights
    std::vector<double> db;
};

// Numerically stable logistic function, clamped into the open interval
// (0,1) so saturated units never round to exactly 0 or 1.
double sigmoid(double x);

// Weights i.i.d. uniform on [-scale, +scale] from a deterministic stream
// seeded by config.init_seed; biases zero. Same (seed, config) gives a
// bit-identical network.
Network init_network(const NetworkConfig& config);

ForwardTrace forward(const Network& net, std::span<const double> input);

// Reusable activation buffers for repeated synthesis calls.
struct SynthesisBuffers {
    std::vector<std::vector<double>> act;
};

// Output activations for the one-hot input selecting class_index. The first
// layer reduces to one weight column plus bias; bit-identical to forward()
// on the explicit one-hot vector.
const std::vector<double>& synthesize(const Network& net, std::size_t class_index,
                                      SynthesisBuffers& buffers);
std::vector<double> synthesize(const Network& net, std::size_t class_index);

// Backprop of L = 1/2 * sum((output - target)^2) through the trace.
std::vector<LayerGradients> gradients(const Network& net, const ForwardTrace& trace,
                                      std::span<const double> target);

double squared_error_loss(const Network& net, std::span<const double> input,
                          std::span<const double> target);

// One plain per-example update, no momentum. Throws std::runtime_error
// naming the layer if any gradient is non-finite; the network is left
// unmodified in that case.
void sgd_step(Network& net, std::span<const double> input, std::span<const double> target,
              double learning_rate);

}  // namespace oddball
