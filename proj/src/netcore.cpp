#include "oddball/netcore.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "oddball/rng.hpp"

namespace oddball {

namespace {

// Largest double below 1.
constexpr double kOneMinus = 1.0 - std::numeric_limits<double>::epsilon() / 2;
constexpr double kTiny = std::numeric_limits<double>::min();

void check_length(std::size_t got, std::size_t want, const char* what) {
    if (got != want)
        throw std::invalid_argument(std::string(what) + " length " + std::to_string(got) +
                                    ", expected " + std::to_string(want));
}

}  // namespace

void NetworkConfig::validate() const {
    if (input_size < 1 || hidden_size < 1 || output_size < 1)
        throw std::invalid_argument("network sizes must all be >= 1");
    if (init_scale && !(*init_scale >= 0.0))
        throw std::invalid_argument("init_scale must be >= 0");
}

std::size_t Network::weight_count() const {
    std::size_t n = 0;
    for (const auto& l : layers) n += l.weights.size();
    return n;
}

std::size_t Network::parameter_count() const {
    std::size_t n = 0;
    for (const auto& l : layers) n += l.weights.size() + l.biases.size();
    return n;
}

bool Network::all_finite() const {
    for (const auto& l : layers) {
        for (double w : l.weights)
            if (!std::isfinite(w)) return false;
        for (double b : l.biases)
            if (!std::isfinite(b)) return false;
    }
    return true;
}

double sigmoid(double x) {
    double v;
    if (x >= 0.0) {
        v = 1.0 / (1.0 + std::exp(-x));
    } else {
        const double e = std::exp(x);
        v = e / (1.0 + e);
    }
    if (v > kOneMinus) v = kOneMinus;
    if (v < kTiny) v = kTiny;
    return v;
}

Network init_network(const NetworkConfig& config) {
    config.validate();
    Rng rng(config.init_seed);
    Network net;
    const std::size_t dims[3] = {config.input_size, config.hidden_size, config.output_size};
    for (std::size_t k = 0; k + 1 < 3; ++k) {
        Layer layer;
        layer.in_dim = dims[k];
        layer.out_dim = dims[k + 1];
        const double scale = config.init_scale
                                 ? *config.init_scale
                                 : std::sqrt(6.0 / static_cast<double>(layer.in_dim + layer.out_dim));
        layer.weights.resize(layer.out_dim * layer.in_dim);
        for (double& w : layer.weights) w = scale * (2.0 * rng.next_double() - 1.0);
        layer.biases.assign(layer.out_dim, 0.0);
        net.layers.push_back(std::move(layer));
    }
    return net;
}

ForwardTrace forward(const Network& net, std::span<const double> input) {
    check_length(input.size(), net.input_size(), "input");
    for (double x : input)
        if (!std::isfinite(x)) throw std::invalid_argument("non-finite input value");

    ForwardTrace trace;
    trace.input.assign(input.begin(), input.end());
    trace.pre.resize(net.layers.size());
    trace.act.resize(net.layers.size());

    const std::vector<double>* prev = &trace.input;
    for (std::size_t k = 0; k < net.layers.size(); ++k) {
        const Layer& layer = net.layers[k];
        auto& pre = trace.pre[k];
        auto& act = trace.act[k];
        pre.resize(layer.out_dim);
        act.resize(layer.out_dim);
        for (std::size_t j = 0; j < layer.out_dim; ++j) {
            double z = layer.biases[j];
            const double* row = layer.weights.data() + j * layer.in_dim;
            for (std::size_t i = 0; i < layer.in_dim; ++i) z += row[i] * (*prev)[i];
            pre[j] = z;
            act[j] = sigmoid(z);
        }
        prev = &act;
    }
    return trace;
}

const std::vector<double>& synthesize(const Network& net, std::size_t class_index,
                                      SynthesisBuffers& buffers) {
    if (class_index >= net.input_size())
        throw std::invalid_argument("class index " + std::to_string(class_index) +
                                    " out of range [0, " + std::to_string(net.input_size()) + ")");
    buffers.act.resize(net.layers.size());

    // First layer: a one-hot input selects a single weight column.
    {
        const Layer& layer = net.layers.front();
        auto& act = buffers.act[0];
        act.resize(layer.out_dim);
        for (std::size_t j = 0; j < layer.out_dim; ++j)
            act[j] = sigmoid(layer.biases[j] + layer.weight(j, class_index));
    }
    for (std::size_t k = 1; k < net.layers.size(); ++k) {
        const Layer& layer = net.layers[k];
        const auto& prev = buffers.act[k - 1];
        auto& act = buffers.act[k];
        act.resize(layer.out_dim);
        for (std::size_t j = 0; j < layer.out_dim; ++j) {
            double z = layer.biases[j];
            const double* row = layer.weights.data() + j * layer.in_dim;
            for (std::size_t i = 0; i < layer.in_dim; ++i) z += row[i] * prev[i];
            act[j] = sigmoid(z);
        }
    }
    return buffers.act.back();
}

std::vector<double> synthesize(const Network& net, std::size_t class_index) {
    SynthesisBuffers buffers;
    return synthesize(net, class_index, buffers);
}

std::vector<LayerGradients> gradients(const Network& net, const ForwardTrace& trace,
                                      std::span<const double> target) {
    check_length(target.size(), net.output_size(), "target");

    const std::size_t n_layers = net.layers.size();
    std::vector<LayerGradients> grads(n_layers);

    // Output delta: (a - t) * a * (1 - a).
    std::vector<double> delta(net.output_size());
    {
        const auto& out = trace.output();
        for (std::size_t j = 0; j < out.size(); ++j)
            delta[j] = (out[j] - target[j]) * out[j] * (1.0 - out[j]);
    }

    for (std::size_t k = n_layers; k-- > 0;) {
        const Layer& layer = net.layers[k];
        const std::vector<double>& below = (k == 0) ? trace.input : trace.act[k - 1];
        auto& g = grads[k];
        g.dw.resize(layer.out_dim * layer.in_dim);
        g.db = delta;
        for (std::size_t j = 0; j < layer.out_dim; ++j) {
            double* dw_row = g.dw.data() + j * layer.in_dim;
            const double dj = delta[j];
            for (std::size_t i = 0; i < layer.in_dim; ++i) dw_row[i] = dj * below[i];
        }
        if (k > 0) {
            std::vector<double> next(layer.in_dim, 0.0);
            for (std::size_t j = 0; j < layer.out_dim; ++j) {
                const double dj = delta[j];
                const double* row = layer.weights.data() + j * layer.in_dim;
                for (std::size_t i = 0; i < layer.in_dim; ++i) next[i] += row[i] * dj;
            }
            const auto& act = trace.act[k - 1];
            for (std::size_t i = 0; i < layer.in_dim; ++i) next[i] *= act[i] * (1.0 - act[i]);
            delta = std::move(next);
        }
    }
    return grads;
}

double squared_error_loss(const Network& net, std::span<const double> input,
                          std::span<const double> target) {
    check_length(target.size(), net.output_size(), "target");
    const ForwardTrace trace = forward(net, input);
    double loss = 0.0;
    for (std::size_t j = 0; j < target.size(); ++j) {
        const double d = trace.output()[j] - target[j];
        loss += 0.5 * d * d;
    }
    return loss;
}

void sgd_step(Network& net, std::span<const double> input, std::span<const double> target,
              double learning_rate) {
    if (!(learning_rate > 0.0)) throw std::invalid_argument("learning_rate must be > 0");
    const ForwardTrace trace = forward(net, input);
    const auto grads = gradients(net, trace, target);

    for (std::size_t k = 0; k < grads.size(); ++k) {
        for (double g : grads[k].dw)
            if (!std::isfinite(g))
                throw std::runtime_error("non-finite weight gradient in layer " + std::to_string(k));
        for (double g : grads[k].db)
            if (!std::isfinite(g))
                throw std::runtime_error("non-finite bias gradient in layer " + std::to_string(k));
    }
    for (std::size_t k = 0; k < net.layers.size(); ++k) {
        Layer& layer = net.layers[k];
        const auto& g = grads[k];
        for (std::size_t i = 0; i < layer.weights.size(); ++i)
            layer.weights[i] -= learning_rate * g.dw[i];
        for (std::size_t j = 0; j < layer.biases.size(); ++j)
            layer.biases[j] -= learning_rate * g.db[j];
    }
}

}  // namespace oddball
