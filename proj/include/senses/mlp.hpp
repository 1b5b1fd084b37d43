#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "senses/common.hpp"

namespace senses {

// Dense feed-forward approximator: tanh on hidden layers, identity output.
// Weights are row-major (out x in). Small enough that plain loops beat any
// library dispatch overhead.
class Mlp {
 public:
  Mlp() = default;

  // layer_sizes = [input, hidden..., output]. Parameters drawn uniformly in
  // [-1/sqrt(fan_in), 1/sqrt(fan_in)], weights before biases, layer by layer.
  static Mlp init(std::vector<int> layer_sizes, Rng& rng) {
    Mlp net;
    net.layer_sizes_ = std::move(layer_sizes);
    const std::size_t layers = net.num_layers();
    net.weights_.resize(layers);
    net.biases_.resize(layers);
    for (std::size_t l = 0; l < layers; ++l) {
      const int fan_in = net.layer_sizes_[l];
      const int fan_out = net.layer_sizes_[l + 1];
      const double scale = 1.0 / std::sqrt(static_cast<double>(fan_in));
      net.weights_[l].resize(static_cast<std::size_t>(fan_in) * fan_out);
      for (double& w : net.weights_[l]) w = rng.uniform(-scale, scale);
      net.biases_[l].resize(fan_out);
      for (double& b : net.biases_[l]) b = rng.uniform(-scale, scale);
    }
    return net;
  }

  bool empty() const { return layer_sizes_.empty(); }
  std::size_t num_layers() const {
    return layer_sizes_.empty() ? 0 : layer_sizes_.size() - 1;
  }
  int input_size() const { return layer_sizes_.front(); }
  int output_size() const { return layer_sizes_.back(); }
  const std::vector<int>& layer_sizes() const { return layer_sizes_; }
  const std::vector<std::vector<double>>& weights() const { return weights_; }
  const std::vector<std::vector<double>>& biases() const { return biases_; }
  std::vector<std::vector<double>>& mutable_weights() { return weights_; }
  std::vector<std::vector<double>>& mutable_biases() { return biases_; }

  // Post-activation values per layer, kept for the backward pass.
  struct Trace {
    std::vector<std::vector<double>> activations;  // [layers+1][width]
  };

  std::vector<double> forward(std::span<const double> input) const {
    Trace scratch;
    return forward_trace(input, scratch);
  }

  std::vector<double> forward_trace(std::span<const double> input, Trace& trace) const {
    if (static_cast<int>(input.size()) != input_size())
      throw ShapeMismatch("forward: input size " + std::to_string(input.size()) +
                          " != " + std::to_string(input_size()));
    trace.activations.assign(num_layers() + 1, {});
    trace.activations[0].assign(input.begin(), input.end());
    for (std::size_t l = 0; l < num_layers(); ++l) {
      const int rows = layer_sizes_[l + 1], cols = layer_sizes_[l];
      const bool hidden = l + 1 < num_layers();
      const std::vector<double>& in = trace.activations[l];
      std::vector<double>& out = trace.activations[l + 1];
      out.resize(rows);
      for (int r = 0; r < rows; ++r) {
        double z = biases_[l][r];
        const double* wrow = &weights_[l][static_cast<std::size_t>(r) * cols];
        for (int c = 0; c < cols; ++c) z += wrow[c] * in[c];
        out[r] = hidden ? std::tanh(z) : z;
      }
    }
    return trace.activations.back();
  }

  // Gradient buffers shaped like the parameters.
  struct Grads {
    std::vector<std::vector<double>> weights;
    std::vector<std::vector<double>> biases;

    static Grads zeros_like(const Mlp& net) {
      Grads g;
      g.weights.resize(net.num_layers());
      g.biases.resize(net.num_layers());
      for (std::size_t l = 0; l < net.num_layers(); ++l) {
        g.weights[l].assign(net.weights_[l].size(), 0.0);
        g.biases[l].assign(net.biases_[l].size(), 0.0);
      }
      return g;
    }

    double squared_norm() const {
      double n = 0;
      for (const auto& layer : weights)
        for (double v : layer) n += v * v;
      for (const auto& layer : biases)
        for (double v : layer) n += v * v;
      return n;
    }
  };

  // Accumulates exact reverse-mode gradients of upstream . output into `out`.
  // `trace` must come from forward_trace on the same parameters.
  void backward(const Trace& trace, std::span<const double> upstream, Grads& out) const {
    if (static_cast<int>(upstream.size()) != output_size())
      throw ShapeMismatch("backward: upstream size " + std::to_string(upstream.size()) +
                          " != " + std::to_string(output_size()));
    std::vector<double> delta(upstream.begin(), upstream.end());
    for (std::size_t li = num_layers(); li-- > 0;) {
      const int rows = layer_sizes_[li + 1], cols = layer_sizes_[li];
      const std::vector<double>& in = trace.activations[li];
      for (int r = 0; r < rows; ++r) {
        const double d = delta[r];
        out.biases[li][r] += d;
        double* grow = &out.weights[li][static_cast<std::size_t>(r) * cols];
        for (int c = 0; c < cols; ++c) grow[c] += d * in[c];
      }
      if (li == 0) break;
      std::vector<double> prev(cols, 0.0);
      for (int r = 0; r < rows; ++r) {
        const double d = delta[r];
        const double* wrow = &weights_[li][static_cast<std::size_t>(r) * cols];
        for (int c = 0; c < cols; ++c) prev[c] += d * wrow[c];
      }
      // chain through tanh of the producing layer
      for (int c = 0; c < cols; ++c) prev[c] *= 1.0 - in[c] * in[c];
      delta = std::move(prev);
    }
  }

  // Plain gradient descent step with global-norm clipping.
  void apply_gradients(const Grads& g, double learning_rate, double clip_norm) {
    double scale = 1.0;
    if (clip_norm > 0) {
      const double norm = std::sqrt(g.squared_norm());
      if (norm > clip_norm) scale = clip_norm / norm;
    }
    for (std::size_t l = 0; l < num_layers(); ++l) {
      for (std::size_t i = 0; i < weights_[l].size(); ++i)
        weights_[l][i] -= learning_rate * scale * g.weights[l][i];
      for (std::size_t i = 0; i < biases_[l].size(); ++i)
        biases_[l][i] -= learning_rate * scale * g.biases[l][i];
    }
  }

  std::size_t parameter_count() const {
    std::size_t n = 0;
    for (std::size_t l = 0; l < num_layers(); ++l)
      n += weights_[l].size() + biases_[l].size();
    return n;
  }

 private:
  std::vector<int> layer_sizes_;
  std::vector<std::vector<double>> weights_;
  std::vector<std::vector<double>> biases_;
};

}  // namespace senses
