#pragma once

#include <cstdint>

namespace senses {

// Training knobs. Defaults are the values used by the stock experiment
// configuration; everything is overridable through the config file.
struct Hyperparams {
  double alpha = 0.03;        // learning rate
  double gamma = 0.99;        // discount
  double lambda = 0.95;       // advantage smoothing
  double clip_eps = 0.2;      // policy ratio clip range
  int batch_size = 256;       // buffer flush threshold, in agent-samples
  int epochs = 4;             // gradient passes per flush
  long long step_max = 1000000000;  // global cap on collected env slots
  int episodes = 300;
  int train_horizon = 64;     // slots per training episode
  double delta = 1.0;         // radius adjustment step, area units
  double weak_threshold = 1.0;   // server load above which an agent goes weak
  double rescue_soc = 0.10;   // below this soc a device stays adjustable
  int hidden1 = 64;
  int hidden2 = 64;
};

// Per-slot reward composition weights.
struct RewardWeights {
  double energy = 1.0;
  double load = 0.1;
  double alive = 0.5;
  double coverage = 4.0;
};

}  // namespace senses
