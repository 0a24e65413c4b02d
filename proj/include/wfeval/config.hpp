#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wfeval/error.hpp"
#include "wfeval/graph.hpp"

namespace wfeval {

struct SamplerSettings {
  std::uint64_t seed = 0x5EED'2025ULL;
  std::uint64_t samples = 1'000'000;
  unsigned threads = 1;  // result does not depend on this
};

struct EvaluationConfig {
  std::optional<std::vector<double>> w_g;  // value per cumulative unit; unset = all ones
  double w_d = 0.0;                        // value per millisecond
  std::optional<std::vector<double>> w_r;  // value per releasable unit; unset = all zeros
  double alpha_ch = 0.5;                   // alpha_cp = 1 - alpha_ch
  double alpha_ob = 0.5;                   // alpha_ih = 1 - alpha_ob
  double gamma_s = 0.5;                    // gamma_d = 1 - gamma_s
  double reward_tolerance = 1e-9;
  std::map<std::string, double> gain_overrides;  // output id -> gain, replaces the node's gain
  SamplerSettings sampler;

  void check() const {
    auto unit = [](double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; };
    if (!unit(alpha_ch)) throw Error(ErrorCode::InvalidArgument, "alpha_ch must lie in [0,1]");
    if (!unit(alpha_ob)) throw Error(ErrorCode::InvalidArgument, "alpha_ob must lie in [0,1]");
    if (!unit(gamma_s)) throw Error(ErrorCode::InvalidArgument, "gamma_s must lie in [0,1]");
    if (!(reward_tolerance > 0.0) || !std::isfinite(reward_tolerance))
      throw Error(ErrorCode::InvalidArgument, "reward_tolerance must be > 0");
    if (!std::isfinite(w_d)) throw Error(ErrorCode::InvalidArgument, "w_d must be finite");
  }

  std::vector<double> cumulative_weights(std::size_t m) const {
    if (!w_g) return std::vector<double>(m, 1.0);
    if (w_g->size() != m)
      throw Error(ErrorCode::DimensionMismatch,
                  "w_g has length " + std::to_string(w_g->size()) + ", workflow has " + std::to_string(m));
    return *w_g;
  }

  std::vector<double> releasable_weights(std::size_t n) const {
    if (!w_r) return std::vector<double>(n, 0.0);
    if (w_r->size() != n)
      throw Error(ErrorCode::DimensionMismatch,
                  "w_r has length " + std::to_string(w_r->size()) + ", workflow has " + std::to_string(n));
    return *w_r;
  }

  double gain_of(const Node& output) const {
    auto it = gain_overrides.find(output.id);
    return it != gain_overrides.end() ? it->second : output.output().gain;
  }

  bool has_negative_weights() const {
    if (w_d < 0.0) return true;
    for (const auto* v : {w_g ? &*w_g : nullptr, w_r ? &*w_r : nullptr})
      if (v)
        for (double x : *v)
          if (x < 0.0) return true;
    return false;
  }
};

}  // namespace wfeval
