#pragma once

// Scalar cost, expected reward, and a seeded Monte Carlo sampler of the net
// benefit used as an independent check on the closed-form reward.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "wfeval/config.hpp"
#include "wfeval/resources.hpp"
#include "wfeval/success.hpp"

namespace wfeval {

struct OutputContribution {
  double gain = 0.0;
  double success = 0.0;
  double contribution = 0.0;  // success * gain
};

struct RewardBreakdown {
  double cost = 0.0;
  double expected_gain = 0.0;
  double reward = 0.0;  // expected_gain - cost
  std::map<std::string, OutputContribution> per_output;
};

inline double cost(const ResourceSummary& res, const GraphIndex& g, const EvaluationConfig& cfg) {
  const auto wg = cfg.cumulative_weights(g.graph().cumulative_dims().size());
  const auto wr = cfg.releasable_weights(g.graph().releasable_dims().size());
  double c = 0.0;
  for (std::size_t k = 0; k < wg.size(); ++k) c += wg[k] * res.cumulative[k];
  c += cfg.w_d * res.duration;
  for (std::size_t k = 0; k < wr.size(); ++k) c += wr[k] * res.releasable_peak[k];
  return c;
}

inline double cost(const GraphIndex& g, const EvaluationConfig& cfg) { return cost(resource_summary(g), g, cfg); }
inline double cost(const WorkflowGraph& w, const EvaluationConfig& cfg) { return cost(GraphIndex(w), cfg); }

inline RewardBreakdown expected_reward(const GraphIndex& g, const EvaluationConfig& cfg) {
  RewardBreakdown out;
  out.cost = cost(g, cfg);
  const auto prob = node_success(g);
  for (auto v : g.outputs()) {
    const Node& n = g.node(v);
    OutputContribution c{cfg.gain_of(n), prob[v], prob[v] * cfg.gain_of(n)};
    out.expected_gain += c.contribution;
    out.per_output.emplace(n.id, c);
  }
  out.reward = out.expected_gain - out.cost;
  return out;
}

inline RewardBreakdown expected_reward(const WorkflowGraph& w, const EvaluationConfig& cfg) {
  return expected_reward(GraphIndex(w), cfg);
}

// ---------------------------------------------------------------------------
// Monte Carlo net benefit
// ---------------------------------------------------------------------------

/// Recorded in reports so reruns can be matched to the generator used.
inline constexpr const char* kSamplerAlgorithm = "mt19937_64/splitmix64-blocks-65536";

struct SampleEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::string algorithm = kSamplerAlgorithm;
};

namespace detail {

inline constexpr std::uint64_t kSamplesPerBlock = 65536;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

struct Moments {
  std::uint64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void push(double x) {
    ++n;
    const double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
  }

  // Chan et al. pairwise merge.
  void merge(const Moments& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    const double total = static_cast<double>(n + o.n);
    const double delta = o.mean - mean;
    mean += delta * static_cast<double>(o.n) / total;
    m2 += o.m2 + delta * delta * static_cast<double>(n) * static_cast<double>(o.n) / total;
    n += o.n;
  }
};

}  // namespace detail

/// Simulates `n` executions: inputs are correct with pi, tasks succeed with p
/// when every parent is correct and q otherwise, outputs are correct iff every
/// parent is. Each run is charged the full cost. Samples are drawn in fixed
/// blocks with per-block streams derived from `seed`, so the estimate is
/// identical for any thread count.
inline SampleEstimate sample_net_benefit(const GraphIndex& g, const EvaluationConfig& cfg, std::uint64_t seed,
                                         std::uint64_t n, unsigned threads = 1) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "sample count must be >= 1");
  const double c = cost(g, cfg);

  struct Step {
    std::size_t node;
    Role role;
    double p_ok, p_fail, gain;
  };
  std::vector<Step> plan;
  for (auto v : g.topological()) {
    const Node& nd = g.node(v);
    switch (nd.role()) {
      case Role::Input: plan.push_back({v, Role::Input, nd.input().pi, 0.0, 0.0}); break;
      case Role::Task: plan.push_back({v, Role::Task, nd.task().p, nd.task().q, 0.0}); break;
      case Role::Output: plan.push_back({v, Role::Output, 1.0, 0.0, cfg.gain_of(nd)}); break;
    }
  }

  const std::uint64_t blocks = (n + detail::kSamplesPerBlock - 1) / detail::kSamplesPerBlock;
  std::vector<detail::Moments> per_block(blocks);

  auto run_block = [&](std::uint64_t b) {
    std::mt19937_64 eng(detail::splitmix64(seed ^ detail::splitmix64(b)));
    std::vector<char> correct(g.size(), 0);
    const std::uint64_t begin = b * detail::kSamplesPerBlock;
    const std::uint64_t end = std::min(n, begin + detail::kSamplesPerBlock);
    detail::Moments m;
    for (std::uint64_t s = begin; s < end; ++s) {
      double gained = 0.0;
      for (const auto& step : plan) {
        bool parents_ok = true;
        for (auto u : g.parents(step.node)) parents_ok = parents_ok && correct[u];
        bool ok;
        switch (step.role) {
          case Role::Input: ok = static_cast<double>(eng() >> 11) * 0x1.0p-53 < step.p_ok; break;
          case Role::Task: {
            const double u = static_cast<double>(eng() >> 11) * 0x1.0p-53;
            ok = u < (parents_ok ? step.p_ok : step.p_fail);
            break;
          }
          default:
            ok = parents_ok;
            if (ok) gained += step.gain;
        }
        correct[step.node] = ok;
      }
      m.push(gained - c);
    }
    per_block[b] = m;
  };

  threads = std::max(1u, threads);
  if (threads == 1 || blocks == 1) {
    for (std::uint64_t b = 0; b < blocks; ++b) run_block(b);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < std::min<std::uint64_t>(threads, blocks); ++t)
      pool.emplace_back([&] {
        for (auto b = next++; b < blocks; b = next++) run_block(b);
      });
  }

  detail::Moments total;
  for (const auto& m : per_block) total.merge(m);
  SampleEstimate est;
  est.samples = n;
  est.mean = total.mean;
  est.std_error = n > 1 ? std::sqrt(total.m2 / static_cast<double>(n - 1)) / std::sqrt(static_cast<double>(n)) : 0.0;
  return est;
}

inline SampleEstimate sample_net_benefit(const WorkflowGraph& w, const EvaluationConfig& cfg, std::uint64_t seed,
                                         std::uint64_t n, unsigned threads = 1) {
  return sample_net_benefit(GraphIndex(w), cfg, seed, n, threads);
}

}  // namespace wfeval
