#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "normalizer.hpp"
#include "rng.hpp"

namespace galoissat {

enum class BatchSelect { MinLoss, MaxLoss };

struct TrainConfig {
  std::size_t batch_size = 64;
  unsigned epochs = 10;
  double learning_rate = 0.5;
  double temperature = 1.0;
  unsigned clause_width = 3;
  std::uint64_t seed = 0;
  BatchSelect batch_select = BatchSelect::MinLoss;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
  /// Clauses per gradient-accumulation chunk; 0 processes all at once.
  std::size_t clause_chunk = 0;
  /// Workers over batch elements. Results do not depend on this value.
  unsigned threads = 1;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

using LogitPair = std::array<double, 2>;

/// Batched logits and Adam moments, laid out as [batch][var][class].
struct LogitState {
  std::size_t batch = 0;
  std::size_t vars = 0;
  std::vector<double> theta;
  std::vector<double> adam_m;
  std::vector<double> adam_v;
  std::uint64_t step = 0;

  LogitState() = default;
  LogitState(std::size_t batch_size, std::size_t num_vars)
      : batch(batch_size), vars(num_vars),
        theta(batch_size * num_vars * 2, 0.0),
        adam_m(theta.size(), 0.0),
        adam_v(theta.size(), 0.0) {}

  std::size_t index(std::size_t b, std::size_t v, int j) const { return (b * vars + v) * 2 + j; }
  double& at(std::size_t b, std::size_t v, int j) { return theta[index(b, v, j)]; }
  double at(std::size_t b, std::size_t v, int j) const { return theta[index(b, v, j)]; }
};

/// Clause literals as dense m x k index/sign matrices over 0-based variables.
struct ClauseTensor {
  std::size_t width = 0;
  std::size_t num_vars = 0;
  std::vector<std::uint32_t> var_index;
  std::vector<std::uint8_t> negated;

  std::size_t num_clauses() const { return width == 0 ? 0 : var_index.size() / width; }

  static ClauseTensor from(const NormalizedCnf& norm);
};

/// Hard runs the clause polynomial on the argmax assignment (the straight-
/// through forward). Soft feeds the class-1 probabilities instead; it exists
/// to check gradients against finite differences.
enum class EvalMode { Hard, Soft };

struct ForwardRecord {
  std::size_t batch = 0;
  std::size_t vars = 0;
  std::size_t clauses = 0;
  EvalMode mode = EvalMode::Hard;
  std::vector<double> noise;         // [b][v][j]
  std::vector<double> soft;          // [b][v][j], rows sum to 1
  std::vector<std::uint8_t> hard;    // [b][v]
  std::vector<double> clause_value;  // [b][t]; 0/1 in hard mode
  std::vector<double> loss;          // [b]
};

/// 1 - prod(1 - s_i). Exact Boolean OR on {0,1} inputs.
double eval_clause_poly(std::span<const double> s);

struct SoftSample {
  LogitPair y;
  bool hard;
};

/// Two-class Gumbel-softmax, evaluated as a sigmoid of the scaled logit
/// difference. Ties go to class 1. Throws on non-finite inputs.
SoftSample gumbel_softmax_sample(LogitPair theta, LogitPair noise, double tau);

/// Draws Gumbel noise for every (b, v, j) from substreams of one value taken
/// from `rng`, then evaluates with forward_with_noise.
ForwardRecord forward(const LogitState& state, const ClauseTensor& clauses, double tau, Rng& rng,
                      EvalMode mode = EvalMode::Hard, unsigned threads = 1);

ForwardRecord forward_with_noise(const LogitState& state, const ClauseTensor& clauses, double tau,
                                 std::vector<double> noise, EvalMode mode = EvalMode::Hard,
                                 unsigned threads = 1);

/// d(loss)/d(theta) for every batch element, in closed form. Clause partials
/// are taken at the values the forward pass used (hard or soft), then passed
/// straight through to the class-1 probability and the softmax Jacobian.
std::vector<double> backward(const ForwardRecord& record, const ClauseTensor& clauses, double tau,
                             std::size_t clause_chunk = 0, unsigned threads = 1);

/// Bias-corrected Adam. Throws std::domain_error on non-finite gradients.
void adam_step(LogitState& state, std::span<const double> grad, const TrainConfig& cfg);

struct TrainResult {
  std::vector<LogitPair> theta_sel;  // total_vars rows
  std::vector<double> per_batch_losses;
  std::size_t selected_batch = 0;
  Var original_vars = 0;
  Var total_vars = 0;
  unsigned epochs_run = 0;
  /// Clause evaluations performed; a deterministic measure of training work.
  std::uint64_t work = 0;
};

/// Trains on a normalized formula and returns the selected batch row. The
/// interrupt callback is polled between epochs; training stops early when it
/// returns true.
TrainResult train(const NormalizedCnf& norm, const TrainConfig& cfg,
                  const std::function<bool()>& interrupt = {});

}  // namespace galoissat
