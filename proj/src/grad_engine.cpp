#include "grad_engine.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "parallel.hpp"

namespace galoissat {

void TrainConfig::validate() const {
  if (batch_size < 1) throw std::invalid_argument("batch size must be >= 1");
  if (epochs < 1) throw std::invalid_argument("epochs must be >= 1");
  if (!(temperature > 0.0) || !std::isfinite(temperature))
    throw std::invalid_argument("temperature must be positive");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate))
    throw std::invalid_argument("learning rate must be positive");
  if (clause_width < 2) throw std::invalid_argument("clause width must be >= 2");
  if (!(adam_beta1 >= 0.0 && adam_beta1 < 1.0) || !(adam_beta2 >= 0.0 && adam_beta2 < 1.0))
    throw std::invalid_argument("Adam betas must lie in [0, 1)");
  if (!(adam_eps > 0.0)) throw std::invalid_argument("Adam epsilon must be positive");
}

ClauseTensor ClauseTensor::from(const NormalizedCnf& norm) {
  ClauseTensor t;
  t.width = norm.width;
  t.num_vars = norm.total_vars;
  t.var_index.reserve(norm.cnf.num_clauses() * norm.width);
  t.negated.reserve(norm.cnf.num_clauses() * norm.width);
  for (const Clause& c : norm.cnf.clauses()) {
    if (c.size() != norm.width) throw std::invalid_argument("clause width mismatch");
    for (Literal l : c) {
      t.var_index.push_back(l.var - 1);
      t.negated.push_back(l.negated ? 1 : 0);
    }
  }
  return t;
}

double eval_clause_poly(std::span<const double> s) {
  double unsat = 1.0;
  for (double si : s) unsat *= (1.0 - si);
  return 1.0 - unsat;
}

SoftSample gumbel_softmax_sample(LogitPair theta, LogitPair noise, double tau) {
  if (!std::isfinite(theta[0]) || !std::isfinite(theta[1]) || !std::isfinite(noise[0]) ||
      !std::isfinite(noise[1]))
    throw std::domain_error("non-finite logit or noise");
  if (!(tau > 0.0)) throw std::invalid_argument("temperature must be positive");
  // softmax over two classes == sigmoid of the difference; both branches keep
  // the exponent non-positive.
  double d = ((theta[1] + noise[1]) - (theta[0] + noise[0])) / tau;
  double y1;
  double y0;
  if (d >= 0) {
    double e = std::exp(-d);
    y1 = 1.0 / (1.0 + e);
    y0 = e / (1.0 + e);
  } else {
    double e = std::exp(d);
    y1 = e / (1.0 + e);
    y0 = 1.0 / (1.0 + e);
  }
  return {{y0, y1}, y1 >= y0};
}

namespace {

void check_shapes(const LogitState& state, const ClauseTensor& clauses) {
  if (state.vars != clauses.num_vars)
    throw std::invalid_argument("logit state has " + std::to_string(state.vars) +
                                " variables, clause tensor expects " +
                                std::to_string(clauses.num_vars));
}

}  // namespace

ForwardRecord forward(const LogitState& state, const ClauseTensor& clauses, double tau, Rng& rng,
                      EvalMode mode, unsigned threads) {
  std::uint64_t noise_seed = rng.next();
  std::vector<double> noise(state.theta.size());
  const std::size_t row = state.vars * 2;
  parallel_for(state.batch, threads, [&](std::size_t b) {
    Rng stream = Rng::stream(noise_seed, b);
    for (std::size_t i = 0; i < row; ++i) noise[b * row + i] = stream.gumbel();
  });
  return forward_with_noise(state, clauses, tau, std::move(noise), mode, threads);
}

ForwardRecord forward_with_noise(const LogitState& state, const ClauseTensor& clauses, double tau,
                                 std::vector<double> noise, EvalMode mode, unsigned threads) {
  check_shapes(state, clauses);
  if (noise.size() != state.theta.size()) throw std::invalid_argument("noise shape mismatch");

  ForwardRecord rec;
  rec.batch = state.batch;
  rec.vars = state.vars;
  rec.clauses = clauses.num_clauses();
  rec.mode = mode;
  rec.noise = std::move(noise);
  rec.soft.resize(state.theta.size());
  rec.hard.resize(state.batch * state.vars);
  rec.clause_value.resize(state.batch * rec.clauses);
  rec.loss.resize(state.batch);

  const std::size_t k = clauses.width;
  parallel_for(state.batch, threads, [&](std::size_t b) {
    for (std::size_t v = 0; v < state.vars; ++v) {
      std::size_t i0 = state.index(b, v, 0);
      SoftSample s = gumbel_softmax_sample({state.theta[i0], state.theta[i0 + 1]},
                                           {rec.noise[i0], rec.noise[i0 + 1]}, tau);
      rec.soft[i0] = s.y[0];
      rec.soft[i0 + 1] = s.y[1];
      rec.hard[b * state.vars + v] = s.hard ? 1 : 0;
    }
    double satisfied = 0.0;
    std::vector<double> lits(k);
    for (std::size_t t = 0; t < rec.clauses; ++t) {
      for (std::size_t i = 0; i < k; ++i) {
        std::size_t v = clauses.var_index[t * k + i];
        double x = mode == EvalMode::Hard ? static_cast<double>(rec.hard[b * state.vars + v])
                                          : rec.soft[state.index(b, v, 1)];
        lits[i] = clauses.negated[t * k + i] ? 1.0 - x : x;
      }
      double c = eval_clause_poly(lits);
      rec.clause_value[b * rec.clauses + t] = c;
      satisfied += c;
    }
    rec.loss[b] = -satisfied;
  });
  for (double l : rec.loss)
    if (!std::isfinite(l)) throw std::domain_error("non-finite loss");
  return rec;
}

std::vector<double> backward(const ForwardRecord& rec, const ClauseTensor& clauses, double tau,
                             std::size_t clause_chunk, unsigned threads) {
  if (rec.vars != clauses.num_vars || rec.clauses != clauses.num_clauses())
    throw std::invalid_argument("forward record does not match clause tensor");
  const std::size_t k = clauses.width;
  const std::size_t m = rec.clauses;
  const std::size_t chunk = clause_chunk == 0 ? std::max<std::size_t>(m, 1) : clause_chunk;
  std::vector<double> grad(rec.batch * rec.vars * 2, 0.0);

  parallel_for(rec.batch, threads, [&](std::size_t b) {
    std::vector<double> dloss_dp(rec.vars, 0.0);
    std::vector<double> one_minus(k);
    std::vector<double> suffix(k + 1);
    auto class1 = [&](std::size_t v) { return rec.soft[(b * rec.vars + v) * 2 + 1]; };

    for (std::size_t lo = 0; lo < m; lo += chunk) {
      std::size_t hi = std::min(m, lo + chunk);
      for (std::size_t t = lo; t < hi; ++t) {
        for (std::size_t i = 0; i < k; ++i) {
          std::size_t v = clauses.var_index[t * k + i];
          double x = rec.mode == EvalMode::Hard ? static_cast<double>(rec.hard[b * rec.vars + v])
                                                : class1(v);
          double s = clauses.negated[t * k + i] ? 1.0 - x : x;
          one_minus[i] = 1.0 - s;
        }
        suffix[k] = 1.0;
        for (std::size_t i = k; i-- > 0;) suffix[i] = suffix[i + 1] * one_minus[i];
        double prefix = 1.0;
        for (std::size_t i = 0; i < k; ++i) {
          double dc_ds = prefix * suffix[i + 1];
          prefix *= one_minus[i];
          if (dc_ds == 0.0) continue;
          double ds_dx = clauses.negated[t * k + i] ? -1.0 : 1.0;
          dloss_dp[clauses.var_index[t * k + i]] -= dc_ds * ds_dx;
        }
      }
    }
    for (std::size_t v = 0; v < rec.vars; ++v) {
      double p = class1(v);
      double dp_dtheta1 = p * (1.0 - p) / tau;
      grad[(b * rec.vars + v) * 2 + 1] = dloss_dp[v] * dp_dtheta1;
      grad[(b * rec.vars + v) * 2 + 0] = -dloss_dp[v] * dp_dtheta1;
    }
  });
  return grad;
}

void adam_step(LogitState& state, std::span<const double> grad, const TrainConfig& cfg) {
  if (grad.size() != state.theta.size()) throw std::invalid_argument("gradient shape mismatch");
  for (double g : grad)
    if (!std::isfinite(g)) throw std::domain_error("non-finite gradient");
  ++state.step;
  const double t = static_cast<double>(state.step);
  const double bias1 = 1.0 - std::pow(cfg.adam_beta1, t);
  const double bias2 = 1.0 - std::pow(cfg.adam_beta2, t);
  for (std::size_t i = 0; i < grad.size(); ++i) {
    double& m = state.adam_m[i];
    double& v = state.adam_v[i];
    m = cfg.adam_beta1 * m + (1.0 - cfg.adam_beta1) * grad[i];
    v = cfg.adam_beta2 * v + (1.0 - cfg.adam_beta2) * grad[i] * grad[i];
    double m_hat = m / bias1;
    double v_hat = v / bias2;
    state.theta[i] -= cfg.learning_rate * m_hat / (std::sqrt(v_hat) + cfg.adam_eps);
  }
  for (double th : state.theta)
    if (!std::isfinite(th)) throw std::domain_error("non-finite logit after Adam step");
}

TrainResult train(const NormalizedCnf& norm, const TrainConfig& cfg,
                  const std::function<bool()>& interrupt) {
  cfg.validate();
  ClauseTensor clauses = ClauseTensor::from(norm);
  LogitState state(cfg.batch_size, norm.total_vars);

  Rng init = Rng::stream(cfg.seed, 0);
  for (double& th : state.theta) th = init.normal();
  Rng noise = Rng::stream(cfg.seed, 1);

  TrainResult result;
  result.original_vars = norm.original_vars;
  result.total_vars = norm.total_vars;
  const std::uint64_t evals_per_pass = cfg.batch_size * clauses.num_clauses();

  for (unsigned epoch = 0; epoch < cfg.epochs; ++epoch) {
    if (interrupt && interrupt()) break;
    ForwardRecord rec = forward(state, clauses, cfg.temperature, noise, EvalMode::Hard, cfg.threads);
    std::vector<double> grad =
        backward(rec, clauses, cfg.temperature, cfg.clause_chunk, cfg.threads);
    adam_step(state, grad, cfg);
    ++result.epochs_run;
    result.work += 2 * evals_per_pass;
  }

  // Noise-free scoring pass.
  ForwardRecord final_rec =
      forward_with_noise(state, clauses, cfg.temperature, std::vector<double>(state.theta.size()),
                         EvalMode::Hard, cfg.threads);
  result.work += evals_per_pass;
  result.per_batch_losses = final_rec.loss;

  std::size_t sel = 0;
  for (std::size_t b = 1; b < state.batch; ++b) {
    double cand = final_rec.loss[b];
    double best = final_rec.loss[sel];
    if (cfg.batch_select == BatchSelect::MinLoss ? cand < best : cand > best) sel = b;
  }
  result.selected_batch = sel;
  result.theta_sel.resize(state.vars);
  for (std::size_t v = 0; v < state.vars; ++v)
    result.theta_sel[v] = {state.at(sel, v, 0), state.at(sel, v, 1)};
  return result;
}

}  // namespace galoissat
