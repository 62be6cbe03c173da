#pragma once

// Wavelet neural network and multilayer perceptron binary classifiers,
// mini-batch gradient descent on cross-entropy + L2, and evaluation metrics.
//
// Both models store all parameters in one flat vector so training, gradient
// checking and serialization are model-agnostic.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <vector>

#include "glaucad/error.hpp"
#include "glaucad/wavelets.hpp"

namespace glaucad {

inline double logistic(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

/// -[y log p + (1 - y) log(1 - p)] computed from the logit.
inline double logit_cross_entropy(double logit, int y) {
  const double softplus = logit > 0 ? logit + std::log1p(std::exp(-logit)) : std::log1p(std::exp(logit));
  return softplus - (y == 1 ? logit : 0.0);
}

inline constexpr double kMinDilation = 1e-3;

/// Three-layer WNN. Hidden wavelon j: psi((w_j . x - b_j) / a_j).
/// Output: logistic(sum_j v_j psi_j + c).
/// Layout per wavelon: w_j (input_dim), b_j, a_j; then v (hidden), c.
class WnnModel {
 public:
  WnnModel() = default;
  WnnModel(std::size_t input_dim, std::size_t hidden, WaveletKind kind)
      : input_dim_(input_dim), hidden_(hidden), kind_(kind), params_(hidden * (input_dim + 2) + hidden + 1, 0.0) {
    for (std::size_t j = 0; j < hidden_; ++j) dilation(j) = 1.0;
  }

  std::size_t input_dim() const noexcept { return input_dim_; }
  std::size_t hidden() const noexcept { return hidden_; }
  WaveletKind kind() const noexcept { return kind_; }
  std::vector<double>& params() noexcept { return params_; }
  const std::vector<double>& params() const noexcept { return params_; }

  double& weight(std::size_t j, std::size_t i) { return params_[j * stride() + i]; }
  double& translation(std::size_t j) { return params_[j * stride() + input_dim_]; }
  double& dilation(std::size_t j) { return params_[j * stride() + input_dim_ + 1]; }
  double& output_weight(std::size_t j) { return params_[hidden_ * stride() + j]; }
  double& output_bias() { return params_.back(); }

  /// True for parameters under L2 (input and output weights).
  bool is_weight(std::size_t k) const {
    if (k >= hidden_ * stride()) return k + 1 < params_.size();
    return k % stride() < input_dim_;
  }

  void initialize(std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0 / std::sqrt(static_cast<double>(std::max<std::size_t>(input_dim_, 1))));
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::normal_distribution<double> out(0.0, 1.0 / std::sqrt(static_cast<double>(std::max<std::size_t>(hidden_, 1))));
    for (std::size_t j = 0; j < hidden_; ++j) {
      for (std::size_t i = 0; i < input_dim_; ++i) weight(j, i) = n(rng);
      translation(j) = u(rng);
      dilation(j) = 1.0;
    }
    for (std::size_t j = 0; j < hidden_; ++j) output_weight(j) = out(rng);
    output_bias() = 0.0;
  }

  void project() {
    for (std::size_t j = 0; j < hidden_; ++j) dilation(j) = std::max(dilation(j), kMinDilation);
  }

  double logit(std::span<const double> x) const { return forward_impl(x, nullptr, 0.0); }
  double forward(std::span<const double> x) const { return logistic(logit(x)); }

  /// Adds d(cross-entropy)/d(params) for one sample to grad; returns the loss.
  double accumulate_gradient(std::span<const double> x, int y, std::span<double> grad) const {
    return forward_impl(x, &grad, static_cast<double>(y));
  }

 private:
  std::size_t stride() const noexcept { return input_dim_ + 2; }

  double forward_impl(std::span<const double> x, std::span<double>* grad, double y) const {
    if (x.size() != input_dim_) throw InputError("wnn: input dimension mismatch");
    const std::size_t s = stride();
    std::vector<WaveletValue> psi(hidden_);
    std::vector<double> z(hidden_);
    double out = params_.back();
    for (std::size_t j = 0; j < hidden_; ++j) {
      const double* w = params_.data() + j * s;
      double dot = 0.0;
      for (std::size_t i = 0; i < input_dim_; ++i) dot += w[i] * x[i];
      const double a = w[input_dim_ + 1];
      z[j] = (dot - w[input_dim_]) / a;
      psi[j] = mother_wavelet_eval(kind_, z[j]);
      out += params_[hidden_ * s + j] * psi[j].value;
    }
    if (!grad) return out;
    const int label = y > 0.5 ? 1 : 0;
    const double loss = logit_cross_entropy(out, label);
    const double delta = logistic(out) - y;
    auto& g = *grad;
    for (std::size_t j = 0; j < hidden_; ++j) {
      const double v = params_[hidden_ * s + j];
      const double a = params_[j * s + input_dim_ + 1];
      g[hidden_ * s + j] += delta * psi[j].value;
      const double dz = delta * v * psi[j].derivative;
      for (std::size_t i = 0; i < input_dim_; ++i) g[j * s + i] += dz * x[i] / a;
      g[j * s + input_dim_] += -dz / a;
      g[j * s + input_dim_ + 1] += -dz * z[j] / a;
    }
    g[params_.size() - 1] += delta;
    return loss;
  }

  std::size_t input_dim_ = 0, hidden_ = 0;
  WaveletKind kind_ = WaveletKind::MexicanHat;
  std::vector<double> params_;
};

/// Logistic-hidden-layer MLP with one logistic output.
/// Layout per layer: weights (out x in, row-major) then biases.
class MlpModel {
 public:
  MlpModel() = default;
  MlpModel(std::size_t input_dim, std::vector<std::size_t> hidden) : input_dim_(input_dim), hidden_(std::move(hidden)) {
    sizes_.push_back(input_dim_);
    for (std::size_t h : hidden_) {
      if (h == 0) throw InputError("mlp: hidden layer of size 0");
      sizes_.push_back(h);
    }
    sizes_.push_back(1);
    std::size_t n = 0;
    for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
      offsets_.push_back(n);
      n += sizes_[l + 1] * sizes_[l] + sizes_[l + 1];
    }
    params_.assign(n, 0.0);
  }

  std::size_t input_dim() const noexcept { return input_dim_; }
  const std::vector<std::size_t>& hidden() const noexcept { return hidden_; }
  std::vector<double>& params() noexcept { return params_; }
  const std::vector<double>& params() const noexcept { return params_; }

  bool is_weight(std::size_t k) const {
    for (std::size_t l = offsets_.size(); l-- > 0;)
      if (k >= offsets_[l]) return k - offsets_[l] < sizes_[l + 1] * sizes_[l];
    return false;
  }

  void initialize(std::mt19937_64& rng) {
    for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
      const double limit = std::sqrt(6.0 / static_cast<double>(sizes_[l] + sizes_[l + 1]));
      std::uniform_real_distribution<double> u(-limit, limit);
      const std::size_t nw = sizes_[l + 1] * sizes_[l];
      for (std::size_t i = 0; i < nw; ++i) params_[offsets_[l] + i] = u(rng);
      for (std::size_t i = 0; i < sizes_[l + 1]; ++i) params_[offsets_[l] + nw + i] = 0.0;
    }
  }

  void project() {}

  double logit(std::span<const double> x) const {
    std::vector<std::vector<double>> acts;
    return run(x, acts);
  }
  double forward(std::span<const double> x) const { return logistic(logit(x)); }

  double accumulate_gradient(std::span<const double> x, int y, std::span<double> grad) const {
    std::vector<std::vector<double>> acts;
    const double out = run(x, acts);
    const double loss = logit_cross_entropy(out, y);
    std::vector<double> delta{logistic(out) - y};
    for (std::size_t l = sizes_.size() - 1; l-- > 0;) {
      const std::size_t in = sizes_[l], outn = sizes_[l + 1];
      const double* w = params_.data() + offsets_[l];
      double* gw = grad.data() + offsets_[l];
      const std::vector<double>& a = acts[l];
      for (std::size_t o = 0; o < outn; ++o) {
        for (std::size_t i = 0; i < in; ++i) gw[o * in + i] += delta[o] * a[i];
        gw[outn * in + o] += delta[o];
      }
      if (l == 0) break;
      std::vector<double> prev(in, 0.0);
      for (std::size_t i = 0; i < in; ++i) {
        double acc = 0.0;
        for (std::size_t o = 0; o < outn; ++o) acc += w[o * in + i] * delta[o];
        prev[i] = acc * a[i] * (1 - a[i]);
      }
      delta = std::move(prev);
    }
    return loss;
  }

 private:
  /// Returns the output logit; acts[l] holds the input to layer l.
  double run(std::span<const double> x, std::vector<std::vector<double>>& acts) const {
    if (x.size() != input_dim_) throw InputError("mlp: input dimension mismatch");
    acts.assign(1, std::vector<double>(x.begin(), x.end()));
    double logit_out = 0.0;
    for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
      const std::size_t in = sizes_[l], outn = sizes_[l + 1];
      const double* w = params_.data() + offsets_[l];
      std::vector<double> next(outn);
      for (std::size_t o = 0; o < outn; ++o) {
        double acc = w[outn * in + o];
        for (std::size_t i = 0; i < in; ++i) acc += w[o * in + i] * acts[l][i];
        next[o] = acc;
      }
      if (l + 2 == sizes_.size()) {
        logit_out = next[0];
        break;
      }
      for (double& v : next) v = logistic(v);
      acts.push_back(std::move(next));
    }
    return logit_out;
  }

  std::size_t input_dim_ = 0;
  std::vector<std::size_t> hidden_;
  std::vector<std::size_t> sizes_, offsets_;
  std::vector<double> params_;
};

template <typename M>
concept Classifier = requires(M m, const M cm, std::span<const double> x, std::span<double> g, std::mt19937_64& rng) {
  { cm.forward(x) } -> std::convertible_to<double>;
  { cm.logit(x) } -> std::convertible_to<double>;
  { cm.accumulate_gradient(x, 1, g) } -> std::convertible_to<double>;
  { cm.is_weight(std::size_t{}) } -> std::convertible_to<bool>;
  { m.params() } -> std::same_as<std::vector<double>&>;
  m.project();
  m.initialize(rng);
};

// ---------------------------------------------------------------- data

struct Dataset {
  std::vector<std::vector<double>> x;
  std::vector<int> y;  ///< 1 = glaucoma, 0 = normal

  std::size_t size() const noexcept { return y.size(); }
  bool empty() const noexcept { return y.empty(); }
  std::size_t dim() const { return x.empty() ? 0 : x.front().size(); }

  void push_back(std::vector<double> row, int label) {
    x.push_back(std::move(row));
    y.push_back(label);
  }
};

inline Dataset subset(const Dataset& d, std::span<const std::size_t> idx) {
  Dataset out;
  for (std::size_t i : idx) out.push_back(d.x[i], d.y[i]);
  return out;
}

struct Split {
  Dataset train, validation, test;
};

/// Stratified seeded split: per class, `train_fraction` to training and the
/// remainder halved between validation and test (validation gets the odd one).
inline Split stratified_split(const Dataset& d, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0 && train_fraction < 1)) throw InputError("train fraction must lie in (0,1)");
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> tr, va, te;
  for (int label : {0, 1}) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < d.size(); ++i)
      if (d.y[i] == label) idx.push_back(i);
    std::shuffle(idx.begin(), idx.end(), rng);
    const auto n_train = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(idx.size())));
    const std::size_t rest = idx.size() - n_train;
    const std::size_t n_val = (rest + 1) / 2;
    for (std::size_t k = 0; k < idx.size(); ++k)
      (k < n_train ? tr : k < n_train + n_val ? va : te).push_back(idx[k]);
  }
  for (auto* v : {&tr, &va, &te}) std::ranges::sort(*v);
  Split s{subset(d, tr), subset(d, va), subset(d, te)};
  if (s.train.empty() || s.validation.empty() || s.test.empty()) throw InputError("split produced an empty partition");
  return s;
}

/// Per-feature z-score fitted on one dataset.
struct Normalizer {
  std::vector<double> mean, scale;

  static Normalizer fit(const Dataset& d) {
    if (d.empty()) throw InputError("normalizer: empty data");
    Normalizer n;
    const std::size_t dim = d.dim();
    n.mean.assign(dim, 0.0);
    n.scale.assign(dim, 0.0);
    for (const auto& row : d.x)
      for (std::size_t i = 0; i < dim; ++i) n.mean[i] += row[i];
    for (double& m : n.mean) m /= static_cast<double>(d.size());
    for (const auto& row : d.x)
      for (std::size_t i = 0; i < dim; ++i) n.scale[i] += (row[i] - n.mean[i]) * (row[i] - n.mean[i]);
    for (double& s : n.scale) {
      s = std::sqrt(s / static_cast<double>(d.size()));
      if (!(s > 1e-12)) s = 1.0;
    }
    return n;
  }

  std::vector<double> apply(std::span<const double> x) const {
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = (x[i] - mean[i]) / scale[i];
    return out;
  }

  Dataset apply(const Dataset& d) const {
    Dataset out;
    for (std::size_t i = 0; i < d.size(); ++i) out.push_back(apply(d.x[i]), d.y[i]);
    return out;
  }
};

// ------------------------------------------------------------- metrics

struct Metrics {
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
  double loss = 0.0;  ///< mean cross-entropy

  std::size_t total() const noexcept { return tp + fp + tn + fn; }
  static double ratio(std::size_t a, std::size_t b) { return b == 0 ? 0.0 : static_cast<double>(a) / static_cast<double>(b); }
  double accuracy() const { return 100.0 * ratio(tp + tn, total()); }
  double error() const { return 100.0 - accuracy(); }
  double sensitivity() const { return 100.0 * ratio(tp, tp + fn); }
  double specificity() const { return 100.0 * ratio(tn, tn + fp); }
  double tp_rate() const { return ratio(tp, tp + fn); }
  double fn_rate() const { return ratio(fn, tp + fn); }
  double tn_rate() const { return ratio(tn, tn + fp); }
  double fp_rate() const { return ratio(fp, tn + fp); }
};

inline constexpr double kDecisionThreshold = 0.5;

inline Metrics metrics_from(std::span<const double> prob, std::span<const int> y) {
  if (prob.empty()) throw InputError("evaluate: empty data");
  Metrics m;
  for (std::size_t i = 0; i < prob.size(); ++i) {
    const bool pred = prob[i] >= kDecisionThreshold;
    if (y[i] == 1) ++(pred ? m.tp : m.fn);
    else ++(pred ? m.fp : m.tn);
  }
  return m;
}

template <Classifier M>
Metrics evaluate(const M& model, const Dataset& d) {
  if (d.empty()) throw InputError("evaluate: empty data");
  std::vector<double> p;
  double loss = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double z = model.logit(d.x[i]);
    p.push_back(logistic(z));
    loss += logit_cross_entropy(z, d.y[i]);
  }
  Metrics m = metrics_from(p, d.y);
  m.loss = loss / static_cast<double>(d.size());
  return m;
}

// ------------------------------------------------------------ training

struct TrainConfig {
  int epochs = 100;
  std::size_t batch_size = 16;
  double learning_rate = 0.01;
  double lambda = 1e-4;
  std::uint64_t seed = 1;

  void validate() const {
    if (epochs < 0) throw InputError("train.epochs must be >= 0");
    if (batch_size < 1) throw InputError("train.batch_size must be >= 1");
    if (!(learning_rate >= 0) || !std::isfinite(learning_rate)) throw InputError("train.lr must be finite and >= 0");
    if (!(lambda >= 0) || !std::isfinite(lambda)) throw InputError("train.lambda must be finite and >= 0");
  }
};

struct EpochRecord {
  int epoch = 0;
  double train_loss = 0, v_loss = 0, t_loss = 0;
  double v_error = 0, t_error = 0;  ///< misclassification, percent
  double weight_norm = 0;
};

inline double l2_penalty(const auto& model) {
  double acc = 0.0;
  const auto& p = model.params();
  for (std::size_t k = 0; k < p.size(); ++k)
    if (model.is_weight(k)) acc += p[k] * p[k];
  return 0.5 * acc;
}

/// Mean cross-entropy over `batch` + (lambda/2)||w||^2, with its gradient.
template <Classifier M>
double batch_loss_gradient(const M& model, const Dataset& d, std::span<const std::size_t> batch, double lambda,
                           std::vector<double>& grad) {
  const auto& p = model.params();
  grad.assign(p.size(), 0.0);
  double loss = 0.0;
  for (std::size_t i : batch) loss += model.accumulate_gradient(d.x[i], d.y[i], grad);
  const double inv = 1.0 / static_cast<double>(batch.size());
  for (double& g : grad) g *= inv;
  for (std::size_t k = 0; k < p.size(); ++k)
    if (model.is_weight(k)) grad[k] += lambda * p[k];
  return loss * inv + lambda * l2_penalty(model);
}

template <Classifier M>
struct TrainResult {
  M model;
  std::vector<EpochRecord> history;
};

/// Mini-batch gradient descent. Expects already-normalized splits; the
/// shuffle order is fixed by cfg.seed, so runs are reproducible.
template <Classifier M>
TrainResult<M> train(M model, const Split& data, const TrainConfig& cfg) {
  cfg.validate();
  if (data.train.empty() || data.validation.empty() || data.test.empty())
    throw InputError("train: empty split partition");
  std::mt19937_64 rng(cfg.seed);
  std::vector<std::size_t> order(data.train.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> grad;
  TrainResult<M> out;
  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double loss = 0.0;
    std::size_t batches = 0;
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const std::size_t end = std::min(order.size(), start + cfg.batch_size);
      const std::span<const std::size_t> batch(order.data() + start, end - start);
      loss += batch_loss_gradient(model, data.train, batch, cfg.lambda, grad);
      ++batches;
      auto& p = model.params();
      for (std::size_t k = 0; k < p.size(); ++k) p[k] -= cfg.learning_rate * grad[k];
      model.project();
    }
    if (!std::ranges::all_of(model.params(), [](double v) { return std::isfinite(v); }))
      throw NumericError("training diverged (non-finite parameters)");
    const Metrics v = evaluate(model, data.validation), t = evaluate(model, data.test);
    EpochRecord r;
    r.epoch = epoch;
    r.train_loss = loss / static_cast<double>(batches);
    r.v_loss = v.loss;
    r.t_loss = t.loss;
    r.v_error = v.error();
    r.t_error = t.error();
    r.weight_norm = std::sqrt(2.0 * l2_penalty(model));
    out.history.push_back(r);
  }
  out.model = std::move(model);
  return out;
}

// ------------------------------------------------------ gradient check

inline constexpr double kGradientCheckStep = 1e-5;

/// Max over parameters of |analytic - numeric| / max(|analytic|, |numeric|, 1e-6),
/// for the single-sample loss plus the L2 term.
template <Classifier M>
double gradient_check(const M& model, std::span<const double> x, int y, double lambda = 1e-4) {
  Dataset d;
  d.push_back(std::vector<double>(x.begin(), x.end()), y);
  const std::size_t only = 0;
  std::vector<double> analytic, scratch;
  batch_loss_gradient(model, d, std::span(&only, 1), lambda, analytic);
  M probe = model;
  double worst = 0.0;
  for (std::size_t k = 0; k < analytic.size(); ++k) {
    const double orig = probe.params()[k];
    probe.params()[k] = orig + kGradientCheckStep;
    const double up = batch_loss_gradient(probe, d, std::span(&only, 1), lambda, scratch);
    probe.params()[k] = orig - kGradientCheckStep;
    const double down = batch_loss_gradient(probe, d, std::span(&only, 1), lambda, scratch);
    probe.params()[k] = orig;
    const double numeric = (up - down) / (2 * kGradientCheckStep);
    const double denom = std::max({std::abs(analytic[k]), std::abs(numeric), 1e-6});
    worst = std::max(worst, std::abs(analytic[k] - numeric) / denom);
  }
  return worst;
}

}  // namespace glaucad
