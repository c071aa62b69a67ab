#include "cohlb/softmin.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace cohlb {

void StateTable::extend(const SampleSet& s, const ConstraintSet& cs, const MeasureDescriptor& measure,
                        unsigned threads) {
  if (cs.size() != constraints()) throw DimensionError("StateTable: constraint count changed");
  if (s.dim() != cs.dim()) throw DimensionError("StateTable: sample and constraint dimensions differ");
  const std::size_t from = size();
  const std::size_t to = s.size();
  if (to <= from) return;

  cost_.resize(to);
  for (auto& v : lower_) v.resize(to);
  for (auto& v : upper_) v.resize(to);

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto& st = s[i];
      cost_[i] = measure(st);
      for (std::size_t k = 0; k < cs.size(); ++k) {
        const double t = expectation(st, cs[k].op);
        lower_[k][i] = cs[k].lower - t;
        upper_[k][i] = t - cs[k].upper;
      }
    }
  };

  const std::size_t n = to - from;
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (workers == 1) {
    work(from, to);
    return;
  }
  std::vector<std::jthread> pool;
  const std::size_t chunk = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t b = from + w * chunk;
    const std::size_t e = std::min(to, b + chunk);
    if (b < e) pool.emplace_back(work, b, e);
  }
}

StateTable StateTable::build(const SampleSet& s, const ConstraintSet& cs, const MeasureDescriptor& measure,
                             unsigned threads) {
  StateTable t(cs.size());
  t.extend(s, cs, measure, threads);
  return t;
}

Softmin::Softmin(const StateTable& table, double temperature, const SoftminKernels& kernels)
    : table_(&table), temperature_(temperature), kernels_(&kernels) {
  if (!(temperature > 0.0) || !std::isfinite(temperature))
    throw std::invalid_argument("soft-min temperature must be positive and finite");
  if (table.size() == 0) throw std::invalid_argument("soft-min over an empty sample set");
  lagr_.resize(table.size());
  weights_.resize(table.size());
}

double Softmin::evaluate(std::span<const double> packed) {
  const std::size_t nc = table_->constraints();
  if (packed.size() != 2 * nc) throw DimensionError("soft-min: multiplier vector has the wrong length");
  const std::size_t n = table_->size();
  std::copy(table_->cost().begin(), table_->cost().end(), lagr_.begin());
  for (std::size_t k = 0; k < nc; ++k) {
    if (packed[k] != 0.0) kernels_->axpy(packed[k], table_->lower(k).data(), lagr_.data(), n);
    if (packed[nc + k] != 0.0) kernels_->axpy(packed[nc + k], table_->upper(k).data(), lagr_.data(), n);
  }
  last_min_ = kernels_->min(lagr_.data(), n);
  last_sum_ = kernels_->exp_shift_sum(lagr_.data(), last_min_, temperature_, weights_.data(), n);
  return last_min_ - std::log(last_sum_) / temperature_;
}

double Softmin::value(std::span<const double> packed) { return evaluate(packed); }

double Softmin::value_and_gradient(std::span<const double> packed, std::span<double> grad) {
  const double f = evaluate(packed);
  const std::size_t nc = table_->constraints();
  const std::size_t n = table_->size();
  if (grad.size() != 2 * nc) throw DimensionError("soft-min: gradient buffer has the wrong length");
  const double inv = 1.0 / last_sum_;
  for (auto& w : weights_) w *= inv;
  for (std::size_t k = 0; k < nc; ++k) {
    grad[k] = kernels_->dot(weights_.data(), table_->lower(k).data(), n);
    grad[nc + k] = kernels_->dot(weights_.data(), table_->upper(k).data(), n);
  }
  return f;
}

void check_sample_compatibility(const SampleSet& s, const MeasureDescriptor& measure) {
  if (s.size() == 0) throw std::invalid_argument("empty sample set");
  const bool pure = s.mode() == SampleMode::pure;
  if (pure != measure.is_convex_roof)
    throw std::invalid_argument("measure '" + measure.name + "' needs " +
                                (measure.is_convex_roof ? "pure-state" : "mixed-state") + " samples");
}

double softmin_objective(const SampleSet& s, double temperature, const Multipliers& m, const ConstraintSet& cs,
                         const MeasureDescriptor& measure) {
  check_sample_compatibility(s, measure);
  const auto table = StateTable::build(s, cs, measure);
  Softmin f(table, temperature);
  return f.value(m.packed());
}

SoftminGradient softmin_gradient(const SampleSet& s, double temperature, const Multipliers& m,
                                 const ConstraintSet& cs, const MeasureDescriptor& measure) {
  check_sample_compatibility(s, measure);
  const auto table = StateTable::build(s, cs, measure);
  Softmin f(table, temperature);
  std::vector<double> g(2 * cs.size());
  f.value_and_gradient(m.packed(), g);
  const auto nc = static_cast<std::ptrdiff_t>(cs.size());
  return {std::vector<double>(g.begin(), g.begin() + nc), std::vector<double>(g.begin() + nc, g.end())};
}

}  // namespace cohlb
