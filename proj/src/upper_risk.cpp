#include "credal/upper_risk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace credal {

namespace {
constexpr double kRiskNoise = 1e-13;
constexpr double kLogMgfNoise = 1e-14;
}  // namespace

UpperRiskFunction::UpperRiskFunction(const CredalSet& set, const LossSpec& spec) : set_(set), spec_(spec) {
  if (spec_.kind() == LossKind::entropic) {
    log_mgf_.reserve(set_.size());
    for (const auto& g : set_.generators()) log_mgf_.push_back(log_mgf(g, spec_.gamma()));
    max_log_mgf_ = *std::max_element(log_mgf_.begin(), log_mgf_.end());
  }
}

double UpperRiskFunction::generator_risk(std::size_t j, double theta) const {
  if (spec_.kind() == LossKind::entropic) {
    const double g = spec_.gamma();
    return theta + std::exp(log_mgf_[j] - g * theta) / g;
  }
  const auto& p = set_[j];
  const auto z = p.space().points();
  double r = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) r += p[i] * loss_value(spec_, theta, z[i]);
  return r;
}

Interval UpperRiskFunction::generator_slope(std::size_t j, double theta) const {
  if (spec_.kind() == LossKind::entropic) {
    const double s = 1.0 - std::exp(log_mgf_[j] - spec_.gamma() * theta);
    return {s, s};
  }
  const auto& p = set_[j];
  const auto z = p.space().points();
  Interval s{0.0, 0.0};
  for (std::size_t i = 0; i < z.size(); ++i) {
    const auto g = loss_subgradient(spec_, theta, z[i]);
    s.lo += p[i] * g.lo;
    s.hi += p[i] * g.hi;
  }
  return s;
}

double UpperRiskFunction::operator()(double theta) const {
  if (spec_.kind() == LossKind::entropic) {
    const double g = spec_.gamma();
    return theta + std::exp(max_log_mgf_ - g * theta) / g;
  }
  double r = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < set_.size(); ++j) r = std::max(r, generator_risk(j, theta));
  return r;
}

std::vector<std::size_t> UpperRiskFunction::active(double theta, double tol) const {
  std::vector<std::size_t> out;
  const double top = (*this)(theta);
  for (std::size_t j = 0; j < set_.size(); ++j) {
    if (generator_risk(j, theta) >= top - tol) out.push_back(j);
  }
  return out;
}

std::vector<std::size_t> UpperRiskFunction::near_active(double theta) const {
  std::vector<std::size_t> out;
  if (spec_.kind() == LossKind::entropic) {
    // risk ordering does not depend on theta
    const double band = kLogMgfNoise * (1.0 + std::abs(max_log_mgf_));
    for (std::size_t j = 0; j < log_mgf_.size(); ++j) {
      if (log_mgf_[j] >= max_log_mgf_ - band) out.push_back(j);
    }
    return out;
  }
  std::vector<double> r(set_.size());
  for (std::size_t j = 0; j < r.size(); ++j) r[j] = generator_risk(j, theta);
  const double top = *std::max_element(r.begin(), r.end());
  const double band = kRiskNoise * (1.0 + std::abs(top));
  for (std::size_t j = 0; j < r.size(); ++j) {
    if (r[j] >= top - band) out.push_back(j);
  }
  return out;
}

UpperRiskFunction::Slopes UpperRiskFunction::slopes(double theta) const {
  Slopes s{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(), 0.0};
  for (auto j : near_active(theta)) {
    const auto g = generator_slope(j, theta);
    s.left = std::min(s.left, g.lo);
    s.right = std::max(s.right, g.hi);
    double scale = 0.0;
    if (spec_.kind() == LossKind::entropic) {
      scale = 1.0 + std::abs(1.0 - g.lo);
    } else {
      const auto& p = set_[j];
      const auto z = p.space().points();
      for (std::size_t i = 0; i < z.size(); ++i) {
        const auto sg = loss_subgradient(spec_, theta, z[i]);
        scale += p[i] * std::max(std::abs(sg.lo), std::abs(sg.hi));
      }
    }
    s.scale = std::max(s.scale, scale);
  }
  return s;
}

}  // namespace credal
