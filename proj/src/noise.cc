//
// Copyright 2026 The smoothsel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "smoothsel/noise.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <boost/math/special_functions/beta.hpp>

#include "smoothsel/errors.h"

namespace smoothsel {
namespace internal {

// Quantiles of |Z| indexed by the exponential level s = -ln(1 - v), where v
// is the quantile level of |Z|. In s the quantile curve is smooth over the
// whole range, including the polynomial tail, so uniform knots suffice.
class QuantileTable {
 public:
  QuantileTable(double gamma, int knots);

  double Evaluate(double s) const;
  double Exact(double s) const;
  double Survival(double z) const;

 private:
  double TailBisection(double s) const;

  double gamma_;
  double a_;  // 1 / gamma
  double b_;  // 1 - 1 / gamma
  double two_c_;
  double s_max_;
  double step_;
  std::vector<double> z_;
  std::vector<double> slope_;  // dz/ds
};

QuantileTable::QuantileTable(double gamma, int knots)
    : gamma_(gamma), a_(1.0 / gamma), b_(1.0 - 1.0 / gamma) {
  if (knots < 2) throw ParameterError("quantile table needs at least 2 knots");
  two_c_ = gamma * std::sin(std::numbers::pi / gamma) / std::numbers::pi;

  // Survival of |Z| behaves like 2C z^(1-gamma) / (gamma-1) in the tail.
  // Stop the table before the quantile leaves the double range.
  const double log_survival_at_limit =
      std::log(two_c_ / (gamma - 1.0)) - (gamma - 1.0) * 690.0;
  s_max_ = std::min(36.0, -log_survival_at_limit - 1.0);

  step_ = s_max_ / (knots - 1);
  z_.resize(knots);
  slope_.resize(knots);
  for (int i = 0; i < knots; ++i) {
    const double s = i * step_;
    z_[i] = Exact(s);
    // dz/ds = (dv/ds) / g(z) = exp(-s) (1 + z^gamma) / (2C).
    slope_[i] = std::exp(-s) * (1.0 + std::pow(z_[i], gamma_)) / two_c_;
  }
  // Fritsch-Carlson limiter keeps the Hermite interpolant monotone.
  for (int i = 0; i + 1 < knots; ++i) {
    const double secant = (z_[i + 1] - z_[i]) / step_;
    if (secant <= 0.0) {
      slope_[i] = slope_[i + 1] = 0.0;
      continue;
    }
    const double r0 = slope_[i] / secant;
    const double r1 = slope_[i + 1] / secant;
    const double norm = r0 * r0 + r1 * r1;
    if (norm > 9.0) {
      const double tau = 3.0 / std::sqrt(norm);
      slope_[i] = tau * r0 * secant;
      slope_[i + 1] = tau * r1 * secant;
    }
  }
}

double QuantileTable::Exact(double s) const {
  if (s <= 0.0) return 0.0;
  double t;
  double one_minus_t;
  if (s < std::numbers::ln2) {
    t = boost::math::ibeta_inv(a_, b_, -std::expm1(-s), &one_minus_t);
  } else {
    t = boost::math::ibetac_inv(a_, b_, std::exp(-s), &one_minus_t);
  }
  if (one_minus_t <= 0.0) return std::numeric_limits<double>::max();
  return std::exp((std::log(t) - std::log(one_minus_t)) / gamma_);
}

double QuantileTable::Survival(double z) const {
  if (z <= 0.0) return 1.0;
  // With t = z^gamma / (1 + z^gamma), the survival is 1 - I_t(a, b). Form
  // whichever of t and 1 - t is small directly so neither loses digits.
  const double log_zg = gamma_ * std::log(z);
  if (log_zg < 0.0) {
    const double zg = std::exp(log_zg);
    return boost::math::ibetac(a_, b_, zg / (1.0 + zg));
  }
  const double inv = std::exp(-log_zg);
  return boost::math::ibeta(b_, a_, inv / (1.0 + inv));
}

double QuantileTable::TailBisection(double s) const {
  const double target = std::exp(-s);
  double lo = std::log(z_.back());
  double hi = lo + 1.0;
  const double log_max = std::log(std::numeric_limits<double>::max());
  while (hi < log_max && Survival(std::exp(hi)) > target) {
    lo = hi;
    hi = std::min(log_max, hi * 2.0 + 1.0);
  }
  if (Survival(std::exp(hi)) > target) return std::numeric_limits<double>::max();
  // Relative width 1e-10 in z.
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (Survival(std::exp(mid)) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::exp(0.5 * (lo + hi));
}

double QuantileTable::Evaluate(double s) const {
  if (s <= 0.0) return 0.0;
  if (s >= s_max_) return TailBisection(s);
  const double pos = s / step_;
  const std::size_t i =
      std::min(static_cast<std::size_t>(pos), z_.size() - 2);
  const double u = pos - static_cast<double>(i);
  const double u2 = u * u;
  const double u3 = u2 * u;
  const double h00 = 2 * u3 - 3 * u2 + 1;
  const double h10 = u3 - 2 * u2 + u;
  const double h01 = -2 * u3 + 3 * u2;
  const double h11 = u3 - u2;
  return h00 * z_[i] + h10 * step_ * slope_[i] + h01 * z_[i + 1] +
         h11 * step_ * slope_[i + 1];
}

}  // namespace internal

std::string ToString(Sidedness sidedness) {
  return sidedness == Sidedness::kTwoSided ? "two_sided" : "one_sided";
}

NoiseSpec::NoiseSpec(double gamma, Sidedness sidedness,
                     std::shared_ptr<const internal::QuantileTable> table)
    : gamma_(gamma),
      sidedness_(sidedness),
      normalization_(gamma * std::sin(std::numbers::pi / gamma) /
                     (2.0 * std::numbers::pi)),
      table_(std::move(table)) {}

NoiseSpec NoiseSpec::Create(double gamma, Sidedness sidedness, int knots) {
  if (!(gamma > 1.0) || !std::isfinite(gamma)) {
    throw ParameterError("gamma must be a finite value above 1");
  }
  return NoiseSpec(gamma, sidedness,
                   std::make_shared<internal::QuantileTable>(gamma, knots));
}

NoiseSpec NoiseSpec::WithSidedness(Sidedness sidedness) const {
  return NoiseSpec(gamma_, sidedness, table_);
}

double NoiseSpec::Density(double z) const {
  if (sidedness_ == Sidedness::kOneSided) {
    if (z < 0.0) return 0.0;
    return 2.0 * normalization_ / (1.0 + std::pow(z, gamma_));
  }
  return normalization_ / (1.0 + std::pow(std::abs(z), gamma_));
}

double NoiseSpec::Cdf(double z) const {
  const double tail = table_->Survival(std::abs(z));
  if (sidedness_ == Sidedness::kOneSided) {
    return z <= 0.0 ? 0.0 : 1.0 - tail;
  }
  return z < 0.0 ? 0.5 * tail : 1.0 - 0.5 * tail;
}

double NoiseSpec::Quantile(double p) const {
  if (!(p >= 0.0 && p < 1.0)) {
    throw ParameterError("quantile level must lie in [0, 1)");
  }
  if (sidedness_ == Sidedness::kOneSided) {
    return table_->Exact(-std::log1p(-p));
  }
  const double v = std::abs(2.0 * p - 1.0);
  const double z = table_->Exact(-std::log1p(-v));
  return p < 0.5 ? -z : z;
}

AdmissibleParams NoiseSpec::Admissible(double epsilon) const {
  if (!(epsilon > 0.0)) throw ParameterError("epsilon must be positive");
  const double g1 = gamma_ - 1.0;
  return {epsilon / (2.0 * std::pow(g1, g1 / gamma_)), epsilon / (2.0 * g1)};
}

double NoiseSpec::Sample(RngStream& rng) const {
  const uint64_t bits = rng();
  const double u = static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
  const double z = table_->Evaluate(-std::log(u));
  if (sidedness_ == Sidedness::kOneSided) return z;
  return (bits & 1) ? -z : z;
}

double NoiseSpec::AbsQuantileAtLevel(double s) const {
  return table_->Evaluate(s);
}

double NoiseSpec::ExactAbsQuantileAtLevel(double s) const {
  return table_->Exact(s);
}

AdmissibleParams LegacyAdmissibleParams(double gamma, double epsilon) {
  const double v = epsilon / (2.0 * (gamma + 1.0));
  return {v, v};
}

AdmissibilityReport VerifyAdmissibility(const NoiseSpec& spec, double epsilon,
                                        AdmissibleParams params,
                                        const AdmissibilityGrid& grid) {
  if (!(epsilon > 0.0)) throw ParameterError("epsilon must be positive");
  if (grid.z_points < 2 || grid.shift_points < 2 || !(grid.z_min > 0.0) ||
      !(grid.z_max > grid.z_min)) {
    throw ParameterError("invalid admissibility grid");
  }
  const double gamma = spec.gamma();
  std::vector<double> zs{0.0};
  const double log_lo = std::log(grid.z_min);
  const double log_step =
      (std::log(grid.z_max) - log_lo) / (grid.z_points - 1);
  for (int i = 0; i < grid.z_points; ++i) {
    const double z = std::exp(log_lo + i * log_step);
    zs.push_back(z);
    zs.push_back(-z);
  }

  AdmissibilityReport report;
  report.bound = epsilon / 2.0;
  report.max_sliding_log_ratio = -std::numeric_limits<double>::infinity();
  report.max_dilation_log_ratio = -std::numeric_limits<double>::infinity();
  auto record = [&](AdmissibilityProperty property, double z, double shift,
                    double log_ratio) {
    if (log_ratio <= report.bound + grid.slack) return;
    report.passed = false;
    if (!report.witness || log_ratio > report.witness->log_ratio) {
      report.witness = AdmissibilityWitness{property, z, shift, log_ratio};
    }
  };
  // ln h(z) = ln C - log1p(|z|^gamma).
  auto log_kernel = [gamma](double z) {
    return std::log1p(std::pow(std::abs(z), gamma));
  };

  for (int j = 0; j < grid.shift_points; ++j) {
    const double frac = -1.0 + 2.0 * j / (grid.shift_points - 1);
    const double delta = frac * params.alpha;
    const double lambda = frac * params.beta;
    for (double z : zs) {
      const double base = log_kernel(z);
      const double sliding = log_kernel(z + delta) - base;
      report.max_sliding_log_ratio =
          std::max(report.max_sliding_log_ratio, sliding);
      record(AdmissibilityProperty::kSliding, z, delta, sliding);

      const double dilation = -lambda + log_kernel(std::exp(lambda) * z) - base;
      report.max_dilation_log_ratio =
          std::max(report.max_dilation_log_ratio, dilation);
      record(AdmissibilityProperty::kDilation, z, lambda, dilation);
    }
  }
  return report;
}

AdmissibilityReport VerifyAdmissibility(const NoiseSpec& spec, double epsilon,
                                        const AdmissibilityGrid& grid) {
  return VerifyAdmissibility(spec, epsilon, spec.Admissible(epsilon), grid);
}

double SampleGumbel(double scale, RngStream& rng) {
  if (!(scale > 0.0)) throw ParameterError("Gumbel scale must be positive");
  const double u = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
  return -scale * std::log(-std::log(u));
}

double SampleExponential(double rate, RngStream& rng) {
  if (!(rate > 0.0)) throw ParameterError("exponential rate must be positive");
  return -std::log(rng.UniformPositive()) / rate;
}

}  // namespace smoothsel
