#include "spherefill/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "spherefill/errors.hpp"

namespace spherefill {

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  for (;;) {
    const double u = 2.0 * uniform() - 1.0;
    const double v = 2.0 * uniform() - 1.0;
    const double s = u * u + v * v;
    if (s >= 1.0 || s == 0.0) continue;
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }
}

double RadiusModel::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("quantile probability must lie in (0, 1)");
  double lo = 0.0;
  double hi = std::max(mean(), 1e-12);
  while (cdf(hi) < p) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-14 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (cdf(mid) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

void check_parameters(double scale, double shape) {
  if (!(scale > 0.0) || !(shape > 0.0) || !std::isfinite(scale) || !std::isfinite(shape)) {
    throw DomainError("distribution scale and shape must be positive and finite");
  }
}

// Marsaglia & Tsang (2000); shape < 1 handled by the u^(1/k) boost.
double sample_gamma(double shape, double scale, Rng& rng) {
  if (shape < 1.0) {
    for (;;) {
      const double g = sample_gamma(shape + 1.0, 1.0, rng);
      const double x = g * std::pow(rng.uniform(), 1.0 / shape);
      if (x > 0.0) return x * scale;
    }
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = 0.0;
    double v = 0.0;
    do {
      x = rng.normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v * scale;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v * scale;
  }
}

}  // namespace

RadiusDistribution RadiusDistribution::weibull(double scale, double shape) {
  check_parameters(scale, shape);
  return {DistributionKind::weibull, scale, shape, nullptr};
}

RadiusDistribution RadiusDistribution::gamma(double scale, double shape) {
  check_parameters(scale, shape);
  return {DistributionKind::gamma, scale, shape, nullptr};
}

RadiusDistribution RadiusDistribution::custom(std::shared_ptr<const RadiusModel> model) {
  if (!model) throw DomainError("custom distribution requires a model");
  return {DistributionKind::custom, 0.0, 0.0, std::move(model)};
}

std::string RadiusDistribution::name() const {
  switch (kind_) {
    case DistributionKind::weibull: return "weibull";
    case DistributionKind::gamma: return "gamma";
    case DistributionKind::custom: return model_->name();
  }
  return {};
}

double RadiusDistribution::sample(Rng& rng) const {
  switch (kind_) {
    case DistributionKind::weibull:
      // Inverse CDF with u in (0,1): strictly positive.
      return scale_ * std::pow(-std::log(rng.uniform()), 1.0 / shape_);
    case DistributionKind::gamma:
      return sample_gamma(shape_, scale_, rng);
    case DistributionKind::custom:
      return model_->sample(rng);
  }
  return 0.0;
}

double RadiusDistribution::pdf(double r) const {
  if (r < 0.0 || std::isnan(r)) throw DomainError("pdf evaluated at negative radius");
  switch (kind_) {
    case DistributionKind::weibull: {
      const double t = r / scale_;
      if (r == 0.0) {
        if (shape_ > 1.0) return 0.0;
        if (shape_ == 1.0) return 1.0 / scale_;
        return std::numeric_limits<double>::infinity();
      }
      return shape_ / scale_ * std::pow(t, shape_ - 1.0) * std::exp(-std::pow(t, shape_));
    }
    case DistributionKind::gamma: {
      if (r == 0.0) {
        if (shape_ > 1.0) return 0.0;
        if (shape_ == 1.0) return 1.0 / scale_;
        return std::numeric_limits<double>::infinity();
      }
      const double log_f = (shape_ - 1.0) * std::log(r) - r / scale_ - shape_ * std::log(scale_) -
                           std::lgamma(shape_);
      return std::exp(log_f);
    }
    case DistributionKind::custom:
      return model_->pdf(r);
  }
  return 0.0;
}

double RadiusDistribution::cdf(double r) const {
  if (r <= 0.0) return 0.0;
  switch (kind_) {
    case DistributionKind::weibull:
      return -std::expm1(-std::pow(r / scale_, shape_));
    case DistributionKind::gamma:
      return boost::math::gamma_p(shape_, r / scale_);
    case DistributionKind::custom:
      return model_->cdf(r);
  }
  return 0.0;
}

double RadiusDistribution::mean() const {
  switch (kind_) {
    case DistributionKind::weibull: return scale_ * std::tgamma(1.0 + 1.0 / shape_);
    case DistributionKind::gamma: return shape_ * scale_;
    case DistributionKind::custom: return model_->mean();
  }
  return 0.0;
}

double RadiusDistribution::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("quantile probability must lie in (0, 1)");
  switch (kind_) {
    case DistributionKind::weibull: return scale_ * std::pow(-std::log1p(-p), 1.0 / shape_);
    case DistributionKind::gamma: return scale_ * boost::math::gamma_p_inv(shape_, p);
    case DistributionKind::custom: return model_->quantile(p);
  }
  return 0.0;
}

double sample_radius(const RadiusDistribution& dist, Rng& rng) { return dist.sample(rng); }
double pdf(const RadiusDistribution& dist, double r) { return dist.pdf(r); }
double mean_radius(const RadiusDistribution& dist) { return dist.mean(); }

double ks_statistic(std::span<const double> samples, const RadiusDistribution& dist) {
  if (samples.empty()) throw DomainError("KS statistic needs at least one sample");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = dist.cdf(sorted[i]);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

double ks_critical_value(std::size_t n, double alpha) {
  if (n == 0 || !(alpha > 0.0 && alpha < 1.0)) throw DomainError("invalid KS critical value request");
  return std::sqrt(-0.5 * std::log(alpha / 2.0)) / std::sqrt(static_cast<double>(n));
}

}  // namespace spherefill
