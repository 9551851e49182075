#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>

namespace spherefill {

/// Seeded pseudorandom stream. A plain value: copy it to fork, pass it by
/// reference to advance. Uniform and normal variates are derived from the raw
/// 64-bit engine output by hand so the sequence is identical on every
/// standard library implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on the open interval (0, 1).
  double uniform() {
    for (;;) {
      const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
      if (u > 0.0) return u;
    }
  }

  /// Standard normal variate (Marsaglia polar method).
  double normal();

  friend bool operator==(const Rng&, const Rng&) = default;

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Extension point: anything that can sample, evaluate its density, and
/// report its mean can drive the packers.
class RadiusModel {
 public:
  virtual ~RadiusModel() = default;
  virtual std::string name() const = 0;
  virtual double sample(Rng& rng) const = 0;
  virtual double pdf(double r) const = 0;
  virtual double cdf(double r) const = 0;
  virtual double mean() const = 0;
  /// Inverse CDF. The default bisects cdf().
  virtual double quantile(double p) const;
};

enum class DistributionKind { weibull, gamma, custom };

/// Radius distribution in micrometres. Weibull(scale=lambda, shape=k) and
/// Gamma(scale=theta, shape=k) are built in; anything else goes through
/// RadiusModel.
class RadiusDistribution {
 public:
  static RadiusDistribution weibull(double scale, double shape);
  static RadiusDistribution gamma(double scale, double shape);
  static RadiusDistribution custom(std::shared_ptr<const RadiusModel> model);

  DistributionKind kind() const { return kind_; }
  double scale() const { return scale_; }
  double shape() const { return shape_; }
  std::string name() const;

  double sample(Rng& rng) const;
  /// Throws DomainError for r < 0.
  double pdf(double r) const;
  double cdf(double r) const;
  double mean() const;
  double quantile(double p) const;

 private:
  RadiusDistribution(DistributionKind kind, double scale, double shape,
                     std::shared_ptr<const RadiusModel> model)
      : kind_(kind), scale_(scale), shape_(shape), model_(std::move(model)) {}

  DistributionKind kind_;
  double scale_;
  double shape_;
  std::shared_ptr<const RadiusModel> model_;
};

double sample_radius(const RadiusDistribution& dist, Rng& rng);
double pdf(const RadiusDistribution& dist, double r);
double mean_radius(const RadiusDistribution& dist);

/// One-sample Kolmogorov-Smirnov statistic sup|F_n - F| of `samples` against
/// the distribution CDF.
double ks_statistic(std::span<const double> samples, const RadiusDistribution& dist);

/// Asymptotic KS critical value sqrt(-ln(alpha/2)/2)/sqrt(n).
double ks_critical_value(std::size_t n, double alpha);

}  // namespace spherefill
