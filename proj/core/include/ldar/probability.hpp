#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace ldar {

enum class Family { normal, laplace, student_t };

/// How a base draw is shifted and scaled into an innovation.
enum class StandardizationMode {
  mean_zero_unit_variance,    // E(eta) = 0, var(eta) = 1
  median_zero_unit_abs_mean,  // median(eta) = 0, E|eta| = 1
};

struct Distribution {
  Family family = Family::normal;
  double dof = 0.0;  // student_t only

  static Distribution normal() { return {Family::normal, 0.0}; }
  static Distribution laplace() { return {Family::laplace, 0.0}; }
  static Distribution student_t(double nu) { return {Family::student_t, nu}; }

  std::string name() const;
  /// Parses "normal", "laplace", "t3", "t4.5", "student_t(3)".
  static Distribution parse(const std::string& text);
};

std::string to_string(StandardizationMode mode);
StandardizationMode parse_mode(const std::string& text);

struct StandardizationConstants {
  double shift = 0.0;
  double scale = 1.0;
};

/// Constants such that (X - shift) / scale meets the mode's moment conditions,
/// where X is the unit base draw (standard normal, Laplace with b = 1, or a
/// standard Student-t). Throws DomainError when the target moment does not exist.
StandardizationConstants standardization(const Distribution& dist, StandardizationMode mode);

/// E|T_nu| evaluated by numerical quadrature of 2 x f(x) over [0, inf).
/// Results are memoized per nu. Requires nu > 1.
double student_t_abs_mean(double nu);

/// Mixes (seed, stream) into a 64-bit seed for an independent generator.
/// Used so that replication r of a run depends only on (seed, r).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

/// Seeded generator with portable variate transforms.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard; every transform below is written out explicitly so draws do not
/// depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on the open interval (0, 1).
  double uniform();
  double normal();
  double laplace();
  /// Gamma(shape, 1).
  double gamma(double shape);
  double student_t(double nu);

 private:
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

/// Stream of iid standardized innovations for one (distribution, mode).
class InnovationSampler {
 public:
  InnovationSampler(const Distribution& dist, StandardizationMode mode, std::uint64_t seed);

  double operator()();
  std::vector<double> draw(std::size_t n);

  const StandardizationConstants& constants() const noexcept { return constants_; }

 private:
  Distribution dist_;
  StandardizationConstants constants_;
  Rng rng_;
};

/// n iid standardized draws; identical for identical arguments.
std::vector<double> innovation_sampler(const Distribution& dist, StandardizationMode mode,
                                       std::size_t n, std::uint64_t seed);

/// P(chi2_df > x) through the regularized upper incomplete gamma function.
double chi2_survival(double x, int df);
double chi2_cdf(double x, int df);

double normal_cdf(double x);
/// Inverse standard normal CDF on (0, 1).
double normal_quantile(double p);
double normal_pdf(double x);

/// Linear-interpolation (type 7) quantile of an ascending sample.
double type7_quantile_sorted(std::span<const double> sorted, double prob);
/// Same, on an unsorted sample (copies and sorts).
double type7_quantile(std::span<const double> sample, double prob);

}  // namespace ldar
