#include "ldar/probability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "ldar/error.hpp"

namespace ldar {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30U)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27U)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31U);
}

double student_t_density(double x, double nu) {
  const double log_norm = std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu) -
                          0.5 * std::log(nu * std::numbers::pi);
  return std::exp(log_norm - 0.5 * (nu + 1.0) * std::log1p(x * x / nu));
}

}  // namespace

std::string Distribution::name() const {
  switch (family) {
    case Family::normal:
      return "normal";
    case Family::laplace:
      return "laplace";
    case Family::student_t: {
      std::ostringstream os;
      os << 't' << dof;
      return os.str();
    }
  }
  return "unknown";
}

Distribution Distribution::parse(const std::string& text) {
  if (text == "normal" || text == "gaussian") return normal();
  if (text == "laplace" || text == "double_exponential") return laplace();
  std::string digits;
  if (text.size() > 1 && text[0] == 't') {
    digits = text.substr(1);
  } else if (text.rfind("student_t(", 0) == 0 && text.back() == ')') {
    digits = text.substr(10, text.size() - 11);
  } else {
    throw DomainError("unknown distribution '" + text + "' (expected normal, laplace or tNU)",
                      "distribution");
  }
  std::size_t used = 0;
  double nu = 0.0;
  try {
    nu = std::stod(digits, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != digits.size() || !(nu > 0.0) || !std::isfinite(nu)) {
    throw DomainError("invalid Student-t degrees of freedom in '" + text + "'", "distribution");
  }
  return student_t(nu);
}

std::string to_string(StandardizationMode mode) {
  return mode == StandardizationMode::mean_zero_unit_variance ? "var" : "absmean";
}

StandardizationMode parse_mode(const std::string& text) {
  if (text == "var" || text == "variance" || text == "mean_zero_unit_variance") {
    return StandardizationMode::mean_zero_unit_variance;
  }
  if (text == "absmean" || text == "abs" || text == "median_zero_unit_abs_mean") {
    return StandardizationMode::median_zero_unit_abs_mean;
  }
  throw DomainError("unknown standardization mode '" + text + "' (expected var or absmean)",
                    "mode");
}

double student_t_abs_mean(double nu) {
  if (!(nu > 1.0)) {
    throw DomainError("E|T_nu| requires nu > 1", "distribution");
  }
  static std::mutex mutex;
  static std::map<double, double> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(nu); it != cache.end()) return it->second;
  }
  boost::math::quadrature::exp_sinh<double> integrator;
  const double half = integrator.integrate(
      [nu](double x) { return x * student_t_density(x, nu); }, 0.0,
      std::numeric_limits<double>::infinity());
  const double value = 2.0 * half;
  std::lock_guard lock(mutex);
  cache.emplace(nu, value);
  return value;
}

StandardizationConstants standardization(const Distribution& dist, StandardizationMode mode) {
  const bool variance = mode == StandardizationMode::mean_zero_unit_variance;
  switch (dist.family) {
    case Family::normal:
      return {0.0, variance ? 1.0 : std::sqrt(2.0 / std::numbers::pi)};
    case Family::laplace:
      // Laplace(0, 1): variance 2, E|X| = 1.
      return {0.0, variance ? std::numbers::sqrt2 : 1.0};
    case Family::student_t: {
      const double nu = dist.dof;
      if (variance) {
        if (!(nu > 2.0)) {
          throw DomainError("Student-t variance standardization requires nu > 2", "distribution");
        }
        return {0.0, std::sqrt(nu / (nu - 2.0))};
      }
      if (!(nu > 1.0)) {
        throw DomainError("Student-t abs-mean standardization requires nu > 1", "distribution");
      }
      return {0.0, student_t_abs_mean(nu)};
    }
  }
  throw DomainError("unknown distribution family", "distribution");
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

Rng::Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

double Rng::uniform() {
  // 53 random bits, shifted by half an ulp so 0 is never returned.
  return (static_cast<double>(engine_() >> 11U) + 0.5) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_normal_;
  }
  const double radius = std::sqrt(-2.0 * std::log(uniform()));
  const double angle = kTwoPi * uniform();
  spare_normal_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

double Rng::laplace() {
  const double u = uniform() - 0.5;
  const double magnitude = -std::log1p(-2.0 * std::abs(u));
  return u < 0.0 ? -magnitude : magnitude;
}

double Rng::gamma(double shape) {
  if (shape < 1.0) {
    // Gamma(a) = Gamma(a + 1) * U^(1/a)
    return gamma(shape + 1.0) * std::pow(uniform(), 1.0 / shape);
  }
  // Marsaglia & Tsang squeeze method.
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = 0.0;
    double v = 0.0;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double Rng::student_t(double nu) {
  const double z = normal();
  const double chi2 = 2.0 * gamma(0.5 * nu);
  return z / std::sqrt(chi2 / nu);
}

InnovationSampler::InnovationSampler(const Distribution& dist, StandardizationMode mode,
                                     std::uint64_t seed)
    : dist_(dist), constants_(standardization(dist, mode)), rng_(seed) {}

double InnovationSampler::operator()() {
  double base = 0.0;
  switch (dist_.family) {
    case Family::normal:
      base = rng_.normal();
      break;
    case Family::laplace:
      base = rng_.laplace();
      break;
    case Family::student_t:
      base = rng_.student_t(dist_.dof);
      break;
  }
  return (base - constants_.shift) / constants_.scale;
}

std::vector<double> InnovationSampler::draw(std::size_t n) {
  std::vector<double> out(n);
  for (auto& x : out) x = (*this)();
  return out;
}

std::vector<double> innovation_sampler(const Distribution& dist, StandardizationMode mode,
                                       std::size_t n, std::uint64_t seed) {
  if (n == 0) throw DomainError("innovation_sampler requires n >= 1");
  InnovationSampler sampler(dist, mode, seed);
  return sampler.draw(n);
}

double chi2_survival(double x, int df) {
  if (df <= 0) throw DomainError("chi-square degrees of freedom must be positive");
  if (std::isnan(x) || x < 0.0) throw DomainError("chi2_survival requires x >= 0");
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  return boost::math::gamma_q(0.5 * df, 0.5 * x);
}

double chi2_cdf(double x, int df) {
  if (df <= 0) throw DomainError("chi-square degrees of freedom must be positive");
  if (std::isnan(x) || x < 0.0) throw DomainError("chi2_cdf requires x >= 0");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return boost::math::gamma_p(0.5 * df, 0.5 * x);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(kTwoPi);
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("normal_quantile requires 0 < p < 1");
  // Phi^{-1}(p) = -sqrt(2) erfc^{-1}(2p); evaluate on the lower tail for accuracy.
  if (p > 0.5) return -normal_quantile(1.0 - p);
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

double type7_quantile_sorted(std::span<const double> sorted, double prob) {
  if (sorted.empty()) throw DegenerateSampleError("quantile of an empty sample");
  if (!(prob >= 0.0 && prob <= 1.0)) throw DomainError("quantile level must lie in [0, 1]");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * prob;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

double type7_quantile(std::span<const double> sample, double prob) {
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  return type7_quantile_sorted(sorted, prob);
}

}  // namespace ldar
