#include "ldar/selection.hpp"

#include <cmath>
#include <limits>

namespace ldar {

namespace {

void check_orders(std::span<const double> y, std::size_t p, std::size_t pmax) {
  if (p == 0) throw DomainError("order p must be at least 1");
  if (pmax < p) throw DomainError("pmax must be at least p");
  if (pmax >= y.size()) throw DomainError("pmax must be smaller than the series length");
}

FitOptions common_sample(FitOptions options, std::size_t pmax) {
  options.sample_start = pmax;
  return options;
}

}  // namespace

double bic_value(double loss, std::size_t effective_n, std::size_t p) {
  const double m = static_cast<double>(effective_n);
  return 2.0 * m * loss + static_cast<double>(2 * p + 1) * std::log(m);
}

double bic(std::span<const double> y, std::size_t p, std::size_t pmax, Method method,
           const FitOptions& options) {
  check_orders(y, p, pmax);
  const FitResult result = fit(y, p, method, common_sample(options, pmax));
  return bic_value(result.loss, y.size() - pmax, p);
}

OrderSelection select_order(std::span<const double> y, std::size_t pmax, Method method,
                            const FitOptions& options) {
  check_orders(y, 1, pmax);
  OrderSelection sel;
  sel.method = method;
  sel.pmax = pmax;
  sel.effective_n = y.size() - pmax;
  sel.bic.assign(pmax, std::numeric_limits<double>::infinity());
  sel.fits.resize(pmax);
  const FitOptions opts = common_sample(options, pmax);
  for (std::size_t p = 1; p <= pmax; ++p) {
    try {
      FitResult result = fit(y, p, method, opts);
      sel.bic[p - 1] = bic_value(result.loss, sel.effective_n, p);
      sel.fits[p - 1] = std::move(result);
    } catch (const Error& e) {
      sel.warnings.push_back("order " + std::to_string(p) + ": " + e.what());
    }
  }
  sel.chosen = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t p = 1; p <= pmax; ++p) {
    if (sel.bic[p - 1] < best) {
      best = sel.bic[p - 1];
      sel.chosen = p;
    }
  }
  if (sel.chosen == 0) {
    throw Error(ErrorCategory::numerical, "selection_failed",
                "every candidate order failed to fit");
  }
  return sel;
}

}  // namespace ldar
