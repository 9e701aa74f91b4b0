#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ldar/estimation.hpp"

namespace ldar {

/// 2 (n - pmax) loss + (2p + 1) ln(n - pmax), where n - pmax is the size of
/// the common sample t = pmax .. n-1 (0-based).
double bic_value(double loss, std::size_t effective_n, std::size_t p);

/// Fits order p on the common sample and returns its BIC.
double bic(std::span<const double> y, std::size_t p, std::size_t pmax, Method method,
           const FitOptions& options = {});

struct OrderSelection {
  Method method = Method::gqmle;
  std::size_t pmax = 0;
  std::size_t effective_n = 0;
  /// bic[p-1] is BIC(p); +inf where the fit failed.
  std::vector<double> bic;
  std::size_t chosen = 0;
  std::vector<std::optional<FitResult>> fits;
  std::vector<std::string> warnings;
};

/// Fits orders 1..pmax on t = pmax .. n-1, keeps the BIC argmin (ties go to
/// the smaller order). A failed fit scores +inf and adds a warning.
OrderSelection select_order(std::span<const double> y, std::size_t pmax, Method method,
                            const FitOptions& options = {});

}  // namespace ldar
