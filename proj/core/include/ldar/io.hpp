#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ldar/diagnostics.hpp"
#include "ldar/estimation.hpp"
#include "ldar/experiments.hpp"
#include "ldar/model.hpp"
#include "ldar/risk.hpp"
#include "ldar/selection.hpp"

namespace ldar {

/// Reads one numeric column from a comma-separated file with optional header.
/// `column` is a header name or a 0-based index. The header is detected when
/// the first row's target cell is not numeric. Error codes: io.open,
/// csv.empty, csv.parse (message names the line), csv.missing_column.
TimeSeries ingest_csv(const std::string& path, const std::string& column);
TimeSeries parse_csv(std::string_view content, const std::string& column);

/// One column with a header line; values printed with 17 significant digits.
void write_series_csv(const std::string& path, std::span<const double> values,
                      const std::string& header = "y");

struct FitReport {
  FitResult fit;
  std::optional<CovarianceReport> cov;
};

struct DiagnoseReport {
  FitReport fit;
  DiagnosticsReport diagnostics;
};

using Report = std::variant<FitReport, OrderSelection, DiagnoseReport, BacktestReport, McSummary>;

enum class Format { text, json };
Format parse_format(const std::string& text);

/// JSON schema: an object with "type" (fit, select, diagnose, backtest, mc)
/// and, depending on the type, "method", "params" {alpha, omega, beta},
/// "ase", "loss", "bic", "acf" {rho, gamma}, "q_stat", "p_value" and
/// "backtest" (one entry per tau). Several reports render as an array.
std::string render(const Report& report, Format format);
std::string render(const std::vector<Report>& reports, Format format);

/// Writes to `path`, or to stdout when the path is empty or "-".
void emit_report(const std::vector<Report>& reports, Format format, const std::string& path = "");
void emit_report(const Report& report, Format format, const std::string& path = "");

FitReport fit_report_from_json(const std::string& text);
OrderSelection selection_from_json(const std::string& text);
DiagnoseReport diagnose_report_from_json(const std::string& text);
BacktestReport backtest_from_json(const std::string& text);

/// Whitespace-separated columns "lag rho gamma ci_rho ci_gamma" after a '#' header.
void write_plot_data(const std::string& path, const DiagnosticsReport& report);

}  // namespace ldar
