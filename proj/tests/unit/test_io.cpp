#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "ldar/error.hpp"
#include "ldar/experiments.hpp"
#include "ldar/io.hpp"

namespace {

namespace fs = std::filesystem;
using ldar::Method;

std::string temp_path(const std::string& name) {
  return (fs::temp_directory_path() / ("ldar_io_" + name)).string();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ldar::Error& e) {
    return e.code();
  }
  return "";
}

ldar::TimeSeries sample_series(std::size_t n, Method m, std::uint64_t seed = 1) {
  ldar::McConfig c;
  c.experiment = 1;
  c.method = m;
  c.n = n;
  c.seed = seed;
  return ldar::experiment_series(c, 0);
}

void expect_same_fit(const ldar::FitReport& a, const ldar::FitReport& b) {
  EXPECT_EQ(a.fit.method, b.fit.method);
  EXPECT_EQ(a.fit.params, b.fit.params);
  EXPECT_EQ(a.fit.loss, b.fit.loss);
  EXPECT_EQ(a.fit.residuals, b.fit.residuals);
  EXPECT_EQ(a.fit.sample_start, b.fit.sample_start);
  EXPECT_EQ(a.fit.n_obs, b.fit.n_obs);
  EXPECT_EQ(a.fit.iterations, b.fit.iterations);
  EXPECT_EQ(a.fit.warnings, b.fit.warnings);
  ASSERT_EQ(a.cov.has_value(), b.cov.has_value());
  if (!a.cov) return;
  EXPECT_EQ(a.cov->ase, b.cov->ase);
  EXPECT_EQ(a.cov->sigma_hat, b.cov->sigma_hat);
  EXPECT_EQ(a.cov->omega_hat, b.cov->omega_hat);
  EXPECT_EQ(a.cov->xi_hat, b.cov->xi_hat);
  EXPECT_EQ(a.cov->f0, b.cov->f0);
  EXPECT_EQ(a.cov->bandwidth, b.cov->bandwidth);
  EXPECT_EQ(a.cov->moments.kappa4, b.cov->moments.kappa4);
  EXPECT_EQ(a.cov->moments.sigma2_sq, b.cov->moments.sigma2_sq);
}

}  // namespace

TEST(Csv, HeaderByName) {
  const auto y = ldar::parse_csv("r\n0.1\n-0.2\n", "r");
  ASSERT_EQ(y.size(), 2u);
  EXPECT_EQ(y[0], 0.1);
  EXPECT_EQ(y[1], -0.2);
}

TEST(Csv, NoHeaderByIndex) {
  const auto y = ldar::parse_csv("1.5\n2.5\n", "0");
  ASSERT_EQ(y.size(), 2u);
  EXPECT_EQ(y[0], 1.5);
  EXPECT_EQ(y[1], 2.5);
}

TEST(Csv, HeaderDetectedWithIndex) {
  const auto y = ldar::parse_csv("date,ret\r\n2020-01-01,1e-3\r\n2020-01-08,-2.5E-2\r\n", "1");
  ASSERT_EQ(y.size(), 2u);
  EXPECT_EQ(y[0], 1e-3);
  EXPECT_EQ(y[1], -2.5e-2);
}

TEST(Csv, QuotedFields) {
  const auto y = ldar::parse_csv("\"name, with comma\",\"v\"\n\"a \"\"b\"\"\",\" 3.5\"\nc,+4\n", "v");
  ASSERT_EQ(y.size(), 2u);
  EXPECT_EQ(y[0], 3.5);
  EXPECT_EQ(y[1], 4.0);
}

TEST(Csv, ErrorCodes) {
  EXPECT_EQ(code_of([] { ldar::parse_csv("", "0"); }), "csv.empty");
  EXPECT_EQ(code_of([] { ldar::parse_csv("r\n", "r"); }), "csv.empty");
  EXPECT_EQ(code_of([] { ldar::parse_csv("r\n1\n", "x"); }), "csv.missing_column");
  EXPECT_EQ(code_of([] { ldar::parse_csv("1,2\n", "5"); }), "csv.missing_column");
  EXPECT_EQ(code_of([] { ldar::ingest_csv(temp_path("does_not_exist.csv"), "0"); }), "io.open");
  try {
    ldar::parse_csv("r\n1.0\nabc\n2.0\n", "r");
    FAIL();
  } catch (const ldar::DataError& e) {
    EXPECT_EQ(e.code(), "csv.parse");
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    EXPECT_EQ(e.exit_code(), 3);
  }
  EXPECT_EQ(code_of([] { ldar::parse_csv("r\n1,0\n", "r"); }), "");
  EXPECT_EQ(code_of([] { ldar::parse_csv("r\n1;0\n", "r"); }), "csv.parse");
  EXPECT_EQ(code_of([] { ldar::parse_csv("r\nnan\n", "r"); }), "csv.parse");
  EXPECT_EQ(code_of([] { ldar::parse_csv("a,b\n1\n", "b"); }), "csv.parse");
}

TEST(Csv, WriteReadRoundTripIsExact) {
  const auto y = sample_series(300, Method::gqmle);
  const auto path = temp_path("roundtrip.csv");
  ldar::write_series_csv(path, y.values());
  const auto z = ldar::ingest_csv(path, "y");
  ASSERT_EQ(z.size(), y.size());
  for (std::size_t i = 0; i < y.size(); ++i) EXPECT_EQ(z[i], y[i]);
  fs::remove(path);
}

TEST(Report, FitJsonRoundTripIsExact) {
  for (Method m : {Method::gqmle, Method::eqmle}) {
    const auto y = sample_series(400, m);
    ldar::FitReport r;
    r.fit = ldar::fit(y, 2, m);
    r.cov = ldar::sandwich_covariance(y, r.fit);
    const std::string text = ldar::render(r, ldar::Format::json);
    for (const char* key : {"\"method\"", "\"params\"", "\"ase\"", "\"loss\""}) {
      EXPECT_NE(text.find(key), std::string::npos) << key;
    }
    expect_same_fit(r, ldar::fit_report_from_json(text));
  }
}

TEST(Report, OtherJsonRoundTrips) {
  const auto y = sample_series(420, Method::eqmle);
  auto sel = ldar::select_order(y, 3, Method::gqmle);
  sel.bic[2] = INFINITY;
  const auto sel2 = ldar::selection_from_json(ldar::render(sel, ldar::Format::json));
  EXPECT_EQ(sel2.bic, sel.bic);
  EXPECT_EQ(sel2.chosen, sel.chosen);

  ldar::DiagnoseReport d;
  d.fit.fit = ldar::fit(y, 1, Method::eqmle);
  d.fit.cov = ldar::sandwich_covariance(y, d.fit.fit);
  d.diagnostics = ldar::portmanteau_test(y, d.fit.fit, 6);
  const std::string dj = ldar::render(d, ldar::Format::json);
  for (const char* key : {"\"acf\"", "\"q_stat\"", "\"p_value\""}) {
    EXPECT_NE(dj.find(key), std::string::npos) << key;
  }
  const auto d2 = ldar::diagnose_report_from_json(dj);
  expect_same_fit(d.fit, d2.fit);
  EXPECT_EQ(d2.diagnostics.acf.rho, d.diagnostics.acf.rho);
  EXPECT_EQ(d2.diagnostics.acf.gamma, d.diagnostics.acf.gamma);
  EXPECT_EQ(d2.diagnostics.cov, d.diagnostics.cov);
  EXPECT_EQ(d2.diagnostics.q_stat, d.diagnostics.q_stat);
  EXPECT_EQ(d2.diagnostics.p_value, d.diagnostics.p_value);

  ldar::BacktestConfig bc;
  bc.window = 400;
  bc.method = Method::eqmle;
  const auto b = ldar::rolling_backtest(y, bc);
  const std::string bj = ldar::render(b, ldar::Format::json);
  EXPECT_NE(bj.find("\"backtest\""), std::string::npos);
  const auto b2 = ldar::backtest_from_json(bj);
  ASSERT_EQ(b2.entries.size(), b.entries.size());
  for (std::size_t j = 0; j < b.entries.size(); ++j) {
    EXPECT_EQ(b2.entries[j].forecasts, b.entries[j].forecasts);
    EXPECT_EQ(b2.entries[j].hits, b.entries[j].hits);
    EXPECT_EQ(b2.entries[j].cc_p, b.entries[j].cc_p);
    EXPECT_EQ(b2.entries[j].dq_p, b.entries[j].dq_p);
  }
  EXPECT_EQ(b2.targets, b.targets);
}

TEST(Report, TextTableHandlesOrderTen) {
  ldar::FitReport r;
  std::vector<double> a(10), bt(10);
  for (int i = 0; i < 10; ++i) {
    a[i] = -0.0123456 * (i + 1);
    bt[i] = 12345.678 * (i + 1);
  }
  r.fit.params = ldar::LdarParams(a, 98765.4321, bt);
  const std::string text = ldar::render(r, ldar::Format::text);
  for (int i = 1; i <= 10; ++i) {
    EXPECT_NE(text.find("alpha_" + std::to_string(i) + " "), std::string::npos);
    EXPECT_NE(text.find("beta_" + std::to_string(i) + " "), std::string::npos);
  }
  EXPECT_NE(text.find("123456.7800"), std::string::npos);
  EXPECT_NE(text.find("98765.4321"), std::string::npos);
  // Every row of the table has the same width up to trailing cells.
  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);
  std::size_t width = 0;
  while (std::getline(lines, line)) {
    if (line.rfind("alpha_", 0) == 0 || line.rfind("beta_", 0) == 0 || line.rfind("omega", 0) == 0) {
      if (width == 0) width = line.size();
      EXPECT_EQ(line.size(), width) << line;
    }
  }
}

TEST(Report, EmptyDiagnosticsRejected) {
  ldar::DiagnoseReport d;
  d.fit.fit.params = ldar::LdarParams({0.1}, 1.0, {0.1});
  EXPECT_THROW(ldar::render(d, ldar::Format::text), ldar::DomainError);
  EXPECT_THROW(ldar::render(d, ldar::Format::json), ldar::DomainError);
  EXPECT_THROW(ldar::write_plot_data(temp_path("plot.dat"), d.diagnostics), ldar::DomainError);
}

TEST(Report, UnwritablePath) {
  ldar::FitReport r;
  r.fit.params = ldar::LdarParams({0.1}, 1.0, {0.1});
  try {
    ldar::emit_report(r, ldar::Format::json, "/nonexistent_dir_for_ldar/out.json");
    FAIL();
  } catch (const ldar::IoError& e) {
    EXPECT_EQ(e.exit_code(), 5);
  }
}

TEST(Report, PlotDataColumns) {
  const auto y = sample_series(500, Method::gqmle);
  const auto f = ldar::fit(y, 1, Method::gqmle);
  const auto d = ldar::portmanteau_test(y, f, 3);
  const auto path = temp_path("plot.dat");
  ldar::write_plot_data(path, d);
  std::istringstream in(read_file(path));
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "# lag rho gamma ci_rho ci_gamma");
  for (std::size_t k = 1; k <= 3; ++k) {
    std::size_t lag;
    double rho, gamma, cr, cg;
    in >> lag >> rho >> gamma >> cr >> cg;
    EXPECT_EQ(lag, k);
    EXPECT_NEAR(rho, d.acf.rho[k - 1], 1e-9);
    EXPECT_NEAR(cg, d.pointwise_ci[3 + k - 1], 1e-9);
  }
  fs::remove(path);
}
