#include "ldar/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace ldar {

using nlohmann::json;

namespace {

// ---- CSV ----

struct Record {
  std::size_t line = 0;
  std::vector<std::string> cells;
};

std::vector<Record> split_records(std::string_view text) {
  std::vector<Record> out;
  Record cur;
  std::string cell;
  std::size_t line = 1;
  cur.line = 1;
  bool quoted = false;
  bool any = false;  // current record has content
  auto finish = [&] {
    cur.cells.push_back(cell);
    cell.clear();
    if (any) out.push_back(std::move(cur));
    cur = Record{};
    any = false;
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        cell += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        quoted = true;
        any = true;
        break;
      case ',':
        cur.cells.push_back(cell);
        cell.clear();
        any = true;
        break;
      case '\r':
        break;
      case '\n':
        finish();
        ++line;
        cur.line = line;
        break;
      default:
        if (c != ' ' && c != '\t') any = true;
        cell += c;
    }
  }
  if (quoted) throw DataError("csv.parse", "unterminated quoted field at end of input");
  finish();
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::optional<double> parse_number(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<std::size_t> parse_index(const std::string& s) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    return std::nullopt;
  }
  std::size_t v = 0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing", "io.write");
  return out;
}

// ---- text formatting ----

std::string fmt(double v, int digits = 4) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows) {
    if (width.size() < r.size()) width.resize(r.size(), 0);
    for (std::size_t j = 0; j < r.size(); ++j) width[j] = std::max(width[j], r[j].size());
  }
  std::ostringstream os;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (j > 0) line += "  ";
      if (j == 0) {
        line += r[j] + std::string(width[j] - r[j].size(), ' ');
      } else {
        line += std::string(width[j] - r[j].size(), ' ') + r[j];
      }
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    os << line << '\n';
  }
  return os.str();
}

std::vector<std::string> param_names(std::size_t p) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= p; ++i) names.push_back("alpha_" + std::to_string(i));
  names.push_back("omega");
  for (std::size_t i = 1; i <= p; ++i) names.push_back("beta_" + std::to_string(i));
  return names;
}

void append_warnings(std::ostringstream& os, const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) os << "warning: " << w << '\n';
}

std::string fit_text(const FitReport& r) {
  std::ostringstream os;
  const FitResult& f = r.fit;
  os << "method " << to_string(f.method) << ", p = " << f.params.order() << ", n_eff = "
     << f.residuals.size() << ", loss = " << fmt(f.loss, 6) << '\n';
  const auto names = param_names(f.params.order());
  const auto theta = f.params.to_vector();
  std::vector<std::vector<std::string>> rows{{"parameter", "estimate", "ase"}};
  for (std::size_t j = 0; j < theta.size(); ++j) {
    rows.push_back({names[j], fmt(theta[j]), r.cov ? "(" + fmt(r.cov->ase[j]) + ")" : "-"});
  }
  os << table(rows);
  if (r.cov && r.cov->f0) {
    os << "f(0) = " << fmt(*r.cov->f0) << ", bandwidth = " << fmt(*r.cov->bandwidth) << '\n';
  }
  append_warnings(os, f.warnings);
  if (r.cov) append_warnings(os, r.cov->warnings);
  return os.str();
}

std::string selection_text(const OrderSelection& s) {
  std::ostringstream os;
  os << "method " << to_string(s.method) << ", pmax = " << s.pmax << ", n - pmax = "
     << s.effective_n << '\n';
  std::vector<std::vector<std::string>> rows{{"p", "BIC", ""}};
  for (std::size_t p = 1; p <= s.bic.size(); ++p) {
    rows.push_back({std::to_string(p), fmt(s.bic[p - 1]), p == s.chosen ? "*" : ""});
  }
  os << table(rows) << "selected p = " << s.chosen << '\n';
  append_warnings(os, s.warnings);
  return os.str();
}

void check_diagnostics(const DiagnosticsReport& d) {
  if (d.M == 0 || d.acf.rho.size() != d.M || d.acf.gamma.size() != d.M ||
      d.pointwise_ci.size() != 2 * d.M) {
    throw DomainError("diagnostics report must hold M >= 1 lags", "report.incomplete");
  }
}

std::string diagnose_text(const DiagnoseReport& r) {
  const DiagnosticsReport& d = r.diagnostics;
  check_diagnostics(d);
  std::ostringstream os;
  os << fit_text(r.fit) << '\n';
  std::vector<std::vector<std::string>> rows{{"lag", "rho", "ci_rho", "gamma", "ci_gamma"}};
  for (std::size_t k = 0; k < d.M; ++k) {
    rows.push_back({std::to_string(k + 1), fmt(d.acf.rho[k]), fmt(d.pointwise_ci[k]),
                    fmt(d.acf.gamma[k]), fmt(d.pointwise_ci[d.M + k])});
  }
  os << table(rows);
  os << "Q(" << d.M << ") = " << fmt(d.q_stat) << ", df = " << d.df
     << ", p-value = " << fmt(d.p_value) << '\n';
  append_warnings(os, d.warnings);
  return os.str();
}

std::string backtest_text(const BacktestReport& b) {
  std::ostringstream os;
  os << "method " << to_string(b.method) << ", p = " << b.p << ", window = " << b.window
     << ", forecasts = " << b.targets.size() << ", skipped = " << b.n_missing << '\n';
  std::vector<std::vector<std::string>> rows{{"tau", "ECR", "CC p", "DQ p"}};
  for (const auto& e : b.entries) {
    rows.push_back({fmt(e.tau, 3), fmt(e.ecr), fmt(e.cc_p), e.dq_p ? fmt(*e.dq_p) : "n/a"});
  }
  os << table(rows);
  for (const auto& e : b.entries) {
    if (!e.dq_error.empty()) os << "tau " << fmt(e.tau, 3) << ": DQ unavailable: " << e.dq_error << '\n';
  }
  append_warnings(os, b.warnings);
  return os.str();
}

std::string mc_text(const McSummary& s) {
  std::ostringstream os;
  const McConfig& c = s.config;
  os << "experiment " << c.experiment << ", method " << to_string(c.method) << ", "
     << c.dist.name() << ", n = " << c.n << ", reps = " << c.reps << ", seed = " << c.seed
     << ", completed = " << s.completed << ", failed = " << s.failures << '\n';
  switch (c.experiment) {
    case 1: {
      os << "Bias (x10), ESD and ASD\n";
      std::vector<std::vector<std::string>> rows{{"", "true", "bias x10", "ESD", "ASD"}};
      for (const auto& p : s.params) {
        rows.push_back({p.name, fmt(p.truth, 1), fmt(10.0 * p.bias, 3), fmt(p.esd, 3),
                        fmt(p.mean_asd, 3)});
      }
      os << table(rows);
      break;
    }
    case 2:
      os << "pmax = " << c.pmax << ", true order " << s.selection.true_order << '\n'
         << table({{"under", "exact", "over"},
                   {fmt(s.selection.under, 1), fmt(s.selection.exact, 1),
                    fmt(s.selection.over, 1)}});
      break;
    case 3:
      os << "c1 = " << fmt(c.c1, 2) << ", c2 = " << fmt(c.c2, 2) << ", M = " << c.M
         << ", level = " << fmt(c.level, 2) << '\n'
         << "rejection rate = " << fmt(s.test.rejection_rate, 3)
         << ", mean Q = " << fmt(s.test.mean_q, 3) << '\n';
      break;
    case 4: {
      os << "window = " << c.window << ", level = " << fmt(c.level, 2) << '\n';
      std::vector<std::vector<std::string>> rows{
          {"tau", "mean ECR", "CC reject", "DQ reject", "DQ n/a"}};
      for (const auto& b : s.backtest) {
        rows.push_back({fmt(b.tau, 3), fmt(b.mean_ecr), fmt(b.cc_rejection, 3),
                        fmt(b.dq_rejection, 3), std::to_string(b.dq_unavailable)});
      }
      os << table(rows);
      break;
    }
    default:
      break;
  }
  append_warnings(os, s.warnings);
  return os.str();
}

// ---- JSON ----

json num(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double to_num(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw DataError("json.parse", "expected a number");
}

json nums(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

std::vector<double> to_nums(const json& j) {
  std::vector<double> v;
  for (const auto& x : j) v.push_back(to_num(x));
  return v;
}

json matrix(const Eigen::MatrixXd& m) {
  json a = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(num(m(i, k)));
    a.push_back(row);
  }
  return a;
}

Eigen::MatrixXd to_matrix(const json& j) {
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows > 0 ? static_cast<Eigen::Index>(j[0].size()) : 0;
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = to_num(j[i][k]);
  }
  return m;
}

json moments_json(const MomentSummary& m) {
  return {{"kappa1", num(m.kappa1)}, {"kappa2", num(m.kappa2)},       {"kappa3", num(m.kappa3)},
          {"kappa4", num(m.kappa4)}, {"tau1", num(m.tau1)},           {"tau2", num(m.tau2)},
          {"sigma1_sq", num(m.sigma1_sq)}, {"sigma2_sq", num(m.sigma2_sq)}};
}

MomentSummary moments_from(const json& j) {
  MomentSummary m;
  m.kappa1 = to_num(j.at("kappa1"));
  m.kappa2 = to_num(j.at("kappa2"));
  m.kappa3 = to_num(j.at("kappa3"));
  m.kappa4 = to_num(j.at("kappa4"));
  m.tau1 = to_num(j.at("tau1"));
  m.tau2 = to_num(j.at("tau2"));
  m.sigma1_sq = to_num(j.at("sigma1_sq"));
  m.sigma2_sq = to_num(j.at("sigma2_sq"));
  return m;
}

json params_json(const LdarParams& p) {
  return {{"alpha", nums(p.alpha)}, {"omega", num(p.omega)}, {"beta", nums(p.beta)}};
}

LdarParams params_from(const json& j) {
  return {to_nums(j.at("alpha")), to_num(j.at("omega")), to_nums(j.at("beta"))};
}

json fit_json(const FitReport& r) {
  const FitResult& f = r.fit;
  json j = {{"type", "fit"},
            {"method", to_string(f.method)},
            {"p", f.params.order()},
            {"params", params_json(f.params)},
            {"loss", num(f.loss)},
            {"residuals", nums(f.residuals)},
            {"sample_start", f.sample_start},
            {"n_obs", f.n_obs},
            {"converged", f.converged},
            {"iterations", f.iterations},
            {"restarts_used", f.restarts_used},
            {"warnings", f.warnings}};
  if (r.cov) {
    const CovarianceReport& c = *r.cov;
    j["ase"] = nums(c.ase);
    json cov = {{"sigma_hat", matrix(c.sigma_hat)},
                {"omega_hat", matrix(c.omega_hat)},
                {"xi_hat", matrix(c.xi_hat)},
                {"moments", moments_json(c.moments)},
                {"warnings", c.warnings}};
    if (c.f0) cov["f0"] = num(*c.f0);
    if (c.bandwidth) cov["bandwidth"] = num(*c.bandwidth);
    j["covariance"] = cov;
  }
  return j;
}

FitReport fit_from(const json& j) {
  FitReport r;
  FitResult& f = r.fit;
  f.method = parse_method(j.at("method").get<std::string>());
  f.params = params_from(j.at("params"));
  f.loss = to_num(j.at("loss"));
  f.residuals = to_nums(j.at("residuals"));
  f.sample_start = j.at("sample_start").get<std::size_t>();
  f.n_obs = j.at("n_obs").get<std::size_t>();
  f.converged = j.at("converged").get<bool>();
  f.iterations = j.at("iterations").get<std::size_t>();
  f.restarts_used = j.at("restarts_used").get<std::size_t>();
  f.warnings = j.at("warnings").get<std::vector<std::string>>();
  if (j.contains("covariance")) {
    const json& cj = j.at("covariance");
    CovarianceReport c;
    c.method = f.method;
    c.ase = to_nums(j.at("ase"));
    c.sigma_hat = to_matrix(cj.at("sigma_hat"));
    c.omega_hat = to_matrix(cj.at("omega_hat"));
    c.xi_hat = to_matrix(cj.at("xi_hat"));
    c.moments = moments_from(cj.at("moments"));
    c.warnings = cj.at("warnings").get<std::vector<std::string>>();
    if (cj.contains("f0")) c.f0 = to_num(cj.at("f0"));
    if (cj.contains("bandwidth")) c.bandwidth = to_num(cj.at("bandwidth"));
    r.cov = std::move(c);
  }
  return r;
}

json selection_json(const OrderSelection& s) {
  return {{"type", "select"},       {"method", to_string(s.method)}, {"pmax", s.pmax},
          {"effective_n", s.effective_n}, {"bic", nums(s.bic)},       {"chosen", s.chosen},
          {"warnings", s.warnings}};
}

OrderSelection selection_from(const json& j) {
  OrderSelection s;
  s.method = parse_method(j.at("method").get<std::string>());
  s.pmax = j.at("pmax").get<std::size_t>();
  s.effective_n = j.at("effective_n").get<std::size_t>();
  s.bic = to_nums(j.at("bic"));
  s.chosen = j.at("chosen").get<std::size_t>();
  s.warnings = j.at("warnings").get<std::vector<std::string>>();
  return s;
}

json diagnose_json(const DiagnoseReport& r) {
  const DiagnosticsReport& d = r.diagnostics;
  check_diagnostics(d);
  json j = fit_json(r.fit);
  j["type"] = "diagnose";
  j["M"] = d.M;
  j["n"] = d.n;
  j["acf"] = {{"rho", nums(d.acf.rho)}, {"gamma", nums(d.acf.gamma)}};
  j["acf_covariance"] = matrix(d.cov);
  j["ci"] = nums(d.pointwise_ci);
  j["q_stat"] = num(d.q_stat);
  j["df"] = d.df;
  j["p_value"] = num(d.p_value);
  j["diagnostic_warnings"] = d.warnings;
  return j;
}

DiagnoseReport diagnose_from(const json& j) {
  DiagnoseReport r;
  r.fit = fit_from(j);
  DiagnosticsReport& d = r.diagnostics;
  d.method = r.fit.fit.method;
  d.M = j.at("M").get<std::size_t>();
  d.n = j.at("n").get<std::size_t>();
  d.acf.rho = to_nums(j.at("acf").at("rho"));
  d.acf.gamma = to_nums(j.at("acf").at("gamma"));
  d.cov = to_matrix(j.at("acf_covariance"));
  d.pointwise_ci = to_nums(j.at("ci"));
  d.q_stat = to_num(j.at("q_stat"));
  d.df = j.at("df").get<int>();
  d.p_value = to_num(j.at("p_value"));
  d.warnings = j.at("diagnostic_warnings").get<std::vector<std::string>>();
  return r;
}

json backtest_json(const BacktestReport& b) {
  json entries = json::array();
  for (const auto& e : b.entries) {
    json je = {{"tau", num(e.tau)},         {"ecr", num(e.ecr)},     {"cc_stat", num(e.cc_stat)},
               {"cc_p", num(e.cc_p)},       {"forecasts", nums(e.forecasts)},
               {"hits", e.hits}};
    if (e.dq_stat) je["dq_stat"] = num(*e.dq_stat);
    if (e.dq_p) je["dq_p"] = num(*e.dq_p);
    if (!e.dq_error.empty()) je["dq_error"] = e.dq_error;
    entries.push_back(je);
  }
  return {{"type", "backtest"}, {"method", to_string(b.method)}, {"window", b.window},
          {"p", b.p},           {"targets", b.targets},           {"n_missing", b.n_missing},
          {"backtest", entries}, {"warnings", b.warnings}};
}

BacktestReport backtest_from(const json& j) {
  BacktestReport b;
  b.method = parse_method(j.at("method").get<std::string>());
  b.window = j.at("window").get<std::size_t>();
  b.p = j.at("p").get<std::size_t>();
  b.targets = j.at("targets").get<std::vector<std::size_t>>();
  b.n_missing = j.at("n_missing").get<std::size_t>();
  b.warnings = j.at("warnings").get<std::vector<std::string>>();
  for (const auto& je : j.at("backtest")) {
    TauBacktest e;
    e.tau = to_num(je.at("tau"));
    e.ecr = to_num(je.at("ecr"));
    e.cc_stat = to_num(je.at("cc_stat"));
    e.cc_p = to_num(je.at("cc_p"));
    e.forecasts = to_nums(je.at("forecasts"));
    e.hits = je.at("hits").get<std::vector<int>>();
    if (je.contains("dq_stat")) e.dq_stat = to_num(je.at("dq_stat"));
    if (je.contains("dq_p")) e.dq_p = to_num(je.at("dq_p"));
    if (je.contains("dq_error")) e.dq_error = je.at("dq_error").get<std::string>();
    b.entries.push_back(std::move(e));
  }
  return b;
}

json mc_json(const McSummary& s) {
  const McConfig& c = s.config;
  json j = {{"type", "mc"},          {"experiment", c.experiment}, {"method", to_string(c.method)},
            {"dist", c.dist.name()}, {"n", c.n},                   {"reps", c.reps},
            {"seed", c.seed},        {"completed", s.completed},   {"failures", s.failures},
            {"warnings", s.warnings}};
  switch (c.experiment) {
    case 1: {
      json rows = json::array();
      for (const auto& p : s.params) {
        rows.push_back({{"name", p.name}, {"truth", num(p.truth)}, {"bias", num(p.bias)},
                        {"esd", num(p.esd)}, {"mean_asd", num(p.mean_asd)}});
      }
      j["params"] = rows;
      break;
    }
    case 2:
      j["pmax"] = c.pmax;
      j["selection"] = {{"under", num(s.selection.under)},
                        {"exact", num(s.selection.exact)},
                        {"over", num(s.selection.over)}};
      break;
    case 3:
      j["c1"] = num(c.c1);
      j["c2"] = num(c.c2);
      j["M"] = c.M;
      j["rejection_rate"] = num(s.test.rejection_rate);
      j["mean_q"] = num(s.test.mean_q);
      break;
    case 4: {
      json rows = json::array();
      for (const auto& b : s.backtest) {
        rows.push_back({{"tau", num(b.tau)},
                        {"mean_ecr", num(b.mean_ecr)},
                        {"cc_rejection", num(b.cc_rejection)},
                        {"dq_rejection", num(b.dq_rejection)},
                        {"dq_unavailable", b.dq_unavailable}});
      }
      j["window"] = c.window;
      j["backtest"] = rows;
      break;
    }
    default:
      break;
  }
  return j;
}

json to_json(const Report& r) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FitReport>) return fit_json(v);
        else if constexpr (std::is_same_v<T, OrderSelection>) return selection_json(v);
        else if constexpr (std::is_same_v<T, DiagnoseReport>) return diagnose_json(v);
        else if constexpr (std::is_same_v<T, BacktestReport>) return backtest_json(v);
        else return mc_json(v);
      },
      r);
}

std::string to_text(const Report& r) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FitReport>) return fit_text(v);
        else if constexpr (std::is_same_v<T, OrderSelection>) return selection_text(v);
        else if constexpr (std::is_same_v<T, DiagnoseReport>) return diagnose_text(v);
        else if constexpr (std::is_same_v<T, BacktestReport>) return backtest_text(v);
        else return mc_text(v);
      },
      r);
}

template <class F>
auto parse_json(const std::string& text, const char* type, F&& build) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw DataError("json.parse", e.what());
  }
  if (j.is_array()) {
    if (j.size() != 1) throw DataError("json.parse", "expected a single report");
    j = j[0];
  }
  if (j.value("type", "") != type) {
    throw DataError("json.parse", std::string("expected a report of type ") + type);
  }
  try {
    return build(j);
  } catch (const json::exception& e) {
    throw DataError("json.parse", e.what());
  }
}

}  // namespace

TimeSeries parse_csv(std::string_view content, const std::string& column) {
  const std::vector<Record> records = split_records(content);
  if (records.empty()) throw DataError("csv.empty", "file holds no rows");
  const std::optional<std::size_t> as_index = parse_index(column);

  std::size_t col = 0;
  std::size_t first = 0;
  const Record& head = records.front();
  if (as_index) {
    col = *as_index;
    if (col >= head.cells.size()) {
      throw DataError("csv.missing_column", "column " + column + " not present (row has " +
                                                std::to_string(head.cells.size()) + " fields)");
    }
    if (!parse_number(head.cells[col])) first = 1;
  } else {
    const auto it = std::find_if(head.cells.begin(), head.cells.end(), [&](const std::string& c) {
      return trim(c) == column;
    });
    if (it == head.cells.end()) {
      throw DataError("csv.missing_column", "no column named '" + column + "'");
    }
    col = static_cast<std::size_t>(it - head.cells.begin());
    first = 1;
  }

  std::vector<double> values;
  values.reserve(records.size() - first);
  for (std::size_t r = first; r < records.size(); ++r) {
    const Record& rec = records[r];
    const std::string where = "line " + std::to_string(rec.line);
    if (col >= rec.cells.size()) throw DataError("csv.parse", where + ": missing field");
    const auto v = parse_number(rec.cells[col]);
    if (!v) {
      throw DataError("csv.parse", where + ": cannot parse '" + rec.cells[col] + "' as a number");
    }
    if (!std::isfinite(*v)) throw DataError("csv.parse", where + ": value is not finite");
    values.push_back(*v);
  }
  if (values.empty()) throw DataError("csv.empty", "no data rows");
  return TimeSeries(std::move(values));
}

TimeSeries ingest_csv(const std::string& path, const std::string& column) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'", "io.open");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str(), column);
}

void write_series_csv(const std::string& path, std::span<const double> values,
                      const std::string& header) {
  std::ofstream out = open_out(path);
  out << header << '\n';
  char buf[64];
  for (double v : values) {
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out.write(buf, ptr - buf);
    out << '\n';
  }
  if (!out) throw IoError("write to '" + path + "' failed", "io.write");
}

Format parse_format(const std::string& text) {
  if (text == "text") return Format::text;
  if (text == "json") return Format::json;
  throw DomainError("format must be text or json", "usage.format");
}

std::string render(const Report& report, Format format) {
  if (format == Format::json) return to_json(report).dump(2) + "\n";
  return to_text(report);
}

std::string render(const std::vector<Report>& reports, Format format) {
  if (reports.size() == 1) return render(reports.front(), format);
  if (format == Format::json) {
    json a = json::array();
    for (const auto& r : reports) a.push_back(to_json(r));
    return a.dump(2) + "\n";
  }
  std::string out;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    if (i > 0) out += '\n';
    out += to_text(reports[i]);
  }
  return out;
}

void emit_report(const std::vector<Report>& reports, Format format, const std::string& path) {
  const std::string body = render(reports, format);
  if (path.empty() || path == "-") {
    std::cout << body << std::flush;
    return;
  }
  std::ofstream out = open_out(path);
  out << body;
  if (!out) throw IoError("write to '" + path + "' failed", "io.write");
}

void emit_report(const Report& report, Format format, const std::string& path) {
  emit_report(std::vector<Report>{report}, format, path);
}

FitReport fit_report_from_json(const std::string& text) {
  return parse_json(text, "fit", fit_from);
}

OrderSelection selection_from_json(const std::string& text) {
  return parse_json(text, "select", selection_from);
}

DiagnoseReport diagnose_report_from_json(const std::string& text) {
  return parse_json(text, "diagnose", diagnose_from);
}

BacktestReport backtest_from_json(const std::string& text) {
  return parse_json(text, "backtest", backtest_from);
}

void write_plot_data(const std::string& path, const DiagnosticsReport& d) {
  check_diagnostics(d);
  std::ofstream out = open_out(path);
  out << "# lag rho gamma ci_rho ci_gamma\n";
  char buf[160];
  for (std::size_t k = 0; k < d.M; ++k) {
    std::snprintf(buf, sizeof buf, "%zu %.10g %.10g %.10g %.10g\n", k + 1, d.acf.rho[k],
                  d.acf.gamma[k], d.pointwise_ci[k], d.pointwise_ci[d.M + k]);
    out << buf;
  }
  if (!out) throw IoError("write to '" + path + "' failed", "io.write");
}

}  // namespace ldar
