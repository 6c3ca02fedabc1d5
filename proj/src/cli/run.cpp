#include "sharpconvex/cli/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "CLI11.hpp"
#include "sharpconvex/acceptance.hpp"
#include "sharpconvex/cli/figures.hpp"
#include "sharpconvex/cli/report.hpp"
#include "sharpconvex/convexity.hpp"
#include "sharpconvex/errors.hpp"
#include "sharpconvex/grid.hpp"
#include "sharpconvex/logsobolev.hpp"
#include "sharpconvex/parallel.hpp"
#include "sharpconvex/spherical_means.hpp"
#include "sharpconvex/ultraspherical.hpp"

namespace sharpconvex::cli {
namespace {

// Raised for configuration problems detected after parsing; maps to exit 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string n, p, q, m, r, lambda, a_grid, b_grid, s_grid, precision;
  std::string which = "all";
  std::string out;
  std::string format = "csv";
  int quad_order = 0;
  double tol = kDefaultMarginTol;
  int jobs = 1;
};

struct Outcome {
  Report report;
  bool pass = true;
  std::vector<std::pair<std::string, Table>> extra_files;  // figures only
};

std::vector<double> values_of(const std::string& flag, const std::string& given, const std::string& fallback) {
  const std::string& spec = given.empty() ? fallback : given;
  try {
    return grid::parse(spec);
  } catch (const ArgumentError& e) {
    throw UsageError("--" + flag + ": " + e.what());
  }
}

double scalar_of(const std::string& flag, const std::string& given, const std::string& fallback) {
  const auto v = values_of(flag, given, fallback);
  if (v.size() != 1) throw UsageError("--" + flag + " expects a single value");
  return v.front();
}

int integer_of(const std::string& flag, const std::string& given, const std::string& fallback) {
  const double v = scalar_of(flag, given, fallback);
  if (v != std::floor(v) || std::abs(v) > 1e6) throw UsageError("--" + flag + " expects an integer");
  return static_cast<int>(v);
}

int resolve_order(int flag_value) {
  int order = quadrature::kDefaultOrder;
  if (flag_value != 0) {
    order = flag_value;
  } else if (const char* env = std::getenv("SHARPCONVEX_QUAD_ORDER"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0') throw UsageError("SHARPCONVEX_QUAD_ORDER must be an integer");
    order = static_cast<int>(std::clamp<long>(v, -1, quadrature::kMaxOrder + 1));
  }
  if (order < quadrature::kMinOrder || order > quadrature::kMaxOrder) {
    throw UsageError("quadrature order must lie in [" + std::to_string(quadrature::kMinOrder) + ", " +
                     std::to_string(quadrature::kMaxOrder) + "]");
  }
  return order;
}

Json report_json(const VerifyReport& r) {
  return {{"pass", r.pass},
          {"worst_margin", number_cell(r.worst_margin)},
          {"witness", number_cell(r.witness)},
          {"grid_size", r.grid_size},
          {"quad_order", r.quad_order},
          {"tolerance", number_cell(r.tolerance)},
          {"note", r.note}};
}

Outcome verify_theorem_cmd(const Options& o, int order) {
  const int n = integer_of("n", o.n, "2");
  const double p = scalar_of("p", o.p, "1");
  const double sharp = convexity::sharp_lambda(n, p);
  const double lambda = o.lambda.empty() ? sharp : scalar_of("lambda", o.lambda, "");
  const std::string a_spec = o.a_grid.empty() ? "0.001:100:400:log" : o.a_grid;
  const auto grid = values_of("a-grid", a_spec, "");

  Outcome out;
  out.report.parameters = {{"n", n}, {"p", p}, {"lambda", lambda}, {"a_grid", a_spec}};
  const auto rep = convexity::verify_theorem({n, p, lambda, grid}, order, o.tol);
  out.pass = rep.pass;
  out.report.summary = report_json(rep);
  out.report.summary["lambda"] = lambda;
  out.report.summary["sharp_lambda"] = sharp;

  auto& t = out.report.table;
  t.columns = {"a", "sphere_mean", "bound", "margin"};
  const auto means = parallel_map(grid.size(), [&](std::size_t i) {
    return spherical::sphere_mean({n, p, grid[i], 1.0}, rep.quad_order);
  });
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double bound = std::pow(1.0 + lambda * grid[i] * grid[i], 0.5 * p);
    t.rows.push_back({number_cell(grid[i]), number_cell(means[i]), number_cell(bound), number_cell(means[i] - bound)});
  }
  return out;
}

Outcome best_lambda_cmd(const Options& o, int order) {
  const int n = integer_of("n", o.n, "2");
  const double p = scalar_of("p", o.p, "1");
  const std::string a_spec = o.a_grid.empty() ? "0.001:10:200:log" : o.a_grid;
  const auto grid = values_of("a-grid", a_spec, "");

  Outcome out;
  out.report.parameters = {{"n", n}, {"p", p}, {"a_grid", a_spec}};
  const auto r = convexity::best_lambda(n, p, grid, order);
  const double sharp = convexity::sharp_lambda(n, p);
  out.pass = std::abs(r.limit_at_zero - sharp) <= r.tolerance && r.value <= r.limit_at_zero + r.tolerance;
  out.report.summary = {{"pass", out.pass},
                        {"value", number_cell(r.value)},
                        {"argmin", number_cell(r.argmin)},
                        {"limit_at_zero", number_cell(r.limit_at_zero)},
                        {"sharp_lambda", sharp},
                        {"tolerance", r.tolerance},
                        {"quad_order", order}};
  auto& t = out.report.table;
  t.columns = {"a", "lambda_star"};
  const auto values = parallel_map(grid.size(), [&](std::size_t i) { return convexity::lambda_star(n, p, grid[i], order); });
  for (std::size_t i = 0; i < grid.size(); ++i) t.rows.push_back({number_cell(grid[i]), number_cell(values[i])});
  return out;
}

void scan_row(Table& t, const ultraspherical::ScanRow& row) {
  t.rows.push_back({number_cell(row.m), number_cell(row.p), number_cell(row.q), number_cell(row.r_star),
                    number_cell(row.necessary_r), number_cell(row.ratio), row.status, row.label});
}

const std::vector<std::string> kScanColumns = {"m", "p", "q", "r_star", "necessary_r", "ratio", "status", "label"};

Outcome r_star_cmd(const Options& o, int order) {
  const double m = scalar_of("m", o.m, "0");
  const double p = scalar_of("p", o.p, "1");
  const double q = scalar_of("q", o.q, "2");
  const double precision = scalar_of("precision", o.precision, "1e-4");
  const std::string b_spec = o.b_grid.empty() ? "0.001:1000:120:log" : o.b_grid;
  const auto grid = values_of("b-grid", b_spec, "");

  Outcome out;
  out.report.parameters = {{"m", m}, {"p", p}, {"q", q}, {"precision", precision}, {"b_grid", b_spec}};
  const double nec = ultraspherical::necessary_r(m, p, q);
  const double rs = ultraspherical::r_star(m, p, q, precision, grid, order, o.tol);
  out.pass = rs <= nec + precision;
  ultraspherical::ScanRow row{m, p, q, rs, nec, rs / nec, "ok",
                              std::abs(rs - nec) <= precision ? ultraspherical::kConsistentLabel
                                                              : ultraspherical::kBelowLabel};
  out.report.table.columns = kScanColumns;
  scan_row(out.report.table, row);
  out.report.summary = {{"pass", out.pass},
                        {"r_star", number_cell(rs)},
                        {"necessary_r", number_cell(nec)},
                        {"ratio", number_cell(rs / nec)},
                        {"label", row.label},
                        {"quad_order", order}};
  return out;
}

Outcome scan_cmd(const Options& o, int order) {
  const auto ms = values_of("m", o.m, "-1,0,1,2");
  const auto ps = values_of("p", o.p, "1.5,2,6");
  const auto qs = values_of("q", o.q, "4,8");
  const double precision = scalar_of("precision", o.precision, "1e-3");
  const std::string b_spec = o.b_grid.empty() ? "0.001:1000:120:log" : o.b_grid;
  const auto grid = values_of("b-grid", b_spec, "");
  if (!(precision >= 1e-6 && precision <= 1e-2)) throw UsageError("--precision must lie in [1e-6, 1e-2]");

  Outcome out;
  out.report.parameters = {{"m", o.m.empty() ? "-1,0,1,2" : o.m},
                           {"p", o.p.empty() ? "1.5,2,6" : o.p},
                           {"q", o.q.empty() ? "4,8" : o.q},
                           {"precision", precision},
                           {"b_grid", b_spec}};
  const auto rows = ultraspherical::scan_region(ms, ps, qs, precision, grid, order, o.tol);
  out.report.table.columns = kScanColumns;
  int consistent = 0;
  int below = 0;
  int failed = 0;
  for (const auto& row : rows) {
    scan_row(out.report.table, row);
    if (row.status != "ok") {
      ++failed;
      continue;
    }
    if (row.r_star > row.necessary_r + precision) out.pass = false;
    (row.label == ultraspherical::kConsistentLabel ? consistent : below) += 1;
  }
  if (failed > 0) out.pass = false;
  out.report.summary = {{"pass", out.pass},
                        {"rows", rows.size()},
                        {"consistent_with_sharpness", consistent},
                        {"below_necessary_bound", below},
                        {"failed_cells", failed},
                        {"quad_order", order},
                        {"note", "ratios near 1 are numerical evidence, not proof"}};
  return out;
}

Outcome logsobolev_cmd(const Options& o, int order) {
  logsobolev::ChainGrids g;
  const std::string l_spec = o.lambda.empty() ? "0,0.5,1,2,5" : o.lambda;
  const std::string s_spec = o.s_grid.empty() ? "3.01,3.5,4,6,10" : o.s_grid;
  const std::string b_spec = o.b_grid.empty() ? "0.01,0.1,0.5,1,2,5" : o.b_grid;
  g.lambdas = values_of("lambda", l_spec, "");
  g.s_values = values_of("s-grid", s_spec, "");
  g.btildes = values_of("b-grid", b_spec, "");

  Outcome out;
  out.report.parameters = {{"lambda", l_spec}, {"s_grid", s_spec}, {"b_grid", b_spec}};
  const auto chain = logsobolev::verify_chain(g, order, o.tol);

  const auto u_grid = grid::linspace(-1.0, 1.0, 41);
  bool h_ok = true;
  bool phi_ok = true;
  int indeterminate = 0;
  for (double lambda : g.lambdas) {
    h_ok = logsobolev::h_structure(lambda, u_grid).pass && h_ok;
    for (double a : {0.1, 0.5, 0.9}) {
      const auto s = logsobolev::phi_r_single_sign_change(lambda, a, logsobolev::default_r_grid(a));
      phi_ok = s.pass && phi_ok;
      indeterminate += s.indeterminate ? 1 : 0;
    }
  }
  out.pass = chain.pass() && h_ok && phi_ok;
  out.report.summary = {{"pass", out.pass},
                        {"mw", report_json(chain.mw)},
                        {"log", report_json(chain.log_ineq)},
                        {"in02", report_json(chain.in02)},
                        {"moment_comparison", report_json(chain.moment)},
                        {"norm_monotone_in_s", report_json(chain.monotone)},
                        {"entropy_nonnegative", chain.entropy_nonnegative},
                        {"chain_consistent", chain.chain_consistent},
                        {"h_structure", h_ok},
                        {"phi_single_sign_change", phi_ok},
                        {"phi_indeterminate_near_crossing", indeterminate},
                        {"quad_order", order}};
  auto& t = out.report.table;
  t.columns = {"lambda", "s", "btilde", "entropy", "mw_margin", "log_margin", "in02_margin", "moment_margin", "pass"};
  for (const auto& row : chain.rows) {
    const bool pass = row.mw.pass && row.log_ineq.pass && row.in02.pass && row.moment.pass;
    t.rows.push_back({number_cell(row.params.lambda), number_cell(row.params.s), number_cell(row.params.btilde),
                      number_cell(row.entropy), number_cell(row.mw.worst_margin),
                      number_cell(row.log_ineq.worst_margin), number_cell(row.in02.worst_margin),
                      number_cell(row.moment.worst_margin), pass});
  }
  return out;
}

Outcome figures_cmd(const Options& o) {
  if (o.which != "fig1" && o.which != "fig2" && o.which != "all") {
    throw UsageError("--which must be fig1, fig2 or all");
  }
  Outcome out;
  out.report.parameters = {{"which", o.which}};
  Json files = Json::array();
  if (o.which != "fig2") out.extra_files.emplace_back("fig1", fig1_table());
  if (o.which != "fig1") out.extra_files.emplace_back("fig2", fig2_table());
  out.report.table.columns = {"figure", "rows"};
  for (const auto& [name, table] : out.extra_files) {
    out.report.table.rows.push_back({name, table.rows.size()});
  }
  out.report.summary = {{"pass", true}};
  return out;
}

Outcome selftest_cmd(std::ostream& err) {
  Outcome out;
  out.report.parameters = Json::object();
  out.report.table.columns = {"id", "criterion", "pass", "detail"};
  int passed = 0;
  for (int id = 1; id <= acceptance::kCriterionCount; ++id) {
    const auto r = acceptance::run_criterion(id);
    err << acceptance::format_line(r) << '\n';
    out.report.table.rows.push_back({r.id, r.title, r.pass, r.detail});
    passed += r.pass ? 1 : 0;
  }
  out.pass = passed == acceptance::kCriterionCount;
  out.report.summary = {{"pass", out.pass}, {"passed", passed}, {"total", acceptance::kCriterionCount}};
  return out;
}

void emit(std::ostream& os, const Report& r, const std::string& format) {
  if (format == "json") write_json(os, r);
  else write_csv(os, r.table);
}

bool write_file(const std::filesystem::path& path, const Report& r, const std::string& format, std::ostream& err) {
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    err << "error: cannot open " << path.string() << " for writing\n";
    return false;
  }
  emit(f, r, format);
  f.close();
  if (!f) {
    err << "error: failed writing " << path.string() << '\n';
    return false;
  }
  return true;
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--quad-order", o.quad_order, "Gauss rule order (default 256, or $SHARPCONVEX_QUAD_ORDER)");
  cmd->add_option("--tol", o.tol, "margin tolerance in [1e-12, 1e-3]")->capture_default_str();
  cmd->add_option("--out", o.out, "output file (figures: output directory)");
  cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  cmd->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical verification of sharp convexity and hypercontractivity inequalities", "sharpconvex"};
  app.require_subcommand(1);
  Options o;

  auto* vt = app.add_subcommand("verify-theorem", "check the sphere-mean inequality over an a-grid");
  vt->add_option("--n", o.n, "dimension (default 2)");
  vt->add_option("--p", o.p, "exponent in (0, 2] (default 1)");
  vt->add_option("--lambda", o.lambda, "candidate constant (default (n+p-2)/n)");
  vt->add_option("--a-grid", o.a_grid, "radii, start:stop:count[:lin|log] or a list");

  auto* bl = app.add_subcommand("best-lambda", "extract the best constant numerically");
  bl->add_option("--n", o.n, "dimension (default 2)");
  bl->add_option("--p", o.p, "exponent in (0, 2] (default 1)");
  bl->add_option("--a-grid", o.a_grid, "radii grid");

  auto* rs = app.add_subcommand("r-star", "largest admissible r for (m, p, q)");
  rs->add_option("--m", o.m, "measure index >= -1 (default 0)");
  rs->add_option("--p", o.p, "lower exponent (default 1)");
  rs->add_option("--q", o.q, "upper exponent (default 2)");
  rs->add_option("--precision", o.precision, "bisection precision (default 1e-4)");
  rs->add_option("--b-grid", o.b_grid, "coefficient grid");

  auto* sc = app.add_subcommand("scan", "r-star over an (m, p, q) grid");
  sc->add_option("--m", o.m, "m grid");
  sc->add_option("--p", o.p, "p grid");
  sc->add_option("--q", o.q, "q grid");
  sc->add_option("--precision", o.precision, "bisection precision (default 1e-3)");
  sc->add_option("--b-grid", o.b_grid, "coefficient grid");

  auto* ls = app.add_subcommand("logsobolev", "log-Sobolev chain and tail sign structure");
  ls->add_option("--lambda", o.lambda, "lambda grid");
  ls->add_option("--s-grid", o.s_grid, "s grid");
  ls->add_option("--b-grid", o.b_grid, "btilde grid");

  auto* fg = app.add_subcommand("figures", "emit figure data");
  fg->add_option("--which", o.which, "fig1, fig2 or all")->capture_default_str();

  auto* st = app.add_subcommand("selftest", "run the acceptance criteria");

  for (auto* cmd : {vt, bl, rs, sc, ls, fg, st}) add_common(cmd, o);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  Outcome result;
  int order = 0;
  try {
    if (!(o.tol >= 1e-12 && o.tol <= 1e-3)) throw UsageError("--tol must lie in [1e-12, 1e-3]");
    order = resolve_order(o.quad_order);
    default_jobs() = o.jobs;
    if (command == "verify-theorem") result = verify_theorem_cmd(o, order);
    else if (command == "best-lambda") result = best_lambda_cmd(o, order);
    else if (command == "r-star") result = r_star_cmd(o, order);
    else if (command == "scan") result = scan_cmd(o, order);
    else if (command == "logsobolev") result = logsobolev_cmd(o, order);
    else if (command == "figures") result = figures_cmd(o);
    else result = selftest_cmd(err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << app.get_subcommand(command)->help();
    return kExitUsage;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << "\n\n" << app.get_subcommand(command)->help();
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n\n" << app.get_subcommand(command)->help();
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitFail;
  }

  result.report.command = command;
  result.report.parameters["format"] = o.format;
  if (command != "figures" && command != "selftest") {
    result.report.parameters["quad_order"] = order;
    result.report.parameters["tolerance"] = o.tol;
  }

  if (command == "figures") {
    const std::filesystem::path dir = o.out.empty() ? "." : o.out;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    for (const auto& [name, table] : result.extra_files) {
      Report r;
      r.command = "figures";
      r.parameters = {{"figure", name}, {"format", o.format}};
      r.summary = {{"rows", table.rows.size()}};
      r.table = table;
      if (!write_file(dir / (name + "." + o.format), r, o.format, err)) return kExitFail;
    }
  }
  if (!o.out.empty() && command != "figures") {
    if (!write_file(o.out, result.report, o.format, err)) return kExitFail;
  } else if (command != "figures") {
    emit(out, result.report, o.format);
  }

  err << command << ": " << (result.pass ? "PASS" : "FAIL") << ' ' << result.report.summary.dump() << '\n';
  return result.pass ? kExitPass : kExitFail;
}

}  // namespace sharpconvex::cli
