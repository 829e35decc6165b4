#include "contactgeom_cli/commands.hpp"

#include <charconv>
#include <filesystem>
#include <iomanip>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "contactgeom/calculus.hpp"
#include "contactgeom/catalog.hpp"
#include "contactgeom/errors.hpp"
#include "contactgeom/flow.hpp"
#include "contactgeom/parallel.hpp"
#include "contactgeom/report_io.hpp"
#include "contactgeom/samples_io.hpp"

namespace contactgeom::cli {
namespace {

namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double parse_number(const std::string& s, const std::string& what) {
  double x = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw UsageError("bad " + what + " '" + s + "'");
  return x;
}

ParamMap parse_params(const std::vector<std::string>& items) {
  ParamMap out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--param expects key=value, got '" + item + "'");
    out[item.substr(0, eq)] = parse_number(item.substr(eq + 1), "value for " + item.substr(0, eq));
  }
  return out;
}

std::pair<int, int> parse_grid(const std::string& s) {
  const auto x = s.find('x');
  if (x == std::string::npos) throw UsageError("--grid expects NxM, got '" + s + "'");
  int nu = 0, nv = 0;
  auto a = std::from_chars(s.data(), s.data() + x, nu);
  auto b = std::from_chars(s.data() + x + 1, s.data() + s.size(), nv);
  if (a.ec != std::errc() || a.ptr != s.data() + x || b.ec != std::errc() || b.ptr != s.data() + s.size()) {
    throw UsageError("--grid expects NxM, got '" + s + "'");
  }
  if (nu < 8 || nv < 8) throw UsageError("grid must be at least 8x8");
  return {nu, nv};
}

std::vector<int> parse_levels(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const double n = parse_number(tok, "refinement level");
    if (n < 8 || n != static_cast<int>(n)) throw UsageError("refinement levels must be integers >= 8");
    out.push_back(static_cast<int>(n));
  }
  if (out.size() < 3) throw UsageError("--refine needs at least 3 levels to estimate an order");
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (out[i] <= out[i - 1]) throw UsageError("--refine levels must increase");
  }
  return out;
}

bool is_catalog_name(const std::string& name) {
  for (const auto& n : catalog_names())
    if (n == name) return true;
  return false;
}

struct Source {
  std::optional<CatalogEntry> entry;
  SurfaceGrid grid;
};

Source resolve(const std::string& surface, const std::vector<std::string>& params, const std::string& grid) {
  Source s;
  if (is_catalog_name(surface)) {
    s.entry = make_entry(surface, parse_params(params));
    auto [nu, nv] = grid.empty() ? std::pair{s.entry->recommended.nu, s.entry->recommended.nv} : parse_grid(grid);
    s.grid = s.entry->sample(nu, nv);
    return s;
  }
  if (!fs::exists(surface)) throw UsageError("unknown surface '" + surface + "' (not in the catalog, no such file)");
  if (!params.empty()) throw UsageError("--param does not apply to a sample file");
  if (!grid.empty()) throw UsageError("--grid does not apply to a sample file");
  s.grid = load_samples(fs::path(surface));
  return s;
}

fs::path prepare_dir(const std::string& dir) {
  fs::path p(dir);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw UsageError("cannot create output directory '" + dir + "'");
  return p;
}

std::string sci(double x) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(3) << x;
  return os.str();
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::RangeError:
    case ErrorKind::AmplitudeTooLarge:
    case ErrorKind::InvalidGrid:
      return kUsage;
    default:
      return kInput;
  }
}

struct AnalyzeArgs {
  std::string surface;
  std::vector<std::string> params;
  std::string grid;
  std::string out = ".";
  double band = kDefaultPoleBand;
};

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out) {
  Source src = resolve(a.surface, a.params, a.grid);
  const fs::path dir = prepare_dir(a.out);
  const SurfaceAnalysis analysis = analyze_surface(src.grid);
  const AnalysisReport report =
      build_analysis_report(analysis, src.entry ? &src.entry->truth : nullptr, a.band);
  write_json(to_json(report), dir / "report.json");
  write_fields_csv(analysis, dir / "fields.csv", a.band);
  save_samples(analysis.grid, dir / "samples.s3");

  out << "surface " << report.label << " on " << report.spec.nu << "x" << report.spec.nv << " ("
      << to_string(report.partials) << " partials)\n";
  out << "  beta    min " << sci(report.beta.min) << "  max " << sci(report.beta.max) << "  mean "
      << sci(report.beta.mean) << "\n";
  out << "  K       max|K| " << sci(report.k_intrinsic.max_abs) << "  mean " << sci(report.k_intrinsic.mean) << "\n";
  out << "  H       max|H| " << sci(report.mean_curvature.max_abs) << "\n";
  out << "  masked " << report.masked << "  near pole " << report.near_pole << "\n";
  for (const auto& r : report.residuals) {
    out << "  residual " << std::left << std::setw(11) << r.identity << std::right << " linf " << sci(r.level.linf)
        << "\n";
  }
  out << "wrote " << (dir / "report.json").string() << ", fields.csv, samples.s3\n";
  return kOk;
}

struct VerifyArgs {
  std::string surface;
  std::vector<std::string> params;
  std::string identity = "curvature";
  std::string refine = "32,64,128";
  std::string out = ".";
  double band = kDefaultPoleBand;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  const std::vector<int> levels = parse_levels(a.refine);
  if (!is_catalog_name(a.surface)) throw UsageError("verify needs a catalog surface to refine");
  const Identity id = identity_from_string(a.identity);
  const CatalogEntry entry = make_entry(a.surface, parse_params(a.params));
  std::vector<SurfaceGrid> grids;
  for (int n : levels) grids.push_back(entry.sample(n, n));
  const fs::path dir = prepare_dir(a.out);
  const IdentityReport report = verify_identity(id, grids, a.band);
  write_json(to_json(report), dir / ("identity_" + report.name + ".json"));
  write_residual_csv(report, dir / ("residual_" + report.name + ".csv"));

  out << report.name << " identity on " << report.surface << "\n";
  for (const auto& l : report.levels) {
    out << "  " << l.nu << "x" << l.nv << "  linf " << sci(l.linf) << "  l2 " << sci(l.l2) << "  excluded "
        << l.excluded_near_pole + l.excluded_masked << "\n";
  }
  out << "  order " << (report.observed_order ? sci(*report.observed_order) : std::string("n/a"))
      << (report.resolved_to_roundoff ? " (round-off)" : "") << "  bound " << sci(report.bound) << "\n";
  const bool ok = report.passed();
  out << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? kOk : kCheckFailed;
}

struct FlowArgs {
  std::string surface = "clifford";
  std::vector<std::string> params;
  std::string grid = "32x32";
  int steps = 500;
  double tol = 1e-3;
  double step = 1.0;
  std::string mode = "full";
  std::string variant = "backtracking";
  int control = 16;
  std::string out = ".";
};

int cmd_flow(const FlowArgs& a, std::ostream& out) {
  if (!is_catalog_name(a.surface)) throw UsageError("flow needs a catalog surface");
  FlowConfig c;
  c.surface = a.surface;
  c.params = parse_params(a.params);
  std::tie(c.nu, c.nv) = parse_grid(a.grid);
  c.max_iterations = a.steps;
  c.tolerance = a.tol;
  c.step = a.step;
  c.mode = flow_mode_from_string(a.mode);
  c.variant = descent_variant_from_string(a.variant);
  c.control = a.control;
  const fs::path dir = prepare_dir(a.out);

  const FlowReport report = descend(c);
  std::optional<Verdict> verdict;
  if (report.converged) verdict = theorem_probe(report, report.final_grid);
  write_json(to_json(report, verdict), dir / "flow_report.json");
  write_trace_csv(report, dir / "flow_trace.csv");

  out << "flow " << to_string(c.mode) << " on " << c.surface << ": " << report.stop_reason << " after "
      << report.iterations << " iterations\n";
  out << "  energy " << sci(report.initial_energy) << " -> " << sci(report.final_energy) << "  max|H| "
      << sci(report.final_max_abs_h) << "\n";
  out << "  beta max " << sci(report.beta.max) << "  spread " << sci(report.beta.spread) << "\n";
  if (report.final_r) out << "  r " << std::setprecision(12) << *report.final_r << "\n";
  if (!report.converged) {
    out << "NOT CONVERGED\n";
    return kNotConverged;
  }
  out << "probe " << to_string(verdict->outcome) << ": " << verdict->message << "\n";
  return verdict->outcome == ProbeOutcome::fail ? kCheckFailed : kOk;
}

int cmd_catalog_list(bool as_json, std::ostream& out) {
  std::vector<CatalogEntry> entries{clifford(), geodesic_sphere(), r_torus(0.25 * std::numbers::pi)};
  if (as_json) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& e : entries) j.push_back(to_json(e));
    out << j.dump(2) << "\n";
    return kOk;
  }
  for (const auto& e : entries) {
    out << e.name << "  " << e.description << "\n";
    for (const auto& p : e.params) {
      out << "    " << p.name << " (default " << p.default_value << ")  " << p.description << "\n";
    }
    out << "    truth: " << e.truth.notes << "\n";
  }
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Contact angle, frames and curvature identities for surfaces in S^3", "contact-geom"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker threads")->envname("CONTACT_GEOM_THREADS")->check(CLI::PositiveNumber);

  AnalyzeArgs analyze;
  auto* an = app.add_subcommand("analyze", "frames, contact angle, curvature and identity residuals on one grid");
  an->add_option("--surface", analyze.surface, "catalog name or sample file")->required();
  an->add_option("--param", analyze.params, "key=value surface parameter");
  an->add_option("--grid", analyze.grid, "NxM");
  an->add_option("--out", analyze.out, "output directory");
  an->add_option("--band", analyze.band, "pole exclusion half-width around beta = pi/2");

  VerifyArgs verify;
  auto* ve = app.add_subcommand("verify", "grid refinement study of one identity");
  ve->add_option("--surface", verify.surface, "catalog name")->required();
  ve->add_option("--param", verify.params, "key=value surface parameter");
  ve->add_option("--identity", verify.identity, "curvature|laplacian|connection|gauss")
      ->check(CLI::IsMember({"curvature", "laplacian", "connection", "gauss"}));
  ve->add_option("--refine", verify.refine, "comma separated grid sizes");
  ve->add_option("--band", verify.band, "pole exclusion half-width around beta = pi/2");
  ve->add_option("--out", verify.out, "output directory");

  FlowArgs flow;
  auto* fl = app.add_subcommand("flow", "squared mean curvature descent and the constant-angle probe");
  fl->add_option("--surface", flow.surface, "catalog name");
  fl->add_option("--param", flow.params, "key=value surface parameter");
  fl->add_option("--grid", flow.grid, "NxM");
  fl->add_option("--steps", flow.steps, "maximum iterations")->check(CLI::NonNegativeNumber);
  fl->add_option("--tol", flow.tol, "stop when max|H| falls below this");
  fl->add_option("--step", flow.step, "initial line-search step");
  fl->add_option("--mode", flow.mode, "full|r-only")->check(CLI::IsMember({"full", "r-only"}));
  fl->add_option("--variant", flow.variant, "backtracking|fixed-step")
      ->check(CLI::IsMember({"backtracking", "fixed-step"}));
  fl->add_option("--control", flow.control, "control coefficients per axis");
  fl->add_option("--out", flow.out, "output directory");

  auto* ca = app.add_subcommand("catalog", "built-in surfaces");
  ca->require_subcommand(1);
  bool as_json = false;
  auto* li = ca->add_subcommand("list", "list entries with parameters");
  li->add_flag("--json", as_json, "machine readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (threads > 0) set_thread_count(threads);
    if (an->parsed()) return cmd_analyze(analyze, out);
    if (ve->parsed()) return cmd_verify(verify, out);
    if (fl->parsed()) return cmd_flow(flow, out);
    if (li->parsed()) return cmd_catalog_list(as_json, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const GeometryError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInput;
  }
  return kUsage;
}

}  // namespace contactgeom::cli
