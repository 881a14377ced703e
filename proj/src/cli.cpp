#include "kdscope/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>

#include "kdscope/diagram.hpp"
#include "kdscope/error.hpp"
#include "kdscope/incompat.hpp"
#include "kdscope/io.hpp"
#include "kdscope/verify.hpp"
#include "kdscope/version.hpp"

namespace kdscope::cli {

namespace {

struct Options {
  std::string basis = "dft";
  int dim = 4;
  std::string s = "0+1i";
  double eps = 0.1;
  double spin = 2.0;
  std::string path;
  Tolerances tol;
  SearchConfig search;
  std::string format;
  std::string out;
  bool grid = false;
  int jobs = 1;
  std::string state;
  int samples = 1000;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Accepts "a+bi", "a-bi", "a", "bi", "i", "-i".
Complex parse_complex(std::string text) {
  std::erase(text, ' ');
  auto number = [&](const std::string& part, double unit) {
    if (part.empty() || part == "+") return unit;
    if (part == "-") return -unit;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      throw UsageError("cannot parse complex number '" + text + "'");
    }
    if (used != part.size()) throw UsageError("cannot parse complex number '" + text + "'");
    return v;
  };
  if (text.empty()) throw UsageError("empty complex number");
  if (text.back() != 'i') return {number(text, 0.0), 0.0};
  const std::string body = text.substr(0, text.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;)
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  if (split == std::string::npos) return {0.0, number(body, 1.0)};
  return {number(body.substr(0, split), 0.0), number(body.substr(split), 1.0)};
}

BasisSpec basis_spec(const Options& o) {
  static const std::map<std::string, BasisFamily> families{{"dft", BasisFamily::Dft},
                                                            {"mub4", BasisFamily::Mub4},
                                                            {"perturbed", BasisFamily::Perturbed},
                                                            {"spin", BasisFamily::Spin},
                                                            {"file", BasisFamily::File}};
  BasisSpec spec;
  spec.family = families.at(o.basis);
  spec.d = o.dim;
  spec.s = parse_complex(o.s);
  spec.eps = o.eps;
  spec.spin = o.spin;
  spec.path = o.path;
  if (spec.family == BasisFamily::File && spec.path.empty()) throw UsageError("--basis file needs --path");
  return spec;
}

void validate(const Options& o) {
  const auto& t = o.tol;
  if (!(t.eta > 0 && t.tau > 0 && t.tau_class > 0 && t.minor_tol > 0 && t.null_tol > 0))
    throw Error(ErrorCode::DegenerateParameter, "all tolerances must be positive");
  if (o.search.restarts < 1) throw Error(ErrorCode::DegenerateParameter, "--restarts must be at least 1");
  if (o.search.max_iter < 1) throw Error(ErrorCode::DegenerateParameter, "--max-iter must be at least 1");
  if (o.jobs < 1) throw Error(ErrorCode::DegenerateParameter, "--jobs must be at least 1");
  if (o.samples < 1) throw Error(ErrorCode::DegenerateParameter, "--samples must be at least 1");
}

void apply_seed_override(Options& o) {
  const char* env = std::getenv("KDSCOPE_SEED");
  if (!env || !*env) return;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
    o.search.seed = v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, std::string("KDSCOPE_SEED is not an unsigned integer: ") + env);
  }
}

Exec exec_of(const Options& o) { return o.jobs > 1 ? Exec::omp(o.jobs) : Exec::serial(); }

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--basis", o.basis, "Basis family")
      ->check(CLI::IsMember({"dft", "mub4", "perturbed", "spin", "file"}))
      ->capture_default_str();
  cmd->add_option("--dim", o.dim, "Dimension for --basis dft")->capture_default_str();
  cmd->add_option("--s", o.s, "mub4 parameter RE+IMi, |s| = 1")->capture_default_str();
  cmd->add_option("--eps", o.eps, "Perturbation strength")->capture_default_str();
  cmd->add_option("--spin", o.spin, "Spin quantum number (half-integer)")->capture_default_str();
  cmd->add_option("--path", o.path, "Matrix JSON for --basis file");
  cmd->add_option("--eta", o.tol.eta, "Support threshold")->capture_default_str();
  cmd->add_option("--tau", o.tol.tau, "Classicality threshold on KD entries")->capture_default_str();
  cmd->add_option("--tau-class", o.tol.tau_class, "Classicality threshold on N_NC - 1")->capture_default_str();
  cmd->add_option("--minor-tol", o.tol.minor_tol, "Vanishing-minor threshold")->capture_default_str();
  cmd->add_option("--seed", o.search.seed, "Search seed (KDSCOPE_SEED overrides)")->capture_default_str();
  cmd->add_option("--restarts", o.search.restarts, "Search restarts per cell")->capture_default_str();
  cmd->add_option("--max-iter", o.search.max_iter, "Nelder-Mead iterations per restart")->capture_default_str();
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json", "svg"}));
  cmd->add_option("--out", o.out, "Output file (default stdout)");
  cmd->add_option("--jobs", o.jobs, "Worker threads")->capture_default_str();
}

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out.empty())
    out << text;
  else
    write_text_file(o.out, text);
}

void require_format(const Options& o, std::initializer_list<std::string_view> allowed) {
  if (o.format.empty()) return;
  for (auto f : allowed)
    if (o.format == f) return;
  throw UsageError("--format " + o.format + " is not available for this command");
}

ArtifactMeta meta_of(const Options& o, const BasisSpec& spec) { return {describe(spec), o.tol, o.search}; }

int cmd_bases(const Options& o, std::ostream& out) {
  require_format(o, {"json"});
  const auto spec = basis_spec(o);
  const auto u = build_basis(spec);
  json j = matrix_to_json(u.matrix());
  j["meta"] = meta_to_json(meta_of(o, spec));
  emit(o, dump_json(j) + "\n", out);
  return 0;
}

int cmd_kd(const Options& o, std::ostream& out) {
  require_format(o, {"json"});
  const auto spec = basis_spec(o);
  const auto u = build_basis(spec);
  const auto psi = o.state.empty() ? random_state(u.dim(), o.search.seed) : load_state(o.state);
  if (psi.dim() != u.dim()) throw Error(ErrorCode::DimensionMismatch, "state and basis dimensions differ");
  const auto q = kd_distribution(u, psi);
  const auto check = is_kd_classical(q, o.tol.tau);
  const auto bounds = bound_report(u, psi, o.tol.eta);
  const auto sup = support(u, psi, o.tol.eta);
  json worst = nullptr;
  if (check.worst)
    worst = {{"i", check.worst->i}, {"j", check.worst->j}, {"value", complex_to_json(check.worst->value)}};
  json j = {{"meta", meta_to_json(meta_of(o, spec))},
            {"state", state_to_json(psi)},
            {"q", matrix_to_json(q.q)},
            {"ncc", bounds.ncc},
            {"kd_classical", check.classical},
            {"worst_entry", worst},
            {"support_a", sup.s},
            {"support_b", sup.t},
            {"n_a", bounds.n_a},
            {"n_b", bounds.n_b},
            {"product_lower_bound", bounds.product_lower_bound},
            {"ncc_upper_bound", bounds.ncc_upper_bound},
            {"edge", bounds.edge_value}};
  emit(o, dump_json(j) + "\n", out);
  return 0;
}

int cmd_incompat(const Options& o, std::ostream& out) {
  require_format(o, {"json"});
  const auto spec = basis_spec(o);
  const auto u = build_basis(spec);
  const auto report = incompat_report(u, o.tol, exec_of(o));
  emit(o, dump_json(report_to_json(report, meta_of(o, spec))) + "\n", out);
  return 0;
}

int cmd_diagram(const Options& o, std::ostream& out) {
  const auto spec = basis_spec(o);
  const auto u = build_basis(spec);
  const auto diagram = uncertainty_diagram(u, o.search, o.tol, exec_of(o));
  const auto meta = meta_of(o, spec);
  const std::string format = o.format.empty() ? "csv" : o.format;
  if (format == "csv")
    emit(o, diagram_csv(diagram, meta, o.grid), out);
  else if (format == "json")
    emit(o, dump_json(diagram_to_json(diagram, meta, o.grid)) + "\n", out);
  else
    emit(o, diagram_svg(diagram, meta), out);
  return 0;
}

int cmd_verify(const Options& o, std::ostream& out) {
  require_format(o, {"json"});
  const auto spec = basis_spec(o);
  const auto u = build_basis(spec);
  const auto r = run_property_suite(u, o.samples, o.search.seed, o.tol);
  json j = {{"meta", meta_to_json(meta_of(o, spec))},
            {"samples", r.samples},
            {"stroinc", r.stroinc},
            {"above_edge", r.above_edge},
            {"theorem_violations", r.theorem_violations},
            {"product_violations", r.product_violations},
            {"ncc_violations", r.ncc_violations},
            {"marginal_violations", r.marginal_violations},
            {"min_product_slack", r.min_product_slack},
            {"min_ncc_slack", r.min_ncc_slack},
            {"passed", r.violations() == 0}};
  emit(o, dump_json(j) + "\n", out);
  return r.violations() == 0 ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kirkwood-Dirac nonclassicality and support uncertainty of basis pairs", kToolName};
  app.set_version_flag("--version", std::string(kToolName) + " " + kVersion);
  app.require_subcommand(1);

  Options o;
  auto* bases = app.add_subcommand("bases", "Build a transition matrix and write it as JSON");
  auto* kd = app.add_subcommand("kd", "KD distribution, N_NC and supports of a state");
  auto* incompat = app.add_subcommand("incompat", "Incompatibility report (STROINC, COINC, n_min)");
  auto* diagram = app.add_subcommand("diagram", "Uncertainty diagram with KD classification");
  auto* verify = app.add_subcommand("verify", "Check sampled states against the KD bounds");
  for (auto* cmd : {bases, kd, incompat, diagram, verify}) add_common(cmd, o);
  kd->add_option("--state", o.state, "State JSON (default: random state from --seed)");
  diagram->add_flag("--grid", o.grid, "Emit the full lattice including EMPTY points");
  verify->add_option("--samples", o.samples, "Number of sampled states")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kToolName << " " << kVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    apply_seed_override(o);
    validate(o);
    if (bases->parsed()) return cmd_bases(o, out);
    if (kd->parsed()) return cmd_kd(o, out);
    if (incompat->parsed()) return cmd_incompat(o, out);
    if (diagram->parsed()) return cmd_diagram(o, out);
    return cmd_verify(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace kdscope::cli
