#include "lpbound/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "lpbound/certificate.hpp"
#include "lpbound/delsarte.hpp"
#include "lpbound/improved.hpp"
#include "lpbound/io.hpp"

namespace lpbound::cli {

namespace {

using io::json;

// Aborts a subcommand with a specific exit code.
class Abort : public std::runtime_error {
 public:
  Abort(const std::string& what, int code) : std::runtime_error(what), code(code) {}
  int code;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string current;
  for (char ch : text) {
    if (ch == sep) {
      parts.push_back(current);
      current.clear();
    } else if (ch != ' ') {
      current += ch;
    }
  }
  parts.push_back(current);
  return parts;
}

int parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError("cannot read " + what + " from \"" + s + "\"");
  }
}

bool looks_like_file(const std::string& arg) {
  return arg.find(".json") != std::string::npos || std::filesystem::is_regular_file(arg);
}

FiniteAbelianGroup load_group(const std::string& arg) {
  if (arg.empty()) throw UsageError("--group is required");
  if (looks_like_file(arg)) return io::group_from_json(io::read_file(arg));
  const char sep = arg.find('x') != std::string::npos ? 'x' : ',';
  std::vector<int> orders;
  for (const auto& p : split(arg, sep)) orders.push_back(parse_int(p, "cyclic order"));
  try {
    return FiniteAbelianGroup(orders);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

// Inline element lists: "1,4" for cyclic groups, "0:1,1:0" for products.
std::vector<std::size_t> load_elements(const FiniteAbelianGroup& group, const std::string& arg, const char* key) {
  if (arg.empty()) return {};
  if (looks_like_file(arg)) {
    auto j = io::read_file(arg);
    if (j.is_object() && j.contains(key)) return io::elements_from_json(group, j.at(key));
    return io::elements_from_json(group, j);
  }
  std::vector<std::size_t> out;
  for (const auto& item : split(arg, ',')) {
    std::vector<int> coords;
    for (const auto& c : split(item, ':')) coords.push_back(parse_int(c, "element coordinate"));
    if (coords.size() != group.rank()) {
      throw UsageError("element \"" + item + "\" needs " + std::to_string(group.rank()) + " coordinates");
    }
    // Negative residues are accepted and reduced.
    for (std::size_t i = 0; i < coords.size(); ++i) {
      const int n = group.cyclic_orders()[i];
      coords[i] = ((coords[i] % n) + n) % n;
    }
    out.push_back(group.index_of(coords));
  }
  return out;
}

ForbiddenSet load_forbidden(const FiniteAbelianGroup& group, const std::string& arg) {
  auto members = load_elements(group, arg, "members");
  auto set = ForbiddenSet::with_zero(group, std::move(members));
  const auto report = validate_forbidden_set(set);
  if (!report.valid()) {
    throw UsageError("forbidden set is not symmetric: " + io::to_json(report).dump());
  }
  return set;
}

json tolerances(const RunConfig& c) { return {{"tol", c.tol}, {"margin_tol", c.margin_tol}}; }

json chain_tolerances() {
  return {{"routes_agree", 1e-6}, {"lagrange_residual", 1e-8}, {"k_normalization", 1e-12}, {"k_support", 1e-12}};
}

void emit(std::ostream& out, const RunConfig& c, const json& report, const std::string& text) {
  if (c.format == Format::text && !text.empty()) {
    out << text;
    if (text.back() != '\n') out << '\n';
  } else {
    out << report.dump(2) << '\n';
  }
}

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(12) << v;
  return s.str();
}

void require_format(const RunConfig& c, bool csv_ok) {
  if (c.format == Format::csv && !csv_ok) throw UsageError("--format csv is only available for `mub sweep`");
}

DelsarteWitness witness_for(const RunConfig& c, const ForbiddenSet& A) {
  if (!c.witness.empty()) {
    const auto h = io::function_from_json(A.group(), io::read_file(c.witness));
    auto check = verify_witness(A, h, c.tol);
    if (!check.ok()) {
      throw Abort("witness fails verification: " + io::to_json(check, A.group()).dump(), kExitFailed);
    }
    return *check.witness;
  }
  auto opt = optimal_witness(A, c.tol);
  if (opt.lp.status != LpStatus::optimal) {
    throw Abort("linear program ended with status " + to_string(opt.lp.status), kExitInfeasible);
  }
  return opt.witness;
}

int cmd_bound(const RunConfig& c, std::ostream& out) {
  require_format(c, false);
  const auto group = load_group(c.group);
  const auto A = load_forbidden(group, c.forbidden);
  const auto opt = optimal_witness(A, c.tol);
  json report = {{"group", io::to_json(group)}, {"forbidden", io::to_json(A)}, {"tolerances", tolerances(c)},
                 {"lp", {{"status", to_string(opt.lp.status)},
                         {"iterations", opt.lp.iterations},
                         {"degenerate", opt.lp.degenerate},
                         {"duality_gap", opt.lp.certificate.duality_gap}}}};
  if (opt.lp.status != LpStatus::optimal) {
    emit(out, c, report, "LP status: " + to_string(opt.lp.status));
    return kExitInfeasible;
  }
  json bound;
  std::string text = "Delsarte bound for " + group.describe() + ": " + fmt(opt.bound) + "\n";
  if (group.order() <= kBruteForceOrderLimit) {
    const auto best = brute_force_max(A);
    const auto r = audit_proof(opt.witness, A, best.members);
    bound = io::to_json(r);
    bound["brute_force"] = io::to_json(best, group);
    text += "largest admissible set: " + std::to_string(best.cardinality) + " elements\n";
  } else {
    bound = io::to_json(BoundReport{opt.bound, opt.witness, std::nullopt});
  }
  report.update(bound);
  emit(out, c, report, text);
  return kExitOk;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  require_format(c, false);
  const auto group = load_group(c.group);
  const auto A = load_forbidden(group, c.forbidden);
  if (c.witness.empty()) throw UsageError("--witness is required");
  const auto h = io::function_from_json(group, io::read_file(c.witness));
  const auto check = verify_witness(A, h, c.tol);
  json report = io::to_json(check, group);
  report["tolerances"] = tolerances(c);
  std::string text = check.ok() ? "valid witness, bound " + fmt(delsarte_bound(*check.witness)) + "\n"
                                : "invalid witness: " + std::to_string(check.violations.size()) + " violations\n";
  emit(out, c, report, text);
  return check.ok() ? kExitOk : kExitFailed;
}

int cmd_improve(const RunConfig& c, std::ostream& out) {
  require_format(c, false);
  const auto group = load_group(c.group);
  const auto A = load_forbidden(group, c.forbidden);
  const auto w = witness_for(c, A);
  const auto C = load_elements(group, c.locations, "members");
  if (C.empty()) throw UsageError("--locations is required");
  json report = {{"group", io::to_json(group)}, {"tolerances", tolerances(c)}, {"delsarte", delsarte_bound(w)}};
  SecondWitnessCheck check;
  if (!c.second.empty()) {
    check = verify_second_witness(w, io::function_from_json(group, io::read_file(c.second)), C, c.tol);
  } else {
    try {
      auto sw = synthesize_second_witness(w, C, c.tol);
      check = verify_second_witness(w, sw.K, C, c.tol);
      report["synthesized"] = true;
    } catch (const InfeasibleWitness& e) {
      report["infeasible"] = {{"reason", e.what()}, {"blocking", io::elements_json(group, e.blocking())}};
      emit(out, c, report, std::string("no second witness: ") + e.what());
      return kExitInfeasible;
    }
  }
  report["check"] = io::to_json(check, group);
  if (!check.ok()) {
    emit(out, c, report, check.impossible ? "Q = 0: no nonempty set fits inside C" : "second witness fails");
    return kExitFailed;
  }
  const auto b = improved_bound(w, *check.witness);
  report["improved"] = io::to_json(b);
  emit(out, c, report, "Delsarte " + fmt(b.delsarte) + ", improved " + fmt(b.value) + "\n");
  return kExitOk;
}

int cmd_corollary(const RunConfig& c, std::ostream& out) {
  require_format(c, false);
  const auto group = load_group(c.group);
  const auto A = load_forbidden(group, c.forbidden);
  const auto w = witness_for(c, A);
  const auto pinned = load_elements(group, c.pinned, "pinned");
  if (pinned.empty()) throw UsageError("--pinned is required");
  const double bound = delsarte_bound(w);
  const std::size_t m = c.m ? *c.m : static_cast<std::size_t>(std::llround(bound));
  json report = {{"group", io::to_json(group)}, {"tolerances", tolerances(c)}, {"delsarte", bound}};
  GroupFunction K = c.second.empty() ? GroupFunction(group, std::vector<Complex>(group.order()))
                                     : io::function_from_json(group, io::read_file(c.second));
  if (c.second.empty()) {
    try {
      K = synthesize_corollary_witness(w, A, pinned, c.tol);
      report["synthesized"] = true;
    } catch (const InfeasibleWitness& e) {
      report["infeasible"] = {{"reason", e.what()}, {"blocking", io::elements_json(group, e.blocking())}};
      emit(out, c, report, std::string("no second witness: ") + e.what());
      return kExitInfeasible;
    }
  }
  const auto v = corollary_check(w, A, pinned, K, m, CorollaryOptions{c.tol, c.margin_tol});
  report["verdict"] = io::to_json(v, group);
  report["K"] = io::to_json(K);
  emit(out, c, report,
       v.excluded ? "excluded: no admissible set of size " + std::to_string(m) + " contains the pinned points\n"
                  : "inconclusive\n");
  return v.excluded ? kExitOk : kExitFailed;
}

CertificateOptions certificate_options(const RunConfig& c) {
  CertificateOptions o;
  o.n_samples = c.samples;
  o.seed = c.seed;
  return o;
}

G0MinimizeOptions g0_options(const RunConfig& c) {
  G0MinimizeOptions o;
  o.grid = c.g0_grid;
  return o;
}

int cmd_certify(const RunConfig& c, std::ostream& out) {
  require_format(c, false);
  const auto chain = prove_s_bounds(g0_options(c));
  const auto cert = build_certificate(c.a_phase, c.b_phase, chain, certificate_options(c));
  json report = io::to_json(cert);
  report["tolerances"] = chain_tolerances();
  report["seed"] = c.seed;
  emit(out, c, report, render_text(cert));
  return cert.verdict ? kExitOk : kExitFailed;
}

int cmd_sweep(const RunConfig& c, std::ostream& out) {
  if (c.grid < 1) throw UsageError("--grid must be positive");
  const auto rows = sweep_certificates(c.grid, certificate_options(c), c.jobs);
  bool all = true;
  for (const auto& r : rows) all = all && r.verdict;
  if (c.format == Format::json) {
    json list = json::array();
    for (const auto& r : rows) {
      list.push_back({{"a_phase", r.a_phase},
                      {"b_phase", r.b_phase},
                      {"verdict", r.verdict},
                      {"margin", r.margin},
                      {"n_samples", r.n_samples},
                      {"worst_sample_K", std::isfinite(r.worst_sample_K) ? json(r.worst_sample_K) : json(nullptr)}});
    }
    json report = {{"grid", c.grid}, {"seed", c.seed}, {"samples", c.samples}, {"tolerances", chain_tolerances()},
                   {"all_excluded", all}, {"rows", list}};
    out << report.dump(2) << '\n';
  } else {
    out << "a_phase,b_phase,verdict,margin,n_samples,worst_sample_K\n";
    out << std::setprecision(17);
    for (const auto& r : rows) {
      out << r.a_phase << ',' << r.b_phase << ',' << (r.verdict ? "true" : "false") << ',' << r.margin << ','
          << r.n_samples << ',';
      if (std::isfinite(r.worst_sample_K)) out << r.worst_sample_K;
      out << '\n';
    }
  }
  return all ? kExitOk : kExitFailed;
}

int cmd_optimize_c(const RunConfig& c, std::ostream& out) {
  require_format(c, false);
  const auto chain = prove_s_bounds(g0_options(c));
  json report = io::to_json(chain);
  report["tolerances"] = chain_tolerances();
  std::ostringstream text;
  text << std::setprecision(15) << "c (optimizer)   = " << chain.c_numeric << "\n"
       << "c (closed form) = " << chain.c_closed_form << "\n"
       << "case            = " << to_string(chain.optimum.optimum_case) << "\n"
       << "max Lagrange residual = " << chain.max_lagrange_residual << "\n";
  emit(out, c, report, text.str());
  if (!chain.optimum.refined) return kExitInfeasible;
  return chain.ok() ? kExitOk : kExitFailed;
}

int cmd_max_b(const RunConfig& c, std::ostream& out) {
  require_format(c, false);
  const auto group = load_group(c.group);
  const auto A = load_forbidden(group, c.forbidden);
  const auto pinned = load_elements(group, c.pinned, "pinned");
  MaxSetResult r;
  try {
    r = pinned.empty() ? brute_force_max(A) : brute_force_max_containing(A, pinned);
  } catch (const std::length_error& e) {
    throw UsageError(e.what());
  }
  json report = io::to_json(r, group);
  report["group"] = io::to_json(group);
  report["forbidden"] = io::to_json(A);
  if (!pinned.empty()) report["pinned"] = io::elements_json(group, pinned);
  emit(out, c, report, "largest admissible set: " + std::to_string(r.cardinality) + " elements\n");
  return kExitOk;
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& args, bool* help_requested) {
  if (help_requested) *help_requested = false;
  RunConfig c;
  CLI::App app{"Linear-programming bounds over finite abelian groups", "lpbound"};
  app.require_subcommand(1);
  std::string format = "json";
  std::size_t m = 0;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--tol", c.tol, "Absolute tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--out", c.out, "Write the report to this file");
    sub->add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--seed", c.seed, "Seed for randomized searches");
  };
  auto group_opts = [&](CLI::App* sub) {
    sub->add_option("--group", c.group, "Cyclic orders (\"6\", \"2,3\") or a group JSON file")->required();
    sub->add_option("--forbidden", c.forbidden, "Forbidden elements (\"1,5\", \"0:1,1:0\") or a JSON file");
  };
  auto phase_opts = [&](CLI::App* sub) {
    sub->add_option("--samples", c.samples, "Unbiased-vector spot checks")->check(CLI::NonNegativeNumber);
    sub->add_option("--g0-grid", c.g0_grid, "Grid size for the g0 minimization")->check(CLI::PositiveNumber);
  };

  auto* bound = app.add_subcommand("bound", "Delsarte LP bound");
  group_opts(bound);
  common(bound);

  auto* verify = app.add_subcommand("verify-witness", "Check a witness function h");
  group_opts(verify);
  verify->add_option("--witness", c.witness, "GroupFunction JSON file")->required();
  common(verify);

  auto* improve = app.add_subcommand("improve", "Two-witness improved bound");
  group_opts(improve);
  improve->add_option("--witness", c.witness, "Witness h (default: LP optimum)");
  improve->add_option("--second", c.second, "Second witness K (default: synthesized)");
  improve->add_option("--locations", c.locations, "Location set C")->required();
  common(improve);

  auto* corollary = app.add_subcommand("corollary", "Exclusion test for extremal sets with pinned points");
  group_opts(corollary);
  corollary->add_option("--witness", c.witness, "Witness h (default: LP optimum)");
  corollary->add_option("--second", c.second, "Second witness K (default: synthesized)");
  corollary->add_option("--pinned", c.pinned, "Pinned points")->required();
  auto* m_opt = corollary->add_option("--m", m, "Target size (default: the rounded bound)");
  corollary->add_option("--margin-tol", c.margin_tol, "Required separation from the threshold")
      ->check(CLI::PositiveNumber);
  common(corollary);

  auto* mub = app.add_subcommand("mub", "Fourier family F(a,b) in dimension 6");
  mub->require_subcommand(1);
  auto* certify = mub->add_subcommand("certify-fab", "Non-extendability certificate for F(a,b)");
  certify->add_option("--a-phase", c.a_phase, "a = exp(i * a_phase)");
  certify->add_option("--b-phase", c.b_phase, "b = exp(i * b_phase)");
  phase_opts(certify);
  common(certify);
  auto* sweep = mub->add_subcommand("sweep", "Certificates over a phase grid");
  sweep->add_option("--grid", c.grid, "Grid points per phase")->check(CLI::PositiveNumber);
  sweep->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::PositiveNumber);
  phase_opts(sweep);
  common(sweep);
  auto* optc = mub->add_subcommand("optimize-c", "Minimize g0 and compare with the closed form");
  optc->add_option("--g0-grid", c.g0_grid, "Grid size for the g0 minimization")->check(CLI::PositiveNumber);
  common(optc);

  auto* oracle = app.add_subcommand("oracle", "Exhaustive checks");
  oracle->require_subcommand(1);
  auto* maxb = oracle->add_subcommand("max-b", "Largest admissible set by brute force");
  group_opts(maxb);
  maxb->add_option("--pinned", c.pinned, "Points the set must contain");
  common(maxb);

  std::vector<const char*> argv{"lpbound"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    if (help_requested) *help_requested = true;
    throw UsageError(app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  for (auto* sub : app.get_subcommands()) {
    c.subcommand = sub->get_name();
    for (auto* inner : sub->get_subcommands()) c.subcommand += " " + inner->get_name();
  }
  if (m_opt->count() > 0) c.m = m;
  c.format = format == "csv" ? Format::csv : format == "text" ? Format::text : Format::json;
  return c;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    if (c.subcommand == "bound") return cmd_bound(c, out);
    if (c.subcommand == "verify-witness") return cmd_verify(c, out);
    if (c.subcommand == "improve") return cmd_improve(c, out);
    if (c.subcommand == "corollary") return cmd_corollary(c, out);
    if (c.subcommand == "mub certify-fab") return cmd_certify(c, out);
    if (c.subcommand == "mub sweep") return cmd_sweep(c, out);
    if (c.subcommand == "mub optimize-c") return cmd_optimize_c(c, out);
    if (c.subcommand == "oracle max-b") return cmd_max_b(c, out);
    err << "lpbound: unknown subcommand \"" << c.subcommand << "\"\n";
    return kExitUsage;
  } catch (const Abort& e) {
    err << "lpbound: " << e.what() << '\n';
    return e.code;
  } catch (const UsageError& e) {
    err << "lpbound: " << e.what() << '\n';
    return kExitUsage;
  } catch (const io::FormatError& e) {
    err << "lpbound: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "lpbound: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UndefinedBound& e) {
    err << "lpbound: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const std::exception& e) {
    err << "lpbound: " << e.what() << '\n';
    return kExitFailed;
  }
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    bool help = false;
    try {
      config = parse_args(args, &help);
    } catch (const UsageError& e) {
      if (help) {
        out << e.what();
        return kExitOk;
      }
      throw;
    }
  } catch (const UsageError& e) {
    err << "lpbound: " << e.what() << '\n';
    return kExitUsage;
  }
  if (config.out.empty()) return run(config, out, err);
  std::ostringstream buffer;
  const int code = run(config, buffer, err);
  std::ofstream file(config.out, std::ios::binary);
  if (!file) {
    err << "lpbound: cannot write " << config.out << '\n';
    return kExitUsage;
  }
  file << buffer.str();
  return code;
}

}  // namespace lpbound::cli
