#include "lpbound/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace lpbound::io {

json parse(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw FormatError(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": malformed JSON");
  }
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path);
}

namespace {

template <class T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw FormatError(std::string("field \"") + key + "\" has the wrong type");
  }
}

// JSON has no infinities; encode non-finite values as null.
json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

json complex_json(Complex z) { return json::array({number(z.real()), number(z.imag())}); }

FiniteAbelianGroup group_from_json(const json& j) {
  try {
    return FiniteAbelianGroup(field<std::vector<int>>(j, "cyclic_orders"));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

json to_json(const FiniteAbelianGroup& group) { return {{"cyclic_orders", group.cyclic_orders()}}; }

json element_json(const FiniteAbelianGroup& group, std::size_t index) { return group.coordinates(index); }

json elements_json(const FiniteAbelianGroup& group, const std::vector<std::size_t>& indices) {
  json out = json::array();
  for (auto i : indices) out.push_back(element_json(group, i));
  return out;
}

std::vector<std::size_t> elements_from_json(const FiniteAbelianGroup& group, const json& list) {
  if (!list.is_array()) throw FormatError("element list must be an array of coordinate tuples");
  std::vector<std::size_t> out;
  for (const auto& item : list) {
    std::vector<int> coords;
    if (item.is_number_integer()) {
      coords = {item.get<int>()};
    } else if (item.is_array()) {
      try {
        coords = item.get<std::vector<int>>();
      } catch (const json::exception&) {
        throw FormatError("element coordinates must be integers");
      }
    } else {
      throw FormatError("element must be a coordinate tuple");
    }
    try {
      out.push_back(group.index_of(coords));
    } catch (const std::invalid_argument& e) {
      throw FormatError(e.what());
    }
  }
  return out;
}

ForbiddenSet forbidden_from_json(const FiniteAbelianGroup& group, const json& j) {
  if (!j.is_object() || !j.contains("members")) throw FormatError("missing field \"members\"");
  return ForbiddenSet::with_zero(group, elements_from_json(group, j.at("members")));
}

json to_json(const ForbiddenSet& forbidden) { return {{"members", elements_json(forbidden.group(), forbidden.members())}}; }

json to_json(const ForbiddenSetReport& report) {
  json violations = json::array();
  for (const auto& v : report.violations) violations.push_back(v.coordinates);
  return {{"valid", report.valid()},
          {"contains_zero", report.contains_zero},
          {"symmetric", report.symmetric},
          {"violations", violations}};
}

GroupFunction function_from_json(const FiniteAbelianGroup& group, const json& j) {
  const auto re = field<std::vector<double>>(j, "re");
  std::vector<double> im(re.size(), 0.0);
  if (j.contains("im")) im = field<std::vector<double>>(j, "im");
  if (im.size() != re.size()) throw FormatError("\"re\" and \"im\" differ in length");
  std::vector<Complex> values(re.size());
  for (std::size_t i = 0; i < re.size(); ++i) values[i] = {re[i], im[i]};
  try {
    return GroupFunction(group, std::move(values));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

namespace {

template <class F>
json function_json(const F& f) {
  std::vector<double> re(f.size()), im(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    re[i] = f[i].real();
    im[i] = f[i].imag();
  }
  return {{"re", re}, {"im", im}};
}

}  // namespace

json to_json(const GroupFunction& f) { return function_json(f); }
json to_json(const DualFunction& f) { return function_json(f); }

ComplexMatrix matrix_from_json(const json& j) {
  const auto n = field<std::size_t>(j, "n");
  const auto re = field<std::vector<std::vector<double>>>(j, "re");
  std::vector<std::vector<double>> im(n, std::vector<double>(n, 0.0));
  if (j.contains("im")) im = field<std::vector<std::vector<double>>>(j, "im");
  if (re.size() != n || im.size() != n) throw FormatError("matrix must have n rows");
  ComplexMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    if (re[r].size() != n || im[r].size() != n) throw FormatError("matrix rows must have n entries");
    for (std::size_t c = 0; c < n; ++c) m(r, c) = {re[r][c], im[r][c]};
  }
  return m;
}

json to_json(const ComplexMatrix& m) {
  json re = json::array(), im = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json rr = json::array(), ri = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ri.push_back(m(r, c).imag());
    }
    re.push_back(rr);
    im.push_back(ri);
  }
  return {{"n", m.rows()}, {"re", re}, {"im", im}};
}

FourierFamilyParams params_from_json(const json& j) {
  return FourierFamilyParams::from_phases(field<double>(j, "a_phase"), field<double>(j, "b_phase"));
}

json to_json(const LinearProgram& lp) {
  json upper = json::array();
  for (const auto& u : lp.upper) upper.push_back(u ? json(*u) : json(nullptr));
  json lower = json::array();
  for (double l : lp.lower) lower.push_back(number(l));
  return {{"objective", lp.objective}, {"ub_rows", lp.ub_rows}, {"ub_rhs", lp.ub_rhs}, {"eq_rows", lp.eq_rows},
          {"eq_rhs", lp.eq_rhs},       {"lower", lower},         {"upper", upper}};
}

LinearProgram lp_from_json(const json& j) {
  LinearProgram lp;
  lp.objective = field<std::vector<double>>(j, "objective");
  if (j.contains("ub_rows")) lp.ub_rows = field<std::vector<std::vector<double>>>(j, "ub_rows");
  if (j.contains("ub_rhs")) lp.ub_rhs = field<std::vector<double>>(j, "ub_rhs");
  if (j.contains("eq_rows")) lp.eq_rows = field<std::vector<std::vector<double>>>(j, "eq_rows");
  if (j.contains("eq_rhs")) lp.eq_rhs = field<std::vector<double>>(j, "eq_rhs");
  if (j.contains("lower")) {
    for (const auto& l : j.at("lower")) lp.lower.push_back(l.is_null() ? -std::numeric_limits<double>::infinity() : l.get<double>());
  }
  if (j.contains("upper")) {
    for (const auto& u : j.at("upper")) {
      lp.upper.push_back(u.is_null() ? std::nullopt : std::optional<double>(u.get<double>()));
    }
  }
  return lp;
}

json to_json(const LpSolution& s) {
  const auto& c = s.certificate;
  return {{"status", to_string(s.status)},
          {"x", s.x},
          {"objective_value", s.objective_value},
          {"degenerate", s.degenerate},
          {"iterations", s.iterations},
          {"certificate",
           {{"ub_duals", c.ub_duals},
            {"eq_duals", c.eq_duals},
            {"upper_duals", c.upper_duals},
            {"dual_objective", c.dual_objective},
            {"duality_gap", c.duality_gap},
            {"max_primal_residual", c.max_primal_residual},
            {"max_dual_infeasibility", c.max_dual_infeasibility}}}};
}

json to_json(const DelsarteWitness& w) {
  return {{"h", to_json(w.h)},
          {"hhat", to_json(w.hhat)},
          {"null_set", elements_json(w.h.group(), w.null_set)},
          {"tol", w.tol}};
}

json to_json(const WitnessCheck& check, const FiniteAbelianGroup& group) {
  json violations = json::array();
  for (const auto& v : check.violations) {
    violations.push_back({{"kind", to_string(v.kind)}, {"at", element_json(group, v.index)}, {"value", v.value}});
  }
  json out = {{"valid", check.ok()}, {"violations", violations}};
  if (check.witness) {
    out["witness"] = to_json(*check.witness);
    out["bound"] = delsarte_bound(*check.witness);
  }
  return out;
}

json to_json(const ProofAudit& a, const FiniteAbelianGroup& group) {
  json pairs = json::array();
  for (const auto& [x, y] : a.violating_pairs) pairs.push_back({element_json(group, x), element_json(group, y)});
  return {{"members", elements_json(group, a.members)},
          {"spectral_sum", a.spectral_sum},
          {"direct_sum", a.direct_sum},
          {"lower", a.lower},
          {"upper", a.upper},
          {"lower_holds", a.lower_holds},
          {"upper_holds", a.upper_holds},
          {"differences_valid", a.differences_valid},
          {"violating_pairs", pairs}};
}

json to_json(const BoundReport& r) {
  json out = {{"bound", r.bound}, {"witness", to_json(r.witness)}};
  if (r.audit) out["audit"] = to_json(*r.audit, r.witness.h.group());
  return out;
}

json to_json(const MaxSetResult& r, const FiniteAbelianGroup& group) {
  return {{"cardinality", r.cardinality}, {"example", elements_json(group, r.members)}};
}

json to_json(const SecondWitness& w) {
  return {{"K", to_json(w.K)},
          {"Khat", to_json(w.Khat)},
          {"C", elements_json(w.K.group(), w.C)},
          {"quality", number(w.quality)}};
}

json to_json(const SecondWitnessCheck& check, const FiniteAbelianGroup& group) {
  json violations = json::array();
  for (const auto& v : check.violations) {
    violations.push_back({{"kind", to_string(v.kind)}, {"at", element_json(group, v.index)}, {"value", v.value}});
  }
  json out = {{"valid", check.ok()},
              {"impossible", check.impossible},
              {"quality", number(check.quality)},
              {"violations", violations}};
  if (check.witness) out["witness"] = to_json(*check.witness);
  return out;
}

json to_json(const ImprovedBound& b) {
  return {{"value", b.value}, {"delsarte", b.delsarte}, {"improved", b.improved}};
}

json to_json(const CorollaryVerdict& v, const FiniteAbelianGroup& group) {
  return {{"excluded", v.excluded},
          {"verdict", v.excluded ? "no admissible B containing the pinned points reaches |B| = m" : "inconclusive"},
          {"m", v.m},
          {"k", v.k},
          {"D", elements_json(group, v.D)},
          {"threshold", v.threshold},
          {"side", to_string(v.side)},
          {"margin", number(v.margin)},
          {"pinned_sum", complex_json(v.pinned_sum)},
          {"mean_residual", v.mean_residual},
          {"null_residual", v.null_residual},
          {"max_imag_on_points", v.max_imag_on_points},
          {"reasons", v.reasons}};
}

json to_json(const TorusRatio& r) {
  return {{"n", r.n},
          {"h_at_one", r.h_at_one},
          {"hhat_zero", r.hhat_zero},
          {"ratio", r.ratio},
          {"exact", r.exact},
          {"nonnegative_spectrum", r.nonnegative_spectrum},
          {"support_size", r.support_size}};
}

json to_json(const G0Minimum& m) {
  return {{"value", m.value},
          {"alpha", m.argmin.alpha},
          {"beta", m.argmin.beta},
          {"case", to_string(m.optimum_case)},
          {"active", m.active},
          {"g", {m.g.g0, m.g.g1, m.g.g2}},
          {"lagrange_residuals", m.lagrange},
          {"refined", m.refined},
          {"uncertainty", m.uncertainty},
          {"grid", m.grid},
          {"grid_best", m.grid_best},
          {"max_g1_plus_g2", m.max_g1_plus_g2},
          {"candidates_refined", m.candidates_refined}};
}

json to_json(const SBoundChain& c) {
  return {{"c_closed_form", c.c_closed_form},
          {"c_numeric", c.c_numeric},
          {"optimum", to_json(c.optimum)},
          {"s_square_cap", c.s_square_cap},
          {"k_cap", c.k_cap},
          {"threshold", c.threshold},
          {"intermediate", c.intermediate},
          {"margin", c.margin},
          {"chain_margin", c.chain_margin},
          {"torus_ratio", c.torus_ratio},
          {"max_lagrange_residual", c.max_lagrange_residual},
          {"checks",
           {{"c_above_0843", c.c_above_0843},
            {"routes_agree", c.routes_agree},
            {"lagrange_ok", c.lagrange_ok},
            {"case_ok", c.case_ok},
            {"cap_below_37", c.cap_below_37},
            {"k_cap_below_intermediate", c.k_cap_below_intermediate},
            {"intermediate_below_threshold", c.intermediate_below_threshold}}},
          {"ok", c.ok()}};
}

json to_json(const Certificate& cert) {
  json samples = json::array();
  for (const auto& s : cert.samples) {
    json z = json::array();
    for (const auto& v : s.z) z.push_back(complex_json(v));
    samples.push_back({{"seed", s.seed},
                       {"found", s.found},
                       {"search_residual", number(s.search_residual)},
                       {"z", z},
                       {"K", complex_json(s.K)},
                       {"s", {s.s.s0, s.s.s1, s.s.s2}},
                       {"k_from_s", s.k_from_s},
                       {"consistent", s.consistent},
                       {"below_cap", s.below_cap}});
  }
  return {{"params", {{"a_phase", cert.a_phase}, {"b_phase", cert.b_phase}}},
          {"verdict", cert.verdict},
          {"chain", to_json(cert.chain)},
          {"ab_independent", "c, cap, k_cap and margins are computed without reference to a or b"},
          {"c_digits_note", "c beyond three decimals is a derived value"},
          {"k_normalization", complex_json(cert.k_normalization)},
          {"hadamard_residual", cert.hadamard_residual},
          {"k_support",
           {{"ok", cert.k_support.ok},
            {"monomials", cert.k_support.monomials},
            {"outside_h_support", cert.k_support.outside_h_support},
            {"constant_term", cert.k_support.constant_term}}},
          {"samples_requested", cert.samples_requested},
          {"samples_found", cert.samples_found},
          {"samples_complete", cert.samples_complete},
          {"worst_sample_K", number(cert.worst_sample_K)},
          {"samples", samples},
          {"failures", cert.failures}};
}

}  // namespace lpbound::io
