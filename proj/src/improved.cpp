#include "lpbound/improved.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace lpbound {

std::string to_string(SecondWitnessViolation::Kind kind) {
  switch (kind) {
    case SecondWitnessViolation::Kind::below_one_on_C: return "K < 1 on C";
    case SecondWitnessViolation::Kind::non_real_on_C: return "K not real on C";
    case SecondWitnessViolation::Kind::nonzero_mean: return "Khat(1) != 0";
    case SecondWitnessViolation::Kind::nonzero_on_null: return "Khat != 0 on Null";
  }
  return "unknown";
}

std::string to_string(Side side) {
  switch (side) {
    case Side::above: return "above";
    case Side::below: return "below";
    case Side::none: return "none";
  }
  return "none";
}

double witness_quality(const DelsarteWitness& witness, const DualFunction& Khat) {
  double q = 0.0;
  for (std::size_t g = 0; g < Khat.size(); ++g) {
    if (witness.in_null_set(g)) continue;
    q += std::norm(Khat[g]) / witness.hhat[g].real();
  }
  return q;
}

SecondWitnessCheck verify_second_witness(const DelsarteWitness& witness, const GroupFunction& K,
                                         const std::vector<std::size_t>& C, double tol) {
  if (!(witness.h.group() == K.group())) throw std::invalid_argument("K and h live on different groups");
  using Kind = SecondWitnessViolation::Kind;
  SecondWitnessCheck check;
  for (auto x : C) {
    if (x >= K.size()) throw std::invalid_argument("C member out of range");
    if (std::abs(K[x].imag()) > tol) check.violations.push_back({Kind::non_real_on_C, x, K[x].imag()});
    if (K[x].real() < 1.0 - tol) check.violations.push_back({Kind::below_one_on_C, x, K[x].real()});
  }
  auto Khat = fourier_transform(K);
  if (std::abs(Khat[0]) > tol) check.violations.push_back({Kind::nonzero_mean, 0, std::abs(Khat[0])});
  for (auto g : witness.null_set) {
    if (g != 0 && std::abs(Khat[g]) > tol) check.violations.push_back({Kind::nonzero_on_null, g, std::abs(Khat[g])});
  }
  check.quality = witness_quality(witness, Khat);
  check.impossible = !C.empty() && check.quality <= tol;
  if (check.violations.empty() && !check.impossible) {
    std::vector<std::size_t> sorted_c = C;
    std::sort(sorted_c.begin(), sorted_c.end());
    check.witness = SecondWitness{K, std::move(Khat), std::move(sorted_c), check.quality};
  }
  return check;
}

ImprovedBound improved_bound(const DelsarteWitness& witness, const SecondWitness& second) {
  ImprovedBound out;
  out.delsarte = delsarte_bound(witness);
  if (second.quality <= witness.tol) {
    out.value = out.delsarte;
    return out;
  }
  out.value = witness.h[0].real() / (witness.hhat[0].real() + 1.0 / second.quality);
  out.improved = true;
  return out;
}

GroupFunction min_quality_interpolant(const DelsarteWitness& witness, const std::vector<std::size_t>& points,
                                      const std::vector<Complex>& values, double tol) {
  const auto& group = witness.h.group();
  const std::size_t n = group.order();
  if (points.size() != values.size()) throw std::invalid_argument("points and values differ in length");
  if (std::set<std::size_t>(points.begin(), points.end()).size() != points.size()) {
    throw std::invalid_argument("interpolation points must be distinct");
  }
  for (auto x : points) {
    if (x >= n) throw std::invalid_argument("interpolation point out of range");
  }

  // Free Fourier coefficients: gamma != 1 outside Null.
  std::vector<std::size_t> support;
  for (std::size_t g = 1; g < n; ++g) {
    if (!witness.in_null_set(g)) support.push_back(g);
  }
  const auto p = static_cast<Eigen::Index>(points.size());
  const auto s = static_cast<Eigen::Index>(support.size());
  Eigen::MatrixXcd M(p, s);
  Eigen::VectorXd weight(s);
  for (Eigen::Index j = 0; j < s; ++j) {
    weight(j) = witness.hhat[support[j]].real();
    for (Eigen::Index i = 0; i < p; ++i) M(i, j) = group.character(support[j], points[i]);
  }
  Eigen::VectorXcd rhs(p);
  for (Eigen::Index i = 0; i < p; ++i) rhs(i) = values[i];

  // minimize sum |c_j|^2 / w_j subject to M c = v:  c = W M^* (M W M^*)^+ v.
  const Eigen::MatrixXcd WMt = weight.asDiagonal() * M.adjoint();
  const Eigen::MatrixXcd gram = M * WMt;
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(gram);
  cod.setThreshold(1e-12);
  const Eigen::VectorXcd lambda = cod.solve(rhs);
  const Eigen::VectorXcd coeffs = WMt * lambda;
  const Eigen::VectorXcd residual = rhs - M * coeffs;

  if (s == 0 || residual.norm() > tol * (1.0 + rhs.norm())) {
    // The residual lies in the left null space of M; its pairing with the
    // excluded characters names the conditions that block a solution.
    const Eigen::VectorXcd y = s == 0 ? rhs : residual;
    std::vector<std::size_t> blocking;
    std::vector<std::size_t> excluded{0};
    for (auto g : witness.null_set) {
      if (g != 0) excluded.push_back(g);
    }
    for (auto g : excluded) {
      Complex pairing{};
      for (Eigen::Index i = 0; i < p; ++i) pairing += std::conj(y(i)) * group.character(g, points[i]);
      if (std::abs(pairing) > 1e-9 * (1.0 + y.norm())) blocking.push_back(g);
    }
    if (y.norm() <= tol) return GroupFunction(group, std::vector<Complex>(n));  // v = 0, K = 0
    std::ostringstream msg;
    msg << "second witness infeasible: prescribed values contradict";
    bool first = true;
    for (auto g : blocking) {
      msg << (first ? " " : ", ");
      first = false;
      if (g == 0) {
        msg << "Khat(1)=0";
      } else {
        msg << "Khat(gamma)=0 for gamma in Null at (";
        const auto coords = group.coordinates(g);
        for (std::size_t c = 0; c < coords.size(); ++c) msg << (c ? "," : "") << coords[c];
        msg << ")";
      }
    }
    throw InfeasibleWitness(msg.str(), std::move(blocking));
  }

  std::vector<Complex> khat(n);
  for (Eigen::Index j = 0; j < s; ++j) khat[support[j]] = coeffs(j);
  return inverse_transform(DualFunction(group, std::move(khat)));
}

SecondWitness synthesize_second_witness(const DelsarteWitness& witness, const std::vector<std::size_t>& C, double tol) {
  if (C.empty()) throw std::invalid_argument("synthesis needs a nonempty location set C");
  auto K = min_quality_interpolant(witness, C, std::vector<Complex>(C.size(), Complex{1.0, 0.0}), tol);
  auto check = verify_second_witness(witness, K, C, tol);
  if (!check.ok()) throw std::runtime_error("synthesized second witness failed verification");
  return std::move(*check.witness);
}

std::vector<std::size_t> extension_candidates(const ForbiddenSet& forbidden, const std::vector<std::size_t>& pinned) {
  const auto& group = forbidden.group();
  std::vector<std::size_t> D;
  for (std::size_t d = 0; d < group.order(); ++d) {
    if (std::find(pinned.begin(), pinned.end(), d) != pinned.end()) continue;
    bool ok = true;
    for (auto b : pinned) {
      if (forbidden.contains(group.subtract(d, b))) {
        ok = false;
        break;
      }
    }
    if (ok) D.push_back(d);
  }
  return D;
}

CorollaryVerdict corollary_check(const DelsarteWitness& witness, const ForbiddenSet& forbidden,
                                 const std::vector<std::size_t>& pinned, const GroupFunction& K, std::size_t m,
                                 const CorollaryOptions& options) {
  const auto& group = witness.h.group();
  if (!(forbidden.group() == group) || !(K.group() == group)) {
    throw std::invalid_argument("witness, K and forbidden set must share a group");
  }
  if (std::set<std::size_t>(pinned.begin(), pinned.end()).size() != pinned.size()) {
    throw std::invalid_argument("pinned elements must be distinct");
  }
  if (!differences_avoid(forbidden, pinned)) throw std::invalid_argument("pinned differences must lie in A^c");
  const double bound = delsarte_bound(witness);
  if (std::abs(bound - static_cast<double>(m)) > options.tol * std::max(1.0, static_cast<double>(m))) {
    throw std::invalid_argument("Delsarte bound " + std::to_string(bound) + " is not m = " + std::to_string(m));
  }

  CorollaryVerdict v;
  v.m = m;
  v.k = pinned.size();
  v.D = extension_candidates(forbidden, pinned);
  for (auto b : pinned) v.pinned_sum += K[b];
  const auto Khat = fourier_transform(K);
  v.mean_residual = std::abs(Khat[0]);
  for (auto g : witness.null_set) v.null_residual = std::max(v.null_residual, std::abs(Khat[g]));
  for (auto b : pinned) v.max_imag_on_points = std::max(v.max_imag_on_points, std::abs(K[b].imag()));
  for (auto d : v.D) v.max_imag_on_points = std::max(v.max_imag_on_points, std::abs(K[d].imag()));

  if (v.k >= m) {
    v.reasons.push_back("k >= m: threshold -1/(m-k) undefined");
  } else {
    v.threshold = -1.0 / static_cast<double>(m - v.k);
  }
  if (std::abs(v.pinned_sum - Complex{1.0, 0.0}) > options.tol) v.reasons.push_back("sum of K over pinned points != 1");
  if (v.mean_residual > options.tol) v.reasons.push_back("Khat(1) != 0");
  if (v.null_residual > options.tol) v.reasons.push_back("Khat != 0 on Null");
  if (v.max_imag_on_points > options.tol) v.reasons.push_back("K not real on evaluated points");

  if (v.k < m && !v.D.empty()) {
    bool all_above = true;
    bool all_below = true;
    for (auto d : v.D) {
      const double value = K[d].real();
      v.margin = std::min(v.margin, std::abs(value - v.threshold));
      all_above = all_above && value > v.threshold;
      all_below = all_below && value < v.threshold;
    }
    v.side = all_above ? Side::above : (all_below ? Side::below : Side::none);
    if (v.side == Side::none) v.reasons.push_back("K on both sides of the threshold over D");
    if (v.margin <= options.margin_tol) v.reasons.push_back("K touches the threshold on D");
  }
  v.excluded = v.reasons.empty();
  return v;
}

GroupFunction synthesize_corollary_witness(const DelsarteWitness& witness, const ForbiddenSet& forbidden,
                                           const std::vector<std::size_t>& pinned, double tol) {
  if (pinned.empty()) throw std::invalid_argument("corollary witness needs pinned points");
  const Complex share{1.0 / static_cast<double>(pinned.size()), 0.0};
  const auto D = extension_candidates(forbidden, pinned);
  std::vector<std::size_t> points = pinned;
  std::vector<Complex> values(pinned.size(), share);
  points.insert(points.end(), D.begin(), D.end());
  values.resize(points.size(), Complex{});
  try {
    return min_quality_interpolant(witness, points, values, tol);
  } catch (const InfeasibleWitness&) {
    return min_quality_interpolant(witness, pinned, std::vector<Complex>(pinned.size(), share), tol);
  }
}

ImprovedChainAudit audit_improved_chain(const DelsarteWitness& witness, const SecondWitness& second,
                                        const std::vector<std::size_t>& members, double tol) {
  const auto& group = witness.h.group();
  const std::size_t n = group.order();
  ImprovedChainAudit audit;
  audit.quality = second.quality;
  Complex pairing{};
  for (std::size_t g = 0; g < n; ++g) {
    Complex transform{};  // sum_j conj(gamma(b_j))
    for (auto b : members) transform += std::conj(group.character(g, b));
    pairing += transform * std::conj(second.Khat[g]);
    if (g != 0 && !witness.in_null_set(g)) audit.nontrivial_spectral += std::norm(transform) * witness.hhat[g].real();
  }
  audit.spectral_pairing = std::norm(pairing);
  Complex direct{};
  for (auto b : members) direct += std::conj(second.K[b]);
  audit.direct_pairing = std::norm(direct);
  audit.cardinality_squared = static_cast<double>(members.size() * members.size());
  const double scale = std::max(1.0, audit.cardinality_squared);
  audit.pairing_identity_holds = std::abs(audit.spectral_pairing - audit.direct_pairing) <= tol * scale;
  audit.cauchy_schwarz_holds = audit.nontrivial_spectral * audit.quality >= audit.spectral_pairing - tol * scale;
  audit.lower_holds = audit.direct_pairing >= audit.cardinality_squared - tol * scale;
  return audit;
}

}  // namespace lpbound
