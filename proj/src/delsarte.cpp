#include "lpbound/delsarte.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>

namespace lpbound {

bool DelsarteWitness::in_null_set(std::size_t gamma) const {
  return std::binary_search(null_set.begin(), null_set.end(), gamma);
}

std::string to_string(WitnessViolation::Kind kind) {
  switch (kind) {
    case WitnessViolation::Kind::non_real: return "h not real";
    case WitnessViolation::Kind::positive_on_complement: return "h > 0 on complement of A";
    case WitnessViolation::Kind::negative_fourier: return "hhat < 0";
    case WitnessViolation::Kind::non_real_fourier: return "hhat not real";
    case WitnessViolation::Kind::bound_undefined: return "bound undefined (division by zero): hhat(1) = 0";
  }
  return "unknown";
}

namespace {

void require_valid(const ForbiddenSet& forbidden) {
  const auto report = validate_forbidden_set(forbidden);
  if (!report.contains_zero) throw std::invalid_argument("forbidden set must contain 0");
  if (!report.symmetric) throw std::invalid_argument("forbidden set must be symmetric (A = -A)");
}

}  // namespace

WitnessCheck verify_witness(const ForbiddenSet& forbidden, const GroupFunction& h, double tol) {
  if (!(forbidden.group() == h.group())) throw std::invalid_argument("witness and forbidden set live on different groups");
  require_valid(forbidden);

  WitnessCheck check;
  using Kind = WitnessViolation::Kind;
  const std::size_t n = h.size();
  for (std::size_t x = 0; x < n; ++x) {
    if (std::abs(h[x].imag()) > tol) check.violations.push_back({Kind::non_real, x, h[x].imag()});
  }
  for (auto x : forbidden.complement()) {
    if (h[x].real() > tol) check.violations.push_back({Kind::positive_on_complement, x, h[x].real()});
  }
  auto hhat = fourier_transform(h);
  for (std::size_t g = 0; g < n; ++g) {
    if (std::abs(hhat[g].imag()) > tol) check.violations.push_back({Kind::non_real_fourier, g, hhat[g].imag()});
    if (hhat[g].real() < -tol) check.violations.push_back({Kind::negative_fourier, g, hhat[g].real()});
  }
  if (hhat[0].real() <= tol) check.violations.push_back({Kind::bound_undefined, 0, hhat[0].real()});
  if (!check.violations.empty()) return check;

  std::vector<std::size_t> null_set;
  for (std::size_t g = 0; g < n; ++g) {
    if (std::abs(hhat[g]) <= tol) null_set.push_back(g);
  }
  check.witness = DelsarteWitness{h, std::move(hhat), std::move(null_set), tol};
  return check;
}

double delsarte_bound(const DelsarteWitness& witness) {
  const double mean = witness.hhat[0].real();
  if (mean <= witness.tol) throw UndefinedBound("bound undefined: hhat(1) = " + std::to_string(mean));
  return witness.h[0].real() / mean;
}

DelsarteProgram delsarte_program(const ForbiddenSet& forbidden) {
  const auto& group = forbidden.group();
  const std::size_t n = group.order();
  DelsarteProgram program;
  std::vector<bool> seen(n, false);
  for (std::size_t g = 0; g < n; ++g) {
    if (seen[g]) continue;
    const std::size_t neg = group.negate(g);
    seen[g] = seen[neg] = true;
    program.orbits.push_back(g == neg ? std::vector<std::size_t>{g} : std::vector<std::size_t>{g, neg});
  }
  const std::size_t vars = program.orbits.size();
  auto& lp = program.lp;
  lp.objective.assign(vars, 0.0);
  lp.objective[0] = 1.0;  // hhat(1)
  for (auto x : forbidden.complement()) {
    std::vector<double> row(vars, 0.0);
    for (std::size_t o = 0; o < vars; ++o) {
      for (auto g : program.orbits[o]) row[o] += group.character(g, x).real();
    }
    lp.ub_rows.push_back(std::move(row));
    lp.ub_rhs.push_back(0.0);
  }
  std::vector<double> normalization(vars, 0.0);
  for (std::size_t o = 0; o < vars; ++o) normalization[o] = static_cast<double>(program.orbits[o].size());
  lp.eq_rows.push_back(std::move(normalization));
  lp.eq_rhs.push_back(1.0);
  return program;
}

OptimalWitness optimal_witness(const ForbiddenSet& forbidden, double tol) {
  require_valid(forbidden);
  const auto& group = forbidden.group();
  auto program = delsarte_program(forbidden);
  auto solution = solve(program.lp);
  if (solution.status != LpStatus::optimal) {
    throw std::runtime_error("Delsarte LP not solved: status " + to_string(solution.status));
  }
  std::vector<Complex> hhat(group.order());
  for (std::size_t o = 0; o < program.orbits.size(); ++o) {
    const double v = std::max(0.0, solution.x[o]);
    for (auto g : program.orbits[o]) hhat[g] = v;
  }
  auto h = inverse_transform(DualFunction(group, std::move(hhat)));
  std::vector<Complex> real_h(h.values().size());
  for (std::size_t x = 0; x < real_h.size(); ++x) real_h[x] = h[x].real();

  auto check = verify_witness(forbidden, GroupFunction(group, std::move(real_h)), tol);
  if (!check.ok()) throw std::runtime_error("LP optimum failed witness verification");
  OptimalWitness out{std::move(*check.witness), 0.0, std::move(solution)};
  out.bound = delsarte_bound(out.witness);
  return out;
}

bool differences_avoid(const ForbiddenSet& forbidden, const std::vector<std::size_t>& members) {
  const auto& group = forbidden.group();
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = 0; j < members.size(); ++j) {
      if (members[i] == members[j]) continue;
      if (forbidden.contains(group.subtract(members[i], members[j]))) return false;
    }
  }
  return true;
}

namespace {

using Mask = std::uint32_t;

// Include-first DFS over ascending candidates: the first maximum clique met
// is the lexicographically least one.
void extend(const std::vector<Mask>& adjacency, std::vector<std::size_t>& current, Mask candidates,
            std::vector<std::size_t>& best) {
  if (current.size() > best.size()) best = current;
  while (candidates) {
    if (current.size() + static_cast<std::size_t>(std::popcount(candidates)) <= best.size()) return;
    const auto v = static_cast<std::size_t>(std::countr_zero(candidates));
    candidates &= candidates - 1;
    current.push_back(v);
    extend(adjacency, current, candidates & adjacency[v], best);
    current.pop_back();
  }
}

std::vector<Mask> compatibility(const ForbiddenSet& forbidden) {
  const auto& group = forbidden.group();
  const std::size_t n = group.order();
  std::vector<Mask> adjacency(n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (x != y && !forbidden.contains(group.subtract(x, y))) adjacency[x] |= Mask{1} << y;
    }
  }
  return adjacency;
}

void guard(const ForbiddenSet& forbidden, std::size_t order_limit) {
  const std::size_t n = forbidden.group().order();
  if (n > order_limit || n > 32) {
    throw std::length_error("exhaustive search refused: group order " + std::to_string(n) + " exceeds limit " +
                            std::to_string(std::min<std::size_t>(order_limit, 32)));
  }
}

}  // namespace

MaxSetResult brute_force_max(const ForbiddenSet& forbidden, std::size_t order_limit) {
  return brute_force_max_containing(forbidden, {}, order_limit);
}

MaxSetResult brute_force_max_containing(const ForbiddenSet& forbidden, const std::vector<std::size_t>& pinned,
                                        std::size_t order_limit) {
  guard(forbidden, order_limit);
  require_valid(forbidden);
  const std::size_t n = forbidden.group().order();
  const auto adjacency = compatibility(forbidden);
  Mask candidates = n == 32 ? ~Mask{0} : (Mask{1} << n) - 1;
  std::vector<std::size_t> base = pinned;
  std::sort(base.begin(), base.end());
  base.erase(std::unique(base.begin(), base.end()), base.end());
  for (auto p : base) {
    if (p >= n) throw std::invalid_argument("pinned element out of range");
    candidates &= adjacency[p];
  }
  if (!differences_avoid(forbidden, base)) throw std::invalid_argument("pinned elements are not admissible");

  std::vector<std::size_t> current;
  std::vector<std::size_t> best;
  extend(adjacency, current, candidates, best);
  best.insert(best.end(), base.begin(), base.end());
  std::sort(best.begin(), best.end());
  return {best.size(), best};
}

BoundReport audit_proof(const DelsarteWitness& witness, const ForbiddenSet& forbidden,
                        const std::vector<std::size_t>& members) {
  const auto& group = witness.h.group();
  if (!(forbidden.group() == group)) throw std::invalid_argument("witness and forbidden set live on different groups");
  const std::size_t n = group.order();
  ProofAudit audit;
  audit.members = members;
  for (auto b : members) {
    if (b >= n) throw std::invalid_argument("set member out of range");
  }

  for (std::size_t g = 0; g < n; ++g) {
    Complex transform{};
    for (auto b : members) transform += group.character(g, b);
    audit.spectral_sum += std::norm(transform) * witness.hhat[g].real();
  }
  for (auto bj : members) {
    for (auto bk : members) audit.direct_sum += witness.h[group.subtract(bj, bk)].real();
  }
  const double size = static_cast<double>(members.size());
  audit.lower = size * size * witness.hhat[0].real();
  audit.upper = witness.h[0].real() * size;
  const double slack = 1e-9 * std::max(1.0, std::abs(audit.upper));
  audit.lower_holds = audit.lower <= audit.spectral_sum + slack;
  audit.upper_holds = audit.spectral_sum <= audit.upper + slack;

  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      if (members[i] == members[j] || forbidden.contains(group.subtract(members[i], members[j]))) {
        audit.violating_pairs.emplace_back(members[i], members[j]);
      }
    }
  }
  audit.differences_valid = audit.violating_pairs.empty();

  BoundReport report{0.0, witness, std::move(audit)};
  report.bound = delsarte_bound(witness);
  return report;
}

}  // namespace lpbound
