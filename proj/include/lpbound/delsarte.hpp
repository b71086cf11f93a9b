#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lpbound/group.hpp"
#include "lpbound/lp.hpp"

namespace lpbound {

// Thrown when hhat(1) is not positive, so h(0)/hhat(1) has no meaning.
class UndefinedBound : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A verified witness: h real, h <= 0 on A^c, hhat >= 0.
struct DelsarteWitness {
  GroupFunction h;
  DualFunction hhat;
  // Characters (canonical indices) with hhat = 0 at `tol`.
  std::vector<std::size_t> null_set;
  double tol = kDefaultTol;

  bool in_null_set(std::size_t gamma) const;
};

struct WitnessViolation {
  enum class Kind { non_real, positive_on_complement, negative_fourier, non_real_fourier, bound_undefined };
  Kind kind;
  std::size_t index;  // element for h-conditions, character for hhat-conditions
  double value;
};

std::string to_string(WitnessViolation::Kind kind);

struct WitnessCheck {
  std::optional<DelsarteWitness> witness;
  std::vector<WitnessViolation> violations;
  bool ok() const { return witness.has_value(); }
};

// Checks the conditions of Delsarte's bound. Throws std::invalid_argument
// when the forbidden set is not symmetric or misses 0, or the groups differ.
WitnessCheck verify_witness(const ForbiddenSet& forbidden, const GroupFunction& h, double tol = kDefaultTol);

// h(0) / hhat(1). Throws UndefinedBound when hhat(1) <= tol.
double delsarte_bound(const DelsarteWitness& witness);

struct OptimalWitness {
  DelsarteWitness witness;
  double bound = 0.0;
  LpSolution lp;
};

// Best witness by linear programming over hhat >= 0, with hhat(gamma) =
// hhat(-gamma) by variable identification and h(0) = 1.
OptimalWitness optimal_witness(const ForbiddenSet& forbidden, double tol = kDefaultTol);

// The LP solved by optimal_witness, with one variable per orbit {gamma, -gamma}
// (orbit representatives in ascending order; the trivial character first).
struct DelsarteProgram {
  LinearProgram lp;
  std::vector<std::vector<std::size_t>> orbits;
};
DelsarteProgram delsarte_program(const ForbiddenSet& forbidden);

// Largest B with B - B inside A^c u {0}; the lexicographically least maximizer.
struct MaxSetResult {
  std::size_t cardinality = 0;
  std::vector<std::size_t> members;
};

inline constexpr std::size_t kBruteForceOrderLimit = 24;

// Exhaustive search. Throws std::length_error when the order exceeds the guard.
MaxSetResult brute_force_max(const ForbiddenSet& forbidden, std::size_t order_limit = kBruteForceOrderLimit);

// Largest admissible B containing `pinned` (which must itself be admissible).
MaxSetResult brute_force_max_containing(const ForbiddenSet& forbidden, const std::vector<std::size_t>& pinned,
                                        std::size_t order_limit = kBruteForceOrderLimit);

// True when every pairwise difference of distinct members avoids A.
bool differences_avoid(const ForbiddenSet& forbidden, const std::vector<std::size_t>& members);

struct ProofAudit {
  std::vector<std::size_t> members;
  double spectral_sum = 0.0;  // sum_gamma |B^(gamma)|^2 hhat(gamma)
  double direct_sum = 0.0;    // sum_{j,k} h(b_j - b_k)
  double lower = 0.0;         // |B|^2 hhat(1)
  double upper = 0.0;         // h(0) |B|
  bool lower_holds = false;
  bool upper_holds = false;
  bool differences_valid = false;
  std::vector<std::pair<std::size_t, std::size_t>> violating_pairs;
};

struct BoundReport {
  double bound = 0.0;
  DelsarteWitness witness;
  std::optional<ProofAudit> audit;
};

// Recomputes the quantity S both ways and checks |B|^2 hhat(1) <= S <= h(0)|B|.
// Runs for any B; when differences hit A, `upper_holds` may fail and the
// offending pairs are listed.
BoundReport audit_proof(const DelsarteWitness& witness, const ForbiddenSet& forbidden,
                        const std::vector<std::size_t>& members);

}  // namespace lpbound
