#pragma once

#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lpbound/delsarte.hpp"
#include "lpbound/group.hpp"

namespace lpbound {

// Second witness K for a verified Delsarte witness h and location set C.
struct SecondWitness {
  GroupFunction K;
  DualFunction Khat;
  std::vector<std::size_t> C;
  // Q = sum over gamma outside Null of |Khat(gamma)|^2 / hhat(gamma).
  double quality = 0.0;
};

struct SecondWitnessViolation {
  enum class Kind { below_one_on_C, non_real_on_C, nonzero_mean, nonzero_on_null };
  Kind kind;
  std::size_t index;
  double value;
};

std::string to_string(SecondWitnessViolation::Kind kind);

struct SecondWitnessCheck {
  std::optional<SecondWitness> witness;
  std::vector<SecondWitnessViolation> violations;
  // C nonempty but Q = 0: only |B| = 0 is compatible.
  bool impossible = false;
  double quality = 0.0;
  bool ok() const { return witness.has_value(); }
};

// Sum over gamma outside the null set of |Khat(gamma)|^2 / hhat(gamma).
double witness_quality(const DelsarteWitness& witness, const DualFunction& Khat);

// Checks K(x) >= 1 on C, Khat(1) = 0 and Khat = 0 on Null.
SecondWitnessCheck verify_second_witness(const DelsarteWitness& witness, const GroupFunction& K,
                                         const std::vector<std::size_t>& C, double tol = kDefaultTol);

struct ImprovedBound {
  double value = 0.0;
  double delsarte = 0.0;
  // False when Q <= tol; `value` then equals the Delsarte bound.
  bool improved = false;
};

// h(0) / (hhat(1) + 1/Q).
ImprovedBound improved_bound(const DelsarteWitness& witness, const SecondWitness& second);

// Raised by the synthesis routines when the linear constraints on K are
// inconsistent. `blocking` names the characters whose vanishing condition
// forces the contradiction.
class InfeasibleWitness : public std::runtime_error {
 public:
  InfeasibleWitness(const std::string& what, std::vector<std::size_t> blocking)
      : std::runtime_error(what), blocking_(std::move(blocking)) {}
  const std::vector<std::size_t>& blocking() const { return blocking_; }

 private:
  std::vector<std::size_t> blocking_;
};

// Minimum-Q function K with prescribed values at `points`, Khat(1) = 0 and
// Khat = 0 on Null. Solves the weighted minimum-norm (KKT) system.
GroupFunction min_quality_interpolant(const DelsarteWitness& witness, const std::vector<std::size_t>& points,
                                      const std::vector<Complex>& values, double tol = kDefaultTol);

// K with K = 1 on C (equality form of K >= 1) and minimal Q.
SecondWitness synthesize_second_witness(const DelsarteWitness& witness, const std::vector<std::size_t>& C,
                                        double tol = kDefaultTol);

// Elements d outside `pinned` with d - b_j in A^c for every pinned b_j.
std::vector<std::size_t> extension_candidates(const ForbiddenSet& forbidden, const std::vector<std::size_t>& pinned);

enum class Side { above, below, none };
std::string to_string(Side side);

struct CorollaryVerdict {
  // True: no B containing the pinned points with B - B in A^c u {0} has |B| = m.
  bool excluded = false;
  std::size_t m = 0;
  std::size_t k = 0;
  std::vector<std::size_t> D;
  double threshold = 0.0;  // -1/(m-k)
  Side side = Side::none;
  // min over D of |K(x) - threshold|; infinity when D is empty.
  double margin = std::numeric_limits<double>::infinity();
  Complex pinned_sum{};
  double mean_residual = 0.0;   // |Khat(1)|
  double null_residual = 0.0;   // max |Khat| on Null
  double max_imag_on_points = 0.0;
  std::vector<std::string> reasons;  // why the verdict is inconclusive
};

struct CorollaryOptions {
  double tol = kDefaultTol;
  double margin_tol = 1e-9;
};

// Exclusion test: sum K(b_j) = 1, Khat(1) = 0, Khat|Null = 0 and K strictly
// on one side of -1/(m-k) over D. Throws std::invalid_argument when the
// pinned points are not admissible or the Delsarte bound is not m.
CorollaryVerdict corollary_check(const DelsarteWitness& witness, const ForbiddenSet& forbidden,
                                 const std::vector<std::size_t>& pinned, const GroupFunction& K, std::size_t m,
                                 const CorollaryOptions& options = {});

// Candidate K for corollary_check: K(b_j) = 1/k on the pinned points and
// K = 0 on D, falling back to the pinned constraints alone.
GroupFunction synthesize_corollary_witness(const DelsarteWitness& witness, const ForbiddenSet& forbidden,
                                           const std::vector<std::size_t>& pinned, double tol = kDefaultTol);

// The chain |B|^2 <= |sum_B conj K|^2 = |sum_gamma B^ conj Khat|^2
// <= (sum_{gamma != 1, not Null} |B^|^2 hhat) * Q for a set B inside C.
struct ImprovedChainAudit {
  double nontrivial_spectral = 0.0;  // sum over gamma != 1 outside Null of |B^|^2 hhat
  double quality = 0.0;
  double spectral_pairing = 0.0;     // |sum_gamma B^(gamma) conj Khat(gamma)|^2
  double direct_pairing = 0.0;       // |sum_{x in B} conj K(x)|^2
  double cardinality_squared = 0.0;
  bool pairing_identity_holds = false;
  bool cauchy_schwarz_holds = false;
  bool lower_holds = false;
};

ImprovedChainAudit audit_improved_chain(const DelsarteWitness& witness, const SecondWitness& second,
                                        const std::vector<std::size_t>& members, double tol = kDefaultTol);

}  // namespace lpbound
