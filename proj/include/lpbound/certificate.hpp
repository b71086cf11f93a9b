#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "lpbound/torus.hpp"

namespace lpbound {

// u = (1, exp(i alpha), exp(i beta)).
struct PhasePoint {
  double alpha = 0.0;
  double beta = 0.0;

  double x1() const;
  double y1() const;
  double x2() const;
  double y2() const;
  std::array<Complex, 3> u() const;
  // (-alpha, -beta): swaps the roles of g1 and g2, keeps g0.
  PhasePoint mirrored() const;
};

struct GTriple {
  double g0 = 0.0;
  double g1 = 0.0;
  double g2 = 0.0;
  double sum() const { return g0 + g1 + g2; }
};

// g_j = |<f_j, u>|^2.
GTriple evaluate_g(const PhasePoint& pp);

// Partial derivatives (d/d alpha, d/d beta) of g_j.
std::array<double, 2> g_gradient(const PhasePoint& pp, int j);

// The polynomial system in x1 = cos a, y1 = sin a, x2 = cos b, y2 = sin b for
// a minimum of g0 with g1 = 6 active:
//   [0] g1 - 6 written out as a polynomial,
//   [1] the Lagrange condition (d_a g0)(d_b g1) - (d_b g0)(d_a g1) as a polynomial,
//   [2] x1^2 + y1^2 - 1, [3] x2^2 + y2^2 - 1.
std::array<double, 4> lagrange_residual(const PhasePoint& pp);

// Same system from the trigonometric form, for g1 or g2 active (`active` = 1 or 2).
std::array<double, 4> lagrange_residual_trig(const PhasePoint& pp, int active);

enum class OptimumCase { interior, both_active, one_active };
std::string to_string(OptimumCase c);

struct G0MinimizeOptions {
  int grid = 720;
  int max_candidates = 12;
  double candidate_separation = 0.3;  // radians, torus max-norm
  double newton_tol = 1e-12;
};

struct G0Minimum {
  double value = 0.0;
  PhasePoint argmin;           // representative with g1 active in case (iii)
  OptimumCase optimum_case = OptimumCase::interior;
  int active = 0;              // active constraint index at the reported argmin
  GTriple g;
  std::array<double, 4> lagrange{};  // lagrange_residual at argmin
  bool refined = false;              // false: best grid point returned, widened uncertainty
  double uncertainty = 0.0;
  double grid_best = 0.0;
  double max_g1_plus_g2 = 0.0;       // over the grid; <= 9 rules out both constraints active
  int candidates_refined = 0;
  int grid = 0;
};

// min g0 subject to g1 <= 6, g2 <= 6: dense grid, feasibility filter, then
// Newton refinement of the stationary / Lagrange systems from the best
// well-separated grid candidates.
G0Minimum minimize_g0(const G0MinimizeOptions& options = {});

// Minimum of g0 over a feasibility-filtered n x n grid (independent lower-bound check).
double grid_min_g0(int n);

// 3/2 - (3/2) sqrt(16 sqrt 6 - 39).
double closed_form_c();

// c^2 + (6-c)^2 + 9: max of s0^2+s1^2+s2^2 on [c, 6-c]^3 with s0+s1+s2 = 9.
// Throws std::invalid_argument unless 0 < c <= 3.
double s_square_cap(double c);

inline constexpr double kExclusionThreshold = -1.0 / 30.0;  // -1/(m-k), m = 36, k = 6
inline constexpr double kIntermediateBound = -17.0 / 486.0;

// The part of the argument that does not depend on (a, b).
struct SBoundChain {
  double c_closed_form = 0.0;
  double c_numeric = 0.0;
  G0Minimum optimum;
  double s_square_cap = 0.0;
  double k_cap = 0.0;              // (cap - 54) / 486
  double threshold = kExclusionThreshold;
  double intermediate = kIntermediateBound;
  double margin = 0.0;             // threshold - k_cap
  double chain_margin = 0.0;       // -1/30 - (-17/486) = 17/486 - 1/30
  std::int64_t torus_ratio = 0;    // h(1)/hhat(0) for n = 6, i.e. m
  double max_lagrange_residual = 0.0;

  bool c_above_0843 = false;
  bool routes_agree = false;       // |c_numeric - c_closed_form| < 1e-6
  bool lagrange_ok = false;        // residuals < 1e-8
  bool case_ok = false;            // case (iii), never (ii)
  bool cap_below_37 = false;
  bool k_cap_below_intermediate = false;
  bool intermediate_below_threshold = false;
  bool ok() const;
};

SBoundChain prove_s_bounds(const G0MinimizeOptions& options = {});

struct SpotCheck {
  std::uint64_t seed = 0;
  bool found = false;
  double search_residual = 0.0;
  std::vector<Complex> z;
  Complex K{};
  SpectralTriple s;
  double k_from_s = 0.0;
  bool consistent = false;
  bool below_cap = false;
};

struct Certificate {
  double a_phase = 0.0;
  double b_phase = 0.0;
  FourierFamilyParams params;
  SBoundChain chain;
  Complex k_normalization{};  // sum_j K(b_j)
  double hadamard_residual = 0.0;
  KSupportCheck k_support;
  std::vector<SpotCheck> samples;
  int samples_requested = 0;
  int samples_found = 0;
  bool samples_complete = false;
  double worst_sample_K = 0.0;  // max Re K over found samples (NaN when none)
  bool verdict = false;
  std::vector<std::string> failures;
};

struct CertificateOptions {
  int n_samples = 10;
  std::uint64_t seed = 1;
  UnbiasedSearchOptions search;
};

Certificate build_certificate(double a_phase, double b_phase, const CertificateOptions& options = {});
// Reuses an already computed (a, b)-independent chain.
Certificate build_certificate(double a_phase, double b_phase, const SBoundChain& chain,
                              const CertificateOptions& options = {});

// Step-by-step human-readable rendering of a certificate.
std::string render_text(const Certificate& cert);

struct SweepRow {
  double a_phase = 0.0;
  double b_phase = 0.0;
  bool verdict = false;
  double margin = 0.0;
  int n_samples = 0;       // samples found
  double worst_sample_K = 0.0;
};

// grid x grid phases 2 pi i / grid; rows in (i, j) order regardless of `jobs`.
std::vector<SweepRow> sweep_certificates(int grid, const CertificateOptions& options, int jobs = 1);

}  // namespace lpbound
