#include "lpbound/certificate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace lpbound {

double PhasePoint::x1() const { return std::cos(alpha); }
double PhasePoint::y1() const { return std::sin(alpha); }
double PhasePoint::x2() const { return std::cos(beta); }
double PhasePoint::y2() const { return std::sin(beta); }

std::array<Complex, 3> PhasePoint::u() const { return {Complex{1.0, 0.0}, {x1(), y1()}, {x2(), y2()}}; }

PhasePoint PhasePoint::mirrored() const {
  const double two_pi = 2.0 * std::numbers::pi;
  return {std::fmod(two_pi - std::fmod(alpha, two_pi), two_pi), std::fmod(two_pi - std::fmod(beta, two_pi), two_pi)};
}

std::string to_string(OptimumCase c) {
  switch (c) {
    case OptimumCase::interior: return "interior stationary point";
    case OptimumCase::both_active: return "both constraints active";
    case OptimumCase::one_active: return "one constraint active";
  }
  return "unknown";
}

namespace {

// g_j = |1 + p e^{i alpha} + q e^{i beta}|^2 with p = conj(f_j[1]), q = conj(f_j[2]).
struct GCoefficients {
  Complex p;
  Complex q;
};

GCoefficients coefficients(int j) {
  const auto& f = fourier3_basis();
  return {std::conj(f[j][1]), std::conj(f[j][2])};
}

std::array<double, 2> gradient_of(const PhasePoint& pp, int j) {
  const auto [p, q] = coefficients(j);
  const Complex P = p * Complex{pp.x1(), pp.y1()};
  const Complex Q = q * Complex{pp.x2(), pp.y2()};
  const double cross = (P * std::conj(Q)).imag();
  return {-2.0 * P.imag() - 2.0 * cross, -2.0 * Q.imag() + 2.0 * cross};
}

double lagrange_determinant(const PhasePoint& pp, int active) {
  const auto d0 = gradient_of(pp, 0);
  const auto dj = gradient_of(pp, active);
  return d0[0] * dj[1] - d0[1] * dj[0];
}

template <class System>
bool newton(System&& system, PhasePoint& pp, double tol) {
  constexpr double h = 1e-6;
  for (int it = 0; it < 60; ++it) {
    const auto F = system(pp);
    if (std::max(std::abs(F[0]), std::abs(F[1])) < tol) return true;
    const auto Fa = system({pp.alpha + h, pp.beta});
    const auto Fa_ = system({pp.alpha - h, pp.beta});
    const auto Fb = system({pp.alpha, pp.beta + h});
    const auto Fb_ = system({pp.alpha, pp.beta - h});
    const double j00 = (Fa[0] - Fa_[0]) / (2 * h), j01 = (Fb[0] - Fb_[0]) / (2 * h);
    const double j10 = (Fa[1] - Fa_[1]) / (2 * h), j11 = (Fb[1] - Fb_[1]) / (2 * h);
    const double det = j00 * j11 - j01 * j10;
    if (std::abs(det) < 1e-14) return false;
    double da = -(j11 * F[0] - j01 * F[1]) / det;
    double db = -(-j10 * F[0] + j00 * F[1]) / det;
    const double len = std::max(std::abs(da), std::abs(db));
    if (len > 0.5) {
      da *= 0.5 / len;
      db *= 0.5 / len;
    }
    pp.alpha += da;
    pp.beta += db;
  }
  const auto F = system(pp);
  return std::max(std::abs(F[0]), std::abs(F[1])) < tol;
}

PhasePoint wrap(PhasePoint pp) {
  const double two_pi = 2.0 * std::numbers::pi;
  pp.alpha = std::fmod(std::fmod(pp.alpha, two_pi) + two_pi, two_pi);
  pp.beta = std::fmod(std::fmod(pp.beta, two_pi) + two_pi, two_pi);
  return pp;
}

double torus_distance(double a, double b) {
  const double two_pi = 2.0 * std::numbers::pi;
  double d = std::fmod(std::abs(a - b), two_pi);
  return std::min(d, two_pi - d);
}

// Fast grid evaluation of (g0, g1, g2) from unit phasors.
struct GridEvaluator {
  std::array<GCoefficients, 3> c{coefficients(0), coefficients(1), coefficients(2)};
  GTriple operator()(Complex ea, Complex eb) const {
    GTriple g;
    g.g0 = std::norm(1.0 + c[0].p * ea + c[0].q * eb);
    g.g1 = std::norm(1.0 + c[1].p * ea + c[1].q * eb);
    g.g2 = std::norm(1.0 + c[2].p * ea + c[2].q * eb);
    return g;
  }
};

std::vector<Complex> unit_grid(int n) {
  std::vector<Complex> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * std::numbers::pi * i / n;
    out[static_cast<std::size_t>(i)] = {std::cos(t), std::sin(t)};
  }
  return out;
}

}  // namespace

GTriple evaluate_g(const PhasePoint& pp) {
  const auto u = pp.u();
  const auto& f = fourier3_basis();
  return {std::norm(inner(f[0], u)), std::norm(inner(f[1], u)), std::norm(inner(f[2], u))};
}

std::array<double, 2> g_gradient(const PhasePoint& pp, int j) {
  if (j < 0 || j > 2) throw std::invalid_argument("g index must be 0, 1 or 2");
  return gradient_of(pp, j);
}

std::array<double, 4> lagrange_residual(const PhasePoint& pp) {
  const double s3 = std::numbers::sqrt3;
  const double x1 = pp.x1(), y1 = pp.y1(), x2 = pp.x2(), y2 = pp.y2();
  const double active = -x1 - x2 - x1 * x2 + s3 * y1 - s3 * x2 * y1 - s3 * y2 + s3 * x1 * y2 - y1 * y2 - 3.0;
  const double multiplier = 2 * s3 * x2 * y1 - 4 * s3 * x1 * x2 * y1 + 2 * s3 * x2 * x2 * y1 + 2 * s3 * x1 * y2 +
                            2 * s3 * x1 * x1 * y2 - 4 * s3 * x1 * x2 * y2 - 2 * s3 * y1 * y1 * y2 -
                            2 * s3 * y1 * y2 * y2;
  return {active, multiplier, x1 * x1 + y1 * y1 - 1.0, x2 * x2 + y2 * y2 - 1.0};
}

std::array<double, 4> lagrange_residual_trig(const PhasePoint& pp, int active) {
  if (active != 1 && active != 2) throw std::invalid_argument("active constraint must be 1 or 2");
  const auto g = evaluate_g(pp);
  const double value = active == 1 ? g.g1 : g.g2;
  return {value - 6.0, lagrange_determinant(pp, active), pp.x1() * pp.x1() + pp.y1() * pp.y1() - 1.0,
          pp.x2() * pp.x2() + pp.y2() * pp.y2() - 1.0};
}

double grid_min_g0(int n) {
  if (n < 1) throw std::invalid_argument("grid size must be positive");
  const auto e = unit_grid(n);
  const GridEvaluator eval;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& ea : e) {
    for (const auto& eb : e) {
      const auto g = eval(ea, eb);
      if (g.g1 <= 6.0 && g.g2 <= 6.0) best = std::min(best, g.g0);
    }
  }
  return best;
}

G0Minimum minimize_g0(const G0MinimizeOptions& options) {
  const int n = options.grid;
  if (n < 8) throw std::invalid_argument("grid too coarse");
  const auto e = unit_grid(n);
  const GridEvaluator eval;
  G0Minimum out;
  out.grid = n;

  struct GridPoint {
    double value;
    int i;
    int j;
  };
  std::vector<GridPoint> feasible;
  feasible.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const auto g = eval(e[static_cast<std::size_t>(i)], e[static_cast<std::size_t>(j)]);
      out.max_g1_plus_g2 = std::max(out.max_g1_plus_g2, g.g1 + g.g2);
      if (g.g1 <= 6.0 && g.g2 <= 6.0) feasible.push_back({g.g0, i, j});
    }
  }
  if (feasible.empty()) throw std::runtime_error("no feasible grid point");
  std::stable_sort(feasible.begin(), feasible.end(),
                   [](const GridPoint& a, const GridPoint& b) { return a.value < b.value; });
  const double step = 2.0 * std::numbers::pi / n;
  out.grid_best = feasible.front().value;

  std::vector<PhasePoint> candidates;
  for (const auto& gp : feasible) {
    if (static_cast<int>(candidates.size()) >= options.max_candidates) break;
    const PhasePoint pp{gp.i * step, gp.j * step};
    const bool separated = std::all_of(candidates.begin(), candidates.end(), [&](const PhasePoint& c) {
      return std::max(torus_distance(c.alpha, pp.alpha), torus_distance(c.beta, pp.beta)) >
             options.candidate_separation;
    });
    if (separated) candidates.push_back(pp);
  }

  bool have = false;
  PhasePoint best_point{};
  double best_value = std::numeric_limits<double>::infinity();
  auto consider = [&](PhasePoint pp) {
    pp = wrap(pp);
    const auto g = evaluate_g(pp);
    if (g.g1 > 6.0 + 1e-9 || g.g2 > 6.0 + 1e-9) return;
    if (g.g0 < best_value) {
      best_value = g.g0;
      best_point = pp;
      have = true;
    }
  };
  for (const auto& start : candidates) {
    for (int active : {1, 2}) {
      PhasePoint pp = start;
      auto system = [active](const PhasePoint& q) {
        const auto g = evaluate_g(q);
        return std::array<double, 2>{(active == 1 ? g.g1 : g.g2) - 6.0, lagrange_determinant(q, active)};
      };
      if (newton(system, pp, options.newton_tol)) consider(pp);
    }
    PhasePoint pp = start;
    if (newton([](const PhasePoint& q) { return gradient_of(q, 0); }, pp, options.newton_tol)) consider(pp);
    ++out.candidates_refined;
  }

  if (have && best_value <= out.grid_best + 1e-12) {
    out.refined = true;
    out.argmin = best_point;
  } else {
    out.refined = false;
    out.argmin = {feasible.front().i * step, feasible.front().j * step};
    out.uncertainty = 8.0 * step;  // |grad g0| <= 8
  }

  auto g = evaluate_g(out.argmin);
  const bool g1_active = std::abs(g.g1 - 6.0) <= 1e-7;
  const bool g2_active = std::abs(g.g2 - 6.0) <= 1e-7;
  if (g1_active && g2_active) {
    out.optimum_case = OptimumCase::both_active;
  } else if (g1_active || g2_active) {
    out.optimum_case = OptimumCase::one_active;
    if (g2_active) {
      out.argmin = out.argmin.mirrored();
      g = evaluate_g(out.argmin);
    }
    out.active = 1;
  } else {
    out.optimum_case = OptimumCase::interior;
  }
  out.g = g;
  out.value = g.g0;
  out.lagrange = lagrange_residual(out.argmin);
  return out;
}

double closed_form_c() { return 1.5 - 1.5 * std::sqrt(16.0 * std::sqrt(6.0) - 39.0); }

double s_square_cap(double c) {
  if (!(c > 0.0 && c <= 3.0)) throw std::invalid_argument("s_square_cap needs 0 < c <= 3");
  return c * c + (6.0 - c) * (6.0 - c) + 9.0;
}

bool SBoundChain::ok() const {
  return c_above_0843 && routes_agree && lagrange_ok && case_ok && cap_below_37 && k_cap_below_intermediate &&
         intermediate_below_threshold && torus_ratio == 36;
}

SBoundChain prove_s_bounds(const G0MinimizeOptions& options) {
  SBoundChain chain;
  chain.c_closed_form = closed_form_c();
  chain.optimum = minimize_g0(options);
  chain.c_numeric = chain.optimum.value;
  chain.s_square_cap = s_square_cap(chain.c_closed_form);
  chain.k_cap = (chain.s_square_cap - 54.0) / 486.0;
  chain.margin = chain.threshold - chain.k_cap;
  chain.chain_margin = chain.threshold - chain.intermediate;
  chain.torus_ratio = torus_witness_ratio(6).ratio;
  for (double r : chain.optimum.lagrange) chain.max_lagrange_residual = std::max(chain.max_lagrange_residual, std::abs(r));

  chain.c_above_0843 = chain.c_closed_form > 0.843 && chain.c_numeric > 0.843;
  chain.routes_agree = chain.optimum.refined && std::abs(chain.c_numeric - chain.c_closed_form) < 1e-6;
  chain.lagrange_ok = chain.max_lagrange_residual < 1e-8;
  chain.case_ok = chain.optimum.optimum_case == OptimumCase::one_active && chain.optimum.max_g1_plus_g2 <= 9.0 + 1e-9;
  chain.cap_below_37 = chain.s_square_cap < 37.0;
  chain.k_cap_below_intermediate = chain.k_cap < chain.intermediate;
  chain.intermediate_below_threshold = chain.intermediate < chain.threshold;
  return chain;
}

Certificate build_certificate(double a_phase, double b_phase, const CertificateOptions& options) {
  return build_certificate(a_phase, b_phase, prove_s_bounds(), options);
}

Certificate build_certificate(double a_phase, double b_phase, const SBoundChain& chain,
                              const CertificateOptions& options) {
  Certificate cert;
  cert.a_phase = a_phase;
  cert.b_phase = b_phase;
  cert.params = FourierFamilyParams::from_phases(a_phase, b_phase);
  cert.chain = chain;
  if (!chain.ok()) cert.failures.push_back("(a,b)-independent inequality chain failed");

  const auto H = fourier_family(cert.params);
  cert.hadamard_residual = is_complex_hadamard(H.matrix()).max_residual();
  for (std::size_t j = 0; j < 6; ++j) {
    cert.k_normalization +=
        witness_K_fab(TorusVector(std::vector<Complex>(H.column(j).begin(), H.column(j).end())), cert.params);
  }
  if (std::abs(cert.k_normalization - Complex{1.0, 0.0}) > 1e-12) cert.failures.push_back("sum of K over columns != 1");
  cert.k_support = k_support_check(cert.params);
  if (!cert.k_support.ok) cert.failures.push_back("K has monomials outside the support of h");

  cert.samples_requested = options.n_samples;
  cert.worst_sample_K = std::numeric_limits<double>::quiet_NaN();
  for (int i = 0; i < options.n_samples; ++i) {
    SpotCheck sample;
    sample.seed = options.seed + static_cast<std::uint64_t>(i);
    const auto found = find_unbiased_vector(cert.params, sample.seed, options.search);
    sample.found = found.found;
    sample.search_residual = found.residual;
    sample.z = found.z;
    if (found.found) {
      const TorusVector z(found.z);
      const auto consistency = k_consistency(z, cert.params);
      sample.K = consistency.K;
      sample.s = consistency.s;
      sample.k_from_s = consistency.k_from_s;
      sample.consistent = consistency.consistent && std::abs(sample.K.imag()) < 1e-9;
      sample.below_cap = sample.K.real() <= chain.k_cap + 1e-9 && sample.K.real() < chain.threshold;
      ++cert.samples_found;
      if (std::isnan(cert.worst_sample_K) || sample.K.real() > cert.worst_sample_K) cert.worst_sample_K = sample.K.real();
      if (!sample.consistent) cert.failures.push_back("sample " + std::to_string(i) + ": K identity check failed");
      if (!sample.below_cap) cert.failures.push_back("sample " + std::to_string(i) + ": K above cap");
    }
    cert.samples.push_back(std::move(sample));
  }
  cert.samples_complete = cert.samples_found == cert.samples_requested;
  cert.verdict = cert.failures.empty();
  return cert;
}

std::string render_text(const Certificate& cert) {
  const auto& ch = cert.chain;
  std::ostringstream out;
  out << std::setprecision(12);
  auto mark = [](bool ok) { return ok ? "[ok]  " : "[FAIL]"; };
  out << "Non-extendability certificate for F^T(a,b), a = exp(i*" << cert.a_phase << "), b = exp(i*" << cert.b_phase
      << ")\n\n";
  out << "0. F(a,b) extends to a full MUH system iff its transpose does; work with F^T(a,b).\n";
  out << "   Hadamard residual of the six columns: " << cert.hadamard_residual << "\n";
  out << "1. " << mark(ch.torus_ratio == 36) << " witness h(z) = |sum z|^2 (|sum z|^2 - 6) on T^6: h(1)/hhat(0) = "
      << ch.torus_ratio << " = m, pinned k = 6 columns, threshold -1/(m-k) = " << ch.threshold << "\n";
  out << "2. " << mark(std::abs(cert.k_normalization - Complex{1.0, 0.0}) <= 1e-12)
      << " sum_j K(b_j) = " << cert.k_normalization.real() << " + " << cert.k_normalization.imag() << "i\n";
  out << "   " << mark(cert.k_support.ok) << " K: " << cert.k_support.monomials
      << " monomials z_i z_j conj(z_k z_l), none outside supp(h-hat), constant term " << cert.k_support.constant_term
      << "\n";
  out << "3. For z unbiased to all columns: K(z) = (s0^2 + s1^2 + s2^2 - 54)/486 with s0 + s1 + s2 = 9, 0 <= s_j <= 6.\n";
  out << "4. min g0 = |<f0,u>|^2 subject to g1, g2 <= 6:\n";
  out << "   " << mark(ch.routes_agree) << " numeric c = " << ch.c_numeric << ", closed form c = " << ch.c_closed_form
      << ", difference " << std::abs(ch.c_numeric - ch.c_closed_form) << "\n";
  out << "   " << mark(ch.case_ok) << " optimum: " << to_string(ch.optimum.optimum_case)
      << " (g1 = " << ch.optimum.g.g1 << ", g2 = " << ch.optimum.g.g2
      << "); both active impossible since max g1 + g2 = " << ch.optimum.max_g1_plus_g2 << " <= 9\n";
  out << "   " << mark(ch.lagrange_ok) << " Lagrange system residuals at argmin (alpha = " << ch.optimum.argmin.alpha
      << ", beta = " << ch.optimum.argmin.beta << "): max " << ch.max_lagrange_residual << "\n";
  out << "   " << mark(ch.c_above_0843) << " c > 0.843\n";
  out << "5. c <= s_j <= 6 - c for every j, hence\n";
  out << "   " << mark(ch.cap_below_37) << " s0^2 + s1^2 + s2^2 <= c^2 + (6-c)^2 + 9 = " << ch.s_square_cap << " < 37\n";
  out << "6. " << mark(ch.k_cap_below_intermediate && ch.intermediate_below_threshold) << " K(z) <= " << ch.k_cap
      << " < -17/486 = " << ch.intermediate << " < -1/30 = " << ch.threshold << "\n";
  out << "   margin -1/30 - K cap = " << ch.margin << ", chain slack 17/486 - 1/30 = " << ch.chain_margin << "\n";
  out << "7. spot checks (corroboration only): " << cert.samples_found << "/" << cert.samples_requested
      << " unbiased vectors found" << (cert.samples_complete ? "" : " (incomplete)") << "\n";
  for (std::size_t i = 0; i < cert.samples.size(); ++i) {
    const auto& s = cert.samples[i];
    if (!s.found) {
      out << "   sample " << i << ": not found (best residual " << s.search_residual << ")\n";
      continue;
    }
    out << "   sample " << i << ": " << mark(s.consistent && s.below_cap) << " K(z) = " << s.K.real()
        << ", s = (" << s.s.s0 << ", " << s.s.s1 << ", " << s.s.s2 << ")\n";
  }
  out << "\nVerdict: " << (cert.verdict ? "F^T(a,b) cannot be extended to a full system of MUHs" : "NOT CERTIFIED")
      << "\n";
  for (const auto& f : cert.failures) out << "  failure: " << f << "\n";
  return out.str();
}

std::vector<SweepRow> sweep_certificates(int grid, const CertificateOptions& options, int jobs) {
  if (grid < 1) throw std::invalid_argument("sweep grid must be positive");
  const auto chain = prove_s_bounds();
  const std::size_t total = static_cast<std::size_t>(grid) * static_cast<std::size_t>(grid);
  std::vector<SweepRow> rows(total);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t idx = next++; idx < total; idx = next++) {
      const double a = 2.0 * std::numbers::pi * static_cast<double>(idx / grid) / grid;
      const double b = 2.0 * std::numbers::pi * static_cast<double>(idx % grid) / grid;
      const auto cert = build_certificate(a, b, chain, options);
      rows[idx] = {a, b, cert.verdict, cert.chain.margin, cert.samples_found, cert.worst_sample_K};
    }
  };
  const int threads = std::max(1, jobs);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return rows;
}

}  // namespace lpbound
