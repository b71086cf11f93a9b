#include "lpbound/torus.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace lpbound {

Complex inner(std::span<const Complex> u, std::span<const Complex> w) {
  if (u.size() != w.size()) throw std::invalid_argument("inner product of vectors with different lengths");
  Complex acc{};
  for (std::size_t j = 0; j < u.size(); ++j) acc += u[j] * std::conj(w[j]);
  return acc;
}

ComplexMatrix ComplexMatrix::from_columns(const std::vector<std::vector<Complex>>& columns) {
  if (columns.empty()) throw std::invalid_argument("matrix needs at least one column");
  ComplexMatrix m(columns.front().size(), columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != m.rows()) throw std::invalid_argument("ragged matrix columns");
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) = columns[j][i];
  }
  return m;
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

HadamardCheck is_complex_hadamard(const ComplexMatrix& m, double tol) {
  HadamardCheck check;
  if (m.rows() != m.cols()) return check;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
      check.max_modulus_error = std::max(check.max_modulus_error, std::abs(std::abs(m(i, j)) - 1.0));
    }
    for (std::size_t k = j + 1; k < m.cols(); ++k) {
      check.max_orthogonality_error = std::max(check.max_orthogonality_error, std::abs(inner(m.column(j), m.column(k))));
    }
  }
  check.ok = check.max_residual() < tol;
  return check;
}

HadamardMatrix HadamardMatrix::checked(ComplexMatrix m, double tol) {
  const auto check = is_complex_hadamard(m, tol);
  if (!check.ok) {
    throw std::invalid_argument("not a complex Hadamard matrix (residual " + std::to_string(check.max_residual()) + ")");
  }
  return HadamardMatrix(std::move(m));
}

TorusVector::TorusVector(std::vector<Complex> entries) : entries_(std::move(entries)) {
  for (const auto& e : entries_) {
    if (std::abs(std::abs(e) - 1.0) >= 1e-12) throw std::invalid_argument("torus vector entry is not unimodular");
  }
}

TorusVector TorusVector::from_phases(std::span<const double> phases) {
  std::vector<Complex> entries;
  entries.reserve(phases.size());
  for (double t : phases) entries.emplace_back(std::cos(t), std::sin(t));
  return TorusVector(std::move(entries));
}

UnbiasedCheck is_unbiased(std::span<const Complex> u, std::span<const Complex> w, double tol) {
  UnbiasedCheck check;
  check.residual = std::abs(std::norm(inner(u, w)) - static_cast<double>(u.size()));
  check.unbiased = check.residual < tol;
  return check;
}

FourierFamilyParams FourierFamilyParams::from_phases(double a_phase, double b_phase) {
  return {{std::cos(a_phase), std::sin(a_phase)}, {std::cos(b_phase), std::sin(b_phase)}};
}

void FourierFamilyParams::validate() const {
  if (std::abs(std::abs(a) - 1.0) > 1e-12 || std::abs(std::abs(b) - 1.0) > 1e-12) {
    throw std::invalid_argument("Fourier family parameters must be unimodular");
  }
}

const std::array<std::array<Complex, 3>, 3>& fourier3_basis() {
  static const std::array<std::array<Complex, 3>, 3> basis = [] {
    const Complex w{-0.5, std::numbers::sqrt3 / 2.0};
    const Complex w2 = std::conj(w);
    const Complex one{1.0, 0.0};
    return std::array<std::array<Complex, 3>, 3>{{{one, one, one}, {one, w, w2}, {one, w2, w}}};
  }();
  return basis;
}

namespace {

std::array<Complex, 3> phases_of(const FourierFamilyParams& p) { return {Complex{1.0, 0.0}, p.a, p.b}; }

}  // namespace

HadamardMatrix fourier_family(const FourierFamilyParams& p) {
  p.validate();
  const auto& f = fourier3_basis();
  const auto phi = phases_of(p);
  std::vector<std::vector<Complex>> columns;
  for (std::size_t j = 0; j < 3; ++j) {
    for (double sign : {1.0, -1.0}) {
      std::vector<Complex> col(6);
      for (std::size_t i = 0; i < 3; ++i) {
        col[i] = f[j][i];
        col[3 + i] = sign * phi[j] * f[j][i];
      }
      columns.push_back(std::move(col));
    }
  }
  return HadamardMatrix::checked(ComplexMatrix::from_columns(columns));
}

double witness_h_torus(std::span<const Complex> z) {
  Complex sum{};
  for (const auto& v : z) sum += v;
  const double s = std::norm(sum);
  return s * (s - static_cast<double>(z.size()));
}

TorusExpansion torus_h_expansion(int n) {
  if (n < 1) throw std::invalid_argument("torus dimension must be positive");
  TorusExpansion expansion;
  std::vector<int> key(static_cast<std::size_t>(n));
  // |sum z|^4 = sum_{j,k,l,m} z_j conj(z_k) z_l conj(z_m)
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      for (int l = 0; l < n; ++l) {
        for (int m = 0; m < n; ++m) {
          std::fill(key.begin(), key.end(), 0);
          ++key[j];
          --key[k];
          ++key[l];
          --key[m];
          expansion[key] += 1;
        }
      }
    }
  }
  // -n |sum z|^2 = -n sum_{j,k} z_j conj(z_k)
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      std::fill(key.begin(), key.end(), 0);
      ++key[j];
      --key[k];
      expansion[key] -= n;
    }
  }
  for (auto it = expansion.begin(); it != expansion.end();) {
    it = it->second == 0 ? expansion.erase(it) : std::next(it);
  }
  return expansion;
}

TorusRatio torus_witness_ratio(int n) {
  if (n < 2) throw std::invalid_argument("torus witness ratio needs n >= 2");
  TorusRatio r;
  r.n = n;
  const auto expansion = torus_h_expansion(n);
  const std::vector<int> zero(static_cast<std::size_t>(n), 0);
  r.nonnegative_spectrum = true;
  for (const auto& [key, coefficient] : expansion) {
    r.h_at_one += coefficient;  // every monomial is 1 at z = (1,...,1)
    if (key == zero) r.hhat_zero = coefficient;
    if (coefficient < 0) r.nonnegative_spectrum = false;
  }
  r.support_size = expansion.size();
  r.exact = r.hhat_zero != 0 && r.h_at_one % r.hhat_zero == 0;
  r.ratio = r.hhat_zero != 0 ? r.h_at_one / r.hhat_zero : 0;
  return r;
}

Complex witness_K_fab(const TorusVector& z, const FourierFamilyParams& p) {
  if (z.size() != 6) throw std::invalid_argument("K is defined on T^6");
  const auto& f = fourier3_basis();
  const auto phi = phases_of(p);
  Complex acc{};
  for (std::size_t j = 0; j < 3; ++j) {
    std::array<Complex, 3> shifted{};
    for (std::size_t i = 0; i < 3; ++i) shifted[i] = phi[j] * f[j][i];
    const Complex term = inner(z.upper(), f[j]) * inner(shifted, z.lower());
    acc += term * term;
  }
  return acc / 486.0;
}

std::map<std::vector<int>, Complex> k_fab_expansion(const FourierFamilyParams& p) {
  const auto& f = fourier3_basis();
  const auto phi = phases_of(p);
  std::map<std::vector<int>, Complex> expansion;
  std::vector<int> key(6);
  // (<z_up,f><phi f,z_down>) = sum_{i,l} z_i conj(z_{3+l}) conj(f_i) phi f_l
  for (std::size_t j = 0; j < 3; ++j) {
    for (int i = 0; i < 3; ++i) {
      for (int l = 0; l < 3; ++l) {
        for (int i2 = 0; i2 < 3; ++i2) {
          for (int l2 = 0; l2 < 3; ++l2) {
            std::fill(key.begin(), key.end(), 0);
            ++key[i];
            ++key[i2];
            --key[3 + l];
            --key[3 + l2];
            const Complex c = std::conj(f[j][i]) * phi[j] * f[j][l] * std::conj(f[j][i2]) * phi[j] * f[j][l2];
            expansion[key] += c / 486.0;
          }
        }
      }
    }
  }
  return expansion;
}

KSupportCheck k_support_check(const FourierFamilyParams& p, double tol) {
  KSupportCheck check;
  const auto h = torus_h_expansion(6);
  const std::vector<int> zero(6, 0);
  for (const auto& [key, coefficient] : k_fab_expansion(p)) {
    if (std::abs(coefficient) <= tol) continue;
    ++check.monomials;
    if (key == zero) check.constant_term = std::abs(coefficient);
    const auto it = h.find(key);
    if (it == h.end() || it->second <= 0) ++check.outside_h_support;
  }
  check.ok = check.outside_h_support == 0 && check.constant_term <= tol;
  return check;
}

SpectralTriple spectral_s(std::span<const Complex> z_up) {
  if (z_up.size() != 3) throw std::invalid_argument("spectral triple needs a 3-vector");
  const auto& f = fourier3_basis();
  return {std::norm(inner(z_up, f[0])), std::norm(inner(z_up, f[1])), std::norm(inner(z_up, f[2]))};
}

double k_from_s(const SpectralTriple& s, double tol) {
  if (std::abs(s.sum() - 9.0) > tol) {
    throw std::invalid_argument("spectral triple must sum to 9 (got " + std::to_string(s.sum()) + ")");
  }
  return (s.square_sum() - 54.0) / 486.0;
}

KConsistency k_consistency(const TorusVector& z, const FourierFamilyParams& p, double tol) {
  if (z.size() != 6) throw std::invalid_argument("K consistency is defined on T^6");
  KConsistency r;
  const auto H = fourier_family(p);
  double worst = 0.0;
  for (std::size_t j = 0; j < 6; ++j) {
    r.unbiased_residuals[j] = is_unbiased(z.entries(), H.column(j), tol).residual;
    worst = std::max(worst, r.unbiased_residuals[j]);
  }
  r.premise_ok = worst < tol;

  const auto& f = fourier3_basis();
  const auto phi = phases_of(p);
  r.s = spectral_s(z.upper());
  const std::array<double, 3> s{r.s.s0, r.s.s1, r.s.s2};
  for (std::size_t j = 0; j < 3; ++j) {
    std::array<Complex, 3> shifted{};
    for (std::size_t i = 0; i < 3; ++i) shifted[i] = phi[j] * f[j][i];
    const Complex up = inner(z.upper(), f[j]);
    const Complex down = inner(z.lower(), shifted);
    r.max_product_real = std::max(r.max_product_real, std::abs((up * std::conj(down)).real()));
    r.max_lower_identity = std::max(r.max_lower_identity, std::abs(std::norm(down) - (6.0 - s[j])));
  }
  r.K = witness_K_fab(z, p);
  r.k_from_s = (r.s.square_sum() - 54.0) / 486.0;
  r.k_difference = std::abs(r.K - Complex{r.k_from_s, 0.0});
  r.consistent = r.premise_ok && r.max_product_real < tol && r.max_lower_identity < tol && r.k_difference < tol &&
                 std::abs(r.s.sum() - 9.0) < tol;
  return r;
}

namespace {

using Residuals = Eigen::Matrix<double, 6, 1>;
using Jacobian = Eigen::Matrix<double, 6, 5>;

struct UnbiasedProblem {
  std::array<std::array<Complex, 6>, 6> conj_columns;

  explicit UnbiasedProblem(const HadamardMatrix& H) {
    for (std::size_t j = 0; j < 6; ++j) {
      for (std::size_t k = 0; k < 6; ++k) conj_columns[j][k] = std::conj(H.column(j)[k]);
    }
  }

  static std::array<Complex, 6> point(const Eigen::Matrix<double, 5, 1>& theta) {
    std::array<Complex, 6> z{Complex{1.0, 0.0}};
    for (int k = 0; k < 5; ++k) z[k + 1] = Complex{std::cos(theta(k)), std::sin(theta(k))};
    return z;
  }

  Residuals residuals(const std::array<Complex, 6>& z, std::array<Complex, 6>* sums = nullptr) const {
    Residuals r;
    for (std::size_t j = 0; j < 6; ++j) {
      Complex s{};
      for (std::size_t k = 0; k < 6; ++k) s += z[k] * conj_columns[j][k];
      if (sums) (*sums)[j] = s;
      r(static_cast<int>(j)) = std::norm(s) - 6.0;
    }
    return r;
  }

  // d|S_j|^2 / d theta_k = -2 Im(conj(S_j) z_k conj(b_jk))
  Jacobian jacobian(const std::array<Complex, 6>& z, const std::array<Complex, 6>& sums) const {
    Jacobian J;
    for (std::size_t j = 0; j < 6; ++j) {
      for (std::size_t k = 1; k < 6; ++k) {
        J(static_cast<int>(j), static_cast<int>(k - 1)) = -2.0 * (std::conj(sums[j]) * z[k] * conj_columns[j][k]).imag();
      }
    }
    return J;
  }
};

}  // namespace

UnbiasedSearchResult find_unbiased_vector(const FourierFamilyParams& p, std::uint64_t seed,
                                          const UnbiasedSearchOptions& options) {
  const UnbiasedProblem problem(fourier_family(p));
  std::mt19937_64 engine(seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);

  UnbiasedSearchResult best;
  best.residual = std::numeric_limits<double>::infinity();
  for (int start = 0; start < options.starts; ++start) {
    Eigen::Matrix<double, 5, 1> theta;
    for (int k = 0; k < 5; ++k) theta(k) = phase(engine);

    std::array<Complex, 6> sums{};
    auto z = UnbiasedProblem::point(theta);
    Residuals r = problem.residuals(z, &sums);
    double cost = r.squaredNorm();
    double mu = 1e-3;
    for (int it = 0; it < options.max_iterations && r.cwiseAbs().maxCoeff() > 1e-14; ++it) {
      const Jacobian J = problem.jacobian(z, sums);
      const Eigen::Matrix<double, 5, 5> A = J.transpose() * J;
      const Eigen::Matrix<double, 5, 1> g = J.transpose() * r;
      bool accepted = false;
      for (int tries = 0; tries < 20 && !accepted; ++tries) {
        Eigen::Matrix<double, 5, 5> damped = A;
        damped.diagonal().array() += mu * (1.0 + A.diagonal().array());
        const Eigen::Matrix<double, 5, 1> step = damped.ldlt().solve(-g);
        const Eigen::Matrix<double, 5, 1> trial = theta + step;
        std::array<Complex, 6> trial_sums{};
        const auto trial_z = UnbiasedProblem::point(trial);
        const Residuals trial_r = problem.residuals(trial_z, &trial_sums);
        const double trial_cost = trial_r.squaredNorm();
        if (trial_cost < cost) {
          theta = trial;
          z = trial_z;
          sums = trial_sums;
          r = trial_r;
          cost = trial_cost;
          mu = std::max(mu / 3.0, 1e-12);
          accepted = true;
        } else {
          mu *= 4.0;
        }
      }
      if (!accepted) break;
    }
    const double residual = r.cwiseAbs().maxCoeff();
    best.starts_used = start + 1;
    if (residual < best.residual) {
      best.residual = residual;
      best.z.assign(z.begin(), z.end());
      best.start = start;
    }
    if (residual < options.target) {
      best.found = true;
      break;
    }
  }
  return best;
}

}  // namespace lpbound
