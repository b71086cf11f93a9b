#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "lpbound/group.hpp"

namespace lpbound {

// <u, w> = sum_j u_j conj(w_j).
Complex inner(std::span<const Complex> u, std::span<const Complex> w);

// Column-major dense complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static ComplexMatrix from_columns(const std::vector<std::vector<Complex>>& columns);
  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Complex& operator()(std::size_t i, std::size_t j) { return data_[j * rows_ + i]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[j * rows_ + i]; }
  std::span<const Complex> column(std::size_t j) const { return {data_.data() + j * rows_, rows_}; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> data_;
};

struct HadamardCheck {
  bool ok = false;
  double max_modulus_error = 0.0;       // max ||M_ij| - 1|
  double max_orthogonality_error = 0.0;  // max |<col_j, col_k>|, j != k
  double max_residual() const { return std::max(max_modulus_error, max_orthogonality_error); }
};

HadamardCheck is_complex_hadamard(const ComplexMatrix& m, double tol = kDefaultTol);

// Square matrix with unimodular entries and orthogonal columns.
class HadamardMatrix {
 public:
  // Throws std::invalid_argument when the check fails at `tol`.
  static HadamardMatrix checked(ComplexMatrix m, double tol = kDefaultTol);
  const ComplexMatrix& matrix() const { return m_; }
  std::size_t size() const { return m_.rows(); }
  std::span<const Complex> column(std::size_t j) const { return m_.column(j); }

 private:
  explicit HadamardMatrix(ComplexMatrix m) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

// n unimodular complex numbers.
class TorusVector {
 public:
  // Throws std::invalid_argument if some entry is off the unit circle by more than 1e-12.
  explicit TorusVector(std::vector<Complex> entries);
  static TorusVector from_phases(std::span<const double> phases);

  std::size_t size() const { return entries_.size(); }
  std::span<const Complex> entries() const { return entries_; }
  const Complex& operator[](std::size_t j) const { return entries_[j]; }
  // First / last half; z-up and z-down for n = 6.
  std::span<const Complex> upper() const { return std::span(entries_).first(entries_.size() / 2); }
  std::span<const Complex> lower() const { return std::span(entries_).last(entries_.size() / 2); }

 private:
  std::vector<Complex> entries_;
};

struct UnbiasedCheck {
  bool unbiased = false;
  double residual = 0.0;  // ||<u,w>|^2 - n|
};

UnbiasedCheck is_unbiased(std::span<const Complex> u, std::span<const Complex> w, double tol = kDefaultTol);

struct FourierFamilyParams {
  Complex a{1.0, 0.0};
  Complex b{1.0, 0.0};
  // a = exp(i a_phase), b = exp(i b_phase).
  static FourierFamilyParams from_phases(double a_phase, double b_phase);
  // Throws std::invalid_argument when |a| or |b| differs from 1 by more than 1e-12.
  void validate() const;
};

// Columns f0 = (1,1,1), f1 = (1,w,w^2), f2 = (1,w^2,w) of the 3-point Fourier matrix, w = exp(2 pi i/3).
const std::array<std::array<Complex, 3>, 3>& fourier3_basis();

// The six columns (f0;f0), (f0;-f0), (f1;a f1), (f1;-a f1), (f2;b f2), (f2;-b f2).
HadamardMatrix fourier_family(const FourierFamilyParams& p);

// |sum z|^2 (|sum z|^2 - n).
double witness_h_torus(std::span<const Complex> z);

// Monomial z^e (e in Z^n) -> integer coefficient of h(z) = |sum z|^4 - n |sum z|^2.
using TorusExpansion = std::map<std::vector<int>, std::int64_t>;
TorusExpansion torus_h_expansion(int n);

struct TorusRatio {
  int n = 0;
  std::int64_t h_at_one = 0;   // n^2 (n^2 - n)
  std::int64_t hhat_zero = 0;  // constant coefficient, n^2 - n
  std::int64_t ratio = 0;
  bool exact = false;          // h_at_one divisible by hhat_zero
  bool nonnegative_spectrum = false;
  std::size_t support_size = 0;
};

// Exact integer counting over index quadruples. Throws for n < 2.
TorusRatio torus_witness_ratio(int n);

// K(z) = (1/486) sum_j (<z_up, f_j> <phi_j f_j, z_down>)^2 with phi = (1, a, b).
Complex witness_K_fab(const TorusVector& z, const FourierFamilyParams& p);

// Monomial coefficients of K(z) for n = 6.
std::map<std::vector<int>, Complex> k_fab_expansion(const FourierFamilyParams& p);

struct KSupportCheck {
  bool ok = false;
  std::size_t monomials = 0;
  std::size_t outside_h_support = 0;
  double constant_term = 0.0;  // |coefficient of the constant monomial|
};

// Every monomial of K lies in the support of h (so Khat vanishes on Null) and
// K has no constant term.
KSupportCheck k_support_check(const FourierFamilyParams& p, double tol = 1e-12);

struct SpectralTriple {
  double s0 = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;
  double sum() const { return s0 + s1 + s2; }
  double square_sum() const { return s0 * s0 + s1 * s1 + s2 * s2; }
};

// s_j = |<z_up, f_j>|^2.
SpectralTriple spectral_s(std::span<const Complex> z_up);

// (s0^2 + s1^2 + s2^2 - 54) / 486. Throws std::invalid_argument when the
// triple does not sum to 9 within tol.
double k_from_s(const SpectralTriple& s, double tol = kDefaultTol);

struct KConsistency {
  bool premise_ok = false;
  std::array<double, 6> unbiased_residuals{};
  double max_product_real = 0.0;    // (i) max |Re <z_up,f_j> conj(<z_down, phi_j f_j>)|
  double max_lower_identity = 0.0;  // (ii) max ||<z_down, phi_j f_j>|^2 - (6 - s_j)|
  Complex K{};
  double k_from_s = 0.0;
  double k_difference = 0.0;        // (iii) |K - k_from_s|
  SpectralTriple s;
  bool consistent = false;
};

KConsistency k_consistency(const TorusVector& z, const FourierFamilyParams& p, double tol = kDefaultTol);

struct UnbiasedSearchOptions {
  int starts = 64;
  int max_iterations = 200;
  double target = 1e-9;  // max ||<z,b_j>|^2 - 6|
};

struct UnbiasedSearchResult {
  bool found = false;
  std::vector<Complex> z;  // best point found, first entry 1
  double residual = 0.0;
  int start = -1;
  int starts_used = 0;
};

// Levenberg-Marquardt on the six residuals |<z,b_j>|^2 - 6 over five free
// phases, multistarted deterministically from `seed`.
UnbiasedSearchResult find_unbiased_vector(const FourierFamilyParams& p, std::uint64_t seed,
                                          const UnbiasedSearchOptions& options = {});

}  // namespace lpbound
