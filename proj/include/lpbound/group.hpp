#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace lpbound {

using Complex = std::complex<double>;

// Absolute tolerance used for "real", "nonnegative" and "zero" judgements
// unless a call overrides it.
inline constexpr double kDefaultTol = 1e-9;

// A product of cyclic groups Z_{n1} x ... x Z_{nk}.
//
// Elements and characters share the coordinate space {(x1..xk) : 0 <= xi < ni}.
// Both are indexed in mixed radix with the last coordinate varying fastest;
// this order is used by every file format and report.
class FiniteAbelianGroup {
 public:
  explicit FiniteAbelianGroup(std::vector<int> cyclic_orders);

  const std::vector<int>& cyclic_orders() const { return orders_; }
  std::size_t rank() const { return orders_.size(); }
  std::size_t order() const { return order_; }

  std::size_t index_of(std::span<const int> coordinates) const;
  std::vector<int> coordinates(std::size_t index) const;

  std::size_t zero() const { return 0; }
  std::size_t add(std::size_t x, std::size_t y) const;
  std::size_t subtract(std::size_t x, std::size_t y) const;
  std::size_t negate(std::size_t x) const;

  // gamma(x) for character and element given by canonical index.
  Complex character(std::size_t gamma, std::size_t x) const;

  // Full |G| x |G| table, row = character, column = element.
  std::vector<Complex> character_table() const;

  std::string describe() const;

  bool operator==(const FiniteAbelianGroup& other) const { return orders_ == other.orders_; }

 private:
  std::vector<int> orders_;
  std::vector<std::size_t> strides_;
  std::size_t order_ = 1;
  std::size_t exponent_ = 1;  // lcm of the cyclic orders
};

struct GroupElement {
  std::vector<int> coordinates;
  bool operator==(const GroupElement&) const = default;
};

struct Character {
  std::vector<int> coordinates;
  bool operator==(const Character&) const = default;
};

// exp(2*pi*i * sum_i gamma_i x_i / n_i). Throws std::invalid_argument on
// coordinates outside the group.
Complex character_value(const FiniteAbelianGroup& group, const Character& gamma, const GroupElement& x);

// Values indexed by the canonical order of a group. The tag separates
// functions on G from functions on the dual group.
template <class Tag>
class IndexedFunction {
 public:
  IndexedFunction(FiniteAbelianGroup group, std::vector<Complex> values);

  const FiniteAbelianGroup& group() const { return group_; }
  const std::vector<Complex>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  const Complex& operator[](std::size_t index) const { return values_[index]; }

  double max_imag() const;
  bool is_real(double tol = kDefaultTol) const { return max_imag() <= tol; }
  bool is_even(double tol = kDefaultTol) const;

 private:
  FiniteAbelianGroup group_;
  std::vector<Complex> values_;
};

struct PrimalTag;
struct DualTag;
using GroupFunction = IndexedFunction<PrimalTag>;
using DualFunction = IndexedFunction<DualTag>;

GroupFunction real_function(const FiniteAbelianGroup& group, std::span<const double> values);

// fhat(gamma) = (1/|G|) sum_x f(x) conj(gamma(x)). Direct O(|G|^2) summation.
DualFunction fourier_transform(const GroupFunction& f);

// f(x) = sum_gamma fhat(gamma) gamma(x).
GroupFunction inverse_transform(const DualFunction& fhat);

// A subset of G given by canonical indices (sorted, unique).
class ForbiddenSet {
 public:
  ForbiddenSet(FiniteAbelianGroup group, std::vector<std::size_t> members);
  static ForbiddenSet from_elements(FiniteAbelianGroup group, const std::vector<GroupElement>& members);
  // Adds 0 to the given members.
  static ForbiddenSet with_zero(FiniteAbelianGroup group, std::vector<std::size_t> members);

  const FiniteAbelianGroup& group() const { return group_; }
  const std::vector<std::size_t>& members() const { return members_; }
  bool contains(std::size_t x) const { return mask_[x]; }
  // Sorted indices of A^c.
  std::vector<std::size_t> complement() const;

 private:
  FiniteAbelianGroup group_;
  std::vector<std::size_t> members_;
  std::vector<bool> mask_;
};

struct ForbiddenSetReport {
  bool contains_zero = false;
  bool symmetric = false;
  // Members x with -x missing from the set.
  std::vector<GroupElement> violations;
  bool valid() const { return contains_zero && symmetric; }
};

ForbiddenSetReport validate_forbidden_set(const ForbiddenSet& forbidden);

}  // namespace lpbound
