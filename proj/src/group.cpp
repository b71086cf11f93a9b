#include "lpbound/group.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace lpbound {

namespace {

// exp(2*pi*i * p / q), exact at quarter turns.
Complex root_of_unity(std::size_t p, std::size_t q) {
  p %= q;
  if ((4 * p) % q == 0) {
    switch ((4 * p) / q) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(p) / static_cast<double>(q);
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<int> cyclic_orders) : orders_(std::move(cyclic_orders)) {
  if (orders_.empty()) throw std::invalid_argument("group needs at least one cyclic factor");
  for (int n : orders_) {
    if (n < 1) throw std::invalid_argument("cyclic orders must be >= 1");
    order_ *= static_cast<std::size_t>(n);
    exponent_ = std::lcm(exponent_, static_cast<std::size_t>(n));
  }
  strides_.assign(orders_.size(), 1);
  for (std::size_t i = orders_.size() - 1; i > 0; --i) {
    strides_[i - 1] = strides_[i] * static_cast<std::size_t>(orders_[i]);
  }
}

std::size_t FiniteAbelianGroup::index_of(std::span<const int> coordinates) const {
  if (coordinates.size() != orders_.size()) {
    throw std::invalid_argument("coordinate tuple has " + std::to_string(coordinates.size()) +
                                " entries, group has rank " + std::to_string(orders_.size()));
  }
  std::size_t index = 0;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    if (coordinates[i] < 0 || coordinates[i] >= orders_[i]) {
      throw std::invalid_argument("coordinate " + std::to_string(coordinates[i]) + " out of range for Z_" +
                                  std::to_string(orders_[i]));
    }
    index += static_cast<std::size_t>(coordinates[i]) * strides_[i];
  }
  return index;
}

std::vector<int> FiniteAbelianGroup::coordinates(std::size_t index) const {
  if (index >= order_) throw std::invalid_argument("element index out of range");
  std::vector<int> coords(orders_.size());
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    coords[i] = static_cast<int>(index / strides_[i]);
    index %= strides_[i];
  }
  return coords;
}

std::size_t FiniteAbelianGroup::add(std::size_t x, std::size_t y) const {
  std::size_t index = 0;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    const auto n = static_cast<std::size_t>(orders_[i]);
    const std::size_t xi = (x / strides_[i]) % n;
    const std::size_t yi = (y / strides_[i]) % n;
    index += ((xi + yi) % n) * strides_[i];
  }
  return index;
}

std::size_t FiniteAbelianGroup::negate(std::size_t x) const {
  std::size_t index = 0;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    const auto n = static_cast<std::size_t>(orders_[i]);
    const std::size_t xi = (x / strides_[i]) % n;
    index += ((n - xi) % n) * strides_[i];
  }
  return index;
}

std::size_t FiniteAbelianGroup::subtract(std::size_t x, std::size_t y) const { return add(x, negate(y)); }

Complex FiniteAbelianGroup::character(std::size_t gamma, std::size_t x) const {
  // Phase as an integer multiple of 1/exponent_.
  std::size_t phase = 0;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    const auto n = static_cast<std::size_t>(orders_[i]);
    const std::size_t gi = (gamma / strides_[i]) % n;
    const std::size_t xi = (x / strides_[i]) % n;
    phase = (phase + ((gi * xi) % n) * (exponent_ / n)) % exponent_;
  }
  return root_of_unity(phase, exponent_);
}

std::vector<Complex> FiniteAbelianGroup::character_table() const {
  std::vector<Complex> table(order_ * order_);
  for (std::size_t g = 0; g < order_; ++g) {
    for (std::size_t x = 0; x < order_; ++x) table[g * order_ + x] = character(g, x);
  }
  return table;
}

std::string FiniteAbelianGroup::describe() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < orders_.size(); ++i) out << (i ? " x " : "") << "Z_" << orders_[i];
  return out.str();
}

Complex character_value(const FiniteAbelianGroup& group, const Character& gamma, const GroupElement& x) {
  return group.character(group.index_of(gamma.coordinates), group.index_of(x.coordinates));
}

template <class Tag>
IndexedFunction<Tag>::IndexedFunction(FiniteAbelianGroup group, std::vector<Complex> values)
    : group_(std::move(group)), values_(std::move(values)) {
  if (values_.size() != group_.order()) {
    throw std::invalid_argument("function has " + std::to_string(values_.size()) + " values, group order is " +
                                std::to_string(group_.order()));
  }
}

template <class Tag>
double IndexedFunction<Tag>::max_imag() const {
  double worst = 0.0;
  for (const auto& v : values_) worst = std::max(worst, std::abs(v.imag()));
  return worst;
}

template <class Tag>
bool IndexedFunction<Tag>::is_even(double tol) const {
  for (std::size_t x = 0; x < values_.size(); ++x) {
    if (std::abs(values_[x] - values_[group_.negate(x)]) > tol) return false;
  }
  return true;
}

template class IndexedFunction<PrimalTag>;
template class IndexedFunction<DualTag>;

GroupFunction real_function(const FiniteAbelianGroup& group, std::span<const double> values) {
  return GroupFunction(group, std::vector<Complex>(values.begin(), values.end()));
}

DualFunction fourier_transform(const GroupFunction& f) {
  const auto& group = f.group();
  const std::size_t n = group.order();
  const auto table = group.character_table();
  std::vector<Complex> out(n);
  for (std::size_t g = 0; g < n; ++g) {
    Complex acc{};
    for (std::size_t x = 0; x < n; ++x) acc += f[x] * std::conj(table[g * n + x]);
    out[g] = acc / static_cast<double>(n);
  }
  return DualFunction(group, std::move(out));
}

GroupFunction inverse_transform(const DualFunction& fhat) {
  const auto& group = fhat.group();
  const std::size_t n = group.order();
  const auto table = group.character_table();
  std::vector<Complex> out(n);
  for (std::size_t x = 0; x < n; ++x) {
    Complex acc{};
    for (std::size_t g = 0; g < n; ++g) acc += fhat[g] * table[g * n + x];
    out[x] = acc;
  }
  return GroupFunction(group, std::move(out));
}

ForbiddenSet::ForbiddenSet(FiniteAbelianGroup group, std::vector<std::size_t> members)
    : group_(std::move(group)), members_(std::move(members)), mask_(group_.order(), false) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  for (auto m : members_) {
    if (m >= group_.order()) throw std::invalid_argument("forbidden set member out of range");
    mask_[m] = true;
  }
}

ForbiddenSet ForbiddenSet::from_elements(FiniteAbelianGroup group, const std::vector<GroupElement>& members) {
  std::vector<std::size_t> indices;
  indices.reserve(members.size());
  for (const auto& m : members) indices.push_back(group.index_of(m.coordinates));
  return ForbiddenSet(std::move(group), std::move(indices));
}

ForbiddenSet ForbiddenSet::with_zero(FiniteAbelianGroup group, std::vector<std::size_t> members) {
  members.push_back(0);
  return ForbiddenSet(std::move(group), std::move(members));
}

std::vector<std::size_t> ForbiddenSet::complement() const {
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < group_.order(); ++x) {
    if (!mask_[x]) out.push_back(x);
  }
  return out;
}

ForbiddenSetReport validate_forbidden_set(const ForbiddenSet& forbidden) {
  ForbiddenSetReport report;
  const auto& group = forbidden.group();
  report.contains_zero = forbidden.contains(group.zero());
  for (auto m : forbidden.members()) {
    if (!forbidden.contains(group.negate(m))) report.violations.push_back({group.coordinates(m)});
  }
  report.symmetric = report.violations.empty();
  return report;
}

}  // namespace lpbound
