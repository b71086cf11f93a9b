#pragma once

// Reference computations written from the definitions, sharing no code with
// the library. Slow and simple on purpose.

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using cd = std::complex<double>;
inline constexpr double pi = std::numbers::pi;

struct MiniGroup {
  std::vector<int> orders;

  int size() const {
    int n = 1;
    for (int o : orders) n *= o;
    return n;
  }
  std::vector<int> decode(int idx) const {
    std::vector<int> c(orders.size());
    for (int i = static_cast<int>(orders.size()) - 1; i >= 0; --i) {
      c[i] = idx % orders[i];
      idx /= orders[i];
    }
    return c;
  }
  int encode(const std::vector<int>& c) const {
    int idx = 0;
    for (std::size_t i = 0; i < orders.size(); ++i) idx = idx * orders[i] + ((c[i] % orders[i]) + orders[i]) % orders[i];
    return idx;
  }
  int sub(int x, int y) const {
    auto a = decode(x), b = decode(y);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return encode(a);
  }
  int neg(int x) const { return sub(0, x); }
  cd chi(int gamma, int x) const {
    auto g = decode(gamma), e = decode(x);
    double phase = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) phase += 2.0 * pi * g[i] * e[i] / orders[i];
    return std::polar(1.0, phase);
  }
};

inline std::vector<cd> dft(const MiniGroup& g, const std::vector<cd>& f) {
  const int n = g.size();
  std::vector<cd> out(n);
  for (int gamma = 0; gamma < n; ++gamma) {
    cd acc = 0.0;
    for (int x = 0; x < n; ++x) acc += f[x] * std::conj(g.chi(gamma, x));
    out[gamma] = acc / static_cast<double>(n);
  }
  return out;
}

// Every subset B (as a bitmask) with all differences of distinct members outside `forbidden`.
inline std::vector<std::uint32_t> admissible_sets(const MiniGroup& g, const std::vector<bool>& forbidden) {
  const int n = g.size();
  std::vector<std::uint32_t> out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) {
      if (!(mask >> x & 1u)) continue;
      for (int y = x + 1; y < n && ok; ++y) {
        if ((mask >> y & 1u) && forbidden[g.sub(x, y)]) ok = false;
      }
    }
    if (ok) out.push_back(mask);
  }
  return out;
}

inline int popcount(std::uint32_t m) { return __builtin_popcount(m); }

// Lovasz theta of the n-cycle, the Delsarte value of Z_n with A = {0, 1, -1}.
inline double theta_cycle(int n) {
  if (n % 2 == 0) return n / 2.0;
  const double c = std::cos(pi / n);
  return n * c / (1.0 + c);
}

// Mean of |sum z|^4 - n |sum z|^2 over uniformly random points of the n-torus.
inline double torus_mean_h(int n, long samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * pi);
  double acc = 0.0;
  for (long s = 0; s < samples; ++s) {
    double re = 0.0, im = 0.0;
    for (int k = 0; k < n; ++k) {
      const double t = phase(rng);
      re += std::cos(t);
      im += std::sin(t);
    }
    const double q = re * re + im * im;
    acc += q * q - n * q;
  }
  return acc / static_cast<double>(samples);
}

inline cd omega() { return std::polar(1.0, 2.0 * pi / 3.0); }

// f_j[k] = omega^(j k).
inline cd f(int j, int k) { return std::pow(omega(), j * k); }

// |<f_j, (1, e^{i alpha}, e^{i beta})>|^2 with <u, w> = sum u conj(w).
inline double g(int j, double alpha, double beta) {
  const cd u[3] = {1.0, std::polar(1.0, alpha), std::polar(1.0, beta)};
  cd acc = 0.0;
  for (int k = 0; k < 3; ++k) acc += f(j, k) * std::conj(u[k]);
  return std::norm(acc);
}

// min g0 over an n x n phase grid restricted to g1 <= 6 and g2 <= 6.
inline double grid_min_g0(int n) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double a = 2.0 * pi * i / n, b = 2.0 * pi * j / n;
      if (g(1, a, b) > 6.0 || g(2, a, b) > 6.0) continue;
      best = std::min(best, g(0, a, b));
    }
  }
  return best;
}

// The six columns (f0;f0), (f0;-f0), (f1;a f1), (f1;-a f1), (f2;b f2), (f2;-b f2).
inline std::vector<std::vector<cd>> fab_columns(cd a, cd b) {
  const cd phi[3] = {1.0, a, b};
  std::vector<std::vector<cd>> cols;
  for (int j = 0; j < 3; ++j) {
    for (double sign : {1.0, -1.0}) {
      std::vector<cd> c(6);
      for (int k = 0; k < 3; ++k) {
        c[k] = f(j, k);
        c[k + 3] = sign * phi[j] * f(j, k);
      }
      cols.push_back(c);
    }
  }
  return cols;
}

// K(z) = (1/486) sum_j (<z_up, f_j> <phi_j f_j, z_down>)^2.
inline cd K(const std::vector<cd>& z, cd a, cd b) {
  const cd phi[3] = {1.0, a, b};
  cd total = 0.0;
  for (int j = 0; j < 3; ++j) {
    cd up = 0.0, down = 0.0;
    for (int k = 0; k < 3; ++k) {
      up += z[k] * std::conj(f(j, k));
      down += phi[j] * f(j, k) * std::conj(z[k + 3]);
    }
    total += (up * down) * (up * down);
  }
  return total / 486.0;
}

}  // namespace oracle
