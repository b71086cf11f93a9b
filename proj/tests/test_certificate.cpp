#include <doctest.h>

#include <cmath>
#include <random>

#include "lpbound/certificate.hpp"
#include "lpbound/io.hpp"
#include "oracles.hpp"

using namespace lpbound;

TEST_CASE("g functions match the definition and sum to 9") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> phase(-oracle::pi, oracle::pi);
  for (int trial = 0; trial < 200; ++trial) {
    const PhasePoint pp{phase(rng), phase(rng)};
    const auto g = evaluate_g(pp);
    CHECK(g.g0 == doctest::Approx(oracle::g(0, pp.alpha, pp.beta)).epsilon(1e-13));
    CHECK(g.g1 == doctest::Approx(oracle::g(1, pp.alpha, pp.beta)).epsilon(1e-13));
    CHECK(g.g2 == doctest::Approx(oracle::g(2, pp.alpha, pp.beta)).epsilon(1e-13));
    CHECK(std::abs(g.sum() - 9.0) < 1e-12);

    const auto m = evaluate_g(pp.mirrored());
    CHECK(m.g0 == doctest::Approx(g.g0));
    CHECK(m.g1 == doctest::Approx(g.g2));
    CHECK(m.g2 == doctest::Approx(g.g1));
  }
}

TEST_CASE("gradients agree with finite differences") {
  const PhasePoint pp{0.7, -1.9};
  const double h = 1e-6;
  for (int j = 0; j < 3; ++j) {
    const auto grad = g_gradient(pp, j);
    auto gj = [j](const PhasePoint& q) {
      const auto g = evaluate_g(q);
      return j == 0 ? g.g0 : j == 1 ? g.g1 : g.g2;
    };
    CHECK(grad[0] == doctest::Approx((gj({pp.alpha + h, pp.beta}) - gj({pp.alpha - h, pp.beta})) / (2 * h)));
    CHECK(grad[1] == doctest::Approx((gj({pp.alpha, pp.beta + h}) - gj({pp.alpha, pp.beta - h})) / (2 * h)));
  }
}

TEST_CASE("polynomial and trigonometric Lagrange systems agree") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> phase(-oracle::pi, oracle::pi);
  for (int trial = 0; trial < 50; ++trial) {
    const PhasePoint pp{phase(rng), phase(rng)};
    const auto poly = lagrange_residual(pp);
    const auto trig = lagrange_residual_trig(pp, 1);
    for (int i = 0; i < 4; ++i) CHECK(poly[i] == doctest::Approx(trig[i]).epsilon(1e-10));
  }
}

TEST_CASE("minimum of g0") {
  const auto m = minimize_g0();
  REQUIRE(m.refined);
  CHECK(m.value == doctest::Approx(closed_form_c()).epsilon(1e-9));
  CHECK(m.optimum_case == OptimumCase::one_active);
  CHECK(m.active == 1);
  CHECK(m.g.g1 == doctest::Approx(6.0));
  CHECK(m.max_g1_plus_g2 <= 9.0 + 1e-12);
  for (double r : m.lagrange) CHECK(std::abs(r) < 1e-8);

  // Mirrored point with g2 active.
  const auto mirrored = lagrange_residual_trig(m.argmin.mirrored(), 2);
  for (double r : mirrored) CHECK(std::abs(r) < 1e-8);
}

TEST_CASE("closed form of c") {
  const double c = closed_form_c();
  CHECK(c > 0.843);
  // 16 sqrt 6 - 39 cancels about two digits in double precision.
  CHECK(std::abs(c - 0.84301389649825047833) < 1e-13);
  CHECK(std::round(c * 1e6) / 1e6 == doctest::Approx(0.843014).epsilon(1e-12));
  CHECK(std::abs(oracle::grid_min_g0(400) - c) < 1e-2);
  CHECK(oracle::grid_min_g0(400) >= c - 1e-9);
}

TEST_CASE("s-square cap") {
  const double c = closed_form_c();
  const double cap = s_square_cap(c);
  CHECK(cap == doctest::Approx(36.305).epsilon(1e-4));
  CHECK(cap < 37.0);
  CHECK_THROWS_AS(s_square_cap(0.0), std::invalid_argument);
  CHECK_THROWS_AS(s_square_cap(3.5), std::invalid_argument);

  // 0.01 grid over {s : s0 + s1 + s2 = 9, c <= s_j <= 6 - c}.
  double worst = 0.0;
  for (int i = 0; i <= 600; ++i) {
    for (int j = 0; j <= 600; ++j) {
      const double s0 = i / 100.0, s1 = j / 100.0, s2 = 9.0 - s0 - s1;
      if (s0 < c || s1 < c || s2 < c || s0 > 6 - c || s1 > 6 - c || s2 > 6 - c) continue;
      worst = std::max(worst, s0 * s0 + s1 * s1 + s2 * s2);
    }
  }
  CHECK(worst <= cap);
}

TEST_CASE("inequality chain") {
  const auto chain = prove_s_bounds();
  CHECK(chain.ok());
  CHECK(chain.torus_ratio == 36);
  CHECK(chain.k_cap < kIntermediateBound);
  CHECK(kIntermediateBound < kExclusionThreshold);
  CHECK(std::abs(chain.chain_margin - 24.0 / 14580.0) < 1e-12);
  CHECK(chain.margin == doctest::Approx(3.0757652e-3).epsilon(1e-6));
}

TEST_CASE("certificate at a = b = 1") {
  const auto cert = build_certificate(0.0, 0.0);
  CHECK(cert.verdict);
  CHECK(cert.failures.empty());
  CHECK(cert.samples_found == 10);
  CHECK(cert.samples_complete);
  CHECK(cert.worst_sample_K <= cert.chain.k_cap + 1e-9);
  for (const auto& s : cert.samples) CHECK(s.consistent);
  CHECK(render_text(cert).find("cannot be extended") != std::string::npos);
}

TEST_CASE("certificate without samples still decides") {
  CertificateOptions o;
  o.n_samples = 0;
  const auto cert = build_certificate(1.0, 2.0, o);
  CHECK(cert.verdict);
  CHECK(std::isnan(cert.worst_sample_K));
  CHECK(io::to_json(cert)["worst_sample_K"].is_null());
}

TEST_CASE("sweep order does not depend on the thread count") {
  CertificateOptions o;
  o.n_samples = 2;
  const auto one = sweep_certificates(3, o, 1);
  const auto many = sweep_certificates(3, o, 4);
  REQUIRE(one.size() == 9);
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].a_phase == many[i].a_phase);
    CHECK(one[i].b_phase == many[i].b_phase);
    CHECK(one[i].worst_sample_K == many[i].worst_sample_K);
    CHECK(one[i].verdict);
  }
}
