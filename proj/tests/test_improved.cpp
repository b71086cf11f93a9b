#include <doctest.h>

#include <cmath>
#include <random>

#include "lpbound/improved.hpp"

using namespace lpbound;

namespace {

struct Instance {
  ForbiddenSet A;
  DelsarteWitness w;
};

Instance z6_cycle() {
  auto A = ForbiddenSet::with_zero(FiniteAbelianGroup({6}), {1, 5});
  auto w = optimal_witness(A).witness;
  return {A, w};
}

}  // namespace

TEST_CASE("synthesized witness on Z6 improves the bound") {
  const auto [A, w] = z6_cycle();
  CHECK(delsarte_bound(w) == doctest::Approx(3.0));
  const std::vector<std::size_t> C{0, 3};
  const auto sw = synthesize_second_witness(w, C);
  const auto check = verify_second_witness(w, sw.K, C);
  REQUIRE(check.ok());
  CHECK(check.quality > 0.0);
  const auto b = improved_bound(w, sw);
  CHECK(b.improved);
  CHECK(b.value < b.delsarte - 1e-6);
  // Largest admissible set inside C = {0, 3} has 2 elements.
  CHECK(b.value >= 2.0 - 1e-9);

  const auto audit = audit_improved_chain(w, sw, {0, 3});
  CHECK(audit.pairing_identity_holds);
  CHECK(audit.cauchy_schwarz_holds);
  CHECK(audit.lower_holds);
}

TEST_CASE("single location on Z4") {
  auto A = ForbiddenSet::with_zero(FiniteAbelianGroup({4}), {1, 3});
  const auto w = optimal_witness(A).witness;
  const auto sw = synthesize_second_witness(w, {0});
  const auto check = verify_second_witness(w, sw.K, {0});
  REQUIRE(check.ok());
  CHECK(check.quality > 0.0);
  CHECK(improved_bound(w, sw).value <= delsarte_bound(w) + 1e-12);
}

TEST_CASE("C = G admits no second witness") {
  const auto [A, w] = z6_cycle();
  std::vector<std::size_t> all{0, 1, 2, 3, 4, 5};
  try {
    synthesize_second_witness(w, all);
    FAIL("expected InfeasibleWitness");
  } catch (const InfeasibleWitness& e) {
    CHECK_FALSE(e.blocking().empty());
    CHECK(e.blocking().front() == 0);
  }
}

TEST_CASE("an extremal set inside C blocks synthesis") {
  const auto [A, w] = z6_cycle();
  CHECK_THROWS_AS(synthesize_second_witness(w, {0, 2, 4}), InfeasibleWitness);
}

TEST_CASE("synthesized witness has minimal quality") {
  const auto [A, w] = z6_cycle();
  const std::vector<std::size_t> C{0, 3};
  const auto sw = synthesize_second_witness(w, C);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    // Another feasible K, pinned to 1 on C and to random values elsewhere.
    const std::size_t extra = 1 + trial % 2;
    const auto other = min_quality_interpolant(w, {0, 3, extra}, {1.0, 1.0, Complex(u(rng), 0.0)});
    const auto other_hat = fourier_transform(other);
    for (double t : {1e-3, -1e-3}) {
      std::vector<Complex> moved(6);
      for (std::size_t i = 0; i < 6; ++i) moved[i] = sw.Khat[i] + t * (other_hat[i] - sw.Khat[i]);
      CHECK(witness_quality(w, DualFunction(sw.Khat.group(), moved)) >= sw.quality - 1e-12);
    }
  }
}

TEST_CASE("second witness violations") {
  const auto [A, w] = z6_cycle();
  FiniteAbelianGroup g({6});
  // Constant K has nonzero mean.
  auto check = verify_second_witness(w, GroupFunction(g, std::vector<Complex>(6, 1.0)), {0});
  CHECK_FALSE(check.ok());
  bool mean = false;
  for (const auto& v : check.violations) mean |= v.kind == SecondWitnessViolation::Kind::nonzero_mean;
  CHECK(mean);

  // K below one on C.
  std::vector<Complex> k(6, 0.0);
  check = verify_second_witness(w, GroupFunction(g, k), {0});
  CHECK_FALSE(check.ok());
}

TEST_CASE("large quality approaches the Delsarte bound") {
  const auto [A, w] = z6_cycle();
  auto sw = synthesize_second_witness(w, {0, 3});
  sw.quality = 1e12;
  const auto b = improved_bound(w, sw);
  CHECK(b.value == doctest::Approx(b.delsarte).epsilon(1e-9));
  CHECK(b.value <= b.delsarte);
}

TEST_CASE("corollary on the Z6 cycle") {
  const auto [A, w] = z6_cycle();
  const std::vector<std::size_t> pinned{0, 3};
  CHECK(extension_candidates(A, pinned).empty());
  const auto K = synthesize_corollary_witness(w, A, pinned);
  const auto v = corollary_check(w, A, pinned, K, 3);
  CHECK(v.excluded);
  CHECK(v.k == 2);
  CHECK(v.threshold == doctest::Approx(-1.0));
  CHECK(std::abs(v.pinned_sum - Complex(1.0)) < 1e-9);
  CHECK(brute_force_max_containing(A, pinned).cardinality < 3);
}

TEST_CASE("corollary stays inconclusive when an extension exists") {
  const auto [A, w] = z6_cycle();
  const std::vector<std::size_t> pinned{0, 2};
  CHECK(extension_candidates(A, pinned) == std::vector<std::size_t>{4});
  const auto K = synthesize_corollary_witness(w, A, pinned);
  const auto v = corollary_check(w, A, pinned, K, 3);
  CHECK_FALSE(v.excluded);
  CHECK_FALSE(v.reasons.empty());
  CHECK(brute_force_max_containing(A, pinned).cardinality == 3);
}

TEST_CASE("corollary preconditions") {
  const auto [A, w] = z6_cycle();
  const auto K = synthesize_corollary_witness(w, A, {0, 3});
  CHECK_THROWS_AS(corollary_check(w, A, {0, 1}, K, 3), std::invalid_argument);
  CHECK_THROWS_AS(corollary_check(w, A, {0, 3}, K, 4), std::invalid_argument);
}
