#include <doctest.h>

#include <cmath>

#include "instances.hpp"
#include "lpbound/delsarte.hpp"
#include "oracles.hpp"

using namespace lpbound;

namespace {

ForbiddenSet cyclic(int n, std::vector<std::size_t> members) {
  return ForbiddenSet::with_zero(FiniteAbelianGroup({n}), std::move(members));
}

int oracle_max(const FiniteAbelianGroup& g, const std::vector<std::size_t>& A) {
  oracle::MiniGroup m{g.cyclic_orders()};
  int best = 0;
  for (auto mask : oracle::admissible_sets(m, instances::mask_of(g, A))) best = std::max(best, oracle::popcount(mask));
  return best;
}

}  // namespace

TEST_CASE("Z5 with A = {0, 1, 4}") {
  const auto A = cyclic(5, {1, 4});
  const auto opt = optimal_witness(A);
  REQUIRE(opt.lp.status == LpStatus::optimal);
  CHECK(opt.bound == doctest::Approx(std::sqrt(5.0)).epsilon(1e-9));
  CHECK(opt.lp.objective_value == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-9));

  const auto check = verify_witness(A, opt.witness.h);
  REQUIRE(check.ok());
  CHECK(delsarte_bound(*check.witness) == doctest::Approx(std::sqrt(5.0)));

  const auto best = brute_force_max(A);
  CHECK(best.cardinality == 2);
  CHECK(best.members == std::vector<std::size_t>{0, 2});
}

TEST_CASE("Z6 with A = {0, 3}") {
  const auto A = cyclic(6, {3});
  const auto best = brute_force_max(A);
  CHECK(best.cardinality == 3);
  CHECK(best.members == std::vector<std::size_t>{0, 1, 2});
  CHECK(optimal_witness(A).bound >= 3.0 - 1e-9);
}

TEST_CASE("Z2 with A = {0}") {
  const auto A = cyclic(2, {});
  CHECK(optimal_witness(A).bound == doctest::Approx(2.0));
  // B = {0, 1} has the single difference 1, outside A.
  CHECK(brute_force_max(A).cardinality == 2);
}

TEST_CASE("trivial group") {
  const auto A = ForbiddenSet::with_zero(FiniteAbelianGroup({1}), {});
  CHECK(optimal_witness(A).bound == doctest::Approx(1.0));
  CHECK(brute_force_max(A).cardinality == 1);
}

TEST_CASE("A = G forces the bound 1") {
  const auto A = cyclic(4, {1, 2, 3});
  CHECK(optimal_witness(A).bound == doctest::Approx(1.0));
}

TEST_CASE("odd and even cycles match the Lovasz theta of the cycle") {
  for (int n = 3; n <= 16; ++n) {
    const auto A = cyclic(n, {1, static_cast<std::size_t>(n - 1)});
    CHECK(optimal_witness(A).bound == doctest::Approx(oracle::theta_cycle(n)).epsilon(1e-9));
  }
}

TEST_CASE("witness violations are reported") {
  FiniteAbelianGroup g({5});
  const auto A = cyclic(5, {1, 4});

  // Positive on the complement.
  std::vector<double> pos{1.0, 0.0, 0.5, 0.5, 0.0};
  auto check = verify_witness(A, real_function(g, pos));
  CHECK_FALSE(check.ok());
  bool found = false;
  for (const auto& v : check.violations) found |= v.kind == WitnessViolation::Kind::positive_on_complement && v.index == 2;
  CHECK(found);

  // Negative Fourier coefficient: h = cos(2 pi x / 5) - 1 has hhat(0) = -1.
  std::vector<double> neg(5);
  for (int x = 0; x < 5; ++x) neg[x] = std::cos(2 * oracle::pi * x / 5) - 1.0;
  check = verify_witness(A, real_function(g, neg));
  CHECK_FALSE(check.ok());

  // Non-real h.
  std::vector<Complex> cplx(5, Complex(0.2, 0.0));
  cplx[1] = {0.0, 1.0};
  check = verify_witness(A, GroupFunction(g, cplx));
  CHECK_FALSE(check.ok());
  CHECK(check.violations.front().kind == WitnessViolation::Kind::non_real);
}

TEST_CASE("zero mean makes the bound undefined") {
  FiniteAbelianGroup g({4});
  const auto A = ForbiddenSet::with_zero(g, {1, 2, 3});
  std::vector<double> h{1.0, 0.0, -1.0, 0.0};  // hhat = (0, 1/2, 0, 1/2)
  const auto check = verify_witness(A, real_function(g, h));
  CHECK_FALSE(check.ok());
  bool undefined = false;
  for (const auto& v : check.violations) undefined |= v.kind == WitnessViolation::Kind::bound_undefined;
  CHECK(undefined);

  DelsarteWitness w{real_function(g, h), fourier_transform(real_function(g, h)), {}, kDefaultTol};
  CHECK_THROWS_AS(delsarte_bound(w), UndefinedBound);
}

TEST_CASE("invalid forbidden sets are rejected") {
  FiniteAbelianGroup g({6});
  std::vector<double> h(6, 0.0);
  h[0] = 1.0;
  CHECK_THROWS_AS(verify_witness(ForbiddenSet::with_zero(g, {2}), real_function(g, h)), std::invalid_argument);
  CHECK_THROWS_AS(verify_witness(ForbiddenSet(g, {1, 5}), real_function(g, h)), std::invalid_argument);
  CHECK_THROWS_AS(verify_witness(ForbiddenSet::with_zero(FiniteAbelianGroup({5}), {}), real_function(g, h)),
                  std::invalid_argument);
}

TEST_CASE("LP bound dominates the exhaustive maximum on groups of order <= 12") {
  int checked = 0;
  for (const auto& orders : instances::groups_up_to(12)) {
    FiniteAbelianGroup g(orders);
    for (const auto& members : instances::symmetric_sets(g)) {
      const ForbiddenSet A(g, members);
      const auto opt = optimal_witness(A);
      REQUIRE(opt.lp.status == LpStatus::optimal);
      const auto best = brute_force_max(A);
      CHECK(best.cardinality == static_cast<std::size_t>(oracle_max(g, members)));
      CHECK(opt.bound >= static_cast<double>(best.cardinality) - 1e-9);
      CHECK(verify_witness(A, opt.witness.h).ok());
      ++checked;
    }
  }
  CHECK(checked > 500);
}

TEST_CASE("bound is invariant under group automorphisms") {
  // x -> 2x on Z_7 and Z_9, x -> 5x on Z_12.
  for (auto [n, u] : {std::pair{7, 2}, {9, 2}, {12, 5}}) {
    FiniteAbelianGroup g({n});
    for (const auto& members : instances::symmetric_sets(g)) {
      std::vector<std::size_t> image;
      for (auto x : members) image.push_back(static_cast<std::size_t>((static_cast<int>(x) * u) % n));
      const double b1 = optimal_witness(ForbiddenSet(g, members)).bound;
      const double b2 = optimal_witness(ForbiddenSet::with_zero(g, image)).bound;
      CHECK(b1 == doctest::Approx(b2).epsilon(1e-9));
    }
  }
  // Swapping the factors of Z2 x Z3.
  FiniteAbelianGroup g23({2, 3}), g32({3, 2});
  for (const auto& members : instances::symmetric_sets(g23)) {
    std::vector<std::size_t> image;
    for (auto x : members) {
      const auto c = g23.coordinates(x);
      image.push_back(g32.index_of(std::vector<int>{c[1], c[0]}));
    }
    CHECK(optimal_witness(ForbiddenSet(g23, members)).bound ==
          doctest::Approx(optimal_witness(ForbiddenSet::with_zero(g32, image)).bound).epsilon(1e-9));
  }
}

TEST_CASE("LP program has one variable per sign orbit") {
  const auto p = delsarte_program(cyclic(6, {1, 5}));
  CHECK(p.orbits.size() == 4);
  CHECK(p.orbits[0] == std::vector<std::size_t>{0});
  CHECK(p.lp.num_variables() == 4);
}

TEST_CASE("proof audit") {
  const auto A = cyclic(5, {1, 4});
  const auto w = optimal_witness(A).witness;
  auto r = audit_proof(w, A, {0, 2});
  REQUIRE(r.audit);
  CHECK(r.audit->spectral_sum == doctest::Approx(r.audit->direct_sum).epsilon(1e-12));
  CHECK(r.audit->lower_holds);
  CHECK(r.audit->upper_holds);
  CHECK(r.audit->differences_valid);

  r = audit_proof(w, A, {0, 1, 2});
  CHECK_FALSE(r.audit->differences_valid);
  CHECK_FALSE(r.audit->violating_pairs.empty());
  CHECK(r.audit->spectral_sum == doctest::Approx(r.audit->direct_sum).epsilon(1e-12));
}

TEST_CASE("brute force guard and pinned search") {
  CHECK_THROWS_AS(brute_force_max(cyclic(25, {1, 24})), std::length_error);
  const auto A = cyclic(6, {1, 5});
  const auto r = brute_force_max_containing(A, {0, 3});
  CHECK(r.cardinality == 2);
  CHECK(brute_force_max_containing(A, {0, 2}).cardinality == 3);
  CHECK_THROWS_AS(brute_force_max_containing(A, {0, 1}), std::invalid_argument);
  CHECK(differences_avoid(A, {0, 2, 4}));
  CHECK_FALSE(differences_avoid(A, {0, 1}));
}
