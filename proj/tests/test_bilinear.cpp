#include "catch_amalgamated.hpp"

#include <random>

#include "entropylab/bilinear.hpp"
#include "entropylab/error.hpp"
#include "entropylab/random_fun.hpp"
#include "oracles.hpp"

using namespace entropylab;
using Catch::Matchers::WithinAbs;

namespace {

EntropyPair burgers_pair() { return make_pair(ConvexFun::burgers(), ConvexFun::burgers()); }

const DiscreteMeasure kTwoAtoms({{0.0, 0.5}, {1.0, 0.5}});

}  // namespace

TEST_CASE("discrete measures") {
  CHECK(average(kTwoAtoms, [](double u) { return u; }) == 0.5);
  CHECK(average(DiscreteMeasure({{3.0, 1.0}}), [](double u) { return u * u; }) == 9.0);
  CHECK_THAT(average(kTwoAtoms, [](double u) { return u * u * u / 3.0; }), WithinAbs(1.0 / 6.0, 1e-16));
  const DiscreteMeasure merged({{1.0, 0.25}, {0.0, 0.5}, {1.0, 0.25}});
  REQUIRE(merged.atoms().size() == 2);
  CHECK(merged.atoms()[1].weight == 0.5);
  CHECK_THROWS_AS(DiscreteMeasure({{0.0, 0.4}, {1.0, 0.4}}), Error);
  CHECK_THROWS_AS(DiscreteMeasure({{0.0, -0.5}, {1.0, 1.5}}), Error);
  CHECK_THROWS_AS(DiscreteMeasure({}), Error);
}

TEST_CASE("bilinear form examples") {
  const auto p = burgers_pair();
  CHECK(bilinear_form(DiscreteMeasure({{2.5, 1.0}}), p) == 0.0);
  CHECK_THAT(bilinear_form(kTwoAtoms, p), WithinAbs(1.0 / 48.0, 1e-15));
  const auto shifted = make_pair(ConvexFun::burgers().minus_affine(1.0, 5.0), ConvexFun::burgers());
  CHECK_THAT(bilinear_form(kTwoAtoms, shifted), WithinAbs(1.0 / 48.0, 1e-14));
}

TEST_CASE("p_term examples") {
  const auto p = burgers_pair();
  CHECK(p_term(p, 1.7, 1.7) == 0.0);
  CHECK_THAT(p_term(p, 0.0, 1.0), WithinAbs(1.0 / 12.0, 1e-15));
  const auto flat = make_pair(ConvexFun::flat(), ConvexFun::burgers());
  CHECK(p_term(flat, 1.0, 0.0) == 0.0);
}

TEST_CASE("Jensen gaps") {
  const auto p = burgers_pair();
  const auto single = jensen_gaps(DiscreteMeasure({{-1.0, 1.0}}), p);
  CHECK(single.first == 0.0);
  CHECK(single.second == 0.0);
  const auto two = jensen_gaps(kTwoAtoms, p);
  CHECK_THAT(two.first, WithinAbs(0.125, 1e-16));
  CHECK_THAT(two.second, WithinAbs(0.125, 1e-16));
  const auto flat = make_pair(ConvexFun::flat(), ConvexFun::burgers());
  CHECK(jensen_gaps(DiscreteMeasure({{0.2, 0.3}, {0.9, 0.7}}), flat).first == 0.0);
}

TEST_CASE("bilinear form agrees with the definition oracle", "[property]") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> loc(-5.0, 5.0);
  std::uniform_real_distribution<double> wt(0.1, 1.0);
  RandomFunOptions strict;
  strict.strict = true;
  for (int trial = 0; trial < 100; ++trial) {
    const auto pair = make_pair(random_convex_exact(rng), random_convex_exact(rng, strict));
    std::vector<std::pair<double, double>> atoms;
    std::vector<Atom> lib_atoms;
    double total = 0.0;
    for (int k = 0; k < 5; ++k) {
      atoms.push_back({loc(rng), wt(rng)});
      total += atoms.back().second;
    }
    for (auto& a : atoms) {
      a.second /= total;
      lib_atoms.push_back({a.first, a.second});
    }
    // q enters only through the pair; the oracle recomputes everything else.
    const double ref = oracle::bilinear(
        atoms, [&](double u) { return pair.f(u); }, [&](double u) { return pair.eta(u); },
        [&](double u) { return pair.q(u); });
    const DiscreteMeasure m(lib_atoms);
    CHECK_THAT(bilinear_form(m, pair), WithinAbs(ref, 1e-10 * bilinear_parts(m, pair).scale()));
  }
}

TEST_CASE("strict positivity of p_term outside degeneracy intervals", "[property]") {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> pt(-5.0, 5.0);
  RandomFunOptions strict;
  strict.strict = true;
  int tested = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const auto f = random_convex_exact(rng);
    const auto pair = make_pair(f, random_convex_exact(rng, strict));
    const double u = pt(rng);
    const double v = pt(rng);
    const bool degenerate = degeneracy_interval(f, u, Side::Minus).contains(v) ||
                            degeneracy_interval(f, u, Side::Plus).contains(v);
    const double p = p_term(pair, v, u);
    if (degenerate) {
      CHECK_THAT(p, WithinAbs(0.0, 1e-9 * (1.0 + std::abs((v - u) * (pair.q(v) - pair.q(u))))));
    } else {
      CHECK(p > 0.0);
      ++tested;
    }
  }
  CHECK(tested > 500);
}

TEST_CASE("self-test reports no counterexamples", "[property]") {
  const auto r = bilinear_selftest(2000, 5);
  CHECK(r.trials == 2000);
  CHECK(r.quadratic_trials == 200);
  CHECK(r.total_failures() == 0);
  CHECK(r.failures.empty());
}

TEST_CASE("average reports overflow") {
  CHECK_THROWS_MATCHES(average(kTwoAtoms, [](double u) { return u > 0.5 ? 1e308 * 10.0 : 0.0; }), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == ErrorCode::Overflow;
                       }));
}
