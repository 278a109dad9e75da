#include "catch_amalgamated.hpp"

#include <random>

#include "entropylab/entropypair.hpp"
#include "entropylab/error.hpp"
#include "entropylab/random_fun.hpp"
#include "oracles.hpp"

using namespace entropylab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

EntropyPair burgers_pair() { return make_pair(ConvexFun::burgers(), ConvexFun::burgers()); }

}  // namespace

TEST_CASE("Burgers entropy flux") {
  const auto p = burgers_pair();
  CHECK(p.exact_q());
  CHECK_THAT(p.q(1.0), WithinAbs(1.0 / 3.0, 1e-15));
  CHECK_THAT(p.q(-2.0), WithinAbs(-8.0 / 3.0, 1e-15));
  CHECK(p.q(0.0) == 0.0);
}

TEST_CASE("make_pair rejects non-strict entropies and non-convex fluxes") {
  CHECK_THROWS_MATCHES(make_pair(ConvexFun::burgers(), ConvexFun::absolute()), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == ErrorCode::NonStrictEntropy;
                       }));
  const auto bad = ConvexFun::quadratic_pieces({0.0}, {{1.0, 0.0, 0.0}, {-1.0, 0.0, 0.0}});
  CHECK_THROWS_MATCHES(make_pair(bad, ConvexFun::burgers()), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == ErrorCode::NonConvexFlux;
                       }));
}

TEST_CASE("Kruzkov pairs") {
  const auto k0 = kruzkov_pair(ConvexFun::burgers(), 0.0);
  CHECK(k0.q(2.0) == 2.0);
  const auto k1 = kruzkov_pair(ConvexFun::burgers(), 1.0);
  CHECK(k1.q(0.0) == 0.5);
  for (double k : {-1.0, 0.3, 2.0}) {
    const auto kp = kruzkov_pair(ConvexFun::flat(), k);
    CHECK(kp.eta(k) == 0.0);
    CHECK(kp.q(k) == 0.0);
  }
}

TEST_CASE("quadratic form and q ratio") {
  const auto p = burgers_pair();
  CHECK_THAT(quadratic_form(p, 1.0), WithinAbs(1.0 / 12.0, 1e-15));
  CHECK(quadratic_form(p, 0.0) == 0.0);
  CHECK_THAT(quadratic_form(p, 2.0), WithinAbs(4.0 / 3.0, 1e-14));
  CHECK_THAT(q_ratio(p, 2.0), WithinAbs(0.5, 1e-15));
  CHECK_THAT(q_ratio(p, -2.0), WithinAbs(0.5, 1e-15));
  CHECK_THROWS_MATCHES(q_ratio(p, 0.0), Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == ErrorCode::ZeroEntropyFlux;
                       }));
}

TEST_CASE("exact q matches Simpson quadrature of eta' f'", "[property]") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> pt(-5.0, 5.0);
  RandomFunOptions strict;
  strict.strict = true;
  int checked = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_convex_exact(rng);
    const auto eta = random_convex_exact(rng, strict);
    const auto pair = make_pair(f, eta);
    for (int k = 0; k < 50; ++k) {
      const double u = pt(rng);
      auto kinks = f.breakpoints();
      kinks.insert(kinks.end(), eta.breakpoints().begin(), eta.breakpoints().end());
      const double ref =
          oracle::entropy_flux([&](double x) { return f(x); }, [&](double x) { return eta(x); }, u, kinks);
      CHECK_THAT(pair.q(u), WithinAbs(ref, 1e-9 * (1.0 + std::abs(ref))));
      ++checked;
    }
  }
  CHECK(checked == 1000);
}

TEST_CASE("analytic q matches Simpson quadrature", "[property]") {
  const auto pair = make_pair(ConvexFun::power(2.0), ConvexFun::sublinear(0.5));
  CHECK_FALSE(pair.exact_q());
  for (double u : {-3.0, -0.7, 0.2, 1.5, 4.0}) {
    const double ref = oracle::entropy_flux([&](double x) { return pair.f(x); },
                                            [&](double x) { return pair.eta(x); }, u, {}, 20000);
    CHECK_THAT(pair.q(u), WithinAbs(ref, 1e-6 * (1.0 + std::abs(ref))));
  }
  // f' = u^1.5 and eta' = u for u > 0, so q(2) = 2^3.5 / 3.5.
  const auto closed = make_pair(ConvexFun::power(1.5), ConvexFun::power(1.0));
  CHECK_THAT(closed.q(2.0), WithinRel(std::pow(2.0, 3.5) / 3.5, 1e-9));
}

TEST_CASE("Q equals the P-form at (u, 0) for pairs vanishing at 0", "[property]") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> pt(-5.0, 5.0);
  RandomFunOptions strict;
  strict.strict = true;
  for (int trial = 0; trial < 100; ++trial) {
    // Shift so that f(0) = eta(0) = 0; q(0) = 0 by construction.
    auto f = random_convex_exact(rng);
    auto eta = random_convex_exact(rng, strict);
    f = f.minus_affine(0.0, f(0.0));
    eta = eta.minus_affine(0.0, eta(0.0));
    const auto pair = make_pair(f, eta);
    const double u = pt(rng);
    const double q_form = quadratic_form(pair, u);
    const double p_form = u * (pair.q(u) - pair.q(0.0)) - (f(u) - f(0.0)) * (eta(u) - eta(0.0));
    CHECK_THAT(q_form, WithinAbs(p_form, 1e-10 * (1.0 + std::abs(p_form))));
    CHECK(p_form >= -1e-10 * (1.0 + std::abs(pair.q(u) * u)));
  }
}

TEST_CASE("gamma closed forms") {
  GrowthDescriptor d;
  d.alpha = 2.0;
  d.beta = 1.0;
  CHECK(gamma_closed_form(d).gamma == 1.5);
  for (double a : {0.25, 0.5, 1.0}) {
    for (double b : {1.0, 2.0, 3.0}) {
      GrowthDescriptor e;
      e.alpha = a;
      e.beta = b;
      CHECK(gamma_closed_form(e).gamma == 1.0);
    }
  }
  GrowthDescriptor linear_flux;
  linear_flux.alpha = 0.0;
  linear_flux.alpha_tilde = 0.5;
  linear_flux.beta = 1.0;
  CHECK(gamma_closed_form(linear_flux).gamma == 1.0);
  GrowthDescriptor ex;
  ex.exp_flux = true;
  ex.beta = 0.0;
  CHECK_FALSE(gamma_closed_form(ex).gamma.has_value());
  GrowthDescriptor lg;
  lg.alpha = 2.0;
  lg.beta = 0.0;
  lg.log_entropy = true;
  CHECK(gamma_closed_form(lg).gamma == 3.0);
  GrowthDescriptor linear_entropy;
  linear_entropy.alpha = 2.0;
  linear_entropy.beta = 0.0;
  linear_entropy.beta_tilde = 0.25;
  CHECK(gamma_closed_form(linear_entropy).gamma == (2.0 + 1.0 - 0.25) / (1.0 - 0.25));
  CHECK(gamma_from_lambda(0.5) == 1.0);
  CHECK(gamma_from_lambda(2.5) == 2.5);
}

TEST_CASE("describe reads descriptors from named functions") {
  const auto d = describe(make_pair(ConvexFun::power(2.0), ConvexFun::burgers()));
  CHECK(d.alpha == 2.0);
  CHECK(d.beta == 1.0);
  const auto e = describe(make_pair(ConvexFun::exponential(), ConvexFun::burgers()));
  CHECK(e.exp_flux);
  const auto l = describe(make_pair(ConvexFun::burgers(), ConvexFun::log_entropy()));
  CHECK(l.log_entropy);
}

TEST_CASE("sampled growth evidence") {
  const auto burgers = check_growth_conditions(burgers_pair(), 1.0);
  CHECK(burgers.label == "sampled evidence");
  CHECK(burgers.c_bounded);
  CHECK_THAT(burgers.c_max, WithinRel(burgers.c_min, 1e-9));
  CHECK(burgers.linear_growth);

  const auto power = check_growth_conditions(make_pair(ConvexFun::power(2.0), ConvexFun::burgers()), 1.5);
  CHECK(power.c_bounded);
  CHECK(power.c_max / power.c_min < 10.0);

  const auto fast = check_growth_conditions(make_pair(ConvexFun::exponential(), ConvexFun::burgers()), 3.0);
  CHECK_FALSE(fast.c_bounded);
}
