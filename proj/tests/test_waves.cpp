#include "catch_amalgamated.hpp"

#include <random>

#include "entropylab/bilinear.hpp"
#include "entropylab/error.hpp"
#include "entropylab/random_fun.hpp"
#include "entropylab/waves.hpp"

using namespace entropylab;
using Catch::Matchers::WithinAbs;

namespace {

EntropyPair burgers_pair() { return make_pair(ConvexFun::burgers(), ConvexFun::burgers()); }

bool has_code(const Error& e, ErrorCode c) { return e.code() == c; }

}  // namespace

TEST_CASE("Riemann solutions for Burgers") {
  const auto f = ConvexFun::burgers();
  auto fan = solve_riemann(f, 1.0, 0.0);
  REQUIRE(fan.waves.size() == 1);
  CHECK(fan.waves[0].type == WaveType::Shock);
  CHECK(fan.waves[0].speed_lo == 0.5);
  CHECK(fan.admissible);

  fan = solve_riemann(f, 0.0, 1.0);
  REQUIRE(fan.waves.size() == 1);
  CHECK(fan.waves[0].type == WaveType::Rarefaction);
  CHECK(fan.waves[0].speed_lo == 0.0);
  CHECK(fan.waves[0].speed_hi == 1.0);
  CHECK(sample_fan(fan, 2.0, 1.0) == 0.5);
  CHECK(sample_fan(fan, 1.0, 0.3) == 0.3);

  const auto shock = solve_riemann(f, 1.0, 0.0);
  CHECK(sample_fan(shock, 1.0, 0.25) == 1.0);
  CHECK(sample_fan(shock, 1.0, 0.5) == 0.0);  // right trace on the jump

  const auto constant = solve_riemann(f, 0.7, 0.7);
  CHECK(constant.waves.empty());
  CHECK(sample_fan(constant, 3.0, -10.0) == 0.7);
}

TEST_CASE("composite fan of the flat flux") {
  const auto fan = solve_riemann(ConvexFun::flat(), -1.0, 2.0);
  REQUIRE(fan.waves.size() == 3);
  CHECK(fan.waves[0].type == WaveType::Rarefaction);
  CHECK(fan.waves[0].speed_lo == -1.0);
  CHECK(fan.waves[0].speed_hi == 0.0);
  CHECK(fan.waves[1].type == WaveType::Contact);
  CHECK(fan.waves[1].speed_lo == 0.0);
  CHECK(fan.waves[1].state_left == 0.0);
  CHECK(fan.waves[1].state_right == 1.0);
  CHECK(fan.waves[2].type == WaveType::Rarefaction);
  CHECK(fan.waves[2].speed_hi == 1.0);
  CHECK(sample_fan(fan, 1.0, -0.5) == -0.5);
  CHECK(sample_fan(fan, 1.0, 0.5) == 1.5);
}

TEST_CASE("production rates and classification") {
  const auto p = burgers_pair();
  auto prod = production_rate(p, 1.0, 0.0);
  CHECK(prod.speed == 0.5);
  CHECK_THAT(prod.rate, WithinAbs(-1.0 / 12.0, 1e-15));
  prod = production_rate(p, 0.0, 1.0);
  CHECK_THAT(prod.rate, WithinAbs(1.0 / 12.0, 1e-15));

  const auto flat = make_pair(ConvexFun::flat(), ConvexFun::burgers());
  prod = production_rate(flat, 1.0, 0.0);
  CHECK(prod.speed == 0.0);
  CHECK_THAT(prod.rate, WithinAbs(0.0, 1e-15));

  CHECK(classify(p, 1.0, 0.0).classification == Classification::LaxShock);
  CHECK(classify(p, 0.0, 1.0).classification == Classification::UnderCompressive);
  CHECK(classify(flat, 1.0, 0.0).classification == Classification::Contact);
}

TEST_CASE("under-compressive budget") {
  const auto p = burgers_pair();
  auto b = undercompressive_budget(p, 0.0, 1.0, 1.0);
  CHECK(b.s0 == 0.5);
  CHECK_THAT(b.production, WithinAbs(1.0 / 12.0, 1e-15));
  CHECK(b.satisfies_budget);
  b = undercompressive_budget(p, 0.0, 1.0, 0.1);
  CHECK_FALSE(b.satisfies_budget);
  const auto flat = make_pair(ConvexFun::flat(), ConvexFun::burgers());
  CHECK_THROWS_MATCHES(undercompressive_budget(flat, 0.0, 1.0, 1.0), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return has_code(e, ErrorCode::NotUnderCompressive);
                       }));
  const auto uc = undercompressive_fan(ConvexFun::burgers(), 0.0, 1.0);
  CHECK_FALSE(uc.admissible);
  REQUIRE(uc.waves.size() == 1);
  CHECK(uc.waves[0].speed_lo == 0.5);
}

TEST_CASE("random fans: Rankine-Hugoniot, ordering and traces", "[property]") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> st(-5.0, 5.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto f = random_convex_exact(rng);
    const auto fan = solve_riemann(f, st(rng), st(rng));
    double prev = -kInf;
    for (const auto& w : fan.waves) {
      CHECK(w.speed_lo <= w.speed_hi);
      CHECK(w.speed_lo >= prev);
      prev = w.speed_hi;
      if (!w.is_jump()) continue;
      const double ju = w.state_right - w.state_left;
      const double jf = f(w.state_right) - f(w.state_left);
      CHECK(std::abs(w.speed_lo * ju - jf) <= 1e-12 * (1.0 + std::abs(jf)) * (1.0 + std::abs(ju)));
      if (w.type == WaveType::Shock) {
        CHECK(w.state_right < w.state_left);
      } else {
        // Contacts sit inside an affine stretch of f.
        CHECK(degeneracy_interval(f, w.state_left, Side::Plus).contains(w.state_right));
      }
    }
    CHECK(sample_fan(fan, 1.0, -100.0) == fan.left);
    CHECK(sample_fan(fan, 1.0, 100.0) == fan.right);
  }
}

TEST_CASE("sign equivalence and P-consistency of production rates", "[property]") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> st(-5.0, 5.0);
  RandomFunOptions strict;
  strict.strict = true;
  int tested = 0;
  while (tested < 10000) {
    const auto f = random_convex_exact(rng);
    const auto pair = make_pair(f, random_convex_exact(rng, strict));
    const double um = st(rng);
    const double up = st(rng);
    if (degeneracy_interval(f, up, Side::Minus).contains(um) || degeneracy_interval(f, up, Side::Plus).contains(um)) {
      continue;
    }
    ++tested;
    const auto prod = production_rate(pair, um, up);
    const bool lax = f.derivative(um, Side::Minus) > f.derivative(up, Side::Plus);
    CHECK((prod.rate < 0.0) == lax);
    // With [g] = g(u+) - g(u-): [u] D_t = P(u+, u-) >= 0.
    const double p = p_term(pair, up, um);
    const double scale = 1.0 + std::abs((up - um) * (pair.q(up) - pair.q(um)));
    CHECK_THAT((up - um) * prod.rate, WithinAbs(p, 1e-10 * scale));
    CHECK(p >= 0.0);
  }
}

TEST_CASE("analytic flux fans") {
  const auto f = ConvexFun::power(2.0);
  const auto fan = solve_riemann(f, -1.0, 2.0);
  REQUIRE(fan.waves.size() == 1);
  CHECK(fan.waves[0].type == WaveType::Rarefaction);
  CHECK_THAT(fan.waves[0].speed_hi, WithinAbs(4.0, 1e-12));
  CHECK_THAT(sample_fan(fan, 1.0, 1.0), WithinAbs(1.0, 1e-8));
  const auto shock = solve_riemann(f, 2.0, -1.0);
  REQUIRE(shock.waves.size() == 1);
  CHECK(shock.waves[0].type == WaveType::Shock);
  CHECK_THAT(shock.waves[0].speed_lo, WithinAbs((8.0 / 3.0 - 1.0 / 3.0) / 3.0, 1e-14));
}
