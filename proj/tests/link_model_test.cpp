#include <cmath>
#include <random>

#include "doctest.h"

#include "coopsim/link_model.hpp"
#include "support/oracles.hpp"

using namespace coopsim;

namespace {

Link make_link(double rho_capacity, double rho_delay) {
  return Link{LinkId{0}, VertexId{0}, VertexId{1}, LinkKind::WifiLink, rho_capacity, rho_delay};
}

}  // namespace

TEST_CASE("bits_per_slot applies both rho factors") {
  const NetworkParams params{1000.0, 1.0, false};
  CHECK(params.b0() == 1000.0);

  CHECK(bits_per_slot(params, make_link(0.5, 0.2)) == doctest::Approx(400.0));
  CHECK(bits_per_slot(params, make_link(0.7, 1.0)) == 0.0);
  CHECK(bits_per_slot(params, make_link(1.0, 0.0)) == doctest::Approx(1000.0));
}

TEST_CASE("asymptotic c0 forbids full capacity") {
  const NetworkParams params{1000.0, 1.0, true};
  CHECK_THROWS_AS(bits_per_slot(params, make_link(1.0, 0.2)), AsymptoticCapacityError);
  CHECK(bits_per_slot(params, make_link(0.99, 0.2)) == doctest::Approx(1000.0 * 0.99 * 0.8));
}

TEST_CASE("classify_link partitions by rho_delay") {
  CHECK(classify_link(make_link(0.5, 1.0)) == LinkClass::Useless);
  CHECK(classify_link(make_link(0.5, 0.0)) == LinkClass::NearImpossible);
  CHECK(classify_link(make_link(0.5, 0.3)) == LinkClass::Usable);
}

TEST_CASE("slots_required ceils the payload ratio") {
  CHECK(slots_required(400.0, TransferRequest{1000}) == 3);  // ceil(2.5)
  CHECK(slots_required(400.0, TransferRequest{800}) == 2);   // exact division
  CHECK(slots_required(400.0, TransferRequest{1}) == 1);     // floor at one slot

  CHECK_THROWS_AS(slots_required(0.0, TransferRequest{100}), UnusableLinkError);
  CHECK_THROWS_AS(slots_required(400.0, TransferRequest{0}), ParameterOutOfRangeError);
}

TEST_CASE("slots_required satisfies the exactness bracket") {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  for (int i = 0; i < 2000; ++i) {
    const double per_slot = std::pow(10.0, 6.0 * unit(rng) - 2.0);  // 1e-2 .. 1e4
    const std::uint64_t payload = 1 + rng() % 1000000000ULL;
    const std::uint64_t t = slots_required(per_slot, TransferRequest{payload});
    REQUIRE(t >= 1);
    CHECK(static_cast<double>(t) * per_slot >= static_cast<double>(payload));
    if (t > 1) {
      CHECK(static_cast<double>(t - 1) * per_slot < static_cast<double>(payload));
    }
  }
}

TEST_CASE("slots_required is monotone in both arguments") {
  std::mt19937_64 rng(515);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  for (int i = 0; i < 500; ++i) {
    const double b_small = 1.0 + 999.0 * unit(rng);
    const double b_large = b_small * (1.0 + unit(rng));
    const std::uint64_t payload = 1 + rng() % 100000;
    CHECK(slots_required(b_large, TransferRequest{payload}) <=
          slots_required(b_small, TransferRequest{payload}));

    const std::uint64_t heavier = payload + rng() % 100000;
    CHECK(slots_required(b_small, TransferRequest{heavier}) >=
          slots_required(b_small, TransferRequest{payload}));
  }
}

TEST_CASE("bits_per_slot is linear in rho_capacity and in b0") {
  std::mt19937_64 rng(616);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  for (int i = 0; i < 500; ++i) {
    const NetworkParams params{1.0 + 1e6 * unit(rng), 0.001 + 10.0 * unit(rng), false};
    const double rho_c = 0.01 + 0.49 * unit(rng);
    const double rho_d = unit(rng);
    const double k = 0.1 + 1.9 * unit(rng);  // keeps k * rho_c inside (0, 1]

    const double base = bits_per_slot(params, make_link(rho_c, rho_d));
    const double scaled_cap = bits_per_slot(params, make_link(k * rho_c, rho_d));
    CHECK(oracles::rel_diff(scaled_cap, k * base) < 1e-12);

    const NetworkParams doubled{params.c0 * 2.0, params.tau0, false};
    CHECK(oracles::rel_diff(bits_per_slot(doubled, make_link(rho_c, rho_d)), 2.0 * base) <
          1e-12);

    // affine-decreasing in rho_delay
    const double d2 = unit(rng);
    const double b2 = bits_per_slot(params, make_link(rho_c, d2));
    if (d2 > rho_d) CHECK(b2 <= base);
    if (d2 < rho_d) CHECK(b2 >= base);
  }
}

TEST_CASE("useless classification coincides with zero bits per slot") {
  std::mt19937_64 rng(717);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const NetworkParams params{1000.0, 1.0, false};

  for (int i = 0; i < 300; ++i) {
    const double rho_d = (i % 3 == 0) ? 1.0 : unit(rng);
    const Link link = make_link(0.01 + 0.99 * unit(rng), rho_d);
    const bool useless = classify_link(link) == LinkClass::Useless;
    CHECK(useless == (bits_per_slot(params, link) == 0.0));
  }
}

TEST_CASE("rho parameterization matches the capacity-times-usable-time form") {
  // With per-link capacity c0 * rho_c and per-link delay rho_d * tau0, the
  // per-slot payload is capacity * (tau0 - delay).
  std::mt19937_64 rng(818);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  for (int i = 0; i < 500; ++i) {
    const NetworkParams params{1.0 + 1e5 * unit(rng), 0.01 + 5.0 * unit(rng), false};
    const double rho_c = 0.01 + 0.99 * unit(rng);
    const double rho_d = unit(rng);

    const double link_capacity = params.c0 * rho_c;
    const double link_delay = rho_d * params.tau0;
    const double direct = link_capacity * (params.tau0 - link_delay);

    CHECK(oracles::rel_diff(bits_per_slot(params, make_link(rho_c, rho_d)), direct) < 1e-12);
  }
}
