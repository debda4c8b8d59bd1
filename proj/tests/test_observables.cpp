#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sptsim/observables.hpp"
#include "sptsim/rng.hpp"

using namespace sptsim;

namespace {

SublatticeState random_state(int L, double d_density, double e_density, RngStream& rng) {
  SublatticeState st;
  st.L = L;
  st.d = BitVec(L);
  st.e = BitVec(L);
  for (int i = 0; i < L; ++i) {
    if (rng.next_double() < d_density) st.d.set(i);
    if (rng.next_double() < e_density) st.e.set(i);
  }
  return st;
}

}  // namespace

TEST_CASE("string_order trivial cases") {
  SublatticeState st;
  st.L = 8;
  st.d = BitVec(8);
  st.e = BitVec(8);
  for (int l = 1; l <= 8; ++l) CHECK(string_order(st, l) == 1.0);

  st.d.set(3);  // single defect, l=4: half the windows cover it
  CHECK(string_order(st, 4) == doctest::Approx(0.0));
  CHECK_THROWS_AS(string_order(st, 0), std::invalid_argument);
  CHECK_THROWS_AS(string_order(st, 9), std::invalid_argument);
}

TEST_CASE("string_order sliding window equals the naive product") {
  RngStream rng(21, 0);
  for (int rep = 0; rep < 200; ++rep) {
    int L = 3 + int(rng.next_index(30));
    auto st = random_state(L, 0.4, 0.3, rng);
    for (int l : {1, 2, L / 2 > 0 ? L / 2 : 1, L}) {
      if (l < 1) continue;
      CHECK(string_order(st, l) == doctest::Approx(oracle::naive_string_order(st, l)));
    }
  }
}

TEST_CASE("string_order at density 1/2 averages to zero (resampling oracle)") {
  RngStream rng(22, 0);
  const int L = 512, l = 64, n = 1000;
  double sum = 0, sumsq = 0;
  for (int i = 0; i < n; ++i) {
    auto st = random_state(L, 0.5, 0.0, rng);
    double w = string_order(st, l);
    sum += w;
    sumsq += w * w;
  }
  double mean = sum / n;
  double sem = std::sqrt((sumsq / n - mean * mean) / (n - 1));
  CHECK(std::abs(mean) < 3.0 * sem + 1e-12);
}

TEST_CASE("string_order over the full ring is the global parity") {
  RngStream rng(23, 0);
  for (int rep = 0; rep < 50; ++rep) {
    auto st = random_state(16, 0.5, 0.0, rng);
    CHECK(string_order(st, 16) == (st.d.parity() ? -1.0 : 1.0));
  }
}

TEST_CASE("unheralded_density examples") {
  SublatticeState st;
  st.L = 4;
  st.d = BitVec(4);
  st.e = BitVec(4);
  st.d.set(1);
  st.e.set(1);  // flag adjacent (left) to the defect
  CHECK(unheralded_density(st) == 0.0);
  st.e.clear(1);
  CHECK(unheralded_density(st) == doctest::Approx(0.25));
  st.e.set(2);  // flag on the right side
  CHECK(unheralded_density(st) == 0.0);
}

TEST_CASE("erasure_correlator trivial cases") {
  SublatticeState st;
  st.L = 6;
  st.d = BitVec(6);
  st.e = BitVec(6);
  for (int l = 1; l <= 6; ++l) CHECK(erasure_correlator(st, l) == 1.0);
  st.e.fill(true);
  for (int l = 1; l <= 6; ++l) CHECK(erasure_correlator(st, l) == 0.0);
}

TEST_CASE("zeta trivial cases") {
  SublatticeState st;
  st.L = 16;
  st.d = BitVec(16);
  st.e = BitVec(16);
  CHECK(zeta(st) == 0);
  st.d.set(2);
  st.d.set(5);  // ring distance 3
  CHECK(zeta(st) == 3);
  st.d.set(9);
  CHECK_THROWS_AS(zeta(st), std::domain_error);
}

TEST_CASE("matching equals the exhaustive oracle for up to 8 defects") {
  RngStream rng(24, 0);
  const int L = 16;
  for (int rep = 0; rep < 3000; ++rep) {
    int n_def = 2 * (1 + int(rng.next_index(4)));  // 2, 4, 6, 8
    std::vector<int> pos;
    BitVec taken(L);
    while (int(pos.size()) < n_def) {
      int p = int(rng.next_index(L));
      if (!taken.get(p)) {
        taken.set(p);
        pos.push_back(p);
      }
    }
    auto ours = min_weight_matching(pos, L);
    auto brute = oracle::brute_matching(pos, L);
    CAPTURE(rep);
    CHECK(ours.total_weight == brute.cost);
    CHECK(ours.max_separation == brute.max_sep);
    CHECK(ours.pairs == brute.pairs);
  }
}

TEST_CASE("zeta spec example: tie broken toward the lexicographic matching") {
  // Positions {0,1,4,9} on a ring of 12: two cost-6 matchings exist;
  // (0,1)(4,9) is lexicographically first and has max separation 5.
  auto r = min_weight_matching({0, 1, 4, 9}, 12);
  CHECK(r.total_weight == 6);
  CHECK(r.max_separation == 5);
  REQUIRE(r.pairs.size() == 2);
  CHECK(r.pairs[0] == std::pair<int, int>{0, 1});
  CHECK(r.pairs[1] == std::pair<int, int>{4, 9});
}

TEST_CASE("center_string_orders matches region_parity") {
  RngStream rng(25, 0);
  for (int L : {8, 9, 12, 15}) {
    for (int rep = 0; rep < 100; ++rep) {
      auto st = random_state(L, 0.5, 0.0, rng);
      auto omc = center_string_orders(st);
      REQUIRE(int(omc.size()) == L / 2);
      for (int k = 1; k <= L / 2; ++k) {
        double expect = region_parity(st, k, L - 2 * k + 1, Boundary::ChiralOpen);
        CHECK(omc[k - 1] == expect);
      }
    }
  }
}
