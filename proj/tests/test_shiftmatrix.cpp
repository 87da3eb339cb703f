#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "dayshift/calendar.hpp"
#include "dayshift/metrics.hpp"
#include "dayshift/shiftmatrix.hpp"
#include "dayshift/synthgen.hpp"
#include "support/testutil.hpp"

using namespace dayshift;

namespace {

PairProtocol small_protocol(int train, int test, std::uint64_t seed, int trees = 60) {
  PairProtocol proto;
  proto.n_train_per_day = train;
  proto.n_test_per_day = test;
  proto.seed = seed;
  proto.forest.n_trees = trees;
  return proto;
}

}  // namespace

TEST_CASE("pair budgets shrink to the smaller day and keep the ratio") {
  PairProtocol proto = small_protocol(2000, 500, 0);
  auto full = shift_detail::pair_budget(5000, 9000, proto);
  CHECK(full.train_per_day == 2000);
  CHECK(full.test_per_day == 500);

  auto shrunk = shift_detail::pair_budget(1000, 9000, proto);
  CHECK(shrunk.train_per_day + shrunk.test_per_day == 1000);
  CHECK(shrunk.train_per_day == 800);  // 4:1 ratio preserved

  auto tiny = shift_detail::pair_budget(20, 20, proto);
  CHECK(tiny.train_per_day + tiny.test_per_day == 20);
  CHECK(tiny.train_per_day >= 1);
  CHECK(tiny.test_per_day >= 1);
}

TEST_CASE("pair_shift is symmetric in its day arguments") {
  auto table = testutil::gaussian_day_table({300, 300, 300}, {0.0, 1.0, 0.2}, 5);
  const PairProtocol proto = small_protocol(150, 50, 77, 30);
  CHECK(pair_shift(table, 0, 1, proto) == pair_shift(table, 1, 0, proto));
  CHECK(pair_shift(table, 0, 2, proto) == pair_shift(table, 2, 0, proto));
  CHECK_THROWS_AS(pair_shift(table, 1, 1, proto), std::invalid_argument);
}

TEST_CASE("days with too few rows are rejected") {
  auto table = testutil::gaussian_day_table({10, 300}, {0.0, 0.0}, 6);
  CHECK_THROWS_AS(pair_shift(table, 0, 1, small_protocol(100, 50, 1)), InfeasibleError);
}

TEST_CASE("identically distributed days give near-zero MCC") {
  auto table = testutil::gaussian_day_table({2600, 2600}, {0.4, 0.4}, 2718);
  const double m = pair_shift(table, 0, 1, small_protocol(2000, 500, 31, 100));
  CHECK(std::abs(m) <= 0.1);
}

TEST_CASE("a three-sigma mean shift is detected with high MCC", "[slow]") {
  auto table = testutil::gaussian_day_table({2600, 2600}, {0.0, 3.0}, 99);

  // The generative threshold x > 1.5 is the optimal rule; its held-out MCC
  // anchors what any classifier can reach at these sizes.
  std::vector<int> preds, truth;
  for (std::size_t r = 0; r < table.n_rows(); ++r) {
    preds.push_back(table.value(r, 0) > 1.5 ? 1 : 0);
    truth.push_back(table.day_of_row(r));
  }
  const double oracle = mcc(confusion(preds, truth));
  CHECK(oracle >= 0.8);  // 2 * Phi(1.5) - 1 = 0.866 up to sampling noise

  const double learned = pair_shift(table, 0, 1, small_protocol(2000, 500, 4242, 100));
  CHECK(learned >= 0.8);
}

TEST_CASE("matrix over two days has one symmetric pair and a zero diagonal") {
  auto table = testutil::gaussian_day_table({200, 200}, {0.0, 2.0}, 8);
  const ShiftMatrix m = build_matrix(table, small_protocol(100, 40, 3, 30));
  REQUIRE(m.n_days == 2);
  CHECK(m.at(0, 0) == 0.0);
  CHECK(m.at(1, 1) == 0.0);
  CHECK(m.at(0, 1) == m.at(1, 0));
  CHECK(m.at(0, 1) > 0.5);
  CHECK_NOTHROW(m.validate());
}

TEST_CASE("worker count does not change the matrix") {
  auto table = testutil::gaussian_day_table({240, 240, 240, 240, 240, 240},
                                            {0.0, 0.1, 1.0, 1.1, 2.0, 0.05}, 77);
  const PairProtocol proto = small_protocol(120, 60, 123, 25);
  const ShiftMatrix serial = build_matrix(table, proto, 1);
  const ShiftMatrix parallel = build_matrix(table, proto, 4);
  CHECK(serial.dist == parallel.dist);
  CHECK(serial.raw == parallel.raw);
}

TEST_CASE("matrix pair errors carry the offending dates") {
  auto table = testutil::gaussian_day_table({15, 200}, {0.0, 0.0}, 5);
  CHECK_THROWS_WITH(build_matrix(table, small_protocol(100, 40, 3, 10)),
                    Catch::Matchers::ContainsSubstring("2015-03-01"));
}

TEST_CASE("planted blocks put intra-type distances below inter-type distances") {
  // Days 0-2 share one distribution, days 3-5 another.
  auto table = testutil::gaussian_day_table({300, 300, 300, 300, 300, 300},
                                            {0.0, 0.0, 0.0, 1.2, 1.2, 1.2}, 2024);
  const ShiftMatrix m = build_matrix(table, small_protocol(150, 50, 10, 40), 2);
  double intra = 0.0, inter = 0.0;
  int n_intra = 0, n_inter = 0;
  for (int i = 0; i < 6; ++i) {
    for (int j = i + 1; j < 6; ++j) {
      const bool same = (i < 3) == (j < 3);
      (same ? intra : inter) += m.at(i, j);
      ++(same ? n_intra : n_inter);
    }
  }
  CHECK(intra / n_intra < inter / n_inter);
}

TEST_CASE("matrix files round trip with full precision") {
  testutil::TempDir tmp("matrix");
  auto table = testutil::gaussian_day_table({120, 120, 120}, {0.0, 0.7, 1.4}, 11);
  const PairProtocol proto = small_protocol(60, 30, 2025, 20);
  const ShiftMatrix m = build_matrix(table, proto);

  save_shift_matrix(m, tmp.file("matrix"), proto, 0xabcdefull);
  const ShiftMatrix back = load_shift_matrix(tmp.file("matrix"));
  CHECK(back.n_days == m.n_days);
  CHECK(back.dist == m.dist);
  CHECK(back.raw == m.raw);
  CHECK(back.day_dates == m.day_dates);

  const KvPairs meta = read_kv_file(tmp.file("matrix.meta"));
  CHECK(kv_get(meta, "seed", "meta") == "2025");
  CHECK(kv_get(meta, "dataset_hash", "meta") == to_hex(0xabcdefull));
  CHECK(kv_get(meta, "n_train_per_day", "meta") == "60");
  CHECK(kv_find(meta, "hash.matrix.csv") != nullptr);
}
