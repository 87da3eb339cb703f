#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "dayshift/clustering.hpp"
#include "dayshift/rng.hpp"
#include "dayshift/shiftmatrix.hpp"

using namespace dayshift;

namespace {

ShiftMatrix matrix_from(const std::vector<std::vector<double>>& d) {
  ShiftMatrix m;
  m.n_days = static_cast<int>(d.size());
  const auto n = d.size();
  m.dist.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m.dist[i * n + j] = d[i][j];
  }
  m.raw = m.dist;
  for (std::size_t i = 0; i < n; ++i) {
    m.day_dates.push_back(Date::from_ymd(2015, 3, 1) + static_cast<int>(i));
  }
  m.validate();
  return m;
}

ShiftMatrix random_matrix(int n, Rng& rng) {
  std::vector<std::vector<double>> d(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          d[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = 0.05 + rng.uniform01();
    }
  }
  return matrix_from(d);
}

// Block-structured matrix: four day-type groups with the cross-distances seen
// on planted data (one far group, two nearer ones) and near-zero intra noise.
ShiftMatrix planted_blocks(const std::vector<int>& group_of, Rng& rng) {
  const double cross[4][4] = {{0.00, 0.35, 0.85, 0.30},
                              {0.35, 0.00, 0.80, 0.20},
                              {0.85, 0.80, 0.00, 0.75},
                              {0.30, 0.20, 0.75, 0.00}};
  const int n = static_cast<int>(group_of.size());
  std::vector<std::vector<double>> d(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double base = cross[group_of[static_cast<std::size_t>(i)]][group_of[static_cast<std::size_t>(j)]];
      const double v = base + 0.02 * rng.uniform01();
      d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
      d[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = v;
    }
  }
  return matrix_from(d);
}

}  // namespace

TEST_CASE("average linkage on a worked three-point example") {
  // d(A,B) = 0.1, d(A,C) = 0.9, d(B,C) = 0.8: merge (A,B) at 0.1, then C joins
  // at the average (0.9 + 0.8) / 2 = 0.85.
  const ShiftMatrix m = matrix_from({{0.0, 0.1, 0.9}, {0.1, 0.0, 0.8}, {0.9, 0.8, 0.0}});
  const Dendrogram dendro = agglomerate(m);
  REQUIRE(dendro.merges.size() == 2);
  CHECK(dendro.merges[0].left == 0);
  CHECK(dendro.merges[0].right == 1);
  CHECK(dendro.merges[0].height == Catch::Approx(0.1));
  CHECK(dendro.merges[1].left == 3);  // the (A,B) node
  CHECK(dendro.merges[1].right == 2);
  CHECK(dendro.merges[1].height == Catch::Approx(0.85));

  const ClusterAssignment two = cut(dendro, 2);
  CHECK(two.labels == std::vector<int>{0, 0, 1});
}

TEST_CASE("two points merge once at their distance") {
  const ShiftMatrix m = matrix_from({{0.0, 0.42}, {0.42, 0.0}});
  const Dendrogram dendro = agglomerate(m);
  REQUIRE(dendro.merges.size() == 1);
  CHECK(dendro.merges[0].height == 0.42);
  CHECK(dendro.merges[0].size == 2);
}

TEST_CASE("equal distances resolve by the lowest-index tie rule") {
  const ShiftMatrix m = matrix_from({{0.0, 0.5, 0.5, 0.5},
                                     {0.5, 0.0, 0.5, 0.5},
                                     {0.5, 0.5, 0.0, 0.5},
                                     {0.5, 0.5, 0.5, 0.0}});
  const Dendrogram dendro = agglomerate(m);
  REQUIRE(dendro.merges.size() == 3);
  CHECK(dendro.merges[0].left == 0);
  CHECK(dendro.merges[0].right == 1);
  CHECK(dendro.merges[1].left == 4);  // {0,1} then picks day 2
  CHECK(dendro.merges[1].right == 2);
  CHECK(dendro.merges[2].left == 5);
  CHECK(dendro.merges[2].right == 3);
  for (const Merge& merge : dendro.merges) CHECK(merge.height == 0.5);
}

TEST_CASE("invalid matrices are rejected") {
  ShiftMatrix bad;
  bad.n_days = 2;
  bad.dist = {0.0, 0.3, 0.4, 0.0};  // asymmetric
  bad.raw = bad.dist;
  CHECK_THROWS_AS(agglomerate(bad), DataError);
}

TEST_CASE("cut bounds and degenerate cuts") {
  Rng rng(4);
  const ShiftMatrix m = random_matrix(6, rng);
  const Dendrogram dendro = agglomerate(m);
  CHECK_THROWS_AS(cut(dendro, 0), std::invalid_argument);
  CHECK_THROWS_AS(cut(dendro, 7), std::invalid_argument);

  const ClusterAssignment all = cut(dendro, 1);
  CHECK(std::all_of(all.labels.begin(), all.labels.end(), [](int l) { return l == 0; }));

  const ClusterAssignment singletons = cut(dendro, 6);
  for (int i = 0; i < 6; ++i) CHECK(singletons.labels[static_cast<std::size_t>(i)] == i);
}

TEST_CASE("cuts nest and heights are monotone", "[property]") {
  Rng rng(20);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 4 + static_cast<int>(rng.below(12));
    const ShiftMatrix m = random_matrix(n, rng);
    const Dendrogram dendro = agglomerate(m);

    for (std::size_t t = 1; t < dendro.merges.size(); ++t) {
      CHECK(dendro.merges[t].height >= dendro.merges[t - 1].height);
    }

    for (int k = 2; k <= n; ++k) {
      const ClusterAssignment fine = cut(dendro, k);
      const ClusterAssignment coarse = cut(dendro, k - 1);
      // Refinement: same fine cluster implies same coarse cluster.
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          if (fine.labels[static_cast<std::size_t>(i)] == fine.labels[static_cast<std::size_t>(j)]) {
            CHECK(coarse.labels[static_cast<std::size_t>(i)] == coarse.labels[static_cast<std::size_t>(j)]);
          }
        }
      }
    }
  }
}

TEST_CASE("clustering is equivariant under day relabeling", "[property]") {
  Rng rng(33);
  const int n = 9;
  const ShiftMatrix m = random_matrix(n, rng);
  const ClusterAssignment base = cut(agglomerate(m), 3);

  // Reverse the day order and cluster the permuted matrix.
  ShiftMatrix rev;
  rev.n_days = n;
  rev.dist.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      rev.dist[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)] = m.at(n - 1 - i, n - 1 - j);
    }
  }
  rev.raw = rev.dist;
  const ClusterAssignment permuted = cut(agglomerate(rev), 3);

  std::vector<int> mapped_back(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    mapped_back[static_cast<std::size_t>(i)] = permuted.labels[static_cast<std::size_t>(n - 1 - i)];
  }
  ClusterAssignment wrapper{3, mapped_back, {}};
  CHECK(compare_assignments(wrapper, base.labels) == 1.0);
}

TEST_CASE("intercluster curve on planted two-block structure") {
  Rng rng(8);
  // Two clean blocks: intra 0.1, inter 0.9.
  std::vector<std::vector<double>> d(6, std::vector<double>(6, 0.0));
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      if (i == j) continue;
      d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (i < 3) == (j < 3) ? 0.1 : 0.9;
    }
  }
  const ShiftMatrix m = matrix_from(d);
  const Dendrogram dendro = agglomerate(m);
  const auto curve = intercluster_curve(m, dendro, 6);
  REQUIRE(curve.size() == 5);
  CHECK(curve[0].first == 2);
  CHECK(curve[0].second == Catch::Approx(0.9));  // all cross pairs equal h

  // k = n: average over all pairs equals the mean off-diagonal distance.
  double mean = 0.0;
  int count = 0;
  for (int i = 0; i < 6; ++i) {
    for (int j = i + 1; j < 6; ++j) {
      mean += m.at(i, j);
      ++count;
    }
  }
  CHECK(curve.back().second == Catch::Approx(mean / count));
}

TEST_CASE("planted four-group structure puts the big curve drops at small k") {
  Rng rng(3);
  std::vector<int> groups;
  for (int i = 0; i < 53; ++i) groups.push_back(0);
  for (int i = 0; i < 13; ++i) groups.push_back(1);
  for (int i = 0; i < 17; ++i) groups.push_back(2);
  for (int i = 0; i < 9; ++i) groups.push_back(3);
  const ShiftMatrix m = planted_blocks(groups, rng);
  const Dendrogram dendro = agglomerate(m);

  const ClusterAssignment four = cut(dendro, 4);
  CHECK(compare_assignments(four, groups) == 1.0);

  const auto curve = intercluster_curve(m, dendro, 10);
  double biggest = -1.0;
  int biggest_k = 0;
  for (std::size_t i = 1; i < curve.size(); ++i) {
    const double drop = curve[i - 1].second - curve[i].second;
    if (drop > biggest) {
      biggest = drop;
      biggest_k = curve[i].first;
    }
  }
  CHECK(biggest_k <= 4);
}

TEST_CASE("adjusted rand index") {
  ClusterAssignment a{2, {0, 0, 1, 1}, {}};
  CHECK(compare_assignments(a, std::vector<int>{0, 0, 1, 1}) == 1.0);
  CHECK(compare_assignments(a, std::vector<int>{1, 1, 0, 0}) == 1.0);  // label-permutation invariant

  ClusterAssignment singletons{4, {0, 1, 2, 3}, {}};
  CHECK(compare_assignments(singletons, std::vector<int>{0, 0, 0, 0}) <= 0.0);

  CHECK_THROWS_AS(compare_assignments(a, std::vector<int>{0, 1}), std::invalid_argument);
}

TEST_CASE("no-leak assignment recovers planted groups for unseen days") {
  Rng rng(12);
  // 12 early days (4 per group of 3 types), 6 later days to assign.
  std::vector<int> groups{0, 0, 0, 0, 1, 1, 1, 1, 2, 2, 2, 2, 0, 1, 2, 0, 1, 2};
  const double cross[4][4] = {{0.0, 0.5, 0.8, 0.0},
                              {0.5, 0.0, 0.6, 0.0},
                              {0.8, 0.6, 0.0, 0.0},
                              {0.0, 0.0, 0.0, 0.0}};
  const int n = static_cast<int>(groups.size());
  std::vector<std::vector<double>> d(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double v = cross[groups[static_cast<std::size_t>(i)]][groups[static_cast<std::size_t>(j)]] +
                       0.01 * rng.uniform01();
      d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
      d[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = v;
    }
  }
  const ShiftMatrix m = matrix_from(d);
  const ClusterAssignment assignment = assign_no_leak(m, 3, 12);
  CHECK(compare_assignments(assignment, groups) == 1.0);
  CHECK_THROWS_AS(assign_no_leak(m, 13, 12), InfeasibleError);
}

TEST_CASE("newick export is balanced and labels every day") {
  Rng rng(5);
  const ShiftMatrix m = random_matrix(5, rng);
  const std::string newick = to_newick(agglomerate(m), m.day_dates);
  CHECK(newick.back() == '\n');
  CHECK(newick[newick.size() - 2] == ';');
  CHECK(std::count(newick.begin(), newick.end(), '(') == 4);
  CHECK(std::count(newick.begin(), newick.end(), ')') == 4);
  for (const Date& d : m.day_dates) {
    CHECK(newick.find(d.iso()) != std::string::npos);
  }
}

TEST_CASE("weekly grid renders ISO weeks with MON..SUN columns") {
  Rng rng(6);
  const ShiftMatrix m = random_matrix(8, rng);  // 2015-03-01 (Sunday) .. 2015-03-08
  const ClusterAssignment a = cut(agglomerate(m), 2, m.day_dates);
  const std::string grid = weekly_grid(a);
  CHECK(grid.find("week  MON") == 0);
  CHECK(grid.find("\n9 ") != std::string::npos);   // 2015-03-01 sits alone in ISO week 9
  CHECK(grid.find("\n10") != std::string::npos);
}
