#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fdi/finite_diff.hpp"

#include <algorithm>
#include <random>

using namespace fdi;

namespace {

// Independent oracle: literal k-fold composition of order-1 differences
// along a unit lattice step, computed on shifted copies. Kept free of any
// library arithmetic on purpose.
long kfold_recursion(const IntGrid& img, Pixel p, Offset unit, int k) {
  std::vector<long> values;
  for (int j = 0; j <= k; ++j) {
    values.push_back(img(p.row + j * unit.dr, p.col + j * unit.dc));
  }
  for (int round = 0; round < k; ++round) {
    for (std::size_t i = 0; i + 1 < values.size(); ++i) values[i] = values[i + 1] - values[i];
    values.pop_back();
  }
  return values.front();
}

IntGrid random_grid(Index rows, Index cols, std::mt19937& rng) {
  std::uniform_int_distribution<int> dist(0, 255);
  IntGrid g(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c) g(r, c) = dist(rng);
  }
  return g;
}

}  // namespace

TEST_CASE("direction rings have 8k distinct offsets covering the ring") {
  for (int k = 1; k <= 3; ++k) {
    const DirectionSet set = DirectionSet::ring(k);
    CHECK(set.size() == 8u * k);
    for (const Offset& o : set.directions) {
      CHECK(std::max(std::abs(o.dr), std::abs(o.dc)) == k);
    }
    auto sorted = set.directions;
    std::sort(sorted.begin(), sorted.end(),
              [](Offset a, Offset b) { return a.dr != b.dr ? a.dr < b.dr : a.dc < b.dc; });
    CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
  }
}

TEST_CASE("order-1 ring is the 8 compass directions") {
  const DirectionSet set = DirectionSet::ring(1);
  const std::vector<Offset> expected = {{0, 1},  {-1, 1}, {-1, 0}, {-1, -1},
                                        {0, -1}, {1, -1}, {1, 0},  {1, 1}};
  CHECK(set.directions == expected);
}

TEST_CASE("normalization constants") {
  const DiffNormalization n1 = DiffNormalization::order_k(1, 255);
  CHECK(n1.r_k == 56);
  CHECK(n1.beta_k == 0.5);
  CHECK(n1.range == 510);
  const DiffNormalization n2 = DiffNormalization::order_k(2, 255);
  CHECK(n2.r_k == 16 * 15);
  CHECK(n2.beta_k == 0.25);
  CHECK(n2.range == 1020);
}

TEST_CASE("binomial coefficients from Pascal's triangle") {
  CHECK(binomial(3, 1) == 3);
  CHECK(binomial(3, 2) == 3);
  CHECK(binomial(2, 1) == 2);
  CHECK(binomial(5, 2) == 10);
}

TEST_CASE("delta on a constant image is zero for every order") {
  const IntGrid g = IntGrid::Constant(9, 9, 42);
  const AllValid valid{&g};
  for (int k = 1; k <= 3; ++k) {
    for (const Offset& theta : DirectionSet::ring(k).directions) {
      const auto d = delta(g, valid, {4, 4}, theta, k);
      REQUIRE(d.has_value());
      CHECK(*d == doctest::Approx(0.0));
    }
  }
}

TEST_CASE("second difference on a 1-d row") {
  IntGrid g(1, 3);
  g << 0, 3, 5;
  const AllValid valid{&g};
  const auto d = delta(g, valid, {0, 0}, {0, 2}, 2);
  REQUIRE(d.has_value());
  CHECK(*d == -1.0);  // 5 + 0 - 2*3
}

TEST_CASE("delta is absent when a sample is missing or outside") {
  IntGrid g = IntGrid::Constant(5, 5, 9);
  auto valid = [&](Index r, Index c) {
    if (r == 2 && c == 3) return false;  // a to-be-inpainted point
    return in_bounds(g, r, c);
  };
  CHECK_FALSE(delta(g, valid, {2, 2}, {0, 1}, 1).has_value());
  CHECK(delta(g, valid, {2, 2}, {0, -1}, 1).has_value());
  CHECK_FALSE(delta(g, valid, {0, 4}, {0, 1}, 1).has_value());  // leaves the image
}

TEST_CASE("constant row has zero third difference") {
  IntGrid g(1, 4);
  g << 1, 1, 1, 1;
  const AllValid valid{&g};
  const auto d = expand_binomial(g, valid, {0, 0}, {0, 1}, 3);
  REQUIRE(d.has_value());
  CHECK(*d == 0);
}

TEST_CASE("binomial expansion equals k-fold recursion on random rows") {
  std::mt19937 rng(1234);
  for (int iter = 0; iter < 200; ++iter) {
    const IntGrid g = random_grid(1, 8, rng);
    const AllValid valid{&g};
    for (int k = 1; k <= 3; ++k) {
      for (int i = 0; i + k < 8; ++i) {
        const auto viaExpansion = expand_binomial(g, valid, {0, i}, {0, 1}, k);
        REQUIRE(viaExpansion.has_value());
        CHECK(*viaExpansion == kfold_recursion(g, {0, i}, {0, 1}, k));
        const auto viaDelta = delta(g, valid, {0, i}, {0, k}, k);
        REQUIRE(viaDelta.has_value());
        CHECK(*viaDelta == static_cast<double>(*viaExpansion));
      }
    }
  }
}

TEST_CASE("all three routes agree on 2-d axis and diagonal directions") {
  std::mt19937 rng(99);
  const IntGrid g = random_grid(10, 10, rng);
  const AllValid valid{&g};
  const std::vector<Offset> units = {{0, 1}, {1, 0}, {1, 1},  {1, -1},
                                     {0, -1}, {-1, 0}, {-1, -1}, {-1, 1}};
  for (const Offset& u : units) {
    for (int k = 1; k <= 3; ++k) {
      const Pixel p{4, 4};
      const auto expansion = expand_binomial(g, valid, p, u, k);
      REQUIRE(expansion.has_value());
      CHECK(*expansion == kfold_recursion(g, p, u, k));
      const auto composed = delta(g, valid, p, {u.dr * k, u.dc * k}, k);
      REQUIRE(composed.has_value());
      CHECK(*composed == static_cast<double>(*expansion));
    }
  }
}

TEST_CASE("telescoping identity holds exactly") {
  IntGrid g(1, 3);
  g << 7, 2, 9;
  CHECK(telescope_check(g, 0, 0, 2));  // 7 + (-5) + 7 == 9
  CHECK(telescope_check(g, 0, 0, 1));

  std::mt19937 rng(5);
  for (int iter = 0; iter < 200; ++iter) {
    const IntGrid row = random_grid(1, 10, rng);
    for (int i = 0; i < 10; ++i) {
      for (int k = 1; i + k < 10; ++k) {
        CHECK(telescope_check(row, 0, i, k));
      }
    }
  }
  CHECK_THROWS_AS(telescope_check(g, 0, 1, 2), std::out_of_range);
}

TEST_CASE("range bound |delta| <= 2^k (2^W - 1)") {
  std::mt19937 rng(6);
  for (int iter = 0; iter < 40; ++iter) {
    const IntGrid g = random_grid(9, 9, rng);
    const AllValid valid{&g};
    for (int k = 1; k <= 3; ++k) {
      for (const Offset& theta : DirectionSet::ring(k).directions) {
        const auto d = delta(g, valid, {4, 4}, theta, k);
        if (d) CHECK(std::abs(*d) <= (1 << k) * 255.0);
      }
    }
  }
}

TEST_CASE("validity is monotone in the order") {
  // If the order-k samples along theta are all valid, dropping the last
  // step leaves a valid order-(k-1) computation along the shrunken theta.
  std::mt19937 rng(7);
  const IntGrid g = random_grid(9, 9, rng);
  std::uniform_int_distribution<int> coin(0, 4);
  for (int iter = 0; iter < 60; ++iter) {
    ByteGrid ok = ByteGrid::Constant(9, 9, 1);
    for (Index r = 0; r < 9; ++r) {
      for (Index c = 0; c < 9; ++c) {
        if (coin(rng) == 0) ok(r, c) = 0;
      }
    }
    auto valid = [&](Index r, Index c) { return in_bounds(g, r, c) && ok(r, c) != 0; };
    for (int k = 2; k <= 3; ++k) {
      for (const Offset& unit :
           std::vector<Offset>{{0, 1}, {1, 0}, {1, 1}, {1, -1}}) {
        const Pixel p{4, 4};
        if (delta(g, valid, p, {unit.dr * k, unit.dc * k}, k).has_value()) {
          CHECK(delta(g, valid, p, {unit.dr * (k - 1), unit.dc * (k - 1)}, k - 1).has_value());
        }
      }
    }
  }
}

TEST_CASE("off-axis samples carry bilinear weights that sum to one") {
  const auto stencil = line_samples({3, 3}, {2, 1}, 2);
  REQUIRE(stencil.size() == 3);
  // Midpoint (1, 0.5) from the start: two neighbors at weight 0.5.
  const auto& mid = stencil[1];
  REQUIRE(mid.size() == 2);
  CHECK(mid[0].weight == 0.5);
  CHECK(mid[1].weight == 0.5);
  CHECK(mid[0].px == Pixel{4, 3});
  CHECK(mid[1].px == Pixel{4, 4});

  for (int k = 2; k <= 3; ++k) {
    for (const Offset& theta : DirectionSet::ring(k).directions) {
      for (const auto& sample : line_samples({0, 0}, theta, k)) {
        double sum = 0.0;
        for (const WeightedSample& ws : sample) sum += ws.weight;
        CHECK(sum == doctest::Approx(1.0));
      }
    }
  }
}

TEST_CASE("on-axis stencils are lattice points with unit weight") {
  for (int k = 2; k <= 3; ++k) {
    for (const Offset& theta :
         std::vector<Offset>{{0, k}, {k, 0}, {k, k}, {-k, k}}) {
      CHECK(on_lattice(theta, k));
      for (const auto& sample : line_samples({5, 5}, theta, k)) {
        REQUIRE(sample.size() == 1);
        CHECK(sample[0].weight == 1.0);
      }
    }
  }
}
