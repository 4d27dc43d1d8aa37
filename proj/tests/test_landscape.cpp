#include "pensionsim/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "doctest.h"
#include "pensionsim/rng.hpp"

using namespace pensionsim;

namespace {

// Independent re-evaluation of the terraced falloff for one cell.
int expected_capacity(int x, int y, int width, int height) {
  const int px[2] = {static_cast<int>(std::floor(0.75 * width)),
                     static_cast<int>(std::floor(0.25 * width))};
  const int py[2] = {static_cast<int>(std::floor(0.25 * height)),
                     static_cast<int>(std::floor(0.75 * height))};
  int cap = 0;
  for (int k = 0; k < 2; ++k) {
    const double d = std::hypot(x - px[k], y - py[k]);
    int band = 0;
    if (d < 0.12 * width) {
      band = 4;
    } else if (d < 0.22 * width) {
      band = 3;
    } else if (d < 0.32 * width) {
      band = 2;
    } else if (d < 0.42 * width) {
      band = 1;
    }
    cap = std::max(cap, band);
  }
  return cap;
}

}  // namespace

TEST_CASE("default 50x50 terrain peaks and periphery") {
  const Landscape land = Landscape::generate_default(50, 50);
  CHECK(land.at({37, 12}).capacity == 4);
  CHECK(land.at({37, 12}).level == 4);
  CHECK(land.at({12, 37}).capacity == 4);
  CHECK(land.at({0, 0}).capacity == 0);

  int max_cap = 0;
  for (int y = 0; y < 50; ++y) {
    for (int x = 0; x < 50; ++x) {
      const Cell& c = land.at({x, y});
      CHECK(c.level == c.capacity);  // starts full
      CHECK(c.capacity == expected_capacity(x, y, 50, 50));
      max_cap = std::max(max_cap, c.capacity);
    }
  }
  CHECK(max_cap == 4);
}

TEST_CASE("levels start at capacity for other sizes too") {
  const Landscape land = Landscape::generate_default(30, 70);
  for (int y = 0; y < 70; ++y) {
    for (int x = 0; x < 30; ++x) {
      CHECK(land.at({x, y}).level == land.at({x, y}).capacity);
    }
  }
}

TEST_CASE("tiny dimensions are rejected") {
  CHECK_THROWS(Landscape::generate_default(9, 50));
  CHECK_THROWS(Landscape::generate_default(50, 9));
}

TEST_CASE("map text parsing") {
  const Landscape land = Landscape::from_map_text("0 1\n2 3\n");
  CHECK(land.width() == 2);
  CHECK(land.height() == 2);
  CHECK(land.at({0, 0}).capacity == 0);
  CHECK(land.at({1, 0}).capacity == 1);
  CHECK(land.at({0, 1}).capacity == 2);
  CHECK(land.at({1, 1}).capacity == 3);
  CHECK(land.at({1, 1}).level == 3);
}

TEST_CASE("map parse errors name line and column") {
  CHECK_THROWS_WITH_AS(Landscape::from_map_text("0 1\n2 5\n"),
                       doctest::Contains("line 2, column 2"), std::runtime_error);
  CHECK_THROWS_WITH_AS(Landscape::from_map_text("0 x\n"),
                       doctest::Contains("line 1, column 2"), std::runtime_error);
  CHECK_THROWS(Landscape::from_map_text("0 1\n2\n"));      // ragged
  CHECK_THROWS(Landscape::from_map_text("# only comments\n"));
}

TEST_CASE("comment lines are skipped") {
  const Landscape land = Landscape::from_map_text("# header\n1 2\n3 4\n");
  CHECK(land.width() == 2);
  CHECK(land.at({0, 0}).capacity == 1);
}

TEST_CASE("map text round-trips") {
  const Landscape land = Landscape::generate_default(50, 50);
  const Landscape again = Landscape::from_map_text(land.to_map_text());
  for (int y = 0; y < 50; ++y) {
    for (int x = 0; x < 50; ++x) {
      CHECK(land.at({x, y}).capacity == again.at({x, y}).capacity);
    }
  }
}

TEST_CASE("growback raises levels one unit up to capacity") {
  Landscape land = Landscape::from_map_text("4 4 0\n4 4 0\n4 4 0\n");
  land.at({0, 0}).level = 2;
  land.at({1, 0}).level = 4;
  land.at({2, 0}).level = 0;  // capacity 0
  land.grow_back();
  CHECK(land.at({0, 0}).level == 3);
  CHECK(land.at({1, 0}).level == 4);
  CHECK(land.at({2, 0}).level == 0);
}

TEST_CASE("growback restores an emptied map in max-capacity steps") {
  Landscape land = Landscape::generate_default(50, 50);
  for (int y = 0; y < 50; ++y) {
    for (int x = 0; x < 50; ++x) land.harvest({x, y});
  }
  for (int i = 0; i < 4; ++i) land.grow_back();
  for (int y = 0; y < 50; ++y) {
    for (int x = 0; x < 50; ++x) {
      CHECK(land.at({x, y}).level == land.at({x, y}).capacity);
    }
  }
}

TEST_CASE("growback never creates more than rate * cells of sugar") {
  Rng rng(3);
  Landscape land = Landscape::generate_default(50, 50);
  for (int round = 0; round < 20; ++round) {
    for (int i = 0; i < 200; ++i) {
      land.harvest({static_cast<int>(rng.uniform_int(0, 49)),
                    static_cast<int>(rng.uniform_int(0, 49))});
    }
    double before = 0.0, after = 0.0;
    for (int y = 0; y < 50; ++y) {
      for (int x = 0; x < 50; ++x) before += land.at({x, y}).level;
    }
    land.grow_back();
    for (int y = 0; y < 50; ++y) {
      for (int x = 0; x < 50; ++x) {
        const Cell& c = land.at({x, y});
        CHECK(c.level >= 0.0);
        CHECK(c.level <= c.capacity);
        after += c.level;
      }
    }
    CHECK(after - before <= land.growback_rate() * 2500 + 1e-9);
  }
}

TEST_CASE("harvest empties the cell and reports the take") {
  Landscape land = Landscape::from_map_text("3\n");
  CHECK(land.harvest({0, 0}) == 3.0);
  CHECK(land.at({0, 0}).level == 0.0);
  CHECK(land.harvest({0, 0}) == 0.0);
  CHECK(land.at({0, 0}).level == 0.0);
}

TEST_CASE("vision-1 neighborhood") {
  const Landscape land = Landscape::generate_default(50, 50);
  const auto seen = land.visible_positions({5, 5}, 1);
  CHECK(seen == std::vector<Position>{{5, 4}, {5, 6}, {6, 5}, {4, 5}});
}

TEST_CASE("visibility wraps around the torus") {
  const Landscape land = Landscape::generate_default(50, 50);
  const auto seen = land.visible_positions({0, 0}, 2);
  CHECK(std::find(seen.begin(), seen.end(), Position{49, 0}) != seen.end());
  CHECK(std::find(seen.begin(), seen.end(), Position{0, 48}) != seen.end());
}

TEST_CASE("vision 6 sees exactly 24 cells on the default map") {
  const Landscape land = Landscape::generate_default(50, 50);
  CHECK(land.visible_positions({10, 10}, 6).size() == 24);
}

TEST_CASE("wrap collisions are deduplicated") {
  // Width 4: east offset +2 and west offset -2 land on the same cell.
  const Landscape land = Landscape::from_map_text("0 0 0 0\n0 0 0 0\n0 0 0 0\n0 0 0 0\n0 0 0 0\n");
  const auto seen = land.visible_positions({0, 2}, 2);
  std::set<std::pair<int, int>> unique;
  for (const Position& p : seen) unique.insert({p.x, p.y});
  CHECK(seen.size() == unique.size());
  CHECK(seen.size() == 11);  // 4 N + 4 S + 3 E/W after the +-2 merge
}

TEST_CASE("lattice distance wraps") {
  const Landscape land = Landscape::generate_default(50, 50);
  CHECK(land.lattice_distance({0, 0}, {49, 0}) == 1);
  CHECK(land.lattice_distance({0, 0}, {25, 0}) == 25);
  CHECK(land.lattice_distance({3, 3}, {3, 3}) == 0);
  CHECK(land.lattice_distance({1, 1}, {49, 48}) == 2 + 3);
}
