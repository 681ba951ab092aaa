#include <doctest.h>

#include <algorithm>
#include <set>

#include "polyskel/hypercube.hpp"

using namespace polyskel;

namespace {

Vertex v(const char* s) { return Vertex::parse(s); }

std::vector<std::string> names(const std::vector<Vertex>& vs) {
  std::vector<std::string> out;
  for (const auto& x : vs) out.push_back(x.to_string());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("coordinate strings map coordinate i to bit i-1") {
  CHECK(v("011").bits() == 0b110);
  CHECK(v("100").bits() == 0b001);
  CHECK(Vertex(0b110, 3).to_string() == "011");
  CHECK_THROWS_AS(Vertex::parse("01a"), std::invalid_argument);
  CHECK_THROWS(Vertex(0b1000, 3));
}

TEST_CASE("hamming distance") {
  CHECK(hamming(v("000"), v("000")) == 0);
  CHECK(hamming(v("00000"), v("11100")) == 3);
  CHECK(hamming(v("0101"), v("1010")) == 4);
  CHECK_THROWS_AS(hamming(v("01"), v("011")), DimensionMismatch);
}

TEST_CASE("xor of vertices") {
  CHECK((v("011") ^ v("101")) == v("110"));
  CHECK((v("0110") ^ Vertex::zeros(4)) == v("0110"));
  CHECK((v("11100") ^ v("00010")) == v("11110"));
}

TEST_CASE("support uses 1-based coordinates") {
  CHECK(support(v("000")).empty());
  CHECK(support(v("101")).indices() == std::vector<int>{1, 3});
  CHECK(support(v("11100")).indices() == std::vector<int>{1, 2, 3});
}

TEST_CASE("cube points") {
  CHECK(names(cube_points(v("00"), v("11"))) == std::vector<std::string>{"00", "01", "10", "11"});
  CHECK(names(cube_points(v("01"), v("01"))) == std::vector<std::string>{"01"});
  // Oracle: scan the whole cube against the coordinate-interval condition.
  const Vertex x = v("000"), y = v("110");
  std::vector<Vertex> brute;
  for (std::uint64_t m = 0; m < 8; ++m) {
    bool inside = true;
    for (int i = 1; i <= 3; ++i) {
      const bool bit = (m >> (i - 1)) & 1U;
      inside = inside && (bit == x.coordinate(i) || bit == y.coordinate(i));
    }
    if (inside) brute.emplace_back(m, 3);
  }
  CHECK(names(cube_points(x, y)) == names(brute));
  CHECK(names(brute) == std::vector<std::string>{"000", "010", "100", "110"});
}

TEST_CASE("spheres and balls") {
  CHECK(names(sphere(v("000"), 0)) == std::vector<std::string>{"000"});
  CHECK(names(sphere(v("000"), 1)) == std::vector<std::string>{"001", "010", "100"});
  CHECK(sphere(v("0000"), 2).size() == 6);
  CHECK(names(ball(v("00"), 0)) == std::vector<std::string>{"00"});
  CHECK(ball(v("000"), 1).size() == 4);
  CHECK(ball(v("0000"), 4).size() == 16);
  for (int n = 1; n <= 7; ++n) {
    for (int r = 0; r <= n; ++r) {
      const auto s = sphere(Vertex(0b1, n), r);
      CHECK(s.size() == binomial(n, r));
      for (const auto& w : s) CHECK(hamming(w, Vertex(0b1, n)) == r);
    }
  }
}

TEST_CASE("projection drops trailing coordinates") {
  CHECK(project(v("10110"), 2) == v("101"));
  CHECK(project(v("10110"), 0) == v("10110"));
  CHECK(project(v("11111"), 4) == v("1"));
}

TEST_CASE("avoidance of supports") {
  CHECK(avoids(v("00000"), v("11100"), v("00000"), v("00011")));
  CHECK_FALSE(avoids(v("000"), v("110"), v("000"), v("011")));
  CHECK(avoids(v("101"), v("101"), v("000"), v("111")));
}

TEST_CASE("grid partition examples") {
  using Cls = std::vector<std::pair<int, int>>;
  CHECK(grid_partition(1, 1) == std::vector<Cls>{{{1, 1}}});
  CHECK(grid_partition(2, 3) == std::vector<Cls>{{{1, 1}, {2, 2}}, {{1, 2}, {2, 3}}, {{1, 3}, {2, 1}}});
  CHECK_THROWS(grid_partition(3, 2));
}

TEST_CASE("grid partition is a transversal decomposition") {
  for (int n = 1; n <= 12; ++n) {
    for (int m = 1; m <= n; ++m) {
      const auto classes = grid_partition(m, n);
      REQUIRE(classes.size() == static_cast<std::size_t>(n));
      std::set<std::pair<int, int>> cells;
      for (const auto& cls : classes) {
        std::set<int> rows, cols;
        for (const auto& [r, c] : cls) {
          rows.insert(r);
          cols.insert(c);
          cells.insert({r, c});
        }
        CHECK(rows.size() == static_cast<std::size_t>(m));
        CHECK(cols.size() == static_cast<std::size_t>(m));
      }
      CHECK(cells.size() == static_cast<std::size_t>(m * n));
    }
  }
}

TEST_CASE("weight submask enumeration matches a popcount scan") {
  for (std::uint64_t within : {0x0ULL, 0x1ULL, 0b1011ULL, 0xF0F0ULL, 0x3FFULL}) {
    for (int k = 0; k <= std::popcount(within) + 1; ++k) {
      std::vector<std::uint64_t> got;
      for_each_weight_submask(within, k, [&](std::uint64_t m) { got.push_back(m); });
      std::vector<std::uint64_t> expect;
      for (std::uint64_t m = 0; m <= within; ++m) {
        if ((m & ~within) == 0 && std::popcount(m) == k) expect.push_back(m);
      }
      std::sort(got.begin(), got.end());
      CHECK(got == expect);
    }
  }
}

TEST_CASE("binomial table") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(64, 32) == 1832624140942590534ULL);
  CHECK(binomial(4, 5) == 0);
}

TEST_CASE("coordinate order compares strings left to right") {
  // "011" < "100": coordinate 1 decides.
  CHECK(coordinate_lex_less(v("011").bits(), v("100").bits()));
  CHECK_FALSE(coordinate_lex_less(v("100").bits(), v("011").bits()));
  for (std::uint64_t a = 0; a < 16; ++a) {
    for (std::uint64_t b = 0; b < 16; ++b) {
      CHECK(coordinate_lex_less(a, b) == (Vertex(a, 4).to_string() < Vertex(b, 4).to_string()));
    }
  }
}
