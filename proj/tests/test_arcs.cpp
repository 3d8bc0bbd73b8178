#include <doctest.h>

#include <bit>
#include <set>

#include "chom/arcs.hpp"
#include "chom/homology.hpp"
#include "chom/morse.hpp"
#include "chom/torusfront.hpp"

using namespace chom;

namespace {

// Arc pictures by brute force over subsets: every cyclic run of S has length >= 2,
// there are t runs, and every gap has one or two vertices.
std::size_t brute_arc_count(int m, int t) {
  std::size_t count = 0;
  for (std::uint32_t s = 0; s < (1u << m); ++s) {
    if (s == 0 || s == (1u << m) - 1) continue;
    auto in = [&](int v) { return (s >> (((v % m) + m) % m) & 1) != 0; };
    int start = 0;
    while (in(start) || !in(start + 1)) ++start;  // the last vertex of a gap
    int runs = 0, len = 0, gap = 0;
    bool ok = true;
    for (int k = 1; k <= m; ++k) {
      const int v = start + k;
      if (in(v)) {
        if (gap) {
          ok = ok && gap <= 2;
          gap = 0;
        }
        ++len;
      } else {
        if (len) {
          ok = ok && len >= 2;
          ++runs;
          len = 0;
        }
        ++gap;
      }
    }
    ok = ok && gap >= 1 && gap <= 2;
    if (ok && runs == t) ++count;
  }
  return count;
}

std::string group_at(const std::vector<E2Entry>& entries, int p) {
  for (const auto& e : entries)
    if (e.p == p) return e.group;
  return "0";
}

}  // namespace

TEST_CASE("arc pictures") {
  CHECK(enumerate_arc_pictures(7, 2).size() == 14);
  CHECK(enumerate_arc_pictures(6, 2).size() == 3);
  CHECK(enumerate_arc_pictures(8, 3).empty());
  for (int m = 4; m <= 13; ++m)
    for (int t = 1; t <= m / 3; ++t) {
      const auto pics = enumerate_arc_pictures(m, t);
      CHECK(pics.size() == brute_arc_count(m, t));
      CHECK(pics.size() == build_phi(t, m, 3).cells.cell_count());
      for (const auto& pic : pics) {
        CHECK(pic.arcs.size() == static_cast<std::size_t>(t));
        CHECK(std::popcount(pic.support) == m - t - pic.two_gaps());
      }
    }
}

TEST_CASE("representative shift signs") {
  for (int m = 6; m <= 10; ++m)
    for (int t = 1; t <= m / 3; ++t)
      for (const auto& pic : enumerate_arc_pictures(m, t))
        for (int a = 0; a < t; ++a) {
          const Arc arc = pic.arcs[a];
          const bool wraps = arc.start > arc.end;
          for (int n = 3; n <= 6; ++n) {
            if (wraps) {
              const int b = std::popcount(pic.support) - 2;
              const int want = n % 2 == 0 ? -1 : ((t + b) % 2 ? -1 : 1);
              CHECK(representative_shift_sign(pic, n, a, 1, m) == want);
            } else {
              CHECK(representative_shift_sign(pic, n, a, arc.start, arc.start + 1) == -1);
            }
          }
        }
}

TEST_CASE("arc complexes square to zero over the integers") {
  for (int m = 4; m <= 12; ++m)
    for (int n = 3; n <= 7; ++n)
      for (int t = 1; t <= m / 3; ++t) CHECK_NOTHROW(build_arc_complex(m, n, t, Ring::Z).chain.check_square_zero());
}

TEST_CASE("mod 2 arc complexes are the cellular chains of Φ") {
  for (int m = 5; m <= 12; ++m)
    for (int t = 1; t <= m / 3; ++t) {
      const auto rep = arc_phi_isomorphism(m, t);
      CHECK_MESSAGE(rep.ok, rep.detail);
      auto a = build_arc_complex(m, 4, t, Ring::Z2);
      auto phi = drop_augmentation(build_phi(t, m, 3).cells.chain);
      for (int d = 0; d <= phi.max_degree(); ++d) CHECK(homology_mod_p(a.chain, 2).at(d) == homology_mod_p(phi, 2).at(d));
    }
}

TEST_CASE("arc cohomology at the E2 coordinates") {
  auto e862 = arc_e2_entries(build_arc_complex(8, 6, 2, Ring::Z));
  CHECK(group_at(e862, 4) == "0");
  CHECK(group_at(e862, 5) == "Z2");
  auto e742 = arc_e2_entries(build_arc_complex(7, 4, 2, Ring::Z));
  CHECK(group_at(e742, 3) == "Z");
  CHECK(group_at(e742, 4) == "Z");
  for (const auto& e : e742) CHECK(e.q == 4);
}

TEST_CASE("arc homology agrees with the table") {
  for (int m = 5; m <= 11; ++m)
    for (int n = 4; n <= 7; ++n)
      for (Ring ring : {Ring::Z, Ring::Z2}) {
        const auto table = e2_table(m, n, ring);
        for (int t = 1; 3 * t <= m; ++t)
          for (const auto& e : arc_e2_entries(build_arc_complex(m, n, t, ring))) {
            if (t == 1 && e.p == m - 2) continue;
            CHECK_MESSAGE(table.group(e.p, e.q) == e.group, "m=", m, " n=", n, " t=", t, " p=", e.p);
          }
      }
}

TEST_CASE("alpha parity") {
  CHECK(alpha_parity(8, 6, 2) == Parity::odd);
  CHECK(alpha_parity(7, 4, 2) == Parity::even);
  CHECK(alpha_parity(6, 4, 1) == Parity::even);
  for (int m = 5; m <= 11; ++m)
    for (int n = 3; n <= 7; ++n)
      for (int t = 1; 3 * t < m; ++t) {
        const auto a = alpha_from_complex(m, n, t);
        CHECK_MESSAGE(a.parity() == alpha_parity(m, n, t), "m=", m, " n=", n, " t=", t);
        const bool odd = (m + t + 1) * (n + 1) % 2 == 1;
        CHECK((alpha_parity(m, n, t) == Parity::odd) == odd);
      }
}

TEST_CASE("E2 tables") {
  const auto z64 = e2_table(6, 4, Ring::Z);
  CHECK(z64.group(3, 2) == "Z");
  CHECK(z64.group(3, 4) == "Z^3");
  CHECK(z64.group(0, 0) == "Z");
  CHECK(z64.group(4, 2) == "0");
  const auto z86 = e2_table(8, 6, Ring::Z);
  CHECK(z86.group(5, 4) == "Z");
  CHECK(z86.group(6, 4) == "0");
  CHECK(z86.group(4, 8) == "0");
  CHECK(z86.group(5, 8) == "Z2");
  CHECK(z86.group(3, 8) == "0");
  const auto f74 = e2_table(7, 4, Ring::Z2);
  std::set<std::pair<int, int>> nonzero;
  for (const auto& e : f74.entries)
    if (e.group != "0") nonzero.insert({e.p, e.q});
  CHECK(nonzero == std::set<std::pair<int, int>>{{0, 0}, {4, 2}, {3, 4}, {4, 4}});
  for (const auto& e : f74.entries) CHECK((e.group == "0" || e.group == "Z2"));
  const auto j = to_json(z64);
  CHECK(j["ring"] == "Z");
  CHECK(j["entries"].size() == z64.entries.size());
}

TEST_CASE("row complexes collapse onto the arc complex") {
  for (auto [m, t] : {std::pair{6, 1}, std::pair{7, 2}, std::pair{7, 1}, std::pair{9, 2}}) {
    const auto row = build_row_complex(m, t);
    const auto matching = row_matching(row);
    REQUIRE(verify_acyclic(row.chain, matching).acyclic);
    const auto reduced = morse_reduce(row.chain, matching, 2);
    const auto arc = build_arc_complex(m, 4, t, Ring::Z2);
    // row degree m-1-|S| is arc degree shifted by t-1
    for (int i = 0; i <= arc.chain.max_degree(); ++i)
      CHECK_MESSAGE(homology_mod_p(reduced.complex, 2).at(i + t - 1) == homology_mod_p(arc.chain, 2).at(i), "m=", m, " t=", t,
                    " i=", i);
  }
}
