#include <doctest.h>

#include <bit>
#include <random>
#include <set>
#include <unordered_map>

#include "chom/errors.hpp"
#include "chom/homology.hpp"
#include "chom/homspaces.hpp"
#include "chom/morse.hpp"
#include "chom/spectral.hpp"
#include "chom/torusfront.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace chom;
using testing_support::polygon;
using testing_support::random_graph;

namespace {

ChainComplex torsion_two() {
  ChainComplex c(false);
  c.add_cell(0, {});
  c.add_cell(1, {{0, 2}});
  return c;
}

// Six-vertex triangulation of the projective plane.
ChainComplex projective_plane() {
  SimplicialComplex k;
  k.vertex_count = 6;
  const int tri[10][3] = {{1, 2, 3}, {1, 3, 4}, {1, 4, 5}, {1, 5, 6}, {1, 2, 6},
                          {2, 3, 5}, {3, 4, 6}, {2, 4, 5}, {3, 5, 6}, {2, 4, 6}};
  std::set<std::uint64_t> faces;
  for (const auto& t : tri)
    for (int s = 1; s < 8; ++s) {
      std::uint64_t mask = 0;
      for (int i = 0; i < 3; ++i)
        if (s >> i & 1) mask |= std::uint64_t{1} << (t[i] - 1);
      faces.insert(mask);
    }
  k.faces.assign(4, {});
  k.faces[0].push_back(0);
  for (auto f : faces) k.faces[std::popcount(f)].push_back(f);
  return k.chains();
}

std::vector<ChainComplex> sample_complexes() {
  std::vector<ChainComplex> out{polygon(6), polygon(5, false), torsion_two(), projective_plane(),
                                build_phi(2, 7, 3).cells.chain, build_phi(3, 8, 2).cells.chain,
                                hom_complex(complete_graph(2), complete_graph(3)).cells.chain,
                                hom_complex(cycle_graph(5), complete_graph(3)).cells.chain};
  std::mt19937 rng(505);
  for (int i = 0; i < 12; ++i) out.push_back(independence_complex(random_graph(rng, 4 + i % 5, false, 30)).chains());
  return out;
}

}  // namespace

TEST_CASE("integer homology of small complexes") {
  const auto hex = homology_integer(polygon(6));
  CHECK(hex.reduced);
  CHECK(hex.betti(0) == 0);
  CHECK(hex.betti(1) == 1);
  CHECK(hex.torsion(1).empty());

  const auto t = homology_integer(torsion_two());
  CHECK(t.betti(0) == 0);
  CHECK(t.torsion(0) == std::vector<std::int64_t>{2});
  CHECK(t.betti(1) == 0);

  const auto phi = homology_integer(build_phi(2, 6, 3).cells.chain);
  CHECK(phi.betti(0) == 2);
  CHECK(describe(phi) == "Z^2(0)");

  const auto rp2 = homology_integer(projective_plane());
  CHECK(rp2.betti(1) == 0);
  CHECK(rp2.torsion(1) == std::vector<std::int64_t>{2});
  CHECK(rp2.betti(2) == 0);
}

TEST_CASE("torsion lists are in divisibility order") {
  ChainComplex c(false);
  for (int i = 0; i < 3; ++i) c.add_cell(0, {});
  c.add_cell(1, {{0, 4}, {1, 6}});
  c.add_cell(1, {{1, 6}, {2, 10}});
  const auto h = homology_integer(c);
  const auto tors = h.torsion(0);
  for (std::size_t i = 1; i < tors.size(); ++i) CHECK(tors[i] % tors[i - 1] == 0);
  // determinantal divisors of [[4,0],[6,6],[0,10]]: gcd of entries 2, gcd of 2x2 minors 4
  CHECK(tors == std::vector<std::int64_t>{2, 2});
  CHECK(h.betti(0) == 1);
}

TEST_CASE("boundary that does not square to zero is rejected") {
  ChainComplex c(false);
  c.add_cell(0, {});
  c.add_cell(0, {});
  c.add_cell(1, {{0, 1}, {1, -1}});
  c.add_cell(2, {{0, 1}});
  CHECK_THROWS_AS(c.check_square_zero(), ContractViolation);
  CHECK_THROWS_AS(homology_integer(c), ContractViolation);
}

TEST_CASE("homology mod p") {
  const auto t2 = homology_mod_p(torsion_two(), 2);
  CHECK(t2.at(0) == 1);
  CHECK(t2.at(1) == 1);
  const auto t3 = homology_mod_p(torsion_two(), 3);
  CHECK(t3.at(0) == 0);
  CHECK(t3.at(1) == 0);
  CHECK(homology_mod_p(polygon(6), 2).at(1) == 1);
  CHECK_THROWS_AS(homology_mod_p(polygon(6), 4), InvalidParameter);
}

TEST_CASE("Betti numbers agree with a dense oracle and with universal coefficients") {
  for (const auto& c : sample_complexes()) {
    const auto h = homology_integer(c);
    for (int p : {2, 3, 5}) {
      const auto b = homology_mod_p(c, p);
      for (int d = c.min_degree(); d <= c.max_degree(); ++d) {
        CHECK(b.at(d) == oracle::betti_mod(c, d, p));
        std::size_t uct = h.betti(d);
        for (auto x : h.torsion(d)) uct += x % p == 0;
        for (auto x : h.torsion(d - 1)) uct += x % p == 0;
        CHECK(b.at(d) == uct);
        CHECK(mod_p_from_integer(h, p).at(d) == b.at(d));
      }
    }
    for (int d = c.min_degree(); d <= c.max_degree(); ++d) CHECK(h.betti(d) == oracle::betti_mod(c, d, 1000003));
  }
}

TEST_CASE("Euler characteristic") {
  CHECK(euler_characteristic(polygon(6)) == -1);
  CHECK(euler_characteristic(polygon(6, false)) == 0);
  CHECK(euler_characteristic(build_phi(2, 6, 3).cells.chain) == 2);
  // cone over a hexagon: apex joined to every cell
  ChainComplex cone(true);
  for (int i = 0; i < 7; ++i) cone.add_cell(0, {{0, 1}});
  for (std::uint32_t e = 0; e < 6; ++e) cone.add_cell(1, {{(e + 1) % 6, 1}, {e, -1}});
  for (std::uint32_t v = 0; v < 6; ++v) cone.add_cell(1, {{6, 1}, {v, -1}});
  for (std::uint32_t e = 0; e < 6; ++e) cone.add_cell(2, {{e, 1}, {6 + (e + 1) % 6, 1}, {6 + e, -1}});
  cone.check_square_zero();
  CHECK(euler_characteristic(cone) == 0);
  CHECK(homology_integer(cone).nonzero().empty());
  for (const auto& c : sample_complexes()) {
    std::int64_t alt = 0;
    for (int d = c.min_degree(); d <= c.max_degree(); ++d) alt += (d % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(c.size(d));
    CHECK(euler_characteristic(c) == alt);
  }
}

TEST_CASE("Morse reduction of an interval") {
  ChainComplex c(true);
  c.add_cell(0, {{0, 1}});
  c.add_cell(0, {{0, 1}});
  c.add_cell(1, {{1, 1}, {0, -1}});
  MorseMatching m{{{{0, 1}, {1, 0}, 1}}};
  CHECK(verify_acyclic(c, m).acyclic);
  const auto r = morse_reduce(c, m);
  CHECK(r.complex.size(0) == 1);
  CHECK(r.complex.size(1) == 0);
  CHECK(r.critical[1] == std::vector<std::uint32_t>{0});
  CHECK(homology_integer(r.complex).same_groups(homology_integer(c)));
}

TEST_CASE("acyclicity check") {
  const auto square = polygon(4);
  CHECK(verify_acyclic(square, {}).acyclic);
  // edges e0=(v0,v1), e1=(v1,v2), e2=(v2,v3), e3=(v3,v0); matching v1-e0 and v0-e3 plus v3-e2 and v2-e1 cycles
  MorseMatching cyc{{{{0, 1}, {1, 0}, 1}, {{0, 2}, {1, 1}, 1}, {{0, 3}, {1, 2}, 1}, {{0, 0}, {1, 3}, 1}}};
  const auto rep = verify_acyclic(square, cyc);
  CHECK_FALSE(rep.acyclic);
  CHECK(rep.witness.size() == 8);
  MorseMatching two{{{{0, 1}, {1, 0}, 1}, {{0, 0}, {1, 3}, 1}}};
  // v1 up to e0, down to v0, up to e3, down to v3: no return to v1
  CHECK(verify_acyclic(square, two).acyclic);
  MorseMatching wrong_sign{{{{0, 1}, {1, 1}, 1}}};
  CHECK_THROWS_AS(verify_acyclic(square, wrong_sign), ContractViolation);
  MorseMatching bad{{{{0, 1}, {1, 0}, 1}, {{0, 1}, {1, 1}, -1}}};
  CHECK_THROWS_AS(verify_acyclic(square, bad), ContractViolation);
  CHECK_THROWS_AS(morse_reduce(square, bad), ContractViolation);
}

TEST_CASE("random acyclic matchings preserve homology") {
  // Matchings built from a lexicographic vertex order: pair each simplex not containing
  // the smallest vertex with its cone; acyclic for any simplicial cone-like complex.
  std::mt19937 rng(606);
  for (int trial = 0; trial < 30; ++trial) {
    Graph g = random_graph(rng, 5 + trial % 4, false, 35);
    SimplicialComplex k = independence_complex(g);
    ChainComplex c = k.chains();
    std::vector<std::unordered_map<std::uint64_t, std::uint32_t>> where(k.faces.size());
    for (std::size_t s = 0; s < k.faces.size(); ++s)
      for (std::uint32_t i = 0; i < k.faces[s].size(); ++i) where[s][k.faces[s][i]] = i;
    // pick a vertex v; pair σ with σ ∪ {v} whenever both are faces and v ∉ σ
    const int v = 1 + static_cast<int>(rng() % g.vertex_count());
    const std::uint64_t bit = std::uint64_t{1} << (v - 1);
    MorseMatching m;
    for (std::size_t s = 0; s + 1 < k.faces.size(); ++s)
      for (std::uint32_t i = 0; i < k.faces[s].size(); ++i) {
        const auto f = k.faces[s][i];
        if (f & bit) continue;
        auto it = where[s + 1].find(f | bit);
        if (it == where[s + 1].end()) continue;
        const int deg = static_cast<int>(s) - 1;
        std::int64_t coef = 0;
        for (const auto& e : c.boundary(deg + 1, it->second))
          if (e.index == i) coef = e.value;
        m.pairs.push_back({{deg, i}, {deg + 1, it->second}, coef});
      }
    REQUIRE(verify_acyclic(c, m).acyclic);
    const auto r = morse_reduce(c, m);
    r.complex.check_square_zero();
    CHECK(homology_integer(r.complex).same_groups(homology_integer(c)));
    const auto r2 = morse_reduce(c, m, 2);
    for (int d = c.min_degree(); d <= c.max_degree(); ++d) CHECK(homology_mod_p(r2.complex, 2).at(d) == homology_mod_p(c, 2).at(d));
  }
}

TEST_CASE("spectral pages with a single level") {
  for (const auto& c0 : sample_complexes()) {
    ChainComplex c = drop_augmentation(c0);
    FilteredChainComplex f{c, {}};
    for (int d = c.min_degree(); d <= c.max_degree(); ++d) f.level.emplace_back(c.size(d), 0);
    const auto pages = spectral_pages(f, 2, 3);
    const auto b = homology_mod_p(c, 2);
    for (int d = 0; d <= c.max_degree(); ++d) {
      CHECK(pages.pages[0].dim(0, d) == c.size(d));
      CHECK(pages.pages[1].dim(0, d) == b.at(d));
      CHECK(pages.infinity.dim(0, d) == b.at(d));
    }
  }
}

TEST_CASE("spectral pages of vertex filtrations") {
  std::mt19937 rng(707);
  for (int trial = 0; trial < 25; ++trial) {
    SimplicialComplex k = independence_complex(random_graph(rng, 5 + trial % 4, false, 30));
    FilteredChainComplex f{drop_augmentation(k.chains()), {}};
    for (std::size_t s = 1; s < k.faces.size(); ++s) {
      std::vector<int> lv;
      for (auto face : k.faces[s]) lv.push_back(63 - std::countl_zero(face));
      f.level.push_back(lv);
    }
    const int top = k.vertex_count;
    const auto pages = spectral_pages(f, 2, top + 1);
    const ChainComplex& c = f.complex;
    // E1 is the homology of each graded piece
    for (int p = 0; p < top; ++p) {
      ChainComplex piece(false);
      std::vector<std::vector<std::int64_t>> local(c.max_degree() + 1);
      for (int d = 0; d <= c.max_degree(); ++d) {
        local[d].assign(c.size(d), -1);
        for (std::uint32_t j = 0; j < c.size(d); ++j) {
          if (f.level_of(d, j) != p) continue;
          SparseColumn col;
          if (d > 0)
            for (const auto& e : c.boundary(d, j))
              if (local[d - 1][e.index] >= 0) col.push_back({static_cast<std::uint32_t>(local[d - 1][e.index]), e.value});
          local[d][j] = piece.add_cell(d, col);
        }
      }
      for (int d = 0; d <= c.max_degree(); ++d) CHECK(pages.pages[1].dim(p, d - p) == oracle::betti_mod(piece, d, 2));
    }
    // the limit page adds up to the total Betti numbers; past the length the pages stop moving
    const auto b = homology_mod_p(c, 2);
    for (int d = 0; d <= c.max_degree(); ++d) {
      std::size_t total = 0;
      for (const auto& e : pages.infinity.entries)
        if (e.p + e.q == d) total += e.dim;
      CHECK(total == b.at(d));
    }
    CHECK(pages.pages[top + 1].entries.size() == pages.infinity.entries.size());
  }
}

TEST_CASE("support filtration pages of Hom+(C_m, K_4)") {
  auto e2 = [](int m) {
    auto hp = hom_plus(cycle_graph(m), complete_graph(4));
    return spectral_pages(filtration_by_support(hp), 2, 2).pages[2];
  };
  const auto p5 = e2(5);
  for (const auto& e : p5.entries) {
    if (e.p > 3) continue;
    const bool expected = (e.p == 0 && e.q == 0) || (e.p == 2 && e.q == 2);
    CHECK_MESSAGE(expected, "unexpected entry at (", e.p, ",", e.q, ")");
  }
  CHECK(p5.dim(0, 0) == 1);
  CHECK(p5.dim(2, 2) == 1);
  CHECK(e2(6).dim(3, 4) == 3);
}

TEST_CASE("filtration violations are rejected") {
  ChainComplex c = polygon(3, false);
  FilteredChainComplex f{c, {{1, 1, 1}, {0, 0, 0}}};
  CHECK_THROWS_AS(spectral_pages(f, 2, 2), ContractViolation);
}
