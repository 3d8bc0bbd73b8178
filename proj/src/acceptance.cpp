#include "chom/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "chom/arcs.hpp"
#include "chom/errors.hpp"
#include "chom/formulas.hpp"
#include "chom/homspaces.hpp"
#include "chom/torusfront.hpp"

namespace chom {

namespace {

struct Check {
  bool ok = true;
  std::ostringstream note;
  int failures = 0;

  void fail(const std::string& what) {
    if (failures++ < 3) note << (note.tellp() > 0 ? "; " : "") << what;
    ok = false;
  }
};

std::string finish(const Check& c, const std::string& summary) {
  if (c.ok) return summary;
  std::string s = c.note.str();
  if (c.failures > 3) s += "; " + std::to_string(c.failures - 3) + " more";
  return s;
}

Graph random_graph(std::mt19937& rng, int vertices, bool loops) {
  std::bernoulli_distribution edge(0.5), loop(0.2);
  std::vector<Graph::Edge> edges;
  for (int u = 1; u <= vertices; ++u)
    for (int v = u; v <= vertices; ++v)
      if (u == v ? (loops && loop(rng)) : edge(rng)) edges.emplace_back(u, v);
  return Graph(vertices, edges);
}

std::string graph_brief(const Graph& g) {
  std::string s = std::to_string(g.vertex_count()) + ":";
  for (auto [u, v] : g.edges()) s += std::to_string(u) + "-" + std::to_string(v) + ",";
  return s;
}

// ---- 1 ----------------------------------------------------------------------

std::string independence_cycles(Check& c) {
  for (int m = 3; m <= 12; ++m) {
    auto got = graded_from(homology_integer(independence_complex(cycle_graph(m)).chains()));
    auto want = ind_cycle_formula(m);
    if (got != want) c.fail("Ind(C_" + std::to_string(m) + ") = " + describe(got) + ", expected " + describe(want));
  }
  return finish(c, "m = 3..12 agree");
}

// ---- 2 ----------------------------------------------------------------------

std::string homplus_identification(Check& c, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> size(1, 5);
  const BuildLimits limits{200'000};
  int done = 0, resampled = 0;
  while (done < 20) {
    Graph t = random_graph(rng, size(rng), false);
    Graph g = random_graph(rng, size(rng), true);
    try {
      auto a = homology_integer(hom_plus(t, g, limits).cells.chain);
      auto b = homology_integer(independence_complex(categorical_product(t, strong_complement(g)), limits).chains());
      if (!a.same_groups(b))
        c.fail("T=" + graph_brief(t) + " G=" + graph_brief(g) + ": " + describe(a) + " vs " + describe(b));
      ++done;
    } catch (const SizeLimitExceeded&) {
      ++resampled;
    }
  }
  return finish(c, "20 pairs agree (" + std::to_string(resampled) + " oversized pairs resampled)");
}

// ---- 3 ----------------------------------------------------------------------

std::string homplus_closed_form(Check& c) {
  std::string last;
  for (auto [m, n] : std::vector<std::pair<int, int>>{{4, 3}, {5, 3}, {4, 4}, {5, 4}, {6, 4}}) {
    auto got = graded_from(homology_integer(hom_plus(cycle_graph(m), complete_graph(n)).cells.chain));
    auto want = homplus_cycle_formula(m, n);
    if (got != want)
      c.fail("Hom+(C_" + std::to_string(m) + ",K_" + std::to_string(n) + ") = " + describe(got) + ", expected " + describe(want));
    last = describe(got);
  }
  return finish(c, "5 cases agree, (6,4) gives " + last);
}

// ---- 4 ----------------------------------------------------------------------

std::string main_theorem(Check& c) {
  std::string six_four;
  for (auto [m, n] : std::vector<std::pair<int, int>>{{5, 4}, {6, 4}, {7, 4}, {5, 5}, {6, 5}}) {
    auto got = graded_from(to_cohomology(homology_integer(hom_complex(cycle_graph(m), complete_graph(n)).cells.chain)));
    auto want = hom_cycle_cohomology(m, n);
    if (got != want)
      c.fail("H*(Hom(C_" + std::to_string(m) + ",K_" + std::to_string(n) + ")) = " + describe(got) + ", expected " + describe(want));
    if (m == 6 && n == 4) six_four = describe(got);
  }
  if (six_four != "Z(1) + Z^14(2)") c.fail("(6,4) printed as " + six_four);
  return finish(c, "5 cases agree, (6,4) gives " + six_four + "; optional (8,6) check skipped");
}

// ---- 5 ----------------------------------------------------------------------

std::string euler_characteristics(Check& c, std::uint32_t seed) {
  for (int m = 5; m <= 9; ++m)
    for (int n = 4; n <= 5; ++n) {
      BigInt counted = reduced_euler_from_census(hom_cycle_cell_census(m, n));
      if (counted != euler_cycle(m, n))
        c.fail("chi(Hom(C_" + std::to_string(m) + ",K_" + std::to_string(n) + ")) counted " + counted.str() +
               ", formula " + euler_cycle(m, n).str());
    }
  for (auto [m, n] : std::vector<std::pair<int, int>>{{2, 3}, {2, 4}, {3, 3}, {3, 4}, {3, 5}}) {
    BigInt counted = reduced_euler_hom(complete_graph(m), complete_graph(n));
    if (counted != euler_complete(m, n))
      c.fail("chi(Hom(K_" + std::to_string(m) + ",K_" + std::to_string(n) + ")) counted " + counted.str() + ", formula " +
             euler_complete(m, n).str());
  }
  std::mt19937 rng(seed ^ 0x5eedu);
  std::uniform_int_distribution<int> size(1, 4);
  for (int k = 0; k < 20; ++k) {
    Graph t = random_graph(rng, size(rng), false);
    Graph g = random_graph(rng, size(rng), true);
    auto [lhs, rhs] = euler_hom_plus_identity(t, g);
    BigInt direct = reduced_euler_hom(t, g);
    BigInt mobius = euler_hom_via_mobius(t, g);
    if (lhs != rhs) c.fail("plus identity fails for T=" + graph_brief(t) + " G=" + graph_brief(g));
    if (direct != mobius) c.fail("Möbius identity fails for T=" + graph_brief(t) + " G=" + graph_brief(g));
  }
  return finish(c, "10 cycle cases, 5 complete cases and 20 random pairs agree");
}

// ---- 6 ----------------------------------------------------------------------

std::string phi_structure(Check& c) {
  for (auto [m, g] : std::vector<std::pair<int, int>>{{2, 3}, {3, 2}, {2, 4}}) {
    const std::string tag = "(" + std::to_string(m) + "," + std::to_string(g) + ")";
    PhiComplex points = build_phi(m, g * m, g);
    if (points.cells.chain.size(0) != static_cast<std::size_t>(g) || points.cells.dimension() != 0)
      c.fail("Φ_{m,gm,g} for " + tag + " is not " + std::to_string(g) + " points");
    PhiComplex cyc = build_phi(m, g * m + 1, g);
    const std::size_t len = g * m + 1;
    bool is_cycle = cyc.cells.dimension() == 1 && cyc.cells.chain.size(0) == len && cyc.cells.chain.size(1) == len;
    if (is_cycle) {
      std::vector<int> degree(len, 0);
      for (std::uint32_t e = 0; e < len; ++e)
        for (const auto& x : cyc.cells.chain.boundary(1, e)) ++degree[x.index];
      is_cycle = std::all_of(degree.begin(), degree.end(), [](int d) { return d == 2; }) &&
                 split_components(cyc.cells.chain).components.size() == 1;
    }
    if (!is_cycle) c.fail("Φ_{m,gm+1,g} for " + tag + " is not a cycle of length " + std::to_string(len));
  }
  int checked = 0;
  for (int m = 1; m <= 4; ++m)
    for (int g = 1; g <= 3; ++g)
      for (int n = std::max(1, g * m); n <= 14; ++n) {
        PhiComplex phi = build_phi(m, n, g);
        const int want = std::min(m, n - g * m);
        if (phi.cells.dimension() != want)
          c.fail("dim Φ_{" + std::to_string(m) + "," + std::to_string(n) + "," + std::to_string(g) + "} = " +
                 std::to_string(phi.cells.dimension()) + ", expected " + std::to_string(want));
        ++checked;
      }
  return finish(c, "points and cycles as expected; dimension formula holds on " + std::to_string(checked) + " complexes");
}

// ---- 7 ----------------------------------------------------------------------

bool same_betti(const BettiNumbers& a, const BettiNumbers& b) {
  const int lo = std::min(a.min_degree, b.min_degree);
  const int hi = std::max(a.min_degree + static_cast<int>(a.values.size()), b.min_degree + static_cast<int>(b.values.size()));
  for (int d = lo; d < hi; ++d)
    if (a.at(d) != b.at(d)) return false;
  return true;
}

std::string grinding(Check& c) {
  int checked = 0;
  for (int m = 1; m <= 4; ++m)
    for (int g = 1; g <= 3; ++g)
      for (int n = std::max(1, g * m); n <= 14; ++n) {
        const std::string tag = "Φ_{" + std::to_string(m) + "," + std::to_string(n) + "," + std::to_string(g) + "}";
        try {
          const FrontParams p{m, n - m, g, 1};
          FrontComplex tf = build_band_front_complex(p);
          GrindResult gr = grind(tf);
          auto full_z = homology_integer(tf.cells.chain);
          auto thin_z = homology_integer(gr.thin.cells.chain);
          if (!full_z.same_groups(thin_z)) c.fail(tag + ": thin part has " + describe(thin_z) + ", full " + describe(full_z));
          if (!same_betti(homology_mod_p(tf.cells.chain, 2), homology_mod_p(gr.thin.cells.chain, 2))) c.fail(tag + ": Z2 Betti numbers differ");
          if (n >= 3 && !(m == 1 && n == g)) {
            auto phi_z = homology_integer(build_phi(m, n, g).cells.chain);
            if (!phi_z.same_groups(full_z)) c.fail(tag + ": Φ and its front complex differ");
          }
          ThinCensus census = census_thin(gr.thin);
          GarlandDescriptor want = thin_garland(p);
          if (!(census.garland == want))
            c.fail(tag + ": census " + to_json(census.garland).dump() + ", expected " + to_json(want).dump());
          if (!census.antipodal_ok) c.fail(tag + ": " + census.detail);
          ++checked;
        } catch (const std::exception& e) {
          c.fail(tag + ": " + e.what());
        }
      }
  return finish(c, std::to_string(checked) + " complexes ground acyclically onto the expected garlands");
}

// ---- 8 ----------------------------------------------------------------------

std::string arc_complexes(Check& c) {
  int checked = 0;
  for (int m = 6; m <= 10; ++m)
    for (int n = 4; n <= 6; ++n)
      for (int t = 1; t <= m / 3; ++t) {
        const std::string tag = "(m,n,t)=(" + std::to_string(m) + "," + std::to_string(n) + "," + std::to_string(t) + ")";
        try {
          ArcComplex a = build_arc_complex(m, n, t, Ring::Z);  // asserts d∘d = 0
          if (n == 4) {
            ArcIsoReport iso = arc_phi_isomorphism(m, t);
            if (!iso.ok) c.fail(tag + ": " + iso.detail);
          }
          E2Table table = e2_table(m, n, Ring::Z);
          for (const auto& e : arc_e2_entries(a)) {
            if (t == 1 && e.p == m - 2) continue;
            if (table.group(e.p, e.q) != e.group)
              c.fail(tag + ": E2(" + std::to_string(e.p) + "," + std::to_string(e.q) + ") = " + e.group + ", table " +
                     table.group(e.p, e.q));
          }
          if (3 * t < m) {
            AlphaComputation alpha = alpha_from_complex(m, n, t);
            if (alpha.parity() != alpha_parity(m, n, t))
              c.fail(tag + ": α = " + std::to_string(alpha.alpha) + " but the rule says " + to_string(alpha_parity(m, n, t)));
          }
          ++checked;
        } catch (const std::exception& e) {
          c.fail(tag + ": " + e.what());
        }
      }
  return finish(c, std::to_string(checked) + " arc complexes agree");
}

// ---- 9 ----------------------------------------------------------------------

std::string spectral(Check& c) {
  std::string totals;
  for (auto [m, n] : std::vector<std::pair<int, int>>{{5, 4}, {6, 4}}) {
    HomComplex hp = hom_plus(cycle_graph(m), complete_graph(n));
    SpectralPages pages = spectral_pages(filtration_by_support(hp), 2, 2);
    const SpectralPage& e2 = pages.pages[2];
    E2Table table = e2_table(m, n, Ring::Z2);
    auto dim_of = [](const std::string& g) -> std::size_t {
      if (g == "0") return 0;
      if (g == "Z2") return 1;
      return std::stoul(g.substr(3));  // "Z2^k"
    };
    std::set<std::pair<int, int>> cells;
    for (const auto& e : e2.entries) cells.insert({e.p, e.q});
    for (const auto& e : table.entries) cells.insert({e.p, e.q});
    for (auto [p, q] : cells) {
      if (p > m - 2) continue;
      if (e2.dim(p, q) != dim_of(table.group(p, q)))
        c.fail("(" + std::to_string(m) + "," + std::to_string(n) + ") E2(" + std::to_string(p) + "," + std::to_string(q) +
               ") has dimension " + std::to_string(e2.dim(p, q)) + ", expected " + table.group(p, q));
    }
    std::size_t total = 0;
    for (const auto& e : pages.infinity.entries) total += e.dim;
    std::size_t want = 1;
    for (const auto& g : homplus_cycle_formula(m, n)) want += g.free_rank;
    if (total != want)
      c.fail("(" + std::to_string(m) + "," + std::to_string(n) + ") E_inf total " + std::to_string(total) + ", expected " +
             std::to_string(want));
    totals += (totals.empty() ? "" : ", ") + std::to_string(total);
  }
  return finish(c, "E2 columns p <= m-2 agree; E_inf totals " + totals);
}

// ---- 10 ---------------------------------------------------------------------

std::string cycle_maps(Check& c) {
  int components = 0;
  for (auto [m, n] : std::vector<std::pair<int, int>>{{5, 3}, {6, 3}, {7, 3}, {6, 6}, {5, 5}})
    for (int w : admissible_windings(m, n)) {
      const std::string tag = "(m,n,w)=(" + std::to_string(m) + "," + std::to_string(n) + "," + std::to_string(w) + ")";
      try {
        CycleComponent cc = cycle_component(m, n, w);
        for (const auto& part : split_components(cc.hom_part.chain).components) {
          auto h = graded_from(homology_integer(part));
          const bool point = h.empty();
          const bool circle = h.size() == 1 && h[0].dim == 1 && h[0].free_rank == 1 && h[0].torsion.empty();
          if (!point && !circle) c.fail(tag + ": a component has " + describe(h));
          ++components;
        }
        GarlandDescriptor total;
        std::set<int> dims;
        for (const auto& f : cc.fronts) {
          ThinCensus census = census_thin(grind(f).thin);
          if (!census.antipodal_ok) c.fail(tag + ": " + census.detail);
          total.cube_count += census.garland.cube_count;
          total.circle_count += census.garland.circle_count;
          total.degenerate = census.garland.degenerate;
          dims.insert(census.garland.cube_dim);
        }
        total.cube_dim = dims.size() == 1 ? *dims.begin() : -1;
        GarlandDescriptor want = cycle_map_garland(m, n, cc.r);
        if (!(total == want)) c.fail(tag + ": census " + to_json(total).dump() + ", expected " + to_json(want).dump());
      } catch (const std::exception& e) {
        c.fail(tag + ": " + e.what());
      }
    }
  return finish(c, std::to_string(components) + " components are points or circles; garlands agree");
}

struct Criterion {
  int id;
  const char* name;
  std::int64_t budget_millis;
  std::function<std::string(Check&, std::uint32_t)> body;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {1, "independence complexes of cycles", 1'000, [](Check& c, std::uint32_t) { return independence_cycles(c); }},
      {2, "Hom+ as an independence complex", 30'000, [](Check& c, std::uint32_t s) { return homplus_identification(c, s); }},
      {3, "Hom+ closed form", 300'000, [](Check& c, std::uint32_t) { return homplus_closed_form(c); }},
      {4, "cohomology of Hom(C_m,K_n)", 600'000, [](Check& c, std::uint32_t) { return main_theorem(c); }},
      {5, "Euler characteristics", 300'000, [](Check& c, std::uint32_t s) { return euler_characteristics(c, s); }},
      {6, "structure of Φ", 10'000, [](Check& c, std::uint32_t) { return phi_structure(c); }},
      {7, "grinding", 60'000, [](Check& c, std::uint32_t) { return grinding(c); }},
      {8, "arc complexes", 120'000, [](Check& c, std::uint32_t) { return arc_complexes(c); }},
      {9, "spectral pages", 300'000, [](Check& c, std::uint32_t) { return spectral(c); }},
      {10, "maps between cycles", 120'000, [](Check& c, std::uint32_t) { return cycle_maps(c); }},
  };
  return list;
}

}  // namespace

int acceptance_criterion_count() { return static_cast<int>(criteria().size()); }

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  std::vector<CriterionResult> out;
  for (const auto& cr : criteria()) {
    if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), cr.id) == options.only.end()) continue;
    CriterionResult r{cr.id, cr.name, false, "", 0, cr.budget_millis};
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      r.detail = cr.body(check, options.seed);
      r.passed = check.ok;
    } catch (const std::exception& e) {
      r.detail = std::string("error: ") + e.what();
      r.passed = false;
    }
    r.millis = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    if (r.passed && r.millis > r.budget_millis) {
      r.passed = false;
      r.detail += " (over the time budget)";
    }
    if (options.progress) options.progress(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream s;
  s << (r.passed ? "PASS" : "FAIL") << ' ';
  if (r.id < 10) s << ' ';
  s << r.id << ' ' << r.name << " [" << r.millis << " ms / " << r.budget_millis << " ms] " << r.detail;
  return s.str();
}

}  // namespace chom
