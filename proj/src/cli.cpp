#include "chom/cli.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "chom/acceptance.hpp"
#include "chom/arcs.hpp"
#include "chom/errors.hpp"
#include "chom/formulas.hpp"
#include "chom/homspaces.hpp"
#include "chom/spectral.hpp"
#include "chom/torusfront.hpp"

namespace chom::cli {

namespace {

using nlohmann::json;

struct Table {
  std::vector<std::string> headers;
  std::vector<std::vector<std::string>> rows;
};

struct Report {
  std::vector<std::string> notes;  // printed above the table in table format
  Table table;
  json doc;
  bool failed = false;
};

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

void print(const Report& r, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << r.doc.dump(2) << '\n';
    return;
  }
  const auto& t = r.table;
  if (format == "csv") {
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << csv_cell(cells[i]);
      out << '\n';
    };
    if (!t.headers.empty()) line(t.headers);
    for (const auto& row : t.rows) line(row);
    return;
  }
  for (const auto& n : r.notes) out << n << '\n';
  if (t.headers.empty() && t.rows.empty()) return;
  std::vector<std::size_t> width(t.headers.size(), 0);
  auto widen = [&](const std::vector<std::string>& cells) {
    if (width.size() < cells.size()) width.resize(cells.size(), 0);
    for (std::size_t i = 0; i < cells.size(); ++i) width[i] = std::max(width[i], cells[i].size());
  };
  widen(t.headers);
  for (const auto& row : t.rows) widen(row);
  auto line = [&](const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      s += cells[i];
      if (i + 1 < cells.size()) s += std::string(width[i] - cells[i].size() + 2, ' ');
    }
    out << s << '\n';
  };
  if (!t.headers.empty()) line(t.headers);
  for (const auto& row : t.rows) line(row);
}

json exact(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

std::string join(const std::vector<std::int64_t>& v, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
  return s;
}

std::vector<int> parse_range(const std::string& text) {
  auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty()) throw InvalidParameter("not an integer or range: " + text);
    return v;
  };
  std::vector<int> out;
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    out.push_back(to_int(text));
  } else {
    const int lo = to_int(text.substr(0, dots)), hi = to_int(text.substr(dots + 2));
    if (hi < lo) throw InvalidParameter("empty range " + text);
    for (int v = lo; v <= hi; ++v) out.push_back(v);
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameter("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Options shared by the subcommands; `given` tells which were set.
struct Params {
  int m = 0, n = 0, g = 1, w = 0, t = 0, r = 0, i = 0;
  int north = 0, east = 0, gap = 1, band = 1;
  std::string source, target, graph_file, target_graph_file;
  std::string coeff = "Z";
  std::string ring = "Z";
  std::string method = "closed-form";
  std::string m_range, n_range, g_range;
  int page = 2;
  bool reduced = false, cohomology = false;
  std::multimap<std::string, CLI::Option*> opt;  // one entry per subcommand

  bool given(const std::string& name) const {
    auto [lo, hi] = opt.equal_range(name);
    for (auto it = lo; it != hi; ++it)
      if (it->second->count() > 0) return true;
    return false;
  }
  int need(const std::string& name, int value) const {
    if (!given(name)) throw InvalidParameter("missing option " + std::string(name.size() == 1 ? "-" : "--") + name);
    return value;
  }
};

Graph source_graph(const Params& p) {
  if (!p.graph_file.empty()) return parse_graph(read_file(p.graph_file));
  if (!p.source.empty()) return parse_standard_spec(p.source);
  return cycle_graph(p.need("m", p.m));
}

Graph target_graph(const Params& p) {
  if (!p.target_graph_file.empty()) return parse_graph(read_file(p.target_graph_file));
  if (!p.target.empty()) return parse_standard_spec(p.target);
  return complete_graph(p.need("n", p.n));
}

Ring parse_ring(const std::string& s) {
  if (s == "Z") return Ring::Z;
  if (s == "Z2") return Ring::Z2;
  throw InvalidParameter("ring must be Z or Z2");
}

void guard(std::size_t cells, std::size_t max_cells, const std::string& what) {
  if (cells > max_cells) throw SizeLimitExceeded(what + " has more cells than allowed", max_cells, cells);
}

std::vector<std::string> counts_row(const ChainComplex& c) {
  std::vector<std::string> s;
  for (int d = 0; d <= c.max_degree(); ++d) s.push_back(std::to_string(c.size(d)));
  return s;
}

json counts_json(const ChainComplex& c) {
  json a = json::array();
  for (int d = 0; d <= c.max_degree(); ++d) a.push_back(c.size(d));
  return a;
}

// ---- homology ------------------------------------------------------------------

Report cmd_homology(const std::string& kind, const Params& p, std::size_t max_cells) {
  const BuildLimits limits{max_cells};
  ChainComplex chain;
  std::string name;
  if (kind == "hom" || kind == "homplus") {
    Graph t = source_graph(p), g = target_graph(p);
    chain = (kind == "hom" ? hom_complex(t, g, limits) : hom_plus(t, g, limits)).cells.chain;
    name = kind + "(T=" + std::to_string(t.vertex_count()) + " vertices, G=" + std::to_string(g.vertex_count()) + " vertices)";
  } else if (kind == "ind") {
    Graph g = source_graph(p);
    chain = independence_complex(g, limits).chains();
    name = "ind(" + std::to_string(g.vertex_count()) + " vertices)";
  } else if (kind == "phi") {
    PhiComplex phi = build_phi(p.need("m", p.m), p.need("n", p.n), p.g);
    chain = phi.cells.chain;
    name = "phi(" + std::to_string(p.m) + "," + std::to_string(p.n) + "," + std::to_string(p.g) + ")";
  } else if (kind == "front") {
    FrontParams fp{p.need("north", p.north), p.need("east", p.east), p.gap, p.band};
    chain = build_band_front_complex(fp).cells.chain;
    name = "front(" + std::to_string(fp.north) + "," + std::to_string(fp.east) + ",gap " + std::to_string(fp.gap) + ",band " +
           std::to_string(fp.band) + ")";
  } else {
    const int m = p.need("m", p.m), n = p.need("n", p.n);
    if (p.given("w")) {
      chain = cycle_component(m, n, p.w).hom_part.chain;
      name = "cyclemap(" + std::to_string(m) + "," + std::to_string(n) + ",w=" + std::to_string(p.w) + ")";
    } else {
      chain = hom_complex(cycle_graph(m), cycle_graph(n), limits).cells.chain;
      name = "cyclemap(" + std::to_string(m) + "," + std::to_string(n) + ")";
    }
  }
  std::size_t total = 0;
  for (int d = 0; d <= chain.max_degree(); ++d) total += chain.size(d);
  guard(total, max_cells, name);
  if (!p.reduced) chain = drop_augmentation(chain);

  Report r;
  r.doc = {{"complex", name}, {"cells", counts_json(chain)}, {"reduced", p.reduced}, {"coefficients", p.coeff}};
  r.notes.push_back("complex  " + name);
  std::string cells;
  for (const auto& s : counts_row(chain)) cells += (cells.empty() ? "" : " ") + s;
  r.notes.push_back("cells    " + cells);
  if (p.coeff == "Z") {
    HomologyResult h = homology_integer(chain);
    if (p.cohomology) h = to_cohomology(h);
    r.doc["homology"] = to_json(h);
    r.notes.push_back(std::string(p.cohomology ? "cohomology " : "homology ") + describe(h));
    r.table.headers = {"dim", "betti", "torsion"};
    for (const auto& g : h.groups)
      r.table.rows.push_back({std::to_string(g.degree), std::to_string(g.betti), g.torsion.empty() ? "-" : join(g.torsion, ";")});
  } else {
    int prime = 0;
    try {
      prime = std::stoi(p.coeff);
    } catch (const std::exception&) {
      throw InvalidParameter("--coeff must be Z or a prime");
    }
    if (!is_prime(prime)) throw InvalidParameter("--coeff must be Z or a prime");
    BettiNumbers b = homology_mod_p(chain, prime);
    json arr = json::array();
    r.table.headers = {"dim", "betti"};
    for (std::size_t k = 0; k < b.values.size(); ++k) {
      const int d = b.min_degree + static_cast<int>(k);
      arr.push_back({{"dim", d}, {"betti", b.values[k]}});
      r.table.rows.push_back({std::to_string(d), std::to_string(b.values[k])});
    }
    r.doc["betti"] = arr;
  }
  return r;
}

// ---- closed forms --------------------------------------------------------------

Report graded_report(const std::string& op, const GradedGroupList& g) {
  Report r;
  r.doc = {{"op", op}, {"groups", to_json(g)}, {"text", describe(g)}};
  r.notes.push_back(op + ": " + describe(g));
  r.table.headers = {"dim", "free_rank", "torsion"};
  for (const auto& x : g) r.table.rows.push_back({std::to_string(x.dim), std::to_string(x.free_rank), x.torsion.empty() ? "-" : join(x.torsion, ";")});
  return r;
}

Report value_report(const std::string& op, const json& v) {
  Report r;
  r.doc = {{"value", v}};
  const std::string text = v.is_string() ? v.get<std::string>() : v.dump();
  r.table.headers = {"op", "value"};
  r.table.rows.push_back({op, text});
  return r;
}

Report e2_report(const E2Table& t) {
  Report r;
  r.doc = to_json(t);
  r.table.headers = {"p", "q", "group"};
  for (const auto& e : t.entries) r.table.rows.push_back({std::to_string(e.p), std::to_string(e.q), e.group});
  return r;
}

Report garland_report(const GarlandDescriptor& g) {
  Report r;
  r.doc = to_json(g);
  r.table.headers = {"cubes", "dim", "circles", "degenerate"};
  r.table.rows.push_back({std::to_string(g.cube_count), std::to_string(g.cube_dim), std::to_string(g.circle_count),
                          g.degenerate ? "yes" : "no"});
  return r;
}

Report cmd_closed_form(const std::string& op, const Params& p) {
  if (op == "ind-cycle") return graded_report(op, ind_cycle_formula(p.need("m", p.m)));
  if (op == "homplus-cycle") return graded_report(op, homplus_cycle_formula(p.need("m", p.m), p.need("n", p.n)));
  if (op == "hom-cycle") return graded_report(op, hom_cycle_cohomology(p.need("m", p.m), p.need("n", p.n)));
  if (op == "vanishing") return value_report(op, to_string(vanishing_check(p.need("m", p.m), p.need("n", p.n), p.need("i", p.i))));
  if (op == "euler-complete") return value_report(op, exact(euler_complete(p.need("m", p.m), p.need("n", p.n))));
  if (op == "euler-cycle") return value_report(op, exact(euler_cycle(p.need("m", p.m), p.need("n", p.n))));
  if (op == "euler-kn") return value_report(op, exact(euler_hom_kn(source_graph(p), p.need("n", p.n))));
  if (op == "e2") return e2_report(e2_table(p.need("m", p.m), p.need("n", p.n), parse_ring(p.ring)));
  if (op == "alpha") return value_report(op, to_string(alpha_parity(p.need("m", p.m), p.need("n", p.n), p.need("t", p.t))));
  if (op == "thin-garland")
    return garland_report(thin_garland({p.need("north", p.north), p.need("east", p.east), p.gap, p.band}));
  return garland_report(cycle_map_garland(p.need("m", p.m), p.need("n", p.n), p.need("r", p.r)));
}

// ---- euler -----------------------------------------------------------------------

Report cmd_euler(const std::string& kind, const Params& p, std::size_t max_cells) {
  const BuildLimits limits{max_cells};
  std::vector<BigInt> counts;
  if (kind == "cycle") {
    counts = hom_cycle_cell_census(p.need("m", p.m), p.need("n", p.n));
  } else {
    ChainComplex c;
    if (kind == "ind") {
      c = independence_complex(source_graph(p), limits).chains();
    } else {
      Graph t = source_graph(p), g = target_graph(p);
      c = (kind == "hom" ? hom_complex(t, g, limits) : hom_plus(t, g, limits)).cells.chain;
    }
    for (int d = 0; d <= c.max_degree(); ++d) counts.push_back(c.size(d));
  }
  const BigInt chi = reduced_euler_from_census(counts);
  Report r;
  json arr = json::array();
  for (const auto& x : counts) arr.push_back(exact(x));
  r.doc = {{"cells", arr}, {"reduced_euler", exact(chi)}};
  r.notes.push_back("reduced euler characteristic " + chi.str());
  r.table.headers = {"dim", "cells"};
  for (std::size_t d = 0; d < counts.size(); ++d) r.table.rows.push_back({std::to_string(d), counts[d].str()});
  return r;
}

// ---- grind -------------------------------------------------------------------------

Report cmd_grind(const Params& p, std::size_t max_cells) {
  FrontParams fp;
  if (p.given("north") || p.given("east")) {
    fp = {p.need("north", p.north), p.need("east", p.east), p.gap, p.band};
  } else {
    const int m = p.need("m", p.m), n = p.need("n", p.n);
    if (n < m) throw InvalidParameter("grind needs n >= m");
    fp = {m, n - m, p.g, 1};
  }
  FrontComplex tf = build_band_front_complex(fp);
  guard(tf.cells.cell_count(), max_cells, "front complex");
  GrindResult gr = grind(tf);
  ThinCensus census = census_thin(gr.thin);
  Report r;
  r.doc = {{"params", {{"north", fp.north}, {"east", fp.east}, {"gap", fp.gap}, {"band", fp.band}}},
           {"cells", tf.cells.cell_count()},
           {"removed", gr.removed_cells},
           {"thin_cells", gr.thin.cells.cell_count()},
           {"trace", gr.trace},
           {"census", to_json(census.garland)},
           {"antipodal_ok", census.antipodal_ok}};
  r.notes = gr.trace;
  r.notes.push_back("removed " + std::to_string(gr.removed_cells) + " of " + std::to_string(tf.cells.cell_count()) + " cells");
  r.table.headers = {"cubes", "dim", "circles", "antipodal"};
  r.table.rows.push_back({std::to_string(census.garland.cube_count), std::to_string(census.garland.cube_dim),
                          std::to_string(census.garland.circle_count), census.antipodal_ok ? "yes" : "no"});
  try {
    GarlandDescriptor want = thin_garland(fp);
    r.doc["expected"] = to_json(want);
    if (!(want == census.garland) || !census.antipodal_ok) {
      r.failed = true;
      r.notes.push_back("MISMATCH expected " + to_json(want).dump() + " got " + to_json(census.garland).dump());
    }
  } catch (const UnsupportedParameter&) {
  }
  return r;
}

// ---- e2 ------------------------------------------------------------------------------

Report cmd_e2(const Params& p, std::size_t max_cells) {
  const int m = p.need("m", p.m), n = p.need("n", p.n);
  const Ring ring = parse_ring(p.ring);
  if (p.method == "closed-form") return e2_report(e2_table(m, n, ring));
  if (ring != Ring::Z2) throw InvalidParameter("spectral pages are computed over Z2 only");
  HomComplex hp = hom_plus(cycle_graph(m), complete_graph(n), BuildLimits{max_cells});
  SpectralPages pages = spectral_pages(filtration_by_support(hp), 2, std::max(p.page, 0));
  const SpectralPage& page = pages.pages[p.page];
  Report r;
  r.doc = {{"m", m}, {"n", n}, {"ring", "Z2"}, {"page", to_json(page)}};
  r.table.headers = {"p", "q", "dim"};
  for (const auto& e : page.entries) r.table.rows.push_back({std::to_string(e.p), std::to_string(e.q), std::to_string(e.dim)});
  if (p.method == "both") {
    E2Table table = e2_table(m, n, Ring::Z2);
    std::set<std::pair<int, int>> cells;
    for (const auto& e : page.entries) cells.insert({e.p, e.q});
    for (const auto& e : table.entries) cells.insert({e.p, e.q});
    json diff = json::array();
    for (auto [a, b] : cells) {
      if (a > m - 2) continue;
      const std::string g = table.group(a, b);
      const std::size_t want = g == "0" ? 0 : g == "Z2" ? 1 : std::stoul(g.substr(3));
      if (page.dim(a, b) != want) {
        diff.push_back({{"p", a}, {"q", b}, {"spectral", page.dim(a, b)}, {"closed_form", g}});
        r.notes.push_back("MISMATCH at (" + std::to_string(a) + "," + std::to_string(b) + "): spectral " +
                          std::to_string(page.dim(a, b)) + ", closed form " + g);
      }
    }
    r.doc["mismatches"] = diff;
    r.failed = !diff.empty();
    if (!r.failed) r.notes.push_back("PASS columns p <= " + std::to_string(m - 2) + " agree with the closed form");
  }
  return r;
}

// ---- crosscheck ------------------------------------------------------------------------

struct CrossRow {
  bool pass;
  std::string params, expected, got;
};

Report cmd_crosscheck(const std::string& target, const Params& p, std::size_t max_cells) {
  const BuildLimits limits{max_cells};
  auto range = [&](const std::string& text, int single, const std::string& name) {
    if (!text.empty()) return parse_range(text);
    return std::vector<int>{p.need(name, single)};
  };
  std::vector<CrossRow> rows;
  auto record = [&](const std::string& params, const std::string& expected, const std::string& got) {
    rows.push_back({expected == got, params, expected, got});
  };
  const auto ms = range(p.m_range, p.m, "m");
  if (target == "ind-cycle") {
    for (int m : ms)
      record("m=" + std::to_string(m), describe(ind_cycle_formula(m)),
             describe(graded_from(homology_integer(independence_complex(cycle_graph(m), limits).chains()))));
  } else {
    const auto ns = range(p.n_range, p.n, "n");
    for (int m : ms)
      for (int n : ns) {
        const std::string mn = "m=" + std::to_string(m) + " n=" + std::to_string(n);
        if (target == "hom-cycle") {
          record(mn, describe(hom_cycle_cohomology(m, n)),
                 describe(graded_from(to_cohomology(homology_integer(hom_complex(cycle_graph(m), complete_graph(n), limits).cells.chain)))));
        } else if (target == "homplus-cycle") {
          record(mn, describe(homplus_cycle_formula(m, n)),
                 describe(graded_from(homology_integer(hom_plus(cycle_graph(m), complete_graph(n), limits).cells.chain))));
        } else if (target == "euler-cycle") {
          record(mn, euler_cycle(m, n).str(), reduced_euler_from_census(hom_cycle_cell_census(m, n)).str());
        } else if (target == "euler-complete") {
          record(mn, euler_complete(m, n).str(), reduced_euler_hom(complete_graph(m), complete_graph(n), limits).str());
        } else if (target == "grind") {
          const auto gs = p.g_range.empty() ? std::vector<int>{p.g} : parse_range(p.g_range);
          for (int g : gs) {
            const std::string tag = mn + " g=" + std::to_string(g);
            if (n < g * m) continue;
            FrontParams fp{m, n - m, g, 1};
            FrontComplex tf = build_band_front_complex(fp);
            GrindResult gr = grind(tf);
            ThinCensus census = census_thin(gr.thin);
            const bool same = homology_integer(tf.cells.chain).same_groups(homology_integer(gr.thin.cells.chain));
            std::string got = to_json(census.garland).dump();
            if (!same) got += " homology changed";
            if (!census.antipodal_ok) got += " " + census.detail;
            record(tag, to_json(thin_garland(fp)).dump(), got);
          }
        } else if (target == "arcs") {
          E2Table table = e2_table(m, n, Ring::Z);
          for (int t = 1; 3 * t <= m; ++t) {
            ArcComplex a = build_arc_complex(m, n, t, Ring::Z);
            std::string want, got;
            for (const auto& e : arc_e2_entries(a)) {
              if (t == 1 && e.p == m - 2) continue;
              const std::string at = "(" + std::to_string(e.p) + "," + std::to_string(e.q) + ")=";
              want += (want.empty() ? "" : " ") + at + table.group(e.p, e.q);
              got += (got.empty() ? "" : " ") + at + e.group;
            }
            if (3 * t < m) {
              want += " alpha " + to_string(alpha_parity(m, n, t));
              got += " alpha " + to_string(alpha_from_complex(m, n, t).parity());
            }
            record(mn + " t=" + std::to_string(t), want, got);
          }
        } else {  // cycle-map
          for (int w : admissible_windings(m, n)) {
            CycleComponent cc = cycle_component(m, n, w);
            GarlandDescriptor total;
            std::set<int> dims;
            for (const auto& f : cc.fronts) {
              ThinCensus census = census_thin(grind(f).thin);
              total.cube_count += census.garland.cube_count;
              total.circle_count += census.garland.circle_count;
              total.degenerate = census.garland.degenerate;
              dims.insert(census.garland.cube_dim);
            }
            total.cube_dim = dims.size() == 1 ? *dims.begin() : -1;
            record(mn + " w=" + std::to_string(w), to_json(cycle_map_garland(m, n, cc.r)).dump(), to_json(total).dump());
          }
        }
      }
  }
  Report r;
  json arr = json::array();
  r.table.headers = {"status", "target", "params", "expected", "got"};
  for (const auto& row : rows) {
    arr.push_back({{"status", row.pass ? "PASS" : "FAIL"}, {"params", row.params}, {"expected", row.expected}, {"got", row.got}});
    r.table.rows.push_back({row.pass ? "PASS" : "FAIL", target, row.params, row.expected, row.got});
    if (!row.pass) r.failed = true;
  }
  r.doc = {{"target", target}, {"results", arr}, {"passed", !r.failed}};
  return r;
}

// ---- selftest ----------------------------------------------------------------------------

Report cmd_selftest(const std::vector<int>& only, std::uint32_t seed, bool stream, std::ostream& out) {
  AcceptanceOptions options;
  options.only = only;
  options.seed = seed;
  if (stream) options.progress = [&out](const CriterionResult& c) { out << format_result(c) << std::endl; };
  auto results = run_acceptance(options);
  Report r;
  json arr = json::array();
  r.table.headers = {"status", "id", "name", "ms", "budget_ms", "detail"};
  for (const auto& c : results) {
    arr.push_back({{"id", c.id}, {"name", c.name}, {"passed", c.passed}, {"ms", c.millis}, {"budget_ms", c.budget_millis}, {"detail", c.detail}});
    if (!stream)
      r.table.rows.push_back({c.passed ? "PASS" : "FAIL", std::to_string(c.id), c.name, std::to_string(c.millis),
                              std::to_string(c.budget_millis), c.detail});
    if (!c.passed) r.failed = true;
  }
  r.doc = {{"results", arr}, {"passed", !r.failed}};
  if (stream) r.table = {};
  return r;
}

void add_common(CLI::App* app, Params& p, const std::vector<std::string>& names) {
  for (const auto& name : names) {
    if (name == "m") p.opt.emplace("m", app->add_option("-m", p.m, "cycle length or first size"));
    if (name == "n") p.opt.emplace("n", app->add_option("-n", p.n, "number of colors or second size"));
    if (name == "g") p.opt.emplace("g", app->add_option("-g", p.g, "gap of Φ (default 1)"));
    if (name == "w") p.opt.emplace("w", app->add_option("-w", p.w, "winding number"));
    if (name == "t") p.opt.emplace("t", app->add_option("-t", p.t, "number of arcs"));
    if (name == "r") p.opt.emplace("r", app->add_option("-r", p.r, "northbound steps"));
    if (name == "i") p.opt.emplace("i", app->add_option("-i", p.i, "cohomological degree"));
    if (name == "front") {
      p.opt.emplace("north", app->add_option("--north", p.north, "northbound steps of a front"));
      p.opt.emplace("east", app->add_option("--east", p.east, "eastbound steps of a front"));
      p.opt.emplace("gap", app->add_option("--gap", p.gap, "minimal run of east steps plus one (default 1)"));
      p.opt.emplace("band", app->add_option("--band", p.band, "translation band (default 1)"));
    }
    if (name == "graphs") {
      app->add_option("--source", p.source, "source graph such as cycle:5, complete:3, path:4");
      app->add_option("--target", p.target, "target graph such as complete:4");
      app->add_option("--graph", p.graph_file, "source graph file (text or JSON)");
      app->add_option("--target-graph", p.target_graph_file, "target graph file (text or JSON)");
    }
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Homology of Hom complexes between cycles and complete graphs", "chom"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "table";
  std::size_t max_cells = BuildLimits{}.max_cells;
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"table", "json", "csv"}));
  app.add_option("--max-cells", max_cells, "abort constructions larger than this");

  Params p;
  std::string kind, op, target;
  std::vector<int> only;
  std::uint32_t seed = AcceptanceOptions{}.seed;

  auto* homology = app.add_subcommand("homology", "homology of a complex (unreduced unless --reduced)");
  homology->add_option("kind", kind, "hom, homplus, ind, phi, front or cyclemap")
      ->required()
      ->check(CLI::IsMember({"hom", "homplus", "ind", "phi", "front", "cyclemap"}));
  add_common(homology, p, {"m", "n", "g", "w", "front", "graphs"});
  homology->add_option("--coeff", p.coeff, "Z or a prime");
  homology->add_flag("--reduced", p.reduced, "reduced homology");
  homology->add_flag("--cohomology", p.cohomology, "report cohomology (integer coefficients)");

  auto* closed = app.add_subcommand("closed-form", "evaluate a closed formula");
  closed->add_option("op", op, "formula")
      ->required()
      ->check(CLI::IsMember({"ind-cycle", "homplus-cycle", "hom-cycle", "vanishing", "euler-complete", "euler-cycle",
                             "euler-kn", "e2", "alpha", "thin-garland", "cycle-garland"}));
  add_common(closed, p, {"m", "n", "t", "r", "i", "front", "graphs"});
  closed->add_option("--ring", p.ring, "Z or Z2")->check(CLI::IsMember({"Z", "Z2"}));

  auto* euler = app.add_subcommand("euler", "cell counts and reduced Euler characteristic");
  euler->add_option("kind", kind, "hom, homplus, ind or cycle (Hom(C_m,K_n) by transfer matrix)")
      ->required()
      ->check(CLI::IsMember({"hom", "homplus", "ind", "cycle"}));
  add_common(euler, p, {"m", "n", "graphs"});

  auto* grind_cmd = app.add_subcommand("grind", "grind a front complex and report the thin census");
  add_common(grind_cmd, p, {"m", "n", "g", "front"});

  auto* e2 = app.add_subcommand("e2", "second page of the support spectral sequence");
  add_common(e2, p, {"m", "n"});
  e2->add_option("--ring", p.ring, "Z or Z2")->check(CLI::IsMember({"Z", "Z2"}));
  e2->add_option("--method", p.method, "closed-form, spectral or both")
      ->check(CLI::IsMember({"closed-form", "spectral", "both"}));
  e2->add_option("--page", p.page, "page index for the spectral method (default 2)")->check(CLI::Range(0, 64));

  auto* cross = app.add_subcommand("crosscheck", "formula against brute force");
  cross->add_option("target", target, "what to check")
      ->required()
      ->check(CLI::IsMember({"hom-cycle", "homplus-cycle", "ind-cycle", "euler-cycle", "euler-complete", "grind", "arcs",
                             "cycle-map"}));
  p.opt.emplace("m", cross->add_option("-m", p.m_range, "value or range a..b"));
  p.opt.emplace("n", cross->add_option("-n", p.n_range, "value or range a..b"));
  cross->add_option("-g", p.g_range, "value or range a..b (grind)");

  auto* self = app.add_subcommand("selftest", "run the acceptance suite");
  self->add_option("--only", only, "criteria to run")->delimiter(',');
  self->add_option("--seed", seed, "seed for the randomized criteria");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return usage;
  }

  try {
    Report r;
    if (*homology) {
      r = cmd_homology(kind, p, max_cells);
    } else if (*closed) {
      r = cmd_closed_form(op, p);
    } else if (*euler) {
      r = cmd_euler(kind, p, max_cells);
    } else if (*grind_cmd) {
      r = cmd_grind(p, max_cells);
    } else if (*e2) {
      r = cmd_e2(p, max_cells);
    } else if (*cross) {
      r = cmd_crosscheck(target, p, max_cells);
    } else {
      for (int id : only)
        if (id < 1 || id > acceptance_criterion_count()) throw InvalidParameter("no acceptance criterion " + std::to_string(id));
      r = cmd_selftest(only, seed, format == "table", out);
    }
    print(r, format, out);
    return r.failed ? check_failed : ok;
  } catch (const SizeLimitExceeded& e) {
    err << "error: " << e.what() << " (limit " << e.limit() << ", reached " << e.estimate()
        << "); raise --max-cells to continue\n";
    return usage;
  } catch (const InvalidParameter& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (const UnsupportedParameter& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (const ContractViolation& e) {
    err << "check failed: " << e.what() << '\n';
    return check_failed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return check_failed;
  }
}

}  // namespace chom::cli
