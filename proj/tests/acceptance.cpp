// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <cstdio>
#include <functional>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include <gpdkit/gpdkit.hpp>

#include "cli.hpp"
#include "support.hpp"

using namespace gpdkit;

namespace {

  struct Outcome {
    bool        ok = true;
    std::string detail;

    void require(bool cond, std::string const& what) {
      if (!cond && ok) {
        ok     = false;
        detail = what;
      }
    }
  };

  bool contains(std::string const& hay, std::string const& needle) {
    return hay.find(needle) != std::string::npos;
  }

  cli::Options on(std::string const& file) {
    cli::Options o;
    o.input = gpdkit::testing::data_path(file);
    return o;
  }

  // Union-find over the arrows, independent of the library's component code.
  std::vector<std::size_t> component_labels(FiniteGroupoid const& g) {
    std::vector<std::size_t> parent(g.num_objects());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> root = [&](std::size_t x) {
      return parent[x] == x ? x : parent[x] = root(parent[x]);
    };
    for (auto a : g.arrows()) {
      parent[root(index(g.source(a)))] = root(index(g.target(a)));
    }
    std::vector<std::size_t> out;
    for (std::size_t x = 0; x < parent.size(); ++x) {
      out.push_back(root(x));
    }
    return out;
  }

  std::set<std::size_t> arrow_set(std::vector<ArrowId> const& as) {
    std::set<std::size_t> out;
    for (auto a : as) {
      out.insert(index(a));
    }
    return out;
  }

  // Closure of a set of arrows under identities, inverses and composition.
  std::set<std::size_t> closure(FiniteGroupoid const& g, std::set<std::size_t> s) {
    for (auto x : g.objects()) {
      s.insert(index(g.identity(x)));
    }
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<std::size_t> const cur(s.begin(), s.end());
      for (auto a : cur) {
        grew |= s.insert(index(g.inverse(to_arrow(a)))).second;
        for (auto b : cur) {
          if (auto c = g.compose(to_arrow(a), to_arrow(b))) {
            grew |= s.insert(index(*c)).second;
          }
        }
      }
    }
    return s;
  }

  // Rank of an integer matrix over Q (fraction-free elimination) or over F_p.
  std::size_t matrix_rank(std::vector<std::vector<long long>> m, long long p) {
    std::size_t rank = 0;
    std::size_t const cols = m.empty() ? 0 : m[0].size();
    long long prev = 1;
    for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
      std::size_t piv = rank;
      auto nonzero = [&](long long v) { return p ? ((v % p) + p) % p != 0 : v != 0; };
      while (piv < m.size() && !nonzero(m[piv][c])) {
        ++piv;
      }
      if (piv == m.size()) {
        continue;
      }
      std::swap(m[piv], m[rank]);
      for (std::size_t r = rank + 1; r < m.size(); ++r) {
        for (std::size_t k = c + 1; k < cols; ++k) {
          if (p) {
            m[r][k] = ((m[rank][c] * m[r][k] - m[r][c] * m[rank][k]) % p + p) % p;
          } else {
            m[r][k] = (m[rank][c] * m[r][k] - m[r][c] * m[rank][k]) / prev;
          }
        }
        m[r][c] = 0;
      }
      if (!p) {
        prev = m[rank][c];
      }
      ++rank;
    }
    return rank;
  }

  std::vector<std::vector<long long>> exponent_matrix(GroupPresentation const& p) {
    std::vector<std::vector<long long>> m;
    for (auto const& r : p.relators) {
      std::vector<long long> row(p.generators.size(), 0);
      for (auto l : r) {
        row[l.index] += l.inverse ? -1 : 1;
      }
      m.push_back(row);
    }
    return m;
  }

  GroupoidAction entry(std::string const& name) {
    for (auto const& e : standard_corpus()) {
      if (e.name == name) {
        return e.action;
      }
    }
    throw std::logic_error("no corpus entry " + name);
  }

  ////////////////////////////////////////////////////////////////////////

  Outcome circle_mod_reflection() {
    Outcome    out;
    auto const orbit = cli::run_command("orbit", on("circle_reflection.act"));
    out.require(orbit.exit_code == cli::exit_ok, "orbit exited " + std::to_string(orbit.exit_code));
    for (auto base : {"1", "-1"}) {
      auto opts = on("circle_reflection.act");
      opts.base = base;
      auto const pres = cli::run_command("presentation", opts);
      std::string const line = std::string("vertex group at orbit(") + base + "): trivial";
      out.require(pres.exit_code == cli::exit_ok && contains(pres.output, line),
                  "presentation does not report " + line);
      out.require(contains(orbit.output, line), "orbit does not report " + line);
    }
    // coset enumeration on the vertex group presentations
    auto const doc = parse_file(gpdkit::testing::data_path("circle_reflection.act"));
    auto const pg  = orbit_presentation(doc.graph_actions.at("refl"));
    for (auto v : {"[1]", "[-1]"}) {
      auto const p = vertex_group_presentation(pg, pg.graph.vertex_at(v));
      out.require(oracle::presentation_order(p) == 1,
                  std::string("coset enumeration gives a nontrivial group at ") + v);
    }
    if (out.ok) {
      out.detail = "trivial at orbit(1) and orbit(-1)";
    }
    return out;
  }

  Outcome symmetric_square() {
    Outcome out;
    for (std::size_t n = 1; n <= 4; ++n) {
      auto const sq  = symmetric_square_presentation(free_presentation(n));
      auto const inv = abelian_invariants(sq);
      out.require(inv == AbelianInvariants{n, {}},
                  "n=" + std::to_string(n) + " gives " + to_string(inv));
      // exponent-sum matrix: rank over Q and over small primes agree
      auto const m     = exponent_matrix(sq);
      auto const rankq = matrix_rank(m, 0);
      out.require(sq.generators.size() - rankq == n,
                  "n=" + std::to_string(n) + ": rational rank disagrees");
      for (long long p : {2, 3, 5, 7}) {
        out.require(matrix_rank(m, p) == rankq,
                    "n=" + std::to_string(n) + ": torsion at " + std::to_string(p));
      }
    }
    if (out.ok) {
      out.detail = "rank n, no torsion, n = 1..4";
    }
    return out;
  }

  Outcome abelianization() {
    Outcome     out;
    std::string seen;
    for (auto const& h : {cyclic_group(4), symmetric_group(3), dihedral_group(4),
                          quaternion_group(), alternating_group(4)}) {
      std::vector<std::size_t> anti;
      for (std::size_t x = 0; x < h.size(); ++x) {
        anti.push_back(x * h.size() + h.inverse(x));
      }
      auto const q     = oracle::finite_quotient(direct_product(h, h), anti);
      auto const lhs   = oracle::abelian_group_invariants(q);
      auto const brute = oracle::brute_abelianization(h);
      auto const snf   = abelian_invariants(table_presentation(h));
      out.require(lhs == brute, h.name() + ": quotient " + to_string(lhs) + " vs " + to_string(brute));
      out.require(snf == brute, h.name() + ": Smith form " + to_string(snf));
      seen += (seen.empty() ? "" : "; ") + h.name() + " " + to_string(brute);
    }
    if (out.ok) {
      out.detail = seen;
    }
    return out;
  }

  Outcome trichotomy() {
    Outcome    out;
    auto const random = random_actions(60, 7, 12);
    std::size_t checked = 0;
    for (auto const& [name, act] : random) {
      auto const& sp = act.space();
      out.require(sp.num_arrows() <= 12, name + " has too many arrows");
      auto const labels    = component_labels(sp);
      bool const connected = std::set<std::size_t>(labels.begin(), labels.end()).size() <= 1;
      bool       discrete  = true;
      bool       trivial   = true;
      for (auto a : sp.arrows()) {
        discrete = discrete && sp.source(a) == sp.target(a) && sp.is_identity(a);
        trivial  = trivial && (sp.source(a) != sp.target(a) || sp.is_identity(a));
      }
      bool fixes_pi0 = true;
      for (std::size_t g = 0; g < act.group().size(); ++g) {
        for (auto x : sp.objects()) {
          fixes_pi0 = fixes_pi0 && labels[index(act.act(g, x))] == labels[index(x)];
        }
      }
      auto const sd = semidirect_product(act);
      auto const& q = sd.projection;
      out.require(is_fibration(q), name + ": projection is not a fibration");
      out.require(is_quotient_morphism(q) == connected, name + ": quotient vs connected");
      out.require(is_covering(q) == discrete, name + ": covering vs discrete");
      out.require(is_iso_on_object_groups(q) == (trivial && fixes_pi0),
                  name + ": object-group isomorphism vs trivial groups");
      ++checked;
    }
    out.require(checked >= 50, "only " + std::to_string(checked) + " actions");
    if (out.ok) {
      out.detail = std::to_string(checked) + " random actions, no counterexample";
    }
    return out;
  }

  Outcome first_isomorphism() {
    Outcome    out;
    auto const cases = gpdkit::testing::random_quotient_morphisms(24, 2024);
    for (auto const& c : cases) {
      out.require(is_quotient_morphism(c.morphism), c.name + " is not a quotient morphism");
      auto const f = gpdkit::testing::first_isomorphism_failures(c.morphism);
      out.require(f.empty(), c.name + ": " + (f.empty() ? "" : f.front()));
    }
    if (out.ok) {
      out.detail = std::to_string(cases.size()) + " quotient morphisms";
    }
    return out;
  }

  Outcome kernel_and_clauses() {
    Outcome     out;
    std::size_t instances = 0, free = 0, fixed_connected = 0, trees = 0;
    for (auto const& [name, act] : gpdkit::testing::full_corpus()) {
      auto const& sp = act.space();
      auto const& G  = act.group();
      auto const  o  = orbit_groupoid(act);

      std::set<std::size_t> gens;
      for (auto gamma : sp.arrows()) {
        for (std::size_t g = 0; g < G.size(); ++g) {
          auto const moved = act.act(g, gamma);
          if (auto d = sp.compose(gamma, sp.inverse(moved))) {
            gens.insert(index(*d));
          }
        }
      }
      out.require(closure(sp, gens) == arrow_set(kernel(o.projection).arrows()),
                  name + ": kernel differs from the generated subgroupoid");
      ++instances;

      bool is_free = true, has_fixed = false;
      std::vector<std::size_t> stabilising;
      for (std::size_t g = 0; g < G.size(); ++g) {
        bool fixes_some = false;
        for (auto x : sp.objects()) {
          fixes_some = fixes_some || act.act(g, x) == x;
        }
        if (fixes_some) {
          stabilising.push_back(g);
          is_free = is_free && g == G.identity();
        }
      }
      for (auto x : sp.objects()) {
        bool all = true;
        for (std::size_t g = 0; g < G.size(); ++g) {
          all = all && act.act(g, x) == x;
        }
        has_fixed = has_fixed || all;
      }
      auto const labels    = component_labels(sp);
      bool const connected = std::set<std::size_t>(labels.begin(), labels.end()).size() <= 1;

      if (is_free) {
        out.require(is_covering(o.projection), name + ": free action but no covering");
        ++free;
      }
      if (has_fixed && connected) {
        out.require(is_quotient_morphism(o.projection),
                    name + ": fixed point but no quotient morphism");
        ++fixed_connected;
      }
      bool const tree = connected && sp.num_arrows() == sp.num_objects() * sp.num_objects();
      if (tree) {
        auto const expected = oracle::finite_quotient(G, stabilising);
        out.require(groups_isomorphic(expected, object_group(o.groupoid, to_object(0))),
                    name + ": object group is not G/K");
        ++trees;
      }
    }
    out.require(free > 0 && fixed_connected > 0 && trees > 0, "a clause was never exercised");
    if (out.ok) {
      out.detail = std::to_string(instances) + " instances (" + std::to_string(free) + " free, "
                   + std::to_string(fixed_connected) + " fixed-point connected, "
                   + std::to_string(trees) + " trees)";
    }
    return out;
  }

  Outcome universal_property() {
    Outcome     out;
    auto const  targets = oracle::standard_targets();
    std::size_t checked = 0;
    for (auto const& [name, act] : gpdkit::testing::full_corpus()) {
      if (act.space().num_arrows() > 8) {
        continue;
      }
      auto const o   = orbit_groupoid(act);
      auto const rep = oracle::check_universal_property(act, o.projection, targets);
      out.require(rep.passed(), name + ": " + (rep.passed() ? "" : rep.failures.front()));
      ++checked;
    }

    // corrupted candidate: everything collapsed to a point
    auto const  act = entry("tree_swap");
    auto const& sp  = act.space();
    auto const  pt  = one_object_groupoid(trivial_group());
    GroupoidMorphism const collapsed(sp, pt, std::vector<ObjectId>(sp.num_objects(), to_object(0)),
                                     std::vector<ArrowId>(sp.num_arrows(), pt.identity(to_object(0))));
    out.require(!oracle::check_universal_property(act, collapsed, targets).passed(),
                "collapsed candidate was accepted");
    out.require(checked > 0, "no instance small enough");
    if (out.ok) {
      out.detail = std::to_string(checked) + " instances, negative control rejected";
    }
    return out;
  }

  Outcome regular_covers() {
    Outcome     out;
    std::size_t checked = 0;
    auto check = [&](std::string const& label, GroupoidMorphism const& p,
                     GroupoidAction const& deck) {
      auto const rep = regular_cover_orbit_check(p, deck);
      out.require(rep.passed(), label + ": " + (rep.issues.empty() ? "failed" : rep.issues.front()));
      auto const sd = semidirect_product(deck);
      for (auto x : p.source().objects()) {
        auto const y = sd.groupoid.object_at(p.source().object_name(x));
        out.require(groups_isomorphic(object_group(p.target(), p(x)), object_group(sd.groupoid, y)),
                    label + ": H(px) differs at " + p.source().object_name(x));
      }
      ++checked;
    };
    for (auto file : {"folding_cover.gpd", "z4_cover.gpd"}) {
      auto const doc = parse_file(gpdkit::testing::data_path(file));
      check(file, doc.morphisms.at("p"), doc.actions.at("deck"));
      auto const r = cli::run_command("check-regular-cover", on(file));
      out.require(r.exit_code == cli::exit_ok && contains(r.output, "result: PASS"),
                  std::string(file) + ": CLI check failed");
    }
    {
      // the same folding cover built in code
      auto const act = entry("tree_swap");
      auto const z2  = one_object_groupoid(cyclic_group(2));
      std::vector<ArrowId> am;
      for (auto a : act.space().arrows()) {
        am.push_back(act.space().is_identity(a) ? z2.identity(to_object(0)) : z2.arrow_at("g"));
      }
      check("fold (built)", GroupoidMorphism(act.space(), z2, {to_object(0), to_object(0)}, am),
            act);
    }
    if (out.ok) {
      out.detail = std::to_string(checked) + " covers";
    }
    return out;
  }

  Outcome normal_closure_oracle() {
    Outcome     out;
    std::size_t compared = 0;
    for (auto const& [name, act] : gpdkit::testing::full_corpus()) {
      std::vector<FiniteGroupoid> spaces{act.space()};
      auto sd = semidirect_product(act);
      spaces.push_back(sd.groupoid);
      for (auto const& sp : spaces) {
        if (sp.num_arrows() > oracle::normal_closure_cap) {
          continue;
        }
        for (auto a : sp.arrows()) {
          std::vector<ArrowId> const r{a};
          out.require(normal_closure(sp, r) == oracle::minimal_normal_closure(sp, r),
                      name + " on " + sp.name() + " at " + sp.arrow_name(a));
          ++compared;
        }
        std::vector<ArrowId> const none;
        out.require(normal_closure(sp, none) == oracle::minimal_normal_closure(sp, none),
                    name + " on " + sp.name() + ": empty generating set");
        ++compared;
      }
    }
    if (out.ok) {
      out.detail = std::to_string(compared) + " generating sets";
    }
    return out;
  }

  Outcome round_trip_and_determinism() {
    Outcome out;
    for (auto const& file : gpdkit::testing::fixture_files()) {
      auto const doc  = parse_file(gpdkit::testing::data_path(file));
      auto const text = emit(doc);
      auto const back = parse_document(text);
      auto const diff = gpdkit::testing::document_differences(doc, back);
      out.require(diff.empty(), file + ": " + (diff.empty() ? "" : diff.front()));
      out.require(emit(back) == text, file + ": second emit differs");
    }
    auto const a = cli::run_command("verify", {});
    auto const b = cli::run_command("verify", {});
    out.require(a.exit_code == cli::exit_ok, "verify did not pass");
    out.require(a.output == b.output, "verify reports differ between runs");
    for (auto const& [verb, file] : std::vector<std::pair<std::string, std::string>>{
             {"orbit", "tree_swap.gpd"}, {"orbit", "circle_reflection.act"},
             {"semidirect", "circle12.gpd"}, {"abelianize", "s3.pres"}}) {
      out.require(cli::run_command(verb, on(file)).output == cli::run_command(verb, on(file)).output,
                  verb + " " + file + ": reports differ between runs");
    }
    if (out.ok) {
      out.detail = std::to_string(gpdkit::testing::fixture_files().size())
                   + " fixtures, identical reports";
    }
    return out;
  }

}  // namespace

int main() {
  struct Criterion {
    char const* name;
    Outcome (*run)();
  };
  Criterion const criteria[] = {
      {"circle modulo reflection", circle_mod_reflection},
      {"symmetric square of free groups", symmetric_square},
      {"(H x H)/K is the abelianization", abelianization},
      {"semidirect projection trichotomy", trichotomy},
      {"first isomorphism theorem", first_isomorphism},
      {"orbit kernel and its clauses", kernel_and_clauses},
      {"universal property", universal_property},
      {"regular covers are orbit morphisms", regular_covers},
      {"normal closure oracle agreement", normal_closure_oracle},
      {"round trip and determinism", round_trip_and_determinism},
  };
  int failed = 0;
  int number = 0;
  for (auto const& c : criteria) {
    ++number;
    Outcome result;
    try {
      result = c.run();
    } catch (std::exception const& e) {
      result = {false, std::string("exception: ") + e.what()};
    }
    failed += !result.ok;
    std::printf("%s %2d %s: %s\n", result.ok ? "PASS" : "FAIL", number, c.name,
                result.detail.c_str());
  }
  return failed == 0 ? 0 : 1;
}
