#ifndef GPDKIT_TESTS_SUPPORT_HPP_
#define GPDKIT_TESTS_SUPPORT_HPP_

// Shared fixtures for the unit tests and the acceptance runner.  Only the
// public library API is used here.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <gpdkit/gpdkit.hpp>

namespace gpdkit::testing {

  inline std::string data_path(std::string const& file) {
    return std::string(GPDKIT_DATA_DIR) + "/" + file;
  }

  //! Index of `a` among the loops at its source, i.e. its element number in
  //! object_group(g, source(a)).
  inline std::size_t loop_index(FiniteGroupoid const& g, ArrowId a) {
    auto const loops = g.loops(g.source(a));
    return static_cast<std::size_t>(std::find(loops.begin(), loops.end(), a) - loops.begin());
  }

  //! Does k' = m + k + n hold for some m, n in `n`?  Plain search over all
  //! pairs, independent of the quotient construction.
  inline bool sandwiched(FiniteGroupoid const& k, WideSubgroupoid const& n, ArrowId kk,
                         ArrowId kp) {
    for (auto m : n.arrows()) {
      for (auto r : n.arrows()) {
        auto const first = k.compose(kk, r);
        if (!first) {
          continue;
        }
        auto const both = k.compose(m, *first);
        if (both && *both == kp) {
          return true;
        }
      }
    }
    return false;
  }

  struct QuotientCase {
    std::string      name;
    GroupoidMorphism morphism;
  };

  //! Quotient morphisms K -> K/N with N the normal closure of a few random
  //! arrows.  K ranges over the small random spaces and over semidirect
  //! products of corpus actions.
  inline std::vector<QuotientCase> random_quotient_morphisms(std::size_t count, std::uint32_t seed) {
    std::mt19937                rng(seed);
    std::vector<FiniteGroupoid> spaces = random_space_family();
    for (auto const& e : standard_corpus()) {
      auto sd = semidirect_product(e.action);
      if (sd.groupoid.num_arrows() <= 36) {
        spaces.push_back(std::move(sd.groupoid));
      }
    }
    std::vector<QuotientCase> out;
    for (std::size_t i = 0; i < count; ++i) {
      auto const&          k = spaces[rng() % spaces.size()];
      std::vector<ArrowId> r;
      auto const           picks = rng() % 3;
      for (std::size_t j = 0; j < picks; ++j) {
        r.push_back(to_arrow(rng() % k.num_arrows()));
      }
      auto const n = normal_closure(k, r);
      out.push_back({"quotient" + std::to_string(i) + ":" + k.name(),
                     quotient_groupoid(k, n).projection});
    }
    return out;
  }

  //! Failures of the first isomorphism theorem for a quotient morphism f,
  //! as readable strings; empty when it holds.
  inline std::vector<std::string> first_isomorphism_failures(GroupoidMorphism const& f) {
    std::vector<std::string> out;
    auto const&              k = f.source();
    auto const&              h = f.target();
    auto const               n = kernel(f);
    for (auto a : k.arrows()) {
      for (auto b : k.arrows()) {
        bool const same = f(a) == f(b);
        if (same != sandwiched(k, n, a, b)) {
          out.push_back("f(" + k.arrow_name(a) + ") = f(" + k.arrow_name(b) + ") is "
                        + (same ? "true" : "false") + " but the kernel says otherwise");
        }
      }
    }
    for (auto x : k.objects()) {
      std::vector<std::size_t> sub;
      for (auto l : n.loops(x)) {
        sub.push_back(loop_index(k, l));
      }
      auto const quotient = quotient_group(object_group(k, x), sub);
      auto const image    = object_group(h, f(x));
      if (!search_isomorphism(one_object_groupoid(quotient), one_object_groupoid(image),
                              isomorphism_hard_cap)) {
        out.push_back("H(f" + k.object_name(x) + ") is not isomorphic to K(x)/N(x)");
      }
    }
    return out;
  }

  //! Standard corpus plus the random actions used by `verify`.
  inline std::vector<CorpusEntry> full_corpus() {
    auto corpus = standard_corpus();
    for (auto& e : random_actions(50, 20241015)) {
      corpus.push_back(std::move(e));
    }
    return corpus;
  }

  //! Differences between two documents, entity by entity: groupoids must be
  //! isomorphic and every table must agree name for name.
  inline std::vector<std::string> document_differences(Document const& a, Document const& b) {
    std::vector<std::string> out;
    if (a.order != b.order) {
      out.push_back("entity lists differ");
      return out;
    }
    auto name_map = [](FiniteGroupoid const& g, auto const& f) {
      std::vector<std::string> names;
      for (auto x : g.objects()) {
        names.push_back(f(x));
      }
      return names;
    };
    for (auto const& [kind, name] : a.order) {
      bool same = true;
      switch (kind) {
        case EntityKind::group: {
          auto const& g = a.groups.at(name);
          auto const& h = b.groups.at(name);
          same = g.size() == h.size() && groups_isomorphic(g, h);
          for (std::size_t x = 0; same && x < g.size(); ++x) {
            for (std::size_t y = 0; same && y < g.size(); ++y) {
              same = g.element_name(g.multiply(x, y))
                     == h.element_name(h.multiply(h.at(g.element_name(x)), h.at(g.element_name(y))));
            }
          }
          break;
        }
        case EntityKind::groupoid:
          same = isomorphic(a.groupoids.at(name), b.groupoids.at(name), isomorphism_hard_cap)
                 && emit(a.groupoids.at(name)) == emit(b.groupoids.at(name));
          break;
        case EntityKind::action: {
          auto const& u = a.actions.at(name);
          auto const& v = b.actions.at(name);
          same = isomorphic(u.space(), v.space(), isomorphism_hard_cap)
                 && u.group().size() == v.group().size();
          for (std::size_t g = 0; same && g < u.group().size(); ++g) {
            auto const gv = v.group().at(u.group().element_name(g));
            same = name_map(u.space(), [&](ObjectId x) { return u.space().object_name(u.act(g, x)); })
                   == name_map(u.space(), [&](ObjectId x) {
                        return v.space().object_name(v.act(gv, v.space().object_at(u.space().object_name(x))));
                      });
            for (auto e : u.space().arrows()) {
              same = same
                     && u.space().arrow_name(u.act(g, e))
                            == v.space().arrow_name(v.act(gv, v.space().arrow_at(u.space().arrow_name(e))));
            }
          }
          break;
        }
        case EntityKind::graph:
          same = emit(a.graphs.at(name)) == emit(b.graphs.at(name));
          break;
        case EntityKind::graph_action: {
          auto const& u = a.graph_actions.at(name);
          auto const& v = b.graph_actions.at(name);
          same = u.vertex_map == v.vertex_map && u.edge_map == v.edge_map
                 && emit(u.graph) == emit(v.graph);
          break;
        }
        case EntityKind::presented:
          same = a.presented.at(name).relators == b.presented.at(name).relators
                 && emit(a.presented.at(name).graph) == emit(b.presented.at(name).graph);
          break;
        case EntityKind::presentation:
          same = a.presentations.at(name).generators == b.presentations.at(name).generators
                 && a.presentations.at(name).relators == b.presentations.at(name).relators;
          break;
        case EntityKind::morphism: {
          auto const& f = a.morphisms.at(name);
          auto const& g = b.morphisms.at(name);
          same = isomorphic(f.source(), g.source(), isomorphism_hard_cap)
                 && isomorphic(f.target(), g.target(), isomorphism_hard_cap);
          for (auto e : f.source().arrows()) {
            same = same
                   && f.target().arrow_name(f(e))
                          == g.target().arrow_name(g(g.source().arrow_at(f.source().arrow_name(e))));
          }
          break;
        }
      }
      if (!same) {
        out.push_back(std::string(kind_name(kind)) + " " + name + " changed");
      }
    }
    return out;
  }

  inline std::vector<std::string> fixture_files() {
    return {"tree_swap.gpd",      "circle_reflection.act", "f2.pres",        "s3.pres",
            "folding_cover.gpd",  "z4_cover.gpd",          "s3_groupoid.gpd", "circle12.gpd"};
  }

}  // namespace gpdkit::testing

#endif  // GPDKIT_TESTS_SUPPORT_HPP_
