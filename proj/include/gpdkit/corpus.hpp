#ifndef GPDKIT_CORPUS_HPP_
#define GPDKIT_CORPUS_HPP_

// Named and randomly generated group actions on small groupoids, used by
// the tests and by the `verify` command.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "action.hpp"
#include "finite_groupoid.hpp"
#include "group_table.hpp"
#include "isomorphism.hpp"
#include "morphism.hpp"
#include "standard_groupoids.hpp"

namespace gpdkit {

  struct CorpusEntry {
    std::string    name;
    GroupoidAction action;
  };

  //! Extends automorphisms chosen for generators of G to an action, or
  //! returns nothing if the choice does not define a homomorphism.
  inline std::optional<GroupoidAction>
  extend_to_action(GroupTable const&                    G,
                   FiniteGroupoid const&                space,
                   std::vector<std::size_t> const&      generators,
                   std::vector<GroupoidMorphism> const& images) {
    std::vector<std::optional<GroupoidMorphism>> phi(G.size());
    phi[G.identity()] = identity_morphism(space);
    std::vector<std::size_t> queue{G.identity()};
    for (std::size_t i = 0; i < queue.size(); ++i) {
      auto const h = queue[i];
      for (std::size_t k = 0; k < generators.size(); ++k) {
        auto const hs   = G.multiply(h, generators[k]);
        auto       next = compose(*phi[h], images[k]);
        if (!phi[hs]) {
          phi[hs] = std::move(next);
          queue.push_back(hs);
        } else if (phi[hs]->arrow_map() != next.arrow_map()
                   || phi[hs]->object_map() != next.object_map()) {
          return std::nullopt;
        }
      }
    }
    std::vector<ObjectId> obj;
    std::vector<ArrowId>  arr;
    for (std::size_t g = 0; g < G.size(); ++g) {
      if (!phi[g]) {
        return std::nullopt;
      }
      obj.insert(obj.end(), phi[g]->object_map().begin(), phi[g]->object_map().end());
      arr.insert(arr.end(), phi[g]->arrow_map().begin(), phi[g]->arrow_map().end());
    }
    GroupoidAction act(G, space, std::move(obj), std::move(arr));
    if (!validate_action(act).valid()) {
      return std::nullopt;
    }
    return act;
  }

  //! G permuting the objects of a groupoid whose hom-sets have at most one
  //! arrow (tree or discrete); arrows follow their endpoints.
  inline GroupoidAction
  object_permutation_action(GroupTable const&                                   G,
                            FiniteGroupoid const&                               space,
                            std::function<ObjectId(std::size_t, ObjectId)> const& move) {
    std::vector<ObjectId> obj;
    std::vector<ArrowId>  arr;
    for (std::size_t g = 0; g < G.size(); ++g) {
      for (auto x : space.objects()) {
        obj.push_back(move(g, x));
      }
      for (auto a : space.arrows()) {
        auto hom = space.hom(move(g, space.source(a)), move(g, space.target(a)));
        if (hom.size() != 1) {
          throw InvalidStructure(space.name() + " has a hom-set that is not a singleton");
        }
        arr.push_back(hom.front());
      }
    }
    return GroupoidAction(G, space, std::move(obj), std::move(arr));
  }

  //! Reflection z -> conj(z) on the circle modelled by 4 vertices 1, i, -1,
  //! -i, truncated to displacements modulo 4 * wraps.
  inline GroupoidAction circle_reflection_action(std::size_t wraps) {
    auto const        space  = circle_groupoid("circle", {"1", "i", "-1", "-i"}, wraps);
    std::size_t const period = 4 * wraps;
    auto const        G      = cyclic_group(2);
    std::vector<ObjectId> obj;
    std::vector<ArrowId>  arr;
    for (std::size_t g = 0; g < 2; ++g) {
      for (std::size_t x = 0; x < 4; ++x) {
        obj.push_back(to_object(g ? (4 - x) % 4 : x));
      }
      for (auto a : space.arrows()) {
        auto const x = index(space.source(a));
        auto const name = space.arrow_name(a);
        auto const d    = std::stoul(name.substr(name.find(':') + 1));
        if (g == 0) {
          arr.push_back(a);
        } else {
          auto const rx = (4 - x) % 4;
          auto const rd = (period - d) % period;
          arr.push_back(space.arrow_at(space.object_name(to_object(rx)) + ":"
                                       + std::to_string(rd)));
        }
      }
    }
    return GroupoidAction(G, space, std::move(obj), std::move(arr));
  }

  //! Hand-picked actions covering free, fixed-point, connected, discrete and
  //! tree cases.
  inline std::vector<CorpusEntry> standard_corpus() {
    std::vector<CorpusEntry> out;
    auto const               z2 = cyclic_group(2);
    auto const               z3 = cyclic_group(3);
    auto const               s3 = symmetric_group(3);

    auto const tree2 = tree_groupoid("tree2", {"x", "y"});
    out.push_back({"tree_swap", object_permutation_action(z2, tree2, [](std::size_t g, ObjectId x) {
                     return g ? to_object(1 - index(x)) : x;
                   })});

    auto const tree3 = tree_groupoid("tree3", {"1", "2", "3"});
    {
      // S3 elements are listed as permutations in lexicographic order
      std::vector<std::vector<std::size_t>> perms;
      std::vector<std::size_t>              p{0, 1, 2};
      do {
        perms.push_back(p);
      } while (std::next_permutation(p.begin(), p.end()));
      out.push_back({"s3_on_tree3",
                     object_permutation_action(s3, tree3, [perms](std::size_t g, ObjectId x) {
                       return to_object(perms[g][index(x)]);
                     })});
    }
    out.push_back({"z3_rotating_tree3",
                   object_permutation_action(z3, tree3, [](std::size_t g, ObjectId x) {
                     return to_object((index(x) + g) % 3);
                   })});

    auto const disc2 = discrete_groupoid("discrete2", {"x", "y"});
    out.push_back({"discrete_swap",
                   object_permutation_action(z2, disc2, [](std::size_t g, ObjectId x) {
                     return g ? to_object(1 - index(x)) : x;
                   })});

    auto const z4g = one_object_groupoid(cyclic_group(4));
    {
      std::vector<ObjectId> obj{to_object(0), to_object(0)};
      std::vector<ArrowId>  arr;
      for (auto a : z4g.arrows()) {
        arr.push_back(a);
      }
      for (auto a : z4g.arrows()) {
        arr.push_back(z4g.inverse(a));
      }
      out.push_back({"z4_inversion", GroupoidAction(z2, z4g, obj, arr)});
    }

    out.push_back({"trivial_on_s3", GroupoidAction::trivial(z2, one_object_groupoid(s3))});
    out.push_back({"trivial_on_tree2", GroupoidAction::trivial(z3, tree2)});

    {
      auto const two = disjoint_union("z2+z2",
                                      one_object_groupoid(z2, "a").renamed("A", {"a"}, {"a:1", "a:g"}),
                                      one_object_groupoid(z2, "b").renamed("B", {"b"}, {"b:1", "b:g"}));
      std::vector<ObjectId> obj;
      std::vector<ArrowId>  arr;
      for (std::size_t g = 0; g < 2; ++g) {
        for (auto x : two.objects()) {
          obj.push_back(g ? to_object(1 - index(x)) : x);
        }
        for (auto a : two.arrows()) {
          auto const& n = two.arrow_name(a);
          arr.push_back(g ? two.arrow_at(std::string(n[0] == 'a' ? "b" : "a") + n.substr(1)) : a);
        }
      }
      out.push_back({"component_swap", GroupoidAction(z2, two, obj, arr)});
    }

    {
      // Z2 x Z2 acting on tree2 x Z2: first factor swaps, second acts trivially
      auto const space = product_groupoid("tree2xZ2", tree2, one_object_groupoid(z2));
      auto const v4    = direct_product(z2, z2);
      auto       autos = automorphisms(space);
      std::vector<GroupoidMorphism> images;
      for (auto const& f : autos) {
        if (f.object_map()[0] == to_object(1)) {
          images.push_back(f);
          break;
        }
      }
      images.push_back(identity_morphism(space));
      if (auto act = extend_to_action(v4, space, greedy_generators(v4), images)) {
        out.push_back({"v4_on_tree2xZ2", *act});
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Random actions
  ////////////////////////////////////////////////////////////////////////

  //! Small groupoids used as random action spaces, each with at most 12
  //! arrows.
  inline std::vector<FiniteGroupoid> random_space_family() {
    auto const z2 = cyclic_group(2);
    auto const z3 = cyclic_group(3);
    auto const tree2  = tree_groupoid("tree2", {"x", "y"});
    auto const tree2b = tree_groupoid("tree2b", {"u", "v"});
    auto const g_z2   = one_object_groupoid(z2, "p");
    auto const g_z2b  = one_object_groupoid(z2, "q").renamed("Z2b", {"q"}, {"q:1", "q:g"});
    return {discrete_groupoid("discrete1", {"x"}),
            discrete_groupoid("discrete2", {"x", "y"}),
            discrete_groupoid("discrete3", {"x", "y", "z"}),
            discrete_groupoid("discrete4", {"w", "x", "y", "z"}),
            tree2,
            tree_groupoid("tree3", {"x", "y", "z"}),
            g_z2,
            one_object_groupoid(z3),
            one_object_groupoid(cyclic_group(4)),
            one_object_groupoid(direct_product(z2, z2)),
            one_object_groupoid(symmetric_group(3)),
            product_groupoid("tree2xZ2", tree2, g_z2),
            disjoint_union("tree2+Z2", tree2b, g_z2),
            disjoint_union("Z2+Z2", g_z2, g_z2b),
            disjoint_union("tree2+tree2", tree2, tree2b),
            disjoint_union("Z3+pt", one_object_groupoid(z3), discrete_groupoid("pt", {"o"}))};
  }

  inline std::vector<GroupTable> random_group_family() {
    auto const z2 = cyclic_group(2);
    return {trivial_group(), z2, cyclic_group(3), cyclic_group(4), direct_product(z2, z2),
            symmetric_group(3)};
  }

  //! `count` valid actions drawn with a fixed seed: a random space and
  //! group, then random automorphisms for generators of the group, kept
  //! when they extend to an action.  Deterministic for a given seed.
  inline std::vector<CorpusEntry> random_actions(std::size_t   count,
                                                 std::uint32_t seed,
                                                 std::size_t   max_arrows = 12) {
    std::mt19937 rng(seed);
    auto         spaces = random_space_family();
    auto const   groups = random_group_family();
    std::erase_if(spaces, [max_arrows](FiniteGroupoid const& g) {
      return g.num_arrows() > max_arrows;
    });
    if (spaces.empty()) {
      throw CapExceeded("no random space has at most " + std::to_string(max_arrows) + " arrows");
    }
    std::vector<std::vector<GroupoidMorphism>> autos;
    for (auto const& s : spaces) {
      autos.push_back(automorphisms(s));
    }
    auto pick = [&rng](std::size_t n) {
      return static_cast<std::size_t>(rng() % n);
    };
    std::vector<CorpusEntry> out;
    while (out.size() < count) {
      auto const  si   = pick(spaces.size());
      auto const& G    = groups[pick(groups.size())];
      auto const  gens = greedy_generators(G);
      for (int attempt = 0; attempt < 50; ++attempt) {
        std::vector<GroupoidMorphism> images;
        for (std::size_t k = 0; k < gens.size(); ++k) {
          images.push_back(autos[si][pick(autos[si].size())]);
        }
        if (auto act = extend_to_action(G, spaces[si], gens, images)) {
          out.push_back({"random" + std::to_string(out.size()) + ":" + G.name() + "@"
                             + spaces[si].name(),
                         std::move(*act)});
          break;
        }
      }
    }
    return out;
  }

}  // namespace gpdkit

#endif  // GPDKIT_CORPUS_HPP_
