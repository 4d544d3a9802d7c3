#ifndef GPDKIT_ACTION_HPP_
#define GPDKIT_ACTION_HPP_

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "finite_groupoid.hpp"
#include "group_table.hpp"
#include "subgroupoid.hpp"

namespace gpdkit {

  //! A finite group acting on a finite groupoid by automorphisms, given by
  //! total tables: on_objects[g * |Ob| + x] = g.x and
  //! on_arrows[g * |Arr| + a] = g.a.
  //!
  //! The constructor only checks table shapes; the action axioms are
  //! checked by validate_action, and every construction that needs a valid
  //! action checks it on entry.
  class GroupoidAction {
   public:
    GroupoidAction(GroupTable            group,
                   FiniteGroupoid        space,
                   std::vector<ObjectId> on_objects,
                   std::vector<ArrowId>  on_arrows)
        : group_(std::move(group)),
          space_(std::move(space)),
          objects_(std::move(on_objects)),
          arrows_(std::move(on_arrows)) {
      if (objects_.size() != group_.size() * space_.num_objects()
          || arrows_.size() != group_.size() * space_.num_arrows()) {
        throw InvalidStructure("action tables have the wrong size");
      }
      for (auto x : objects_) {
        if (index(x) >= space_.num_objects()) {
          throw InvalidStructure("action sends an object outside the groupoid");
        }
      }
      for (auto a : arrows_) {
        if (index(a) >= space_.num_arrows()) {
          throw InvalidStructure("action sends an arrow outside the groupoid");
        }
      }
    }

    static GroupoidAction trivial(GroupTable group, FiniteGroupoid space) {
      std::vector<ObjectId> obj;
      std::vector<ArrowId>  arr;
      auto const            objects = space.object_list();
      auto const            arrows  = space.arrow_list();
      for (std::size_t g = 0; g < group.size(); ++g) {
        obj.insert(obj.end(), objects.begin(), objects.end());
        arr.insert(arr.end(), arrows.begin(), arrows.end());
      }
      return GroupoidAction(
          std::move(group), std::move(space), std::move(obj), std::move(arr));
    }

    GroupTable const& group() const noexcept {
      return group_;
    }
    FiniteGroupoid const& space() const noexcept {
      return space_;
    }
    ObjectId act(std::size_t g, ObjectId x) const {
      return objects_[g * space_.num_objects() + index(x)];
    }
    ArrowId act(std::size_t g, ArrowId a) const {
      return arrows_[g * space_.num_arrows() + index(a)];
    }
    std::vector<ObjectId> const& object_table() const noexcept {
      return objects_;
    }
    std::vector<ArrowId> const& arrow_table() const noexcept {
      return arrows_;
    }

   private:
    GroupTable            group_;
    FiniteGroupoid        space_;
    std::vector<ObjectId> objects_;
    std::vector<ArrowId>  arrows_;
  };

  //! Lists every failing instance of the action axioms: 1.x = x,
  //! g.(h.x) = (gh).x on objects and arrows, endpoints, g.(a + b) =
  //! g.a + g.b and g.0_x = 0_{g.x}.
  inline ValidationReport validate_action(GroupoidAction const& act) {
    ValidationReport report;
    auto const&      G  = act.group();
    auto const&      sp = act.space();
    auto             gn = [&G](std::size_t g) { return G.element_name(g); };
    auto const       e  = G.identity();
    for (auto x : sp.objects()) {
      if (act.act(e, x) != x) {
        report.add("axiom (i) fails: 1 . " + sp.object_name(x) + " != "
                   + sp.object_name(x));
      }
    }
    for (auto a : sp.arrows()) {
      if (act.act(e, a) != a) {
        report.add("axiom (i) fails: 1 . " + sp.arrow_name(a) + " != "
                   + sp.arrow_name(a));
      }
    }
    for (std::size_t g = 0; g < G.size(); ++g) {
      for (std::size_t h = 0; h < G.size(); ++h) {
        auto const gh = G.multiply(g, h);
        for (auto x : sp.objects()) {
          if (act.act(g, act.act(h, x)) != act.act(gh, x)) {
            report.add("axiom (ii) fails for (g, h, x) = (" + gn(g) + ", "
                       + gn(h) + ", " + sp.object_name(x) + ")");
          }
        }
        for (auto a : sp.arrows()) {
          if (act.act(g, act.act(h, a)) != act.act(gh, a)) {
            report.add("axiom (ii) fails for (g, h, a) = (" + gn(g) + ", "
                       + gn(h) + ", " + sp.arrow_name(a) + ")");
          }
        }
      }
    }
    for (std::size_t g = 0; g < G.size(); ++g) {
      for (auto x : sp.objects()) {
        if (act.act(g, sp.identity(x)) != sp.identity(act.act(g, x))) {
          report.add("axiom (iv) fails: " + gn(g) + " . 0_" + sp.object_name(x)
                     + " is not the identity at " + gn(g) + " . "
                     + sp.object_name(x));
        }
      }
      bool endpoints_ok = true;
      for (auto a : sp.arrows()) {
        auto const ga = act.act(g, a);
        if (sp.source(ga) != act.act(g, sp.source(a))
            || sp.target(ga) != act.act(g, sp.target(a))) {
          report.add(gn(g) + " . " + sp.arrow_name(a)
                     + " does not have the translated endpoints");
          endpoints_ok = false;
        }
      }
      if (!endpoints_ok) {
        continue;
      }
      for (auto u : sp.arrows()) {
        for (auto v : sp.star(sp.target(u))) {
          if (act.act(g, sp.add(v, u)) != sp.add(act.act(g, v), act.act(g, u))) {
            report.add("axiom (iii) fails: " + gn(g) + " . (" + sp.arrow_name(v)
                       + " + " + sp.arrow_name(u) + ") != " + gn(g) + " . "
                       + sp.arrow_name(v) + " + " + gn(g) + " . "
                       + sp.arrow_name(u));
          }
        }
      }
    }
    return report;
  }

  inline void require_valid_action(GroupoidAction const& act) {
    auto report = validate_action(act);
    if (!report.valid()) {
      throw InvalidStructure("invalid action of " + act.group().name() + " on "
                             + act.space().name() + ":\n" + report.to_string());
    }
  }

  //! G-orbits on objects, ordered by first member.
  inline std::vector<std::vector<ObjectId>> object_orbits(GroupoidAction const& act) {
    auto const&              sp = act.space();
    std::size_t const        n  = sp.num_objects();
    std::vector<std::size_t> block(n, n);
    std::vector<std::vector<ObjectId>> out;
    for (auto x : sp.objects()) {
      if (block[index(x)] != n) {
        continue;
      }
      for (std::size_t g = 0; g < act.group().size(); ++g) {
        block[index(act.act(g, x))] = out.size();
      }
      out.emplace_back();
      for (auto y : sp.objects()) {
        if (block[index(y)] == out.size() - 1) {
          out.back().push_back(y);
        }
      }
    }
    return out;
  }

  inline std::vector<std::vector<ArrowId>> arrow_orbits(GroupoidAction const& act) {
    auto const&              sp = act.space();
    std::size_t const        n  = sp.num_arrows();
    std::vector<std::size_t> block(n, n);
    std::vector<std::vector<ArrowId>> out;
    for (auto a : sp.arrows()) {
      if (block[index(a)] != n) {
        continue;
      }
      for (std::size_t g = 0; g < act.group().size(); ++g) {
        block[index(act.act(g, a))] = out.size();
      }
      out.emplace_back();
      for (auto b : sp.arrows()) {
        if (block[index(b)] == out.size() - 1) {
          out.back().push_back(b);
        }
      }
    }
    return out;
  }

  //! Elements fixing x, in group order.
  inline std::vector<std::size_t> stabilizer_elements(GroupoidAction const& act,
                                                      ObjectId              x) {
    if (index(x) >= act.space().num_objects()) {
      throw UnknownName(act.space().name() + " has no object #"
                        + std::to_string(index(x)));
    }
    std::vector<std::size_t> out;
    for (std::size_t g = 0; g < act.group().size(); ++g) {
      if (act.act(g, x) == x) {
        out.push_back(g);
      }
    }
    return out;
  }

  //! The group of stability G_x as a table.
  inline GroupTable stabilizer(GroupoidAction const& act, ObjectId x) {
    return subgroup_table(act.group(),
                          stabilizer_elements(act, x),
                          act.group().name() + "_" + act.space().object_name(x));
  }

  //! The part of the groupoid fixed by every element.  It is wide only when
  //! every object is fixed, and empty when no object is.
  struct FixedSubgroupoid {
    FiniteGroupoid        ambient;
    std::vector<ObjectId> objects;
    std::vector<ArrowId>  arrows;

    bool empty() const noexcept {
      return objects.empty();
    }
    bool is_wide() const noexcept {
      return objects.size() == ambient.num_objects();
    }
    //! Downstream operations that need a wide subgroupoid go through this.
    WideSubgroupoid as_wide() const {
      if (!is_wide()) {
        throw HypothesisFailure("fixed subgroupoid of " + ambient.name()
                                + (empty() ? " is empty" : " is not wide"));
      }
      return WideSubgroupoid(ambient, arrows);
    }
  };

  inline FixedSubgroupoid fixed_subgroupoid(GroupoidAction const& act) {
    require_valid_action(act);
    FixedSubgroupoid out{act.space(), {}, {}};
    auto const&      G = act.group();
    for (auto x : act.space().objects()) {
      bool fixed = true;
      for (std::size_t g = 0; g < G.size() && fixed; ++g) {
        fixed = act.act(g, x) == x;
      }
      if (fixed) {
        out.objects.push_back(x);
      }
    }
    for (auto a : act.space().arrows()) {
      bool fixed = true;
      for (std::size_t g = 0; g < G.size() && fixed; ++g) {
        fixed = act.act(g, a) == a;
      }
      if (fixed) {
        out.arrows.push_back(a);
      }
    }
    return out;
  }

  //! No non-identity element fixes an object.
  inline bool is_free_action(GroupoidAction const& act) {
    for (auto x : act.space().objects()) {
      if (stabilizer_elements(act, x).size() != 1) {
        return false;
      }
    }
    return true;
  }

  //! The subgroupoid fixed by a single element g (objects and arrows with
  //! g.x = x, g.a = a).
  inline FixedSubgroupoid fixed_by(GroupoidAction const& act, std::size_t g) {
    FixedSubgroupoid out{act.space(), {}, {}};
    for (auto x : act.space().objects()) {
      if (act.act(g, x) == x) {
        out.objects.push_back(x);
      }
    }
    for (auto a : act.space().arrows()) {
      if (act.act(g, a) == a) {
        out.arrows.push_back(a);
      }
    }
    return out;
  }

  //! Components of a (not necessarily wide) fixed subgroupoid.
  inline std::vector<std::vector<ObjectId>> components(FixedSubgroupoid const& f) {
    auto const&                        g = f.ambient;
    std::vector<bool>                  in(g.num_arrows(), false);
    std::vector<bool>                  seen(g.num_objects(), false);
    std::vector<std::vector<ObjectId>> out;
    for (auto a : f.arrows) {
      in[index(a)] = true;
    }
    for (auto x : f.objects) {
      if (seen[index(x)]) {
        continue;
      }
      out.emplace_back();
      for (auto y : f.objects) {
        auto hom = g.hom(x, y);
        if (std::any_of(hom.begin(), hom.end(), [&in](ArrowId a) {
              return in[index(a)];
            })) {
          seen[index(y)] = true;
          out.back().push_back(y);
        }
      }
    }
    return out;
  }

}  // namespace gpdkit

#endif  // GPDKIT_ACTION_HPP_
