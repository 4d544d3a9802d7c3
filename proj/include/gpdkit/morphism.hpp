#ifndef GPDKIT_MORPHISM_HPP_
#define GPDKIT_MORPHISM_HPP_

#include <algorithm>
#include <string>
#include <vector>

#include "error.hpp"
#include "finite_groupoid.hpp"
#include "subgroupoid.hpp"

namespace gpdkit {

  class GroupoidMorphism;
  ValidationReport validate_morphism(GroupoidMorphism const& f);

  //! A morphism of finite groupoids given by object and arrow tables.
  class GroupoidMorphism {
   public:
    //! Checks the morphism laws; throws InvalidStructure on failure.
    GroupoidMorphism(FiniteGroupoid        source,
                     FiniteGroupoid        target,
                     std::vector<ObjectId> object_map,
                     std::vector<ArrowId>  arrow_map)
        : GroupoidMorphism(unchecked_tag{},
                           std::move(source),
                           std::move(target),
                           std::move(object_map),
                           std::move(arrow_map)) {
      auto report = validate_morphism(*this);
      if (!report.valid()) {
        throw InvalidStructure("not a morphism " + source_.name() + " -> "
                               + target_.name() + ":\n" + report.to_string());
      }
    }

    //! No validation; for feeding validate_morphism deliberately bad data.
    static GroupoidMorphism unchecked(FiniteGroupoid        source,
                                      FiniteGroupoid        target,
                                      std::vector<ObjectId> object_map,
                                      std::vector<ArrowId>  arrow_map) {
      return GroupoidMorphism(unchecked_tag{},
                              std::move(source),
                              std::move(target),
                              std::move(object_map),
                              std::move(arrow_map));
    }

    FiniteGroupoid const& source() const noexcept {
      return source_;
    }
    FiniteGroupoid const& target() const noexcept {
      return target_;
    }
    ObjectId operator()(ObjectId x) const {
      return objects_.at(index(x));
    }
    ArrowId operator()(ArrowId a) const {
      return arrows_.at(index(a));
    }
    std::vector<ObjectId> const& object_map() const noexcept {
      return objects_;
    }
    std::vector<ArrowId> const& arrow_map() const noexcept {
      return arrows_;
    }

   private:
    struct unchecked_tag {};
    GroupoidMorphism(unchecked_tag,
                     FiniteGroupoid        source,
                     FiniteGroupoid        target,
                     std::vector<ObjectId> object_map,
                     std::vector<ArrowId>  arrow_map)
        : source_(std::move(source)),
          target_(std::move(target)),
          objects_(std::move(object_map)),
          arrows_(std::move(arrow_map)) {}

    FiniteGroupoid        source_;
    FiniteGroupoid        target_;
    std::vector<ObjectId> objects_;
    std::vector<ArrowId>  arrows_;
  };

  inline ValidationReport validate_morphism(GroupoidMorphism const& f) {
    ValidationReport report;
    auto const&      k = f.source();
    auto const&      h = f.target();
    if (f.object_map().size() != k.num_objects()
        || f.arrow_map().size() != k.num_arrows()) {
      report.add("object or arrow table has the wrong length");
      return report;
    }
    for (auto x : k.objects()) {
      if (index(f(x)) >= h.num_objects()) {
        report.add("object " + k.object_name(x) + " maps outside the target");
      }
    }
    for (auto a : k.arrows()) {
      if (index(f(a)) >= h.num_arrows()) {
        report.add("arrow " + k.arrow_name(a) + " maps outside the target");
      }
    }
    if (!report.valid()) {
      return report;
    }
    for (auto a : k.arrows()) {
      if (h.source(f(a)) != f(k.source(a)) || h.target(f(a)) != f(k.target(a))) {
        report.add("arrow " + k.arrow_name(a) + " does not respect endpoints");
      }
    }
    for (auto x : k.objects()) {
      if (f(k.identity(x)) != h.identity(f(x))) {
        report.add("identity at " + k.object_name(x)
                   + " does not map to an identity");
      }
    }
    if (!report.valid()) {
      return report;
    }
    for (auto u : k.arrows()) {
      for (auto v : k.star(k.target(u))) {
        if (f(k.add(v, u)) != h.add(f(v), f(u))) {
          report.add("composition " + k.arrow_name(v) + " + " + k.arrow_name(u)
                     + " is not preserved");
        }
      }
    }
    return report;
  }

  inline GroupoidMorphism identity_morphism(FiniteGroupoid const& g) {
    auto obj = g.object_list();
    auto arr = g.arrow_list();
    return GroupoidMorphism(g, g, std::move(obj), std::move(arr));
  }

  //! f after g.
  inline GroupoidMorphism compose(GroupoidMorphism const& f,
                                  GroupoidMorphism const& g) {
    if (!(g.target() == f.source())) {
      throw InvalidStructure("morphisms are not composable");
    }
    std::vector<ObjectId> obj;
    std::vector<ArrowId>  arr;
    for (auto x : g.source().objects()) {
      obj.push_back(f(g(x)));
    }
    for (auto a : g.source().arrows()) {
      arr.push_back(f(g(a)));
    }
    return GroupoidMorphism(g.source(), f.target(), std::move(obj), std::move(arr));
  }

  inline bool is_object_surjective(GroupoidMorphism const& f) {
    std::vector<bool> hit(f.target().num_objects(), false);
    for (auto y : f.object_map()) {
      hit[index(y)] = true;
    }
    return std::find(hit.begin(), hit.end(), false) == hit.end();
  }

  //! Object surjective and full: every K(x,y) -> H(fx,fy) is onto.
  inline bool is_quotient_morphism(GroupoidMorphism const& f) {
    if (!is_object_surjective(f)) {
      return false;
    }
    auto const&       k = f.source();
    auto const&       h = f.target();
    std::vector<bool> hit(h.num_arrows());
    for (auto x : k.objects()) {
      for (auto y : k.objects()) {
        std::fill(hit.begin(), hit.end(), false);
        for (auto a : k.hom(x, y)) {
          hit[index(f(a))] = true;
        }
        for (auto b : h.hom(f(x), f(y))) {
          if (!hit[index(b)]) {
            return false;
          }
        }
      }
    }
    return true;
  }

  namespace detail {
    // 0: neither, 1: star-surjective, 2: star-bijective
    inline int star_behaviour(GroupoidMorphism const& f) {
      auto const&       k = f.source();
      auto const&       h = f.target();
      bool              injective = true;
      std::vector<bool> hit(h.num_arrows());
      for (auto x : k.objects()) {
        std::fill(hit.begin(), hit.end(), false);
        for (auto a : k.star(x)) {
          if (hit[index(f(a))]) {
            injective = false;
          }
          hit[index(f(a))] = true;
        }
        for (auto b : h.star(f(x))) {
          if (!hit[index(b)]) {
            return 0;
          }
        }
      }
      return injective ? 2 : 1;
    }
  }  // namespace detail

  //! Star-surjective: each St x -> St fx is onto.
  inline bool is_fibration(GroupoidMorphism const& f) {
    return detail::star_behaviour(f) >= 1;
  }

  //! Star-bijective: each St x -> St fx is a bijection.
  inline bool is_covering(GroupoidMorphism const& f) {
    return detail::star_behaviour(f) == 2;
  }

  //! True iff every restriction K(x) -> H(fx) is a group isomorphism.
  inline bool is_iso_on_object_groups(GroupoidMorphism const& f) {
    auto const& k = f.source();
    auto const& h = f.target();
    for (auto x : k.objects()) {
      auto const        loops = k.loops(x);
      std::vector<bool> hit(h.num_arrows(), false);
      for (auto a : loops) {
        if (hit[index(f(a))]) {
          return false;
        }
        hit[index(f(a))] = true;
      }
      if (loops.size() != h.loops(f(x)).size()) {
        return false;
      }
    }
    return true;
  }

  //! Arrows sent to identities.  Kernels are always normal; this is
  //! re-verified rather than assumed.
  inline WideSubgroupoid kernel(GroupoidMorphism const& f) {
    std::vector<ArrowId> ker;
    for (auto a : f.source().arrows()) {
      if (f.target().is_identity(f(a))) {
        ker.push_back(a);
      }
    }
    return WideSubgroupoid(f.source(), ker, true);
  }

  //! Bijective on objects and arrows (a morphism with these properties is
  //! an isomorphism of groupoids).
  inline bool is_isomorphism(GroupoidMorphism const& f) {
    if (f.source().num_objects() != f.target().num_objects()
        || f.source().num_arrows() != f.target().num_arrows()) {
      return false;
    }
    std::vector<bool> hit(f.target().num_arrows(), false);
    for (auto a : f.arrow_map()) {
      if (hit[index(a)]) {
        return false;
      }
      hit[index(a)] = true;
    }
    return is_object_surjective(f);
  }

}  // namespace gpdkit

#endif  // GPDKIT_MORPHISM_HPP_
