#ifndef GPDKIT_SUBGROUPOID_HPP_
#define GPDKIT_SUBGROUPOID_HPP_

#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "finite_groupoid.hpp"

namespace gpdkit {

  namespace detail {
    inline std::vector<bool> membership(FiniteGroupoid const&     g,
                                        std::span<ArrowId const> arrows) {
      std::vector<bool> in(g.num_arrows(), false);
      for (auto a : arrows) {
        if (index(a) >= g.num_arrows()) {
          throw UnknownName("arrow #" + std::to_string(index(a)) + " not in "
                            + g.name());
        }
        in[index(a)] = true;
      }
      return in;
    }

    // Empty when the set is a wide subgroupoid, else the first defect.
    inline std::string wide_defect(FiniteGroupoid const&    g,
                                   std::vector<bool> const& in) {
      for (auto x : g.objects()) {
        if (!in[index(g.identity(x))]) {
          return "missing identity " + g.arrow_name(g.identity(x));
        }
      }
      for (auto u : g.arrows()) {
        if (!in[index(u)]) {
          continue;
        }
        if (!in[index(g.inverse(u))]) {
          return "not closed under negatives at " + g.arrow_name(u);
        }
        for (auto v : g.star(g.target(u))) {
          if (in[index(v)] && !in[index(g.add(v, u))]) {
            return "not closed under composition: " + g.arrow_name(v) + " + "
                   + g.arrow_name(u);
          }
        }
      }
      return {};
    }

    // Empty when normal, else a witness a + n - a that leaves the set.
    inline std::string normal_defect(FiniteGroupoid const&    g,
                                     std::vector<bool> const& in) {
      for (auto a : g.arrows()) {
        auto const x = g.source(a);
        for (auto n : g.loops(x)) {
          if (in[index(n)] && !in[index(g.subtract(g.add(a, n), a))]) {
            return "conjugate " + g.arrow_name(a) + " + " + g.arrow_name(n)
                   + " - " + g.arrow_name(a) + " leaves the subgroupoid";
          }
        }
      }
      return {};
    }
  }  // namespace detail

  //! A wide subgroupoid of a finite groupoid: contains every identity and is
  //! closed under composition and negatives.  Both properties are checked on
  //! construction, and normality is computed.
  class WideSubgroupoid {
   public:
    //! Throws InvalidStructure if `arrows` is not a wide subgroupoid, or if
    //! `claim_normal` is set and it is not normal.
    WideSubgroupoid(FiniteGroupoid ambient, std::span<ArrowId const> arrows,
                    bool claim_normal = false)
        : ambient_(std::move(ambient)),
          in_(detail::membership(ambient_, arrows)) {
      auto defect = detail::wide_defect(ambient_, in_);
      if (!defect.empty()) {
        throw InvalidStructure("not a wide subgroupoid of " + ambient_.name()
                               + ": " + defect);
      }
      normal_ = detail::normal_defect(ambient_, in_).empty();
      if (claim_normal && !normal_) {
        throw InvalidStructure("subgroupoid of " + ambient_.name()
                               + " claimed normal but is not: "
                               + detail::normal_defect(ambient_, in_));
      }
      for (auto a : ambient_.arrows()) {
        if (in_[index(a)]) {
          arrows_.push_back(a);
        }
      }
    }

    FiniteGroupoid const& ambient() const noexcept {
      return ambient_;
    }
    bool contains(ArrowId a) const {
      return in_.at(index(a));
    }
    //! Members in ambient arrow order.
    std::vector<ArrowId> const& arrows() const noexcept {
      return arrows_;
    }
    std::size_t size() const noexcept {
      return arrows_.size();
    }
    bool is_normal() const noexcept {
      return normal_;
    }
    bool is_discrete() const noexcept {
      return arrows_.size() == ambient_.num_objects();
    }
    std::vector<ArrowId> loops(ObjectId x) const {
      std::vector<ArrowId> out;
      for (auto a : ambient_.loops(x)) {
        if (in_[index(a)]) {
          out.push_back(a);
        }
      }
      return out;
    }
    std::vector<ArrowId> hom(ObjectId x, ObjectId y) const {
      std::vector<ArrowId> out;
      for (auto a : ambient_.hom(x, y)) {
        if (in_[index(a)]) {
          out.push_back(a);
        }
      }
      return out;
    }

    friend bool operator==(WideSubgroupoid const& a, WideSubgroupoid const& b) {
      return a.ambient_ == b.ambient_ && a.in_ == b.in_;
    }

   private:
    FiniteGroupoid       ambient_;
    std::vector<bool>    in_;
    std::vector<ArrowId> arrows_;
    bool                 normal_ = false;
  };

  inline WideSubgroupoid discrete_subgroupoid(FiniteGroupoid const& g) {
    std::vector<ArrowId> ids;
    for (auto x : g.objects()) {
      ids.push_back(g.identity(x));
    }
    return WideSubgroupoid(g, ids);
  }

  inline WideSubgroupoid whole_subgroupoid(FiniteGroupoid const& g) {
    std::vector<ArrowId> all = g.arrow_list();
    return WideSubgroupoid(g, all);
  }

  //! True iff a n (-a) lies in the subgroupoid for every ambient a : x -> y
  //! and loop n at x in it.  Throws if the arrow set is not a wide
  //! subgroupoid.
  inline bool is_normal_subgroupoid(FiniteGroupoid const&    g,
                                    std::span<ArrowId const> arrows) {
    auto in     = detail::membership(g, arrows);
    auto defect = detail::wide_defect(g, in);
    if (!defect.empty()) {
      throw InvalidStructure("not a wide subgroupoid of " + g.name() + ": "
                             + defect);
    }
    return detail::normal_defect(g, in).empty();
  }

  inline bool is_normal_subgroupoid(WideSubgroupoid const& n) {
    return n.is_normal();
  }

  //! Components of a wide subgroupoid, blocks ordered by first object.
  inline std::vector<std::vector<ObjectId>> components(WideSubgroupoid const& n) {
    auto const&              g = n.ambient();
    std::size_t const        m = g.num_objects();
    std::vector<std::size_t> block(m, m);
    std::vector<std::vector<ObjectId>> out;
    for (auto x : g.objects()) {
      if (block[index(x)] != m) {
        continue;
      }
      std::size_t const b = out.size();
      out.emplace_back();
      for (auto a : g.star(x)) {
        if (n.contains(a)) {
          block[index(g.target(a))] = b;
        }
      }
      for (auto y : g.objects()) {
        if (block[index(y)] == b) {
          out.back().push_back(y);
        }
      }
    }
    return out;
  }

  //! The subgroupoid as a groupoid in its own right, keeping names and the
  //! ambient arrow order.
  inline FiniteGroupoid as_groupoid(WideSubgroupoid const& n, std::string name) {
    auto const&          g = n.ambient();
    GroupoidBuilder      b(std::move(name));
    std::vector<ArrowId> local(g.num_arrows());
    for (auto x : g.objects()) {
      b.add_object(g.object_name(x), g.arrow_name(g.identity(x)));
      local[index(g.identity(x))] = b.identity(x);
    }
    for (auto a : n.arrows()) {
      if (!g.is_identity(a)) {
        local[index(a)] = b.add_arrow(g.arrow_name(a), g.source(a), g.target(a));
      }
    }
    std::vector<ArrowId> ambient;
    for (auto a : n.arrows()) {
      ambient.resize(std::max(ambient.size(), index(local[index(a)]) + 1));
      ambient[index(local[index(a)])] = a;
    }
    b.fill_compositions([&](ArrowId v, ArrowId u) {
      return local[index(g.add(ambient[index(v)], ambient[index(u)]))];
    });
    return b.build();
  }

}  // namespace gpdkit

#endif  // GPDKIT_SUBGROUPOID_HPP_
