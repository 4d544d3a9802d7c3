#ifndef GPDKIT_ISOMORPHISM_HPP_
#define GPDKIT_ISOMORPHISM_HPP_

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "finite_groupoid.hpp"
#include "morphism.hpp"
#include "standard_groupoids.hpp"

namespace gpdkit {

  //! Isomorphism search is plain backtracking and meant for desk-scale
  //! inputs.  Above the soft cap the caller must raise the limit
  //! explicitly; it can never exceed the hard cap.
  inline constexpr std::size_t isomorphism_soft_cap = 64;
  inline constexpr std::size_t isomorphism_hard_cap = 512;

  namespace detail {

    class IsoSearch {
      static constexpr std::uint32_t unset = UINT32_MAX;

     public:
      IsoSearch(FiniteGroupoid const& a, FiniteGroupoid const& b)
          : a_(a), b_(b), into_a_(a.num_objects()) {
        for (auto u : a_.arrows()) {
          into_a_[index(a_.target(u))].push_back(u);
        }
        for (auto u : a_.arrows()) {
          order_a_.push_back(a_.is_loop(u) ? a_.loop_order(u) : 0);
        }
        for (auto u : b_.arrows()) {
          order_b_.push_back(b_.is_loop(u) ? b_.loop_order(u) : 0);
        }
      }

      // Calls fn(morphism) for each isomorphism until fn returns false.
      // Returns false if stopped early.
      template <typename Fn>
      bool run(Fn&& fn) {
        if (a_.num_objects() != b_.num_objects()
            || a_.num_arrows() != b_.num_arrows()) {
          return true;
        }
        auto sig_a = signatures(a_, order_a_);
        auto sig_b = signatures(b_, order_b_);
        {
          auto sa = sig_a, sb = sig_b;
          std::sort(sa.begin(), sa.end());
          std::sort(sb.begin(), sb.end());
          if (sa != sb) {
            return true;
          }
        }
        obj_.assign(a_.num_objects(), unset);
        obj_used_.assign(b_.num_objects(), false);
        return objects(0, sig_a, sig_b, fn);
      }

     private:
      using signature = std::vector<std::size_t>;

      static std::vector<signature>
      signatures(FiniteGroupoid const& g, std::vector<std::size_t> const& order) {
        std::vector<signature> out;
        for (auto x : g.objects()) {
          signature s{g.star(x).size(), g.loops(x).size()};
          std::vector<std::size_t> orders;
          for (auto l : g.loops(x)) {
            orders.push_back(order[index(l)]);
          }
          std::sort(orders.begin(), orders.end());
          s.insert(s.end(), orders.begin(), orders.end());
          out.push_back(std::move(s));
        }
        return out;
      }

      template <typename Fn>
      bool objects(std::size_t                   i,
                   std::vector<signature> const& sig_a,
                   std::vector<signature> const& sig_b,
                   Fn&                           fn) {
        if (i == a_.num_objects()) {
          return arrows_start(fn);
        }
        auto const x = to_object(i);
        for (auto y : b_.objects()) {
          if (obj_used_[index(y)] || sig_a[i] != sig_b[index(y)]) {
            continue;
          }
          bool ok = true;
          for (std::size_t j = 0; j < i && ok; ++j) {
            auto const xp = to_object(j);
            auto const yp = to_object(obj_[j]);
            ok = a_.hom(xp, x).size() == b_.hom(yp, y).size()
                 && a_.hom(x, xp).size() == b_.hom(y, yp).size();
          }
          if (!ok) {
            continue;
          }
          obj_[i]                = static_cast<std::uint32_t>(index(y));
          obj_used_[index(y)]    = true;
          bool const keep_going  = objects(i + 1, sig_a, sig_b, fn);
          obj_used_[index(y)]    = false;
          obj_[i]                = unset;
          if (!keep_going) {
            return false;
          }
        }
        return true;
      }

      template <typename Fn>
      bool arrows_start(Fn& fn) {
        img_.assign(a_.num_arrows(), unset);
        used_.assign(b_.num_arrows(), false);
        trail_.clear();
        for (auto x : a_.objects()) {
          if (!assign(a_.identity(x), b_.identity(to_object(obj_[index(x)])))) {
            undo(0);
            return true;
          }
        }
        bool keep_going = true;
        if (propagate()) {
          keep_going = arrows(fn);
        }
        undo(0);
        return keep_going;
      }

      template <typename Fn>
      bool arrows(Fn& fn) {
        auto next = std::find(img_.begin(), img_.end(), unset);
        if (next == img_.end()) {
          std::vector<ObjectId> om;
          std::vector<ArrowId>  am;
          for (auto o : obj_) {
            om.push_back(to_object(o));
          }
          for (auto v : img_) {
            am.push_back(to_arrow(v));
          }
          return fn(GroupoidMorphism(a_, b_, std::move(om), std::move(am)));
        }
        auto const u = to_arrow(static_cast<std::size_t>(next - img_.begin()));
        auto const s = to_object(obj_[index(a_.source(u))]);
        auto const t = to_object(obj_[index(a_.target(u))]);
        for (auto v : b_.hom(s, t)) {
          if (used_[index(v)] || order_a_[index(u)] != order_b_[index(v)]) {
            continue;
          }
          std::size_t const mark = trail_.size();
          bool keep_going = true;
          if (assign(u, v) && propagate()) {
            keep_going = arrows(fn);
          }
          undo(mark);
          if (!keep_going) {
            return false;
          }
        }
        return true;
      }

      bool assign(ArrowId u, ArrowId v) {
        auto& slot = img_[index(u)];
        if (slot != unset) {
          return slot == index(v);
        }
        if (used_[index(v)]) {
          return false;
        }
        slot              = static_cast<std::uint32_t>(index(v));
        used_[index(v)]   = true;
        trail_.push_back(u);
        queue_.push_back(u);
        return true;
      }

      bool propagate() {
        while (!queue_.empty()) {
          auto const u = queue_.front();
          queue_.pop_front();
          auto const fu = to_arrow(img_[index(u)]);
          if (!assign(a_.inverse(u), b_.inverse(fu))) {
            queue_.clear();
            return false;
          }
          for (auto v : a_.star(a_.target(u))) {
            if (img_[index(v)] != unset
                && !assign(a_.add(v, u), b_.add(to_arrow(img_[index(v)]), fu))) {
              queue_.clear();
              return false;
            }
          }
          for (auto v : into_a_[index(a_.source(u))]) {
            if (img_[index(v)] != unset
                && !assign(a_.add(u, v), b_.add(fu, to_arrow(img_[index(v)])))) {
              queue_.clear();
              return false;
            }
          }
        }
        return true;
      }

      void undo(std::size_t mark) {
        while (trail_.size() > mark) {
          auto const u = trail_.back();
          trail_.pop_back();
          used_[img_[index(u)]] = false;
          img_[index(u)]        = unset;
        }
        queue_.clear();
      }

      FiniteGroupoid const&             a_;
      FiniteGroupoid const&             b_;
      std::vector<std::vector<ArrowId>> into_a_;
      std::vector<std::size_t>          order_a_;
      std::vector<std::size_t>          order_b_;
      std::vector<std::uint32_t>        obj_;
      std::vector<bool>                 obj_used_;
      std::vector<std::uint32_t>        img_;
      std::vector<bool>                 used_;
      std::vector<ArrowId>              trail_;
      std::deque<ArrowId>               queue_;
    };

    inline void check_iso_cap(FiniteGroupoid const& a,
                              FiniteGroupoid const& b,
                              std::size_t           cap) {
      if (cap > isomorphism_hard_cap) {
        throw CapExceeded("isomorphism cap " + std::to_string(cap)
                          + " exceeds the hard cap "
                          + std::to_string(isomorphism_hard_cap));
      }
      if (a.num_arrows() > cap || b.num_arrows() > cap) {
        throw CapExceeded("isomorphism search limited to " + std::to_string(cap)
                          + " arrows (" + a.name() + " has "
                          + std::to_string(a.num_arrows()) + ", " + b.name()
                          + " has " + std::to_string(b.num_arrows()) + ")");
      }
    }
  }  // namespace detail

  //! Calls fn on every isomorphism a -> b, in a deterministic order, until fn
  //! returns false.
  template <typename Fn>
  void for_each_isomorphism(FiniteGroupoid const& a,
                            FiniteGroupoid const& b,
                            Fn&&                  fn,
                            std::size_t           cap = isomorphism_soft_cap) {
    detail::check_iso_cap(a, b, cap);
    detail::IsoSearch search(a, b);
    search.run(fn);
  }

  //! The first isomorphism a -> b found by backtracking, if any.
  inline std::optional<GroupoidMorphism>
  search_isomorphism(FiniteGroupoid const& a,
                     FiniteGroupoid const& b,
                     std::size_t           cap = isomorphism_soft_cap) {
    std::optional<GroupoidMorphism> found;
    for_each_isomorphism(
        a,
        b,
        [&found](GroupoidMorphism const& f) {
          found = f;
          return false;
        },
        cap);
    return found;
  }

  inline std::vector<GroupoidMorphism>
  automorphisms(FiniteGroupoid const& g, std::size_t cap = isomorphism_soft_cap) {
    std::vector<GroupoidMorphism> out;
    for_each_isomorphism(
        g,
        g,
        [&out](GroupoidMorphism const& f) {
          out.push_back(f);
          return true;
        },
        cap);
    return out;
  }

  inline bool isomorphic(FiniteGroupoid const& a,
                         FiniteGroupoid const& b,
                         std::size_t           cap = isomorphism_soft_cap) {
    return search_isomorphism(a, b, cap).has_value();
  }

  inline bool groups_isomorphic(GroupTable const& g,
                                GroupTable const& h,
                                std::size_t       cap = isomorphism_hard_cap) {
    if (g.size() != h.size()) {
      return false;
    }
    return isomorphic(one_object_groupoid(g), one_object_groupoid(h), cap);
  }

}  // namespace gpdkit

#endif  // GPDKIT_ISOMORPHISM_HPP_
