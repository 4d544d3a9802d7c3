#ifndef GPDKIT_ORACLE_HPP_
#define GPDKIT_ORACLE_HPP_

// Brute-force checkers.  Nothing here calls the construction code it is
// used to validate: closures, quotients and invariants are recomputed from
// the tables directly.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "action.hpp"
#include "error.hpp"
#include "finite_groupoid.hpp"
#include "group_table.hpp"
#include "morphism.hpp"
#include "presented.hpp"
#include "standard_groupoids.hpp"
#include "subgroupoid.hpp"

namespace gpdkit::oracle {

  inline constexpr std::size_t enumerate_source_cap  = 10;
  inline constexpr std::size_t enumerate_target_cap  = 8;
  inline constexpr std::size_t normal_closure_cap    = 24;
  inline constexpr std::size_t finite_group_cap      = 1000;
  inline constexpr std::size_t coset_enumeration_cap = 200000;

  //! Bumped whenever the standard target family changes.
  inline constexpr int standard_targets_version = 1;

  //! Caps in force for one run.  Each may be lowered, never raised above
  //! the compiled constants.
  struct Caps {
    std::size_t enumerate_source = enumerate_source_cap;
    std::size_t enumerate_target = enumerate_target_cap;
    std::size_t normal_closure   = normal_closure_cap;
    std::size_t finite_group     = finite_group_cap;

    static Caps lowered_to(std::size_t n) {
      return {std::min(n, enumerate_source_cap), std::min(n, enumerate_target_cap),
              std::min(n, normal_closure_cap), std::min(n, finite_group_cap)};
    }
  };

  ////////////////////////////////////////////////////////////////////////
  // Morphism enumeration
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    class MorphismEnumerator {
      static constexpr std::uint32_t unset = UINT32_MAX;

     public:
      MorphismEnumerator(FiniteGroupoid const& a, FiniteGroupoid const& b) : a_(a), b_(b) {}

      std::vector<GroupoidMorphism> run() {
        obj_.assign(a_.num_objects(), 0);
        objects(0);
        return std::move(out_);
      }

     private:
      void objects(std::size_t i) {
        if (i == a_.num_objects()) {
          arr_.assign(a_.num_arrows(), unset);
          arrows(0);
          return;
        }
        for (std::size_t y = 0; y < b_.num_objects(); ++y) {
          obj_[i] = static_cast<std::uint32_t>(y);
          objects(i + 1);
        }
      }

      bool consistent(std::size_t i) const {
        auto const u = to_arrow(i);
        for (std::size_t j = 0; j <= i; ++j) {
          auto const v = to_arrow(j);
          for (auto [x, y] : {std::pair{u, v}, std::pair{v, u}}) {
            auto const xy = a_.compose(x, y);
            if (!xy || index(*xy) > i) {
              continue;
            }
            auto const image = b_.compose(to_arrow(arr_[index(x)]), to_arrow(arr_[index(y)]));
            if (!image || index(*image) != arr_[index(*xy)]) {
              return false;
            }
          }
        }
        return true;
      }

      void arrows(std::size_t i) {
        if (i == a_.num_arrows()) {
          std::vector<ObjectId> om;
          std::vector<ArrowId>  am;
          for (auto o : obj_) {
            om.push_back(to_object(o));
          }
          for (auto v : arr_) {
            am.push_back(to_arrow(v));
          }
          out_.push_back(GroupoidMorphism::unchecked(a_, b_, std::move(om), std::move(am)));
          return;
        }
        auto const u = to_arrow(i);
        auto const s = to_object(obj_[index(a_.source(u))]);
        auto const t = to_object(obj_[index(a_.target(u))]);
        for (auto v : b_.hom(s, t)) {
          if (a_.is_identity(u) && v != b_.identity(s)) {
            continue;
          }
          arr_[i] = static_cast<std::uint32_t>(index(v));
          if (consistent(i)) {
            arrows(i + 1);
          }
        }
        arr_[i] = unset;
      }

      FiniteGroupoid const&         a_;
      FiniteGroupoid const&         b_;
      std::vector<std::uint32_t>    obj_;
      std::vector<std::uint32_t>    arr_;
      std::vector<GroupoidMorphism> out_;
    };
  }  // namespace detail

  //! Every morphism a -> b, by exhaustive assignment in arrow order with
  //! pruning on endpoints, identities and compositions.
  inline std::vector<GroupoidMorphism> enumerate_morphisms(FiniteGroupoid const& a,
                                                           FiniteGroupoid const& b,
                                                           Caps const& caps = {}) {
    if (a.num_arrows() > caps.enumerate_source || b.num_arrows() > caps.enumerate_target) {
      throw CapExceeded("morphism enumeration limited to " + std::to_string(caps.enumerate_source)
                        + " source and " + std::to_string(caps.enumerate_target)
                        + " target arrows (" + a.name() + " has "
                        + std::to_string(a.num_arrows()) + ", " + b.name() + " has "
                        + std::to_string(b.num_arrows()) + ")");
    }
    return detail::MorphismEnumerator(a, b).run();
  }

  ////////////////////////////////////////////////////////////////////////
  // Universal property
  ////////////////////////////////////////////////////////////////////////

  inline std::vector<FiniteGroupoid> standard_targets() {
    return {one_object_groupoid(trivial_group()),
            one_object_groupoid(cyclic_group(2)),
            one_object_groupoid(cyclic_group(3)),
            one_object_groupoid(symmetric_group(3)),
            tree_groupoid("tree2", {"u", "v"}),
            discrete_groupoid("discrete2", {"u", "v"})};
  }

  struct UniversalPropertyReport {
    std::size_t              invariant_morphisms = 0;
    std::vector<std::string> failures;

    bool passed() const noexcept {
      return failures.empty();
    }
  };

  namespace detail {
    inline std::string describe(GroupoidMorphism const& f) {
      std::string out = "{";
      for (auto a : f.source().arrows()) {
        out += (index(a) ? ", " : "") + f.source().arrow_name(a) + " -> "
               + f.target().arrow_name(f(a));
      }
      return out + "}";
    }

    inline bool constant_on_orbits(GroupoidAction const& act, GroupoidMorphism const& f) {
      for (std::size_t g = 0; g < act.group().size(); ++g) {
        for (auto x : act.space().objects()) {
          if (f(act.act(g, x)) != f(x)) {
            return false;
          }
        }
        for (auto a : act.space().arrows()) {
          if (f(act.act(g, a)) != f(a)) {
            return false;
          }
        }
      }
      return true;
    }

    inline std::vector<std::uint32_t> key(GroupoidMorphism const& f) {
      std::vector<std::uint32_t> k;
      for (auto x : f.object_map()) {
        k.push_back(static_cast<std::uint32_t>(index(x)));
      }
      for (auto a : f.arrow_map()) {
        k.push_back(static_cast<std::uint32_t>(index(a)));
      }
      return k;
    }
  }  // namespace detail

  //! For each target and each morphism phi from the space that is constant
  //! on orbits, checks that exactly one psi : delta -> target has psi p = phi.
  inline UniversalPropertyReport
  check_universal_property(GroupoidAction const&              act,
                           GroupoidMorphism const&            p,
                           std::vector<FiniteGroupoid> const& targets,
                           Caps const&                        caps = {}) {
    if (!(p.source() == act.space())) {
      throw InvalidStructure("candidate does not start at the acted-on groupoid");
    }
    if (!detail::constant_on_orbits(act, p)) {
      throw HypothesisFailure("candidate is not constant on orbits");
    }
    UniversalPropertyReport report;
    for (auto const& phi_target : targets) {
      std::map<std::vector<std::uint32_t>, std::size_t> factorisations;
      for (auto const& psi : enumerate_morphisms(p.target(), phi_target, caps)) {
        std::vector<ObjectId> om;
        std::vector<ArrowId>  am;
        for (auto x : act.space().objects()) {
          om.push_back(psi(p(x)));
        }
        for (auto a : act.space().arrows()) {
          am.push_back(psi(p(a)));
        }
        ++factorisations[detail::key(
            GroupoidMorphism::unchecked(act.space(), phi_target, std::move(om), std::move(am)))];
      }
      for (auto const& phi : enumerate_morphisms(act.space(), phi_target, caps)) {
        if (!detail::constant_on_orbits(act, phi)) {
          continue;
        }
        ++report.invariant_morphisms;
        auto const it    = factorisations.find(detail::key(phi));
        auto const count = it == factorisations.end() ? 0 : it->second;
        if (count == 0) {
          report.failures.push_back("existence fails for " + phi_target.name() + ": phi = "
                                    + detail::describe(phi) + " does not factor");
        } else if (count > 1) {
          report.failures.push_back("uniqueness fails for " + phi_target.name() + ": phi = "
                                    + detail::describe(phi) + " factors "
                                    + std::to_string(count) + " ways");
        }
      }
    }
    return report;
  }

  ////////////////////////////////////////////////////////////////////////
  // Normal closure by lattice enumeration
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    using Mask = std::uint32_t;

    inline Mask closure(FiniteGroupoid const& k, Mask m) {
      for (auto x : k.objects()) {
        m |= Mask{1} << index(k.identity(x));
      }
      for (bool grew = true; grew;) {
        grew = false;
        for (auto u : k.arrows()) {
          if (!(m >> index(u) & 1)) {
            continue;
          }
          Mask add = Mask{1} << index(k.inverse(u));
          for (auto v : k.arrows()) {
            if (m >> index(v) & 1) {
              if (auto w = k.compose(v, u)) {
                add |= Mask{1} << index(*w);
              }
            }
          }
          if ((m | add) != m) {
            m |= add;
            grew = true;
          }
        }
      }
      return m;
    }

    inline bool normal(FiniteGroupoid const& k, Mask m) {
      for (auto n : k.arrows()) {
        if (!(m >> index(n) & 1) || !k.is_loop(n)) {
          continue;
        }
        for (auto a : k.star(k.source(n))) {
          auto c = k.add(k.add(a, n), k.inverse(a));
          if (!(m >> index(c) & 1)) {
            return false;
          }
        }
      }
      return true;
    }
  }  // namespace detail

  //! Intersection of every normal wide subgroupoid containing R, found by
  //! listing all wide subgroupoids that contain R.
  inline WideSubgroupoid minimal_normal_closure(FiniteGroupoid const&     k,
                                                std::span<ArrowId const> r,
                                                Caps const&               caps = {}) {
    if (k.num_arrows() > caps.normal_closure) {
      throw CapExceeded("normal closure oracle limited to "
                        + std::to_string(caps.normal_closure) + " arrows ("
                        + k.name() + " has " + std::to_string(k.num_arrows()) + ")");
    }
    detail::Mask start = 0;
    for (auto a : r) {
      start |= detail::Mask{1} << index(a);
    }
    start = detail::closure(k, start);
    std::set<detail::Mask>    seen{start};
    std::vector<detail::Mask> todo{start};
    detail::Mask              meet = (k.num_arrows() == 32) ? ~detail::Mask{0}
                                                            : (detail::Mask{1} << k.num_arrows()) - 1;
    while (!todo.empty()) {
      auto const m = todo.back();
      todo.pop_back();
      if (detail::normal(k, m)) {
        meet &= m;
      }
      for (auto a : k.arrows()) {
        if (m >> index(a) & 1) {
          continue;
        }
        auto next = detail::closure(k, m | detail::Mask{1} << index(a));
        if (seen.insert(next).second) {
          todo.push_back(next);
        }
      }
    }
    std::vector<ArrowId> arrows;
    for (auto a : k.arrows()) {
      if (meet >> index(a) & 1) {
        arrows.push_back(a);
      }
    }
    return WideSubgroupoid(k, arrows);
  }

  ////////////////////////////////////////////////////////////////////////
  // Finite groups
  ////////////////////////////////////////////////////////////////////////

  //! Normal closure of S in H by conjugation and product saturation, as a
  //! membership vector.
  inline std::vector<bool> normal_closure_elements(GroupTable const&               h,
                                                   std::vector<std::size_t> const& s) {
    std::vector<bool>        in(h.size(), false);
    std::vector<std::size_t> members;
    auto                     add = [&](std::size_t x) {
      if (!in[x]) {
        in[x] = true;
        members.push_back(x);
      }
    };
    add(h.identity());
    for (auto x : s) {
      add(x);
    }
    for (std::size_t i = 0; i < members.size(); ++i) {
      auto const x = members[i];
      for (std::size_t g = 0; g < h.size(); ++g) {
        add(h.multiply(h.multiply(g, x), h.inverse(g)));
      }
      for (std::size_t j = 0; j <= i; ++j) {
        add(h.multiply(x, members[j]));
        add(h.multiply(members[j], x));
      }
    }
    return in;
  }

  //! H/N where N is the normal closure of S; cosets are named [g] after
  //! their first element.
  inline GroupTable finite_quotient(GroupTable const&               h,
                                    std::vector<std::size_t> const& s,
                                    Caps const&                     caps = {}) {
    if (h.size() > caps.finite_group) {
      throw CapExceeded("finite quotient limited to groups of order "
                        + std::to_string(caps.finite_group));
    }
    auto const               in = normal_closure_elements(h, s);
    std::vector<std::size_t> coset(h.size(), SIZE_MAX);
    std::vector<std::size_t> rep;
    for (std::size_t g = 0; g < h.size(); ++g) {
      if (coset[g] != SIZE_MAX) {
        continue;
      }
      for (std::size_t n = 0; n < h.size(); ++n) {
        if (in[n]) {
          coset[h.multiply(g, n)] = rep.size();
        }
      }
      rep.push_back(g);
    }
    std::vector<std::string> names;
    std::vector<std::size_t> products;
    for (auto g : rep) {
      names.push_back("[" + h.element_name(g) + "]");
    }
    for (auto a : rep) {
      for (auto b : rep) {
        products.push_back(coset[h.multiply(a, b)]);
      }
    }
    return GroupTable(h.name() + "/N", std::move(names), std::move(products));
  }

  //! Invariant factors of a finite abelian group from its element orders:
  //! per prime p, the counts of elements killed by p^k give the exponents.
  inline AbelianInvariants abelian_group_invariants(GroupTable const& a) {
    if (!a.is_abelian()) {
      throw HypothesisFailure(a.name() + " is not abelian");
    }
    std::vector<std::size_t> orders(a.size());
    for (std::size_t g = 0; g < a.size(); ++g) {
      orders[g] = a.order_of(g);
    }
    std::size_t                           n = a.size();
    std::vector<std::vector<std::size_t>> prime_powers;  // descending per prime
    for (std::size_t p = 2; p <= n; ++p) {
      if (n % p != 0) {
        continue;
      }
      while (n % p == 0) {
        n /= p;
      }
      // log_p of |{g : g^(p^k) = 1}|
      std::vector<std::size_t> c{0};
      for (std::size_t pk = p;; pk *= p) {
        std::size_t count = 0;
        for (auto o : orders) {
          count += (pk % o == 0) ? 1 : 0;
        }
        std::size_t log = 0;
        for (std::size_t v = count; v > 1; v /= p) {
          ++log;
        }
        if (log == c.back()) {
          break;
        }
        c.push_back(log);
      }
      // factors of exponent >= k number c[k] - c[k-1]
      std::vector<std::size_t> exps;
      for (std::size_t k = 1; k < c.size(); ++k) {
        auto const at_least_k      = c[k] - c[k - 1];
        auto const at_least_next   = k + 1 < c.size() ? c[k + 1] - c[k] : 0;
        for (std::size_t i = 0; i < at_least_k - at_least_next; ++i) {
          std::size_t q = 1;
          for (std::size_t j = 0; j < k; ++j) {
            q *= p;
          }
          exps.push_back(q);
        }
      }
      std::sort(exps.rbegin(), exps.rend());
      prime_powers.push_back(std::move(exps));
    }
    std::size_t width = 0;
    for (auto const& v : prime_powers) {
      width = std::max(width, v.size());
    }
    std::vector<std::uint64_t> factors(width, 1);
    for (auto const& v : prime_powers) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        factors[width - 1 - i] *= v[i];
      }
    }
    AbelianInvariants out;
    for (auto f : factors) {
      if (f > 1) {
        out.torsion.push_back(f);
      }
    }
    return out;
  }

  //! H divided by the normal closure of its commutators.
  inline AbelianInvariants brute_abelianization(GroupTable const& h, Caps const& caps = {}) {
    std::vector<std::size_t> commutators;
    for (std::size_t a = 0; a < h.size(); ++a) {
      for (std::size_t b = 0; b < h.size(); ++b) {
        commutators.push_back(
            h.multiply(h.multiply(a, b), h.inverse(h.multiply(b, a))));
      }
    }
    return abelian_group_invariants(finite_quotient(h, commutators, caps));
  }

  ////////////////////////////////////////////////////////////////////////
  // Coset enumeration
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    //! Todd-Coxeter over the trivial subgroup, HLT strategy with
    //! coincidence processing.
    class CosetTable {
      static constexpr std::int64_t none = -1;

     public:
      CosetTable(GroupPresentation const& p, std::size_t cap)
          : cols_(2 * p.generators.size()), cap_(cap) {
        for (auto const& r : p.relators) {
          std::vector<std::size_t> w;
          for (auto l : r) {
            w.push_back(2 * l.index + (l.inverse ? 1 : 0));
          }
          relators_.push_back(std::move(w));
        }
        new_coset();
      }

      std::size_t enumerate() {
        for (std::size_t c = 0; c < parent_.size(); ++c) {
          for (auto const& r : relators_) {
            if (!live(c)) {
              break;
            }
            scan_and_fill(c, r);
          }
          for (std::size_t x = 0; x < cols_ && live(c); ++x) {
            if (at(c, x) == none) {
              define(c, x);
            }
          }
        }
        std::size_t count = 0;
        for (std::size_t c = 0; c < parent_.size(); ++c) {
          count += live(c) ? 1 : 0;
        }
        return count;
      }

     private:
      static std::size_t inv(std::size_t x) {
        return x ^ 1;
      }
      std::int64_t& at(std::size_t c, std::size_t x) {
        return table_[c * cols_ + x];
      }
      bool live(std::size_t c) const {
        return parent_[c] == c;
      }
      std::size_t new_coset() {
        if (parent_.size() >= cap_) {
          throw CapExceeded("coset enumeration exceeded " + std::to_string(cap_) + " cosets");
        }
        parent_.push_back(parent_.size());
        table_.resize(table_.size() + cols_, none);
        return parent_.size() - 1;
      }
      void define(std::size_t c, std::size_t x) {
        auto const d = new_coset();
        at(c, x)      = static_cast<std::int64_t>(d);
        at(d, inv(x)) = static_cast<std::int64_t>(c);
      }
      std::size_t rep(std::size_t c) {
        auto r = c;
        while (parent_[r] != r) {
          r = parent_[r];
        }
        while (parent_[c] != r) {
          auto next  = parent_[c];
          parent_[c] = r;
          c          = next;
        }
        return r;
      }
      void merge(std::size_t k, std::size_t l, std::vector<std::size_t>& queue) {
        k = rep(k);
        l = rep(l);
        if (k == l) {
          return;
        }
        parent_[std::max(k, l)] = std::min(k, l);
        queue.push_back(std::max(k, l));
      }
      void coincidence(std::size_t a, std::size_t b) {
        std::vector<std::size_t> queue;
        merge(a, b, queue);
        for (std::size_t i = 0; i < queue.size(); ++i) {
          auto const e = queue[i];
          for (std::size_t x = 0; x < cols_; ++x) {
            auto const fe = at(e, x);
            if (fe == none) {
              continue;
            }
            auto const f = static_cast<std::size_t>(fe);
            if (at(f, inv(x)) == static_cast<std::int64_t>(e)) {
              at(f, inv(x)) = none;
            }
            auto const e1 = rep(e);
            auto const f1 = rep(f);
            if (at(e1, x) != none) {
              merge(f1, static_cast<std::size_t>(at(e1, x)), queue);
            } else if (at(f1, inv(x)) != none) {
              merge(e1, static_cast<std::size_t>(at(f1, inv(x))), queue);
            } else {
              at(e1, x)      = static_cast<std::int64_t>(f1);
              at(f1, inv(x)) = static_cast<std::int64_t>(e1);
            }
          }
        }
      }
      void scan_and_fill(std::size_t c, std::vector<std::size_t> const& w) {
        if (w.empty()) {
          return;
        }
        std::size_t f = c, b = c;
        std::size_t i = 0, j = w.size();  // unscanned letters are w[i, j)
        for (;;) {
          while (i < j && at(f, w[i]) != none) {
            f = static_cast<std::size_t>(at(f, w[i++]));
          }
          if (i == j) {
            if (f != b) {
              coincidence(f, b);
            }
            return;
          }
          while (j > i && at(b, inv(w[j - 1])) != none) {
            b = static_cast<std::size_t>(at(b, inv(w[--j])));
          }
          if (j == i) {
            coincidence(f, b);
            return;
          }
          if (j == i + 1) {
            at(f, w[i])      = static_cast<std::int64_t>(b);
            at(b, inv(w[i])) = static_cast<std::int64_t>(f);
            return;
          }
          define(f, w[i]);
        }
      }

      std::size_t                           cols_;
      std::size_t                           cap_;
      std::vector<std::vector<std::size_t>> relators_;
      std::vector<std::size_t>              parent_;
      std::vector<std::int64_t>             table_;
    };
  }  // namespace detail

  //! Order of a finitely presented group, by coset enumeration.  Throws
  //! CapExceeded for groups that are infinite or too large.
  inline std::size_t presentation_order(GroupPresentation const& p,
                                        std::size_t              cap = coset_enumeration_cap) {
    auto report = validate_presentation(p);
    if (!report.valid()) {
      throw InvalidStructure("invalid presentation " + p.name + ":\n" + report.to_string());
    }
    return detail::CosetTable(p, cap).enumerate();
  }

}  // namespace gpdkit::oracle

#endif  // GPDKIT_ORACLE_HPP_
