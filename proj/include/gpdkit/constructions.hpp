#ifndef GPDKIT_CONSTRUCTIONS_HPP_
#define GPDKIT_CONSTRUCTIONS_HPP_

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "action.hpp"
#include "error.hpp"
#include "finite_groupoid.hpp"
#include "isomorphism.hpp"
#include "morphism.hpp"
#include "standard_groupoids.hpp"
#include "subgroupoid.hpp"

namespace gpdkit {

  namespace detail {
    [[noreturn]] inline void postcondition_failed(std::string const& what) {
      throw std::logic_error("internal postcondition failed: " + what);
    }
  }  // namespace detail

  ////////////////////////////////////////////////////////////////////////
  // Semidirect product
  ////////////////////////////////////////////////////////////////////////

  //! The semidirect product groupoid of a G-groupoid, with its projection
  //! onto G (as a one-object groupoid) and the pair decomposition of each
  //! arrow.
  struct SemidirectProduct {
    FiniteGroupoid           groupoid;
    GroupoidMorphism         projection;
    std::vector<ArrowId>     gamma_of;
    std::vector<std::size_t> element_of;
    std::vector<ArrowId>     pair_table;  // gamma * |G| + g
    std::size_t              group_size = 0;

    //! The arrow (gamma, g).
    ArrowId pair(ArrowId gamma, std::size_t g) const {
      return pair_table.at(index(gamma) * group_size + g);
    }
    ArrowId gamma(ArrowId a) const {
      return gamma_of.at(index(a));
    }
    std::size_t element(ArrowId a) const {
      return element_of.at(index(a));
    }
  };

  //! Arrows x -> y are the pairs (gamma, g) with gamma : g.x -> y, added by
  //! (delta, h) + (gamma, g) = (delta + h.gamma, hg).  Pairs are listed with
  //! g outermost in group order and gamma in arrow order; the identities
  //! (0_x, 1) come first.
  inline SemidirectProduct semidirect_product(GroupoidAction const& act) {
    require_valid_action(act);
    auto const&       G  = act.group();
    auto const&       sp = act.space();
    std::size_t const n  = G.size();
    auto const        e  = G.identity();
    auto pair_name = [&](ArrowId gamma, std::size_t g) {
      return "(" + sp.arrow_name(gamma) + "," + G.element_name(g) + ")";
    };

    GroupoidBuilder b(sp.name() + "x|" + G.name());
    for (auto x : sp.objects()) {
      b.add_object(sp.object_name(x), pair_name(sp.identity(x), e));
    }
    std::vector<ArrowId> table(sp.num_arrows() * n);
    for (auto x : sp.objects()) {
      table[index(sp.identity(x)) * n + e] = b.identity(x);
    }
    for (std::size_t g = 0; g < n; ++g) {
      auto const ginv = G.inverse(g);
      for (auto gamma : sp.arrows()) {
        if (g == e && sp.is_identity(gamma)) {
          continue;
        }
        table[index(gamma) * n + g] = b.add_arrow(pair_name(gamma, g),
                                                  act.act(ginv, sp.source(gamma)),
                                                  sp.target(gamma));
      }
    }
    std::vector<ArrowId>     gamma_of(b.num_arrows());
    std::vector<std::size_t> element_of(b.num_arrows());
    for (auto gamma : sp.arrows()) {
      for (std::size_t g = 0; g < n; ++g) {
        auto a                = table[index(gamma) * n + g];
        gamma_of[index(a)]    = gamma;
        element_of[index(a)]  = g;
      }
    }
    b.fill_compositions([&](ArrowId second, ArrowId first) {
      auto const delta = gamma_of[index(second)];
      auto const h     = element_of[index(second)];
      auto const gamma = gamma_of[index(first)];
      auto const g     = element_of[index(first)];
      return table[index(sp.add(delta, act.act(h, gamma))) * n + G.multiply(h, g)];
    });
    auto groupoid = b.build();

    auto                  target = one_object_groupoid(G);
    std::vector<ObjectId> obj(groupoid.num_objects(), to_object(0));
    std::vector<ArrowId>  arr;
    for (auto a : groupoid.arrows()) {
      arr.push_back(target.arrow_at(G.element_name(element_of[index(a)])));
    }
    GroupoidMorphism q(groupoid, target, std::move(obj), std::move(arr));
    return {groupoid, q, gamma_of, element_of, table, n};
  }

  //! (gamma, g) . delta = gamma + g.delta, the action of the semidirect
  //! product on arrows of the space via their targets.  Requires
  //! target(delta) to be the source object of (gamma, g).
  inline ArrowId semidirect_action_on_arrows(GroupoidAction const&    act,
                                             SemidirectProduct const& sd,
                                             ArrowId                  pair,
                                             ArrowId                  delta) {
    auto const& sp    = act.space();
    auto const  gamma = sd.gamma(pair);
    auto const  g     = sd.element(pair);
    if (sp.target(delta) != sd.groupoid.source(pair)) {
      throw InvalidStructure("cannot act with " + sd.groupoid.arrow_name(pair)
                             + " on " + sp.arrow_name(delta)
                             + ": target of the arrow is not the source object");
    }
    return sp.add(gamma, act.act(g, delta));
  }

  ////////////////////////////////////////////////////////////////////////
  // Generated subgroupoids and normal closures
  ////////////////////////////////////////////////////////////////////////

  //! The smallest wide subgroupoid containing `generators`, by saturation.
  inline WideSubgroupoid generated_wide_subgroupoid(FiniteGroupoid const&     g,
                                                    std::span<ArrowId const> generators) {
    std::vector<bool>    in(g.num_arrows(), false);
    std::vector<ArrowId> members;
    auto                 add = [&](ArrowId a) {
      if (!in[index(a)]) {
        in[index(a)] = true;
        members.push_back(a);
      }
    };
    for (auto x : g.objects()) {
      add(g.identity(x));
    }
    for (auto r : generators) {
      if (index(r) >= g.num_arrows()) {
        throw UnknownName("generator is not an arrow of " + g.name());
      }
      add(r);
    }
    for (std::size_t i = 0; i < members.size(); ++i) {
      auto const u = members[i];
      add(g.inverse(u));
      for (auto v : g.star(g.target(u))) {
        if (in[index(v)]) {
          add(g.add(v, u));
        }
      }
      for (std::size_t j = 0; j <= i; ++j) {
        auto const v = members[j];
        if (g.target(v) == g.source(u)) {
          add(g.add(u, v));
        }
      }
    }
    return WideSubgroupoid(g, members);
  }

  //! The smallest normal subgroupoid containing `generators`: the
  //! subgroupoid generated by <R> and every conjugate k + h - k of a loop h
  //! of <R>.  One round suffices; the result is checked to be normal.
  inline WideSubgroupoid normal_closure(FiniteGroupoid const&     g,
                                        std::span<ArrowId const> generators) {
    auto                 base = generated_wide_subgroupoid(g, generators);
    std::vector<ArrowId> gens = base.arrows();
    for (auto h : base.arrows()) {
      if (!g.is_loop(h) || g.is_identity(h)) {
        continue;
      }
      for (auto k : g.star(g.source(h))) {
        gens.push_back(g.subtract(g.add(k, h), k));
      }
    }
    auto closure = generated_wide_subgroupoid(g, gens);
    if (!closure.is_normal()) {
      detail::postcondition_failed("normal closure in " + g.name()
                                   + " is not normal");
    }
    return closure;
  }

  ////////////////////////////////////////////////////////////////////////
  // Quotient groupoid
  ////////////////////////////////////////////////////////////////////////

  //! K/N together with the quotient morphism.  Arrow classes are listed by
  //! first member; classes[i] is the class of quotient arrow i.
  struct QuotientGroupoid {
    FiniteGroupoid                    groupoid;
    GroupoidMorphism                  projection;
    std::vector<std::vector<ArrowId>> classes;
  };

  namespace detail {
    struct DisjointSets {
      std::vector<std::size_t> parent;
      explicit DisjointSets(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
      }
      std::size_t find(std::size_t x) {
        while (parent[x] != x) {
          parent[x] = parent[parent[x]];
          x         = parent[x];
        }
        return x;
      }
      void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) {
          parent[std::max(a, b)] = std::min(a, b);
        }
      }
    };
  }  // namespace detail

  //! Quotient by a normal subgroupoid N.  Objects are the components of N;
  //! k' ~ k iff k' = m + k + n with m, n in N; cls k2 + cls k1 =
  //! cls(k2 + l + k1) where l is the first arrow of N joining the ends
  //! of the class representatives.
  inline QuotientGroupoid quotient_groupoid(FiniteGroupoid const&  k,
                                            WideSubgroupoid const& n) {
    if (!(n.ambient() == k)) {
      throw InvalidStructure("subgroupoid does not live in " + k.name());
    }
    if (!n.is_normal()) {
      throw HypothesisFailure("cannot form " + k.name()
                              + "/N: the subgroupoid is not normal");
    }
    auto const               comps = components(n);
    std::vector<std::size_t> comp_of(k.num_objects());
    for (std::size_t c = 0; c < comps.size(); ++c) {
      for (auto x : comps[c]) {
        comp_of[index(x)] = c;
      }
    }
    detail::DisjointSets sets(k.num_arrows());
    for (auto a : k.arrows()) {
      for (auto m : n.arrows()) {
        if (k.target(m) == k.source(a)) {
          sets.unite(index(a), index(k.add(a, m)));
        }
        if (k.source(m) == k.target(a)) {
          sets.unite(index(a), index(k.add(m, a)));
        }
      }
    }
    std::vector<std::size_t>          class_of(k.num_arrows());
    std::vector<std::size_t>          root_class(k.num_arrows(), SIZE_MAX);
    std::vector<std::vector<ArrowId>> classes;
    for (auto a : k.arrows()) {
      auto r = sets.find(index(a));
      if (root_class[r] == SIZE_MAX) {
        root_class[r] = classes.size();
        classes.emplace_back();
      }
      class_of[index(a)] = root_class[r];
      classes[root_class[r]].push_back(a);
    }

    GroupoidBuilder      b(k.name() + "/N");
    std::vector<ArrowId> arrow_of_class(classes.size());
    std::vector<bool>    is_identity_class(classes.size(), false);
    for (auto const& comp : comps) {
      auto const c = class_of[index(k.identity(comp.front()))];
      auto const x = b.add_object("[" + k.object_name(comp.front()) + "]",
                                  "[" + k.arrow_name(classes[c].front()) + "]");
      arrow_of_class[c]    = b.identity(x);
      is_identity_class[c] = true;
    }
    for (std::size_t c = 0; c < classes.size(); ++c) {
      if (is_identity_class[c]) {
        continue;
      }
      auto const rep  = classes[c].front();
      arrow_of_class[c] = b.add_arrow("[" + k.arrow_name(rep) + "]",
                                      to_object(comp_of[index(k.source(rep))]),
                                      to_object(comp_of[index(k.target(rep))]));
    }
    std::vector<std::size_t> class_of_arrow(b.num_arrows());
    for (std::size_t c = 0; c < classes.size(); ++c) {
      class_of_arrow[index(arrow_of_class[c])] = c;
    }
    b.fill_compositions([&](ArrowId second, ArrowId first) {
      auto const k1 = classes[class_of_arrow[index(first)]].front();
      auto const k2 = classes[class_of_arrow[index(second)]].front();
      auto const l  = n.hom(k.target(k1), k.source(k2));
      if (l.empty()) {
        detail::postcondition_failed("no connecting arrow in N");
      }
      return arrow_of_class[class_of[index(k.add(k2, k.add(l.front(), k1)))]];
    });
    auto quotient = b.build();

    std::vector<ObjectId> obj;
    std::vector<ArrowId>  arr;
    for (auto x : k.objects()) {
      obj.push_back(to_object(comp_of[index(x)]));
    }
    for (auto a : k.arrows()) {
      arr.push_back(arrow_of_class[class_of[index(a)]]);
    }
    GroupoidMorphism p(k, quotient, std::move(obj), std::move(arr));
    std::vector<std::vector<ArrowId>> ordered(classes.size());
    for (std::size_t c = 0; c < classes.size(); ++c) {
      ordered[index(arrow_of_class[c])] = classes[c];
    }
    return {quotient, p, std::move(ordered)};
  }

  ////////////////////////////////////////////////////////////////////////
  // Orbit groupoid
  ////////////////////////////////////////////////////////////////////////

  //! The orbit groupoid and its orbit morphism p : Gamma -> Gamma//G, with
  //! the intermediate semidirect product and normal subgroupoid.
  struct OrbitGroupoid {
    SemidirectProduct semidirect;
    WideSubgroupoid   normal;
    QuotientGroupoid  quotient;
    FiniteGroupoid    groupoid;
    GroupoidMorphism  projection;
  };

  //! Builds Gamma x| G, the normal closure N of the arrows (0_{g.x}, g), and
  //! the quotient (Gamma x| G)/N; p is gamma |-> cls(gamma, 1).  Objects of
  //! the result are named [x] after the first object of the orbit, arrows
  //! [gamma] after the first arrow of Gamma mapping to them.
  inline OrbitGroupoid orbit_groupoid(GroupoidAction const& act) {
    auto        sd = semidirect_product(act);
    auto const& sp = act.space();
    auto const& G  = act.group();
    std::vector<ArrowId> relators;
    for (std::size_t g = 0; g < G.size(); ++g) {
      for (auto x : sp.objects()) {
        relators.push_back(sd.pair(sp.identity(act.act(g, x)), g));
      }
    }
    auto n = normal_closure(sd.groupoid, relators);
    auto q = quotient_groupoid(sd.groupoid, n);

    auto const&              qg = q.groupoid;
    std::vector<std::string> object_names, arrow_names;
    std::vector<bool>        named(qg.num_arrows(), false);
    for (auto y : qg.objects()) {
      object_names.push_back(qg.object_name(y));
    }
    arrow_names.resize(qg.num_arrows());
    std::vector<ObjectId> obj;
    std::vector<ArrowId>  arr;
    for (auto x : sp.objects()) {
      obj.push_back(q.projection(x));
    }
    for (auto gamma : sp.arrows()) {
      auto const c = q.projection(sd.pair(gamma, G.identity()));
      arr.push_back(c);
      if (!named[index(c)]) {
        named[index(c)]       = true;
        arrow_names[index(c)] = "[" + sp.arrow_name(gamma) + "]";
      }
    }
    for (auto c : qg.arrows()) {
      if (!named[index(c)]) {
        detail::postcondition_failed("orbit morphism is not surjective on arrows");
      }
    }
    auto orbit = qg.renamed(sp.name() + "//" + G.name(), object_names, arrow_names);
    GroupoidMorphism p(sp, orbit, std::move(obj), std::move(arr));

    for (std::size_t g = 0; g < G.size(); ++g) {
      for (auto gamma : sp.arrows()) {
        if (p(act.act(g, gamma)) != p(gamma)) {
          detail::postcondition_failed("p(g.gamma) != p(gamma)");
        }
      }
    }
    auto const orbits = object_orbits(act);
    if (orbits.size() != orbit.num_objects()) {
      detail::postcondition_failed("objects of the orbit groupoid are not the orbits");
    }
    for (auto const& o : orbits) {
      for (auto x : o) {
        if (p(x) != p(o.front())) {
          detail::postcondition_failed("orbit split by p");
        }
      }
    }
    if (!is_fibration(p)) {
      detail::postcondition_failed("orbit morphism is not a fibration");
    }
    return {std::move(sd), std::move(n), std::move(q), std::move(orbit), std::move(p)};
  }

  //! The arrows gamma - g.gamma for g stabilising the source of gamma,
  //! deduplicated, in arrow order.  Checks that they generate exactly the
  //! kernel of the orbit morphism.
  inline std::vector<ArrowId> orbit_kernel_generators(GroupoidAction const& act) {
    require_valid_action(act);
    auto const&       sp = act.space();
    std::vector<bool> in(sp.num_arrows(), false);
    for (auto gamma : sp.arrows()) {
      for (auto g : stabilizer_elements(act, sp.source(gamma))) {
        in[index(sp.subtract(gamma, act.act(g, gamma)))] = true;
      }
    }
    std::vector<ArrowId> out;
    for (auto a : sp.arrows()) {
      if (in[index(a)]) {
        out.push_back(a);
      }
    }
    auto orbit = orbit_groupoid(act);
    if (!(generated_wide_subgroupoid(sp, out) == kernel(orbit.projection))) {
      detail::postcondition_failed(
          "kernel generators do not generate the kernel of the orbit morphism");
    }
    return out;
  }

  //! For a tree groupoid: G/K with K generated by the elements having a
  //! fixed object.  Checked against the object groups of the orbit
  //! groupoid.
  inline GroupTable tree_orbit_group(GroupoidAction const& act) {
    if (!is_tree_groupoid(act.space())) {
      throw HypothesisFailure(act.space().name() + " is not a tree groupoid");
    }
    require_valid_action(act);
    auto const&              G = act.group();
    std::vector<std::size_t> fixing;
    for (std::size_t g = 0; g < G.size(); ++g) {
      for (auto x : act.space().objects()) {
        if (act.act(g, x) == x) {
          fixing.push_back(g);
          break;
        }
      }
    }
    auto quotient = quotient_group(G, generated_subgroup(G, fixing));
    auto orbit    = orbit_groupoid(act);
    for (auto y : orbit.groupoid.objects()) {
      if (!groups_isomorphic(quotient, object_group(orbit.groupoid, y))) {
        detail::postcondition_failed("G/K differs from an object group of the orbit groupoid");
      }
    }
    return quotient;
  }

  ////////////////////////////////////////////////////////////////////////
  // Restriction to a full subgroupoid
  ////////////////////////////////////////////////////////////////////////

  struct RestrictionReport {
    bool                     hypothesis_holds = true;
    std::vector<std::string> hypothesis_failures;
    bool                     embedding_verified = false;
    std::vector<std::string> issues;
    //! Xi//G, Xi the full subgroupoid on A.
    std::optional<FiniteGroupoid> restricted_orbit;
    //! The full subgroupoid of Gamma//G on A/G.
    std::optional<FiniteGroupoid> full_image;
  };

  //! The action restricted to a G-invariant full subgroupoid; arrows are
  //! numbered as in full_subgroupoid.
  inline std::pair<GroupoidAction, std::vector<ArrowId>>
  restrict_action(GroupoidAction const& act, std::vector<ObjectId> const& objects) {
    auto const&       sp = act.space();
    auto const&       G  = act.group();
    std::vector<bool> in(sp.num_objects(), false);
    for (auto x : objects) {
      if (index(x) >= sp.num_objects()) {
        throw UnknownName(sp.name() + " has no object #" + std::to_string(index(x)));
      }
      in[index(x)] = true;
    }
    for (std::size_t g = 0; g < G.size(); ++g) {
      for (auto x : objects) {
        if (!in[index(act.act(g, x))]) {
          throw InvalidStructure("object set is not G-invariant: "
                                 + G.element_name(g) + " . " + sp.object_name(x)
                                 + " leaves it");
        }
      }
    }
    auto [xi, ambient] = full_subgroupoid(sp, objects, sp.name() + "|A");
    std::vector<std::uint32_t> local(sp.num_arrows(), UINT32_MAX);
    for (auto a : xi.arrows()) {
      local[index(ambient[index(a)])] = static_cast<std::uint32_t>(index(a));
    }
    std::vector<ObjectId> obj;
    std::vector<ArrowId>  arr;
    for (std::size_t g = 0; g < G.size(); ++g) {
      for (auto x : xi.objects()) {
        obj.push_back(xi.object_at(sp.object_name(act.act(g, sp.object_at(xi.object_name(x))))));
      }
      for (auto a : xi.arrows()) {
        arr.push_back(to_arrow(local[index(act.act(g, ambient[index(a)]))]));
      }
    }
    return {GroupoidAction(G, xi, std::move(obj), std::move(arr)), std::move(ambient)};
  }

  //! Checks that Xi//G embeds in Gamma//G as the full subgroupoid on A/G.
  //! A must be G-invariant (else InvalidStructure).  The hypothesis that A
  //! meets each component of the subgroupoid fixed by each g is read as the
  //! subgroupoid of Gamma fixed by g; a failure is reported, not thrown.
  inline RestrictionReport
  restrict_orbit_full_subgroupoid(GroupoidAction const&        act,
                                  std::vector<ObjectId> const& objects) {
    require_valid_action(act);
    auto const&       sp = act.space();
    auto const&       G  = act.group();
    RestrictionReport report;
    auto [restricted, ambient] = restrict_action(act, objects);

    std::vector<bool> in(sp.num_objects(), false);
    for (auto x : objects) {
      in[index(x)] = true;
    }
    for (std::size_t g = 0; g < G.size(); ++g) {
      auto fixed = fixed_by(act, g);
      for (auto const& comp : components(fixed)) {
        if (std::none_of(comp.begin(), comp.end(), [&in](ObjectId x) {
              return in[index(x)];
            })) {
          std::string names;
          for (auto x : comp) {
            names += (names.empty() ? "" : " ") + sp.object_name(x);
          }
          report.hypothesis_holds = false;
          report.hypothesis_failures.push_back(
              "A misses the component {" + names
              + "} of the subgroupoid fixed by " + G.element_name(g));
        }
      }
    }

    auto const  whole = orbit_groupoid(act);
    auto const  part  = orbit_groupoid(restricted);
    auto const& xi    = restricted.space();
    std::vector<ObjectId> image_objects;
    for (auto x : objects) {
      auto y = whole.projection(x);
      if (std::find(image_objects.begin(), image_objects.end(), y)
          == image_objects.end()) {
        image_objects.push_back(y);
      }
    }
    std::sort(image_objects.begin(), image_objects.end());
    auto [full, full_ambient] = full_subgroupoid(
        whole.groupoid, image_objects, whole.groupoid.name() + "|A/G");
    std::vector<std::uint32_t> full_local(whole.groupoid.num_arrows(), UINT32_MAX);
    for (auto a : full.arrows()) {
      full_local[index(full_ambient[index(a)])] = static_cast<std::uint32_t>(index(a));
    }
    report.restricted_orbit = part.groupoid;
    report.full_image       = full;

    constexpr std::uint32_t    unset = UINT32_MAX;
    std::vector<std::uint32_t> obj_map(part.groupoid.num_objects(), unset);
    std::vector<std::uint32_t> arr_map(part.groupoid.num_arrows(), unset);
    for (auto x : xi.objects()) {
      auto const image = whole.projection(sp.object_at(xi.object_name(x)));
      auto const local = full.object_at(whole.groupoid.object_name(image));
      auto&      slot  = obj_map[index(part.projection(x))];
      if (slot != unset && slot != index(local)) {
        report.issues.push_back("induced map is not well defined on objects");
      }
      slot = static_cast<std::uint32_t>(index(local));
    }
    for (auto a : xi.arrows()) {
      auto const image = full_local[index(whole.projection(ambient[index(a)]))];
      auto&      slot  = arr_map[index(part.projection(a))];
      if (slot != unset && slot != image) {
        report.issues.push_back("induced map is not well defined at "
                                + xi.arrow_name(a));
      }
      slot = image;
    }
    if (!report.issues.empty()) {
      return report;
    }
    std::vector<ObjectId> om;
    std::vector<ArrowId>  am;
    for (auto v : obj_map) {
      om.push_back(to_object(v));
    }
    for (auto v : arr_map) {
      am.push_back(to_arrow(v));
    }
    auto phi = GroupoidMorphism::unchecked(part.groupoid, full, om, am);
    auto ok  = validate_morphism(phi);
    if (!ok.valid()) {
      report.issues.push_back("induced map is not a morphism: " + ok.to_string());
      return report;
    }
    if (!is_isomorphism(phi)) {
      report.issues.push_back(
          "induced map Xi//G -> full subgroupoid on A/G is not bijective");
      return report;
    }
    report.embedding_verified = true;
    return report;
  }

  ////////////////////////////////////////////////////////////////////////
  // Regular coverings
  ////////////////////////////////////////////////////////////////////////

  struct RegularCoverReport {
    bool                     orbit_isomorphism       = false;
    bool                     object_groups_isomorphic = false;
    std::vector<std::string> issues;

    bool passed() const noexcept {
      return orbit_isomorphism && object_groups_isomorphic;
    }
  };

  //! For a covering p : K -> H and a free action of its group of covering
  //! transformations on K with p g = p: checks that the induced map
  //! K//G -> H is an isomorphism and that H(px) is isomorphic to the object
  //! group (K x| G)(x) for every x.
  inline RegularCoverReport regular_cover_orbit_check(GroupoidMorphism const& p,
                                                      GroupoidAction const&   deck) {
    if (!is_covering(p)) {
      throw HypothesisFailure("morphism is not a covering morphism");
    }
    if (!(deck.space() == p.source())) {
      throw InvalidStructure("deck action does not act on the source of the covering");
    }
    require_valid_action(deck);
    if (!is_free_action(deck)) {
      throw HypothesisFailure("deck action is not free");
    }
    auto const& k = p.source();
    auto const& h = p.target();
    for (std::size_t g = 0; g < deck.group().size(); ++g) {
      for (auto a : k.arrows()) {
        if (p(deck.act(g, a)) != p(a)) {
          throw HypothesisFailure("deck transformation "
                                  + deck.group().element_name(g)
                                  + " does not commute with p at "
                                  + k.arrow_name(a));
        }
      }
    }

    RegularCoverReport report;
    auto const         orbit = orbit_groupoid(deck);
    constexpr std::uint32_t    unset = UINT32_MAX;
    std::vector<std::uint32_t> obj_map(orbit.groupoid.num_objects(), unset);
    std::vector<std::uint32_t> arr_map(orbit.groupoid.num_arrows(), unset);
    bool                       well_defined = true;
    for (auto x : k.objects()) {
      auto& slot = obj_map[index(orbit.projection(x))];
      well_defined = well_defined && (slot == unset || slot == index(p(x)));
      slot         = static_cast<std::uint32_t>(index(p(x)));
    }
    for (auto a : k.arrows()) {
      auto& slot = arr_map[index(orbit.projection(a))];
      well_defined = well_defined && (slot == unset || slot == index(p(a)));
      slot         = static_cast<std::uint32_t>(index(p(a)));
    }
    if (!well_defined) {
      report.issues.push_back("p does not factor through the orbit morphism");
    } else {
      std::vector<ObjectId> om;
      std::vector<ArrowId>  am;
      for (auto v : obj_map) {
        om.push_back(to_object(v));
      }
      for (auto v : arr_map) {
        am.push_back(to_arrow(v));
      }
      auto phi = GroupoidMorphism::unchecked(orbit.groupoid, h, om, am);
      if (!validate_morphism(phi).valid()) {
        report.issues.push_back("induced map K//G -> H is not a morphism");
      } else if (!is_isomorphism(phi)) {
        report.issues.push_back("induced map K//G -> H is not an isomorphism");
      } else {
        report.orbit_isomorphism = true;
      }
    }

    report.object_groups_isomorphic = true;
    for (auto x : k.objects()) {
      auto const hg = object_group(h, p(x));
      auto const sg = object_group(orbit.semidirect.groupoid, x);
      if (!groups_isomorphic(hg, sg)) {
        report.object_groups_isomorphic = false;
        report.issues.push_back("H(p" + k.object_name(x) + ") is not isomorphic to (K x| G)("
                                + k.object_name(x) + ")");
      }
    }
    return report;
  }

}  // namespace gpdkit

#endif  // GPDKIT_CONSTRUCTIONS_HPP_
