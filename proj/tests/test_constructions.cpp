#include <catch_amalgamated.hpp>

#include <gpdkit/gpdkit.hpp>

#include "support.hpp"

using namespace gpdkit;

namespace {

  GroupoidAction entry(std::string const& name) {
    for (auto const& e : standard_corpus()) {
      if (e.name == name) {
        return e.action;
      }
    }
    throw std::logic_error("no corpus entry " + name);
  }

  std::vector<ObjectId> objects_named(FiniteGroupoid const& g, std::vector<std::string> const& ns) {
    std::vector<ObjectId> out;
    for (auto const& n : ns) {
      out.push_back(g.object_at(n));
    }
    return out;
  }

  // Z4 acting on four points by translation, and its covering groupoid
  struct Z4Cover {
    GroupoidMorphism p;
    GroupoidAction   deck;
  };

  Z4Cover z4_covering_groupoid() {
    auto const      z4 = cyclic_group(4);
    auto const      pts = discrete_groupoid("Z4pts", {"0", "1", "2", "3"});
    auto const      translate = object_permutation_action(z4, pts, [](std::size_t g, ObjectId x) {
      return to_object((index(x) + g) % 4);
    });
    auto const      sd = semidirect_product(translate);
    auto const&     k  = sd.groupoid;
    std::vector<ObjectId> obj;
    std::vector<ArrowId>  arr;
    for (std::size_t h = 0; h < 4; ++h) {
      for (auto x : k.objects()) {
        obj.push_back(to_object((index(x) + h) % 4));
      }
      for (auto a : k.arrows()) {
        auto const y = pts.source(sd.gamma(a));
        arr.push_back(sd.pair(pts.identity(to_object((index(y) + h) % 4)), sd.element(a)));
      }
    }
    return {sd.projection, GroupoidAction(z4, k, obj, arr)};
  }

}  // namespace

TEST_CASE("semidirect product by the trivial group is the groupoid itself", "[semidirect]") {
  auto const g  = one_object_groupoid(symmetric_group(3));
  auto const sd = semidirect_product(GroupoidAction::trivial(trivial_group(), g));
  CHECK(sd.groupoid.num_arrows() == g.num_arrows());
  CHECK(isomorphic(sd.groupoid, g));
  for (auto a : sd.groupoid.arrows()) {
    CHECK(sd.element(a) == 0);
  }
}

TEST_CASE("swap on the discrete groupoid gives its covering groupoid", "[semidirect]") {
  auto const  sd = semidirect_product(entry("discrete_swap"));
  auto const& k  = sd.groupoid;
  CHECK(k.num_arrows() == 4);
  CHECK(is_connected(k));
  for (auto x : k.objects()) {
    for (auto y : k.objects()) {
      CHECK(k.hom(x, y).size() == 1);
    }
  }
  CHECK(is_covering(sd.projection));
}

TEST_CASE("swap on the tree groupoid has object group of order 2", "[semidirect]") {
  auto const  act = entry("tree_swap");
  auto const  sd  = semidirect_product(act);
  auto const& sp  = act.space();
  auto const  x   = sp.object_at("x");
  auto const  a   = sp.hom(x, sp.object_at("y")).front();
  auto const  g   = act.group().at("g");
  CHECK(object_group(sd.groupoid, x).size() == 2);
  auto const loop = sd.pair(sp.inverse(a), g);
  CHECK(sd.groupoid.source(loop) == x);
  CHECK(sd.groupoid.target(loop) == x);
  CHECK(sd.groupoid.arrow_name(loop) == "(y>x,g)");
}

TEST_CASE("semidirect product arithmetic", "[semidirect]") {
  for (auto const& [name, act] : gpdkit::testing::full_corpus()) {
    INFO(name);
    auto const  sd = semidirect_product(act);
    auto const& k  = sd.groupoid;
    auto const& sp = act.space();
    auto const& G  = act.group();
    CHECK(k.num_arrows() == sp.num_arrows() * G.size());
    CHECK(is_fibration(sd.projection));

    for (auto a : sp.arrows()) {
      for (std::size_t g = 0; g < G.size(); ++g) {
        auto const pr = sd.pair(a, g);
        // the pair (gamma, g) runs from g^-1 . source(gamma) to target(gamma)
        CHECK(k.source(pr) == act.act(G.inverse(g), sp.source(a)));
        CHECK(k.target(pr) == sp.target(a));
        // negative of (gamma, g) is (g^-1 . (-gamma), g^-1)
        auto const gi = G.inverse(g);
        CHECK(k.inverse(pr) == sd.pair(act.act(gi, sp.inverse(a)), gi));
        // (0_{g.y}, g) + (gamma, 1) = (g.gamma, g)
        auto const lift = sd.pair(sp.identity(act.act(g, sp.target(a))), g);
        CHECK(k.add(lift, sd.pair(a, G.identity())) == sd.pair(act.act(g, a), g));
        // (gamma, 1) + (0_x, h) = (gamma, h)
        auto const base = sd.pair(sp.identity(sp.source(a)), g);
        CHECK(k.add(sd.pair(a, G.identity()), base) == sd.pair(a, g));
      }
    }
    // (delta, h) + (gamma, g) = (delta + h.gamma, hg) on every composable pair
    for (auto u : k.arrows()) {
      for (auto v : k.star(k.target(u))) {
        auto const h = sd.element(v);
        auto const g = sd.element(u);
        CHECK(k.add(v, u)
              == sd.pair(sp.add(sd.gamma(v), act.act(h, sd.gamma(u))), G.multiply(h, g)));
      }
    }
  }
}

TEST_CASE("semidirect product acting on arrows", "[semidirect]") {
  auto const  act = entry("tree_swap");
  auto const  sd  = semidirect_product(act);
  auto const& sp  = act.space();
  auto const  x   = sp.object_at("x");
  auto const  y   = sp.object_at("y");
  auto const  a   = sp.hom(x, y).front();
  auto const  na  = sp.inverse(a);
  auto const  e   = act.group().identity();
  auto const  g   = act.group().at("g");

  // (0_x, 1) . delta = delta
  for (auto delta : {na, sp.identity(x)}) {
    CHECK(semidirect_action_on_arrows(act, sd, sd.pair(sp.identity(x), e), delta) == delta);
  }
  // (gamma, 1) . 0_x = gamma
  CHECK(semidirect_action_on_arrows(act, sd, sd.pair(a, e), sp.identity(x)) == a);
  // (-a, g) . (-a) = -a + g.(-a) = -a + a = 0_x
  auto const r = semidirect_action_on_arrows(act, sd, sd.pair(na, g), na);
  CHECK(r == sp.identity(x));
  CHECK(sp.target(r) == sd.groupoid.target(sd.pair(na, g)));
  // a ends at y, but (-a, g) starts at x
  CHECK_THROWS_AS(semidirect_action_on_arrows(act, sd, sd.pair(na, g), a), InvalidStructure);
}

TEST_CASE("generated wide subgroupoids", "[closure]") {
  auto const tree = tree_groupoid("T", {"x", "y"});
  CHECK(generated_wide_subgroupoid(tree, std::vector<ArrowId>{}).is_discrete());
  CHECK(generated_wide_subgroupoid(tree, std::vector<ArrowId>{tree.arrow_at("x>y")}).size() == 4);

  auto const s3 = one_object_groupoid(symmetric_group(3));
  auto const c3 = generated_wide_subgroupoid(s3, std::vector<ArrowId>{s3.arrow_at("(1,2,3)")});
  CHECK(c3.size() == 3);
  CHECK(c3.is_normal());
}

TEST_CASE("normal closures", "[closure]") {
  auto const s3 = one_object_groupoid(symmetric_group(3));
  CHECK(normal_closure(s3, std::vector<ArrowId>{}).is_discrete());
  CHECK(normal_closure(s3, std::vector<ArrowId>{s3.arrow_at("(1,2)")}).size() == 6);

  // brute force in S3: intersect all normal subgroups that contain (1,2)
  auto const                G = symmetric_group(3);
  std::vector<std::size_t>  smallest(G.size());
  std::iota(smallest.begin(), smallest.end(), 0);
  for (unsigned mask = 1; mask < (1u << G.size()); ++mask) {
    std::vector<std::size_t> sub;
    for (std::size_t i = 0; i < G.size(); ++i) {
      if (mask >> i & 1u) {
        sub.push_back(i);
      }
    }
    if (generated_subgroup(G, sub).size() == sub.size() && is_normal_subgroup(G, sub)
        && std::count(sub.begin(), sub.end(), G.at("(1,2)")) && sub.size() < smallest.size()) {
      smallest = sub;
    }
  }
  CHECK(smallest.size() == 6);

  // free swap: the closure of the (0_{g.x}, g) meets the Gamma part only in identities
  auto const act = entry("tree_swap");
  auto const sd  = semidirect_product(act);
  std::vector<ArrowId> r;
  for (std::size_t g = 0; g < 2; ++g) {
    for (auto x : act.space().objects()) {
      r.push_back(sd.pair(act.space().identity(act.act(g, x)), g));
    }
  }
  auto const n = normal_closure(sd.groupoid, r);
  for (auto a : n.arrows()) {
    if (sd.element(a) == act.group().identity()) {
      CHECK(act.space().is_identity(sd.gamma(a)));
    }
  }
  CHECK(n == orbit_groupoid(act).normal);
}

TEST_CASE("quotient groupoids", "[quotient]") {
  auto const s3 = one_object_groupoid(symmetric_group(3));

  auto const same = quotient_groupoid(s3, discrete_subgroupoid(s3));
  CHECK(isomorphic(same.groupoid, s3));
  CHECK(is_isomorphism(same.projection));

  auto const tree = tree_groupoid("T", {"x", "y", "z"});
  auto const one  = quotient_groupoid(tree, whole_subgroupoid(tree));
  CHECK(one.groupoid.num_objects() == 1);
  CHECK(one.groupoid.num_arrows() == 1);

  auto const a3 = normal_closure(s3, std::vector<ArrowId>{s3.arrow_at("(1,2,3)")});
  auto const q  = quotient_groupoid(s3, a3);
  CHECK(q.groupoid.num_arrows() == 2);
  CHECK(groups_isomorphic(object_group(q.groupoid, to_object(0)),
                          quotient_group(symmetric_group(3),
                                         generated_subgroup(symmetric_group(3),
                                                            {symmetric_group(3).at("(1,2,3)")}))));
  CHECK(is_quotient_morphism(q.projection));
  CHECK(kernel(q.projection) == a3);

  WideSubgroupoid const c2(s3, std::vector<ArrowId>{s3.identity(to_object(0)), s3.arrow_at("(1,2)")});
  CHECK_THROWS_AS(quotient_groupoid(s3, c2), HypothesisFailure);
}

TEST_CASE("quotient addition does not depend on the connecting arrow", "[quotient]") {
  for (auto const& c : gpdkit::testing::random_quotient_morphisms(20, 5)) {
    INFO(c.name);
    auto const& f = c.morphism;
    auto const& k = f.source();
    auto const  n = kernel(f);
    for (auto k1 : k.arrows()) {
      for (auto k2 : k.arrows()) {
        if (f(k.target(k1)) != f(k.source(k2))) {
          continue;
        }
        std::set<ArrowId> images;
        for (auto l : n.hom(k.target(k1), k.source(k2))) {
          images.insert(f(k.add(k2, k.add(l, k1))));
        }
        CHECK(images.size() == 1);
        CHECK(*images.begin() == f.target().add(f(k2), f(k1)));
      }
    }
  }
}

TEST_CASE("quotient morphisms satisfy the first isomorphism theorem", "[quotient]") {
  for (auto const& c : gpdkit::testing::random_quotient_morphisms(20, 11)) {
    INFO(c.name);
    CHECK(is_quotient_morphism(c.morphism));
    auto const failures = gpdkit::testing::first_isomorphism_failures(c.morphism);
    CHECK(failures.empty());
  }
}

TEST_CASE("morphisms killing N factor uniquely through K/N", "[quotient]") {
  auto const s3 = one_object_groupoid(symmetric_group(3));
  auto const a3 = normal_closure(s3, std::vector<ArrowId>{s3.arrow_at("(1,2,3)")});
  auto const q  = quotient_groupoid(s3, a3);
  for (auto const& target : oracle::standard_targets()) {
    if (target.num_arrows() > oracle::enumerate_target_cap) {
      continue;
    }
    auto const through = oracle::enumerate_morphisms(q.groupoid, target);
    for (auto const& f : oracle::enumerate_morphisms(s3, target)) {
      bool const kills = std::all_of(a3.arrows().begin(), a3.arrows().end(), [&](ArrowId a) {
        return target.is_identity(f(a));
      });
      std::size_t factorisations = 0;
      for (auto const& phi : through) {
        factorisations += compose(phi, q.projection).arrow_map() == f.arrow_map();
      }
      INFO(target.name());
      CHECK(factorisations == (kills ? 1u : 0u));
    }
  }
}

TEST_CASE("orbit groupoids of named actions", "[orbit]") {
  {
    auto const g = one_object_groupoid(cyclic_group(2));
    auto const o = orbit_groupoid(GroupoidAction::trivial(trivial_group(), g));
    CHECK(isomorphic(o.groupoid, g));
  }
  {
    auto const o = orbit_groupoid(entry("tree_swap"));
    CHECK(o.groupoid.num_objects() == 1);
    CHECK(groups_isomorphic(object_group(o.groupoid, to_object(0)), cyclic_group(2)));
    CHECK(is_covering(o.projection));
  }
  {
    auto const o = orbit_groupoid(entry("z4_inversion"));
    CHECK(o.groupoid.num_objects() == 1);
    CHECK(groups_isomorphic(object_group(o.groupoid, to_object(0)), cyclic_group(2)));
    CHECK(is_quotient_morphism(o.projection));
  }
  {
    auto const o = orbit_groupoid(entry("component_swap"));
    CHECK(o.groupoid.num_objects() == 1);
    CHECK(object_group(o.groupoid, to_object(0)).size() == 2);
  }
}

TEST_CASE("orbit groupoid postconditions on the corpus", "[orbit]") {
  for (auto const& [name, act] : gpdkit::testing::full_corpus()) {
    INFO(name);
    auto const  o  = orbit_groupoid(act);
    auto const& p  = o.projection;
    auto const& sp = act.space();
    for (std::size_t g = 0; g < act.group().size(); ++g) {
      for (auto a : sp.arrows()) {
        CHECK(p(act.act(g, a)) == p(a));
      }
    }
    CHECK(o.groupoid.num_objects() == object_orbits(act).size());
    CHECK(is_fibration(p));
    CHECK(generated_wide_subgroupoid(sp, orbit_kernel_generators(act)) == kernel(p));
    if (is_free_action(act)) {
      CHECK(is_covering(p));
    }
    if (is_connected(sp) && !fixed_subgroupoid(act).empty()) {
      CHECK(is_quotient_morphism(p));
    }
  }
}

TEST_CASE("orbit kernel generators", "[orbit]") {
  auto const swap = entry("tree_swap");
  for (auto a : orbit_kernel_generators(swap)) {
    CHECK(swap.space().is_identity(a));
  }

  auto const z2 = one_object_groupoid(cyclic_group(2));
  auto const tr = GroupoidAction::trivial(cyclic_group(2), z2);
  for (auto a : orbit_kernel_generators(tr)) {
    CHECK(z2.is_identity(a));
  }
  CHECK(isomorphic(orbit_groupoid(tr).groupoid, z2));

  auto const inv  = entry("z4_inversion");
  auto       gens = orbit_kernel_generators(inv);
  std::vector<std::string> names;
  for (auto a : gens) {
    names.push_back(inv.space().arrow_name(a));
  }
  std::sort(names.begin(), names.end());
  CHECK(names == std::vector<std::string>{"1", "g^2"});
}

TEST_CASE("orbit groups of tree groupoid actions", "[orbit]") {
  CHECK(groups_isomorphic(tree_orbit_group(entry("tree_swap")), cyclic_group(2)));
  CHECK(tree_orbit_group(entry("s3_on_tree3")).size() == 1);
  CHECK(groups_isomorphic(tree_orbit_group(entry("z3_rotating_tree3")), cyclic_group(3)));
  auto const point = tree_groupoid("pt", {"o"});
  CHECK(tree_orbit_group(GroupoidAction::trivial(cyclic_group(2), point)).size() == 1);
  CHECK_THROWS_AS(tree_orbit_group(entry("z4_inversion")), HypothesisFailure);

  for (auto const& [name, act] : gpdkit::testing::full_corpus()) {
    if (!is_tree_groupoid(act.space())) {
      continue;
    }
    INFO(name);
    auto const o = orbit_groupoid(act);
    CHECK(groups_isomorphic(tree_orbit_group(act), object_group(o.groupoid, to_object(0))));
  }
}

TEST_CASE("restricting the orbit groupoid to an invariant object set", "[restrict]") {
  auto const  act = circle_reflection_action(3);
  auto const& sp  = act.space();

  auto const all = restrict_orbit_full_subgroupoid(act, sp.object_list());
  CHECK(all.hypothesis_holds);
  CHECK(all.embedding_verified);

  auto const poles = restrict_orbit_full_subgroupoid(act, objects_named(sp, {"1", "-1"}));
  CHECK(poles.hypothesis_holds);
  CHECK(poles.embedding_verified);
  REQUIRE(poles.restricted_orbit.has_value());
  CHECK(poles.restricted_orbit->num_objects() == 2);

  auto const side = restrict_orbit_full_subgroupoid(act, objects_named(sp, {"i", "-i"}));
  CHECK_FALSE(side.hypothesis_holds);
  REQUIRE_FALSE(side.hypothesis_failures.empty());
  CHECK_THAT(side.hypothesis_failures.front(),
             Catch::Matchers::ContainsSubstring("misses the component {1 -1}"));

  CHECK_THROWS_AS(restrict_orbit_full_subgroupoid(act, objects_named(sp, {"i"})),
                  InvalidStructure);
}

TEST_CASE("regular covers are orbit morphisms", "[cover]") {
  {
    auto const act = entry("tree_swap");
    auto const z2  = one_object_groupoid(cyclic_group(2));
    std::vector<ArrowId> am;
    for (auto a : act.space().arrows()) {
      am.push_back(act.space().is_identity(a) ? z2.identity(to_object(0)) : z2.arrow_at("g"));
    }
    GroupoidMorphism const fold(act.space(), z2, {to_object(0), to_object(0)}, am);
    auto const report = regular_cover_orbit_check(fold, act);
    CHECK(report.orbit_isomorphism);
    CHECK(report.object_groups_isomorphic);
  }
  {
    auto const tree   = tree_groupoid("T", {"x", "y"});
    auto const report = regular_cover_orbit_check(identity_morphism(tree),
                                                  GroupoidAction::trivial(trivial_group(), tree));
    CHECK(report.passed());
  }
  {
    auto const cover  = z4_covering_groupoid();
    auto const report = regular_cover_orbit_check(cover.p, cover.deck);
    CHECK(report.passed());
    CHECK(groups_isomorphic(object_group(cover.p.target(), to_object(0)), cyclic_group(4)));
  }
  {
    // not a covering
    auto const act = entry("tree_swap");
    auto const z2  = one_object_groupoid(cyclic_group(2));
    std::vector<ArrowId> am(act.space().num_arrows(), z2.identity(to_object(0)));
    GroupoidMorphism const crush(act.space(), z2, {to_object(0), to_object(0)}, am);
    CHECK_THROWS_AS(regular_cover_orbit_check(crush, act), HypothesisFailure);
  }
  {
    // a non-free deck action
    auto const g = one_object_groupoid(cyclic_group(2));
    CHECK_THROWS_AS(regular_cover_orbit_check(identity_morphism(g),
                                              GroupoidAction::trivial(cyclic_group(2), g)),
                    HypothesisFailure);
  }
}
