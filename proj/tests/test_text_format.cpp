#include <catch_amalgamated.hpp>

#include <gpdkit/gpdkit.hpp>

#include "support.hpp"

using namespace gpdkit;
using Catch::Matchers::ContainsSubstring;

namespace {

  ParseError parse_failure(std::string const& text) {
    try {
      (void)parse_document(text);
    } catch (ParseError const& e) {
      return e;
    }
    FAIL("no parse error for:\n" << text);
    throw std::logic_error("unreachable");
  }

}  // namespace

TEST_CASE("fixtures load and survive a round trip", "[format]") {
  for (auto const& file : gpdkit::testing::fixture_files()) {
    INFO(file);
    auto const doc   = parse_file(gpdkit::testing::data_path(file));
    auto const text  = emit(doc);
    auto const again = parse_document(text);
    CHECK(gpdkit::testing::document_differences(doc, again).empty());
    CHECK(emit(again) == text);
  }
}

TEST_CASE("fixture contents", "[format]") {
  auto const swap = parse_file(gpdkit::testing::data_path("tree_swap.gpd"));
  CHECK(swap.groupoids.at("T").num_arrows() == 4);
  CHECK(is_free_action(swap.actions.at("swap")));

  auto const cover = parse_file(gpdkit::testing::data_path("z4_cover.gpd"));
  CHECK(is_tree_groupoid(cover.groupoids.at("K")));
  CHECK(is_covering(cover.morphisms.at("p")));

  auto const circle = parse_file(gpdkit::testing::data_path("circle_reflection.act"));
  CHECK(circle.graph_actions.at("refl").graph.num_edges() == 4);

  auto const s3 = parse_file(gpdkit::testing::data_path("s3.pres"));
  CHECK(s3.presentations.at("S3").relators.size() == 3);
}

TEST_CASE("entities of every kind round-trip", "[format]") {
  Document doc;
  doc.add("S3", symmetric_group(3));
  doc.add("Q8", quaternion_group());
  doc.add("P", product_groupoid("P", tree_groupoid("T", {"x", "y"}),
                                one_object_groupoid(cyclic_group(2), "o")));
  for (auto const& e : standard_corpus()) {
    if (e.name == "z4_inversion" || e.name == "s3_on_tree3") {
      doc.add(e.action.space().name(), e.action.space());
      doc.add(e.action.group().name() == "S3" ? "S3b" : e.action.group().name(), e.action.group());
      doc.add(e.name, e.action);
    }
  }
  doc.add("F3", free_presentation(3));
  doc.add("Sym2", symmetric_square_presentation(free_presentation(2)));

  DirectedGraph g("loop");
  g.add_vertex("v");
  g.add_edge("e", 0, 0);
  doc.add("loop", g);
  doc.add("twice", PresentedGroupoid{"twice", g, {make_word(g, {{0, false}, {0, false}})}});
  doc.add("flip", GraphAction{cyclic_group(2), g, {0, 0}, {{0, false}, {0, true}}});

  auto const tree = tree_groupoid("T2", {"a", "b"});
  doc.add("T2", tree);
  auto const z2 = one_object_groupoid(cyclic_group(2), "s").renamed("Z2g");
  doc.add("Z2g", z2);
  std::vector<ArrowId> am;
  for (auto a : tree.arrows()) {
    am.push_back(tree.is_identity(a) ? z2.identity(to_object(0)) : z2.arrow_at("g"));
  }
  doc.add("fold", GroupoidMorphism(tree, z2, {to_object(0), to_object(0)}, am));

  auto const again = parse_document(emit(doc));
  for (auto const& d : gpdkit::testing::document_differences(doc, again)) {
    FAIL_CHECK(d);
  }
  CHECK(emit(again) == emit(doc));
}

TEST_CASE("a missing composition is reported with its pair", "[format][errors]") {
  auto const e = parse_failure("groupoid T\n"
                               "  objects x y\n"
                               "  arrow a : x -> y\n"
                               "  arrow b : y -> x\n"
                               "  compose b a = id_x\n");
  CHECK(e.line() == 1);
  CHECK_THAT(e.what(), ContainsSubstring("missing composition a + b"));
}

TEST_CASE("dangling references carry line and column", "[format][errors]") {
  auto const e = parse_failure("groupoid T\n"
                               "  objects x y\n"
                               "  arrow a : x -> q\n");
  CHECK(e.line() == 3);
  CHECK(e.column() == 18);
  CHECK_THAT(e.what(), ContainsSubstring("unknown object q"));

  auto const g = parse_failure("action a on Nowhere by Z2\n");
  CHECK(g.line() == 1);

  auto const m = parse_failure("group Z2 cyclic 2\n"
                               "graph G\n"
                               "  vertex v\n"
                               "action a on G by Z2\n"
                               "  act g : f -> f\n");
  CHECK(m.line() == 5);
  CHECK_THAT(m.what(), ContainsSubstring("f"));
}

TEST_CASE("an action violating the axioms cites the triple", "[format][errors]") {
  // Z3 swapping two objects
  auto const e = parse_failure("group Z3 cyclic 3\n"
                               "groupoid D\n"
                               "  objects x y\n"
                               "action bad on D by Z3\n"
                               "  obj g : x -> y\n"
                               "  obj g : y -> x\n");
  CHECK(e.line() == 4);
  CHECK_THAT(e.what(), ContainsSubstring("axiom (ii) fails for (g, h, x) = ("));
}

TEST_CASE("a non-associative group table is refused", "[format][errors]") {
  auto const e = parse_failure("group B table\n"
                               "  elements e a b\n"
                               "  row e : e a b\n"
                               "  row a : a b a\n"
                               "  row b : b e b\n");
  CHECK(e.line() == 1);
  CHECK_THAT(e.what(), ContainsSubstring("group B"));
}

TEST_CASE("syntax errors", "[format][errors]") {
  CHECK(parse_failure("widget W\n").line() == 1);
  CHECK(parse_failure("group Z2 cyclic 2\ngroup Z2 cyclic 2\n").line() == 2);
  CHECK(parse_failure("groupoid T\n  objects x\n  arrow a x -> x\n").line() == 3);
  CHECK(parse_failure("presentation P\n  generators a\n  relator a c\n").column() == 13);
  CHECK(parse_failure("group S7 symmetric 7\n").line() == 1);

  // comments and blank lines are ignored
  auto const doc = parse_document("# nothing here\n\ngroup Z2 cyclic 2   # trailing\n");
  CHECK(doc.groups.at("Z2").size() == 2);
}

TEST_CASE("a missing file is a load error", "[format][errors]") {
  try {
    (void)parse_file(gpdkit::testing::data_path("does_not_exist.gpd"));
    FAIL("missing file accepted");
  } catch (ParseError const& e) {
    CHECK(e.line() == 0);
  }
}
