#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include <gpdkit/gpdkit.hpp>

#include "cli.hpp"
#include "support.hpp"

using namespace gpdkit;
using namespace gpdkit::cli;
using Catch::Matchers::ContainsSubstring;

namespace {

  Options on(std::string const& file) {
    Options o;
    o.input = gpdkit::testing::data_path(file);
    return o;
  }

  std::filesystem::path scratch(std::string const& name) {
    auto dir = std::filesystem::temp_directory_path() / "gpdkit_cli_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
  }

  std::string write_temp(std::string const& name, std::string const& text) {
    auto const path = scratch(name);
    std::ofstream(path) << text;
    return path.string();
  }

}  // namespace

TEST_CASE("orbit of the reflected circle", "[cli]") {
  auto const r = run_command("orbit", on("circle_reflection.act"));
  CHECK(r.exit_code == exit_ok);
  CHECK_THAT(r.output, ContainsSubstring("vertex group at orbit(1): trivial"));
  CHECK_THAT(r.output, ContainsSubstring("vertex group at orbit(-1): trivial"));

  auto opts = on("circle_reflection.act");
  opts.base = "-1";
  auto const p = run_command("presentation", opts);
  CHECK(p.exit_code == exit_ok);
  CHECK_THAT(p.output, ContainsSubstring("vertex group at orbit(-1): trivial"));
}

TEST_CASE("orbit of a groupoid action", "[cli]") {
  auto const r = run_command("orbit", on("tree_swap.gpd"));
  CHECK(r.exit_code == exit_ok);
  CHECK_THAT(r.output, ContainsSubstring("objects: 1"));
  CHECK_THAT(r.output, ContainsSubstring("invariants torsion [2]"));
  CHECK_THAT(r.output, ContainsSubstring("covering yes"));
}

TEST_CASE("algebraic verbs", "[cli]") {
  auto const sq = run_command("symmetric-square", on("f2.pres"));
  CHECK(sq.exit_code == exit_ok);
  CHECK_THAT(sq.output, ContainsSubstring("abelian invariants: rank 2"));

  auto const ab = run_command("abelianize", on("s3.pres"));
  CHECK_THAT(ab.output, ContainsSubstring("abelian invariants: torsion [2]"));

  Options q8;
  q8.input     = write_temp("q8.gpd", "group Q8 quaternion\n");
  auto const t = run_command("abelianize", q8);
  CHECK(t.exit_code == exit_ok);
  CHECK_THAT(t.output, ContainsSubstring("table presentation agrees: yes"));
  CHECK_THAT(t.output, ContainsSubstring("abelian invariants: torsion [2,2]"));

  auto const hh = run_command("symmetric-square", q8);
  CHECK(hh.exit_code == exit_ok);
  CHECK_THAT(hh.output, ContainsSubstring("matches abelianization of Q8: yes"));
}

TEST_CASE("semidirect, quotient and normal closure", "[cli]") {
  auto const sd = run_command("semidirect", on("tree_swap.gpd"));
  CHECK(sd.exit_code == exit_ok);
  CHECK_THAT(sd.output, ContainsSubstring("arrows: 8"));

  auto opts   = on("s3_groupoid.gpd");
  opts.arrows = {"(1,2,3)"};
  auto const q = run_command("quotient", opts);
  CHECK(q.exit_code == exit_ok);
  CHECK_THAT(q.output, ContainsSubstring("order 2"));

  opts.arrows = {"(1,2)"};
  auto const bad = run_command("quotient", opts);
  CHECK(bad.exit_code == exit_hypothesis);
  CHECK_THAT(bad.output, ContainsSubstring("not normal"));

  auto const nc = run_command("normal-closure", opts);
  CHECK(nc.exit_code == exit_ok);
  CHECK_THAT(nc.output, ContainsSubstring("6 arrows"));
  CHECK_THAT(nc.output, ContainsSubstring("lattice oracle agrees: yes"));

  opts.arrows = {"(9,9)"};
  CHECK(run_command("quotient", opts).exit_code == exit_load);
}

TEST_CASE("regular covers", "[cli]") {
  for (auto file : {"folding_cover.gpd", "z4_cover.gpd"}) {
    INFO(file);
    auto const r = run_command("check-regular-cover", on(file));
    CHECK(r.exit_code == exit_ok);
    CHECK_THAT(r.output, ContainsSubstring("result: PASS"));
  }
}

TEST_CASE("restricting orbits", "[cli]") {
  auto opts    = on("circle12.gpd");
  opts.objects = {"1", "-1"};
  auto const ok = run_command("restrict-orbit", opts);
  CHECK(ok.exit_code == exit_ok);
  CHECK_THAT(ok.output, ContainsSubstring("embedding: verified"));

  opts.objects = {"i", "-i"};
  auto const miss = run_command("restrict-orbit", opts);
  CHECK(miss.exit_code == exit_hypothesis);
  CHECK_THAT(miss.output, ContainsSubstring("misses the component"));

  opts.objects = {"i"};
  CHECK(run_command("restrict-orbit", opts).exit_code == exit_load);

  opts.objects.clear();
  CHECK(run_command("restrict-orbit", opts).exit_code == exit_usage);
}

TEST_CASE("exit codes for bad input", "[cli]") {
  auto const missing = run_command("orbit", on("no_such_file.gpd"));
  CHECK(missing.exit_code == exit_load);
  CHECK_THAT(missing.output, ContainsSubstring("error:"));

  Options broken;
  broken.input = write_temp("broken.gpd", "groupoid T\n  objects x y\n  arrow a : x -> q\n");
  auto const b = run_command("semidirect", broken);
  CHECK(b.exit_code == exit_load);
  CHECK_THAT(b.output, ContainsSubstring("3:18: unknown object q"));

  CHECK(run_command("frobnicate", on("tree_swap.gpd")).exit_code == exit_usage);
  CHECK(run_command("orbit", on("f2.pres")).exit_code == exit_usage);

  auto capped       = on("tree_swap.gpd");
  capped.max_arrows = hard_arrow_cap + 1;
  CHECK(run_command("semidirect", capped).exit_code == exit_usage);
  capped.max_arrows = 4;
  auto const c = run_command("semidirect", capped);
  CHECK(c.exit_code == exit_usage);
  CHECK_THAT(c.output, ContainsSubstring("cap"));
}

TEST_CASE("emitted results load again", "[cli]") {
  struct Case {
    std::string verb, file;
  };
  for (auto const& [verb, file] : std::vector<Case>{{"orbit", "tree_swap.gpd"},
                                                    {"orbit", "circle_reflection.act"},
                                                    {"semidirect", "tree_swap.gpd"},
                                                    {"presentation", "circle_reflection.act"},
                                                    {"symmetric-square", "s3.pres"},
                                                    {"abelianize", "s3.pres"},
                                                    {"check-regular-cover", "z4_cover.gpd"}}) {
    INFO(verb << " " << file);
    auto opts = on(file);
    opts.emit = scratch(verb + ".out").string();
    REQUIRE(run_command(verb, opts).exit_code == exit_ok);
    auto const doc = parse_file(opts.emit);
    CHECK_FALSE(doc.order.empty());
    CHECK(gpdkit::testing::document_differences(doc, parse_document(emit(doc))).empty());
  }
}

TEST_CASE("verify passes and is byte-stable", "[cli]") {
  Options    opts;
  auto const a = run_command("verify", opts);
  auto const b = run_command("verify", opts);
  CHECK(a.exit_code == exit_ok);
  CHECK_THAT(a.output, ContainsSubstring("overall: PASS"));
  CHECK(a.output == b.output);

  // extra actions from a file join the corpus
  auto const withfile = run_command("verify", on("tree_swap.gpd"));
  CHECK(withfile.exit_code == exit_ok);
  CHECK_THAT(withfile.output, ContainsSubstring("corpus: 60 actions"));

  // a custom target family
  opts.targets   = gpdkit::testing::data_path("tree_swap.gpd");
  auto const tgt = run_command("verify", opts);
  CHECK(tgt.exit_code == exit_ok);
  CHECK_THAT(tgt.output, ContainsSubstring("(1 groupoids)"));
}
