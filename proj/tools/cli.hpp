#ifndef GPDKIT_TOOLS_CLI_HPP_
#define GPDKIT_TOOLS_CLI_HPP_

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gpdkit/gpdkit.hpp"

namespace gpdkit::cli {

  enum ExitCode : int {
    exit_ok         = 0,
    exit_check      = 1,
    exit_load       = 2,
    exit_hypothesis = 3,
    exit_usage      = 4,
  };

  //! Arrow count above which constructions refuse to build a semidirect
  //! product; --max-arrows may change it up to the hard limit.
  inline constexpr std::size_t default_arrow_cap = 2048;
  inline constexpr std::size_t hard_arrow_cap    = 4096;

  struct Options {
    std::string              input;
    std::string              emit;
    std::string              base;
    std::string              targets;
    std::optional<std::size_t> max_arrows;
    std::string              name;
    std::string              action;
    std::string              morphism;
    std::vector<std::string> arrows;
    std::vector<std::string> objects;
  };

  struct CommandResult {
    int         exit_code = exit_ok;
    std::string output;
  };

  inline std::vector<std::string> const& verbs() {
    static std::vector<std::string> const all{
        "semidirect",       "orbit",        "quotient",          "normal-closure",
        "presentation",     "abelianize",   "symmetric-square",  "check-regular-cover",
        "restrict-orbit",   "verify"};
    return all;
  }

  class UsageError : public Error {
   public:
    using Error::Error;
  };

  namespace detail {
    inline std::string yes(bool b) {
      return b ? "yes" : "no";
    }

    inline std::string join(std::vector<std::string> const& v, std::string const& sep = " ") {
      std::string out;
      for (auto const& s : v) {
        out += (out.empty() ? "" : sep) + s;
      }
      return out;
    }

    inline std::string describe_group(GroupTable const& g) {
      if (g.size() == 1) {
        return "trivial";
      }
      auto const order = "order " + std::to_string(g.size());
      if (g.is_abelian()) {
        return order + ", abelian, invariants " + to_string(oracle::abelian_group_invariants(g));
      }
      return order + ", non-abelian, abelianization "
             + to_string(oracle::brute_abelianization(g));
    }

    //! Describes a presented group: trivial, finite of known order, or
    //! infinite when the abelianization has positive rank.
    inline std::string describe_presented_group(GroupPresentation const& p) {
      auto const inv = abelian_invariants(p);
      if (inv.rank > 0) {
        return "infinite, abelian invariants " + to_string(inv);
      }
      try {
        auto const order = oracle::presentation_order(p, 20000);
        if (order == 1) {
          return "trivial";
        }
        return "order " + std::to_string(order) + ", abelian invariants " + to_string(inv);
      } catch (CapExceeded const&) {
        return "abelian invariants " + to_string(inv) + ", order not determined";
      }
    }

    class Command {
     public:
      explicit Command(Options opts) : opts_(std::move(opts)) {
        if (opts_.max_arrows) {
          if (*opts_.max_arrows == 0 || *opts_.max_arrows > hard_arrow_cap) {
            throw UsageError("--max-arrows must be between 1 and "
                             + std::to_string(hard_arrow_cap));
          }
          cap_ = *opts_.max_arrows;
        }
      }

      std::ostringstream out;
      int                code = exit_ok;

      Document load() {
        if (opts_.input.empty()) {
          throw UsageError("this command needs an input file");
        }
        return parse_file(opts_.input);
      }

      template <typename Map>
      std::pair<std::string, typename Map::mapped_type const*>
      pick(Document const& doc, Map const& map, EntityKind kind, std::string const& name) {
        if (!name.empty()) {
          auto it = map.find(name);
          if (it == map.end()) {
            throw UnknownName(opts_.input + " has no " + kind_name(kind) + " named " + name);
          }
          return {it->first, &it->second};
        }
        for (auto const& [k, n] : doc.order) {
          if (k == kind) {
            return {n, &map.at(n)};
          }
        }
        return {"", nullptr};
      }

      void guard(GroupoidAction const& act) const {
        auto const n = act.space().num_arrows() * act.group().size();
        if (n > cap_) {
          throw CapExceeded("semidirect product would have " + std::to_string(n)
                            + " arrows, above the limit of " + std::to_string(cap_)
                            + " (raise with --max-arrows)");
        }
      }

      oracle::Caps oracle_caps() const {
        return opts_.max_arrows ? oracle::Caps::lowered_to(*opts_.max_arrows) : oracle::Caps{};
      }

      void write_emit(std::string const& text) {
        if (opts_.emit.empty()) {
          return;
        }
        std::ofstream file(opts_.emit);
        if (!file) {
          throw UsageError("cannot write " + opts_.emit);
        }
        file << text;
        out << "wrote " << opts_.emit << "\n";
      }

      std::vector<ArrowId> arrows_of(FiniteGroupoid const& g) const {
        std::vector<ArrowId> out;
        for (auto const& a : opts_.arrows) {
          out.push_back(g.arrow_at(a));
        }
        return out;
      }

      void groupoid_summary(FiniteGroupoid const& g, std::string const& title) {
        out << title << " " << g.name() << "\n";
        out << "objects: " << g.num_objects() << "\n";
        out << "arrows: " << g.num_arrows() << "\n";
        for (auto const& comp : components(g)) {
          auto const x = comp.front();
          out << "object group at " << g.object_name(x) << ": "
              << describe_group(object_group(g, x));
          if (comp.size() > 1) {
            out << " (component of " << comp.size() << " objects)";
          }
          out << "\n";
        }
      }

      // semidirect ------------------------------------------------------

      void semidirect() {
        auto doc           = load();
        auto [name, act]   = pick(doc, doc.actions, EntityKind::action, opts_.name);
        if (!act) {
          throw UsageError(opts_.input + " has no groupoid action");
        }
        guard(*act);
        auto const sd = semidirect_product(*act);
        groupoid_summary(sd.groupoid, "semidirect product");
        auto const& q = sd.projection;
        out << "projection: fibration " << yes(is_fibration(q)) << ", quotient morphism "
            << yes(is_quotient_morphism(q)) << ", covering " << yes(is_covering(q))
            << ", iso on object groups " << yes(is_iso_on_object_groups(q)) << "\n";
        write_emit(emit(sd.groupoid));
      }

      // orbit -----------------------------------------------------------

      void orbit() {
        auto doc = load();
        if (selected_kind(doc, {EntityKind::action, EntityKind::graph_action})
            == EntityKind::graph_action) {
          auto [name, ga] = pick(doc, doc.graph_actions, EntityKind::graph_action, opts_.name);
          graph_orbit(*ga, true);
          return;
        }
        auto [name, act] = pick(doc, doc.actions, EntityKind::action, opts_.name);
        if (!act) {
          throw UsageError(opts_.input + " has no action");
        }
        guard(*act);
        auto const o = orbit_groupoid(*act);
        groupoid_summary(o.groupoid, "orbit groupoid");
        for (auto const& orbit : object_orbits(*act)) {
          std::vector<std::string> names;
          for (auto x : orbit) {
            names.push_back(act->space().object_name(x));
          }
          out << "orbit " << o.groupoid.object_name(o.projection(orbit.front())) << ": "
              << join(names) << "\n";
        }
        std::vector<std::string> kernel_names;
        for (auto a : orbit_kernel_generators(*act)) {
          if (!act->space().is_identity(a)) {
            kernel_names.push_back(act->space().arrow_name(a));
          }
        }
        out << "kernel generators: " << (kernel_names.empty() ? "identities only" : join(kernel_names))
            << "\n";
        auto const& p = o.projection;
        out << "orbit morphism: fibration " << yes(is_fibration(p)) << ", covering "
            << yes(is_covering(p)) << ", quotient morphism " << yes(is_quotient_morphism(p))
            << "\n";
        out << "action: free " << yes(is_free_action(*act)) << "\n";
        write_emit(emit(o.groupoid));
      }

      //! Kind of the entity named by --name, else of the first entity of
      //! one of the given kinds.
      std::optional<EntityKind> selected_kind(Document const&                doc,
                                              std::vector<EntityKind> const& kinds) const {
        // earlier kinds in the list win; --name overrides
        for (auto kind : kinds) {
          for (auto const& [k, n] : doc.order) {
            if (k == kind && (opts_.name.empty() || opts_.name == n)) {
              return k;
            }
          }
        }
        return std::nullopt;
      }

      //! Vertex groups of the orbit presentation, labelled orbit(v) by the
      //! first original vertex of each orbit.
      void graph_orbit(GraphAction const& act, bool summary) {
        auto const  pg = orbit_presentation(act);
        auto const& qg = pg.graph;
        if (summary) {
          out << "orbit graph " << qg.name() << "\n";
          out << "vertices: " << qg.num_vertices() << "\n";
          out << "edges: " << qg.num_edges() << "\n";
          for (std::size_t e = 0; e < qg.num_edges(); ++e) {
            out << "edge " << qg.edge(e).name << " : " << qg.vertex_name(qg.edge(e).source)
                << " -> " << qg.vertex_name(qg.edge(e).target) << "\n";
          }
          out << "relators:";
          if (pg.relators.empty()) {
            out << " none";
          }
          out << "\n";
          for (auto const& r : pg.relators) {
            out << "  " << to_string(qg, r) << "\n";
          }
        }
        auto bases = base_vertices(act, qg);
        for (auto v : bases) {
          auto const p = vertex_group_presentation(pg, v);
          if (!summary) {
            presentation_lines(p);
          }
          out << "vertex group at orbit(" << strip_brackets(qg.vertex_name(v))
              << "): " << describe_presented_group(p) << "\n";
        }
        auto named = pg;
        named.name = qg.name() + "_presented";
        std::string text = emit(qg) + "\n" + emit(named);
        write_emit(text);
      }

      static std::string strip_brackets(std::string const& s) {
        return s.size() >= 2 && s.front() == '[' && s.back() == ']' ? s.substr(1, s.size() - 2) : s;
      }

      std::vector<std::size_t> base_vertices(GraphAction const& act, DirectedGraph const& qg) {
        if (opts_.base.empty()) {
          std::vector<std::size_t> all(qg.num_vertices());
          std::iota(all.begin(), all.end(), 0);
          return all;
        }
        auto q = qg.find_vertex(opts_.base);
        if (q == DirectedGraph::npos) {
          auto const v = act.graph.vertex_at(opts_.base);
          for (std::size_t g = 0; g < act.group.size() && q == DirectedGraph::npos; ++g) {
            q = qg.find_vertex("[" + act.graph.vertex_name(act.act(g, v)) + "]");
          }
        }
        if (q == DirectedGraph::npos) {
          throw UnknownName("no vertex " + opts_.base);
        }
        return {q};
      }

      void presentation_lines(GroupPresentation const& p) {
        out << "generators: " << (p.generators.empty() ? "none" : join(p.generators)) << "\n";
        out << "relators:";
        if (p.relators.empty()) {
          out << " none";
        }
        out << "\n";
        for (auto const& r : p.relators) {
          out << "  " << relator_string(p, r) << "\n";
        }
        out << "abelian invariants: " << to_string(abelian_invariants(p)) << "\n";
      }

      // quotient, normal-closure ----------------------------------------

      std::pair<std::string, FiniteGroupoid const*> groupoid_input(Document const& doc) {
        auto [name, g] = pick(doc, doc.groupoids, EntityKind::groupoid, opts_.name);
        if (!g) {
          throw UsageError(opts_.input + " has no groupoid");
        }
        return {name, g};
      }

      void quotient() {
        auto doc     = load();
        auto [nm, k] = groupoid_input(doc);
        auto const gens = arrows_of(*k);
        auto const n    = generated_wide_subgroupoid(*k, gens);
        if (!n.is_normal()) {
          throw HypothesisFailure("the subgroupoid generated by " + join(opts_.arrows, ", ")
                                  + " is not normal in " + k->name()
                                  + "; use normal-closure first");
        }
        auto const q = quotient_groupoid(*k, n);
        out << "normal subgroupoid: " << n.size() << " arrows\n";
        groupoid_summary(q.groupoid, "quotient groupoid");
        out << "quotient morphism: " << yes(is_quotient_morphism(q.projection)) << "\n";
        write_emit(emit(q.groupoid));
      }

      void normal_closure_verb() {
        auto doc     = load();
        auto [nm, k] = groupoid_input(doc);
        auto const gens = arrows_of(*k);
        auto const n    = normal_closure(*k, gens);
        std::vector<std::string> names;
        for (auto a : n.arrows()) {
          names.push_back(k->arrow_name(a));
        }
        out << "normal closure in " << k->name() << ": " << n.size() << " arrows\n";
        out << "arrows: " << join(names) << "\n";
        auto const caps = oracle_caps();
        if (k->num_arrows() <= caps.normal_closure) {
          auto const m = oracle::minimal_normal_closure(*k, gens, caps);
          out << "lattice oracle agrees: " << yes(m == n) << "\n";
          if (!(m == n)) {
            code = exit_check;
          }
        } else {
          out << "lattice oracle: skipped (above " << caps.normal_closure << " arrows)\n";
        }
        write_emit(emit(as_groupoid(n, k->name() + "_N")));
      }

      // presentation, abelianize, symmetric-square ----------------------

      void presentation() {
        auto doc = load();
        auto const kind = selected_kind(
            doc, {EntityKind::graph_action, EntityKind::presented, EntityKind::graph});
        if (kind == EntityKind::graph_action) {
          auto [name, ga] = pick(doc, doc.graph_actions, EntityKind::graph_action, opts_.name);
          graph_orbit(*ga, false);
          return;
        }
        PresentedGroupoid pg;
        if (kind == EntityKind::presented) {
          pg = *pick(doc, doc.presented, EntityKind::presented, opts_.name).second;
        } else if (kind == EntityKind::graph) {
          auto [gname, g] = pick(doc, doc.graphs, EntityKind::graph, opts_.name);
          pg              = {gname, *g, {}};
        } else {
          throw UsageError(opts_.input + " has no graph, presented groupoid or graph action");
        }
        auto const base = opts_.base.empty() ? std::size_t{0} : pg.graph.vertex_at(opts_.base);
        if (pg.graph.num_vertices() == 0) {
          throw UsageError("graph has no vertices");
        }
        auto const p = vertex_group_presentation(pg, base);
        presentation_lines(p);
        out << "vertex group at " << pg.graph.vertex_name(base) << ": "
            << describe_presented_group(p) << "\n";
        write_emit(emit(p));
      }

      std::pair<GroupPresentation const*, GroupTable const*> algebraic_input(Document const& doc) {
        if (auto [n, p] = pick(doc, doc.presentations, EntityKind::presentation, opts_.name); p) {
          return {p, nullptr};
        }
        if (!opts_.name.empty()) {
          if (auto it = doc.groups.find(opts_.name); it != doc.groups.end()) {
            return {nullptr, &it->second};
          }
        } else {
          for (auto const& [k, n] : doc.order) {
            if (k == EntityKind::group) {
              return {nullptr, &doc.groups.at(n)};
            }
          }
        }
        throw UsageError(opts_.input + " has no presentation or group");
      }

      static GroupPresentation abelian_presentation(AbelianInvariants const& inv) {
        GroupPresentation p{"ab", {}, {}};
        for (std::size_t i = 0; i < inv.rank + inv.torsion.size(); ++i) {
          p.generators.push_back("z" + std::to_string(i + 1));
        }
        for (std::size_t i = 0; i < inv.torsion.size(); ++i) {
          p.relators.emplace_back(inv.torsion[i], Letter{inv.rank + i, false});
        }
        for (std::size_t i = 0; i < p.generators.size(); ++i) {
          for (std::size_t j = i + 1; j < p.generators.size(); ++j) {
            p.relators.push_back({{i, false}, {j, false}, {i, true}, {j, true}});
          }
        }
        return p;
      }

      void abelianize() {
        auto doc       = load();
        auto [p, g]    = algebraic_input(doc);
        AbelianInvariants inv;
        if (p) {
          inv = abelian_invariants(*p);
          out << "presentation " << p->name << ": " << p->generators.size() << " generators, "
              << p->relators.size() << " relators\n";
        } else {
          inv             = oracle::brute_abelianization(*g, oracle_caps());
          auto const snf  = abelian_invariants(table_presentation(*g));
          out << "group " << g->name() << ": order " << g->size() << "\n";
          out << "table presentation agrees: " << yes(snf == inv) << "\n";
          if (!(snf == inv)) {
            code = exit_check;
          }
        }
        out << "abelian invariants: " << to_string(inv) << "\n";
        auto ab = abelian_presentation(inv);
        ab.name = (p ? p->name : g->name()) + "_ab";
        write_emit(emit(ab));
      }

      void symmetric_square() {
        auto doc    = load();
        auto [p, g] = algebraic_input(doc);
        if (p) {
          auto const sq = symmetric_square_presentation(*p);
          out << "symmetric square of " << p->name << ": " << sq.generators.size()
              << " generators, " << sq.relators.size() << " relators\n";
          out << "abelian invariants: " << to_string(abelian_invariants(sq)) << "\n";
          write_emit(emit(sq));
          return;
        }
        auto const               hh = direct_product(*g, *g);
        std::vector<std::size_t> diagonal;
        for (std::size_t h = 0; h < g->size(); ++h) {
          diagonal.push_back(h * g->size() + g->inverse(h));
        }
        auto const q   = oracle::finite_quotient(hh, diagonal, oracle_caps());
        auto const inv = oracle::abelian_group_invariants(q);
        auto const ab  = oracle::brute_abelianization(*g, oracle_caps());
        out << "(" << g->name() << " x " << g->name() << ")/K: order " << q.size() << "\n";
        out << "abelian invariants: " << to_string(inv) << "\n";
        out << "matches abelianization of " << g->name() << ": " << yes(inv == ab) << "\n";
        if (!(inv == ab)) {
          code = exit_check;
        }
        write_emit(emit(q));
      }

      // check-regular-cover ---------------------------------------------

      void check_regular_cover() {
        auto doc      = load();
        auto [pn, p]  = pick(doc, doc.morphisms, EntityKind::morphism, opts_.morphism);
        auto [an, deck] = pick(doc, doc.actions, EntityKind::action, opts_.action);
        if (!p || !deck) {
          throw UsageError(opts_.input + " needs a morphism and an action");
        }
        guard(*deck);
        auto const report = regular_cover_orbit_check(*p, *deck);
        out << "covering " << pn << " : " << p->source().name() << " -> "
            << p->target().name() << "\n";
        out << "deck action " << an << " by " << deck->group().name() << ": free yes\n";
        out << "induced map " << p->source().name() << "//" << deck->group().name() << " -> "
            << p->target().name() << " is an isomorphism: " << yes(report.orbit_isomorphism)
            << "\n";
        out << "object groups of " << p->target().name()
            << " match the semidirect product: " << yes(report.object_groups_isomorphic) << "\n";
        for (auto const& issue : report.issues) {
          out << "  " << issue << "\n";
        }
        out << "result: " << (report.passed() ? "PASS" : "FAIL") << "\n";
        if (!report.passed()) {
          code = exit_check;
        }
        if (!opts_.emit.empty()) {
          write_emit(emit(orbit_groupoid(*deck).groupoid));
        }
      }

      // restrict-orbit --------------------------------------------------

      void restrict_orbit() {
        auto doc        = load();
        auto [an, act]  = pick(doc, doc.actions, EntityKind::action, opts_.name);
        if (!act) {
          throw UsageError(opts_.input + " has no groupoid action");
        }
        if (opts_.objects.empty()) {
          throw UsageError("restrict-orbit needs --objects");
        }
        guard(*act);
        std::vector<ObjectId> objs;
        for (auto const& o : opts_.objects) {
          objs.push_back(act->space().object_at(o));
        }
        auto const r = restrict_orbit_full_subgroupoid(*act, objs);
        out << "objects: " << join(opts_.objects) << "\n";
        out << "hypothesis: " << (r.hypothesis_holds ? "holds" : "fails") << "\n";
        for (auto const& f : r.hypothesis_failures) {
          out << "  " << f << "\n";
        }
        out << "restricted orbit groupoid: " << r.restricted_orbit->num_objects() << " objects, "
            << r.restricted_orbit->num_arrows() << " arrows\n";
        out << "full subgroupoid on A/G: " << r.full_image->num_objects() << " objects, "
            << r.full_image->num_arrows() << " arrows\n";
        out << "embedding: " << (r.embedding_verified ? "verified" : "not verified") << "\n";
        for (auto const& issue : r.issues) {
          out << "  " << issue << "\n";
        }
        if (!r.hypothesis_holds) {
          code = exit_hypothesis;
        } else if (!r.embedding_verified) {
          code = exit_check;
        }
        write_emit(emit(*r.restricted_orbit));
      }

      // verify ----------------------------------------------------------

      void verify();

      Options      opts_;
      std::size_t  cap_ = default_arrow_cap;
    };

    struct CheckRow {
      std::string name;
      std::size_t instances = 0;
      std::size_t failures  = 0;
      std::string first_failure;

      void record(bool ok, std::string const& what) {
        ++instances;
        if (!ok && failures++ == 0) {
          first_failure = what;
        }
      }
    };

    inline void Command::verify() {
      auto const caps = oracle_caps();
      std::vector<FiniteGroupoid> targets;
      std::string                 family;
      if (opts_.targets.empty()) {
        targets = oracle::standard_targets();
        family  = "standard v" + std::to_string(oracle::standard_targets_version);
      } else {
        auto doc = parse_file(opts_.targets);
        for (auto const& [k, n] : doc.order) {
          if (k == EntityKind::groupoid) {
            targets.push_back(doc.groupoids.at(n));
          }
        }
        family = opts_.targets + " (" + std::to_string(targets.size()) + " groupoids)";
      }

      auto corpus = standard_corpus();
      for (auto& e : random_actions(50, 20241015)) {
        corpus.push_back(std::move(e));
      }
      if (!opts_.input.empty()) {
        auto doc = load();
        for (auto const& [k, n] : doc.order) {
          if (k == EntityKind::action) {
            corpus.push_back({n, doc.actions.at(n)});
          }
        }
      }

      CheckRow closure{"normal closure = lattice oracle"};
      CheckRow kernel_row{"orbit kernel = generated by gamma - g.gamma"};
      CheckRow trichotomy{"projection fibration/quotient/covering/iso"};
      CheckRow universal{"universal property of orbit groupoid"};
      CheckRow negative{"universal property negative control"};
      CheckRow abel{"(H x H)/K = H^ab"};
      CheckRow present{"presentation invariants = brute force"};

      for (auto const& [name, act] : corpus) {
        if (act.space().num_arrows() * act.group().size() > cap_) {
          continue;
        }
        auto const  o  = orbit_groupoid(act);
        auto const& sp = act.space();

        if (sp.num_arrows() <= caps.normal_closure) {
          std::vector<ArrowId> r;
          for (auto a : sp.arrows()) {
            if (index(a) % 3 == 1) {
              r.push_back(a);
            }
          }
          closure.record(normal_closure(sp, r) == oracle::minimal_normal_closure(sp, r, caps),
                         name);
        }
        if (o.semidirect.groupoid.num_arrows() <= caps.normal_closure) {
          std::vector<ArrowId> r;
          for (std::size_t g = 0; g < act.group().size(); ++g) {
            for (auto x : sp.objects()) {
              r.push_back(o.semidirect.pair(sp.identity(act.act(g, x)), g));
            }
          }
          closure.record(
              o.normal == oracle::minimal_normal_closure(o.semidirect.groupoid, r, caps),
              name + " (semidirect)");
        }

        kernel_row.record(generated_wide_subgroupoid(sp, orbit_kernel_generators(act))
                          == kernel(o.projection),
                      name);

        auto const& q           = o.semidirect.projection;
        bool const  connected   = is_connected(sp);
        bool const  discrete    = sp.is_discrete();
        bool        trivial_pi0 = true;
        auto const  comps       = components(sp);
        for (std::size_t g = 0; g < act.group().size(); ++g) {
          for (auto const& c : comps) {
            auto const y = act.act(g, c.front());
            trivial_pi0  = trivial_pi0 && std::find(c.begin(), c.end(), y) != c.end();
          }
        }
        trichotomy.record(is_fibration(q) && is_quotient_morphism(q) == connected
                              && is_covering(q) == discrete
                              && is_iso_on_object_groups(q)
                                     == (has_trivial_object_groups(sp) && trivial_pi0),
                          name);

        if (sp.num_arrows() <= 8 && o.groupoid.num_arrows() <= caps.enumerate_source
            && sp.num_arrows() <= caps.enumerate_source) {
          auto const rep = oracle::check_universal_property(act, o.projection, targets, caps);
          universal.record(rep.passed(), name + (rep.passed() ? "" : ": " + rep.failures[0]));
        }
      }

      {
        // an extra disjoint object makes factorisations non-unique
        auto const& act   = corpus.front().action;
        auto const  o     = orbit_groupoid(act);
        auto const  extra = disjoint_union(o.groupoid.name() + "+pt", o.groupoid,
                                          discrete_groupoid("pt", {"extra"}));
        std::vector<ObjectId> om;
        std::vector<ArrowId>  am;
        for (auto x : act.space().objects()) {
          om.push_back(extra.object_at(o.groupoid.object_name(o.projection(x))));
        }
        for (auto a : act.space().arrows()) {
          am.push_back(extra.arrow_at(o.groupoid.arrow_name(o.projection(a))));
        }
        GroupoidMorphism bad(act.space(), extra, om, am);
        auto const rep = oracle::check_universal_property(act, bad, targets, caps);
        negative.record(!rep.passed(), corpus.front().name);
      }

      for (auto const& h : {cyclic_group(4), symmetric_group(3), dihedral_group(4),
                            quaternion_group(), alternating_group(4)}) {
        auto const               hh = direct_product(h, h);
        std::vector<std::size_t> diagonal;
        for (std::size_t x = 0; x < h.size(); ++x) {
          diagonal.push_back(x * h.size() + h.inverse(x));
        }
        if (hh.size() > caps.finite_group) {
          continue;
        }
        auto const ab = oracle::brute_abelianization(h, caps);
        abel.record(oracle::abelian_group_invariants(oracle::finite_quotient(hh, diagonal, caps))
                        == ab,
                    h.name());
        present.record(abelian_invariants(table_presentation(h)) == ab, h.name());
      }

      std::vector<CheckRow const*> rows{&closure, &kernel_row, &trichotomy, &universal,
                                        &negative, &abel, &present};
      out << "target family: " << family << "\n";
      out << "corpus: " << corpus.size() << " actions\n";
      char line[160];
      std::snprintf(line, sizeof line, "%-48s %9s  %s\n", "check", "instances", "result");
      out << line;
      bool all = true;
      for (auto const* row : rows) {
        bool const ok = row->failures == 0 && row->instances > 0;
        all           = all && ok;
        std::snprintf(line, sizeof line, "%-48s %9zu  %s\n", row->name.c_str(), row->instances,
                      ok ? "PASS" : "FAIL");
        out << line;
        if (!ok && row->failures > 0) {
          out << "  first failure: " << row->first_failure << "\n";
        }
      }
      out << "overall: " << (all ? "PASS" : "FAIL") << "\n";
      if (!all) {
        code = exit_check;
      }
    }
  }  // namespace detail

  //! Runs one verb and returns its report and exit code; never throws.
  inline CommandResult run_command(std::string const& verb, Options const& opts) {
    CommandResult result;
    try {
      detail::Command cmd(opts);
      if (verb == "semidirect") {
        cmd.semidirect();
      } else if (verb == "orbit") {
        cmd.orbit();
      } else if (verb == "quotient") {
        cmd.quotient();
      } else if (verb == "normal-closure") {
        cmd.normal_closure_verb();
      } else if (verb == "presentation") {
        cmd.presentation();
      } else if (verb == "abelianize") {
        cmd.abelianize();
      } else if (verb == "symmetric-square") {
        cmd.symmetric_square();
      } else if (verb == "check-regular-cover") {
        cmd.check_regular_cover();
      } else if (verb == "restrict-orbit") {
        cmd.restrict_orbit();
      } else if (verb == "verify") {
        cmd.verify();
      } else {
        throw UsageError("unknown verb '" + verb + "'");
      }
      result.output    = cmd.out.str();
      result.exit_code = cmd.code;
    } catch (ParseError const& e) {
      result = {exit_load, std::string("error: ") + (opts.input.empty() ? "" : opts.input + ":")
                               + e.what() + "\n"};
    } catch (HypothesisFailure const& e) {
      result = {exit_hypothesis, std::string("hypothesis failure: ") + e.what() + "\n"};
    } catch (UsageError const& e) {
      result = {exit_usage, std::string("usage error: ") + e.what() + "\n"};
    } catch (CapExceeded const& e) {
      result = {exit_usage, std::string("cap exceeded: ") + e.what() + "\n"};
    } catch (Error const& e) {
      result = {exit_load, std::string("error: ") + e.what() + "\n"};
    }
    return result;
  }

}  // namespace gpdkit::cli

#endif  // GPDKIT_TOOLS_CLI_HPP_
