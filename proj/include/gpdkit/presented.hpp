#ifndef GPDKIT_PRESENTED_HPP_
#define GPDKIT_PRESENTED_HPP_

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "error.hpp"
#include "group_table.hpp"

namespace gpdkit {

  //! An edge (or generator) index with an orientation.
  struct Letter {
    std::size_t index   = 0;
    bool        inverse = false;

    Letter operator-() const noexcept {
      return {index, !inverse};
    }
    friend bool operator==(Letter const&, Letter const&) = default;
  };

  struct GraphEdge {
    std::string name;
    std::size_t source = 0;
    std::size_t target = 0;

    friend bool operator==(GraphEdge const&, GraphEdge const&) = default;
  };

  class DirectedGraph {
   public:
    explicit DirectedGraph(std::string name = "graph") : name_(std::move(name)) {}

    std::size_t add_vertex(std::string const& name) {
      if (find_vertex(name) != npos) {
        throw InvalidStructure("duplicate vertex " + name);
      }
      vertices_.push_back(name);
      return vertices_.size() - 1;
    }
    std::size_t add_edge(std::string const& name, std::size_t source, std::size_t target) {
      if (source >= vertices_.size() || target >= vertices_.size()) {
        throw InvalidStructure("edge " + name + " has an endpoint outside the graph");
      }
      if (find_edge(name) != npos) {
        throw InvalidStructure("duplicate edge " + name);
      }
      edges_.push_back({name, source, target});
      return edges_.size() - 1;
    }

    static constexpr std::size_t npos = SIZE_MAX;

    std::string const& name() const noexcept {
      return name_;
    }
    std::size_t num_vertices() const noexcept {
      return vertices_.size();
    }
    std::size_t num_edges() const noexcept {
      return edges_.size();
    }
    std::string const& vertex_name(std::size_t v) const {
      return vertices_.at(v);
    }
    GraphEdge const& edge(std::size_t e) const {
      return edges_.at(e);
    }
    std::size_t find_vertex(std::string const& name) const {
      auto it = std::find(vertices_.begin(), vertices_.end(), name);
      return it == vertices_.end() ? npos : static_cast<std::size_t>(it - vertices_.begin());
    }
    std::size_t find_edge(std::string const& name) const {
      for (std::size_t e = 0; e < edges_.size(); ++e) {
        if (edges_[e].name == name) {
          return e;
        }
      }
      return npos;
    }
    std::size_t vertex_at(std::string const& name) const {
      auto v = find_vertex(name);
      if (v == npos) {
        throw UnknownName(name_ + " has no vertex " + name);
      }
      return v;
    }
    std::size_t edge_at(std::string const& name) const {
      auto e = find_edge(name);
      if (e == npos) {
        throw UnknownName(name_ + " has no edge " + name);
      }
      return e;
    }
    std::size_t source(Letter l) const {
      return l.inverse ? edge(l.index).target : edge(l.index).source;
    }
    std::size_t target(Letter l) const {
      return l.inverse ? edge(l.index).source : edge(l.index).target;
    }
    std::string letter_name(Letter l) const {
      return (l.inverse ? "-" : "") + edge(l.index).name;
    }

    friend bool operator==(DirectedGraph const& a, DirectedGraph const& b) {
      return a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
    }

   private:
    std::string              name_;
    std::vector<std::string> vertices_;
    std::vector<GraphEdge>   edges_;
  };

  //! A path in the free groupoid on a graph, written additively:
  //! letters.front() is traversed last, so source(letters[i]) ==
  //! target(letters[i + 1]).
  struct Word {
    std::size_t         source = 0;
    std::size_t         target = 0;
    std::vector<Letter> letters;

    bool is_loop() const noexcept {
      return source == target;
    }
    friend bool operator==(Word const&, Word const&) = default;
  };

  //! Checks composability and fills in the endpoints.  An empty word needs
  //! its vertex.
  inline Word make_word(DirectedGraph const&  g,
                        std::vector<Letter>   letters,
                        std::size_t           empty_at = DirectedGraph::npos) {
    for (auto l : letters) {
      if (l.index >= g.num_edges()) {
        throw InvalidStructure("word uses an edge outside " + g.name());
      }
    }
    if (letters.empty()) {
      if (empty_at >= g.num_vertices()) {
        throw InvalidStructure("empty word needs a vertex");
      }
      return {empty_at, empty_at, {}};
    }
    for (std::size_t i = 0; i + 1 < letters.size(); ++i) {
      if (g.source(letters[i]) != g.target(letters[i + 1])) {
        throw InvalidStructure("word is not composable at " + g.letter_name(letters[i + 1])
                               + " then " + g.letter_name(letters[i]));
      }
    }
    return {g.source(letters.back()), g.target(letters.front()), std::move(letters)};
  }

  //! Cancels adjacent e, -e pairs until none remain.
  inline Word free_reduce(Word const& w) {
    std::vector<Letter> out;
    for (auto l : w.letters) {
      if (!out.empty() && out.back() == -l) {
        out.pop_back();
      } else {
        out.push_back(l);
      }
    }
    return {w.source, w.target, std::move(out)};
  }

  inline std::string to_string(DirectedGraph const& g, Word const& w) {
    if (w.letters.empty()) {
      return "0_" + g.vertex_name(w.source);
    }
    std::string out;
    for (auto l : w.letters) {
      out += (out.empty() ? "" : " ") + g.letter_name(l);
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Graph actions
  ////////////////////////////////////////////////////////////////////////

  //! G acting on a graph: vertex_map[g * |V| + v], edge_map[g * |E| + e],
  //! the latter a signed edge so that an edge may be sent to a reversed one.
  struct GraphAction {
    GroupTable               group;
    DirectedGraph            graph;
    std::vector<std::size_t> vertex_map;
    std::vector<Letter>      edge_map;

    std::size_t act(std::size_t g, std::size_t v) const {
      return vertex_map.at(g * graph.num_vertices() + v);
    }
    Letter act(std::size_t g, Letter l) const {
      auto image = edge_map.at(g * graph.num_edges() + l.index);
      return l.inverse ? -image : image;
    }
  };

  inline ValidationReport validate_graph_action(GraphAction const& act) {
    ValidationReport report;
    auto const&      G  = act.group;
    auto const&      gr = act.graph;
    if (act.vertex_map.size() != G.size() * gr.num_vertices()
        || act.edge_map.size() != G.size() * gr.num_edges()) {
      report.add("action tables have the wrong size");
      return report;
    }
    for (auto v : act.vertex_map) {
      if (v >= gr.num_vertices()) {
        report.add("action sends a vertex outside the graph");
        return report;
      }
    }
    for (auto l : act.edge_map) {
      if (l.index >= gr.num_edges()) {
        report.add("action sends an edge outside the graph");
        return report;
      }
    }
    auto const e = G.identity();
    for (std::size_t v = 0; v < gr.num_vertices(); ++v) {
      if (act.act(e, v) != v) {
        report.add("axiom (i) fails: 1 . " + gr.vertex_name(v) + " != " + gr.vertex_name(v));
      }
    }
    for (std::size_t x = 0; x < gr.num_edges(); ++x) {
      if (!(act.act(e, Letter{x, false}) == Letter{x, false})) {
        report.add("axiom (i) fails: 1 . " + gr.edge(x).name + " != " + gr.edge(x).name);
      }
    }
    for (std::size_t g = 0; g < G.size(); ++g) {
      for (std::size_t h = 0; h < G.size(); ++h) {
        auto const gh = G.multiply(g, h);
        for (std::size_t v = 0; v < gr.num_vertices(); ++v) {
          if (act.act(g, act.act(h, v)) != act.act(gh, v)) {
            report.add("axiom (ii) fails for (g, h, x) = (" + G.element_name(g) + ", "
                       + G.element_name(h) + ", " + gr.vertex_name(v) + ")");
          }
        }
        for (std::size_t x = 0; x < gr.num_edges(); ++x) {
          Letter const l{x, false};
          if (!(act.act(g, act.act(h, l)) == act.act(gh, l))) {
            report.add("axiom (ii) fails for (g, h, e) = (" + G.element_name(g) + ", "
                       + G.element_name(h) + ", " + gr.edge(x).name + ")");
          }
        }
      }
      for (std::size_t x = 0; x < gr.num_edges(); ++x) {
        Letter const l{x, false};
        auto const   image = act.act(g, l);
        if (gr.source(image) != act.act(g, gr.source(l))
            || gr.target(image) != act.act(g, gr.target(l))) {
          report.add(G.element_name(g) + " . " + gr.edge(x).name
                     + " does not have the translated endpoints");
        }
      }
    }
    return report;
  }

  inline void require_valid_graph_action(GraphAction const& act) {
    auto report = validate_graph_action(act);
    if (!report.valid()) {
      throw InvalidStructure("invalid action of " + act.group.name() + " on "
                             + act.graph.name() + ":\n" + report.to_string());
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // Presented groupoids
  ////////////////////////////////////////////////////////////////////////

  //! The free groupoid on a graph modulo loop relators.
  struct PresentedGroupoid {
    std::string       name;
    DirectedGraph     graph;
    std::vector<Word> relators;
  };

  inline ValidationReport validate_presented(PresentedGroupoid const& pg) {
    ValidationReport report;
    for (auto const& r : pg.relators) {
      try {
        auto checked = make_word(pg.graph, r.letters, r.source);
        if (checked.source != r.source || checked.target != r.target) {
          report.add("relator " + to_string(pg.graph, r) + " has wrong endpoints");
        } else if (!checked.is_loop()) {
          report.add("relator " + to_string(pg.graph, r) + " is not a loop");
        }
      } catch (Error const& e) {
        report.add(e.what());
      }
    }
    return report;
  }

  //! Quotient graph of a graph action: vertex orbits [v] and one edge [e]
  //! per edge orbit, oriented as its first edge in input order.  An orbit
  //! containing both e and -e gets the relator [e] [e].
  inline PresentedGroupoid orbit_presentation(GraphAction const& act) {
    require_valid_graph_action(act);
    auto const&       gr = act.graph;
    auto const&       G  = act.group;
    std::size_t const nv = gr.num_vertices();
    std::size_t const ne = gr.num_edges();

    DirectedGraph            quotient(gr.name() + "//" + G.name());
    std::vector<std::size_t> vertex_class(nv, DirectedGraph::npos);
    for (std::size_t v = 0; v < nv; ++v) {
      if (vertex_class[v] != DirectedGraph::npos) {
        continue;
      }
      auto const q = quotient.add_vertex("[" + gr.vertex_name(v) + "]");
      for (std::size_t g = 0; g < G.size(); ++g) {
        vertex_class[act.act(g, v)] = q;
      }
    }
    std::vector<bool> seen(ne, false);
    std::vector<Word> relators;
    for (std::size_t x = 0; x < ne; ++x) {
      if (seen[x]) {
        continue;
      }
      auto const q = quotient.add_edge("[" + gr.edge(x).name + "]",
                                       vertex_class[gr.edge(x).source],
                                       vertex_class[gr.edge(x).target]);
      bool inverted = false;
      for (std::size_t g = 0; g < G.size(); ++g) {
        auto const image = act.act(g, Letter{x, false});
        seen[image.index] = true;
        inverted = inverted || (image.index == x && image.inverse);
      }
      if (inverted) {
        relators.push_back(make_word(quotient, {{q, false}, {q, false}}));
      }
    }
    return {quotient.name(), quotient, std::move(relators)};
  }

  namespace detail {
    struct TreeSearch {
      std::vector<std::size_t> tree_edges;
      std::vector<bool>        reached;
      //! Tree path from the base to each reached vertex, as a word.
      std::vector<std::vector<Letter>> path;
    };

    inline TreeSearch breadth_first_tree(DirectedGraph const& g, std::size_t base) {
      if (base >= g.num_vertices()) {
        throw UnknownName(g.name() + " has no vertex #" + std::to_string(base));
      }
      TreeSearch out{{}, std::vector<bool>(g.num_vertices(), false),
                     std::vector<std::vector<Letter>>(g.num_vertices())};
      std::deque<std::size_t> queue{base};
      out.reached[base] = true;
      while (!queue.empty()) {
        auto const v = queue.front();
        queue.pop_front();
        for (std::size_t x = 0; x < g.num_edges(); ++x) {
          auto const& e = g.edge(x);
          Letter      step;
          if (e.source == v && !out.reached[e.target]) {
            step = {x, false};
          } else if (e.target == v && !out.reached[e.source]) {
            step = {x, true};
          } else {
            continue;
          }
          auto const w = g.target(step);
          out.reached[w] = true;
          out.tree_edges.push_back(x);
          out.path[w] = out.path[v];
          out.path[w].insert(out.path[w].begin(), step);
          queue.push_back(w);
        }
      }
      return out;
    }
  }  // namespace detail

  //! Breadth-first spanning tree from base; edges are tried in input order.
  //! Throws if the graph is not connected.
  inline std::vector<std::size_t> spanning_tree(DirectedGraph const& g, std::size_t base) {
    auto search = detail::breadth_first_tree(g, base);
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
      if (!search.reached[v]) {
        throw InvalidStructure(g.name() + " is not connected: " + g.vertex_name(v)
                               + " is unreachable from " + g.vertex_name(base));
      }
    }
    return search.tree_edges;
  }

  ////////////////////////////////////////////////////////////////////////
  // Group presentations
  ////////////////////////////////////////////////////////////////////////

  //! Relators are words in the generators, read left to right.
  struct GroupPresentation {
    std::string                      name;
    std::vector<std::string>         generators;
    std::vector<std::vector<Letter>> relators;

    std::size_t find(std::string const& g) const {
      auto it = std::find(generators.begin(), generators.end(), g);
      return it == generators.end() ? DirectedGraph::npos
                                    : static_cast<std::size_t>(it - generators.begin());
    }
  };

  inline ValidationReport validate_presentation(GroupPresentation const& p) {
    ValidationReport report;
    for (std::size_t i = 0; i < p.generators.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (p.generators[i] == p.generators[j]) {
          report.add("duplicate generator " + p.generators[i]);
        }
      }
    }
    for (auto const& r : p.relators) {
      for (auto l : r) {
        if (l.index >= p.generators.size()) {
          report.add("relator uses a letter outside the generators");
        }
      }
    }
    return report;
  }

  inline std::string relator_string(GroupPresentation const& p, std::vector<Letter> const& r) {
    if (r.empty()) {
      return "1";
    }
    std::string out;
    for (auto l : r) {
      out += (out.empty() ? "" : " ") + std::string(l.inverse ? "-" : "")
             + p.generators.at(l.index);
    }
    return out;
  }

  //! Presentation of the object group at base: generators are the non-tree
  //! edges of the base's component, and relators in that component have
  //! their tree edges deleted.
  inline GroupPresentation vertex_group_presentation(PresentedGroupoid const& pg,
                                                     std::size_t              base) {
    auto const&              g      = pg.graph;
    auto const               search = detail::breadth_first_tree(g, base);
    std::vector<bool>        in_tree(g.num_edges(), false);
    std::vector<std::size_t> generator_of(g.num_edges(), DirectedGraph::npos);
    for (auto x : search.tree_edges) {
      in_tree[x] = true;
    }
    GroupPresentation out{pg.name + "(" + g.vertex_name(base) + ")", {}, {}};
    for (std::size_t x = 0; x < g.num_edges(); ++x) {
      if (!in_tree[x] && search.reached[g.edge(x).source]) {
        generator_of[x] = out.generators.size();
        out.generators.push_back(g.edge(x).name);
      }
    }
    for (auto const& r : pg.relators) {
      if (!search.reached[r.source]) {
        continue;
      }
      std::vector<Letter> word;
      for (auto l : r.letters) {
        if (!in_tree[l.index]) {
          word.push_back({generator_of[l.index], l.inverse});
        }
      }
      out.relators.push_back(std::move(word));
    }
    return out;
  }

  inline GroupPresentation free_presentation(std::size_t rank) {
    GroupPresentation p{"F" + std::to_string(rank), {}, {}};
    for (std::size_t i = 0; i < rank; ++i) {
      p.generators.push_back("x" + std::to_string(i + 1));
    }
    return p;
  }

  //! Generators are the non-identity elements; relators a b -c for ab = c.
  inline GroupPresentation table_presentation(GroupTable const& G) {
    GroupPresentation        p{G.name(), {}, {}};
    std::vector<std::size_t> gen(G.size(), DirectedGraph::npos);
    for (std::size_t a = 0; a < G.size(); ++a) {
      if (a != G.identity()) {
        gen[a] = p.generators.size();
        p.generators.push_back(G.element_name(a));
      }
    }
    for (std::size_t a = 0; a < G.size(); ++a) {
      for (std::size_t b = 0; b < G.size(); ++b) {
        if (a == G.identity() || b == G.identity()) {
          continue;
        }
        std::vector<Letter> r{{gen[a], false}, {gen[b], false}};
        auto const          c = G.multiply(a, b);
        if (c != G.identity()) {
          r.push_back({gen[c], true});
        }
        p.relators.push_back(std::move(r));
      }
    }
    return p;
  }

  //! Copies [a] of p's generators and <b> of q's, both relator sets, and the
  //! commutators [a] <b> -[a] -<b>.
  inline GroupPresentation direct_product_presentation(GroupPresentation const& p,
                                                       GroupPresentation const& q) {
    GroupPresentation out{p.name + "x" + q.name, {}, {}};
    std::size_t const shift = p.generators.size();
    for (auto const& a : p.generators) {
      out.generators.push_back("[" + a + "]");
    }
    for (auto const& b : q.generators) {
      out.generators.push_back("<" + b + ">");
    }
    out.relators = p.relators;
    for (auto const& r : q.relators) {
      std::vector<Letter> moved;
      for (auto l : r) {
        moved.push_back({l.index + shift, l.inverse});
      }
      out.relators.push_back(std::move(moved));
    }
    for (std::size_t a = 0; a < shift; ++a) {
      for (std::size_t b = 0; b < q.generators.size(); ++b) {
        out.relators.push_back(
            {{a, false}, {shift + b, false}, {a, true}, {shift + b, true}});
      }
    }
    return out;
  }

  //! The product of p with itself plus [a] -<a> for each generator a.
  //! Because the copies commute, identifying generators identifies every
  //! element h with its copy, so the result presents (H x H)/K.
  inline GroupPresentation symmetric_square_presentation(GroupPresentation const& p) {
    auto              out   = direct_product_presentation(p, p);
    std::size_t const shift = p.generators.size();
    out.name                = "Sym2(" + p.name + ")";
    for (std::size_t a = 0; a < shift; ++a) {
      out.relators.push_back({{a, false}, {shift + a, true}});
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Abelian invariants
  ////////////////////////////////////////////////////////////////////////

  struct AbelianInvariants {
    std::size_t                rank = 0;
    std::vector<std::uint64_t> torsion;

    bool trivial() const noexcept {
      return rank == 0 && torsion.empty();
    }
    friend bool operator==(AbelianInvariants const&, AbelianInvariants const&) = default;
  };

  inline std::string to_string(AbelianInvariants const& inv) {
    if (inv.trivial()) {
      return "trivial";
    }
    std::string out;
    if (inv.rank > 0) {
      out = "rank " + std::to_string(inv.rank);
    }
    if (!inv.torsion.empty()) {
      out += out.empty() ? "torsion [" : ", torsion [";
      for (std::size_t i = 0; i < inv.torsion.size(); ++i) {
        out += (i ? "," : "") + std::to_string(inv.torsion[i]);
      }
      out += "]";
    }
    return out;
  }

  //! Normalises a list of positive cyclic orders to invariant factors
  //! d1 | d2 | ... with the 1s dropped.
  inline std::vector<std::uint64_t> invariant_factors(std::vector<std::uint64_t> d) {
    for (std::size_t i = 0; i < d.size(); ++i) {
      for (std::size_t j = i + 1; j < d.size(); ++j) {
        auto const g = std::gcd(d[i], d[j]);
        auto const l = d[i] / g * d[j];
        d[i]         = g;
        d[j]         = l;
      }
    }
    std::vector<std::uint64_t> out;
    for (auto x : d) {
      if (x > 1) {
        out.push_back(x);
      }
    }
    return out;
  }

  namespace detail {
    inline std::int64_t checked_sub_mul(std::int64_t a, std::int64_t q, std::int64_t b) {
      std::int64_t prod = 0, diff = 0;
      if (__builtin_mul_overflow(q, b, &prod) || __builtin_sub_overflow(a, prod, &diff)) {
        throw CapExceeded("integer overflow in Smith normal form");
      }
      return diff;
    }

    //! Diagonal of the Smith normal form of m (rows x cols), zeros omitted.
    inline std::vector<std::uint64_t>
    smith_diagonal(std::vector<std::vector<std::int64_t>> m, std::size_t cols) {
      std::size_t const          rows = m.size();
      std::vector<std::uint64_t> diagonal;
      std::size_t                t = 0;
      while (t < rows && t < cols) {
        std::size_t  pr = rows, pc = cols;
        std::int64_t best = 0;
        for (std::size_t i = t; i < rows; ++i) {
          for (std::size_t j = t; j < cols; ++j) {
            auto v = m[i][j] < 0 ? -m[i][j] : m[i][j];
            if (v != 0 && (best == 0 || v < best)) {
              best = v;
              pr   = i;
              pc   = j;
            }
          }
        }
        if (best == 0) {
          break;
        }
        std::swap(m[t], m[pr]);
        for (auto& row : m) {
          std::swap(row[t], row[pc]);
        }
        bool clean = true;
        for (std::size_t i = t + 1; i < rows; ++i) {
          auto q = m[i][t] / m[t][t];
          for (std::size_t j = t; j < cols; ++j) {
            m[i][j] = checked_sub_mul(m[i][j], q, m[t][j]);
          }
          clean = clean && m[i][t] == 0;
        }
        for (std::size_t j = t + 1; j < cols; ++j) {
          auto q = m[t][j] / m[t][t];
          for (std::size_t i = t; i < rows; ++i) {
            m[i][j] = checked_sub_mul(m[i][j], q, m[i][t]);
          }
          clean = clean && m[t][j] == 0;
        }
        if (!clean) {
          continue;  // a smaller remainder now exists; pivot again
        }
        // divisibility: fold any row with an entry not divisible by the pivot
        bool divides = true;
        for (std::size_t i = t + 1; i < rows && divides; ++i) {
          for (std::size_t j = t + 1; j < cols && divides; ++j) {
            if (m[i][j] % m[t][t] != 0) {
              for (std::size_t k = t; k < cols; ++k) {
                m[t][k] = checked_sub_mul(m[t][k], -1, m[i][k]);
              }
              divides = false;
            }
          }
        }
        if (!divides) {
          continue;
        }
        diagonal.push_back(static_cast<std::uint64_t>(m[t][t] < 0 ? -m[t][t] : m[t][t]));
        ++t;
      }
      return diagonal;
    }
  }  // namespace detail

  //! Exponent-sum matrix of the relators, reduced to Smith normal form.
  inline AbelianInvariants abelian_invariants(GroupPresentation const& p) {
    auto report = validate_presentation(p);
    if (!report.valid()) {
      throw InvalidStructure("invalid presentation " + p.name + ":\n" + report.to_string());
    }
    std::size_t const                      n = p.generators.size();
    std::vector<std::vector<std::int64_t>> m;
    for (auto const& r : p.relators) {
      std::vector<std::int64_t> row(n, 0);
      for (auto l : r) {
        row[l.index] += l.inverse ? -1 : 1;
      }
      if (std::any_of(row.begin(), row.end(), [](std::int64_t v) { return v != 0; })) {
        m.push_back(std::move(row));
      }
    }
    auto const        diagonal = detail::smith_diagonal(std::move(m), n);
    AbelianInvariants out;
    out.rank    = n - diagonal.size();
    out.torsion = invariant_factors(diagonal);
    return out;
  }

}  // namespace gpdkit

#endif  // GPDKIT_PRESENTED_HPP_
