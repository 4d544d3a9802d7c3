#ifndef GPDKIT_TEXT_FORMAT_HPP_
#define GPDKIT_TEXT_FORMAT_HPP_

// Line-oriented text format shared by every entity kind.
//
//   groupoid T
//     objects x y                 # identities are id_x, id_y
//     object z identity 0_z       # or name the identity
//     arrow a : x -> y
//     compose b a = id_x          # b + a, a first
//
//   group G cyclic 2              # also symmetric N, alternating N,
//                                 # dihedral N, quaternion, trivial,
//                                 # product A B, table
//   group H table
//     elements 1 s
//     row s : s 1                 # s * 1, s * s
//
//   action swap on T by G         # T a groupoid or a graph
//     obj g : x -> y              # unlisted pairs are fixed
//     arr g : a -> b              # graphs: act g : e -> -f
//
//   graph C
//     vertices 1 i
//     edge e : 1 -> i
//
//   presented P on C
//     relator e -f                # written additively, last letter first
//
//   presentation S3
//     generators s t
//     relator s s
//
//   morphism p : K -> H
//     obj x -> *
//     arr a -> g                  # identities follow the objects

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "action.hpp"
#include "error.hpp"
#include "finite_groupoid.hpp"
#include "group_table.hpp"
#include "morphism.hpp"
#include "presented.hpp"

namespace gpdkit {

  enum class EntityKind {
    group,
    groupoid,
    graph,
    action,
    graph_action,
    presented,
    presentation,
    morphism
  };

  inline char const* kind_name(EntityKind k) {
    switch (k) {
      case EntityKind::group: return "group";
      case EntityKind::groupoid: return "groupoid";
      case EntityKind::graph: return "graph";
      case EntityKind::action: return "action";
      case EntityKind::graph_action: return "graph action";
      case EntityKind::presented: return "presented groupoid";
      case EntityKind::presentation: return "presentation";
      case EntityKind::morphism: return "morphism";
    }
    return "entity";
  }

  //! Parsed entities by name.  Groups have their own namespace; every other
  //! kind shares one.
  struct Document {
    std::map<std::string, GroupTable>        groups;
    std::map<std::string, FiniteGroupoid>    groupoids;
    std::map<std::string, DirectedGraph>     graphs;
    std::map<std::string, GroupoidAction>    actions;
    std::map<std::string, GraphAction>       graph_actions;
    std::map<std::string, PresentedGroupoid> presented;
    std::map<std::string, GroupPresentation> presentations;
    std::map<std::string, GroupoidMorphism>  morphisms;
    std::vector<std::pair<EntityKind, std::string>> order;

    std::optional<EntityKind> kind_of(std::string const& name) const {
      for (auto const& [k, n] : order) {
        if (n == name && k != EntityKind::group) {
          return k;
        }
      }
      return std::nullopt;
    }
    bool has_group(std::string const& name) const {
      return groups.count(name) > 0;
    }

    void add(std::string const& name, GroupTable g) {
      if (has_group(name)) {
        throw InvalidStructure("duplicate group " + name);
      }
      groups.emplace(name, std::move(g));
      order.emplace_back(EntityKind::group, name);
    }
    void add(std::string const& name, FiniteGroupoid g) {
      claim(name);
      groupoids.emplace(name, std::move(g));
      order.emplace_back(EntityKind::groupoid, name);
    }
    void add(std::string const& name, DirectedGraph g) {
      claim(name);
      graphs.emplace(name, std::move(g));
      order.emplace_back(EntityKind::graph, name);
    }
    void add(std::string const& name, GroupoidAction a) {
      claim(name);
      actions.emplace(name, std::move(a));
      order.emplace_back(EntityKind::action, name);
    }
    void add(std::string const& name, GraphAction a) {
      claim(name);
      graph_actions.emplace(name, std::move(a));
      order.emplace_back(EntityKind::graph_action, name);
    }
    void add(std::string const& name, PresentedGroupoid p) {
      claim(name);
      presented.emplace(name, std::move(p));
      order.emplace_back(EntityKind::presented, name);
    }
    void add(std::string const& name, GroupPresentation p) {
      claim(name);
      presentations.emplace(name, std::move(p));
      order.emplace_back(EntityKind::presentation, name);
    }
    void add(std::string const& name, GroupoidMorphism f) {
      claim(name);
      morphisms.emplace(name, std::move(f));
      order.emplace_back(EntityKind::morphism, name);
    }

   private:
    void claim(std::string const& name) const {
      if (kind_of(name)) {
        throw InvalidStructure("duplicate entity " + name);
      }
    }
  };

  ////////////////////////////////////////////////////////////////////////
  // Parsing
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    struct Token {
      std::string text;
      std::size_t column = 0;
    };
    struct Line {
      std::size_t        number = 0;
      std::vector<Token> tokens;
    };

    inline std::vector<Line> tokenize(std::string const& text) {
      std::vector<Line>  out;
      std::istringstream in(text);
      std::string        raw;
      std::size_t        number = 0;
      while (std::getline(in, raw)) {
        ++number;
        Line line{number, {}};
        std::size_t i = 0;
        while (i < raw.size()) {
          if (std::isspace(static_cast<unsigned char>(raw[i]))) {
            ++i;
            continue;
          }
          if (raw[i] == '#') {
            break;
          }
          std::size_t j = i;
          while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) {
            ++j;
          }
          line.tokens.push_back({raw.substr(i, j - i), i + 1});
          i = j;
        }
        if (!line.tokens.empty()) {
          out.push_back(std::move(line));
        }
      }
      return out;
    }

    inline bool is_header(std::string const& word) {
      static std::set<std::string> const headers{"groupoid", "group", "action", "graph",
                                                 "presented", "presentation", "morphism"};
      return headers.count(word) > 0;
    }

    class Parser {
     public:
      explicit Parser(Document& doc) : doc_(doc) {}

      void run(std::vector<Line> const& lines) {
        std::size_t i = 0;
        while (i < lines.size()) {
          auto const& header = lines[i];
          if (!is_header(header.tokens[0].text)) {
            fail(header, 0, "expected an entity header, found '" + header.tokens[0].text + "'");
          }
          std::size_t j = i + 1;
          while (j < lines.size() && !is_header(lines[j].tokens[0].text)) {
            ++j;
          }
          std::vector<Line> body(lines.begin() + static_cast<std::ptrdiff_t>(i + 1),
                                 lines.begin() + static_cast<std::ptrdiff_t>(j));
          auto const& kind = header.tokens[0].text;
          if (kind == "groupoid") {
            groupoid(header, body);
          } else if (kind == "group") {
            group(header, body);
          } else if (kind == "action") {
            action(header, body);
          } else if (kind == "graph") {
            graph(header, body);
          } else if (kind == "presented") {
            presented(header, body);
          } else if (kind == "presentation") {
            presentation(header, body);
          } else {
            morphism(header, body);
          }
          i = j;
        }
      }

     private:
      [[noreturn]] static void fail(Line const& line, std::size_t token, std::string const& what) {
        auto column = token < line.tokens.size() ? line.tokens[token].column
                                                 : (line.tokens.empty() ? 1 : line.tokens.back().column);
        throw ParseError(what, line.number, column);
      }

      //! Checks the line has exactly the keywords given in `shape` at the
      //! positions where shape is non-empty, and the right length.
      static void expect(Line const& line, std::vector<char const*> const& shape) {
        if (line.tokens.size() != shape.size()) {
          std::string form;
          for (auto s : shape) {
            form += (form.empty() ? "" : " ") + std::string(*s ? s : "NAME");
          }
          fail(line, std::min(line.tokens.size(), shape.size()),
               "expected '" + form + "'");
        }
        for (std::size_t i = 0; i < shape.size(); ++i) {
          if (*shape[i] && line.tokens[i].text != shape[i]) {
            fail(line, i, std::string("expected '") + shape[i] + "'");
          }
        }
      }

      std::string const& new_name(Line const& line, std::size_t token, bool group = false) {
        auto const& name = line.tokens.at(token).text;
        if (group ? doc_.has_group(name) : doc_.kind_of(name).has_value()) {
          fail(line, token, "duplicate entity name " + name);
        }
        return name;
      }

      static std::size_t number(Line const& line, std::size_t token) {
        auto const& t = line.tokens.at(token).text;
        if (t.empty() || t.size() > 6 || t.find_first_not_of("0123456789") != std::string::npos) {
          fail(line, token, "expected a small positive integer, found '" + t + "'");
        }
        auto n = std::stoul(t);
        if (n == 0) {
          fail(line, token, "expected a positive integer");
        }
        return n;
      }

      GroupTable const& group_ref(Line const& line, std::size_t token) {
        auto it = doc_.groups.find(line.tokens.at(token).text);
        if (it == doc_.groups.end()) {
          fail(line, token, "unknown group " + line.tokens[token].text);
        }
        return it->second;
      }
      FiniteGroupoid const& groupoid_ref(Line const& line, std::size_t token) {
        auto it = doc_.groupoids.find(line.tokens.at(token).text);
        if (it == doc_.groupoids.end()) {
          fail(line, token, "unknown groupoid " + line.tokens[token].text);
        }
        return it->second;
      }
      static std::size_t element(GroupTable const& g, Line const& line, std::size_t token) {
        auto e = g.find(line.tokens.at(token).text);
        if (!e) {
          fail(line, token, "group " + g.name() + " has no element " + line.tokens[token].text);
        }
        return *e;
      }
      static ObjectId object(FiniteGroupoid const& g, Line const& line, std::size_t token) {
        auto x = g.find_object(line.tokens.at(token).text);
        if (!x) {
          fail(line, token, g.name() + " has no object " + line.tokens[token].text);
        }
        return *x;
      }
      static ArrowId arrow(FiniteGroupoid const& g, Line const& line, std::size_t token) {
        auto a = g.find_arrow(line.tokens.at(token).text);
        if (!a) {
          fail(line, token, g.name() + " has no arrow " + line.tokens[token].text);
        }
        return *a;
      }
      static std::size_t vertex(DirectedGraph const& g, Line const& line, std::size_t token) {
        auto v = g.find_vertex(line.tokens.at(token).text);
        if (v == DirectedGraph::npos) {
          fail(line, token, g.name() + " has no vertex " + line.tokens[token].text);
        }
        return v;
      }
      static Letter edge_letter(DirectedGraph const& g, Line const& line, std::size_t token) {
        auto text    = line.tokens.at(token).text;
        bool inverse = !text.empty() && text[0] == '-';
        auto e       = g.find_edge(inverse ? text.substr(1) : text);
        if (e == DirectedGraph::npos) {
          fail(line, token, g.name() + " has no edge " + (inverse ? text.substr(1) : text));
        }
        return {e, inverse};
      }

      void groupoid(Line const& header, std::vector<Line> const& body) {
        expect(header, {"groupoid", ""});
        auto const&     name = new_name(header, 1);
        GroupoidBuilder b(name);
        auto obj = [&](Line const& line, std::size_t t) {
          auto x = b.find_object(line.tokens[t].text);
          if (!x) {
            fail(line, t, "unknown object " + line.tokens[t].text);
          }
          return *x;
        };
        auto arr = [&](Line const& line, std::size_t t) {
          auto a = b.find_arrow(line.tokens[t].text);
          if (!a) {
            fail(line, t, "unknown arrow " + line.tokens[t].text);
          }
          return *a;
        };
        for (auto const& line : body) {
          auto const& key = line.tokens[0].text;
          try {
            if (key == "objects") {
              for (std::size_t t = 1; t < line.tokens.size(); ++t) {
                b.add_object(line.tokens[t].text);
              }
            } else if (key == "object") {
              if (line.tokens.size() == 2) {
                b.add_object(line.tokens[1].text);
              } else {
                expect(line, {"object", "", "identity", ""});
                b.add_object(line.tokens[1].text, line.tokens[3].text);
              }
            } else if (key == "arrow") {
              expect(line, {"arrow", "", ":", "", "->", ""});
              b.add_arrow(line.tokens[1].text, obj(line, 3), obj(line, 5));
            } else if (key == "inverse") {
              expect(line, {"inverse", "", ""});
              b.set_inverse(arr(line, 1), arr(line, 2));
            } else if (key == "compose") {
              expect(line, {"compose", "", "", "=", ""});
              b.set_compose(arr(line, 1), arr(line, 2), arr(line, 4));
            } else {
              fail(line, 0, "unknown groupoid declaration '" + key + "'");
            }
          } catch (ParseError const&) {
            throw;
          } catch (Error const& e) {
            fail(line, 1, e.what());
          }
        }
        try {
          doc_.add(name, b.build());
        } catch (ParseError const&) {
          throw;
        } catch (Error const& e) {
          fail(header, 1, e.what());
        }
      }

      void group(Line const& header, std::vector<Line> const& body) {
        if (header.tokens.size() < 3) {
          fail(header, header.tokens.size(), "expected 'group NAME KIND ...'");
        }
        auto const& name = new_name(header, 1, true);
        auto const& kind = header.tokens[2].text;
        auto        no_body = [&] {
          if (!body.empty()) {
            fail(body.front(), 0, "group " + name + " takes no body");
          }
        };
        std::optional<GroupTable> g;
        try {
          if (kind == "cyclic" || kind == "symmetric" || kind == "alternating"
              || kind == "dihedral") {
            expect(header, {"group", "", kind.c_str(), ""});
            auto n = number(header, 3);
            if (kind != "cyclic" && n > 6) {
              fail(header, 3, kind + " groups are limited to degree 6");
            }
            no_body();
            g = kind == "cyclic"        ? cyclic_group(n)
                : kind == "symmetric"   ? symmetric_group(n)
                : kind == "alternating" ? alternating_group(n)
                                        : dihedral_group(n);
          } else if (kind == "quaternion" || kind == "trivial") {
            expect(header, {"group", "", kind.c_str()});
            no_body();
            g = kind == "quaternion" ? quaternion_group() : trivial_group();
          } else if (kind == "product") {
            expect(header, {"group", "", "product", "", ""});
            no_body();
            g = direct_product(group_ref(header, 3), group_ref(header, 4));
          } else if (kind == "table") {
            expect(header, {"group", "", "table"});
            g = table(header, body);
          } else {
            fail(header, 2, "unknown group kind '" + kind + "'");
          }
        } catch (ParseError const&) {
          throw;
        } catch (Error const& e) {
          fail(header, 2, e.what());
        }
        doc_.add(name, g->renamed(name));
      }

      GroupTable table(Line const& header, std::vector<Line> const& body) {
        std::vector<std::string> elements;
        std::size_t              elements_line = 0;
        for (auto const& line : body) {
          if (line.tokens[0].text == "elements") {
            if (!elements.empty()) {
              fail(line, 0, "elements declared twice");
            }
            for (std::size_t t = 1; t < line.tokens.size(); ++t) {
              elements.push_back(line.tokens[t].text);
            }
            elements_line = line.number;
          }
        }
        if (elements.empty()) {
          fail(header, 2, "group table needs an 'elements' line");
        }
        auto const                         n = elements.size();
        std::vector<std::size_t>           products(n * n, SIZE_MAX);
        auto find = [&](Line const& line, std::size_t t) {
          auto it = std::find(elements.begin(), elements.end(), line.tokens[t].text);
          if (it == elements.end()) {
            fail(line, t, "unknown element " + line.tokens[t].text);
          }
          return static_cast<std::size_t>(it - elements.begin());
        };
        for (auto const& line : body) {
          if (line.tokens[0].text == "elements") {
            continue;
          }
          if (line.tokens[0].text != "row") {
            fail(line, 0, "expected 'row' or 'elements'");
          }
          if (line.tokens.size() != n + 3 || line.tokens[2].text != ":") {
            fail(line, 0, "expected 'row ELEMENT : ' followed by " + std::to_string(n)
                              + " products");
          }
          auto const a = find(line, 1);
          for (std::size_t b = 0; b < n; ++b) {
            if (products[a * n + b] != SIZE_MAX) {
              fail(line, 1, "row " + elements[a] + " given twice");
            }
            products[a * n + b] = find(line, 3 + b);
          }
        }
        for (std::size_t a = 0; a < n; ++a) {
          if (products[a * n] == SIZE_MAX) {
            throw ParseError("missing row " + elements[a], elements_line, 1);
          }
        }
        GroupTable g(header.tokens[1].text, elements, products);
        auto       report = validate_group_table(g);
        if (!report.valid()) {
          fail(header, 1, "invalid group table:\n" + report.to_string());
        }
        return g;
      }

      void action(Line const& header, std::vector<Line> const& body) {
        expect(header, {"action", "", "on", "", "by", ""});
        auto const& name = new_name(header, 1);
        auto const& G    = group_ref(header, 5);
        auto const  kind = doc_.kind_of(header.tokens[3].text);
        if (kind == EntityKind::graph) {
          graph_action(header, body, name, G, doc_.graphs.at(header.tokens[3].text));
          return;
        }
        auto const& sp = groupoid_ref(header, 3);
        std::size_t const     no = sp.num_objects(), na = sp.num_arrows();
        std::vector<ObjectId> obj;
        std::vector<ArrowId>  arr;
        std::vector<bool>     obj_set(G.size() * no, false), arr_set(G.size() * na, false);
        for (std::size_t g = 0; g < G.size(); ++g) {
          for (auto x : sp.objects()) {
            obj.push_back(x);
          }
          for (auto a : sp.arrows()) {
            arr.push_back(a);
          }
        }
        for (auto const& line : body) {
          auto const& key = line.tokens[0].text;
          if (key == "obj") {
            expect(line, {"obj", "", ":", "", "->", ""});
            auto const g = element(G, line, 1);
            auto const x = object(sp, line, 3);
            if (obj_set[g * no + index(x)]) {
              fail(line, 3, "image of " + line.tokens[3].text + " under " + line.tokens[1].text
                                + " given twice");
            }
            obj_set[g * no + index(x)] = true;
            obj[g * no + index(x)]     = object(sp, line, 5);
          } else if (key == "arr" || key == "act") {
            expect(line, {key.c_str(), "", ":", "", "->", ""});
            auto const g = element(G, line, 1);
            auto const a = arrow(sp, line, 3);
            if (arr_set[g * na + index(a)]) {
              fail(line, 3, "image of " + line.tokens[3].text + " under " + line.tokens[1].text
                                + " given twice");
            }
            arr_set[g * na + index(a)] = true;
            arr[g * na + index(a)]     = arrow(sp, line, 5);
          } else {
            fail(line, 0, "expected 'obj' or 'arr'");
          }
        }
        for (std::size_t g = 0; g < G.size(); ++g) {
          for (auto x : sp.objects()) {
            auto const id = sp.identity(x);
            if (!arr_set[g * na + index(id)]) {
              arr[g * na + index(id)] = sp.identity(obj[g * no + index(x)]);
            }
          }
        }
        GroupoidAction act(G, sp, std::move(obj), std::move(arr));
        auto           report = validate_action(act);
        if (!report.valid()) {
          fail(header, 1, "invalid action:\n" + report.to_string());
        }
        doc_.add(name, std::move(act));
      }

      void graph_action(Line const&              header,
                        std::vector<Line> const& body,
                        std::string const&       name,
                        GroupTable const&        G,
                        DirectedGraph const&     gr) {
        std::size_t const        nv = gr.num_vertices(), ne = gr.num_edges();
        std::vector<std::size_t> vmap;
        std::vector<Letter>      emap;
        std::vector<bool>        vset(G.size() * nv, false), eset(G.size() * ne, false);
        for (std::size_t g = 0; g < G.size(); ++g) {
          for (std::size_t v = 0; v < nv; ++v) {
            vmap.push_back(v);
          }
          for (std::size_t e = 0; e < ne; ++e) {
            emap.push_back({e, false});
          }
        }
        for (auto const& line : body) {
          auto const& key = line.tokens[0].text;
          if (key == "obj" || key == "vertex") {
            expect(line, {key.c_str(), "", ":", "", "->", ""});
            auto const g = element(G, line, 1);
            auto const v = vertex(gr, line, 3);
            if (vset[g * nv + v]) {
              fail(line, 3, "image of " + line.tokens[3].text + " given twice");
            }
            vset[g * nv + v] = true;
            vmap[g * nv + v] = vertex(gr, line, 5);
          } else if (key == "act" || key == "arr") {
            expect(line, {key.c_str(), "", ":", "", "->", ""});
            auto const g = element(G, line, 1);
            auto const e = edge_letter(gr, line, 3);
            if (e.inverse) {
              fail(line, 3, "give the image of the edge itself, not its inverse");
            }
            if (eset[g * ne + e.index]) {
              fail(line, 3, "image of " + line.tokens[3].text + " given twice");
            }
            eset[g * ne + e.index] = true;
            emap[g * ne + e.index] = edge_letter(gr, line, 5);
          } else {
            fail(line, 0, "expected 'obj' or 'act'");
          }
        }
        GraphAction act{G, gr, std::move(vmap), std::move(emap)};
        auto        report = validate_graph_action(act);
        if (!report.valid()) {
          fail(header, 1, "invalid action:\n" + report.to_string());
        }
        doc_.add(name, std::move(act));
      }

      void graph(Line const& header, std::vector<Line> const& body) {
        expect(header, {"graph", ""});
        auto const&   name = new_name(header, 1);
        DirectedGraph g(name);
        auto          add_vertex = [&](Line const& line, std::size_t t) {
          if (g.find_vertex(line.tokens[t].text) != DirectedGraph::npos) {
            fail(line, t, "duplicate vertex " + line.tokens[t].text);
          }
          g.add_vertex(line.tokens[t].text);
        };
        for (auto const& line : body) {
          auto const& key = line.tokens[0].text;
          if (key == "vertex") {
            expect(line, {"vertex", ""});
            add_vertex(line, 1);
          } else if (key == "vertices") {
            for (std::size_t t = 1; t < line.tokens.size(); ++t) {
              add_vertex(line, t);
            }
          } else if (key == "edge") {
            expect(line, {"edge", "", ":", "", "->", ""});
            auto const& e = line.tokens[1].text;
            if (e[0] == '-') {
              fail(line, 1, "edge names may not start with '-'");
            }
            if (g.find_edge(e) != DirectedGraph::npos) {
              fail(line, 1, "duplicate edge " + e);
            }
            g.add_edge(e, vertex(g, line, 3), vertex(g, line, 5));
          } else {
            fail(line, 0, "expected 'vertex', 'vertices' or 'edge'");
          }
        }
        doc_.add(name, std::move(g));
      }

      void presented(Line const& header, std::vector<Line> const& body) {
        expect(header, {"presented", "", "on", ""});
        auto const& name = new_name(header, 1);
        if (doc_.kind_of(header.tokens[3].text) != EntityKind::graph) {
          fail(header, 3, "unknown graph " + header.tokens[3].text);
        }
        auto const&       gr = doc_.graphs.at(header.tokens[3].text);
        PresentedGroupoid pg{name, gr, {}};
        for (auto const& line : body) {
          if (line.tokens[0].text != "relator" || line.tokens.size() < 2) {
            fail(line, 0, "expected 'relator' followed by edges");
          }
          std::vector<Letter> letters;
          for (std::size_t t = 1; t < line.tokens.size(); ++t) {
            letters.push_back(edge_letter(gr, line, t));
          }
          Word w;
          try {
            w = make_word(gr, letters);
          } catch (Error const& e) {
            fail(line, 1, e.what());
          }
          if (!w.is_loop()) {
            fail(line, 1, "relator is not a loop");
          }
          pg.relators.push_back(std::move(w));
        }
        doc_.add(name, std::move(pg));
      }

      void presentation(Line const& header, std::vector<Line> const& body) {
        expect(header, {"presentation", ""});
        auto const&       name = new_name(header, 1);
        GroupPresentation p{name, {}, {}};
        for (auto const& line : body) {
          auto const& key = line.tokens[0].text;
          if (key == "generators") {
            for (std::size_t t = 1; t < line.tokens.size(); ++t) {
              auto const& gname = line.tokens[t].text;
              if (gname[0] == '-' || gname == "1") {
                fail(line, t, "generator names may not start with '-' or be '1'");
              }
              if (p.find(gname) != DirectedGraph::npos) {
                fail(line, t, "duplicate generator " + gname);
              }
              p.generators.push_back(gname);
            }
          } else if (key == "relator") {
            std::vector<Letter> r;
            for (std::size_t t = 1; t < line.tokens.size(); ++t) {
              auto text = line.tokens[t].text;
              if (text == "1") {
                continue;
              }
              bool inverse = text[0] == '-';
              auto i       = p.find(inverse ? text.substr(1) : text);
              if (i == DirectedGraph::npos) {
                fail(line, t, "unknown generator " + (inverse ? text.substr(1) : text));
              }
              r.push_back({i, inverse});
            }
            p.relators.push_back(std::move(r));
          } else {
            fail(line, 0, "expected 'generators' or 'relator'");
          }
        }
        doc_.add(name, std::move(p));
      }

      void morphism(Line const& header, std::vector<Line> const& body) {
        expect(header, {"morphism", "", ":", "", "->", ""});
        auto const&                name = new_name(header, 1);
        auto const&                k    = groupoid_ref(header, 3);
        auto const&                h    = groupoid_ref(header, 5);
        constexpr std::uint32_t    unset = UINT32_MAX;
        std::vector<std::uint32_t> om(k.num_objects(), unset), am(k.num_arrows(), unset);
        for (auto const& line : body) {
          auto const& key = line.tokens[0].text;
          if (key == "obj") {
            expect(line, {"obj", "", "->", ""});
            auto const x = object(k, line, 1);
            if (om[index(x)] != unset) {
              fail(line, 1, "image of " + line.tokens[1].text + " given twice");
            }
            om[index(x)] = static_cast<std::uint32_t>(index(object(h, line, 3)));
          } else if (key == "arr") {
            expect(line, {"arr", "", "->", ""});
            auto const a = arrow(k, line, 1);
            if (am[index(a)] != unset) {
              fail(line, 1, "image of " + line.tokens[1].text + " given twice");
            }
            am[index(a)] = static_cast<std::uint32_t>(index(arrow(h, line, 3)));
          } else {
            fail(line, 0, "expected 'obj' or 'arr'");
          }
        }
        std::vector<ObjectId> objs;
        std::vector<ArrowId>  arrs;
        for (auto x : k.objects()) {
          if (om[index(x)] == unset) {
            fail(header, 1, "object " + k.object_name(x) + " has no image");
          }
          objs.push_back(to_object(om[index(x)]));
          if (am[index(k.identity(x))] == unset) {
            am[index(k.identity(x))] = static_cast<std::uint32_t>(
                index(h.identity(objs.back())));
          }
        }
        for (auto a : k.arrows()) {
          if (am[index(a)] == unset) {
            fail(header, 1, "arrow " + k.arrow_name(a) + " has no image");
          }
          arrs.push_back(to_arrow(am[index(a)]));
        }
        auto f      = GroupoidMorphism::unchecked(k, h, std::move(objs), std::move(arrs));
        auto report = validate_morphism(f);
        if (!report.valid()) {
          fail(header, 1, "invalid morphism:\n" + report.to_string());
        }
        doc_.add(name, std::move(f));
      }

      Document& doc_;
    };
  }  // namespace detail

  inline Document parse_document(std::string const& text) {
    Document doc;
    detail::Parser(doc).run(detail::tokenize(text));
    return doc;
  }

  //! Reads and parses a file; a missing file is a ParseError at 0:0.
  inline Document parse_file(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw ParseError("cannot read " + path, 0, 0);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_document(buffer.str());
  }

  ////////////////////////////////////////////////////////////////////////
  // Emitting
  ////////////////////////////////////////////////////////////////////////

  inline std::string emit(FiniteGroupoid const& g) {
    std::string out = "groupoid " + g.name() + "\n";
    for (auto x : g.objects()) {
      auto const& id = g.arrow_name(g.identity(x));
      out += "  object " + g.object_name(x);
      out += id == "id_" + g.object_name(x) ? "\n" : " identity " + id + "\n";
    }
    for (auto a : g.arrows()) {
      if (!g.is_identity(a)) {
        out += "  arrow " + g.arrow_name(a) + " : " + g.object_name(g.source(a)) + " -> "
               + g.object_name(g.target(a)) + "\n";
      }
    }
    for (auto u : g.arrows()) {
      if (g.is_identity(u)) {
        continue;
      }
      for (auto v : g.star(g.target(u))) {
        if (!g.is_identity(v)) {
          out += "  compose " + g.arrow_name(v) + " " + g.arrow_name(u) + " = "
                 + g.arrow_name(g.add(v, u)) + "\n";
        }
      }
    }
    return out;
  }

  inline std::string emit(GroupTable const& g) {
    std::string out = "group " + g.name() + " table\n  elements";
    for (std::size_t a = 0; a < g.size(); ++a) {
      out += " " + g.element_name(a);
    }
    out += "\n";
    for (std::size_t a = 0; a < g.size(); ++a) {
      out += "  row " + g.element_name(a) + " :";
      for (std::size_t b = 0; b < g.size(); ++b) {
        out += " " + g.element_name(g.multiply(a, b));
      }
      out += "\n";
    }
    return out;
  }

  //! Only moved objects and arrows are listed; identity arrows are implied.
  inline std::string emit(std::string const& name, GroupoidAction const& act) {
    auto const& G   = act.group();
    auto const& sp  = act.space();
    std::string out = "action " + name + " on " + sp.name() + " by " + G.name() + "\n";
    for (std::size_t g = 0; g < G.size(); ++g) {
      for (auto x : sp.objects()) {
        if (act.act(g, x) != x) {
          out += "  obj " + G.element_name(g) + " : " + sp.object_name(x) + " -> "
                 + sp.object_name(act.act(g, x)) + "\n";
        }
      }
      for (auto a : sp.arrows()) {
        if (!sp.is_identity(a) && act.act(g, a) != a) {
          out += "  arr " + G.element_name(g) + " : " + sp.arrow_name(a) + " -> "
                 + sp.arrow_name(act.act(g, a)) + "\n";
        }
      }
    }
    return out;
  }

  inline std::string emit(DirectedGraph const& g) {
    std::string out = "graph " + g.name() + "\n";
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
      out += "  vertex " + g.vertex_name(v) + "\n";
    }
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
      out += "  edge " + g.edge(e).name + " : " + g.vertex_name(g.edge(e).source) + " -> "
             + g.vertex_name(g.edge(e).target) + "\n";
    }
    return out;
  }

  inline std::string emit(std::string const& name, GraphAction const& act) {
    auto const& G   = act.group;
    auto const& gr  = act.graph;
    std::string out = "action " + name + " on " + gr.name() + " by " + G.name() + "\n";
    for (std::size_t g = 0; g < G.size(); ++g) {
      for (std::size_t v = 0; v < gr.num_vertices(); ++v) {
        if (act.act(g, v) != v) {
          out += "  obj " + G.element_name(g) + " : " + gr.vertex_name(v) + " -> "
                 + gr.vertex_name(act.act(g, v)) + "\n";
        }
      }
      for (std::size_t e = 0; e < gr.num_edges(); ++e) {
        auto const image = act.act(g, Letter{e, false});
        if (!(image == Letter{e, false})) {
          out += "  act " + G.element_name(g) + " : " + gr.edge(e).name + " -> "
                 + gr.letter_name(image) + "\n";
        }
      }
    }
    return out;
  }

  inline std::string emit(PresentedGroupoid const& pg) {
    std::string out = "presented " + pg.name + " on " + pg.graph.name() + "\n";
    for (auto const& r : pg.relators) {
      out += "  relator";
      for (auto l : r.letters) {
        out += " " + pg.graph.letter_name(l);
      }
      if (r.letters.empty()) {
        throw InvalidStructure("cannot write an empty relator");
      }
      out += "\n";
    }
    return out;
  }

  inline std::string emit(GroupPresentation const& p) {
    std::string out = "presentation " + p.name + "\n  generators";
    for (auto const& g : p.generators) {
      out += " " + g;
    }
    out += "\n";
    for (auto const& r : p.relators) {
      out += "  relator " + relator_string(p, r) + "\n";
    }
    return out;
  }

  inline std::string emit(std::string const& name, GroupoidMorphism const& f) {
    auto const& k   = f.source();
    auto const& h   = f.target();
    std::string out = "morphism " + name + " : " + k.name() + " -> " + h.name() + "\n";
    for (auto x : k.objects()) {
      out += "  obj " + k.object_name(x) + " -> " + h.object_name(f(x)) + "\n";
    }
    for (auto a : k.arrows()) {
      if (!k.is_identity(a)) {
        out += "  arr " + k.arrow_name(a) + " -> " + h.arrow_name(f(a)) + "\n";
      }
    }
    return out;
  }

  //! Every entity in declaration order, blocks separated by blank lines.
  inline std::string emit(Document const& doc) {
    std::string out;
    for (auto const& [kind, name] : doc.order) {
      if (!out.empty()) {
        out += "\n";
      }
      switch (kind) {
        case EntityKind::group: out += emit(doc.groups.at(name).renamed(name)); break;
        case EntityKind::groupoid: out += emit(doc.groupoids.at(name).renamed(name)); break;
        case EntityKind::graph: out += emit(doc.graphs.at(name)); break;
        case EntityKind::action: out += emit(name, doc.actions.at(name)); break;
        case EntityKind::graph_action: out += emit(name, doc.graph_actions.at(name)); break;
        case EntityKind::presented: {
          auto pg = doc.presented.at(name);
          pg.name = name;
          out += emit(pg);
          break;
        }
        case EntityKind::presentation: {
          auto p = doc.presentations.at(name);
          p.name = name;
          out += emit(p);
          break;
        }
        case EntityKind::morphism: out += emit(name, doc.morphisms.at(name)); break;
      }
    }
    return out;
  }

}  // namespace gpdkit

#endif  // GPDKIT_TEXT_FORMAT_HPP_
