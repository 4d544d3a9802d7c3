#ifndef GPDKIT_STANDARD_GROUPOIDS_HPP_
#define GPDKIT_STANDARD_GROUPOIDS_HPP_

#include <string>
#include <vector>

#include "finite_groupoid.hpp"
#include "group_table.hpp"

namespace gpdkit {

  //! A group as a groupoid with one object; loops are named after the
  //! elements and g + h is the product gh.
  inline FiniteGroupoid one_object_groupoid(GroupTable const& g,
                                            std::string const& object = "*") {
    GroupoidBuilder      b(g.name());
    auto                 x = b.add_object(object, g.element_name(g.identity()));
    std::vector<ArrowId> arrow(g.size());
    for (std::size_t e = 0; e < g.size(); ++e) {
      arrow[e] = e == g.identity() ? b.identity(x)
                                   : b.add_arrow(g.element_name(e), x, x);
    }
    std::vector<std::size_t> element(g.size());
    for (std::size_t e = 0; e < g.size(); ++e) {
      element[index(arrow[e])] = e;
    }
    b.fill_compositions([&](ArrowId v, ArrowId u) {
      return arrow[g.multiply(element[index(v)], element[index(u)])];
    });
    return b.build();
  }

  inline FiniteGroupoid discrete_groupoid(std::string name,
                                          std::vector<std::string> const& objects) {
    GroupoidBuilder b(std::move(name));
    for (auto const& x : objects) {
      b.add_object(x);
    }
    return b.build();
  }

  //! One arrow x>y between each ordered pair of distinct objects.
  inline FiniteGroupoid tree_groupoid(std::string name,
                                      std::vector<std::string> const& objects) {
    GroupoidBuilder       b(std::move(name));
    std::size_t const     n = objects.size();
    std::vector<ObjectId> obj;
    for (auto const& x : objects) {
      obj.push_back(b.add_object(x));
    }
    std::vector<ArrowId> arrow(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      arrow[i * n + i] = b.identity(obj[i]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j) {
          arrow[i * n + j]
              = b.add_arrow(objects[i] + ">" + objects[j], obj[i], obj[j]);
        }
      }
    }
    std::vector<std::pair<std::size_t, std::size_t>> ends(b.num_arrows());
    for (std::size_t i = 0; i < n * n; ++i) {
      ends[index(arrow[i])] = {i / n, i % n};
    }
    b.fill_compositions([&](ArrowId v, ArrowId u) {
      return arrow[ends[index(u)].first * n + ends[index(v)].second];
    });
    return b.build();
  }

  //! Disjoint union; the object and arrow names of a and b must be disjoint.
  inline FiniteGroupoid disjoint_union(std::string           name,
                                       FiniteGroupoid const& a,
                                       FiniteGroupoid const& b) {
    GroupoidBuilder      builder(std::move(name));
    std::vector<ArrowId> from_a(a.num_arrows()), from_b(b.num_arrows());
    auto                 copy = [&builder](FiniteGroupoid const& g,
                                           std::vector<ArrowId>& map) {
      std::vector<ObjectId> obj;
      for (auto x : g.objects()) {
        obj.push_back(builder.add_object(g.object_name(x),
                                         g.arrow_name(g.identity(x))));
        map[index(g.identity(x))] = builder.identity(obj.back());
      }
      for (auto u : g.arrows()) {
        if (!g.is_identity(u)) {
          map[index(u)] = builder.add_arrow(g.arrow_name(u),
                                            obj[index(g.source(u))],
                                            obj[index(g.target(u))]);
        }
      }
    };
    copy(a, from_a);
    copy(b, from_b);
    std::vector<std::pair<bool, ArrowId>> back(builder.num_arrows());
    for (auto u : a.arrows()) {
      back[index(from_a[index(u)])] = {false, u};
    }
    for (auto u : b.arrows()) {
      back[index(from_b[index(u)])] = {true, u};
    }
    builder.fill_compositions([&](ArrowId v, ArrowId u) {
      auto [in_b, ov] = back[index(v)];
      auto ou         = back[index(u)].second;
      return in_b ? from_b[index(b.add(ov, ou))] : from_a[index(a.add(ov, ou))];
    });
    return builder.build();
  }

  //! Product groupoid; objects (x,y) and arrows (u,v) act componentwise.
  inline FiniteGroupoid product_groupoid(std::string           name,
                                         FiniteGroupoid const& a,
                                         FiniteGroupoid const& b) {
    GroupoidBuilder   builder(std::move(name));
    std::size_t const nb = b.num_arrows();
    std::vector<ObjectId> obj;
    for (auto x : a.objects()) {
      for (auto y : b.objects()) {
        obj.push_back(builder.add_object(
            "(" + a.object_name(x) + "," + b.object_name(y) + ")",
            "(" + a.arrow_name(a.identity(x)) + ","
                + b.arrow_name(b.identity(y)) + ")"));
      }
    }
    auto obj_of = [&](ObjectId x, ObjectId y) {
      return obj[index(x) * b.num_objects() + index(y)];
    };
    std::vector<ArrowId> arrow(a.num_arrows() * nb);
    for (auto u : a.arrows()) {
      for (auto v : b.arrows()) {
        auto& slot = arrow[index(u) * nb + index(v)];
        if (a.is_identity(u) && b.is_identity(v)) {
          slot = builder.identity(obj_of(a.source(u), b.source(v)));
        } else {
          slot = builder.add_arrow(
              "(" + a.arrow_name(u) + "," + b.arrow_name(v) + ")",
              obj_of(a.source(u), b.source(v)),
              obj_of(a.target(u), b.target(v)));
        }
      }
    }
    std::vector<std::pair<ArrowId, ArrowId>> parts(builder.num_arrows());
    for (auto u : a.arrows()) {
      for (auto v : b.arrows()) {
        parts[index(arrow[index(u) * nb + index(v)])] = {u, v};
      }
    }
    builder.fill_compositions([&](ArrowId p, ArrowId q) {
      auto [pu, pv] = parts[index(p)];
      auto [qu, qv] = parts[index(q)];
      return arrow[index(a.add(pu, qu)) * nb + index(b.add(pv, qv))];
    });
    return builder.build();
  }

  //! Finite model of the fundamental groupoid of a cycle graph with
  //! `vertices` vertices, with the loop around the cycle of order `wraps`.
  //!
  //! An arrow is a signed displacement d modulo vertices * wraps, counted in
  //! edges travelled in the positive direction; arrows x -> y are the d
  //! congruent to y - x modulo `vertices`.  Arrows are named "x:d".
  inline FiniteGroupoid circle_groupoid(std::string                     name,
                                        std::vector<std::string> const& vertices,
                                        std::size_t                     wraps) {
    std::size_t const m = vertices.size();
    std::size_t const period = m * wraps;
    if (m == 0 || wraps == 0) {
      throw InvalidStructure("circle groupoid needs vertices and wraps");
    }
    GroupoidBuilder       b(std::move(name));
    std::vector<ObjectId> obj;
    for (auto const& v : vertices) {
      obj.push_back(b.add_object(v, v + ":0"));
    }
    // arrow index by (source, displacement)
    std::vector<ArrowId> arrow(m * period);
    for (std::size_t x = 0; x < m; ++x) {
      for (std::size_t d = 0; d < period; ++d) {
        arrow[x * period + d] = d == 0 ? b.identity(obj[x])
                                       : b.add_arrow(vertices[x] + ":" + std::to_string(d),
                                                     obj[x],
                                                     obj[(x + d) % m]);
      }
    }
    std::vector<std::pair<std::size_t, std::size_t>> key(b.num_arrows());
    for (std::size_t i = 0; i < arrow.size(); ++i) {
      key[index(arrow[i])] = {i / period, i % period};
    }
    b.fill_compositions([&](ArrowId v, ArrowId u) {
      auto [xu, du] = key[index(u)];
      auto dv       = key[index(v)].second;
      return arrow[xu * period + (du + dv) % period];
    });
    return b.build();
  }

}  // namespace gpdkit

#endif  // GPDKIT_STANDARD_GROUPOIDS_HPP_
