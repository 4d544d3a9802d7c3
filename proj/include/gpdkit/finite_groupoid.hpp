#ifndef GPDKIT_FINITE_GROUPOID_HPP_
#define GPDKIT_FINITE_GROUPOID_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <ranges>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "group_table.hpp"

namespace gpdkit {

  enum class ObjectId : std::uint32_t {};
  enum class ArrowId : std::uint32_t {};

  constexpr std::size_t index(ObjectId x) noexcept {
    return static_cast<std::size_t>(x);
  }
  constexpr std::size_t index(ArrowId a) noexcept {
    return static_cast<std::size_t>(a);
  }
  constexpr ObjectId to_object(std::size_t i) noexcept {
    return static_cast<ObjectId>(i);
  }
  constexpr ArrowId to_arrow(std::size_t i) noexcept {
    return static_cast<ArrowId>(i);
  }

  class GroupoidBuilder;

  //! A finite groupoid stored by explicit enumeration.
  //!
  //! Composition is written additively and read right to left: compose(v, u)
  //! is v + u, runs u first, is defined exactly when target(u) == source(v),
  //! and goes from source(u) to target(v).  The composition table is dense.
  //!
  //! Values are immutable and share their storage, so copies are cheap.
  //! A FiniteGroupoid produced by GroupoidBuilder::build() is valid; one
  //! produced by build_unchecked() may violate the laws and is meant for
  //! validate_groupoid().
  class FiniteGroupoid {
    friend class GroupoidBuilder;

    static constexpr std::uint32_t undefined = UINT32_MAX;

    struct Arrow {
      std::string name;
      ObjectId    source;
      ObjectId    target;
    };

    struct Data {
      std::string                     name;
      std::vector<std::string>        objects;
      std::vector<Arrow>              arrows;
      std::vector<ArrowId>            identity;
      std::vector<std::uint32_t>      inverse;
      std::vector<std::uint32_t>      table;
      std::vector<std::vector<ArrowId>> star;
      std::vector<std::vector<ArrowId>> hom;
      std::vector<bool>               is_identity;
      std::map<std::string, ObjectId> object_index;
      std::map<std::string, ArrowId>  arrow_index;
    };

   public:
    FiniteGroupoid() : data_(std::make_shared<Data>()) {}

    std::string const& name() const noexcept {
      return data_->name;
    }
    std::size_t num_objects() const noexcept {
      return data_->objects.size();
    }
    std::size_t num_arrows() const noexcept {
      return data_->arrows.size();
    }

    auto objects() const {
      return std::views::iota(std::size_t{0}, num_objects())
             | std::views::transform(to_object);
    }
    auto arrows() const {
      return std::views::iota(std::size_t{0}, num_arrows())
             | std::views::transform(to_arrow);
    }
    std::vector<ObjectId> object_list() const {
      std::vector<ObjectId> out;
      for (auto x : objects()) {
        out.push_back(x);
      }
      return out;
    }
    std::vector<ArrowId> arrow_list() const {
      std::vector<ArrowId> out;
      for (auto a : arrows()) {
        out.push_back(a);
      }
      return out;
    }

    std::string const& object_name(ObjectId x) const {
      return data_->objects.at(index(x));
    }
    std::string const& arrow_name(ArrowId a) const {
      return data_->arrows.at(index(a)).name;
    }
    ObjectId source(ArrowId a) const {
      return data_->arrows[index(a)].source;
    }
    ObjectId target(ArrowId a) const {
      return data_->arrows[index(a)].target;
    }
    ArrowId identity(ObjectId x) const {
      return data_->identity[index(x)];
    }
    bool is_identity(ArrowId a) const {
      return data_->is_identity[index(a)];
    }
    bool is_loop(ArrowId a) const {
      return source(a) == target(a);
    }
    bool has_inverse(ArrowId a) const {
      return data_->inverse[index(a)] != undefined;
    }
    //! The negative -a; throws on an unchecked groupoid lacking one.
    ArrowId inverse(ArrowId a) const {
      auto v = data_->inverse[index(a)];
      if (v == undefined) {
        throw InvalidStructure("arrow " + arrow_name(a) + " has no inverse");
      }
      return to_arrow(v);
    }

    //! v + u if the table has an entry for (v, u).
    std::optional<ArrowId> compose(ArrowId v, ArrowId u) const {
      auto w = data_->table[index(v) * num_arrows() + index(u)];
      if (w == undefined) {
        return std::nullopt;
      }
      return to_arrow(w);
    }

    //! v + u; throws when undefined.
    ArrowId add(ArrowId v, ArrowId u) const {
      auto w = compose(v, u);
      if (!w) {
        throw InvalidStructure("composite " + arrow_name(v) + " + "
                               + arrow_name(u) + " is not defined");
      }
      return *w;
    }

    //! v - u, that is v + (-u).
    ArrowId subtract(ArrowId v, ArrowId u) const {
      return add(v, inverse(u));
    }

    //! Arrows with source x.
    std::span<ArrowId const> star(ObjectId x) const {
      return data_->star.at(index(x));
    }
    //! Arrows x -> y.
    std::span<ArrowId const> hom(ObjectId x, ObjectId y) const {
      return data_->hom.at(index(x) * num_objects() + index(y));
    }
    std::span<ArrowId const> loops(ObjectId x) const {
      return hom(x, x);
    }

    std::optional<ObjectId> find_object(std::string const& name) const {
      auto it = data_->object_index.find(name);
      if (it == data_->object_index.end()) {
        return std::nullopt;
      }
      return it->second;
    }
    std::optional<ArrowId> find_arrow(std::string const& name) const {
      auto it = data_->arrow_index.find(name);
      if (it == data_->arrow_index.end()) {
        return std::nullopt;
      }
      return it->second;
    }
    ObjectId object_at(std::string const& name) const {
      auto x = find_object(name);
      if (!x) {
        throw UnknownName("groupoid " + this->name() + " has no object " + name);
      }
      return *x;
    }
    ArrowId arrow_at(std::string const& name) const {
      auto a = find_arrow(name);
      if (!a) {
        throw UnknownName("groupoid " + this->name() + " has no arrow " + name);
      }
      return *a;
    }

    bool is_discrete() const {
      return num_arrows() == num_objects();
    }

    //! Order of a loop in its object group.
    std::size_t loop_order(ArrowId a) const {
      std::size_t k = 1;
      for (ArrowId x = a; !is_identity(x); x = add(x, a)) {
        ++k;
      }
      return k;
    }

    //! Same structure and table with new names.
    FiniteGroupoid renamed(std::string                     name,
                           std::vector<std::string> const& object_names,
                           std::vector<std::string> const& arrow_names) const;

    FiniteGroupoid renamed(std::string name) const {
      std::vector<std::string> arrows;
      for (auto const& a : data_->arrows) {
        arrows.push_back(a.name);
      }
      return renamed(std::move(name), data_->objects, arrows);
    }

    bool same_storage(FiniteGroupoid const& other) const noexcept {
      return data_ == other.data_;
    }

    //! Structural equality: names, endpoints, identities, inverses, table.
    friend bool operator==(FiniteGroupoid const& a, FiniteGroupoid const& b) {
      if (a.data_ == b.data_) {
        return true;
      }
      if (a.data_->objects != b.data_->objects
          || a.num_arrows() != b.num_arrows()) {
        return false;
      }
      for (std::size_t i = 0; i < a.num_arrows(); ++i) {
        auto const& x = a.data_->arrows[i];
        auto const& y = b.data_->arrows[i];
        if (x.name != y.name || x.source != y.source || x.target != y.target) {
          return false;
        }
      }
      return a.data_->identity == b.data_->identity
             && a.data_->inverse == b.data_->inverse
             && a.data_->table == b.data_->table;
    }

   private:
    explicit FiniteGroupoid(std::shared_ptr<Data const> data)
        : data_(std::move(data)) {}

    static std::shared_ptr<Data const> finish(Data&& d) {
      std::size_t const n = d.objects.size();
      d.star.assign(n, {});
      d.hom.assign(n * n, {});
      d.is_identity.assign(d.arrows.size(), false);
      d.object_index.clear();
      d.arrow_index.clear();
      for (std::size_t i = 0; i < n; ++i) {
        d.object_index.emplace(d.objects[i], to_object(i));
      }
      for (std::size_t i = 0; i < d.arrows.size(); ++i) {
        auto const& a = d.arrows[i];
        d.star[index(a.source)].push_back(to_arrow(i));
        d.hom[index(a.source) * n + index(a.target)].push_back(to_arrow(i));
        d.arrow_index.emplace(a.name, to_arrow(i));
      }
      for (auto id : d.identity) {
        d.is_identity[index(id)] = true;
      }
      return std::make_shared<Data const>(std::move(d));
    }

    std::shared_ptr<Data const> data_;
  };

  //! Assembles a FiniteGroupoid.
  //!
  //! Every object gets an identity arrow (named id_<object> unless given).
  //! Compositions with identities are filled in automatically; negatives
  //! that were not declared are derived from the table.  All other
  //! composites of composable pairs must be supplied.
  class GroupoidBuilder {
   public:
    explicit GroupoidBuilder(std::string name) {
      data_.name = std::move(name);
    }

    ObjectId add_object(std::string const& name) {
      return add_object(name, "id_" + name);
    }

    ObjectId add_object(std::string const& name, std::string const& identity_name) {
      if (!object_names_.emplace(name).second) {
        throw InvalidStructure("duplicate object " + name);
      }
      auto x = to_object(data_.objects.size());
      data_.objects.push_back(name);
      data_.identity.push_back(add_arrow(identity_name, x, x));
      return x;
    }

    ArrowId add_arrow(std::string const& name, ObjectId source, ObjectId target) {
      if (index(source) >= data_.objects.size()
          || index(target) >= data_.objects.size()) {
        throw UnknownName("arrow " + name + " has an unknown endpoint");
      }
      if (!arrow_names_.emplace(name).second) {
        throw InvalidStructure("duplicate arrow " + name);
      }
      auto a = to_arrow(data_.arrows.size());
      data_.arrows.push_back({name, source, target});
      return a;
    }

    std::optional<ObjectId> find_object(std::string const& name) const {
      for (std::size_t i = 0; i < data_.objects.size(); ++i) {
        if (data_.objects[i] == name) {
          return to_object(i);
        }
      }
      return std::nullopt;
    }

    std::optional<ArrowId> find_arrow(std::string const& name) const {
      for (std::size_t i = 0; i < data_.arrows.size(); ++i) {
        if (data_.arrows[i].name == name) {
          return to_arrow(i);
        }
      }
      return std::nullopt;
    }

    ArrowId identity(ObjectId x) const {
      return data_.identity.at(index(x));
    }

    std::size_t num_arrows() const noexcept {
      return data_.arrows.size();
    }

    void set_inverse(ArrowId a, ArrowId b) {
      inverses_.emplace_back(a, b);
    }

    //! Records v + u = w.
    void set_compose(ArrowId v, ArrowId u, ArrowId w) {
      auto [it, fresh] = compositions_.emplace(std::make_pair(v, u), w);
      if (!fresh && it->second != w) {
        throw InvalidStructure("conflicting composites for "
                               + data_.arrows[index(v)].name + " + "
                               + data_.arrows[index(u)].name);
      }
    }

    //! Fills every composable non-identity pair from `fn(v, u)`.
    template <typename Fn>
    void fill_compositions(Fn&& fn) {
      for (std::size_t u = 0; u < data_.arrows.size(); ++u) {
        for (std::size_t v = 0; v < data_.arrows.size(); ++v) {
          if (data_.arrows[u].target == data_.arrows[v].source) {
            set_compose(to_arrow(v), to_arrow(u), fn(to_arrow(v), to_arrow(u)));
          }
        }
      }
    }

    //! Builds and validates; throws InvalidStructure listing violations.
    FiniteGroupoid build() const;

    //! Builds without validating.
    FiniteGroupoid build_unchecked() const {
      return assemble();
    }

   private:
    FiniteGroupoid assemble() const {
      using Data          = FiniteGroupoid::Data;
      Data              d = data_;
      std::size_t const m = d.arrows.size();
      d.table.assign(m * m, FiniteGroupoid::undefined);
      d.inverse.assign(m, FiniteGroupoid::undefined);
      for (auto const& [vu, w] : compositions_) {
        d.table[index(vu.first) * m + index(vu.second)]
            = static_cast<std::uint32_t>(index(w));
      }
      std::vector<bool> is_id(m, false);
      for (auto id : d.identity) {
        is_id[index(id)] = true;
      }
      for (std::size_t u = 0; u < m; ++u) {
        auto const s = d.arrows[u].source, t = d.arrows[u].target;
        auto&      right = d.table[u * m + index(d.identity[index(s)])];
        auto&      left  = d.table[index(d.identity[index(t)]) * m + u];
        if (right == FiniteGroupoid::undefined) {
          right = static_cast<std::uint32_t>(u);
        }
        if (left == FiniteGroupoid::undefined) {
          left = static_cast<std::uint32_t>(u);
        }
      }
      for (auto [a, b] : inverses_) {
        d.inverse[index(a)] = static_cast<std::uint32_t>(index(b));
        d.inverse[index(b)] = static_cast<std::uint32_t>(index(a));
      }
      for (std::size_t u = 0; u < m; ++u) {
        if (d.inverse[u] != FiniteGroupoid::undefined) {
          continue;
        }
        auto const id_s = index(d.identity[index(d.arrows[u].source)]);
        for (std::size_t v = 0; v < m; ++v) {
          if (d.table[v * m + u] == id_s
              && d.arrows[v].source == d.arrows[u].target) {
            d.inverse[u] = static_cast<std::uint32_t>(v);
            break;
          }
        }
      }
      return FiniteGroupoid(FiniteGroupoid::finish(std::move(d)));
    }

    FiniteGroupoid::Data                       data_;
    std::map<std::pair<ArrowId, ArrowId>, ArrowId> compositions_;
    std::vector<std::pair<ArrowId, ArrowId>>   inverses_;
    std::set<std::string>                      object_names_;
    std::set<std::string>                      arrow_names_;
  };

  //! Reports every violated groupoid law: definedness, endpoints,
  //! associativity, identity and inverse laws.
  inline ValidationReport validate_groupoid(FiniteGroupoid const& g) {
    ValidationReport report;
    auto             name = [&g](ArrowId a) { return g.arrow_name(a); };
    for (auto x : g.objects()) {
      auto id = g.identity(x);
      if (g.source(id) != x || g.target(id) != x) {
        report.add("identity " + name(id) + " is not a loop at "
                   + g.object_name(x));
      }
    }
    for (auto u : g.arrows()) {
      for (auto v : g.arrows()) {
        auto const composable = g.target(u) == g.source(v);
        auto const w          = g.compose(v, u);
        if (composable && !w) {
          report.add("missing composition " + name(v) + " + " + name(u));
        } else if (!composable && w) {
          report.add("composition " + name(v) + " + " + name(u)
                     + " is defined but target(" + name(u) + ") != source("
                     + name(v) + ")");
        } else if (w
                   && (g.source(*w) != g.source(u)
                       || g.target(*w) != g.target(v))) {
          report.add("composition " + name(v) + " + " + name(u) + " = "
                     + name(*w) + " has the wrong source or target");
        }
      }
    }
    if (!report.valid()) {
      return report;
    }
    for (auto u : g.arrows()) {
      if (g.compose(u, g.identity(g.source(u))) != u
          || g.compose(g.identity(g.target(u)), u) != u) {
        report.add("identity law fails for " + name(u));
      }
      if (!g.has_inverse(u)) {
        report.add("inverse law fails: " + name(u) + " has no negative");
        continue;
      }
      auto const n = g.inverse(u);
      if (g.source(n) != g.target(u) || g.target(n) != g.source(u)
          || g.compose(u, n) != g.identity(g.target(u))
          || g.compose(n, u) != g.identity(g.source(u))) {
        report.add("inverse law fails for " + name(u) + " and " + name(n));
      }
    }
    for (auto u : g.arrows()) {
      for (auto v : g.star(g.target(u))) {
        auto const vu = *g.compose(v, u);
        for (auto w : g.star(g.target(v))) {
          if (g.compose(*g.compose(w, v), u) != g.compose(w, vu)) {
            report.add("associativity fails for (" + name(w) + ", " + name(v)
                       + ", " + name(u) + ")");
          }
        }
      }
    }
    return report;
  }

  inline FiniteGroupoid GroupoidBuilder::build() const {
    auto g      = assemble();
    auto report = validate_groupoid(g);
    if (!report.valid()) {
      throw InvalidStructure("groupoid " + g.name() + " is invalid:\n"
                             + report.to_string());
    }
    return g;
  }

  inline FiniteGroupoid
  FiniteGroupoid::renamed(std::string                     name,
                          std::vector<std::string> const& object_names,
                          std::vector<std::string> const& arrow_names) const {
    if (object_names.size() != num_objects() || arrow_names.size() != num_arrows()) {
      throw InvalidStructure("renaming has the wrong number of names");
    }
    Data d    = *data_;
    d.name    = std::move(name);
    d.objects = object_names;
    for (std::size_t i = 0; i < d.arrows.size(); ++i) {
      d.arrows[i].name = arrow_names[i];
    }
    auto shared = finish(std::move(d));
    if (shared->object_index.size() != num_objects()
        || shared->arrow_index.size() != num_arrows()) {
      throw InvalidStructure("renaming introduces duplicate names");
    }
    return FiniteGroupoid(std::move(shared));
  }

  ////////////////////////////////////////////////////////////////////////
  // Structural queries
  ////////////////////////////////////////////////////////////////////////

  //! The object group at x; element i is the i-th loop at x in arrow order.
  inline GroupTable object_group(FiniteGroupoid const& g, ObjectId x) {
    if (index(x) >= g.num_objects()) {
      throw UnknownName("groupoid " + g.name() + " has no object #"
                        + std::to_string(index(x)));
    }
    auto const               loops = g.loops(x);
    std::size_t const        n     = loops.size();
    std::map<ArrowId, std::size_t> pos;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) {
      pos.emplace(loops[i], i);
      names.push_back(g.arrow_name(loops[i]));
    }
    std::vector<std::size_t> mul(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        mul[i * n + j] = pos.at(g.add(loops[i], loops[j]));
      }
    }
    return GroupTable(g.name() + "(" + g.object_name(x) + ")",
                      std::move(names),
                      std::move(mul));
  }

  inline GroupTable object_group(FiniteGroupoid const& g, std::string const& x) {
    return object_group(g, g.object_at(x));
  }

  //! Connected components; blocks ordered by their first object and each
  //! block in object order.
  inline std::vector<std::vector<ObjectId>> components(FiniteGroupoid const& g) {
    std::size_t const        n = g.num_objects();
    std::vector<std::size_t> block(n, n);
    std::vector<std::vector<ObjectId>> out;
    for (auto x : g.objects()) {
      if (block[index(x)] != n) {
        continue;
      }
      std::size_t const b = out.size();
      out.emplace_back();
      for (auto a : g.star(x)) {
        block[index(g.target(a))] = b;
      }
      for (auto y : g.objects()) {
        if (block[index(y)] == b) {
          out.back().push_back(y);
        }
      }
    }
    return out;
  }

  inline bool is_connected(FiniteGroupoid const& g) {
    return components(g).size() <= 1;
  }

  //! Connected with exactly one arrow between each ordered pair of objects.
  inline bool is_tree_groupoid(FiniteGroupoid const& g) {
    if (g.num_objects() == 0) {
      return false;
    }
    for (auto x : g.objects()) {
      for (auto y : g.objects()) {
        if (g.hom(x, y).size() != 1) {
          return false;
        }
      }
    }
    return true;
  }

  inline bool has_trivial_object_groups(FiniteGroupoid const& g) {
    for (auto x : g.objects()) {
      if (g.loops(x).size() != 1) {
        return false;
      }
    }
    return true;
  }

  //! The full subgroupoid on `objects`, keeping names and input order.
  //! The second component maps each new arrow to the ambient arrow.
  inline std::pair<FiniteGroupoid, std::vector<ArrowId>>
  full_subgroupoid(FiniteGroupoid const& g, std::vector<ObjectId> const& objects,
                   std::string name) {
    std::vector<bool> keep(g.num_objects(), false);
    for (auto x : objects) {
      keep.at(index(x)) = true;
    }
    GroupoidBuilder              b(std::move(name));
    std::vector<std::uint32_t>   obj(g.num_objects(), UINT32_MAX);
    std::map<ArrowId, ArrowId>   arrow;
    std::vector<ArrowId>         ambient;
    for (auto x : g.objects()) {
      if (keep[index(x)]) {
        auto nx = b.add_object(g.object_name(x), g.arrow_name(g.identity(x)));
        obj[index(x)] = static_cast<std::uint32_t>(index(nx));
        arrow.emplace(g.identity(x), b.identity(nx));
      }
    }
    ambient.resize(b.num_arrows());
    for (auto [a, na] : arrow) {
      ambient[index(na)] = a;
    }
    for (auto a : g.arrows()) {
      if (keep[index(g.source(a))] && keep[index(g.target(a))]
          && !g.is_identity(a)) {
        auto na = b.add_arrow(g.arrow_name(a),
                              to_object(obj[index(g.source(a))]),
                              to_object(obj[index(g.target(a))]));
        arrow.emplace(a, na);
        ambient.push_back(a);
      }
    }
    b.fill_compositions([&](ArrowId v, ArrowId u) {
      return arrow.at(g.add(ambient[index(v)], ambient[index(u)]));
    });
    return {b.build(), std::move(ambient)};
  }

}  // namespace gpdkit

#endif  // GPDKIT_FINITE_GROUPOID_HPP_
