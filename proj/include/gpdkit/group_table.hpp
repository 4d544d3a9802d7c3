#ifndef GPDKIT_GROUP_TABLE_HPP_
#define GPDKIT_GROUP_TABLE_HPP_

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace gpdkit {

  //! A finite group given by its full multiplication table.
  //!
  //! Elements are the indices 0, ..., size() - 1; element names are kept for
  //! reporting and for the text format.  The constructor checks closure and
  //! the identity and inverse laws; associativity is O(n^3) and is left to
  //! validate_group_table.
  class GroupTable {
   public:
    using element = std::size_t;

    GroupTable(std::string name,
               std::vector<std::string> element_names,
               std::vector<element> products)
        : name_(std::move(name)),
          names_(std::move(element_names)),
          mul_(std::move(products)) {
      std::size_t const n = names_.size();
      if (n == 0) {
        throw InvalidStructure("group " + name_ + ": empty element set");
      }
      if (mul_.size() != n * n) {
        throw InvalidStructure("group " + name_
                               + ": multiplication table has wrong size");
      }
      for (auto v : mul_) {
        if (v >= n) {
          throw InvalidStructure("group " + name_
                                 + ": product outside the element set");
        }
      }
      for (element i = 0; i < n; ++i) {
        if (!index_.emplace(names_[i], i).second) {
          throw InvalidStructure("group " + name_ + ": duplicate element name "
                                 + names_[i]);
        }
      }
      std::optional<element> id;
      for (element e = 0; e < n && !id; ++e) {
        bool ok = true;
        for (element g = 0; g < n && ok; ++g) {
          ok = multiply(e, g) == g && multiply(g, e) == g;
        }
        if (ok) {
          id = e;
        }
      }
      if (!id) {
        throw InvalidStructure("group " + name_ + ": no identity element");
      }
      identity_ = *id;
      inv_.assign(n, n);
      for (element g = 0; g < n; ++g) {
        for (element h = 0; h < n; ++h) {
          if (multiply(g, h) == identity_ && multiply(h, g) == identity_) {
            inv_[g] = h;
            break;
          }
        }
        if (inv_[g] == n) {
          throw InvalidStructure("group " + name_ + ": element " + names_[g]
                                 + " has no inverse");
        }
      }
    }

    std::string const& name() const noexcept {
      return name_;
    }
    std::size_t size() const noexcept {
      return names_.size();
    }
    element identity() const noexcept {
      return identity_;
    }
    element multiply(element a, element b) const {
      return mul_[a * size() + b];
    }
    element inverse(element a) const {
      return inv_[a];
    }
    std::string const& element_name(element a) const {
      return names_.at(a);
    }
    std::vector<std::string> const& element_names() const noexcept {
      return names_;
    }
    std::vector<element> const& table() const noexcept {
      return mul_;
    }

    std::optional<element> find(std::string const& name) const {
      auto it = index_.find(name);
      if (it == index_.end()) {
        return std::nullopt;
      }
      return it->second;
    }

    element at(std::string const& name) const {
      auto e = find(name);
      if (!e) {
        throw UnknownName("group " + name_ + " has no element " + name);
      }
      return *e;
    }

    std::size_t order_of(element a) const {
      std::size_t k = 1;
      for (element x = a; x != identity_; x = multiply(x, a)) {
        ++k;
      }
      return k;
    }

    bool is_abelian() const {
      for (element a = 0; a < size(); ++a) {
        for (element b = a + 1; b < size(); ++b) {
          if (multiply(a, b) != multiply(b, a)) {
            return false;
          }
        }
      }
      return true;
    }

    GroupTable renamed(std::string name) const {
      GroupTable copy = *this;
      copy.name_      = std::move(name);
      return copy;
    }

    friend bool operator==(GroupTable const& a, GroupTable const& b) {
      return a.names_ == b.names_ && a.mul_ == b.mul_;
    }

   private:
    std::string                    name_;
    std::vector<std::string>       names_;
    std::vector<element>           mul_;
    std::vector<element>           inv_;
    element                        identity_ = 0;
    std::map<std::string, element> index_;
  };

  //! Exhaustive associativity check; the other laws are enforced by the
  //! GroupTable constructor.
  inline ValidationReport validate_group_table(GroupTable const& g) {
    ValidationReport report;
    std::size_t const n = g.size();
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        std::size_t const ab = g.multiply(a, b);
        for (std::size_t c = 0; c < n; ++c) {
          if (g.multiply(ab, c) != g.multiply(a, g.multiply(b, c))) {
            report.add("associativity fails for (" + g.element_name(a) + ", "
                       + g.element_name(b) + ", " + g.element_name(c) + ")");
          }
        }
      }
    }
    return report;
  }

  ////////////////////////////////////////////////////////////////////////
  // Catalogue
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    using permutation = std::vector<std::size_t>;

    // Cycle notation on points 1..n, "1" for the identity.
    inline std::string cycle_string(permutation const& p) {
      std::string out;
      std::vector<bool> seen(p.size(), false);
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i] || p[i] == i) {
          continue;
        }
        out += '(';
        std::size_t j     = i;
        bool        first = true;
        while (!seen[j]) {
          seen[j] = true;
          if (!first) {
            out += ',';
          }
          out += std::to_string(j + 1);
          first = false;
          j     = p[j];
        }
        out += ')';
      }
      return out.empty() ? "1" : out;
    }

    // Composition convention: (p * q)(i) = p(q(i)), so q acts first.
    inline GroupTable from_permutations(std::string               name,
                                        std::vector<permutation> const& perms) {
      std::map<permutation, std::size_t> index;
      for (std::size_t i = 0; i < perms.size(); ++i) {
        index.emplace(perms[i], i);
      }
      std::size_t const        n = perms.size();
      std::vector<std::size_t> mul(n * n);
      permutation              r(perms.front().size());
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          for (std::size_t i = 0; i < r.size(); ++i) {
            r[i] = perms[a][perms[b][i]];
          }
          mul[a * n + b] = index.at(r);
        }
      }
      std::vector<std::string> names;
      for (auto const& p : perms) {
        names.push_back(cycle_string(p));
      }
      return GroupTable(std::move(name), std::move(names), std::move(mul));
    }

    inline bool is_even(permutation const& p) {
      std::size_t inversions = 0;
      for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = i + 1; j < p.size(); ++j) {
          inversions += p[i] > p[j];
        }
      }
      return inversions % 2 == 0;
    }
  }  // namespace detail

  //! Cyclic group of order n with elements 1, g, g^2, ...
  inline GroupTable cyclic_group(std::size_t n) {
    if (n == 0) {
      throw InvalidStructure("cyclic group of order 0");
    }
    std::vector<std::string> names;
    for (std::size_t k = 0; k < n; ++k) {
      names.push_back(k == 0 ? "1" : k == 1 ? "g" : "g^" + std::to_string(k));
    }
    std::vector<std::size_t> mul(n * n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        mul[a * n + b] = (a + b) % n;
      }
    }
    return GroupTable("Z" + std::to_string(n), std::move(names), std::move(mul));
  }

  inline GroupTable trivial_group() {
    return cyclic_group(1).renamed("1");
  }

  //! Symmetric group on n points, elements in lexicographic order of their
  //! images (identity first), named in cycle notation.
  inline GroupTable symmetric_group(std::size_t n) {
    detail::permutation p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<detail::permutation> perms;
    do {
      perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return detail::from_permutations("S" + std::to_string(n), perms);
  }

  inline GroupTable alternating_group(std::size_t n) {
    detail::permutation p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<detail::permutation> perms;
    do {
      if (detail::is_even(p)) {
        perms.push_back(p);
      }
    } while (std::next_permutation(p.begin(), p.end()));
    return detail::from_permutations("A" + std::to_string(n), perms);
  }

  //! Dihedral group of order 2n; element (k, j) is r^k s^j with
  //! s r = r^-1 s.
  inline GroupTable dihedral_group(std::size_t n) {
    if (n == 0) {
      throw InvalidStructure("dihedral group of order 0");
    }
    std::size_t const        size = 2 * n;
    std::vector<std::string> names;
    for (std::size_t j = 0; j < 2; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        std::string r = k == 0 ? "" : k == 1 ? "r" : "r^" + std::to_string(k);
        std::string s = j == 0 ? "" : "s";
        names.push_back(r.empty() && s.empty() ? "1" : r + s);
      }
    }
    auto encode = [n](std::size_t k, std::size_t j) { return j * n + k; };
    std::vector<std::size_t> mul(size * size);
    for (std::size_t a = 0; a < size; ++a) {
      for (std::size_t b = 0; b < size; ++b) {
        std::size_t const k1 = a % n, j1 = a / n, k2 = b % n, j2 = b / n;
        std::size_t const k = j1 == 0 ? (k1 + k2) % n : (k1 + n - k2) % n;
        mul[a * size + b]   = encode(k, (j1 + j2) % 2);
      }
    }
    return GroupTable(
        "D" + std::to_string(n), std::move(names), std::move(mul));
  }

  //! Quaternion group {±1, ±i, ±j, ±k}.
  inline GroupTable quaternion_group() {
    // unit u in {1,i,j,k} and sign; index = 2*u + (negative ? 1 : 0)
    static constexpr int unit_product[4][4][2] = {
        // {unit, sign}: row * column
        {{0, 1}, {1, 1}, {2, 1}, {3, 1}},
        {{1, 1}, {0, -1}, {3, 1}, {2, -1}},
        {{2, 1}, {3, -1}, {0, -1}, {1, 1}},
        {{3, 1}, {2, 1}, {1, -1}, {0, -1}},
    };
    std::vector<std::string> names;
    char const*              units[] = {"1", "i", "j", "k"};
    for (auto u : units) {
      names.emplace_back(u);
      names.emplace_back(std::string("-") + u);
    }
    std::vector<std::size_t> mul(64);
    for (std::size_t a = 0; a < 8; ++a) {
      for (std::size_t b = 0; b < 8; ++b) {
        auto const& p    = unit_product[a / 2][b / 2];
        int         sign = p[1] * (a % 2 ? -1 : 1) * (b % 2 ? -1 : 1);
        mul[a * 8 + b]   = 2 * static_cast<std::size_t>(p[0]) + (sign < 0 ? 1 : 0);
      }
    }
    return GroupTable("Q8", std::move(names), std::move(mul));
  }

  //! Element (g, h) has index g * |H| + h.
  inline GroupTable direct_product(GroupTable const& g, GroupTable const& h) {
    std::size_t const        n = g.size() * h.size();
    std::vector<std::string> names;
    for (std::size_t a = 0; a < g.size(); ++a) {
      for (std::size_t b = 0; b < h.size(); ++b) {
        names.push_back("(" + g.element_name(a) + "," + h.element_name(b) + ")");
      }
    }
    std::vector<std::size_t> mul(n * n);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        std::size_t const a = g.multiply(x / h.size(), y / h.size());
        std::size_t const b = h.multiply(x % h.size(), y % h.size());
        mul[x * n + y]      = a * h.size() + b;
      }
    }
    return GroupTable(g.name() + "x" + h.name(), std::move(names), std::move(mul));
  }

  ////////////////////////////////////////////////////////////////////////
  // Subgroups and quotients
  ////////////////////////////////////////////////////////////////////////

  //! Subgroup generated by `generators`, as a sorted element list.
  inline std::vector<std::size_t>
  generated_subgroup(GroupTable const& g, std::vector<std::size_t> const& generators) {
    std::vector<bool>        in(g.size(), false);
    std::vector<std::size_t> members{g.identity()};
    in[g.identity()] = true;
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (auto s : generators) {
        std::size_t const x = g.multiply(s, members[i]);
        if (!in[x]) {
          in[x] = true;
          members.push_back(x);
        }
      }
    }
    std::sort(members.begin(), members.end());
    return members;
  }

  inline bool is_normal_subgroup(GroupTable const&               g,
                                 std::vector<std::size_t> const& subgroup) {
    std::vector<bool> in(g.size(), false);
    for (auto x : subgroup) {
      in[x] = true;
    }
    for (std::size_t a = 0; a < g.size(); ++a) {
      for (auto x : subgroup) {
        if (!in[g.multiply(g.multiply(a, x), g.inverse(a))]) {
          return false;
        }
      }
    }
    return true;
  }

  //! The table of a subgroup, elements in the order given.
  inline GroupTable subgroup_table(GroupTable const&               g,
                                   std::vector<std::size_t> const& elements,
                                   std::string                     name) {
    std::map<std::size_t, std::size_t> pos;
    std::vector<std::string>           names;
    for (std::size_t i = 0; i < elements.size(); ++i) {
      pos.emplace(elements[i], i);
      names.push_back(g.element_name(elements[i]));
    }
    std::size_t const        n = elements.size();
    std::vector<std::size_t> mul(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        auto it = pos.find(g.multiply(elements[i], elements[j]));
        if (it == pos.end()) {
          throw InvalidStructure("subgroup of " + g.name()
                                 + " is not closed under multiplication");
        }
        mul[i * n + j] = it->second;
      }
    }
    return GroupTable(std::move(name), std::move(names), std::move(mul));
  }

  //! G/N for a normal subgroup N; cosets are named "[g]" after their first
  //! element in G's order.
  inline GroupTable quotient_group(GroupTable const&               g,
                                   std::vector<std::size_t> const& normal) {
    if (!is_normal_subgroup(g, normal)) {
      throw HypothesisFailure("subgroup of " + g.name() + " is not normal");
    }
    std::size_t const        n = g.size();
    std::vector<std::size_t> coset(n, n);
    std::vector<std::size_t> reps;
    for (std::size_t a = 0; a < n; ++a) {
      if (coset[a] != n) {
        continue;
      }
      for (auto x : normal) {
        coset[g.multiply(a, x)] = reps.size();
      }
      reps.push_back(a);
    }
    std::size_t const        m = reps.size();
    std::vector<std::string> names;
    for (auto r : reps) {
      names.push_back("[" + g.element_name(r) + "]");
    }
    std::vector<std::size_t> mul(m * m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        mul[i * m + j] = coset[g.multiply(reps[i], reps[j])];
      }
    }
    return GroupTable(g.name() + "/N", std::move(names), std::move(mul));
  }

  //! A small generating set: greedily adds the first element outside the
  //! subgroup generated so far.
  inline std::vector<std::size_t> greedy_generators(GroupTable const& g) {
    std::vector<std::size_t> gens;
    std::vector<std::size_t> span{g.identity()};
    for (std::size_t a = 0; a < g.size() && span.size() < g.size(); ++a) {
      if (!std::binary_search(span.begin(), span.end(), a)) {
        gens.push_back(a);
        span = generated_subgroup(g, gens);
      }
    }
    return gens;
  }

}  // namespace gpdkit

#endif  // GPDKIT_GROUP_TABLE_HPP_
