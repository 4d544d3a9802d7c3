// Builds a few group actions on small groupoids and prints their orbit
// groupoids, the kernel of the orbit morphism and the abelianized vertex
// group of the circle modulo reflection.

#include <iostream>

#include <gpdkit/gpdkit.hpp>

using namespace gpdkit;

namespace {

  void show(std::string const& title, GroupoidAction const& act) {
    auto const orbit = orbit_groupoid(act);
    auto const& q    = orbit.groupoid;
    std::cout << title << ": " << act.space().name() << " by " << act.group().name() << "\n";
    std::cout << "  orbit groupoid has " << q.num_objects() << " objects and " << q.num_arrows()
              << " arrows\n";
    for (auto const& comp : components(q)) {
      auto const group = object_group(q, comp.front());
      std::cout << "  object group at " << q.object_name(comp.front()) << " has order "
                << group.size() << "\n";
    }
    std::cout << "  kernel generators:";
    for (auto a : orbit_kernel_generators(act)) {
      std::cout << " " << act.space().arrow_name(a);
    }
    std::cout << "\n  orbit morphism is a covering: " << (is_covering(orbit.projection) ? "yes" : "no")
              << "\n";
  }

}  // namespace

int main() {
  for (auto const& entry : standard_corpus()) {
    show(entry.name, entry.action);
  }

  // The square graph with conjugation: its orbit presentation has a
  // trivial vertex group.
  DirectedGraph c4("C4");
  for (auto v : {"1", "i", "-1", "-i"}) {
    c4.add_vertex(v);
  }
  for (std::size_t k = 0; k < 4; ++k) {
    c4.add_edge("e" + std::to_string(k), k, (k + 1) % 4);
  }
  std::vector<std::size_t> vmap{0, 1, 2, 3, 0, 3, 2, 1};
  std::vector<Letter>      emap{{0, false}, {1, false}, {2, false}, {3, false},
                                {3, true},  {2, true},  {1, true},  {0, true}};
  GraphAction refl{cyclic_group(2), c4, vmap, emap};
  auto const  pg = orbit_presentation(refl);
  for (std::size_t v = 0; v < pg.graph.num_vertices(); ++v) {
    auto const p = vertex_group_presentation(pg, v);
    std::cout << "vertex group at " << pg.graph.vertex_name(v)
              << " abelianizes to: " << to_string(abelian_invariants(p)) << "\n";
  }
  return 0;
}
