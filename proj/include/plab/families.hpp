#pragma once

#include <map>
#include <string>

#include "plab/graph.hpp"
#include "plab/treeaddr.hpp"

namespace plab {

// Rooted tree where the root has `degree` children and every other internal
// vertex has degree-1 children; equivalently the radius-`depth` ball in the
// degree-regular infinite tree.
WeightedGraph make_regular_tree(int degree, int depth);

WeightedGraph make_path(int n);
WeightedGraph make_cycle(int n);

// Grid {0..side-1}^d with nearest-neighbor edges.
WeightedGraph make_zd_box(int d, int side);

// Cayley ball of the integer Heisenberg group, generators x^{±1}, y^{±1}
// with x=(1,0,0), y=(0,1,0) and (a,b,c)·(a',b',c') = (a+a', b+b', c+c'+a·b').
WeightedGraph make_heisenberg_ball(int radius);

// Cayley ball of Z^2 ⋊_A Z with A = [[2,1],[1,1]], generators e1^{±1},
// e2^{±1}, t^{±1}.
WeightedGraph make_sol_lattice_ball(int radius);

// Ball in DL(q1,q2) around the basepoint pair (heights 0,0). Vertices are
// pairs of tree addresses with h1(x)+h2(y)=0; each edge moves one coordinate
// up and the other down.
WeightedGraph make_dl_ball(int q1, int q2, int radius);

// Pair of tree addresses forming a DL(2,2) vertex.
struct DLVertex {
  TreeVertex x, y;
  bool operator<(const DLVertex& o) const {
    return x == o.x ? y < o.y : x < o.x;
  }
  bool operator==(const DLVertex& o) const { return x == o.x && y == o.y; }
};
std::string dl_id(const DLVertex& v);

// The finite subgraph Gamma_k of DL(2,2): pairs (x,y) with x a descendant of
// o1 = (k, "") at height t in [0,k] and y a descendant of o2 = (0, "") at
// height -t. |V| = (k+1)2^k with 2^k vertices per level; labels carry t.
WeightedGraph make_dl_gamma_k(int k);

// Vertex list of Gamma_k grouped by level, in the id order of the graph
// returned by make_dl_gamma_k (used by the path-family construction).
std::vector<std::vector<DLVertex>> gamma_k_levels(int k);

// Reproducible family descriptor for the CLI and the profile strategies.
struct FamilySpec {
  std::string family;  // tree | path | cycle | zd_box | heisenberg_ball |
                       // sol_lattice_ball | dl | dl_gamma_k | product | cone
  std::map<std::string, double> num;   // numeric parameters
  std::string space;                   // cone model space kind
  double get(const std::string& key, double dflt) const {
    auto it = num.find(key);
    return it == num.end() ? dflt : it->second;
  }
  int geti(const std::string& key, int dflt) const {
    return int(get(key, dflt));
  }
  std::string serialize() const;
  static FamilySpec parse_kv(const std::string& family,
                             const std::map<std::string, std::string>& kv);
};

// Build the graph a FamilySpec describes (cone specs handled in cone.hpp and
// dispatched from here).
WeightedGraph make_family(const FamilySpec& spec);

}  // namespace plab
