#pragma once

#include <string>
#include <vector>

#include "plab/util.hpp"

namespace plab {

// Vertex of the (q+1)-regular tree with a distinguished boundary point xi.
// Encoding: (h, s) where h is the Busemann height b_{v,xi} (base vertex
// v = (0,"")) and s is the digit string of the descent from the reference
// ray. The reference ray through v toward xi extends downward by digit 0,
// so canonical addresses have no leading '0' digit. Every vertex has one
// parent (toward xi, height +1) and q children (height -1).
struct TreeVertex {
  long long h = 0;
  std::string s;  // digits '0'..('0'+q-1), canonical: s.empty() || s[0] != '0'

  bool operator==(const TreeVertex& o) const { return h == o.h && s == o.s; }
  bool operator<(const TreeVertex& o) const {
    return h != o.h ? h < o.h : s < o.s;
  }
};

inline TreeVertex tree_parent(const TreeVertex& v) {
  TreeVertex p{v.h + 1, v.s.substr(0, v.s.size() - (v.s.empty() ? 0 : 1))};
  return p;
}

inline TreeVertex tree_child(const TreeVertex& v, int digit) {
  TreeVertex c{v.h - 1, v.s};
  if (!(c.s.empty() && digit == 0)) c.s.push_back(char('0' + digit));
  return c;
}

// Height at which the ascending paths from a and b first meet.
inline long long tree_join_height(const TreeVertex& a, const TreeVertex& b) {
  TreeVertex x = a, y = b;
  while (!(x == y)) {
    if (x.h < y.h)
      x = tree_parent(x);
    else if (y.h < x.h)
      y = tree_parent(y);
    else {
      x = tree_parent(x);
      y = tree_parent(y);
    }
  }
  return x.h;
}

inline long long tree_dist(const TreeVertex& a, const TreeVertex& b) {
  long long j = tree_join_height(a, b);
  return (j - a.h) + (j - b.h);
}

// Busemann function toward xi with base v=(0,""): b(w) = w.h exactly.
inline long long tree_busemann(const TreeVertex& w) { return w.h; }

// Canonical printable id, fixed-width height with sign for lexicographic
// friendliness within one graph: "h<+|->ddd.s".
std::string tree_id(const TreeVertex& v);

// Neighbors in the (q+1)-regular tree.
std::vector<TreeVertex> tree_nbrs(const TreeVertex& v, int q);

}  // namespace plab
