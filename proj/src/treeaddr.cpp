#include "plab/treeaddr.hpp"

#include <cstdio>

namespace plab {

std::string tree_id(const TreeVertex& v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "h%c%03lld", v.h < 0 ? '-' : '+',
                v.h < 0 ? -v.h : v.h);
  std::string out(buf);
  out += '.';
  out += v.s.empty() ? "e" : v.s;
  return out;
}

std::vector<TreeVertex> tree_nbrs(const TreeVertex& v, int q) {
  std::vector<TreeVertex> out;
  out.push_back(tree_parent(v));
  for (int d = 0; d < q; ++d) out.push_back(tree_child(v, d));
  return out;
}

}  // namespace plab
