#pragma once

#include <utility>
#include <vector>

namespace plab {

// min c.x subject to rows a.x (<=|=|>=) b and x >= 0 componentwise.
// Dense two-phase simplex with Bland's rule; sized for problems with a few
// hundred rows at most.
struct LinearProgram {
  int nvars = 0;
  std::vector<double> c;
  struct Row {
    std::vector<std::pair<int, double>> a;
    char rel;  // '<', '=', '>'
    double b;
  };
  std::vector<Row> rows;

  int add_var(double cost) {
    c.push_back(cost);
    return nvars++;
  }
  void add_row(std::vector<std::pair<int, double>> terms, char rel, double b) {
    rows.push_back({std::move(terms), rel, b});
  }
};

struct LPResult {
  bool feasible = false;
  bool bounded = true;
  double value = 0;
  std::vector<double> x;
};

LPResult solve_lp(const LinearProgram& lp);

}  // namespace plab
