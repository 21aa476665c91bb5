#pragma once

// Sweeps the distribution tails against the quadrature oracle over df in
// 1..30 and a logarithmic argument grid.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "lcameta/special_functions.hpp"
#include "support/oracles.hpp"

namespace testing_support {

struct GridError {
  double worst = 0.0;
  std::string where;
  std::size_t points = 0;

  void record(double got, double want, const std::string& label) {
    ++points;
    const double e = std::fabs(got - want);
    if (e > worst || std::isnan(e)) {
      worst = std::isnan(e) ? INFINITY : e;
      where = label;
    }
  }
};

inline std::vector<double> log_grid() {
  std::vector<double> g;
  for (int k = -12; k <= 8; ++k) g.push_back(std::pow(10.0, k / 4.0));
  return g;
}

inline GridError sweep_t() {
  GridError err;
  for (int df = 1; df <= 30; ++df)
    for (double t : log_grid())
      err.record(lcameta::special::student_t_two_sided(t, df), oracle::t_two_sided(t, df),
                 "t=" + std::to_string(t) + " df=" + std::to_string(df));
  return err;
}

inline GridError sweep_f() {
  GridError err;
  for (int d1 = 1; d1 <= 30; ++d1)
    for (int d2 = 1; d2 <= 30; ++d2)
      for (double f : log_grid())
        err.record(lcameta::special::f_upper_tail(f, d1, d2), oracle::f_upper(f, d1, d2),
                   "f=" + std::to_string(f) + " df=(" + std::to_string(d1) + "," + std::to_string(d2) + ")");
  return err;
}

inline GridError sweep_chi_square() {
  GridError err;
  for (int df = 1; df <= 30; ++df)
    for (double x : log_grid())
      err.record(lcameta::special::chi_square_upper_tail(x, df), oracle::chi_square_upper(x, df),
                 "x=" + std::to_string(x) + " df=" + std::to_string(df));
  return err;
}

}  // namespace testing_support
