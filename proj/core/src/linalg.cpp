#include "lcameta/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace lcameta::linalg {

LeastSquaresSolution least_squares_qr(const Matrix& design, std::span<const double> response,
                                      std::span<const std::string> column_names) {
  const std::size_t n = design.rows();
  const std::size_t k = design.cols();
  if (response.size() != n) throw NumericError("response length does not match the design matrix");
  if (n < k) throw NumericError("fewer observations than columns");

  auto name_of = [&](std::size_t j) {
    return j < column_names.size() ? column_names[j] : "column " + std::to_string(j);
  };

  Matrix a = design;
  std::vector<double> qty(response.begin(), response.end());

  for (std::size_t j = 0; j < k; ++j) {
    double column_norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) column_norm = std::hypot(column_norm, design(i, j));

    double sub_norm = 0.0;
    for (std::size_t i = j; i < n; ++i) sub_norm = std::hypot(sub_norm, a(i, j));
    if (column_norm == 0.0 || sub_norm <= 1e-10 * column_norm) throw RankDeficiencyError(j, name_of(j));

    // Reflector v = x - alpha e1 with alpha = -sign(x0) ||x||, stored in place.
    const double alpha = a(j, j) > 0.0 ? -sub_norm : sub_norm;
    std::vector<double> v(n - j);
    for (std::size_t i = j; i < n; ++i) v[i - j] = a(i, j);
    v[0] -= alpha;
    double v_norm2 = 0.0;
    for (double x : v) v_norm2 += x * x;

    auto reflect = [&](auto&& get) {
      double dot = 0.0;
      for (std::size_t i = j; i < n; ++i) dot += v[i - j] * get(i);
      const double scale = 2.0 * dot / v_norm2;
      for (std::size_t i = j; i < n; ++i) get(i) -= scale * v[i - j];
    };
    for (std::size_t c = j + 1; c < k; ++c) reflect([&](std::size_t i) -> double& { return a(i, c); });
    reflect([&](std::size_t i) -> double& { return qty[i]; });

    a(j, j) = alpha;
    for (std::size_t i = j + 1; i < n; ++i) a(i, j) = 0.0;
  }

  LeastSquaresSolution solution;
  solution.coefficients.assign(k, 0.0);
  for (std::size_t jj = k; jj-- > 0;) {
    double sum = qty[jj];
    for (std::size_t c = jj + 1; c < k; ++c) sum -= a(jj, c) * solution.coefficients[c];
    solution.coefficients[jj] = sum / a(jj, jj);
  }

  // R^{-1}, upper triangular.
  Matrix r_inv(k, k);
  for (std::size_t c = 0; c < k; ++c) {
    r_inv(c, c) = 1.0 / a(c, c);
    for (std::size_t r = c; r-- > 0;) {
      double sum = 0.0;
      for (std::size_t m = r + 1; m <= c; ++m) sum += a(r, m) * r_inv(m, c);
      r_inv(r, c) = -sum / a(r, r);
    }
  }
  solution.gram_inverse = Matrix(k, k);
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < k; ++c) {
      double sum = 0.0;
      for (std::size_t m = std::max(r, c); m < k; ++m) sum += r_inv(r, m) * r_inv(c, m);
      solution.gram_inverse(r, c) = sum;
    }
  }

  solution.fitted.assign(n, 0.0);
  solution.residuals.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double fit = 0.0;
    for (std::size_t j = 0; j < k; ++j) fit += design(i, j) * solution.coefficients[j];
    solution.fitted[i] = fit;
    solution.residuals[i] = response[i] - fit;
  }
  return solution;
}

}  // namespace lcameta::linalg
