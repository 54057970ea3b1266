#include "bozon/linalg.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace bozon {

Determinant lu_determinant(const Matrix& m) {
  const int n = m.n;
  Determinant out;
  out.dimension = n;
  if (n == 0) {
    out.value = 1.0;
    out.condition = 1.0;
    return out;
  }
  Matrix lu = m;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double det = 1.0;
  for (int k = 0; k < n; ++k) {
    int pivot = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(lu(i, k)) > std::abs(lu(pivot, k))) pivot = i;
    if (lu(pivot, k) == 0.0) {
      out.singular = true;
      out.value = 0.0;
      out.condition = std::numeric_limits<double>::infinity();
      return out;
    }
    if (pivot != k) {
      for (int j = 0; j < n; ++j) std::swap(lu(k, j), lu(pivot, j));
      std::swap(perm[k], perm[pivot]);
      det = -det;
    }
    det *= lu(k, k);
    for (int i = k + 1; i < n; ++i) {
      const double f = lu(i, k) / lu(k, k);
      lu(i, k) = f;
      for (int j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
    }
  }
  out.value = det;

  // ||A^-1||_1 from the columns of the inverse, solved through the factors.
  double norm_a = 0.0;
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += std::abs(m(i, j));
    norm_a = std::max(norm_a, s);
  }
  double norm_inv = 0.0;
  std::vector<double> x(n);
  for (int col = 0; col < n; ++col) {
    for (int i = 0; i < n; ++i) x[i] = perm[i] == col ? 1.0 : 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < i; ++j) x[i] -= lu(i, j) * x[j];
    for (int i = n - 1; i >= 0; --i) {
      for (int j = i + 1; j < n; ++j) x[i] -= lu(i, j) * x[j];
      x[i] /= lu(i, i);
    }
    double s = 0.0;
    for (double v : x) s += std::abs(v);
    norm_inv = std::max(norm_inv, s);
  }
  out.condition = norm_a * norm_inv;
  return out;
}

}  // namespace bozon
