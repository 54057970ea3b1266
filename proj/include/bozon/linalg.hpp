#pragma once

#include <vector>

namespace bozon {

// Dense row-major square matrix.
struct Matrix {
  int n = 0;
  std::vector<double> a;

  explicit Matrix(int size = 0) : n(size), a(static_cast<std::size_t>(size) * size, 0.0) {}
  double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
};

struct Determinant {
  double value = 0.0;
  // 1-norm condition number ||A|| ||A^-1||; infinite when singular.
  double condition = 0.0;
  int dimension = 0;
  bool singular = false;
};

// LU factorization with partial pivoting. A zero pivot marks the matrix
// singular and yields value 0.
Determinant lu_determinant(const Matrix& m);

}  // namespace bozon
