#include "dppmarkov/random_kernel.hpp"

#include <Eigen/Eigenvalues>

namespace dppmarkov {

namespace {

Eigen::MatrixXd normal_matrix(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) g(i, j) = normal(rng);
  }
  return g;
}

// a * G G^T + b * I with spectrum mapped onto [eps, 1 - eps].
SymMatrix rescaled_square(const Eigen::MatrixXd& g, double eps) {
  const int n = static_cast<int>(g.rows());
  Eigen::MatrixXd k = g * g.transpose();
  k = ((k + k.transpose()) / 2).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(k, Eigen::EigenvaluesOnly);
  const double lo = solver.eigenvalues().minCoeff();
  const double hi = solver.eigenvalues().maxCoeff();
  double a = 0;
  double b = 0.5;
  if (hi - lo > 1e-12) {
    a = (1 - 2 * eps) / (hi - lo);
    b = eps - a * lo;
  }
  Eigen::MatrixXd out = a * k;
  out.diagonal().array() += b;
  return SymMatrix(default_labels(n), std::move(out));
}

}  // namespace

SymMatrix random_kernel(int n, std::mt19937_64& rng, double eps) {
  return rescaled_square(normal_matrix(n, rng), eps);
}

SymMatrix planted_kernel(int n, std::mt19937_64& rng, PlantedSplit* split, double eps) {
  if (n < 2) throw DomainError("planted kernel needs at least two nodes");
  // Each node lands in L, R or H; redraw until L and R are both nonempty.
  std::uniform_int_distribution<int> side(0, 2);
  PlantedSplit s;
  do {
    s = PlantedSplit{};
    for (int i = 0; i < n; ++i) {
      const int where = side(rng);
      if (where == 0) s.left = s.left.with(i);
      else if (where == 1) s.right = s.right.with(i);
      else s.hub = s.hub.with(i);
    }
  } while (s.left.empty() || s.right.empty());

  Eigen::MatrixXd g = normal_matrix(n, rng);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if ((s.left.contains(i) && !s.left.contains(j)) || (s.right.contains(i) && !s.right.contains(j))) {
        g(i, j) = 0;
      }
    }
  }
  if (split != nullptr) *split = s;
  return rescaled_square(g, eps);
}

std::vector<SymMatrix> kernel_ensemble(std::uint64_t seed, int count, int n_min, int n_max, int planted_every) {
  std::mt19937_64 rng(seed);
  std::vector<SymMatrix> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    const int n = n_min + i % (n_max - n_min + 1);
    const bool planted = planted_every > 0 && i % planted_every == planted_every - 1 && n >= 2;
    out.push_back(planted ? planted_kernel(n, rng) : random_kernel(n, rng));
  }
  return out;
}

}  // namespace dppmarkov
