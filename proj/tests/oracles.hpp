#ifndef DPPMARKOV_TESTS_ORACLES_HPP
#define DPPMARKOV_TESTS_ORACLES_HPP

// Slow reference computations that share no code with the library.

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

namespace oracle {

/// Laplace expansion along the first row.
inline double cofactor_det(const Eigen::MatrixXd& m) {
  const int n = static_cast<int>(m.rows());
  if (n == 0) return 1.0;
  if (n == 1) return m(0, 0);
  double sum = 0;
  for (int j = 0; j < n; ++j) {
    Eigen::MatrixXd minor(n - 1, n - 1);
    for (int r = 1; r < n; ++r) {
      for (int c = 0, cc = 0; c < n; ++c) {
        if (c != j) minor(r - 1, cc++) = m(r, c);
      }
    }
    sum += (j % 2 == 0 ? 1.0 : -1.0) * m(0, j) * cofactor_det(minor);
  }
  return sum;
}

inline Eigen::MatrixXd principal(const Eigen::MatrixXd& m, std::uint32_t mask) {
  std::vector<int> idx;
  for (int i = 0; i < m.rows(); ++i) {
    if ((mask >> i) & 1U) idx.push_back(i);
  }
  Eigen::MatrixXd out(idx.size(), idx.size());
  for (std::size_t r = 0; r < idx.size(); ++r) {
    for (std::size_t c = 0; c < idx.size(); ++c) out(r, c) = m(idx[r], idx[c]);
  }
  return out;
}

/// P(Y = A) = |det(K - I_{complement of A})|.
inline double joint_prob(const Eigen::MatrixXd& k, std::uint32_t ones) {
  Eigen::MatrixXd m = k;
  for (int i = 0; i < k.rows(); ++i) {
    if (!((ones >> i) & 1U)) m(i, i) -= 1.0;
  }
  return std::abs(cofactor_det(m));
}

inline std::vector<double> joint_table(const Eigen::MatrixXd& k) {
  const std::uint32_t size = 1U << k.rows();
  std::vector<double> p(size);
  for (std::uint32_t a = 0; a < size; ++a) p[a] = joint_prob(k, a);
  return p;
}

/// P(X_S = x on S) summed from a full table; `values` holds the assignment bits on S.
inline double event(const std::vector<double>& p, std::uint32_t support, std::uint32_t values) {
  double total = 0;
  for (std::uint32_t a = 0; a < p.size(); ++a) {
    if ((a & support) == (values & support)) total += p[a];
  }
  return total;
}

/// Bayes: table over the unobserved variables, indexed by their compressed bitmask.
inline std::vector<double> conditional(const std::vector<double>& p, int n, std::uint32_t support,
                                       std::uint32_t values) {
  std::vector<int> free_vars;
  for (int i = 0; i < n; ++i) {
    if (!((support >> i) & 1U)) free_vars.push_back(i);
  }
  const double z = event(p, support, values);
  std::vector<double> out(1U << free_vars.size(), 0.0);
  for (std::uint32_t a = 0; a < p.size(); ++a) {
    if ((a & support) != (values & support)) continue;
    std::uint32_t idx = 0;
    for (std::size_t t = 0; t < free_vars.size(); ++t) idx |= ((a >> free_vars[t]) & 1U) << t;
    out[idx] += p[a] / z;
  }
  return out;
}

/// Table of the variables in `keep`, indexed by their compressed bitmask.
inline std::vector<double> marginal(const std::vector<double>& p, int n, std::uint32_t keep) {
  std::vector<int> vars;
  for (int i = 0; i < n; ++i) {
    if ((keep >> i) & 1U) vars.push_back(i);
  }
  std::vector<double> out(1U << vars.size(), 0.0);
  for (std::uint32_t a = 0; a < p.size(); ++a) {
    std::uint32_t idx = 0;
    for (std::size_t t = 0; t < vars.size(); ++t) idx |= ((a >> vars[t]) & 1U) << t;
    out[idx] += p[a];
  }
  return out;
}

/// A ⫫ B | C by checking P(a,b,c) P(c) = P(a,c) P(b,c) over every assignment.
inline bool independent(const std::vector<double>& p, std::uint32_t a, std::uint32_t b, std::uint32_t c,
                        double atol = 1e-9) {
  const std::uint32_t all = a | b | c;
  for (std::uint32_t x = 0; x < p.size(); ++x) {
    if ((x & ~all) != 0) continue;
    const double pc = event(p, c, x);
    if (pc <= 1e-12) continue;
    const double lhs = event(p, all, x) / pc;
    const double rhs = event(p, a | c, x) / pc * (event(p, b | c, x) / pc);
    if (std::abs(lhs - rhs) > atol) return false;
  }
  return true;
}

inline Eigen::MatrixXd random_kernel(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) g(i, j) = normal(rng);
  }
  Eigen::MatrixXd s = g * g.transpose();
  const double scale = s.norm() * 1.05;
  return s / scale + 0.01 * Eigen::MatrixXd::Identity(n, n);
}

}  // namespace oracle

#endif  // DPPMARKOV_TESTS_ORACLES_HPP
