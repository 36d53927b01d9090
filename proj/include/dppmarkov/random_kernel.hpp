#ifndef DPPMARKOV_RANDOM_KERNEL_HPP
#define DPPMARKOV_RANDOM_KERNEL_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "dppmarkov/node_set.hpp"
#include "dppmarkov/sym_matrix.hpp"

namespace dppmarkov {

/// Random valid kernel: G G^T for a standard normal G, rescaled affinely (aK + bI)
/// so that its spectrum spans exactly [eps, 1 - eps].
SymMatrix random_kernel(int n, std::mt19937_64& rng, double eps = 0.01);

/// Zero pattern planted by a random split V = L ∪ R ∪ H (L, R nonempty).
struct PlantedSplit {
  NodeSet left;
  NodeSet right;
  NodeSet hub;
};

/// As random_kernel, but rows of G in L (R) are supported on columns of L (R) only, so
/// K_{L,R} = 0 exactly. An empty hub gives a block-diagonal kernel; otherwise L and R
/// stay linked through H.
SymMatrix planted_kernel(int n, std::mt19937_64& rng, PlantedSplit* split = nullptr, double eps = 0.01);

/// Kernels drawn for sweeps: `count` kernels with sizes cycling through [n_min, n_max];
/// every `planted_every`-th kernel (if > 0) is planted.
std::vector<SymMatrix> kernel_ensemble(std::uint64_t seed, int count, int n_min, int n_max, int planted_every = 0);

}  // namespace dppmarkov

#endif  // DPPMARKOV_RANDOM_KERNEL_HPP
