#pragma once

#include <optional>
#include <random>
#include <vector>

#include "semired/filtration.hpp"

namespace semired {

struct RandomShape {
  std::vector<unsigned long> primes{2, 3};
  std::size_t min_n = 2, max_n = 4;
  std::size_t min_chains = 1, max_chains = 3;
  std::size_t max_length = 3;
  int entry_bound = 4;
};

struct RandomInstance {
  unsigned long p = 2;
  KFiltration filtration;
};

/// Each chain is cut from a random integer basis with entries in
/// [-bound, bound]; steps shrink by 0 or 1. Returns nullopt for a singular
/// basis or a chain with no nonzero step.
std::optional<RandomInstance> random_instance(std::mt19937_64& rng, const RandomShape& shape = {});

/// Random nonsingular basis with entries in [-bound, bound], some rows scaled by p.
QMat random_lattice_basis(std::mt19937_64& rng, std::size_t n, unsigned long p, int bound = 4);

}  // namespace semired
