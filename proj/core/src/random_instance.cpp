#include "semired/random_instance.hpp"

namespace semired {

namespace {

std::size_t pick(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

QMat random_square(std::mt19937_64& rng, std::size_t n, int bound) {
  std::uniform_int_distribution<int> entry(-bound, bound);
  QMat out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = entry(rng);
  return out;
}

}  // namespace

std::optional<RandomInstance> random_instance(std::mt19937_64& rng, const RandomShape& shape) {
  RandomInstance out;
  out.p = shape.primes[pick(rng, 0, shape.primes.size() - 1)];
  const std::size_t n = pick(rng, shape.min_n, shape.max_n);
  const std::size_t s = pick(rng, shape.min_chains, shape.max_chains);
  out.filtration.n = n;
  for (std::size_t i = 0; i < s; ++i) {
    const QMat basis = random_square(rng, n, shape.entry_bound);
    if (rank(basis) < n) return std::nullopt;
    const std::size_t length = pick(rng, 1, shape.max_length);
    std::vector<KSubspace> chain;
    std::size_t dim = n;
    for (std::size_t j = 0; j < length; ++j) {
      dim -= std::min(dim, pick(rng, 0, 1));
      if (dim == 0) break;
      chain.emplace_back(n, basis.row_block(0, dim));
    }
    if (chain.empty()) return std::nullopt;
    out.filtration.chains.push_back(std::move(chain));
  }
  return out;
}

QMat random_lattice_basis(std::mt19937_64& rng, std::size_t n, unsigned long p, int bound) {
  while (true) {
    QMat b = random_square(rng, n, bound);
    for (std::size_t i = 0; i < n; ++i)
      if (pick(rng, 0, 2) == 0)
        for (std::size_t j = 0; j < n; ++j) b(i, j) *= Rational(p);
    if (rank(b) == n) return b;
  }
}

}  // namespace semired
