#include "semired/filtration.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <numeric>

#include "semired/errors.hpp"

namespace semired {

FpSubspace::FpSubspace(const PrimeField& f, std::size_t n, const FpMat& spanning_rows) : n_(n) {
  if (spanning_rows.rows() == 0) {
    basis_ = FpMat(0, n);
    return;
  }
  if (spanning_rows.cols() != n) throw Error(ErrorKind::InvalidInput, "subspace width mismatch");
  auto e = rref(f, spanning_rows);
  basis_ = e.form.rows() == 0 ? FpMat(0, n) : std::move(e.form);
  pivots_ = std::move(e.pivots);
}

FpSubspace FpSubspace::whole(const PrimeField& f, std::size_t n) {
  return FpSubspace(f, n, FpMat::identity(n, 1u, 0u));
}

FpSubspace FpSubspace::zero(std::size_t n) { return from_rref(n, FpMat(0, n), {}); }

FpSubspace FpSubspace::from_rref(std::size_t n, FpMat rref_basis, std::vector<std::size_t> pivots) {
  FpSubspace s;
  s.n_ = n;
  s.basis_ = std::move(rref_basis);
  s.pivots_ = std::move(pivots);
  return s;
}

namespace {

bool contains(const PrimeField& f, const FpSubspace& big, const FpSubspace& small) {
  if (small.dim() == 0) return true;
  if (small.dim() > big.dim()) return false;
  return rank(f, vstack(big.basis(), small.basis())) == big.dim();
}

std::size_t intersection_dim(const PrimeField& f, const FpSubspace& a, const FpSubspace& b) {
  if (a.dim() == 0 || b.dim() == 0) return 0;
  return a.dim() + b.dim() - rank(f, vstack(a.basis(), b.basis()));
}

}  // namespace

void FilteredSpace::validate() const {
  for (const auto& chain : chains) {
    const FpSubspace* prev = nullptr;
    for (const auto& step : chain) {
      if (step.ambient_dim() != n) throw Error(ErrorKind::InvalidInput, "filtration step has wrong ambient dimension");
      if (prev && !contains(field, *prev, step))
        throw Error(ErrorKind::InvalidInput, "filtration chain is not decreasing");
      prev = &step;
    }
  }
}

void KFiltration::validate() const {
  for (const auto& chain : chains) {
    const KSubspace* prev = nullptr;
    for (const auto& step : chain) {
      if (step.ambient_dim() != n) throw Error(ErrorKind::InvalidInput, "filtration step has wrong ambient dimension");
      if (prev && !prev->contains(step)) throw Error(ErrorKind::InvalidInput, "filtration chain is not decreasing");
      prev = &step;
    }
  }
}

std::size_t KFiltration::length_sum() const {
  std::size_t total = 0;
  for (const auto& c : chains) total += c.size();
  return total;
}

std::size_t weight(const FilteredSpace& x) {
  std::size_t w = 0;
  for (const auto& chain : x.chains)
    for (const auto& step : chain) w += step.dim();
  return w;
}

std::size_t subspace_weight(const FilteredSpace& x, const FpSubspace& w) {
  std::size_t total = 0;
  for (const auto& chain : x.chains)
    for (const auto& step : chain) total += intersection_dim(x.field, w, step);
  return total;
}

Rational slope(const FilteredSpace& x) {
  if (x.n == 0) throw Error(ErrorKind::ZeroDimensional, "slope of the zero space");
  Rational s(static_cast<unsigned long>(weight(x)), static_cast<unsigned long>(x.n));
  s.canonicalize();
  return s;
}

FilteredSpace induced_sub(const FilteredSpace& x, const FpSubspace& w) {
  const PrimeField& f = x.field;
  if (w.ambient_dim() != x.n)
    throw Error(ErrorKind::NotContained, "subspace not contained in V");
  FilteredSpace out{f, w.dim(), {}};
  for (const auto& chain : x.chains) {
    std::vector<FpSubspace> steps;
    for (const auto& step : chain) {
      const FpMat inter = intersect_rowspaces(f, w.basis(), step.basis(), x.n);
      FpMat coords(0, w.dim());
      for (std::size_t i = 0; i < inter.rows(); ++i) {
        auto c = solve_left(f, w.basis(), inter.row(i));
        assert(c);
        coords.append_row(*c);
      }
      steps.emplace_back(f, w.dim(), coords);
    }
    out.chains.push_back(std::move(steps));
  }
  return out;
}

std::vector<std::uint32_t> quotient_coordinates(const PrimeField& f, const FpSubspace& w,
                                                const std::vector<std::uint32_t>& v) {
  std::vector<std::uint32_t> r = v;
  const auto& piv = w.pivots();
  for (std::size_t k = 0; k < piv.size(); ++k) {
    const std::uint32_t c = r[piv[k]];
    if (c == 0) continue;
    for (std::size_t j = 0; j < r.size(); ++j) r[j] = f.sub(r[j], f.mul(c, w.basis()(k, j)));
  }
  std::vector<std::uint32_t> out;
  std::size_t k = 0;
  for (std::size_t j = 0; j < r.size(); ++j) {
    if (k < piv.size() && piv[k] == j) {
      ++k;
      continue;
    }
    out.push_back(r[j]);
  }
  return out;
}

FilteredSpace induced_quotient(const FilteredSpace& x, const FpSubspace& w) {
  const PrimeField& f = x.field;
  if (w.ambient_dim() != x.n) throw Error(ErrorKind::NotContained, "subspace not contained in V");
  const std::size_t qn = x.n - w.dim();
  FilteredSpace out{f, qn, {}};
  for (const auto& chain : x.chains) {
    std::vector<FpSubspace> steps;
    for (const auto& step : chain) {
      FpMat img(0, qn);
      for (std::size_t i = 0; i < step.dim(); ++i) img.append_row(quotient_coordinates(f, w, step.basis().row(i)));
      steps.emplace_back(f, qn, img);
    }
    out.chains.push_back(std::move(steps));
  }
  return out;
}

std::uint64_t gaussian_binomial(std::uint64_t p, std::size_t n, std::size_t d) {
  if (d > n) return 0;
  // Sum over pivot patterns of p^(free entries): computed by the recurrence
  // [n, d] = [n-1, d-1] + p^d [n-1, d].
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::vector<std::uint64_t>> t(n + 1, std::vector<std::uint64_t>(n + 1, 0));
  for (std::size_t i = 0; i <= n; ++i) t[i][0] = 1;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t k = 1; k <= i; ++k) {
      std::uint64_t pk = 1;
      for (std::size_t e = 0; e < k && pk != kMax; ++e) pk = pk > kMax / p ? kMax : pk * p;
      const std::uint64_t a = t[i - 1][k - 1];
      const std::uint64_t b = t[i - 1][k];
      const std::uint64_t pb = (b != 0 && pk > kMax / b) ? kMax : pk * b;
      t[i][k] = a > kMax - pb ? kMax : a + pb;
    }
  return t[n][d];
}

void for_each_subspace(const PrimeField& f, std::size_t n, std::optional<std::size_t> d, std::uint64_t cap,
                       const std::function<bool(const FpSubspace&)>& visit) {
  std::uint64_t total = 0;
  const std::size_t lo = d ? *d : 0, hi = d ? *d : n;
  for (std::size_t k = lo; k <= hi; ++k) {
    const std::uint64_t c = gaussian_binomial(f.p, n, k);
    total = total > std::numeric_limits<std::uint64_t>::max() - c ? std::numeric_limits<std::uint64_t>::max()
                                                                 : total + c;
  }
  if (total > cap)
    throw Error(ErrorKind::EnumerationTooLarge,
                std::to_string(total) + " subspaces exceed the enumeration cap " + std::to_string(cap));

  for (std::size_t k = lo; k <= hi; ++k) {
    if (k == 0) {
      if (!visit(FpSubspace::zero(n))) return;
      continue;
    }
    std::vector<std::size_t> piv(k);
    std::iota(piv.begin(), piv.end(), 0);
    while (true) {
      // free positions: (row r, column c) with c > piv[r], c not a pivot
      std::vector<bool> is_piv(n, false);
      for (auto c : piv) is_piv[c] = true;
      std::vector<std::pair<std::size_t, std::size_t>> free;
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = piv[r] + 1; c < n; ++c)
          if (!is_piv[c]) free.emplace_back(r, c);
      FpMat m(k, n, 0);
      for (std::size_t r = 0; r < k; ++r) m(r, piv[r]) = 1;
      std::vector<std::uint32_t> digits(free.size(), 0);
      while (true) {
        for (std::size_t i = 0; i < free.size(); ++i) m(free[i].first, free[i].second) = digits[i];
        if (!visit(FpSubspace::from_rref(n, m, piv))) return;
        std::size_t i = 0;
        while (i < digits.size() && ++digits[i] == f.p) digits[i++] = 0;
        if (i == digits.size()) break;
      }
      // next combination
      std::size_t i = k;
      while (i > 0 && piv[i - 1] == n - k + (i - 1)) --i;
      if (i == 0) break;
      ++piv[i - 1];
      for (std::size_t j = i; j < k; ++j) piv[j] = piv[j - 1] + 1;
    }
  }
}

std::vector<FpSubspace> enumerate_subspaces(const PrimeField& f, std::size_t n, std::optional<std::size_t> d,
                                            std::uint64_t cap) {
  std::vector<FpSubspace> out;
  for_each_subspace(f, n, d, cap, [&](const FpSubspace& s) {
    out.push_back(s);
    return true;
  });
  return out;
}

namespace {

// a/da vs b/db by cross multiplication.
int compare_slopes(std::size_t wa, std::size_t da, std::size_t wb, std::size_t db) {
  const auto l = static_cast<unsigned long long>(wa) * db;
  const auto r = static_cast<unsigned long long>(wb) * da;
  return l < r ? -1 : (l > r ? 1 : 0);
}

Rational make_slope(std::size_t w, std::size_t d) {
  Rational s(static_cast<unsigned long>(w), static_cast<unsigned long>(d));
  s.canonicalize();
  return s;
}

}  // namespace

StabilityReport is_semistable(const FilteredSpace& x, std::uint64_t cap) {
  StabilityReport rep;
  rep.slope = slope(x);
  const std::size_t wv = weight(x);
  for_each_subspace(x.field, x.n, std::nullopt, cap, [&](const FpSubspace& w) {
    if (w.dim() == 0) return true;
    const std::size_t ww = subspace_weight(x, w);
    if (compare_slopes(ww, w.dim(), wv, x.n) > 0) {
      rep.semistable = false;
      rep.witness = w;
      rep.witness_slope = make_slope(ww, w.dim());
      return false;
    }
    return true;
  });
  return rep;
}

bool lex_less(const Rational& slope_a, std::size_t dim_a, const Rational& slope_b, std::size_t dim_b) {
  if (slope_a != slope_b) return slope_a < slope_b;
  return dim_a < dim_b;
}

Destabilizer max_destabilizer(const FilteredSpace& x, std::uint64_t cap) {
  if (x.n == 0) throw Error(ErrorKind::ZeroDimensional, "destabilizer of the zero space");
  std::optional<FpSubspace> best;
  std::size_t best_w = 0, best_d = 0, ties = 0;
  for_each_subspace(x.field, x.n, std::nullopt, cap, [&](const FpSubspace& w) {
    if (w.dim() == 0) return true;
    const std::size_t ww = subspace_weight(x, w);
    int cmp = best ? compare_slopes(ww, w.dim(), best_w, best_d) : 1;
    if (cmp == 0) cmp = w.dim() < best_d ? -1 : (w.dim() > best_d ? 1 : 0);
    if (cmp > 0) {
      best = w;
      best_w = ww;
      best_d = w.dim();
      ties = 1;
    } else if (cmp == 0) {
      ++ties;
    }
    return true;
  });
  if (ties > 1)
    throw Error(ErrorKind::UniquenessViolation,
                "maximal destabilizing subspace is not unique (" + std::to_string(ties) + " maximisers)");
  return {*best, make_slope(best_w, best_d), best_d};
}

FilteredSpace residue_filtration(const Lattice& lattice, const KFiltration& fil, unsigned long p) {
  const ChainModuleSpace red = reduce_lattice(lattice, fil.chains, p, 1);
  FilteredSpace out{PrimeField{static_cast<std::uint32_t>(p)}, fil.n, {}};
  for (const auto& chain : red.submodules) {
    std::vector<FpSubspace> steps;
    for (const auto& img : chain) {
      FpMat m(img.rows(), fil.n, 0);
      for (std::size_t i = 0; i < img.rows(); ++i)
        for (std::size_t j = 0; j < fil.n; ++j) m(i, j) = static_cast<std::uint32_t>(img(i, j).get_ui());
      steps.emplace_back(out.field, fil.n, m);
    }
    out.chains.push_back(std::move(steps));
  }
  return out;
}

namespace {

QMat intersect_q(const QMat& a, const QMat& b, std::size_t n) {
  if (a.rows() == 0 || b.rows() == 0) return QMat(0, n);
  // x a = y b: null space of [a; -b]^T.
  QMat stacked = a;
  for (std::size_t i = 0; i < b.rows(); ++i) {
    auto r = b.row(i);
    for (auto& v : r) v = -v;
    stacked.append_row(r);
  }
  const auto e = rref(stacked.transposed());
  const std::size_t m = stacked.rows();
  std::vector<bool> is_piv(m, false);
  for (auto c : e.pivots) is_piv[c] = true;
  QMat out(0, n);
  for (std::size_t free = 0; free < m; ++free) {
    if (is_piv[free]) continue;
    std::vector<Rational> coeff(m, Rational(0));
    coeff[free] = 1;
    for (std::size_t k = 0; k < e.pivots.size(); ++k) coeff[e.pivots[k]] = -e.form(k, free);
    std::vector<Rational> ca(coeff.begin(), coeff.begin() + static_cast<long>(a.rows()));
    out.append_row(mul(ca, a));
  }
  if (out.rows() == 0) return QMat(0, n);
  auto r = rref(out).form;
  return r.rows() == 0 ? QMat(0, n) : r;
}

QMat sum_q(const QMat& a, const QMat& b, std::size_t n) {
  QMat s = vstack(a, b);
  if (s.rows() == 0) return QMat(0, n);
  auto r = rref(s).form;
  return r.rows() == 0 ? QMat(0, n) : r;
}

// Full chain V = F^0 ⊇ F^1 ⊇ ... ⊇ F^l ⊇ 0 as bases.
std::vector<QMat> full_chain(const std::vector<KSubspace>& chain, std::size_t n) {
  std::vector<QMat> out{identity_q(n)};
  for (const auto& s : chain) out.push_back(s.basis().rows() ? s.basis() : QMat(0, n));
  out.push_back(QMat(0, n));
  return out;
}

}  // namespace

std::optional<QMat> common_adapted_basis(const KFiltration& fil) {
  const std::size_t n = fil.n;
  const std::vector<QMat> c1 = fil.chains.size() > 0 ? full_chain(fil.chains[0], n) : full_chain({}, n);
  const std::vector<QMat> c2 = fil.chains.size() > 1 ? full_chain(fil.chains[1], n) : full_chain({}, n);
  QMat basis(0, n);
  for (std::size_t a = c1.size() - 1; a-- > 0;) {
    for (std::size_t b = c2.size() - 1; b-- > 0;) {
      const QMat cell = intersect_q(c1[a], c2[b], n);
      if (cell.rows() == 0) continue;
      const QMat below = sum_q(intersect_q(c1[a + 1], c2[b], n), intersect_q(c1[a], c2[b + 1], n), n);
      QMat span = below;
      for (std::size_t i = 0; i < cell.rows(); ++i) {
        QMat trial = vstack(span, cell.row_block(i, 1));
        if (rank(trial) > rank(span.rows() ? span : QMat(0, n))) {
          span = trial;
          basis.append_row(cell.row(i));
        }
      }
    }
  }
  if (basis.rows() != n || rank(basis) != n) return std::nullopt;
  for (const auto& chain : fil.chains)
    for (const auto& step : chain) {
      std::size_t inside = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (step.dim() > 0 && rank(vstack(step.basis(), basis.row_block(i, 1))) == step.dim()) ++inside;
      if (inside != step.dim()) return std::nullopt;
    }
  return basis;
}

GenericStability generic_semistability(const KFiltration& fil, unsigned long p, std::uint64_t cap) {
  GenericStability out;
  if (fil.n == 0) return out;
  if (auto basis = common_adapted_basis(fil)) {
    const std::size_t n = fil.n;
    // membership[s][i]: basis vector i lies in step s
    std::vector<std::vector<bool>> membership;
    std::size_t total = 0;
    for (const auto& chain : fil.chains)
      for (const auto& step : chain) {
        std::vector<bool> in(n, false);
        for (std::size_t i = 0; i < n; ++i)
          in[i] = step.dim() > 0 && rank(vstack(step.basis(), basis->row_block(i, 1))) == step.dim();
        membership.push_back(std::move(in));
        total += step.dim();
      }
    // The destabilizer is stable under the torus diagonal in this basis, so
    // coordinate subspaces suffice.
    out.verdict = GenericStability::Verdict::Semistable;
    out.method = "exact: common adapted basis";
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
      std::size_t w = 0, d = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (!((mask >> i) & 1)) continue;
        ++d;
        for (const auto& in : membership) w += in[i] ? 1 : 0;
      }
      if (compare_slopes(w, d, total, n) > 0) {
        out.verdict = GenericStability::Verdict::Unstable;
        break;
      }
    }
    return out;
  }
  for (unsigned long q : {5ul, 7ul, 11ul, 13ul}) {
    if (q == p) continue;
    std::uint64_t count = 0;
    for (std::size_t d = 0; d <= fil.n; ++d) count += gaussian_binomial(q, fil.n, d);
    if (count > cap) break;
    const FilteredSpace red = residue_filtration(Lattice::standard(fil.n), fil, q);
    if (is_semistable(red, cap).semistable) {
      out.verdict = GenericStability::Verdict::Semistable;
      out.method = "verified over F_p reduction at p' = " + std::to_string(q);
      return out;
    }
  }
  out.method = "inconclusive: every auxiliary reduction tried is unstable";
  return out;
}

}  // namespace semired
