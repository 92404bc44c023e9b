#include "semired/flags.hpp"

#include <limits>

#include "semired/errors.hpp"

namespace semired {

namespace {

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

using ChainFlag = std::vector<FpSubspace>;

void extend_chain(const PrimeField& f, std::size_t n, const std::vector<std::size_t>& dims, std::size_t at,
                  const FpSubspace& current, ChainFlag& prefix, std::vector<ChainFlag>& out) {
  if (at == dims.size()) {
    out.push_back(prefix);
    return;
  }
  if (dims[at] == current.dim()) {
    prefix.push_back(current);
    extend_chain(f, n, dims, at + 1, current, prefix, out);
    prefix.pop_back();
    return;
  }
  for (const FpSubspace& inner : enumerate_subspaces(f, current.dim(), dims[at], std::numeric_limits<std::uint64_t>::max())) {
    const FpSubspace next(f, n, mul(f, inner.basis(), current.basis()));
    prefix.push_back(next);
    extend_chain(f, n, dims, at + 1, next, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::size_t TypeDatum::l(std::size_t chain, std::size_t j) const {
  std::size_t v = 0;
  for (const auto& [at, value] : jumps.at(chain))
    if (at <= j) v = value;
  return v;
}

std::vector<std::size_t> TypeDatum::step_dims(std::size_t chain) const {
  std::vector<std::size_t> out;
  const auto& js = jumps.at(chain);
  if (js.empty()) return out;
  for (std::size_t j = 1; j < js.back().first; ++j) out.push_back(n - l(chain, j));
  return out;
}

void TypeDatum::validate() const {
  for (const auto& js : jumps) {
    if (js.empty()) {
      if (n != 0) throw Error(ErrorKind::InvalidInput, "type table never reaches n");
      continue;
    }
    std::size_t last_j = 0, last_v = 0;
    for (const auto& [j, v] : js) {
      if (j <= last_j || v <= last_v) throw Error(ErrorKind::InvalidInput, "type jumps must strictly increase");
      if (v > n) throw Error(ErrorKind::InvalidInput, "type value exceeds n");
      last_j = j;
      last_v = v;
    }
    if (last_v != n) throw Error(ErrorKind::InvalidInput, "type table must end at n");
  }
}

TypeDatum TypeDatum::full_flags(std::size_t s, std::size_t n) {
  TypeDatum t;
  t.n = n;
  for (std::size_t i = 0; i < s; ++i) {
    std::vector<std::pair<std::size_t, std::size_t>> js;
    for (std::size_t j = 1; j <= n; ++j) js.emplace_back(j, j);
    t.jumps.push_back(std::move(js));
  }
  return t;
}

FilteredSpace to_filtered_space(const PrimeField& f, std::size_t n, const FlagPoint& point) {
  return FilteredSpace{f, n, point.chains};
}

std::uint64_t flag_count(std::uint32_t q, const TypeDatum& t) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < t.s(); ++i) {
    std::size_t prev = t.n;
    for (std::size_t d : t.step_dims(i)) {
      total = sat_mul(total, gaussian_binomial(q, prev, d));
      prev = d;
    }
  }
  return total;
}

void for_each_flag(std::uint32_t q, const TypeDatum& t, std::uint64_t cap,
                   const std::function<void(const FlagPoint&)>& visit) {
  t.validate();
  if (!is_prime(q)) throw Error(ErrorKind::InvalidInput, "q must be prime");
  const std::uint64_t total = flag_count(q, t);
  if (total > cap)
    throw Error(ErrorKind::EnumerationTooLarge,
                std::to_string(total) + " flag points exceed the cap " + std::to_string(cap));
  const PrimeField f{q};
  std::vector<std::vector<ChainFlag>> per_chain;
  for (std::size_t i = 0; i < t.s(); ++i) {
    std::vector<ChainFlag> flags;
    ChainFlag prefix;
    extend_chain(f, t.n, t.step_dims(i), 0, FpSubspace::whole(f, t.n), prefix, flags);
    per_chain.push_back(std::move(flags));
  }
  std::vector<std::size_t> idx(t.s(), 0);
  FlagPoint point;
  point.chains.resize(t.s());
  while (true) {
    for (std::size_t i = 0; i < t.s(); ++i) point.chains[i] = per_chain[i][idx[i]];
    visit(point);
    std::size_t i = 0;
    while (i < t.s() && ++idx[i] == per_chain[i].size()) idx[i++] = 0;
    if (i == t.s()) break;
  }
}

std::vector<FlagPoint> enumerate_flags(std::uint32_t q, const TypeDatum& t, std::uint64_t cap) {
  std::vector<FlagPoint> out;
  for_each_flag(q, t, cap, [&](const FlagPoint& x) { out.push_back(x); });
  return out;
}

FlagCount count_semistable(std::uint32_t q, const TypeDatum& t, std::uint64_t cap) {
  FlagCount c;
  const PrimeField f{q};
  for_each_flag(q, t, cap, [&](const FlagPoint& x) {
    ++c.total;
    if (is_semistable(to_filtered_space(f, t.n, x), cap).semistable) ++c.semistable;
  });
  return c;
}

std::string csv_row(std::uint32_t q, const TypeDatum& t, const FlagCount& c) {
  return std::to_string(q) + "," + t.id + "," + std::to_string(c.total) + "," + std::to_string(c.semistable);
}

}  // namespace semired
