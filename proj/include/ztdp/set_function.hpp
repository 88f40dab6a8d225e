#pragma once

// Functions on the subsets of a small ground set {0..r-1}, stored densely by
// bitmask, and the subset-lattice transforms over them.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ring.hpp"

namespace ztdp {

inline constexpr std::size_t max_ground_set = 25;

template <CountingRing Ring>
class SetFunction {
 public:
  using value_type = typename Ring::value_type;

  SetFunction(Ring ring, std::size_t ground)
      : ring_(std::move(ring)), ground_(check_ground(ground)), table_(std::size_t{1} << ground, ring_.zero()) {}

  /// Singleton f_A: one at A, zero elsewhere.
  static SetFunction singleton(Ring ring, std::size_t ground, std::uint32_t subset) {
    SetFunction f(std::move(ring), ground);
    f[subset] = f.ring_.one();
    return f;
  }

  const Ring& ring() const { return ring_; }
  std::size_t ground_size() const { return ground_; }
  std::size_t table_size() const { return table_.size(); }
  value_type& operator[](std::uint32_t subset) { return table_.at(subset); }
  const value_type& operator[](std::uint32_t subset) const { return table_.at(subset); }

  friend bool operator==(const SetFunction& a, const SetFunction& b) {
    return a.ground_ == b.ground_ && a.table_ == b.table_;
  }

 private:
  static std::size_t check_ground(std::size_t r) {
    if (r > max_ground_set) throw std::invalid_argument("ground set larger than 25 elements");
    return r;
  }

  Ring ring_;
  std::size_t ground_;
  std::vector<value_type> table_;
};

/// f^0..f^r; rank i holds f on sets of size i and zero on larger sets.
template <CountingRing Ring>
using Relaxation = std::vector<SetFunction<Ring>>;

namespace detail {
template <CountingRing Ring>
void require_same_ground(const SetFunction<Ring>& f, const SetFunction<Ring>& g) {
  if (f.ground_size() != g.ground_size()) throw std::invalid_argument("set functions on different ground sets");
}
}  // namespace detail

/// ζf[Y] = Σ_{X⊆Y} f[X], one coordinate at a time.
template <CountingRing Ring>
SetFunction<Ring> zeta(SetFunction<Ring> f) {
  const auto& ring = f.ring();
  const std::uint32_t full = static_cast<std::uint32_t>(f.table_size());
  for (std::size_t b = 0; b < f.ground_size(); ++b)
    for (std::uint32_t y = 0; y < full; ++y)
      if (y >> b & 1u) ring.add_to(f[y], f[y ^ (1u << b)]);
  return f;
}

/// μf[Y] = Σ_{X⊆Y} (-1)^{|Y\X|} f[X].
template <CountingRing Ring>
SetFunction<Ring> mobius(SetFunction<Ring> f) {
  const auto& ring = f.ring();
  const std::uint32_t full = static_cast<std::uint32_t>(f.table_size());
  for (std::size_t b = 0; b < f.ground_size(); ++b)
    for (std::uint32_t y = 0; y < full; ++y)
      if (y >> b & 1u) ring.sub_from(f[y], f[y ^ (1u << b)]);
  return f;
}

/// (f * g)[X] = Σ_{X'⊆X} f[X'] g[X\X'], by direct summation.
template <CountingRing Ring>
SetFunction<Ring> subset_convolve(const SetFunction<Ring>& f, const SetFunction<Ring>& g) {
  detail::require_same_ground(f, g);
  const auto& ring = f.ring();
  SetFunction<Ring> out(ring, f.ground_size());
  const std::uint32_t full = static_cast<std::uint32_t>(f.table_size());
  for (std::uint32_t x = 0; x < full; ++x) {
    std::uint32_t sub = x;
    while (true) {
      ring.mul_add(out[x], f[sub], g[x ^ sub]);
      if (sub == 0) break;
      sub = (sub - 1) & x;
    }
  }
  return out;
}

/// (f *_u g)[X] = Σ_{X1∪X2=X} f[X1] g[X2], by direct summation over pairs.
template <CountingRing Ring>
SetFunction<Ring> union_product(const SetFunction<Ring>& f, const SetFunction<Ring>& g) {
  detail::require_same_ground(f, g);
  const auto& ring = f.ring();
  SetFunction<Ring> out(ring, f.ground_size());
  const std::uint32_t full = static_cast<std::uint32_t>(f.table_size());
  for (std::uint32_t a = 0; a < full; ++a) {
    if (ring.is_zero(f[a])) continue;
    for (std::uint32_t b = 0; b < full; ++b) ring.mul_add(out[a | b], f[a], g[b]);
  }
  return out;
}

/// Pointwise product.
template <CountingRing Ring>
SetFunction<Ring> pointwise_product(const SetFunction<Ring>& f, const SetFunction<Ring>& g) {
  detail::require_same_ground(f, g);
  SetFunction<Ring> out(f.ring(), f.ground_size());
  for (std::uint32_t x = 0; x < f.table_size(); ++x) f.ring().mul_add(out[x], f[x], g[x]);
  return out;
}

/// f^i[X] = f[X] when |X| ≤ i, else zero.
template <CountingRing Ring>
Relaxation<Ring> canonical_relaxation(const SetFunction<Ring>& f) {
  Relaxation<Ring> rel;
  for (std::size_t i = 0; i <= f.ground_size(); ++i) {
    SetFunction<Ring> fi(f.ring(), f.ground_size());
    for (std::uint32_t x = 0; x < f.table_size(); ++x)
      if (static_cast<std::size_t>(std::popcount(x)) <= i) fi[x] = f[x];
    rel.push_back(std::move(fi));
  }
  return rel;
}

/// True when rel[i][X] = f[X] for i = |X| and rel[i][X] = 0 for i < |X|.
template <CountingRing Ring>
bool is_relaxation_of(const Relaxation<Ring>& rel, const SetFunction<Ring>& f) {
  if (rel.size() != f.ground_size() + 1) return false;
  for (std::size_t i = 0; i < rel.size(); ++i)
    for (std::uint32_t x = 0; x < f.table_size(); ++x) {
      auto size = static_cast<std::size_t>(std::popcount(x));
      if (size == i && !(rel[i][x] == f[x])) return false;
      if (size > i && !f.ring().is_zero(rel[i][x])) return false;
    }
  return true;
}

/// out^i = Σ_j F^j *_u G^{i-j}, evaluated in the zeta domain: transform
/// every rank, convolve ranks pointwise, transform back. On the diagonal
/// (i = |X|) this equals the subset convolution of the relaxed functions.
template <CountingRing Ring>
Relaxation<Ring> ranked_union_convolve(const Relaxation<Ring>& f, const Relaxation<Ring>& g) {
  if (f.size() != g.size() || f.empty()) throw std::invalid_argument("relaxations differ in length");
  for (std::size_t i = 0; i < f.size(); ++i) detail::require_same_ground(f[i], g[i]);
  const auto& ring = f.front().ring();
  const std::size_t r = f.front().ground_size();
  Relaxation<Ring> zf, zg, out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    zf.push_back(zeta(f[i]));
    zg.push_back(zeta(g[i]));
  }
  for (std::size_t i = 0; i < f.size(); ++i) {
    SetFunction<Ring> acc(ring, r);
    for (std::size_t j = 0; j <= i; ++j)
      for (std::uint32_t x = 0; x < acc.table_size(); ++x) ring.mul_add(acc[x], zf[j][x], zg[i - j][x]);
    out.push_back(mobius(std::move(acc)));
  }
  return out;
}

}  // namespace ztdp
