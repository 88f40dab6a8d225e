#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "ring.hpp"

namespace ztdp {

/// How two children combine at a join (and at an introduce-edge node).
enum class JoinMode {
  disjoint_ranked,  // subset convolution, realised by rank convolution in the zeta domain
  union_rank_free,  // union product, a plain pointwise product in the zeta domain
};

/// What a forget node requires of the forgotten vertex.
enum class ForgetMode {
  must_cover,  // the vertex must be covered/matched
  may_skip,    // the vertex may also stay uncovered
};

/// Declarative counting problem over a modified nice decomposition. The
/// bag-subset argument X of every node means "exactly these bag vertices
/// are already covered".
template <CountingRing Ring>
struct ProblemSpec {
  using value_type = typename Ring::value_type;

  std::string name;
  Ring ring;
  JoinMode join_mode = JoinMode::disjoint_ranked;
  ForgetMode forget_mode = ForgetMode::must_cover;
  /// (value at ∅, value at e) of the auxiliary leaf carrying edge `index`.
  std::function<std::pair<value_type, value_type>(std::size_t index)> aux_value;
  value_type leaf_value;
  /// Coefficient reported for polynomial rings; whole value when unset.
  std::optional<std::size_t> answer_coefficient;

  bool ranked() const { return join_mode == JoinMode::disjoint_ranked; }
};

/// Rebinds a spec to modulus `m`, reducing its constants.
template <CountingRing Ring>
ProblemSpec<Ring> with_modulus(ProblemSpec<Ring> spec, std::optional<BigInt> m) {
  if (!m) return spec;
  Ring ring = spec.ring.with_modulus(std::move(m));
  spec.leaf_value = ring.reduce(std::move(spec.leaf_value));
  spec.aux_value = [ring, inner = std::move(spec.aux_value)](std::size_t e) {
    auto [empty, full] = inner(e);
    return std::pair{ring.reduce(std::move(empty)), ring.reduce(std::move(full))};
  };
  spec.ring = std::move(ring);
  return spec;
}

struct EvalStats {
  std::uint64_t leaf_evaluations = 0;     // (leaf, X) evaluations
  std::uint64_t peak_live_values = 0;     // ring values held at once
  std::uint64_t table_entries_peak = 0;   // table DP: entries held at once
  std::uint64_t table_entries_total = 0;  // table DP: entries materialised over the run
  std::uint64_t largest_table = 0;        // table DP: entries of the largest single table
  double wall_seconds = 0;
};

struct EvalOptions {
  std::optional<BigInt> modulus;
  unsigned threads = 1;
};

template <class Value>
struct Evaluation {
  Value value;
  EvalStats stats;
};

}  // namespace ztdp
