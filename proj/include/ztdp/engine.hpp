#pragma once

// Polynomial-space evaluation over a modified nice decomposition.
//
// A query (x, X) returns the vector of zeta-transformed relaxation values
// (ζf_x^i)[X] for ranks i = 0..|B_x| (a single entry in rank-free mode).
// The query set X lives in one membership array that the recursion edits
// and restores, so live state is one vector per pending frame on the
// current root-to-leaf path. Only forget nodes branch (two child queries),
// which bounds the leaf work by (#leaves) * 2^h.
//
// Rank bookkeeping keeps f^i[X] = f[X] at i = |X| and f^i[X] = 0 below it,
// relative to the current bag: a forget node therefore reads its child at
// rank i+1, and an introduce node pads the new top rank with zero.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <future>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nice.hpp"
#include "problem.hpp"

namespace ztdp {

namespace detail {

template <CountingRing Ring>
class ZetaEvaluator {
 public:
  using value_type = typename Ring::value_type;
  using Vec = std::vector<value_type>;

  ZetaEvaluator(const ModifiedNiceDecomposition& nice, const ProblemSpec<Ring>& spec)
      : nice_(nice), spec_(spec), ring_(spec.ring), in_x_(nice.universe_size(), 0) {}

  Vec eval(std::size_t x, unsigned fork_levels) {
    const NiceNode& node = nice_.node(x);
    switch (node.kind) {
      case NodeKind::leaf: {
        ++leaf_evaluations_;
        return hold(Vec(ranks(node), spec_.leaf_value));
      }
      case NodeKind::aux_leaf: {
        ++leaf_evaluations_;
        auto [empty_value, edge_value] = spec_.aux_value(node.edge);
        Vec out(ranks(node), empty_value);
        bool covered = std::all_of(node.members.begin(), node.members.end(), [&](Vertex v) { return in_x_[v] != 0; });
        if (covered) {
          std::size_t from = spec_.ranked() ? node.members.size() : 0;
          for (std::size_t i = from; i < out.size(); ++i) ring_.add_to(out[i], edge_value);
        }
        return hold(std::move(out));
      }
      case NodeKind::introduce_vertex: {
        const Vertex v = node.vertex;
        const char had = in_x_[v];
        in_x_[v] = 0;
        Vec child = eval(node.children[0], fork_levels);
        in_x_[v] = had;
        expect(child, nice_.node(node.children[0]), x);
        if (spec_.ranked()) {
          child.push_back(ring_.zero());
          note(1);
        }
        return child;
      }
      case NodeKind::forget_vertex: {
        const Vertex v = node.vertex;
        const std::size_t c = node.children[0];
        Vec with, without;
        if (fork_levels > 0) {
          // Both branches run on private copies; the counters are then merged
          // as if the serial order (with, then without) had been followed, so
          // the reported statistics do not depend on the thread count.
          ZetaEvaluator branch_with = fresh_copy(), branch_without = fresh_copy();
          branch_with.in_x_[v] = 1;
          auto task = std::async(std::launch::async, [&branch_with, c, fork_levels] {
            return branch_with.eval(c, fork_levels - 1);
          });
          without = branch_without.eval(c, fork_levels - 1);
          with = task.get();
          leaf_evaluations_ += branch_with.leaf_evaluations_ + branch_without.leaf_evaluations_;
          peak_ = std::max({peak_, live_ + branch_with.peak_, live_ + with.size() + branch_without.peak_});
          live_ += with.size() + without.size();
        } else {
          in_x_[v] = 1;
          with = eval(c, 0);
          in_x_[v] = 0;
          without = eval(c, 0);
        }
        expect(with, nice_.node(c), x);
        expect(without, nice_.node(c), x);
        const std::size_t len = ranks(node);
        const std::size_t shift = spec_.ranked() ? 1 : 0;
        Vec out(len);
        for (std::size_t i = 0; i < len; ++i) {
          out[i] = with[i + shift];
          ring_.sub_from(out[i], without[i + shift]);
          if (spec_.forget_mode == ForgetMode::may_skip) ring_.add_to(out[i], without[i]);
        }
        hold(out);
        release(with);
        release(without);
        return out;
      }
      case NodeKind::join:
      case NodeKind::introduce_edge: {
        Vec left = eval(node.children[0], fork_levels);
        Vec right = eval(node.children[1], fork_levels);
        expect(left, node, x);
        expect(right, node, x);
        const std::size_t len = ranks(node);
        Vec out(len, ring_.zero());
        if (spec_.ranked()) {
          for (std::size_t i = 0; i < len; ++i)
            for (std::size_t j = 0; j <= i; ++j) ring_.mul_add(out[i], left[j], right[i - j]);
        } else {
          ring_.mul_add(out[0], left[0], right[0]);
        }
        hold(out);
        release(left);
        release(right);
        return out;
      }
    }
    throw std::logic_error("unknown node kind");
  }

  std::uint64_t leaf_evaluations() const { return leaf_evaluations_; }
  std::uint64_t peak_live_values() const { return peak_; }

 private:
  ZetaEvaluator fresh_copy() const {
    ZetaEvaluator copy(*this);
    copy.leaf_evaluations_ = copy.live_ = copy.peak_ = 0;
    return copy;
  }

  std::size_t ranks(const NiceNode& n) const { return spec_.ranked() ? n.bag.size() + 1 : 1; }

  void expect(const Vec& v, const NiceNode& owner, std::size_t at) const {
    if (v.size() != ranks(owner))
      throw std::logic_error("rank vector of length " + std::to_string(v.size()) + " where " +
                             std::to_string(ranks(owner)) + " expected, below node " + std::to_string(at));
  }

  void note(std::size_t count) {
    live_ += count;
    peak_ = std::max(peak_, live_);
  }
  Vec hold(Vec v) {
    note(v.size());
    return v;
  }
  void release(const Vec& v) { live_ -= v.size(); }

  const ModifiedNiceDecomposition& nice_;
  const ProblemSpec<Ring>& spec_;
  Ring ring_;
  std::vector<char> in_x_;
  std::uint64_t leaf_evaluations_ = 0;
  std::uint64_t live_ = 0;
  std::uint64_t peak_ = 0;
};

inline unsigned fork_levels_for(unsigned threads) {
  return threads <= 1 ? 0u : static_cast<unsigned>(std::bit_width(threads - 1));
}

}  // namespace detail

/// Evaluates spec on the decomposition in polynomial space; returns the
/// root value (ζf_root^0)[∅] = f[V].
template <CountingRing Ring>
Evaluation<typename Ring::value_type> evaluate(const ModifiedNiceDecomposition& nice, const ProblemSpec<Ring>& spec,
                                               const EvalOptions& options = {}) {
  const auto start = std::chrono::steady_clock::now();
  if (!nice.node(nice.root()).bag.empty()) throw std::invalid_argument("decomposition root bag is not empty");
  const ProblemSpec<Ring> bound = with_modulus(spec, options.modulus);
  detail::ZetaEvaluator<Ring> evaluator(nice, bound);
  auto root = evaluator.eval(nice.root(), detail::fork_levels_for(options.threads));
  if (root.empty()) throw std::logic_error("empty rank vector at the root");
  Evaluation<typename Ring::value_type> result{std::move(root[0]), {}};
  result.stats.leaf_evaluations = evaluator.leaf_evaluations();
  result.stats.peak_live_values = evaluator.peak_live_values();
  result.stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace ztdp
