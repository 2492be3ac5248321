#pragma once

// Adaptive control with an unknown parameter taking one of finitely many
// values theta^1..theta^m, treated as a POMDP whose belief is the posterior
// over hypotheses. Dynamics are deterministic given theta: the observed next
// state is next(x, u, outcome(x, i, u)).

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <memory>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wordle/errors.hpp"

namespace wordle::adaptive {

template <class M>
concept HypothesisModel = requires(const M& m, const typename M::State& x, const typename M::Control& u,
                                   const typename M::Outcome& z, std::size_t i) {
  { m.hypothesis_count() } -> std::convertible_to<std::size_t>;
  { m.controls(x) } -> std::convertible_to<std::vector<typename M::Control>>;
  { m.outcome(x, i, u) } -> std::convertible_to<typename M::Outcome>;
  { m.next(x, u, z) } -> std::convertible_to<typename M::State>;
  { m.stage_cost(x, i, u) } -> std::convertible_to<typename M::Cost>;
  { m.terminal(x) } -> std::convertible_to<bool>;
  { m.terminal_cost(x) } -> std::convertible_to<typename M::Cost>;
  { m.key(x) } -> std::convertible_to<std::string>;
  { m.describe(u) } -> std::convertible_to<std::string>;
  { m.describe(z) } -> std::convertible_to<std::string>;
  requires std::totally_ordered<typename M::Outcome>;
};

// f(x, theta^i, u).
template <HypothesisModel M>
typename M::State transition(const M& model, const typename M::State& x, std::size_t i,
                             const typename M::Control& u) {
  return model.next(x, u, model.outcome(x, i, u));
}

// Posterior over hypotheses. Stored as a support set, with explicit weights
// only when the belief is not uniform on its support.
template <class Value>
class Belief {
 public:
  static Belief uniform(std::size_t hypotheses) {
    Belief b;
    b.m_ = hypotheses;
    b.support_.resize(hypotheses);
    for (std::size_t i = 0; i < hypotheses; ++i) b.support_[i] = i;
    return b;
  }

  static Belief uniform_on(std::size_t hypotheses, std::vector<std::size_t> support) {
    Belief b;
    b.m_ = hypotheses;
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    if (support.empty() || support.back() >= hypotheses) throw ConfigError("belief support out of range or empty");
    b.support_ = std::move(support);
    return b;
  }

  // Weights are normalized here; all-zero weights are rejected.
  static Belief from_weights(std::vector<Value> weights) {
    Belief b;
    b.m_ = weights.size();
    Value sum{0};
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (weights[i] < Value{0}) throw ConfigError("negative belief weight");
      if (weights[i] != Value{0}) {
        b.support_.push_back(i);
        sum += weights[i];
      }
    }
    if (b.support_.empty()) throw ConfigError("belief has no mass");
    for (auto& w : weights) w /= sum;
    b.weights_ = std::move(weights);
    return b;
  }

  std::size_t hypotheses() const { return m_; }
  const std::vector<std::size_t>& support() const { return support_; }
  bool is_uniform() const { return weights_.empty(); }

  Value probability(std::size_t i) const {
    if (!is_uniform()) return weights_[i];
    return std::binary_search(support_.begin(), support_.end(), i)
               ? Value{1} / static_cast<Value>(static_cast<std::int64_t>(support_.size()))
               : Value{0};
  }

  // Keeps only the hypotheses in `survivors` (a sorted subset of the support).
  Belief restricted(std::vector<std::size_t> survivors) const {
    if (survivors.empty()) throw InconsistentFeedback("observation is inconsistent with every hypothesis");
    if (is_uniform()) return uniform_on(m_, std::move(survivors));
    std::vector<Value> w(m_, Value{0});
    for (auto i : survivors) w[i] = weights_[i];
    return from_weights(std::move(w));
  }

 private:
  std::size_t m_ = 0;
  std::vector<std::size_t> support_;
  std::vector<Value> weights_;
};

namespace detail {

// Support members grouped by the outcome control u would produce.
template <HypothesisModel M>
std::map<typename M::Outcome, std::vector<std::size_t>> group_by_outcome(const M& model,
                                                                          const typename M::State& x,
                                                                          const std::vector<std::size_t>& support,
                                                                          const typename M::Control& u) {
  std::map<typename M::Outcome, std::vector<std::size_t>> groups;
  for (auto i : support) groups[model.outcome(x, i, u)].push_back(i);
  return groups;
}

// Index of the smallest value; values within `tolerance` of it count as tied
// and the earliest wins.
template <class Value>
std::size_t argmin_first(const std::vector<Value>& values, Value tolerance) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < values[best]) best = i;
  }
  for (std::size_t i = 0; i < best; ++i) {
    if (values[i] - values[best] <= tolerance) return i;
  }
  return best;
}

}  // namespace detail

// Bayes step for deterministic dynamics: hypotheses whose predicted successor
// differs from x_next are dropped and the rest renormalized. Throws
// InconsistentFeedback when nothing survives.
template <class Value, HypothesisModel M>
Belief<Value> belief_update(const Belief<Value>& belief, const typename M::State& x, const typename M::Control& u,
                            const typename M::State& x_next, const M& model) {
  const std::string target = model.key(x_next);
  std::vector<std::size_t> survivors;
  for (auto& [z, members] : detail::group_by_outcome(model, x, belief.support(), u)) {
    if (model.key(model.next(x, u, z)) == target) survivors.insert(survivors.end(), members.begin(), members.end());
  }
  std::sort(survivors.begin(), survivors.end());
  return belief.restricted(std::move(survivors));
}

template <class Control, class Value>
struct Choice {
  Control control{};
  Value value{};
  // Lookahead value of every candidate, in candidate order.
  std::vector<Value> values;
};

// One-step lookahead in value space: the control minimizing
//   sum_i b_i [ g(x, theta^i, u) + J_i(f(x, theta^i, u)) ]
// over `candidates` (all of U(x) when empty). `approximation(i, x_next)`
// gives J_i; the shared case just ignores i. Ties within `tolerance` go to
// the earliest candidate.
template <class Value, HypothesisModel M, class Approximation>
Choice<typename M::Control, Value> value_space_step(const typename M::State& x, const Belief<Value>& belief,
                                                     const Approximation& approximation, const M& model,
                                                     std::vector<typename M::Control> candidates = {},
                                                     Value tolerance = Value{0}) {
  if (candidates.empty()) candidates = model.controls(x);
  if (candidates.empty()) throw Error("empty control set");
  Choice<typename M::Control, Value> out;
  for (const auto& u : candidates) {
    Value q{0};
    for (auto& [z, members] : detail::group_by_outcome(model, x, belief.support(), u)) {
      const auto x_next = model.next(x, u, z);
      for (auto i : members) {
        const Value cost = static_cast<Value>(model.stage_cost(x, i, u)) + approximation(i, x_next);
        q += belief.probability(i) * cost;
      }
    }
    out.values.push_back(q);
  }
  const auto best = detail::argmin_first(out.values, tolerance);
  out.control = candidates[best];
  out.value = out.values[best];
  return out;
}

// Cost of following `policy` from x when theta = theta^i, by propagating the
// state forward (the "oracle" assumption). Throws DivergenceError past `cap`
// stages.
template <class Value, HypothesisModel M, class Policy>
Value policy_cost(const M& model, typename M::State x, std::size_t i, const Policy& policy, std::size_t cap) {
  Value total{0};
  for (std::size_t step = 0; !model.terminal(x); ++step) {
    if (step >= cap) throw DivergenceError("base policy did not terminate within " + std::to_string(cap) + " stages");
    const auto u = policy(i, x);
    total += static_cast<Value>(model.stage_cost(x, i, u));
    x = transition(model, x, i, u);
  }
  return total + static_cast<Value>(model.terminal_cost(x));
}

// Rollout over per-hypothesis base policies: value_space_step with J_i the
// cost of policy(i, .) simulated under theta^i.
template <class Value, HypothesisModel M, class Policy>
Choice<typename M::Control, Value> hypothesis_rollout_step(const typename M::State& x, const Belief<Value>& belief,
                                                            const Policy& policy, const M& model, std::size_t cap,
                                                            std::vector<typename M::Control> candidates = {},
                                                            Value tolerance = Value{0}) {
  auto approximation = [&](std::size_t i, const typename M::State& x_next) {
    return policy_cost<Value>(model, x_next, i, policy, cap);
  };
  return value_space_step<Value>(x, belief, approximation, model, std::move(candidates), tolerance);
}

// Optimal closed-loop policy as a tree: a control per node, a subtree per
// outcome.
template <class Control, class Outcome>
struct PolicyNode {
  Control control{};
  std::vector<std::pair<Outcome, std::shared_ptr<const PolicyNode>>> children;
};

template <class Control, class Outcome, class Value>
struct DpResult {
  Value cost{};
  Control first{};
  std::shared_ptr<const PolicyNode<Control, Outcome>> tree;
  std::size_t nodes = 0;
};

struct DpOptions {
  std::size_t node_budget = 1'000'000;
  // Stages before the terminal cost applies; 0 means run to termination.
  std::size_t horizon = 0;
};

namespace detail {

template <class Value, HypothesisModel M>
class ExactSolver {
 public:
  using Node = PolicyNode<typename M::Control, typename M::Outcome>;
  struct Entry {
    Value cost;
    std::shared_ptr<const Node> node;
  };

  ExactSolver(const M& model, const Belief<Value>& prior, DpOptions options)
      : model_(model), prior_(prior), options_(options) {}

  // Expected cost from x given that theta lies in `support`, with the prior
  // restricted to it. Returns false when x is already on the current path.
  bool solve(const typename M::State& x, const std::vector<std::size_t>& support, std::size_t depth, Entry& out) {
    const Value mass = mass_of(support);
    if (model_.terminal(x) || (options_.horizon && depth >= options_.horizon)) {
      out = {static_cast<Value>(model_.terminal_cost(x)) * mass, nullptr};
      return true;
    }
    std::string key = model_.key(x);
    key.push_back('|');
    for (auto i : support) key += std::to_string(i) + ",";
    if (options_.horizon) key += "@" + std::to_string(depth);
    if (auto it = memo_.find(key); it != memo_.end()) {
      out = it->second;
      return true;
    }
    if (on_path_.count(key)) return false;
    if (memo_.size() >= options_.node_budget) {
      throw InstanceTooLarge("exact information DP exceeded its node budget of " +
                             std::to_string(options_.node_budget) + " states");
    }
    on_path_.insert(key);
    bool found = false;
    Entry best{};
    for (const auto& u : model_.controls(x)) {
      Value q{0};
      auto node = std::make_shared<Node>();
      node->control = u;
      bool ok = true;
      for (auto& [z, members] : group_by_outcome(model_, x, support, u)) {
        for (auto i : members) q += prior_.probability(i) * static_cast<Value>(model_.stage_cost(x, i, u));
        Entry child;
        if (!solve(model_.next(x, u, z), members, depth + 1, child)) {
          ok = false;
          break;
        }
        q += child.cost;
        if (child.node) node->children.emplace_back(z, child.node);
      }
      if (!ok) continue;
      if (!found || q < best.cost) {
        best = {q, node};
        found = true;
      }
    }
    on_path_.erase(key);
    if (!found) throw Error("no control leads anywhere new from state " + model_.key(x));
    memo_.emplace(std::move(key), best);
    out = best;
    return true;
  }

  std::size_t nodes() const { return memo_.size(); }

 private:
  Value mass_of(const std::vector<std::size_t>& support) const {
    Value m{0};
    for (auto i : support) m += prior_.probability(i);
    return m;
  }

  const M& model_;
  const Belief<Value>& prior_;
  DpOptions options_;
  std::unordered_map<std::string, Entry> memo_;
  std::set<std::string> on_path_;
};

}  // namespace detail

// Optimal expected cost from x under the given belief, memoized on
// (state, belief support). Weighted costs are accumulated with the prior, so
// the memo is exact for any belief that is the prior restricted to its
// support. First-found wins among equal-cost controls, in controls() order.
template <class Value, HypothesisModel M>
DpResult<typename M::Control, typename M::Outcome, Value> exact_information_dp(const M& model,
                                                                                const typename M::State& x0,
                                                                                const Belief<Value>& belief,
                                                                                DpOptions options = {}) {
  detail::ExactSolver<Value, M> solver(model, belief, options);
  typename detail::ExactSolver<Value, M>::Entry root;
  solver.solve(x0, belief.support(), 0, root);
  DpResult<typename M::Control, typename M::Outcome, Value> out;
  out.cost = root.cost;
  out.tree = root.node;
  if (root.node) out.first = root.node->control;
  out.nodes = solver.nodes();
  return out;
}

// Nested text rendering of a policy tree, one control per line.
template <HypothesisModel M>
std::string format_policy_tree(const M& model,
                               const std::shared_ptr<const PolicyNode<typename M::Control, typename M::Outcome>>& root) {
  std::ostringstream out;
  std::function<void(const PolicyNode<typename M::Control, typename M::Outcome>&, int)> walk =
      [&](const auto& node, int depth) {
        out << model.describe(node.control) << '\n';
        for (const auto& [z, child] : node.children) {
          out << std::string(static_cast<std::size_t>(depth + 1) * 2, ' ') << model.describe(z) << " -> ";
          walk(*child, depth + 1);
        }
      };
  if (root) walk(*root, 0);
  return out.str();
}

}  // namespace wordle::adaptive
