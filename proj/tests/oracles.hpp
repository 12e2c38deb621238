// Independent reference implementations used to cross-check the library.
// These favour directness over speed and share no code with the checked
// routines beyond the public types.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "orgevo/genome.hpp"
#include "orgevo/metrics.hpp"

namespace oracles {

inline void splice_node(orgevo::TreeNode& node) {
  while (node.children.size() == 1 && !node.children.front().is_leaf()) {
    std::vector<orgevo::TreeNode> grandchildren = std::move(node.children.front().children);
    node.children = std::move(grandchildren);
  }
  for (orgevo::TreeNode& c : node.children) splice_node(c);
}

inline void relevel_node(orgevo::TreeNode& node, int level, bool is_root) {
  node.level = level;
  if (node.is_leaf()) {
    node.role = orgevo::Role::Database;
  } else {
    node.role = is_root ? orgevo::Role::Mediator : orgevo::Role::Aggregator;
  }
  for (orgevo::TreeNode& c : node.children) relevel_node(c, level + 1, false);
}

// Reference for simplify: decode, splice out every vertical run of
// single-child internal nodes, renumber levels by depth, and re-encode in the
// same digit range. A root holding one database keeps its mediator.
inline orgevo::Genome simplify_via_tree(const orgevo::Genome& g) {
  orgevo::OrganizationTree t = orgevo::decode(g);
  for (orgevo::TreeNode& r : t.roots) {
    splice_node(r);
    relevel_node(r, 1, true);
  }
  return orgevo::encode(t, g.max_depth());
}

// Reference for the signed-rank test: average ranks over |difference| ties,
// then enumerate every sign assignment to get the exact null distribution.
// Exponential in the number of nonzero differences; keep inputs small.
inline orgevo::WilcoxonResult wilcoxon_by_enumeration(const std::vector<double>& a,
                                                      const std::vector<double>& b) {
  std::vector<double> diffs;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    if (d != 0.0) diffs.push_back(d);
  }
  const std::size_t n = diffs.size();
  orgevo::WilcoxonResult out;
  out.n_effective = n;
  if (n == 0) {
    out.w_statistic = 0.0;
    out.p_two_sided = 1.0;
    return out;
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return std::fabs(diffs[x]) < std::fabs(diffs[y]);
  });
  std::vector<double> rank(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && std::fabs(diffs[order[j + 1]]) == std::fabs(diffs[order[i]])) ++j;
    const double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) rank[order[k]] = avg;
    i = j + 1;
  }
  double w_plus = 0.0;
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    total += rank[k];
    if (diffs[k] > 0.0) w_plus += rank[k];
  }
  const double w = std::min(w_plus, total - w_plus);
  out.w_statistic = w;
  std::uint64_t at_most = 0;
  const std::uint64_t subsets = 1ull << n;
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (mask & (1ull << k)) sum += rank[k];
    }
    if (sum <= w + 1e-9) ++at_most;
  }
  out.p_two_sided = std::min(1.0, 2.0 * static_cast<double>(at_most) / static_cast<double>(subsets));
  return out;
}

}  // namespace oracles
