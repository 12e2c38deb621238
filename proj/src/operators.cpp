#include "orgevo/operators.hpp"

#include <algorithm>
#include <string>

namespace orgevo {

namespace {

void collect_nodes(const TreeNode& node, int max_level, std::size_t& next_leaf,
                   std::vector<CrossoverNode>& out) {
  if (node.is_leaf()) {
    ++next_leaf;
    return;
  }
  const std::size_t first = next_leaf + 1;
  for (const TreeNode& c : node.children) collect_nodes(c, max_level, next_leaf, out);
  const std::size_t last = next_leaf;
  if (last > first && node.level <= max_level) {
    out.push_back(CrossoverNode{node.level, first, last});
  }
}

void check_probability(double pm) {
  if (!(pm >= 0.0 && pm <= 1.0)) {
    throw Error(ErrorKind::ConfigError, "mutation probability must lie in [0, 1]");
  }
}

void check_same_space(const Genome& a, const Genome& b) {
  if (a.digits().size() != b.digits().size() || a.max_depth() != b.max_depth()) {
    throw Error(ErrorKind::LengthMismatch, "parents live in different spaces");
  }
}

}  // namespace

std::vector<CrossoverNode> list_crossover_nodes(const Genome& g, int max_level) {
  OrganizationTree t = decode(g);
  std::vector<CrossoverNode> out;
  std::size_t next_leaf = 0;
  for (const TreeNode& r : t.roots) collect_nodes(r, max_level, next_leaf, out);
  std::stable_sort(out.begin(), out.end(), [](const CrossoverNode& a, const CrossoverNode& b) {
    if (a.level != b.level) return a.level < b.level;
    return a.leaf_lo < b.leaf_lo;
  });
  return out;
}

SegmentSplit extract_segments(const Genome& g, const CrossoverNode& node) {
  const std::vector<int>& d = g.digits();
  const std::size_t n = g.leaf_count();
  if (node.leaf_lo < 1 || node.leaf_hi <= node.leaf_lo || node.leaf_hi > n || node.level < 1) {
    throw Error(ErrorKind::SpanMismatch, "node span outside the genome");
  }
  // Interior digits all separate below the node; the digits just outside the
  // span separate at or above it. Anything else means the node is not an
  // internal node of this genome.
  for (std::size_t p = node.digit_lo(); p <= node.digit_hi(); ++p) {
    if (d[p - 1] <= node.level) {
      throw Error(ErrorKind::SpanMismatch, "span interior separates at level " + std::to_string(d[p - 1]));
    }
  }
  if (node.leaf_lo >= 2 && d[node.leaf_lo - 2] > node.level) {
    throw Error(ErrorKind::SpanMismatch, "span is not left-maximal for its level");
  }
  if (node.leaf_hi <= n - 1 && d[node.leaf_hi - 1] > node.level) {
    throw Error(ErrorKind::SpanMismatch, "span is not right-maximal for its level");
  }
  SegmentSplit s;
  s.left.assign(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(node.digit_lo() - 1));
  s.center.assign(d.begin() + static_cast<std::ptrdiff_t>(node.digit_lo() - 1),
                  d.begin() + static_cast<std::ptrdiff_t>(node.digit_hi()));
  s.right.assign(d.begin() + static_cast<std::ptrdiff_t>(node.digit_hi()), d.end());
  return s;
}

void migrate_digits_to_equal_length(std::vector<int>& a, std::vector<int>& b, Rng& rng) {
  if ((a.size() + b.size()) % 2 != 0) {
    throw Error(ErrorKind::LengthMismatch, "total digit count must be even");
  }
  while (a.size() != b.size()) {
    std::vector<int>& longer = a.size() > b.size() ? a : b;
    std::vector<int>& shorter = a.size() > b.size() ? b : a;
    const int take = rng.uniform_int(0, static_cast<int>(longer.size()) - 1);
    const int slot = rng.uniform_int(0, static_cast<int>(shorter.size()));
    shorter.insert(shorter.begin() + slot, longer[static_cast<std::size_t>(take)]);
    longer.erase(longer.begin() + take);
  }
}

std::pair<Genome, Genome> hierarchical_crossover(const Genome& p1, const Genome& p2, Rng& rng) {
  check_same_space(p1, p2);
  const int m = p1.max_depth();
  // Deeper structure first; ties keep the input order.
  const bool swapped = p1.max_digit() < p2.max_digit();
  const Genome& a = swapped ? p2 : p1;
  const Genome& b = swapped ? p1 : p2;
  const int t = a.max_digit();
  if (t == 1 || b.max_digit() == 1) {
    Genome o1 = random_genome_max_depth(p1.leaf_count(), m, rng);
    Genome o2 = random_genome_max_depth(p1.leaf_count(), m, rng);
    return {std::move(o1), std::move(o2)};
  }
  const std::vector<CrossoverNode> nodes1 = list_crossover_nodes(a, t - 1);
  const CrossoverNode cp1 = nodes1[static_cast<std::size_t>(
      rng.uniform_int(0, static_cast<int>(nodes1.size()) - 1))];
  const int s = cp1.level;
  const int level2 = std::min(s, b.max_digit() - 1);
  std::vector<CrossoverNode> nodes2 = list_crossover_nodes(b, level2);
  std::erase_if(nodes2, [&](const CrossoverNode& nd) { return nd.level != level2; });
  const CrossoverNode cp2 = nodes2[static_cast<std::size_t>(
      rng.uniform_int(0, static_cast<int>(nodes2.size()) - 1))];

  const SegmentSplit s1 = extract_segments(a, cp1);
  const SegmentSplit s2 = extract_segments(b, cp2);
  std::vector<int> o1 = s1.left;
  o1.insert(o1.end(), s2.center.begin(), s2.center.end());
  o1.insert(o1.end(), s1.right.begin(), s1.right.end());
  std::vector<int> o2 = s2.left;
  o2.insert(o2.end(), s1.center.begin(), s1.center.end());
  o2.insert(o2.end(), s2.right.begin(), s2.right.end());
  migrate_digits_to_equal_length(o1, o2, rng);
  return {Genome(std::move(o1), m), Genome(std::move(o2), m)};
}

std::pair<Genome, Genome> one_point_crossover(const Genome& p1, const Genome& p2, Rng& rng) {
  check_same_space(p1, p2);
  const std::size_t len = p1.digits().size();
  if (len < 2) {
    throw Error(ErrorKind::GenomeTooShort, "need at least two digits to cut");
  }
  // Cut after position c keeps both sides non-empty.
  const std::size_t c = static_cast<std::size_t>(rng.uniform_int(1, static_cast<int>(len) - 1));
  std::vector<int> o1(p1.digits().begin(), p1.digits().begin() + static_cast<std::ptrdiff_t>(c));
  o1.insert(o1.end(), p2.digits().begin() + static_cast<std::ptrdiff_t>(c), p2.digits().end());
  std::vector<int> o2(p2.digits().begin(), p2.digits().begin() + static_cast<std::ptrdiff_t>(c));
  o2.insert(o2.end(), p1.digits().begin() + static_cast<std::ptrdiff_t>(c), p1.digits().end());
  return {Genome(std::move(o1), p1.max_depth()), Genome(std::move(o2), p1.max_depth())};
}

std::pair<Genome, Genome> two_point_crossover(const Genome& p1, const Genome& p2, Rng& rng) {
  check_same_space(p1, p2);
  const std::size_t len = p1.digits().size();
  if (len < 2) {
    throw Error(ErrorKind::GenomeTooShort, "need at least two digits to cut");
  }
  // Two distinct positions in [1, len]; the second draw skips the first.
  int x = rng.uniform_int(1, static_cast<int>(len));
  int y = rng.uniform_int(1, static_cast<int>(len) - 1);
  if (y >= x) ++y;
  const std::size_t lo = static_cast<std::size_t>(std::min(x, y));
  const std::size_t hi = static_cast<std::size_t>(std::max(x, y));
  std::vector<int> o1 = p1.digits();
  std::vector<int> o2 = p2.digits();
  for (std::size_t i = lo - 1; i <= hi - 1; ++i) std::swap(o1[i], o2[i]);
  return {Genome(std::move(o1), p1.max_depth()), Genome(std::move(o2), p1.max_depth())};
}

Genome bitwise_mutation(const Genome& g, double pm, Rng& rng) {
  check_probability(pm);
  const int m = g.max_depth();
  if (m == 1) return g;
  std::vector<int> d = g.digits();
  for (int& v : d) {
    if (!rng.bernoulli(pm)) continue;
    const int r = rng.uniform_int(1, m - 1);
    v = (r < v) ? r : r + 1;
  }
  return Genome(std::move(d), m);
}

Genome small_perturbation_mutation(const Genome& g, double pm, Rng& rng) {
  check_probability(pm);
  const int m = g.max_depth();
  std::vector<int> d = g.digits();
  for (int& v : d) {
    if (!rng.bernoulli(pm)) continue;
    v += rng.bernoulli(0.5) ? 1 : -1;
    if (v == 0) v = 1;
    if (v == m + 1) v = m;
  }
  return Genome(std::move(d), m);
}

}  // namespace orgevo
