#include "orgevo/genome.hpp"

#include <algorithm>
#include <sstream>

namespace orgevo {

Genome::Genome(std::vector<int> digits, int max_depth)
    : digits_(std::move(digits)), max_depth_(max_depth) {
  if (max_depth_ < 1) {
    throw Error(ErrorKind::ConfigError, "maxDepth must be at least 1, got " + std::to_string(max_depth_));
  }
  if (digits_.empty()) {
    throw Error(ErrorKind::EmptyGenome, "genome must cover at least two databases");
  }
  for (std::size_t i = 0; i < digits_.size(); ++i) {
    if (digits_[i] < 1 || digits_[i] > max_depth_) {
      throw Error(ErrorKind::DigitOutOfRange,
                  "digit " + std::to_string(digits_[i]) + " at index " + std::to_string(i + 1) +
                      " outside [1, " + std::to_string(max_depth_) + "]");
    }
  }
}

int Genome::max_digit() const {
  return *std::max_element(digits_.begin(), digits_.end());
}

std::size_t tree_leaf_count(const OrganizationTree& t) {
  std::size_t n = 0;
  auto walk = [&](auto&& self, const TreeNode& node) -> void {
    if (node.is_leaf()) {
      ++n;
      return;
    }
    for (const TreeNode& c : node.children) self(self, c);
  };
  for (const TreeNode& r : t.roots) walk(walk, r);
  return n;
}

int tree_max_level(const OrganizationTree& t) {
  int m = 0;
  auto walk = [&](auto&& self, const TreeNode& node) -> void {
    m = std::max(m, node.level);
    for (const TreeNode& c : node.children) self(self, c);
  };
  for (const TreeNode& r : t.roots) walk(walk, r);
  return m;
}

void validate_tree(const OrganizationTree& t) {
  if (t.roots.empty()) {
    throw Error(ErrorKind::MalformedTree, "organization has no trees");
  }
  auto walk = [&](auto&& self, const TreeNode& node, bool is_root) -> void {
    if (is_root) {
      if (node.level != 1) {
        throw Error(ErrorKind::MalformedTree, "root node must sit at level 1");
      }
      if (node.role != Role::Mediator) {
        throw Error(ErrorKind::MalformedTree, "root node must be a mediator");
      }
    }
    if (node.is_leaf()) {
      if (node.role != Role::Database) {
        throw Error(ErrorKind::MalformedTree, "leaf node must be a database");
      }
      return;
    }
    if (node.role == Role::Database) {
      throw Error(ErrorKind::MalformedTree, "database node cannot have children");
    }
    if (!is_root && node.role != Role::Aggregator) {
      throw Error(ErrorKind::MalformedTree, "internal non-root node must be an aggregator");
    }
    for (const TreeNode& c : node.children) {
      if (c.level != node.level + 1) {
        throw Error(ErrorKind::MalformedTree,
                    "child level " + std::to_string(c.level) + " under level " + std::to_string(node.level));
      }
      self(self, c, false);
    }
  };
  for (const TreeNode& r : t.roots) walk(walk, r, true);
  if (tree_leaf_count(t) < 2) {
    throw Error(ErrorKind::MalformedTree, "organization must cover at least two databases");
  }
}

namespace {

// Builds the node at `level` covering leaves [lo, hi] (0-based, inclusive).
// digits[p] separates leaf p from leaf p+1; the span's interior digits are
// all > level, and children split where a digit equals level + 1.
TreeNode build_node(const std::vector<int>& digits, std::size_t lo, std::size_t hi, int level) {
  if (lo == hi) {
    if (level == 1) {
      TreeNode root{Role::Mediator, 1, {}};
      root.children.push_back(TreeNode{Role::Database, 2, {}});
      return root;
    }
    return TreeNode{Role::Database, level, {}};
  }
  TreeNode node{level == 1 ? Role::Mediator : Role::Aggregator, level, {}};
  std::size_t start = lo;
  for (std::size_t p = lo; p < hi; ++p) {
    if (digits[p] == level + 1) {
      node.children.push_back(build_node(digits, start, p, level + 1));
      start = p + 1;
    }
  }
  node.children.push_back(build_node(digits, start, hi, level + 1));
  return node;
}

void emit_digits(const TreeNode& node, std::vector<int>& out) {
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    if (i > 0) out.push_back(node.level + 1);
    emit_digits(node.children[i], out);
  }
}

}  // namespace

OrganizationTree decode(const Genome& g) {
  const std::vector<int>& d = g.digits();
  const std::size_t n = g.leaf_count();
  OrganizationTree t;
  std::size_t start = 0;
  for (std::size_t p = 0; p + 1 < n; ++p) {
    if (d[p] == 1) {
      t.roots.push_back(build_node(d, start, p, 1));
      start = p + 1;
    }
  }
  t.roots.push_back(build_node(d, start, n - 1, 1));
  return t;
}

Genome encode(const OrganizationTree& t) {
  validate_tree(t);
  std::vector<int> out;
  for (std::size_t i = 0; i < t.roots.size(); ++i) {
    if (i > 0) out.push_back(1);
    emit_digits(t.roots[i], out);
  }
  const int m = out.empty() ? 1 : *std::max_element(out.begin(), out.end());
  return Genome(std::move(out), std::max(m, 1));
}

Genome encode(const OrganizationTree& t, int max_depth) {
  Genome g = encode(t);
  return Genome(g.digits(), max_depth);
}

int leaf_level(const Genome& g, std::size_t i) {
  const std::size_t n = g.leaf_count();
  if (i < 1 || i > n) {
    throw Error(ErrorKind::IndexOutOfRange,
                "leaf index " + std::to_string(i) + " outside [1, " + std::to_string(n) + "]");
  }
  const std::vector<int>& d = g.digits();
  const int left = (i >= 2) ? d[i - 2] : 1;
  const int right = (i <= n - 1) ? d[i - 1] : 1;
  return std::max(left, right);
}

Genome simplify(const Genome& g) {
  std::vector<int> d = g.digits();
  const int m = g.max_depth();
  for (int k = 1; k < m; ++k) {
    std::size_t i = 0;
    while (i < d.size()) {
      if (d[i] <= k) {
        ++i;
        continue;
      }
      std::size_t j = i;
      int seg_min = d[i];
      while (j < d.size() && d[j] > k) {
        seg_min = std::min(seg_min, d[j]);
        ++j;
      }
      if (seg_min > k + 1) {
        for (std::size_t p = i; p < j; ++p) {
          if (d[p] == seg_min) d[p] = k + 1;
        }
      }
      i = j;
    }
  }
  return Genome(std::move(d), m);
}

std::size_t genome_distance(const Genome& a, const Genome& b) {
  if (a.digits().size() != b.digits().size() || a.max_depth() != b.max_depth()) {
    throw Error(ErrorKind::LengthMismatch, "genomes live in different spaces");
  }
  std::size_t dist = 0;
  for (std::size_t i = 0; i < a.digits().size(); ++i) {
    if (a.digits()[i] != b.digits()[i]) ++dist;
  }
  return dist;
}

Genome random_genome(std::size_t leaf_count, int max_depth, Rng& rng) {
  if (leaf_count < 2) {
    throw Error(ErrorKind::ConfigError, "need at least two databases");
  }
  std::vector<int> d(leaf_count - 1);
  for (int& v : d) v = rng.uniform_int(1, max_depth);
  return Genome(std::move(d), max_depth);
}

Genome random_genome_max_depth(std::size_t leaf_count, int max_depth, Rng& rng) {
  Genome g = random_genome(leaf_count, max_depth, rng);
  if (g.max_digit() == max_depth) return g;
  std::vector<int> d = g.digits();
  d[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(d.size()) - 1))] = max_depth;
  return Genome(std::move(d), max_depth);
}

std::string to_string(const Genome& g) {
  std::ostringstream out;
  for (std::size_t i = 0; i < g.digits().size(); ++i) {
    if (i > 0) out << ' ';
    out << g.digits()[i];
  }
  return out.str();
}

Genome parse_genome(const std::string& text, int max_depth) {
  std::istringstream in(text);
  std::vector<int> d;
  int v = 0;
  while (in >> v) d.push_back(v);
  if (!in.eof()) {
    throw Error(ErrorKind::ConfigError, "genome text must be space-separated integers: '" + text + "'");
  }
  return Genome(std::move(d), max_depth);
}

}  // namespace orgevo
