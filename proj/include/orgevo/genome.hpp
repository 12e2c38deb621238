#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "orgevo/errors.hpp"
#include "orgevo/rng.hpp"

namespace orgevo {

// A hierarchy over N databases is stored as N-1 integers; digit i is the
// level at which the root-to-leaf paths of adjacent databases i and i+1
// first diverge (1 when they sit in different trees of the forest). Every
// digit array in [1, maxDepth]^(N-1) is a well-formed structure, which is
// what makes fixed-length crossover possible at all.
class Genome {
 public:
  // Validates digits on construction: non-empty, every digit in [1, maxDepth].
  Genome(std::vector<int> digits, int max_depth);

  const std::vector<int>& digits() const { return digits_; }
  int max_depth() const { return max_depth_; }
  std::size_t leaf_count() const { return digits_.size() + 1; }
  int max_digit() const;

  bool operator==(const Genome& other) const = default;

 private:
  std::vector<int> digits_;
  int max_depth_;
};

enum class Role { Mediator, Aggregator, Database };

// Value-semantic tree node. Roots are mediators at level 1, every other
// internal node is an aggregator, databases are exactly the leaves, and a
// child's level is its parent's plus one.
struct TreeNode {
  Role role = Role::Database;
  int level = 1;
  std::vector<TreeNode> children;

  bool is_leaf() const { return children.empty(); }
  bool operator==(const TreeNode& other) const = default;
};

struct OrganizationTree {
  std::vector<TreeNode> roots;

  bool operator==(const OrganizationTree& other) const = default;
};

std::size_t tree_leaf_count(const OrganizationTree& t);
int tree_max_level(const OrganizationTree& t);

// Checks the structural invariants listed on TreeNode; throws MalformedTree.
void validate_tree(const OrganizationTree& t);

// Builds the unique instance with no single-child chains beyond what the
// digits force. A root covering a single database keeps its mediator (the
// tree interface cannot be a database); digits that skip levels force a
// vertical chain of lone internal nodes.
OrganizationTree decode(const Genome& g);

// Inverse walk: emits, between each pair of adjacent leaves, the level of
// their lowest common ancestor plus one (1 across tree boundaries). The
// result's maxDepth is the largest digit (at least 1).
Genome encode(const OrganizationTree& t);

// Same, but places the digits in a caller-chosen space of depth max_depth.
Genome encode(const OrganizationTree& t, int max_depth);

// Level of leaf i (1-based): max of the two neighboring digits, with
// virtual boundary digits of 1. This is the separation level; the decoded
// database itself sits at max(leaf_level, 2) since a lone leaf under a
// root still hangs below its mediator.
int leaf_level(const Genome& g, std::size_t i);

// Canonicalizes: collapses every aggregator that would have a single
// subordinate, stage by stage from the top. Idempotent; never increases a
// digit; the result decodes with every aggregator having >= 2 children.
Genome simplify(const Genome& g);

// Hamming distance. Both genomes must share length and maxDepth.
std::size_t genome_distance(const Genome& a, const Genome& b);

// Uniform digits in [1, max_depth].
Genome random_genome(std::size_t leaf_count, int max_depth, Rng& rng);

// Like random_genome, but guarantees at least one digit equals max_depth,
// so the decoded structure has maximal depth.
Genome random_genome_max_depth(std::size_t leaf_count, int max_depth, Rng& rng);

// Text form used by the CLI and reports: digits separated by single spaces.
std::string to_string(const Genome& g);
Genome parse_genome(const std::string& text, int max_depth);

}  // namespace orgevo
