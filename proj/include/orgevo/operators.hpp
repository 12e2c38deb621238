#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "orgevo/genome.hpp"
#include "orgevo/rng.hpp"

namespace orgevo {

// An internal node eligible as a crossover point. Spans are 1-based and
// inclusive: the node covers leaves [leaf_lo, leaf_hi] and owns digits
// [leaf_lo, leaf_hi - 1]; leaf_hi > leaf_lo always (a root covering a
// single database has no digits to exchange and is never listed).
struct CrossoverNode {
  int level = 1;
  std::size_t leaf_lo = 0;
  std::size_t leaf_hi = 0;

  std::size_t digit_lo() const { return leaf_lo; }
  std::size_t digit_hi() const { return leaf_hi - 1; }
  bool operator==(const CrossoverNode& other) const = default;
};

struct SegmentSplit {
  std::vector<int> left;
  std::vector<int> center;
  std::vector<int> right;
};

// All internal multi-leaf nodes of decode(g) with level <= max_level,
// ordered by (level, leftmost leaf).
std::vector<CrossoverNode> list_crossover_nodes(const Genome& g, int max_level);

// Splits g's digits into the part left of the node's span, the span itself,
// and the rest. Throws SpanMismatch if the node does not describe an actual
// internal node of g (interior digits must exceed its level, bounding digits
// must not).
SegmentSplit extract_segments(const Genome& g, const CrossoverNode& node);

// Moves uniformly chosen digits from the longer array into uniformly chosen
// slots (both ends included) of the shorter one until lengths match. The
// removal index is always drawn before the insertion slot. Total length must
// be even.
void migrate_digits_to_equal_length(std::vector<int>& a, std::vector<int>& b, Rng& rng);

// Subtree exchange: picks a node of the deeper parent below its top level, a
// node of the other parent at the matching level, swaps the digit spans, and
// migrates surplus digits until both offspring regain the parents' length.
// When either parent is a flat forest (max digit 1) the result is two fresh
// random genomes of maximal depth instead.
std::pair<Genome, Genome> hierarchical_crossover(const Genome& p1, const Genome& p2, Rng& rng);

// Classic operators used by the baselines. Both require at least two digits.
std::pair<Genome, Genome> one_point_crossover(const Genome& p1, const Genome& p2, Rng& rng);
std::pair<Genome, Genome> two_point_crossover(const Genome& p1, const Genome& p2, Rng& rng);

// Each digit is replaced, with probability pm, by a uniformly chosen
// different value in [1, maxDepth]. Identity when maxDepth == 1.
Genome bitwise_mutation(const Genome& g, double pm, Rng& rng);

// Each digit moves, with probability pm, one step up or down with equal
// probability; steps off either end of [1, maxDepth] are restored to the
// boundary. Identity when maxDepth == 1.
Genome small_perturbation_mutation(const Genome& g, double pm, Rng& rng);

}  // namespace orgevo
