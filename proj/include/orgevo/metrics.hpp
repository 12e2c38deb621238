#pragma once

#include <cstddef>
#include <vector>

namespace orgevo {

// Percentage relative error of a run's best fitness against the best known
// value. f_best must be positive and f must not exceed it.
double pre(double f, double f_best);

// Mean PRE over a set of runs.
double apre(const std::vector<double>& per_run_best, double f_best);

// Fraction of runs whose best came within tol (absolute) of f_best.
double success_rate(const std::vector<double>& per_run_best, double f_best, double tol);

struct WilcoxonResult {
  double w_statistic = 0.0;   // min of the positive- and negative-rank sums
  std::size_t n_effective = 0;  // pairs remaining after zero differences drop
  double p_two_sided = 1.0;

  bool operator==(const WilcoxonResult& other) const = default;
};

// Exact signed-rank test for paired samples (lengths 2..25). Zero
// differences are dropped, tied magnitudes share average ranks, and the
// two-sided p is min(1, 2 * P(W <= observed)) with P taken over all 2^n
// equally likely sign assignments of the rank vector. All differences zero
// yields p = 1 by convention.
WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace orgevo
