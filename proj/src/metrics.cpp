#include "orgevo/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "orgevo/errors.hpp"

namespace orgevo {

double pre(double f, double f_best) {
  if (!(f_best > 0.0)) {
    throw Error(ErrorKind::NonPositiveBest, "best-known fitness must be positive");
  }
  if (f > f_best) {
    throw Error(ErrorKind::FitnessExceedsBest,
                "fitness " + std::to_string(f) + " exceeds best-known " + std::to_string(f_best));
  }
  return (f_best - f) / f_best * 100.0;
}

double apre(const std::vector<double>& per_run_best, double f_best) {
  if (per_run_best.empty()) {
    throw Error(ErrorKind::EmptyInput, "need at least one run");
  }
  double sum = 0.0;
  for (double f : per_run_best) sum += pre(f, f_best);
  return sum / static_cast<double>(per_run_best.size());
}

double success_rate(const std::vector<double>& per_run_best, double f_best, double tol) {
  if (per_run_best.empty()) {
    throw Error(ErrorKind::EmptyInput, "need at least one run");
  }
  if (tol < 0.0) {
    throw Error(ErrorKind::ConfigError, "tolerance must be non-negative");
  }
  std::size_t hits = 0;
  for (double f : per_run_best) {
    if (f_best - f <= tol) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(per_run_best.size());
}

WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) {
    throw Error(ErrorKind::LengthMismatch, "paired samples must have equal length");
  }
  if (x.size() < 2 || x.size() > 25) {
    throw Error(ErrorKind::SampleSizeOutOfRange,
                "exact test handles 2..25 pairs, got " + std::to_string(x.size()));
  }
  struct Diff {
    double mag;
    bool positive;
  };
  std::vector<Diff> diffs;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    if (d != 0.0) diffs.push_back({std::fabs(d), d > 0.0});
  }
  WilcoxonResult res;
  res.n_effective = diffs.size();
  if (diffs.empty()) {
    return res;  // identical samples: W = 0, p = 1
  }
  std::sort(diffs.begin(), diffs.end(),
            [](const Diff& a, const Diff& b) { return a.mag < b.mag; });

  // Average ranks for tied magnitudes. Doubling keeps tied ranks integral,
  // so the subset-sum distribution below stays exact.
  const std::size_t n = diffs.size();
  std::vector<std::uint64_t> rank2(n, 0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && diffs[j + 1].mag == diffs[i].mag) ++j;
    const std::uint64_t sum2 = (i + 1 + j + 1);  // twice the average rank
    for (std::size_t k = i; k <= j; ++k) rank2[k] = sum2;
    i = j + 1;
  }

  std::uint64_t total2 = 0, plus2 = 0;
  for (std::size_t k = 0; k < n; ++k) {
    total2 += rank2[k];
    if (diffs[k].positive) plus2 += rank2[k];
  }
  const std::uint64_t minus2 = total2 - plus2;
  const std::uint64_t w2 = std::min(plus2, minus2);
  res.w_statistic = static_cast<double>(w2) / 2.0;

  // Distribution of the positive-rank sum over all 2^n sign assignments.
  std::vector<std::uint64_t> ways(total2 + 1, 0);
  ways[0] = 1;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t s = total2 + 1; s-- > rank2[k];) {
      ways[s] += ways[s - rank2[k]];
    }
  }
  std::uint64_t at_most = 0;
  for (std::size_t s = 0; s <= w2; ++s) at_most += ways[s];
  const double p = 2.0 * static_cast<double>(at_most) / std::ldexp(1.0, static_cast<int>(n));
  res.p_two_sided = std::min(1.0, p);
  return res;
}

}  // namespace orgevo
