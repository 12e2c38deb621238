#pragma once

#include <functional>
#include <string>

#include "orgevo/genome.hpp"

namespace orgevo {

// Open queueing model of a federated retrieval hierarchy: every database and
// every merge point is an M/M/1 station fed at the global query rate. All
// rates are per second, latencies in seconds.
struct EnvironmentParams {
  double message_latency = 0.020;
  double process_service_rate = 10.0;
  double response_service_rate = 20.0;
  double query_rate = 3.0;
  double utility_ceiling = 1000.0;

  bool operator==(const EnvironmentParams& other) const = default;
};

void validate_env(const EnvironmentParams& env);

struct ResponseTime {
  bool feasible = false;
  double seconds = 0.0;
  // Describes the first saturated station when infeasible.
  std::string saturated_node;
};

// Recall of the federation. Result merging is lossless here, so this is
// identically 1; it stays a separate operation so richer retrieval models
// can plug in without touching the engine.
double recall(const OrganizationTree& t, const EnvironmentParams& env);

// Completion time for one query: a database answers in 1/(mu_p - lambda); an
// internal node waits two message hops plus its slowest child, then merges c
// responses in 1/(mu_r / c - lambda); with k > 1 trees the responsible
// mediator pays one more hop-and-merge over the k tree responses. Infeasible
// whenever any station's service rate does not exceed the query rate.
ResponseTime response_time(const OrganizationTree& t, const EnvironmentParams& env);

// recall * max(0, ceiling - response_time_in_milliseconds); 0 if infeasible.
double evaluate(const OrganizationTree& t, const EnvironmentParams& env);

using Evaluator = std::function<double(const OrganizationTree&)>;

Evaluator make_ir_evaluator(const EnvironmentParams& env);

}  // namespace orgevo
