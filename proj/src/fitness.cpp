#include "orgevo/fitness.hpp"

#include <algorithm>
#include <sstream>

namespace orgevo {

void validate_env(const EnvironmentParams& env) {
  if (!(env.message_latency >= 0.0) || !(env.process_service_rate > 0.0) ||
      !(env.response_service_rate > 0.0) || !(env.query_rate > 0.0) ||
      !(env.utility_ceiling > 0.0)) {
    throw Error(ErrorKind::ConfigError, "environment rates and ceiling must be positive");
  }
}

double recall(const OrganizationTree&, const EnvironmentParams&) { return 1.0; }

namespace {

std::string describe(const char* what, int level, std::size_t c, double rate, double lambda) {
  std::ostringstream out;
  out << what << " at level " << level << " with " << c << " responses to merge (service "
      << rate << "/s <= arrival " << lambda << "/s)";
  return out.str();
}

// Returns the node's completion time, or sets `saturated` and returns 0.
double node_time(const TreeNode& node, const EnvironmentParams& env, std::string& saturated) {
  if (node.is_leaf()) {
    if (env.process_service_rate <= env.query_rate) {
      std::ostringstream out;
      out << "database at level " << node.level << " (service " << env.process_service_rate
          << "/s <= arrival " << env.query_rate << "/s)";
      saturated = out.str();
      return 0.0;
    }
    return 1.0 / (env.process_service_rate - env.query_rate);
  }
  double worst = 0.0;
  for (const TreeNode& c : node.children) {
    const double tc = node_time(c, env, saturated);
    if (!saturated.empty()) return 0.0;
    worst = std::max(worst, tc);
  }
  const double c = static_cast<double>(node.children.size());
  const double merge_rate = env.response_service_rate / c;
  if (merge_rate <= env.query_rate) {
    saturated = describe(node.role == Role::Mediator ? "mediator" : "aggregator", node.level,
                         node.children.size(), merge_rate, env.query_rate);
    return 0.0;
  }
  return 2.0 * env.message_latency + worst + 1.0 / (merge_rate - env.query_rate);
}

}  // namespace

ResponseTime response_time(const OrganizationTree& t, const EnvironmentParams& env) {
  validate_env(env);
  validate_tree(t);
  ResponseTime rt;
  std::string saturated;
  double worst = 0.0;
  for (const TreeNode& r : t.roots) {
    const double tr = node_time(r, env, saturated);
    if (!saturated.empty()) {
      rt.saturated_node = saturated;
      return rt;
    }
    worst = std::max(worst, tr);
  }
  if (t.roots.size() == 1) {
    rt.feasible = true;
    rt.seconds = worst;
    return rt;
  }
  const double k = static_cast<double>(t.roots.size());
  const double merge_rate = env.response_service_rate / k;
  if (merge_rate <= env.query_rate) {
    rt.saturated_node = describe("responsible mediator", 1, t.roots.size(), merge_rate, env.query_rate);
    return rt;
  }
  rt.feasible = true;
  rt.seconds = 2.0 * env.message_latency + worst + 1.0 / (merge_rate - env.query_rate);
  return rt;
}

double evaluate(const OrganizationTree& t, const EnvironmentParams& env) {
  const ResponseTime rt = response_time(t, env);
  if (!rt.feasible) return 0.0;
  return recall(t, env) * std::max(0.0, env.utility_ceiling - rt.seconds * 1000.0);
}

Evaluator make_ir_evaluator(const EnvironmentParams& env) {
  validate_env(env);
  return [env](const OrganizationTree& t) { return evaluate(t, env); };
}

}  // namespace orgevo
