#include "backbone/deploy.hpp"

#include <cmath>
#include <optional>

#include "backbone/errors.hpp"
#include "backbone/io.hpp"
#include "backbone/visgraph.hpp"

namespace backbone {

std::vector<Vec2> BackboneConfig::chain() const {
  std::vector<Vec2> out;
  out.reserve(relay_positions.size() + 2);
  out.push_back(base);
  out.insert(out.end(), relay_positions.begin(), relay_positions.end());
  out.push_back(leader_position);
  return out;
}

std::vector<Vec2> BackboneConfig::active_polyline() const {
  std::vector<Vec2> out;
  out.push_back(base);
  for (const Vec2& p : relay_positions)
    if (!nearly_equal(p, base)) out.push_back(p);
  out.push_back(leader_position);
  return out;
}

namespace {

/// Greedy farthest-visible simplification. Shortest paths on dilated maps hug
/// the rounded corners through several near-collinear vertices; collapsing
/// them keeps one bend point per corner so the relay walk is not forced to
/// burn a relay on every rounding vertex.
std::vector<Vec2> pull_taut(const std::vector<Vec2>& path, const Environment& env) {
  if (path.size() <= 2) return path;
  std::vector<Vec2> out;
  out.push_back(path.front());
  std::size_t i = 0;
  while (i + 1 < path.size()) {
    std::size_t j = path.size() - 1;
    while (j > i + 1 && !line_of_sight(path[i], path[j], env)) --j;
    out.push_back(path[j]);
    i = j;
  }
  return out;
}

/// Walks the polyline from the base placing relays per the greedy rule: hop h
/// may span at most budgets[h]; path vertices become relays, long edges are
/// subdivided. Succeeds only when every budget is consumed, i.e. exactly
/// budgets.size()-1 relays are placed.
std::optional<std::vector<Vec2>> walk_polyline(const std::vector<Vec2>& path,
                                               const std::vector<double>& budgets) {
  std::vector<Vec2> relays;
  const std::size_t max_relays = budgets.size() - 1;
  std::size_t hop = 0;
  Vec2 ref = path.front();
  for (std::size_t idx = 1; idx < path.size(); ++idx) {
    const Vec2& node = path[idx];
    while (distance(ref, node) > budgets[hop] + kGeomEps) {
      if (relays.size() >= max_relays) return std::nullopt;
      ref = ref + normalized(node - ref) * budgets[hop];
      relays.push_back(ref);
      ++hop;
    }
    if (idx + 1 < path.size()) {
      if (relays.size() >= max_relays) return std::nullopt;
      relays.push_back(node);
      ++hop;
    }
    ref = node;
  }
  if (relays.size() != max_relays) return std::nullopt;
  return relays;
}

}  // namespace

BackboneConfig deploy_backbone(const Environment& dilated_env, const TeamSpec& team,
                               const Vec2& leader_goal) {
  team.validate();
  if (!point_in_free_space(dilated_env.base_station, dilated_env))
    throw InfeasibleError("deploy: base station is not in dilated free space");
  if (!point_in_free_space(leader_goal, dilated_env))
    throw InfeasibleError("deploy: leader goal (" + format_number(leader_goal.x) + ", " +
                          format_number(leader_goal.y) + ") is not in dilated free space");

  const VisibilityGraph g =
      build_visibility_graph(dilated_env, {dilated_env.base_station, leader_goal});
  const std::vector<Vec2> path =
      pull_taut(shortest_path(g, dilated_env.base_station, leader_goal), dilated_env);

  const int n = team.n_relays;
  // The m deployed relays are the highest-index robots, so the active links
  // use the last m+1 radius entries. Smallest feasible m wins.
  for (int m = 0; m <= n; ++m) {
    std::vector<double> budgets;
    budgets.reserve(static_cast<std::size_t>(m) + 1);
    for (int link = n - m; link <= n; ++link) budgets.push_back(team.link_budget(link));
    const auto relays = walk_polyline(path, budgets);
    if (!relays) continue;

    BackboneConfig cfg;
    cfg.base = dilated_env.base_station;
    cfg.leader_position = leader_goal;
    cfg.used_count = m;
    cfg.relay_positions.assign(static_cast<std::size_t>(n - m), cfg.base);
    cfg.relay_positions.insert(cfg.relay_positions.end(), relays->begin(), relays->end());
    return cfg;
  }
  throw InsufficientRobotsError("deploy: insufficient robots (" + std::to_string(n) +
                                " relays cannot cover the visibility path)");
}

BackboneValidation validate_backbone(const BackboneConfig& cfg, const Environment& dilated_env,
                                     const TeamSpec& team) {
  team.validate();
  BackboneValidation report;
  report.pass = true;
  const std::vector<Vec2> chain = cfg.chain();
  if (chain.size() != static_cast<std::size_t>(team.n_relays) + 2)
    throw ValidationError("validate_backbone: config relay count does not match team");
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    BackbonePairCheck check;
    check.link = static_cast<int>(i);
    check.distance = distance(chain[i], chain[i + 1]);
    check.margin = team.link_budget(static_cast<int>(i)) - check.distance;
    check.visible = line_of_sight(chain[i], chain[i + 1], dilated_env);
    check.pass = check.margin >= -kGeomEps && check.visible;
    report.pass = report.pass && check.pass;
    report.pairs.push_back(check);
  }
  return report;
}

}  // namespace backbone
