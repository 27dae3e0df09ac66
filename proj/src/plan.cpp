#include "backbone/plan.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <optional>
#include <thread>

#include "backbone/errors.hpp"

namespace backbone {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kVerticalTol = 1e-6;

using Clock = std::chrono::steady_clock;

// Deterministic, platform-independent RNG (splitmix64 stream).
struct SplitMix {
  std::uint64_t state;

  explicit SplitMix(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(next() % n); }
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  SplitMix rng(seed ^ (a * 0x9e3779b97f4a7c15ULL) ^ (b + 0x632be59bd9b4e019ULL));
  rng.next();
  return rng.next();
}

/// Planning happens on flat vectors over the movable joints only.
struct ReducedSpace {
  const ArmModel* model = nullptr;
  const Environment* env = nullptr;
  ArmConfig frame;        // frozen prefix values + placeholders
  std::size_t frozen = 0; // frozen prefix length (joints)
  double collision_step = 0.05;

  std::size_t dims() const { return 2 * (frame.size() - frozen); }

  std::vector<double> reduce(const ArmConfig& cfg) const {
    std::vector<double> q;
    q.reserve(dims());
    for (std::size_t i = frozen; i < cfg.size(); ++i) {
      q.push_back(cfg[i].yaw);
      q.push_back(cfg[i].pitch);
    }
    return q;
  }

  ArmConfig expand(const std::vector<double>& q) const {
    ArmConfig cfg = frame;
    for (std::size_t i = frozen, k = 0; i < cfg.size(); ++i, k += 2)
      cfg[i] = Joint{q[k], q[k + 1]};
    return cfg;
  }

  double dist(const std::vector<double>& a, const std::vector<double>& b) const {
    double acc = 0.0;
    for (std::size_t k = 0; k < a.size(); k += 2) {
      const double dy = wrap_angle(b[k] - a[k]);
      const double dp = b[k + 1] - a[k + 1];
      acc += dy * dy + dp * dp;
    }
    return std::sqrt(acc);
  }

  std::vector<double> toward(const std::vector<double>& from, const std::vector<double>& to,
                             double max_step) const {
    const double d = dist(from, to);
    const double t = d <= max_step ? 1.0 : max_step / d;
    std::vector<double> out(from.size());
    for (std::size_t k = 0; k < from.size(); k += 2) {
      out[k] = wrap_angle(from[k] + t * wrap_angle(to[k] - from[k]));
      out[k + 1] = from[k + 1] + t * (to[k + 1] - from[k + 1]);
    }
    return out;
  }

  std::vector<double> sample(SplitMix& rng) const {
    std::vector<double> q(dims());
    for (std::size_t k = 0; k < q.size(); k += 2) {
      q[k] = rng.uniform(-kPi, kPi);
      q[k + 1] = rng.uniform(-kHalfPi, kHalfPi);
    }
    return q;
  }

  bool edge_valid(const std::vector<double>& a, const std::vector<double>& b) const {
    return segment_valid(*model, expand(a), expand(b), *env, collision_step);
  }
};

struct Tree {
  std::vector<std::vector<double>> nodes;
  std::vector<int> parent;

  int add(std::vector<double> q, int par) {
    nodes.push_back(std::move(q));
    parent.push_back(par);
    return static_cast<int>(nodes.size()) - 1;
  }

  int nearest(const ReducedSpace& space, const std::vector<double>& q) const {
    int best = 0;
    double best_d = space.dist(nodes[0], q);
    for (std::size_t i = 1; i < nodes.size(); ++i) {
      const double d = space.dist(nodes[i], q);
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(i);
      }
    }
    return best;
  }

  std::vector<std::vector<double>> branch_to_root(int idx) const {
    std::vector<std::vector<double>> out;
    for (int v = idx; v != -1; v = parent[static_cast<std::size_t>(v)])
      out.push_back(nodes[static_cast<std::size_t>(v)]);
    return out;
  }
};

/// Seeds a tree with the tip-first retraction chain of its root: verticalize
/// the last non-vertical joint, then the one before it, and so on. Raising
/// joint i (all later joints already vertical) slides its projection along
/// the root's own validated chain segment while the stack above rides on it,
/// so each stage is collision-free for any valid root. Returns the tip index
/// and whether the chain reached the fully vertical stack.
std::pair<int, bool> seed_retraction(Tree& tree, const ReducedSpace& space) {
  int tip = 0;
  std::vector<double> q = tree.nodes[0];
  for (std::size_t k = q.size(); k >= 2; k -= 2) {
    const std::size_t pitch_idx = k - 1;
    if (std::abs(q[pitch_idx] - kHalfPi) <= 1e-12) continue;
    std::vector<double> next = q;
    next[pitch_idx] = kHalfPi;
    if (!space.edge_valid(q, next)) return {tip, false};
    q = next;
    tip = tree.add(q, tip);
  }
  return {tip, true};
}

std::optional<std::vector<ArmConfig>> rrt_connect(const ReducedSpace& space,
                                                  const std::vector<double>& start,
                                                  const std::vector<double>& goal,
                                                  const PlannerParams& params, SplitMix& rng,
                                                  Clock::time_point deadline) {
  if (space.dist(start, goal) <= 1e-12)
    return std::vector<ArmConfig>{space.expand(start)};

  Tree trees[2];
  trees[0].add(start, -1);
  trees[1].add(goal, -1);
  int active = 0;

  const auto [tip_a, full_a] = seed_retraction(trees[0], space);
  const auto [tip_b, full_b] = seed_retraction(trees[1], space);

  std::optional<std::vector<ArmConfig>> bridge;
  if (full_a && full_b) {
    // Both chains reach the vertical stack; the stacks join by yaw rotation
    // alone (their projections never leave the base point).
    auto down = trees[0].branch_to_root(tip_a);
    std::reverse(down.begin(), down.end());
    const auto up = trees[1].branch_to_root(tip_b);
    std::vector<ArmConfig> waypoints;
    waypoints.reserve(down.size() + up.size());
    for (const auto& q : down) waypoints.push_back(space.expand(q));
    for (const auto& q : up) waypoints.push_back(space.expand(q));
    bridge = std::move(waypoints);
  }
  std::optional<std::vector<ArmConfig>> direct;
  if (space.edge_valid(start, goal))
    direct = std::vector<ArmConfig>{space.expand(start), space.expand(goal)};
  if (bridge && direct) {
    // Chord costs tie exactly when only the leader moves; the staged path
    // then projects to the straight line while the direct one drifts.
    return path_cost(*bridge, *space.model) <= path_cost(*direct, *space.model) + 1e-12
               ? bridge
               : direct;
  }
  if (bridge) return bridge;
  if (direct) return direct;

  for (int iter = 0; iter < params.max_iters_per_attempt; ++iter) {
    if ((iter & 0x7f) == 0 && Clock::now() > deadline) return std::nullopt;

    Tree& ta = trees[active];
    Tree& tb = trees[1 - active];
    const std::vector<double>& other_root = tb.nodes[0];
    const std::vector<double> target =
        rng.uniform() < params.goal_bias ? other_root : space.sample(rng);

    const int near = ta.nearest(space, target);
    const std::vector<double> fresh = space.toward(ta.nodes[static_cast<std::size_t>(near)],
                                                   target, params.step);
    if (space.edge_valid(ta.nodes[static_cast<std::size_t>(near)], fresh)) {
      const int added = ta.add(fresh, near);

      // Greedy connect: grow the other tree toward the new node until it
      // either reaches it or hits an obstacle.
      int cursor = tb.nearest(space, fresh);
      while (true) {
        const std::vector<double>& from = tb.nodes[static_cast<std::size_t>(cursor)];
        if (space.dist(from, fresh) <= 1e-12) {
          auto half_a = ta.branch_to_root(added);
          std::reverse(half_a.begin(), half_a.end());
          auto half_b = tb.branch_to_root(cursor);
          if (active == 1) {
            std::swap(half_a, half_b);
            std::reverse(half_a.begin(), half_a.end());
            std::reverse(half_b.begin(), half_b.end());
          }
          std::vector<ArmConfig> waypoints;
          waypoints.reserve(half_a.size() + half_b.size());
          for (const auto& q : half_a) waypoints.push_back(space.expand(q));
          for (std::size_t i = 1; i < half_b.size(); ++i)
            waypoints.push_back(space.expand(half_b[i]));
          return waypoints;
        }
        const std::vector<double> step_node = space.toward(from, fresh, params.step);
        if (!space.edge_valid(from, step_node)) break;
        cursor = tb.add(step_node, cursor);
      }
    }
    active = 1 - active;
  }
  return std::nullopt;
}

void drop_duplicate_waypoints(std::vector<ArmConfig>& waypoints) {
  std::vector<ArmConfig> out;
  for (ArmConfig& w : waypoints) {
    if (!out.empty() && max_joint_delta(out.back(), w) <= 1e-12) continue;
    out.push_back(std::move(w));
  }
  waypoints = std::move(out);
}

void shortcut(std::vector<ArmConfig>& waypoints, const ReducedSpace& space,
              const ArmModel& model, const PlannerParams& params, SplitMix& rng) {
  double cost = path_cost(waypoints, model);
  for (int it = 0; it < params.shortcut_iters; ++it) {
    if (waypoints.size() < 3) break;
    std::size_t i = rng.index(waypoints.size() - 2);
    std::size_t j = i + 2 + rng.index(waypoints.size() - i - 2);
    std::vector<ArmConfig> candidate(waypoints.begin(), waypoints.begin() + i + 1);
    candidate.insert(candidate.end(), waypoints.begin() + j, waypoints.end());
    const double cand_cost = path_cost(candidate, model);
    if (cand_cost >= cost - 1e-12) continue;
    if (!segment_valid(model, waypoints[i], waypoints[j], *space.env, params.collision_step))
      continue;
    waypoints = std::move(candidate);
    cost = cand_cost;
  }
}

}  // namespace

void PlannerParams::validate() const {
  if (attempt_time_budget <= 0.0) throw ValidationError("planner: time budget must be > 0");
  if (max_attempts <= 0) throw ValidationError("planner: max_attempts must be > 0");
  if (step <= 0.0) throw ValidationError("planner: step must be > 0");
  if (goal_bias < 0.0 || goal_bias >= 1.0) throw ValidationError("planner: goal_bias must be in [0,1)");
  if (shortcut_iters < 0) throw ValidationError("planner: shortcut_iters must be >= 0");
  if (collision_step <= 0.0) throw ValidationError("planner: collision_step must be > 0");
  if (max_iters_per_attempt <= 0) throw ValidationError("planner: max_iters_per_attempt must be > 0");
  if (workers <= 0) throw ValidationError("planner: workers must be > 0");
  if (max_batches <= 0) throw ValidationError("planner: max_batches must be > 0");
}

double path_cost(const std::vector<ArmConfig>& waypoints, const ArmModel& model) {
  if (waypoints.empty()) return 0.0;
  double cost = 0.0;
  std::vector<Vec3> prev = forward_kinematics(model, waypoints.front());
  for (std::size_t w = 1; w < waypoints.size(); ++w) {
    const std::vector<Vec3> cur = forward_kinematics(model, waypoints[w]);
    for (std::size_t r = 0; r < cur.size(); ++r) cost += distance(prev[r].xy(), cur[r].xy());
    prev = cur;
  }
  return cost;
}

double path_cost(const ArmPath& path, const ArmModel& model) {
  return path_cost(path.waypoints, model);
}

std::vector<bool> reduce_dof(const ArmConfig& start, const ArmConfig& goal) {
  std::vector<bool> frozen(start.size(), false);
  for (std::size_t i = 0; i < std::min(start.size(), goal.size()); ++i) {
    const bool parked_both = std::abs(start[i].pitch - kHalfPi) <= kVerticalTol &&
                             std::abs(goal[i].pitch - kHalfPi) <= kVerticalTol &&
                             std::abs(wrap_angle(start[i].yaw - goal[i].yaw)) <= kVerticalTol;
    if (!parked_both) break;
    frozen[i] = true;
  }
  return frozen;
}

ArmPath plan(const ArmModel& model, const ArmConfig& start, const ArmConfig& goal,
             const Environment& dilated_env, const PlannerParams& params) {
  params.validate();
  if (!config_valid(model, start, dilated_env))
    throw InfeasibleError("plan: start configuration is invalid");
  if (!config_valid(model, goal, dilated_env))
    throw InfeasibleError("plan: goal configuration is invalid");

  ReducedSpace space;
  space.model = &model;
  space.env = &dilated_env;
  space.collision_step = params.collision_step;
  const std::vector<bool> mask = reduce_dof(start, goal);
  space.frozen = 0;
  while (space.frozen < mask.size() && mask[space.frozen]) ++space.frozen;
  space.frame = start;

  const std::vector<double> q_start = space.reduce(start);
  const std::vector<double> q_goal = space.reduce(goal);

  if (space.dims() == 0 || space.dist(q_start, q_goal) <= 1e-12) {
    ArmPath path;
    path.waypoints = {start};
    if (max_joint_delta(start, goal) > 1e-9)
      path.waypoints.push_back(goal);
    path.cost = path_cost(path, model);
    return path;
  }

  struct Best {
    double cost = std::numeric_limits<double>::infinity();
    int attempt = std::numeric_limits<int>::max();
    std::vector<ArmConfig> waypoints;
  };

  for (int batch = 0; batch < params.max_batches; ++batch) {
    const auto deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                             std::chrono::duration<double>(params.attempt_time_budget));
    Best best;
    std::mutex best_mutex;
    std::atomic<int> next_attempt{0};

    auto run_attempts = [&] {
      while (true) {
        const int attempt = next_attempt.fetch_add(1);
        if (attempt >= params.max_attempts) return;
        {
          std::lock_guard<std::mutex> lock(best_mutex);
          // Once the window closes, stop only if some attempt already
          // succeeded; otherwise keep attempting (restart semantics).
          if (Clock::now() > deadline && best.attempt != std::numeric_limits<int>::max()) return;
        }
        SplitMix rng(mix_seed(params.rng_seed, static_cast<std::uint64_t>(batch),
                              static_cast<std::uint64_t>(attempt)));
        auto waypoints = rrt_connect(space, q_start, q_goal, params, rng, deadline);
        if (!waypoints) continue;
        drop_duplicate_waypoints(*waypoints);
        shortcut(*waypoints, space, model, params, rng);
        const double cost = path_cost(*waypoints, model);
        std::lock_guard<std::mutex> lock(best_mutex);
        if (cost < best.cost - 1e-12 ||
            (std::abs(cost - best.cost) <= 1e-12 && attempt < best.attempt)) {
          best.cost = cost;
          best.attempt = attempt;
          best.waypoints = std::move(*waypoints);
        }
      }
    };

    if (params.workers == 1) {
      run_attempts();
    } else {
      std::vector<std::thread> pool;
      pool.reserve(static_cast<std::size_t>(params.workers));
      for (int w = 0; w < params.workers; ++w) pool.emplace_back(run_attempts);
      for (std::thread& t : pool) t.join();
    }

    if (best.attempt != std::numeric_limits<int>::max()) {
      ArmPath path;
      path.waypoints = std::move(best.waypoints);
      if (path.waypoints.size() == 1 && max_joint_delta(path.waypoints.front(), goal) > 1e-9)
        path.waypoints.push_back(goal);
      path.cost = best.cost;
      return path;
    }
  }
  throw PlannerTimeoutError("plan: no solution within " + std::to_string(params.max_batches) +
                            " batch(es) of " + std::to_string(params.max_attempts) + " attempts");
}

}  // namespace backbone
