#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "glider/baseline.hpp"
#include "glider/environment.hpp"

namespace glider {

// Anything that maps observations to actions for one episode at a time.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual void reset(std::uint64_t /*seed*/) {}
  virtual Action act(const Observation& obs, const StepInfo& info) = 0;
  /// Called with the outcome of every step, including the final one.
  virtual void feedback(const StepResult& /*result*/) {}
};

using PolicyFactory = std::function<std::unique_ptr<Policy>()>;

class ClassicPolicy final : public Policy {
 public:
  ClassicPolicy(ClassicControllerConfig cfg, double dt) : controller_(cfg), dt_(dt) {}
  void reset(std::uint64_t) override { controller_.reset(); }
  Action act(const Observation& obs, const StepInfo&) override { return controller_.act(obs, dt_); }

 private:
  ClassicController controller_;
  double dt_;
};

// Holds the elevons at neutral: the trimmed glide.
class ZeroPolicy final : public Policy {
 public:
  Action act(const Observation&, const StepInfo&) override { return {}; }
};

struct TrajectoryRow {
  double time = 0.0;
  RigidBodyState state;
  Action action;  // normalized command applied during the step that ended here
  Observation observation;
  double reward = 0.0;
};

struct EpisodeOutcome {
  std::uint64_t seed = 0;
  TerminationCause cause = TerminationCause::kNone;
  bool truncated = false;
  Eigen::Vector2d impact_ned = Eigen::Vector2d::Constant(std::numeric_limits<double>::quiet_NaN());
  Eigen::Vector2d target_ned = Eigen::Vector2d::Zero();
  double miss = std::numeric_limits<double>::infinity();  // finite only for impacts
  double duration = 0.0;
  std::int64_t steps = 0;
  double total_reward = 0.0;
  Observation first_observation;
  std::vector<TrajectoryRow> trajectory;  // filled when recording

  bool impacted() const { return cause == TerminationCause::kImpact; }
  std::string cause_name() const;
};

/// Runs one episode to termination or truncation on an existing environment.
EpisodeOutcome run_episode(Policy& policy, Environment& env, std::uint64_t seed, bool record);

/// Convenience overload building a fresh environment.
EpisodeOutcome run_episode(Policy& policy, const ScenarioConfig& scenario, std::uint64_t seed, bool record);

struct CampaignStats {
  std::size_t n = 0;          // episodes run
  std::size_t impacts = 0;    // episodes contributing to the miss statistics
  double mmd = 0.0;           // mean miss distance, m
  double cep50 = 0.0;         // 50 % radius about the target, m
  double cep90 = 0.0;         // 90 % radius about the target, m
  double cep50_centroid = 0.0;  // 50 % radius about the impact centroid, m
  // Impact coordinates below are offsets from the target.
  double mean_x = 0.0;        // centroid, m north
  double mean_y = 0.0;        // centroid, m east
  double sigma2_x = 0.0;      // 2 x sample std of the north coordinate, m
  double sigma2_y = 0.0;      // 2 x sample std of the east coordinate, m
  std::map<std::string, std::size_t> causes;
};

struct CampaignResult {
  CampaignStats stats;
  std::vector<EpisodeOutcome> outcomes;  // ordered by seed
};

/// Smallest radius about `center` containing at least `fraction` of the points.
double radius_containing(const std::vector<Eigen::Vector2d>& points, const Eigen::Vector2d& center,
                         double fraction);

/// Throws AllEpisodesFailed when no outcome impacted.
CampaignStats compute_stats(const std::vector<EpisodeOutcome>& outcomes);

/// n episodes with seeds base_seed .. base_seed + n - 1, fanned out over
/// `workers` threads. Results do not depend on the worker count.
CampaignResult run_campaign(const PolicyFactory& factory, const ScenarioConfig& scenario, std::size_t n,
                            std::uint64_t base_seed, std::size_t workers);

// Output formats. Column orders are stable.
void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryRow>& rows);
void write_scatter_csv(std::ostream& os, const std::vector<EpisodeOutcome>& outcomes);
void write_stats_text(std::ostream& os, const CampaignStats& stats);
void write_stats_json(std::ostream& os, const CampaignStats& stats);

}  // namespace glider
