#include "glider/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "glider/errors.hpp"

namespace glider {

std::string EpisodeOutcome::cause_name() const {
  if (cause == TerminationCause::kNone && truncated) return "timeout";
  return std::string(to_string(cause));
}

namespace {

TrajectoryRow make_row(const StepInfo& info, const Action& action, const Observation& obs, double reward) {
  return {info.time, info.state, action, obs, reward};
}

}  // namespace

EpisodeOutcome run_episode(Policy& policy, Environment& env, std::uint64_t seed, bool record) {
  EpisodeOutcome out;
  out.seed = seed;
  out.target_ned = env.config().init.target_ned.head<2>();
  auto [obs, reset_info] = env.reset(seed);
  policy.reset(seed);
  out.first_observation = obs;
  if (record) out.trajectory.push_back(make_row(reset_info.step, Action{}, obs, 0.0));

  StepInfo info = reset_info.step;
  while (true) {
    const Action action = policy.act(obs, info).clamped();
    StepResult r = env.step(action);
    policy.feedback(r);
    obs = r.observation;
    info = r.info;
    out.total_reward += r.reward;
    if (record) out.trajectory.push_back(make_row(info, action, obs, r.reward));
    if (r.terminated || r.truncated) {
      out.cause = r.cause;
      out.truncated = r.truncated;
      out.duration = info.time;
      out.steps = info.step;
      if (r.cause == TerminationCause::kImpact && info.impact_ned) {
        out.impact_ned = info.impact_ned->head<2>();
        out.miss = (out.impact_ned - out.target_ned).norm();
      }
      return out;
    }
  }
}

EpisodeOutcome run_episode(Policy& policy, const ScenarioConfig& scenario, std::uint64_t seed, bool record) {
  Environment env(scenario);
  return run_episode(policy, env, seed, record);
}

double radius_containing(const std::vector<Eigen::Vector2d>& points, const Eigen::Vector2d& center,
                         double fraction) {
  if (points.empty()) return 0.0;
  std::vector<double> r;
  r.reserve(points.size());
  for (const auto& p : points) r.push_back((p - center).norm());
  std::sort(r.begin(), r.end());
  const auto count = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(r.size())));
  return r[std::clamp<std::size_t>(count, 1, r.size()) - 1];
}

CampaignStats compute_stats(const std::vector<EpisodeOutcome>& outcomes) {
  CampaignStats st;
  st.n = outcomes.size();
  std::vector<Eigen::Vector2d> impacts;  // offsets from the target
  double miss_sum = 0.0;
  for (const auto& o : outcomes) {
    ++st.causes[o.cause_name()];
    if (o.impacted() && std::isfinite(o.miss)) {
      impacts.push_back(o.impact_ned - o.target_ned);
      miss_sum += o.miss;
    }
  }
  if (impacts.empty()) throw AllEpisodesFailed("no episode of the campaign reached the ground");

  st.impacts = impacts.size();
  const double k = static_cast<double>(impacts.size());
  st.mmd = miss_sum / k;
  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  for (const auto& p : impacts) mean += p;
  mean /= k;
  st.mean_x = mean.x();
  st.mean_y = mean.y();
  if (impacts.size() > 1) {
    Eigen::Vector2d ss = Eigen::Vector2d::Zero();
    for (const auto& p : impacts) ss += (p - mean).cwiseAbs2();
    const Eigen::Vector2d sd = (ss / (k - 1.0)).cwiseSqrt();
    st.sigma2_x = 2.0 * sd.x();
    st.sigma2_y = 2.0 * sd.y();
  }
  st.cep50 = radius_containing(impacts, Eigen::Vector2d::Zero(), 0.5);
  st.cep90 = radius_containing(impacts, Eigen::Vector2d::Zero(), 0.9);
  st.cep50_centroid = radius_containing(impacts, mean, 0.5);
  return st;
}

CampaignResult run_campaign(const PolicyFactory& factory, const ScenarioConfig& scenario, std::size_t n,
                            std::uint64_t base_seed, std::size_t workers) {
  if (n == 0) throw DomainError("campaign needs at least one episode");
  workers = std::clamp<std::size_t>(workers, 1, n);

  CampaignResult result;
  result.outcomes.resize(n);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    try {
      Environment env(scenario);
      auto policy = factory();
      for (std::size_t i = next++; i < n; i = next++) {
        result.outcomes[i] = run_episode(*policy, env, base_seed + i, false);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = n;
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  result.stats = compute_stats(result.outcomes);
  return result;
}

void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryRow>& rows) {
  os << "t,x,y,z,phi,theta,psi,u,v,w,p,q,r,act_el,act_ail,obs_phi,obs_theta,obs_p,obs_q,obs_u,obs_v,reward\n";
  os << std::setprecision(17);
  for (const auto& r : rows) {
    const auto& s = r.state;
    os << r.time << ',' << s.position_ned.x() << ',' << s.position_ned.y() << ',' << s.position_ned.z() << ','
       << s.attitude.phi << ',' << s.attitude.theta << ',' << s.attitude.psi << ',' << s.velocity_body.x() << ','
       << s.velocity_body.y() << ',' << s.velocity_body.z() << ',' << s.rates_body.x() << ','
       << s.rates_body.y() << ',' << s.rates_body.z() << ',' << r.action.delta_el_n << ','
       << r.action.delta_ail_n;
    for (double o : r.observation.as_array()) os << ',' << o;
    os << ',' << r.reward << '\n';
  }
}

void write_scatter_csv(std::ostream& os, const std::vector<EpisodeOutcome>& outcomes) {
  os << "seed,x,y,miss,cause\n";
  os << std::setprecision(17);
  for (const auto& o : outcomes) {
    os << o.seed << ',';
    if (o.impacted()) {
      os << o.impact_ned.x() << ',' << o.impact_ned.y() << ',' << o.miss;
    } else {
      os << "nan,nan,inf";
    }
    os << ',' << o.cause_name() << '\n';
  }
}

void write_stats_text(std::ostream& os, const CampaignStats& st) {
  const auto flags = os.flags();
  const auto precision = os.precision();
  os << std::setprecision(6) << std::fixed;
  os << "n = " << st.n << '\n'
     << "impacts = " << st.impacts << '\n'
     << "mmd_m = " << st.mmd << '\n'
     << "cep50_m = " << st.cep50 << '\n'
     << "cep90_m = " << st.cep90 << '\n'
     << "cep50_centroid_m = " << st.cep50_centroid << '\n'
     << "mean_x_m = " << st.mean_x << '\n'
     << "mean_y_m = " << st.mean_y << '\n'
     << "sigma2_x_m = " << st.sigma2_x << '\n'
     << "sigma2_y_m = " << st.sigma2_y << '\n';
  for (const auto& [cause, count] : st.causes) os << "cause." << cause << " = " << count << '\n';
  os.flags(flags);
  os.precision(precision);
}

void write_stats_json(std::ostream& os, const CampaignStats& st) {
  nlohmann::ordered_json j;
  j["n"] = st.n;
  j["impacts"] = st.impacts;
  j["mmd_m"] = st.mmd;
  j["cep50_m"] = st.cep50;
  j["cep90_m"] = st.cep90;
  j["cep50_centroid_m"] = st.cep50_centroid;
  j["mean_x_m"] = st.mean_x;
  j["mean_y_m"] = st.mean_y;
  j["sigma2_x_m"] = st.sigma2_x;
  j["sigma2_y_m"] = st.sigma2_y;
  j["causes"] = st.causes;
  os << j.dump(2) << '\n';
}

}  // namespace glider
