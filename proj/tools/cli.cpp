#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "glider/config.hpp"
#include "glider/errors.hpp"
#include "glider/evaluation.hpp"
#include "glider/version.hpp"

namespace glider::cli {

namespace {

using nlohmann::ordered_json;

// Line-delimited JSON duplex: one observation record out, one action record in.
class ExternalPolicy final : public Policy {
 public:
  ExternalPolicy(std::istream& in, std::ostream& out) : in_(in), out_(out) {}

  void reset(std::uint64_t) override { reward_ = 0.0; }

  Action act(const Observation& obs, const StepInfo& info) override {
    emit(obs, info, reward_, false, false, TerminationCause::kNone);
    std::string line;
    while (std::getline(in_, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      return parse_action(line, info.step);
    }
    throw Error("external controller closed its input at step " + std::to_string(info.step));
  }

  void feedback(const StepResult& r) override {
    reward_ = r.reward;
    if (r.terminated || r.truncated) emit(r.observation, r.info, r.reward, r.terminated, r.truncated, r.cause);
  }

 private:
  void emit(const Observation& obs, const StepInfo& info, double reward, bool terminated, bool truncated,
            TerminationCause cause) {
    ordered_json j;
    j["obs"] = obs.as_array();
    j["reward"] = reward;
    j["terminated"] = terminated;
    j["truncated"] = truncated;
    j["step"] = info.step;
    j["time"] = info.time;
    if (terminated) j["cause"] = std::string(to_string(cause));
    out_ << j.dump() << std::endl;
  }

  static Action parse_action(const std::string& line, std::int64_t step) {
    const std::string where = "external action at step " + std::to_string(step);
    ordered_json j;
    try {
      j = ordered_json::parse(line);
    } catch (const ordered_json::parse_error& e) {
      throw Error(where + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("action")) throw Error(where + ": expected {\"action\": [el, ail]}");
    const auto& a = j["action"];
    if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number()) {
      throw Error(where + ": action must be two numbers");
    }
    return Action{a[0].get<double>(), a[1].get<double>()};
  }

  std::istream& in_;
  std::ostream& out_;
  double reward_ = 0.0;
};

struct Common {
  std::string scenario;
  std::string controller = "pid";
  std::optional<std::uint64_t> seed;
};

std::unique_ptr<Policy> make_policy(const std::string& name, const Scenario& sc, std::istream& in,
                                    std::ostream& out) {
  if (name == "pid") return std::make_unique<ClassicPolicy>(sc.controller, sc.env.dt);
  if (name == "scripted-zero") return std::make_unique<ZeroPolicy>();
  return std::make_unique<ExternalPolicy>(in, out);
}

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error("cannot open " + path + " for writing");
  return f;
}

std::string join17(const std::array<double, 6>& v) {
  std::ostringstream os;
  os << std::setprecision(17);
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

int cmd_trim(const Common& c, std::ostream& out) {
  const Scenario sc = load_scenario(c.scenario);
  const TrimResult t = trim_longitudinal(*sc.env.glider, sc.env.rho, sc.env.gravity);
  out << std::fixed << std::setprecision(6)
      << "airspeed_mps = " << t.airspeed << '\n'
      << "pitch_deg = " << t.pitch / kDegToRad << '\n'
      << "gamma_deg = " << t.gamma / kDegToRad << '\n'
      << "alpha_deg = " << t.alpha / kDegToRad << '\n'
      << "cm_alpha = " << t.cm_alpha << '\n'
      << std::scientific << std::setprecision(3)
      << "force_residual = " << t.force_residual << '\n'
      << "moment_residual = " << t.moment_residual << '\n';
  return kOk;
}

int cmd_fly(const Common& c, bool record, const std::string& out_path, std::istream& in, std::ostream& out,
            std::ostream& err) {
  const Scenario sc = load_scenario(c.scenario);
  const bool external = c.controller == "external";
  auto policy = make_policy(c.controller, sc, in, out);
  const std::uint64_t seed = c.seed.value_or(sc.env.seed);
  const EpisodeOutcome o = run_episode(*policy, sc.env, seed, record);

  if (record) {
    auto f = open_output(out_path);
    write_trajectory_csv(f, o.trajectory);
  }
  std::ostream& report = external ? err : out;
  report << std::fixed << std::setprecision(6)
         << "seed = " << o.seed << '\n'
         << "cause = " << o.cause_name() << '\n'
         << "duration_s = " << o.duration << '\n'
         << "steps = " << o.steps << '\n';
  if (o.impacted()) {
    report << "impact_x_m = " << o.impact_ned.x() << '\n'
           << "impact_y_m = " << o.impact_ned.y() << '\n'
           << "miss_m = " << o.miss << '\n';
  } else {
    report << "miss_m = inf\n";
  }
  report << "total_reward = " << o.total_reward << '\n'
         << "first_observation = " << join17(o.first_observation.as_array()) << '\n';
  return kOk;
}

int cmd_campaign(const Common& c, std::size_t n, std::size_t workers, const std::string& out_path,
                 const std::string& stats_path, std::ostream& out) {
  const Scenario sc = load_scenario(c.scenario);
  const std::string controller = c.controller;
  const ClassicControllerConfig gains = sc.controller;
  const double dt = sc.env.dt;
  PolicyFactory factory = [controller, gains, dt]() -> std::unique_ptr<Policy> {
    if (controller == "pid") return std::make_unique<ClassicPolicy>(gains, dt);
    return std::make_unique<ZeroPolicy>();
  };
  const CampaignResult r = run_campaign(factory, sc.env, n, c.seed.value_or(sc.env.seed), workers);
  if (!out_path.empty()) {
    auto f = open_output(out_path);
    write_scatter_csv(f, r.outcomes);
  }
  if (!stats_path.empty()) {
    auto f = open_output(stats_path);
    write_stats_json(f, r.stats);
  }
  write_stats_text(out, r.stats);
  return kOk;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  return cells;
}

double parse_cell(const std::string& s, std::size_t row) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || (*end != '\0' && *end != '\r')) {
    throw Error("log row " + std::to_string(row) + ": cannot parse '" + s + "'");
  }
  return v;
}

// Re-flies a recorded trajectory: same seed, logged actions, every logged
// quantity compared bit for bit.
int cmd_replay(const Common& c, const std::string& log_path, std::ostream& out) {
  std::ifstream f(log_path);
  if (!f) throw Error("cannot open " + log_path);
  std::string line;
  std::getline(f, line);
  const std::size_t columns = split_csv_line(line).size();
  if (columns != 22) throw Error(log_path + ": not a trajectory log (expected 22 columns)");

  std::vector<std::vector<double>> rows;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != columns) throw Error("log row " + std::to_string(rows.size()) + ": wrong column count");
    std::vector<double> row;
    for (const auto& cell : cells) row.push_back(parse_cell(cell, rows.size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(log_path + ": no rows");

  const Scenario sc = load_scenario(c.scenario);
  Environment env(sc.env);
  const std::uint64_t seed = c.seed.value_or(sc.env.seed);
  auto [obs, reset_info] = env.reset(seed);

  auto as_row = [](const StepInfo& info, const Action& a, const Observation& o, double reward) {
    TrajectoryRow r{info.time, info.state, a, o, reward};
    std::ostringstream os;
    write_trajectory_csv(os, {r});
    std::string text = os.str();
    text = text.substr(text.find('\n') + 1);
    const auto cells = split_csv_line(text.substr(0, text.find('\n')));
    std::vector<double> v;
    for (const auto& cell : cells) v.push_back(std::strtod(cell.c_str(), nullptr));
    return v;
  };
  auto mismatch = [&](std::size_t i) {
    out << "replay = mismatch\n"
        << "first_divergent_row = " << i << '\n';
    return kFailure;
  };

  if (as_row(reset_info.step, Action{}, obs, 0.0) != rows[0]) return mismatch(0);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (env.done()) return mismatch(i);
    const Action a{rows[i][13], rows[i][14]};
    const StepResult r = env.step(a);
    if (as_row(r.info, a.clamped(), r.observation, r.reward) != rows[i]) return mismatch(i);
  }
  if (!env.done()) {
    out << "replay = incomplete\n"
        << "steps = " << rows.size() - 1 << '\n';
    return kFailure;
  }
  out << "replay = ok\n"
      << "steps = " << rows.size() - 1 << '\n';
  return kOk;
}

int cmd_validate(const std::string& scenario, const std::string& glider, std::ostream& out) {
  if (!scenario.empty()) {
    load_scenario(scenario);
    out << "ok " << scenario << '\n';
  }
  if (!glider.empty()) {
    validate(load_glider(glider));
    out << "ok " << glider << '\n';
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"6-DOF gliding projectile simulator", "glider"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1, 1);

  Common common;
  const auto controllers = CLI::IsMember({"pid", "external", "scripted-zero"});
  auto add_scenario = [&](CLI::App* sub) {
    sub->add_option("--scenario", common.scenario, "Scenario JSON file")->required();
  };
  auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", common.seed, "Episode seed (defaults to the scenario seed)");
  };

  auto* trim = app.add_subcommand("trim", "Trimmed glide of the scenario's glider");
  add_scenario(trim);

  bool record = false;
  std::string out_path;
  auto* fly = app.add_subcommand("fly", "Fly one episode");
  add_scenario(fly);
  add_seed(fly);
  fly->add_option("--controller", common.controller, "pid | external | scripted-zero")->check(controllers);
  auto* fly_out = fly->add_option("--out", out_path, "Trajectory CSV path");
  fly->add_flag("--record", record, "Record the trajectory")->needs(fly_out);

  std::size_t n = 500;
  std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  std::string stats_path;
  auto* campaign = app.add_subcommand("campaign", "Monte-Carlo campaign over consecutive seeds");
  add_scenario(campaign);
  add_seed(campaign);
  campaign->add_option("--controller", common.controller, "pid | scripted-zero")
      ->check(CLI::IsMember({"pid", "scripted-zero"}));
  campaign->add_option("--n", n, "Number of episodes")->check(CLI::Range(std::size_t{1}, std::numeric_limits<std::size_t>::max()));
  campaign->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  campaign->add_option("--out", out_path, "Impact scatter CSV path");
  campaign->add_option("--stats", stats_path, "Statistics JSON path");

  std::string log_path;
  auto* replay = app.add_subcommand("replay", "Re-fly a recorded trajectory and check it bit for bit");
  add_scenario(replay);
  add_seed(replay);
  replay->add_option("--log", log_path, "Trajectory CSV written by fly --record")->required();

  std::string validate_scenario, validate_glider;
  auto* check = app.add_subcommand("validate-config", "Parse and validate configuration files");
  auto* vs = check->add_option("--scenario", validate_scenario, "Scenario JSON file");
  auto* vg = check->add_option("--glider", validate_glider, "Glider JSON file");
  check->callback([vs, vg] {
    if (vs->count() == 0 && vg->count() == 0) throw CLI::RequiredError("--scenario or --glider");
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (trim->parsed()) return cmd_trim(common, out);
    if (fly->parsed()) return cmd_fly(common, record, out_path, in, out, err);
    if (campaign->parsed()) return cmd_campaign(common, n, workers, out_path, stats_path, out);
    if (replay->parsed()) return cmd_replay(common, log_path, out);
    return cmd_validate(validate_scenario, validate_glider, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
  } catch (const NoTrimFound& e) {
    err << "NoTrimFound: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kFailure;
}

}  // namespace glider::cli
