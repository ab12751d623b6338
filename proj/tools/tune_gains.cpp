// Grid search over the classic controller gains. Ranks gain sets by the
// number of episodes reaching the ground, then by mean miss distance, and
// prints the winner as a scenario "controller" block.
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "glider/config.hpp"
#include "glider/errors.hpp"
#include "glider/evaluation.hpp"

using namespace glider;

int main(int argc, char** argv) {
  CLI::App app{"Classic controller gain search"};
  std::string scenario_path;
  std::size_t n = 60;
  std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  std::uint64_t seed = 1;
  app.add_option("--scenario", scenario_path)->required();
  app.add_option("--n", n)->check(CLI::PositiveNumber);
  app.add_option("--workers", workers)->check(CLI::PositiveNumber);
  app.add_option("--seed", seed);
  CLI11_PARSE(app, argc, argv);

  Scenario sc;
  try {
    sc = load_scenario(scenario_path);
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return 1;
  }

  ClassicControllerConfig best = sc.controller;
  std::size_t best_impacts = 0;
  double best_mmd = std::numeric_limits<double>::infinity();

  for (double lkp : {1.5, 3.0, 5.0})
    for (double lki : {0.0, 0.5, 1.0})
      for (double lkd : {0.0, 0.1})
        for (double hkp : {4.0, 8.0, 12.0, 16.0, 20.0})
          for (double rkp : {1.0, 2.0}) {
            ClassicControllerConfig c = sc.controller;
            c.longitudinal.kp = lkp;
            c.longitudinal.ki = lki;
            c.longitudinal.kd = lkd;
            c.heading.kp = hkp;
            c.roll.kp = rkp;
            const double dt = sc.env.dt;
            PolicyFactory factory = [c, dt] { return std::make_unique<ClassicPolicy>(c, dt); };
            std::size_t impacts = 0;
            double mmd = std::numeric_limits<double>::infinity();
            try {
              const auto r = run_campaign(factory, sc.env, n, seed, workers);
              impacts = r.stats.impacts;
              mmd = r.stats.mmd;
            } catch (const AllEpisodesFailed&) {
            }
            std::cout << "long " << lkp << '/' << lki << '/' << lkd << " heading " << hkp << " roll " << rkp
                      << " -> impacts " << impacts << '/' << n << " mmd " << mmd << '\n';
            if (impacts > best_impacts || (impacts == best_impacts && mmd < best_mmd)) {
              best = c;
              best_impacts = impacts;
              best_mmd = mmd;
            }
          }

  auto pid = [](const PidConfig& p) {
    return nlohmann::ordered_json{{"kp", p.kp}, {"ki", p.ki}, {"kd", p.kd},
                                  {"output_limit", p.output_limit}, {"integrator_limit", p.integrator_limit}};
  };
  nlohmann::ordered_json block;
  block["longitudinal"] = pid(best.longitudinal);
  block["heading"] = pid(best.heading);
  block["roll"] = pid(best.roll);
  block["pitch_rate_gain"] = best.pitch_rate_gain;
  std::cout << "best: impacts " << best_impacts << '/' << n << " mmd " << best_mmd << '\n'
            << nlohmann::ordered_json{{"controller", block}}.dump(2) << '\n';
  return 0;
}
