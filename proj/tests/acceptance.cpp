// Acceptance suite: one PASS/FAIL line per criterion; nonzero exit on any failure not marked as known.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "glider/atmosphere.hpp"
#include "glider/errors.hpp"
#include "glider/evaluation.hpp"
#include "support.hpp"

using namespace glider;
using Clock = std::chrono::steady_clock;

namespace {

struct Verdict {
  bool pass = true;
  bool unexpected = false;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      unexpected = true;
      detail << " [failed: " << what << "]";
    }
  }

  // A requirement that cannot be met as pinned; reported as a failure but
  // does not fail the run on its own.
  void require_known(bool ok, const std::string& what, const std::string& reason) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "; known: " << reason << "]";
    }
  }
};

int failures = 0;
int known_failures = 0;

void criterion(const std::string& name, const std::function<void(Verdict&)>& body) {
  Verdict v;
  try {
    body(v);
  } catch (const std::exception& e) {
    v.pass = false;
    v.unexpected = true;
    v.detail << " [exception: " << e.what() << "]";
  }
  if (v.unexpected) {
    ++failures;
  } else if (!v.pass) {
    ++known_failures;
  }
  std::cout << (v.pass ? "PASS" : "FAIL") << "  " << name << ":" << v.detail.str() << std::endl;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

PolicyFactory pid_factory(const Scenario& sc) {
  const auto cfg = sc.controller;
  const double dt = sc.env.dt;
  return [cfg, dt] { return std::make_unique<ClassicPolicy>(cfg, dt); };
}

std::size_t workers() { return std::max(1u, std::thread::hardware_concurrency()); }

}  // namespace

int main() {
  std::cout.precision(6);

  criterion("RK4 ballistic oracle", [](Verdict& v) {
    const auto t0 = Clock::now();
    RigidBodyState s;
    auto none = [](const RigidBodyState&) { return Wrench{}; };
    for (int i = 0; i < 100; ++i) s = rk4_step_with(s, 0.01, none, MassProperties{});
    const double elapsed = seconds_since(t0);
    const double ev = std::abs(s.velocity_body.z() - 9.81), ez = std::abs(s.position_ned.z() - 4.905);
    v.detail << " |dv| = " << ev << ", |dz| = " << ez << ", " << elapsed << " s";
    v.require(ev < 1e-9, "velocity within 1e-9");
    v.require(ez < 1e-9, "displacement within 1e-9");
    v.require(elapsed < 1.0, "runtime < 1 s");
  });

  criterion("RK4 order", [](Verdict& v) {
    const RigidBodyState ref = test::spin_up(1e-4);
    const double e1 = test::state_distance(test::spin_up(0.02), ref);
    const double e2 = test::state_distance(test::spin_up(0.01), ref);
    const double e3 = test::state_distance(test::spin_up(0.005), ref);
    v.detail << " error ratios " << e1 / e2 << ", " << e2 / e3;
    for (double r : {e1 / e2, e2 / e3}) v.require(r >= 12.0 && r <= 20.0, "ratio in [12, 20]");
  });

  criterion("Frame suite", [](Verdict& v) {
    std::mt19937_64 rng(2024);
    double worst_ortho = 0, worst_det = 0, worst_trip = 0;
    for (int i = 0; i < 1000; ++i) {
      const EulerAngles a = test::random_attitude(rng, 1e-2);
      const Dcm b = euler_to_dcm(a);
      worst_ortho = std::max(worst_ortho, (b.m.transpose() * b.m - Mat3::Identity()).cwiseAbs().maxCoeff());
      worst_det = std::max(worst_det, std::abs(b.m.determinant() - 1.0));
      const EulerAngles r = dcm_to_euler(b);
      worst_trip = std::max({worst_trip, std::abs(wrap_pi(r.phi - a.phi)), std::abs(r.theta - a.theta),
                             std::abs(wrap_pi(r.psi - a.psi))});
    }
    v.detail << " orthonormality " << worst_ortho << ", det " << worst_det << ", round trip " << worst_trip;
    v.require(worst_ortho < 1e-9, "orthonormal");
    v.require(worst_det < 1e-9, "det +1");
    v.require(worst_trip < 1e-9, "round trip");
  });

  criterion("Aero formula suite", [](Verdict& v) {
    const double a6 = lift_slope(6);
    LiftingSurface s;
    s.area = 0.1;
    s.chord = 0.13;
    s.aspect_ratio = 6;
    s.cd0 = 0.01;
    const auto c = surface_coefficients(0.1, s);
    const double cdi = c.cd - s.cd0;
    v.detail << " lift_slope(6) = " << a6 << ", induced drag = " << cdi;
    v.require(std::abs(a6 - 6 * kPi / (1 + std::sqrt(10.0))) < 1e-12, "lift slope equals 6 pi / (1 + sqrt 10)");
    v.require_known(std::abs(a6 - 4.5288) <= 1e-4, "lift slope 4.5288 +- 1e-4",
                    "6 pi / (1 + sqrt 10) = 4.528664, 1.4e-4 below the quoted 4.5288");
    v.require(std::abs(cdi - 0.014507) <= 1e-6, "induced drag 0.014507 +- 1e-6");

    const GliderModel& g = test::default_glider();
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> defl(-0.3, 0.3);
    double worst = 0;
    for (int i = 0; i < 500; ++i) {
      RigidBodyState a;
      a.velocity_body = Vec3(14, 0, 0) + test::random_vec(rng, 3.0);
      a.rates_body = test::random_vec(rng, 1.5);
      RigidBodyState b = a;
      b.velocity_body.y() = -b.velocity_body.y();
      b.rates_body.x() = -b.rates_body.x();
      b.rates_body.z() = -b.rates_body.z();
      const ActuatorState ca{defl(rng), defl(rng)};
      const Wrench wa = total_wrench(a, ca, g, Vec3::Zero(), kSeaLevelRho);
      const Wrench wb = total_wrench(b, {ca.delta_el, -ca.delta_ail}, g, Vec3::Zero(), kSeaLevelRho);
      worst = std::max({worst, std::abs(wa.force_body.x() - wb.force_body.x()),
                        std::abs(wa.force_body.y() + wb.force_body.y()),
                        std::abs(wa.force_body.z() - wb.force_body.z()),
                        std::abs(wa.moment_body.x() + wb.moment_body.x()),
                        std::abs(wa.moment_body.y() - wb.moment_body.y()),
                        std::abs(wa.moment_body.z() + wb.moment_body.z())});
    }
    v.detail << ", mirror residual " << worst;
    v.require(worst < 1e-9, "mirror symmetry within 1e-9");
  });

  criterion("Trim", [](Verdict& v) {
    const ScenarioConfig c = test::calm_scenario();
    const TrimResult t = trim_longitudinal(*c.glider, c.rho, c.gravity);
    Environment env(c);
    RigidBodyState s = t.state();
    s.position_ned = Vec3(-400, 0, -300);
    env.reset_to(s, 1);
    double max_q = 0;
    for (int i = 0; i < 50; ++i) max_q = std::max(max_q, std::abs(env.step({}).info.state.rates_body.y()));
    v.detail << " V = " << t.airspeed << " m/s, gamma = " << t.gamma / kDegToRad << " deg, residuals "
             << t.force_residual << " / " << t.moment_residual << ", max |q| over 0.5 s = " << max_q;
    v.require(t.force_residual < 1e-6 && t.moment_residual < 1e-6, "residuals < 1e-6");
    v.require(max_q < 0.05, "|q| < 0.05 rad/s");
  });

  criterion("Dryden statistics", [](Verdict& v) {
    WindConfig w;
    w.turbulence_enabled = true;
    const int n = 1000000;
    // Steps far beyond every correlation time give independent samples, so
    // the 3 sigma / sqrt(N) bound applies as stated.
    const double dt = 400.0, airspeed = 15.0;
    DrydenState st(12345), twin(12345);
    Vec3 sum = Vec3::Zero(), sq = Vec3::Zero();
    bool identical = true;
    for (int i = 0; i < n; ++i) {
      const Vec3 g = dryden_step(st, w, airspeed, dt);
      const Vec3 h = dryden_step(twin, w, airspeed, dt);
      identical = identical && std::memcmp(g.data(), h.data(), sizeof(double) * 3) == 0;
      sum += g;
      sq += g.cwiseAbs2();
    }
    const Vec3 mean = sum / n, var = sq / n - mean.cwiseAbs2();
    for (int k = 0; k < 3; ++k) {
      const double sigma = w.turbulence_intensity[k];
      const double bound = 3 * sigma / std::sqrt(double(n));
      const double rel = var[k] / (sigma * sigma) - 1.0;
      v.detail << " axis" << k << " mean " << mean[k] << " (bound " << bound << "), var err " << rel * 100 << "%;";
      v.require(std::abs(mean[k]) < bound, "mean within 3 sigma / sqrt(N)");
      v.require(std::abs(rel) < 0.10, "variance within 10%");
    }
    v.require(identical, "bit-exact under fixed seed");
    v.detail << " bit-exact " << (identical ? "yes" : "no");

    // Correlation time of the longitudinal channel at the simulation step.
    DrydenState c(99);
    const double fast = 50.0, h = 0.01;
    std::vector<double> u(1000000);
    for (auto& x : u) x = dryden_step(c, w, fast, h).x();
    double m = 0, c0 = 0;
    for (double x : u) m += x;
    m /= double(u.size());
    for (double x : u) c0 += (x - m) * (x - m);
    double tau = 0;
    for (std::size_t lag = 1; lag < u.size() / 10; ++lag) {
      double acc = 0;
      for (std::size_t i = 0; i + lag < u.size(); ++i) acc += (u[i] - m) * (u[i + lag] - m);
      if (acc / c0 < std::exp(-1.0)) {
        tau = double(lag) * h;
        break;
      }
    }
    const double expected = w.scale_lengths.x() / fast;
    v.detail << " correlation time " << tau << " s vs L/V " << expected << " s";
    v.require(std::abs(tau / expected - 1.0) < 0.2, "correlation time within 20% of L/V");
  });

  criterion("Seeker", [](Verdict& v) {
    const SeekerModel s = SeekerModel::from_fov(120 * kDegToRad, 640, 480);
    const ImagePoint centre = project({100, 0, 0}, Vec3::Zero(), {}, s);
    v.require(centre.visible && centre.u == 0.0 && centre.v == 0.0, "boresight maps to the centre");
    v.require(project({50, 0, 0}, Vec3::Zero(), {0, 0, 0.1}, s).u < 0, "yaw right moves the target left");
    v.require(project({50, 0, 0}, Vec3::Zero(), {0, 0.1, 0}, s).v > 0, "pitch up moves the target down");
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> d(-40, 40), lam(0.05, 20);
    double worst_scale = 0, worst_trip = 0;
    for (int i = 0; i < 1000; ++i) {
      const Vec3 rel(100, d(rng), d(rng));
      const double l = lam(rng);
      const ImagePoint a = project(rel, Vec3::Zero(), {}, s), b = project(l * rel, Vec3::Zero(), {}, s);
      worst_scale = std::max({worst_scale, std::abs(a.u - b.u), std::abs(a.v - b.v)});
      const ImagePoint back = pixels_to_normalized(normalized_to_pixels(a, s), s);
      worst_trip = std::max({worst_trip, std::abs(back.u - a.u), std::abs(back.v - a.v)});
    }
    v.detail << " scale invariance " << worst_scale << ", pixel round trip " << worst_trip;
    v.require(worst_scale < 1e-12, "scale invariance");
    v.require(worst_trip < 1e-12, "round trip within 1e-12");
  });

  criterion("Environment contract", [](Verdict& v) {
    const ScenarioConfig c = test::calm_scenario();
    Environment env(c);
    double rmin = 1e9, rmax = 0, cmax = 0;
    int draws = 0;
    bool obs_ok = true;
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
      const auto [obs, info] = env.reset(static_cast<std::uint64_t>(i));
      rmin = std::min(rmin, info.range);
      rmax = std::max(rmax, info.range);
      cmax = std::max(cmax, std::abs(info.cone));
      draws += info.attempts;
      v.require(std::abs(info.altitude - info.range / 2) <= 20.0, "altitude within r/2 +- 20");
      for (double x : obs.as_array()) obs_ok = obs_ok && std::abs(x) <= 1.0;
    }
    const double rejection = double(draws - n) / draws;
    v.detail << " range [" << rmin << ", " << rmax << "], max |cone| " << cmax / kDegToRad << " deg, rejection "
             << rejection * 100 << "%";
    v.require(rmin >= 100 && rmax <= 200, "range in [100, 200]");
    v.require(cmax <= 45 * kDegToRad, "cone within +-45 deg");
    v.require(rejection < 0.05, "rejection rate < 5%");

    // Random-action rollouts: bounded observations, non-positive rewards, determinism.
    Environment a(c), b(c);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> act(-1, 1);
    bool rewards_ok = true, identical = true;
    long steps = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      identical = identical && a.reset(seed).first == b.reset(seed).first;
      while (!a.done()) {
        const Action u{0.3 * act(rng), 0.3 * act(rng)};
        const StepResult ra = a.step(u), rb = b.step(u);
        identical = identical && ra.observation == rb.observation && ra.reward == rb.reward &&
                    ra.info.state.position_ned == rb.info.state.position_ned;
        rewards_ok = rewards_ok && ra.reward <= 0.0;
        for (double x : ra.observation.as_array()) obs_ok = obs_ok && std::abs(x) <= 1.0;
        ++steps;
      }
    }
    v.detail << ", " << steps << " rollout steps";
    v.require(obs_ok, "observations in [-1, 1]");
    v.require(rewards_ok, "rewards <= 0");
    v.require(identical, "bit-identical rollouts");
  });

  criterion("Reward hand-cases", [](Verdict& v) {
    const RewardWeights w{1.0, 0.1, 0.1};
    const double r1 = reward({0.3, 0.4, true}, {0, 0}, w);
    const double r2 = reward({0, 0, true}, {0.5, 0}, w);
    v.detail << " offset (0.3, 0.4) -> " << r1 << ", el 0.5 -> " << r2;
    v.require(std::abs(r1 + 0.5) < 1e-12, "-0.5");
    v.require(std::abs(r2 + 0.025) < 1e-12, "-0.025");
  });

  const Scenario calm = load_scenario(test::config_dir() / "calm.json");
  double calm_mmd = std::numeric_limits<double>::quiet_NaN();

  criterion("Closed-loop PID campaign, calm air, n = 200", [&](Verdict& v) {
    const auto t0 = Clock::now();
    const CampaignResult r = run_campaign(pid_factory(calm), calm.env, 200, 1, workers());
    const double elapsed = seconds_since(t0);
    calm_mmd = r.stats.mmd;
    v.detail << " MMD " << r.stats.mmd << " m, CEP50 " << r.stats.cep50 << " m, impacts " << r.stats.impacts
             << "/200, " << elapsed << " s";
    v.require(r.stats.mmd < 2.0, "MMD < 2 m");
    v.require(elapsed < 300.0, "runtime < 5 min");
  });

  criterion("Crosswind property campaign, 3 m/s east, n = 200", [&](Verdict& v) {
    const Scenario wind = load_scenario(test::config_dir() / "wind_east.json");
    const CampaignResult r = run_campaign(pid_factory(wind), wind.env, 200, 1, workers());
    v.detail << " MMD " << r.stats.mmd << " m vs calm " << calm_mmd << " m, mean east offset " << r.stats.mean_y
             << " m, impacts " << r.stats.impacts << "/200";
    v.require(r.stats.mmd > calm_mmd, "MMD above calm");
    v.require(r.stats.mean_y > 0.0, "mean impact displaced east");
  });

  criterion("Performance", [&](Verdict& v) {
    Environment env(calm.env);
    ClassicPolicy pid(calm.controller, calm.env.dt);
    long steps = 0;
    std::uint64_t seed = 0;
    const auto t0 = Clock::now();
    while (seconds_since(t0) < 2.0) {
      auto [obs, info] = env.reset(seed++);
      pid.reset(seed);
      StepInfo si = info.step;
      while (!env.done()) {
        const StepResult r = env.step(pid.act(obs, si));
        obs = r.observation;
        si = r.info;
        ++steps;
      }
    }
    const double rate = steps / seconds_since(t0);

    const CampaignResult one = run_campaign(pid_factory(calm), calm.env, 24, 900, 1);
    const CampaignResult many = run_campaign(pid_factory(calm), calm.env, 24, 900, std::max<std::size_t>(4, workers()));
    std::ostringstream a, b;
    write_scatter_csv(a, one.outcomes);
    write_scatter_csv(b, many.outcomes);
    v.detail << " " << rate << " steps/s single-threaded, worker-count independence "
             << (a.str() == b.str() ? "yes" : "no");
    v.require(rate >= 50000.0, ">= 50k steps/s");
    v.require(a.str() == b.str(), "identical results across worker counts");
  });

  std::cout << failures << " unexpected failure(s), " << known_failures << " known" << std::endl;
  return failures == 0 ? 0 : 1;
}
