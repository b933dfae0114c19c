#include "qbox/classical.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "qbox/error.hpp"

namespace qbox {

using std::numbers::pi;

namespace {

double sigma(const PhysicalConfig& cfg) {
  const double q = cfg.d().q();
  return q + 1.0 / q;
}

// G in H = G sin^2(beta p x)/x^2
double coupling(const PhysicalConfig& cfg) {
  const double lam = cfg.d().lambda();
  return cfg.hbar * cfg.hbar * sigma(cfg) / (cfg.m_q() * lam * lam);
}

double beta(const PhysicalConfig& cfg) { return cfg.d().lambda() / (sigma(cfg) * cfg.hbar); }

void require_nonzero_x(double x, const char* what) {
  if (x == 0.0 || !std::isfinite(x)) fail(Errc::domain, std::string(what) + ": x must be finite and nonzero");
}

// sheet * sqrt(1 - Y^2), with the arcsine-domain check
double cos_phase(double x, double xdot, const PhysicalConfig& cfg, Sheet s, const char* what) {
  const double Y = arcsine_argument(x, xdot, cfg);
  if (!(std::fabs(Y) <= 1.0))
    fail(Errc::domain, std::string(what) + ": |m_q (q - 1/q) x xdot / hbar| = " + std::to_string(std::fabs(Y)) +
                           " exceeds 1");
  return static_cast<int>(s) * std::sqrt((1.0 - Y) * (1.0 + Y));
}

// acceleration on the constraint surface, written without 1/x singularities on c >= 0
double force(double x, double v, double c, double K) {
  if (c >= 0.0) {
    const double v2 = v * v;
    return -x * v2 * v2 / (K * K * (1.0 + c) * (1.0 + c));
  }
  return -K * K * (1.0 - c) * (1.0 - c) / (x * x * x);
}

double first_integral_from(double x, double v, double c, double K) {
  if (c >= 0.0) return -v * v / (K * K * (1.0 + c));
  return (c - 1.0) / (x * x);
}

}  // namespace

double velocity_scale(const PhysicalConfig& cfg) { return cfg.hbar / (cfg.m_q() * cfg.d().lambda()); }

double arcsine_argument(double x, double xdot, const PhysicalConfig& cfg) { return x * xdot / velocity_scale(cfg); }

double hamiltonian(double x, double p, const PhysicalConfig& cfg) {
  require_nonzero_x(x, "hamiltonian");
  const double s = std::sin(beta(cfg) * p * x);
  return coupling(cfg) * s * s / (x * x);
}

double straight_line_momentum(double E, const PhysicalConfig& cfg) {
  if (!(E > 0.0)) fail(Errc::invalid_argument, "energy must be positive");
  return std::sqrt(sigma(cfg) * cfg.m_q() * E);
}

double turning_radius(double E, const PhysicalConfig& cfg) {
  if (!(E > 0.0)) fail(Errc::invalid_argument, "energy must be positive");
  return cfg.hbar / cfg.d().lambda() * std::sqrt(sigma(cfg) / (cfg.m_q() * E));
}

double momentum_branch(double x, double xdot, int n, const PhysicalConfig& cfg, Sheet s) {
  require_nonzero_x(x, "momentum_branch");
  cos_phase(x, xdot, cfg, s, "momentum_branch");
  const double a = std::asin(arcsine_argument(x, xdot, cfg));
  const double phase = (s == Sheet::principal ? a : pi - a) + 2.0 * pi * n;
  return phase / (2.0 * beta(cfg) * x);
}

double lagrangian_n(double x, double xdot, int n, const PhysicalConfig& cfg, Sheet s) {
  const double p = momentum_branch(x, xdot, n, cfg, s);
  const double c = cos_phase(x, xdot, cfg, s, "lagrangian_n");
  // H = G (1 - cos 2 beta p x) / (2 x^2)
  return p * xdot + coupling(cfg) * (c - 1.0) / (2.0 * x * x);
}

double eom_rhs(double x, double xdot, const PhysicalConfig& cfg, Sheet s) {
  require_nonzero_x(x, "eom_rhs");
  const double c = cos_phase(x, xdot, cfg, s, "eom_rhs");
  return force(x, xdot, c, velocity_scale(cfg));
}

double first_integral(double x, double xdot, const PhysicalConfig& cfg, Sheet s) {
  const double c = cos_phase(x, xdot, cfg, s, "first_integral");
  if (c < 0.0) require_nonzero_x(x, "first_integral");
  return first_integral_from(x, xdot, c, velocity_scale(cfg));
}

EquiEnergyCurve equi_energy_trajectory(double E, const PhysicalConfig& cfg, double p_min, double p_max, int samples,
                                       int max_branch) {
  if (!(E > 0.0)) fail(Errc::invalid_argument, "equi_energy_trajectory: E must be positive");
  if (samples < 2 || !(p_max > p_min)) fail(Errc::invalid_argument, "equi_energy_trajectory: need samples >= 2 and p_max > p_min");
  if (max_branch < 0) fail(Errc::invalid_argument, "equi_energy_trajectory: max_branch must be >= 0");
  EquiEnergyCurve c;
  c.E = E;
  c.p0 = straight_line_momentum(E, cfg);
  c.x_max = turning_radius(E, cfg);
  const double b = beta(cfg);
  boost::math::tools::eps_tolerance<double> tol(52);

  for (int i = 0; i < samples; ++i) {
    const double p = p_min + (p_max - p_min) * i / (samples - 1);
    const double ap = std::fabs(p);
    bool found = false;
    if (ap > 0.0) {
      const double r = c.p0 / ap;  // |sin y| / y = r on H = E, y = beta |p| x
      auto g = [&](double y) { return std::fabs(std::sin(y)) / y - r; };
      auto emit = [&](double y, int branch) {
        c.points.push_back({y / (b * ap), p, branch, false});
        found = true;
      };
      auto solve = [&](double lo, double hi) {
        std::uintmax_t it = 200;
        const auto br = boost::math::tools::toms748_solve(g, lo, hi, tol, it);
        return 0.5 * (br.first + br.second);
      };
      for (int j = 0; j <= max_branch; ++j) {
        if (j == 0) {
          if (r < 1.0) emit(solve(1e-300 + 0.0, pi), 0);
          else if (r == 1.0) emit(0.0, 0);
          continue;
        }
        // |sin y|/y on [j pi, (j+1) pi] peaks where tan y = y
        std::uintmax_t it = 200;
        auto t = [](double y) { return std::tan(y) - y; };
        const auto pk = boost::math::tools::toms748_solve(t, j * pi + 1e-12, j * pi + pi / 2.0 - 1e-9, tol, it);
        const double ys = 0.5 * (pk.first + pk.second);
        if (g(ys) < 0.0) continue;
        if (g(ys) == 0.0) {
          emit(ys, j);
          continue;
        }
        emit(solve(j * pi, ys), j);
        emit(solve(ys, (j + 1) * pi), j);
      }
    }
    if (!found) c.skipped_p.push_back(p);
  }
  for (int j = 0; j <= max_branch; ++j) {
    const double y = (2 * j + 1) * pi / 2.0;
    c.stationary.push_back({c.x_max, c.p0 * y, j, true});
  }
  return c;
}

namespace {

struct State {
  double x, v, c;
};

// Both sheets of the force reduce to -K^2 C^2 x on the constraint surface, and both
// forms of dc/dt to 2 C x v. Integrating the reduced system avoids the kink at c = 0.
struct Reduced {
  double w2, C;
};

State rhs(const State& s, const Reduced& r) { return {s.v, -r.w2 * s.x, 2.0 * r.C * s.x * s.v}; }

State axpy(const State& s, double h, const State& k) { return {s.x + h * k.x, s.v + h * k.v, s.c + h * k.c}; }

State rk4(const State& s, double h, const Reduced& R) {
  const State k1 = rhs(s, R);
  const State k2 = rhs(axpy(s, 0.5 * h, k1), R);
  const State k3 = rhs(axpy(s, 0.5 * h, k2), R);
  const State k4 = rhs(axpy(s, h, k3), R);
  return {s.x + h / 6.0 * (k1.x + 2 * k2.x + 2 * k3.x + k4.x), s.v + h / 6.0 * (k1.v + 2 * k2.v + 2 * k3.v + k4.v),
          s.c + h / 6.0 * (k1.c + 2 * k2.c + 2 * k3.c + k4.c)};
}

struct RunResult {
  std::vector<TrajectoryState> states;
  std::vector<double> C;
  std::optional<std::string> halt;
};

RunResult run(State s, double t0, double t_end, double step, double K, double C, double x_guard, bool record) {
  const Reduced R{K * K * C * C, C};
  RunResult r;
  const long nsteps = static_cast<long>(std::ceil((t_end - t0) / step - 1e-9));
  const double h = (t_end - t0) / nsteps;
  auto push = [&](double t) {
    if (record) {
      r.states.push_back({t, s.x, s.v});
      r.C.push_back(first_integral_from(s.x, s.v, s.c, K));
    }
  };
  push(t0);
  for (long i = 1; i <= nsteps; ++i) {
    const State next = rk4(s, h, R);
    if (!std::isfinite(next.x) || !std::isfinite(next.v) || !std::isfinite(next.c)) {
      r.halt = "non-finite state at t=" + std::to_string(t0 + i * h);
      break;
    }
    if (next.c < 0.0 && std::fabs(next.x) < x_guard) {
      r.halt = "reached the singular origin on the reflected sheet at t=" + std::to_string(t0 + i * h);
      break;
    }
    s = next;
    push(t0 + i * h);
  }
  if (!record) r.states.push_back({t_end, s.x, s.v});
  return r;
}

}  // namespace

Trajectory integrate_trajectory(const TrajectoryState& init, double t_end, double step, const PhysicalConfig& cfg,
                                Sheet sheet) {
  if (!(step > 0.0)) fail(Errc::invalid_argument, "integrate_trajectory: step must be positive");
  if (!(t_end > init.t)) fail(Errc::invalid_argument, "integrate_trajectory: t_end must exceed the initial time");
  const double K = velocity_scale(cfg);
  const double c0 = cos_phase(init.x, init.xdot, cfg, sheet, "integrate_trajectory");
  if (c0 < 0.0) require_nonzero_x(init.x, "integrate_trajectory");
  const State s0{init.x, init.xdot, c0};

  Trajectory tr;
  tr.C = first_integral_from(init.x, init.xdot, c0, K);
  // amplitude scale sqrt(2/|C|) for bound motion, |x0| otherwise
  const double a_scale = tr.C < 0.0 ? std::sqrt(2.0 / -tr.C) : std::fabs(init.x);
  const double x_guard = 1e-9 * a_scale;

  RunResult full = run(s0, init.t, t_end, step, K, tr.C, x_guard, true);
  tr.states = std::move(full.states);
  tr.C_values = std::move(full.C);
  tr.halt_reason = full.halt;
  for (double c : tr.C_values)
    tr.max_C_drift = std::fmax(tr.max_C_drift, tr.C != 0.0 ? std::fabs(c - tr.C) / std::fabs(tr.C) : std::fabs(c));

  if (!tr.halt_reason) {
    RunResult half = run(s0, init.t, t_end, 0.5 * step, K, tr.C, x_guard, false);
    if (!half.halt) tr.error_estimate = std::fabs(tr.states.back().x - half.states.back().x) * 16.0 / 15.0;
  }
  const double period = tr.C < 0.0 ? 2.0 * pi / (K * -tr.C) : INFINITY;
  tr.regime = (t_end - init.t) > period ? "effective-model extrapolation" : "short-time";
  return tr;
}

}  // namespace qbox
