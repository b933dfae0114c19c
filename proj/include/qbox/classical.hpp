#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qbox/physics.hpp"

namespace qbox {

// Sign of sqrt(1 - Y^2), Y = m_q (q - 1/q) x xdot / hbar. The principal sheet
// is the one in the effective Lagrangian; harmonic solutions pass through
// |Y| = 1 onto the reflected sheet and back.
enum class Sheet { principal = 1, reflected = -1 };

struct PhasePoint {
  double x = 0.0;
  double p = 0.0;
  int branch = 0;          // arcsine branch of the sample
  bool stationary = false;  // dx/dp = 0 point at x = x_max
};

struct TrajectoryState {
  double t = 0.0;
  double x = 0.0;
  double xdot = 0.0;
};

struct Trajectory {
  std::vector<TrajectoryState> states;
  std::vector<double> C_values;  // first integral recomputed at each state
  double C = 0.0;                // value fitted at t = 0
  int branch = 0;
  double max_C_drift = 0.0;       // max |C_k - C| / |C|
  double error_estimate = 0.0;    // |x_h - x_{h/2}| at t_end, Richardson scaled
  std::optional<std::string> halt_reason;
  std::string regime;
};

// Y = m_q (q - 1/q) x xdot / hbar
double arcsine_argument(double x, double xdot, const PhysicalConfig& cfg);
// hbar / (m_q (q - 1/q))
double velocity_scale(const PhysicalConfig& cfg);

double hamiltonian(double x, double p, const PhysicalConfig& cfg);
// p0 = sqrt((q + 1/q) m_q E)
double straight_line_momentum(double E, const PhysicalConfig& cfg);
// x_max = hbar/(q - 1/q) sqrt((q + 1/q)/(m_q E))
double turning_radius(double E, const PhysicalConfig& cfg);

double momentum_branch(double x, double xdot, int n, const PhysicalConfig& cfg, Sheet s = Sheet::principal);
double lagrangian_n(double x, double xdot, int n, const PhysicalConfig& cfg, Sheet s = Sheet::principal);
double eom_rhs(double x, double xdot, const PhysicalConfig& cfg, Sheet s = Sheet::principal);

// xdot^2 = -K^2 (2C + C^2 x^2), K = velocity_scale
double first_integral(double x, double xdot, const PhysicalConfig& cfg, Sheet s = Sheet::principal);

struct EquiEnergyCurve {
  double E = 0.0, p0 = 0.0, x_max = 0.0;
  std::vector<PhasePoint> points;
  std::vector<PhasePoint> stationary;
  std::vector<double> skipped_p;  // sampled momenta with no solution
};

EquiEnergyCurve equi_energy_trajectory(double E, const PhysicalConfig& cfg, double p_min, double p_max, int samples,
                                       int max_branch = 2);

Trajectory integrate_trajectory(const TrajectoryState& init, double t_end, double step, const PhysicalConfig& cfg,
                                Sheet s = Sheet::principal);

}  // namespace qbox
