#pragma once

// Descent of the squared mean curvature energy over normal displacements.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "contactgeom/calculus.hpp"
#include "contactgeom/catalog.hpp"

namespace contactgeom {

/// sum sqrt(D) w over unmasked nodes, w the trapezoid weights.
double area(const SurfaceGrid& grid);

/// sum H^2 sqrt(D) w over unmasked nodes.
double willmore_energy(const SurfaceGrid& grid);

/// Moves each node along its unit normal e3 by step * psi and renormalizes.
/// Stored partials are dropped. Throws StepTooLarge when a Gram determinant of
/// the result falls below 1e-10.
SurfaceGrid flow_step(const SurfaceGrid& grid, const ScalarField& psi, double step);

enum class DescentVariant { fixed_step, backtracking };
enum class FlowMode { full, r_only };

std::string_view to_string(DescentVariant v);
std::string_view to_string(FlowMode m);
DescentVariant descent_variant_from_string(std::string_view s);
FlowMode flow_mode_from_string(std::string_view s);

struct FlowConfig {
  std::string surface = "clifford";
  ParamMap params;
  int nu = 32;
  int nv = 32;
  double step = 1.0;
  int max_iterations = 500;
  /// Stop once max|H| drops below this (full mode).
  double tolerance = 1e-3;
  DescentVariant variant = DescentVariant::backtracking;
  FlowMode mode = FlowMode::full;
  int control = 16;        // control coefficients per axis
  double fd_step = 1e-4;   // symmetric difference step for the gradient
  double armijo = 1e-4;
  /// r-only mode stops when an accepted update moves r by less than this.
  double r_tolerance = 1e-10;

  /// Throws InvalidArgument on non-positive step, tolerance, or counts.
  void validate() const;
};

struct TraceRow {
  int iteration = 0;
  double energy = 0.0;
  double max_abs_h = 0.0;
  double max_abs_beta = 0.0;
  double step = 0.0;
  double r = 0.0;  // r-only mode
};

struct BetaStats {
  double max = 0.0;
  double mean = 0.0;
  double spread = 0.0;  // max - min
};

struct FlowReport {
  FlowConfig config;
  std::vector<TraceRow> trace;
  double initial_energy = 0.0;
  double final_energy = 0.0;
  double final_max_abs_h = 0.0;
  BetaStats beta;
  double final_area = 0.0;
  bool converged = false;
  int iterations = 0;
  int accepted_steps = 0;
  int rejected_trials = 0;
  std::optional<double> final_r;
  std::string stop_reason;
  SurfaceGrid final_grid;
};

/// Full mode: preconditioned gradient descent on the control coefficients of
/// a periodic cubic B-spline displacement. r-only mode: descent on the radius
/// of the product torus family. Never throws for non-convergence; the report
/// carries the flag.
FlowReport descend(const FlowConfig& config);

enum class ProbeOutcome { pass, fail, not_applicable, inconclusive };

std::string_view to_string(ProbeOutcome o);

struct Verdict {
  ProbeOutcome outcome = ProbeOutcome::inconclusive;
  double beta_spread = 0.0;
  double k_max_abs = 0.0;
  double max_abs_h = 0.0;
  std::string message;
};

inline constexpr double kProbeBetaSpread = 5e-3;
inline constexpr double kProbeCurvature = 5e-3;

/// Constant contact angle on a converged minimal surface should force K = 0.
/// inconclusive if the report did not converge; not_applicable if the beta
/// spread is at least 5e-3; otherwise pass iff max|K| < 5e-3.
Verdict theorem_probe(const FlowReport& report, const SurfaceGrid& grid);

}  // namespace contactgeom
