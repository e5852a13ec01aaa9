// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <json.hpp>
#include <string>
#include <vector>

#include "ife1d/dg.hpp"
#include "ife1d/smooth.hpp"

namespace ife1d {

// ---- shared numerics behind the experiments ------------------------------------------------

/// pulse(3x - 1/2)
Smooth transport_pulse();

struct TransportSetup {
  double a = 0.0, b = 4.0;
  double alpha = 1.0471975511965976;  // pi / 3
  double c_minus = 1.0, c_plus = 2.0;
  double t_end = 1.0;
  double rtol = 1e-8, atol = 1e-10;
};

/// Exact solution of the one-interface transport problem at time t.
ZonedField transport_exact(const TransportSetup& s, double t);

struct TransportRun {
  double alpha_hat = 0.0;
  double l2_error = 0.0;
  double max_dt = 0.0;
  long steps = 0;
};

/// Upwind IFE-DG on n elements; inflow is driven by the exact trace at x = a.
TransportRun run_transport(const TransportSetup& s, int m, int n, bool solve, bool stability);

struct EnergySetup {
  double a = 0.0, b = 4.0;
  std::vector<double> interfaces{1.0471975511965976, 2.0943951023931953};
  std::vector<double> speeds{1.0, 2.0, 1.0};
  double periods = 10.0;
  double rtol = 1e-10, atol = 1e-12;
};

/// Time for a characteristic to traverse the periodic domain once.
double transit_period(const EnergySetup& s);

struct EnergyTrace {
  std::vector<double> t, relative_energy;
};

/// Periodic run from the periodized pulse; relative energy at every accepted step.
EnergyTrace run_two_interface(const EnergySetup& s, int m, int n);

/// log2(e_k / e_{k+1}) for consecutive halvings.
std::vector<double> observed_orders(const std::vector<double>& errors);
/// Least-squares slope of log e against log h.
double fitted_order(const std::vector<double>& h, const std::vector<double>& errors);

enum class ProjectionKind { moment, l2, lobatto, radau, hermite };
const char* projection_name(ProjectionKind k);

/// Data for projection rate studies on [0, 1] with an interface at alpha.
struct ProjectionStudySetup {
  double alpha = 0.5773502691896258;  // 1 / sqrt(3)
  std::vector<double> generic_jumps{0.5, 2.0, 0.5, 2.0, 0.5};
  double beta_ratio = 0.2;             // Lobatto and Hermite jumps (1, q, q, ...)
  std::vector<double> rho{1.0, 2.0};  // acoustic materials for the Radau study
  std::vector<double> c{1.0, 3.0};
};

/// Global elementwise projection error ||u - P u||_i on a uniform n-element mesh of [0, 1].
double projection_error(const ProjectionStudySetup& s, ProjectionKind kind, int m, int n, int i);

// ---- experiment runner -------------------------------------------------------------------

struct RunOptions {
  std::filesystem::path out_dir = ".";
  std::uint64_t seed = 0;
  int threads = 1;
};

std::vector<std::string> experiment_names();

/// Validates config, runs the experiment, writes CSV files and summary.json into out_dir.
/// Returns the summary. Throws config on schema violations.
nlohmann::json run_experiment(const std::string& name, const nlohmann::json& config, const RunOptions& opt);

/// Runs f(0..n-1) on up to `threads` workers; exceptions are rethrown in index order.
void parallel_for(int n, int threads, const std::function<void(int)>& f);

}  // namespace ife1d
