// SPDX-License-Identifier: Apache-2.0
#include "ife1d/ife1d.h"

#include <exception>
#include <new>
#include <string>

#include "ife1d/acoustic.hpp"
#include "ife1d/error.hpp"
#include "ife1d/experiments.hpp"
#include "ife1d/mesh.hpp"
#include "ife1d/rife.hpp"

struct ife1d_mesh {
  ife1d::InterfaceMesh mesh;
};

struct ife1d_rife {
  ife1d::RifeFunction f;
};

namespace {

thread_local std::string last_error;

ife1d_status to_status(ife1d::ErrorCode c) {
  switch (c) {
    case ife1d::ErrorCode::invalid_argument: return IFE1D_ERR_INVALID_ARGUMENT;
    case ife1d::ErrorCode::interface_on_node: return IFE1D_ERR_INTERFACE_ON_NODE;
    case ife1d::ErrorCode::domain: return IFE1D_ERR_DOMAIN;
    case ife1d::ErrorCode::index: return IFE1D_ERR_INDEX;
    case ife1d::ErrorCode::singular: return IFE1D_ERR_SINGULAR;
    case ife1d::ErrorCode::config: return IFE1D_ERR_CONFIG;
    case ife1d::ErrorCode::solver: return IFE1D_ERR_SOLVER;
    case ife1d::ErrorCode::io: return IFE1D_ERR_IO;
  }
  return IFE1D_ERR_INTERNAL;
}

template <class F>
ife1d_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return IFE1D_OK;
  } catch (const ife1d::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const nlohmann::json::exception& e) {
    last_error = std::string("invalid config JSON: ") + e.what();
    return IFE1D_ERR_CONFIG;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return IFE1D_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return IFE1D_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return IFE1D_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  ife1d::require(p != nullptr, ife1d::ErrorCode::invalid_argument, std::string(what) + " must not be null");
}

ife1d::JumpSequence jumps(const double* r, int degree) {
  need(r, "r");
  ife1d::require(degree >= 0, ife1d::ErrorCode::invalid_argument, "degree must be nonnegative");
  return ife1d::JumpSequence(std::vector<double>(r, r + degree + 1));
}

}  // namespace

extern "C" {

const char* ife1d_version(void) { return "0.1.0"; }

const char* ife1d_last_error(void) { return last_error.c_str(); }

ife1d_status ife1d_mesh_create(double a, double b, int n, const double* interfaces, size_t count, ife1d_mesh** out) {
  return guarded([&] {
    need(out, "out");
    if (count) need(interfaces, "interfaces");
    *out = new ife1d_mesh{ife1d::InterfaceMesh(a, b, n, std::vector<double>(interfaces, interfaces + count))};
  });
}

void ife1d_mesh_destroy(ife1d_mesh* mesh) { delete mesh; }

ife1d_status ife1d_mesh_num_elements(const ife1d_mesh* mesh, int* out) {
  return guarded([&] {
    need(mesh, "mesh");
    need(out, "out");
    *out = mesh->mesh.num_elements();
  });
}

ife1d_status ife1d_mesh_num_interfaces(const ife1d_mesh* mesh, size_t* out) {
  return guarded([&] {
    need(mesh, "mesh");
    need(out, "out");
    *out = mesh->mesh.interfaces().size();
  });
}

ife1d_status ife1d_mesh_interface(const ife1d_mesh* mesh, size_t index, int* element, double* alpha_hat) {
  return guarded([&] {
    need(mesh, "mesh");
    const auto& ifs = mesh->mesh.interfaces();
    ife1d::require(index < ifs.size(), ife1d::ErrorCode::index, "interface index out of range");
    if (element) *element = ifs[index].k0;
    if (alpha_hat) *alpha_hat = ifs[index].alpha_hat;
  });
}

ife1d_status ife1d_rife_create(int degree, double alpha_hat, const double* r, const double* coeffs, ife1d_rife** out) {
  return guarded([&] {
    need(out, "out");
    need(coeffs, "coeffs");
    const auto rj = jumps(r, degree);
    *out = new ife1d_rife{ife1d::RifeFunction(degree, alpha_hat, rj, std::vector<double>(coeffs, coeffs + degree + 1))};
  });
}

ife1d_status ife1d_rife_canonical(int degree, double alpha_hat, const double* r, int k, ife1d_rife** out) {
  return guarded([&] {
    need(out, "out");
    *out = new ife1d_rife{ife1d::RifeFunction::canonical(degree, alpha_hat, jumps(r, degree), k)};
  });
}

void ife1d_rife_destroy(ife1d_rife* f) { delete f; }

ife1d_status ife1d_rife_eval(const ife1d_rife* f, double x, int k, double* out) {
  return guarded([&] {
    need(f, "f");
    need(out, "out");
    *out = f->f(x, k);
  });
}

ife1d_status ife1d_rife_count_roots(const ife1d_rife* f, int grid, int* out) {
  return guarded([&] {
    need(f, "f");
    need(out, "out");
    *out = ife1d::count_roots(f->f, grid);
  });
}

ife1d_status ife1d_boundary_ratio_j(int degree, double alpha_hat, double w_minus, double w_plus, const double* r,
                                   double* out) {
  return guarded([&] {
    need(out, "out");
    *out = ife1d::boundary_ratio_J(degree, alpha_hat, w_minus, w_plus, jumps(r, degree));
  });
}

ife1d_status ife1d_jump_coefficients(int m, double rho_minus, double rho_plus, double c_minus, double c_plus,
                                    double* r_pressure, double* r_velocity) {
  return guarded([&] {
    need(r_pressure, "r_pressure");
    need(r_velocity, "r_velocity");
    const auto j = ife1d::jump_coefficients(m, {rho_minus, rho_plus, c_minus, c_plus});
    for (int k = 0; k <= m; ++k) {
      r_pressure[k] = j.pressure[k];
      r_velocity[k] = j.velocity[k];
    }
  });
}

ife1d_status ife1d_run_experiment(const char* name, const char* config_json, const char* out_dir, uint64_t seed,
                                  int override_seed, int threads) {
  return guarded([&] {
    need(name, "name");
    need(out_dir, "out_dir");
    nlohmann::json cfg = nlohmann::json::object();
    if (config_json && *config_json) cfg = nlohmann::json::parse(config_json);
    ife1d::RunOptions opt;
    opt.out_dir = out_dir;
    opt.threads = threads;
    opt.seed = seed;
    if (!override_seed && cfg.is_object() && cfg.contains("seed") && cfg["seed"].is_number_unsigned())
      opt.seed = cfg["seed"].get<std::uint64_t>();
    ife1d::run_experiment(name, cfg, opt);
  });
}

const char* ife1d_experiment_names(void) {
  static const std::string names = [] {
    std::string s;
    for (const auto& n : ife1d::experiment_names()) s += n + "\n";
    return s;
  }();
  return names.c_str();
}

}  // extern "C"
