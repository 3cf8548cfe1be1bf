#include "lgas/lgas.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "lgas/alga.hpp"
#include "lgas/analysis.hpp"
#include "lgas/errors.hpp"
#include "lgas/lbm.hpp"
#include "lgas/mclga.hpp"
#include "lgas/quantum.hpp"

struct lgas_field {
  lgas::PopulationField value;
};

struct lgas_engine {
  lgas_engine_config config{};
  lgas::CollisionParams collision;
  std::optional<lgas::CollisionFactorization> factorization;
  std::optional<lgas::McParams> monte_carlo;
  std::uint64_t time = 0;
  std::size_t last_skip = 0;
};

namespace {

constexpr double kStabilityFloor = 1e-9;

thread_local std::string last_error;

lgas_status fail(lgas_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Runs `body` and turns every escaping exception into a status code.
template <typename F>
lgas_status guarded(F&& body) {
  try {
    return body();
  } catch (const lgas::ConservationError& e) {
    return fail(LGAS_ERR_CONSERVATION, e.what());
  } catch (const lgas::PostSelectionError& e) {
    return fail(LGAS_ERR_POSTSELECTION, e.what());
  } catch (const lgas::InstabilityError& e) {
    return fail(LGAS_ERR_UNSTABLE, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(LGAS_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(LGAS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(LGAS_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(LGAS_ERR_INTERNAL, "unknown error");
  }
}

lgas::EngineKind to_kind(lgas_engine_kind kind) {
  switch (kind) {
    case LGAS_ENGINE_ALGA_CONST: return lgas::EngineKind::AlgaConstant;
    case LGAS_ENGINE_ALGA_ADAPTIVE: return lgas::EngineKind::AlgaAdaptive;
    case LGAS_ENGINE_LBM: return lgas::EngineKind::Lbm;
    case LGAS_ENGINE_MCLGA: return lgas::EngineKind::Mclga;
    case LGAS_ENGINE_QALGA: return lgas::EngineKind::Qalga;
  }
  throw std::invalid_argument("unknown engine kind");
}

lgas_cell to_c(const lgas::Cell& c) { return {c.n_minus, c.n_zero, c.n_plus}; }

lgas_status publish_field(lgas::PopulationField value, lgas_field** out) {
  *out = new lgas_field{std::move(value)};
  return LGAS_OK;
}

bool all_zero(const lgas::PopulationField& field) {
  return std::all_of(field.begin(), field.end(), [](const lgas::Cell& c) {
    return c.n_minus == 0.0 && c.n_zero == 0.0 && c.n_plus == 0.0;
  });
}

}  // namespace

extern "C" {

const char* lgas_version(void) { return "1.0.0"; }

const char* lgas_status_string(lgas_status status) {
  switch (status) {
    case LGAS_OK: return "ok";
    case LGAS_ERR_INVALID_ARGUMENT: return "invalid argument";
    case LGAS_ERR_NOT_POWER_OF_TWO: return "lattice size is not a power of two";
    case LGAS_ERR_UNNORMALIZABLE: return "field cannot be normalized";
    case LGAS_ERR_CONSERVATION: return "conservation check failed";
    case LGAS_ERR_POSTSELECTION: return "post-selection failed";
    case LGAS_ERR_UNSTABLE: return "unstable populations";
    case LGAS_ERR_IO: return "i/o error";
    case LGAS_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* lgas_last_error(void) { return last_error.c_str(); }

lgas_status lgas_engine_kind_parse(const char* name, lgas_engine_kind* out) {
  if (!name || !out) return fail(LGAS_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    switch (lgas::parse_engine(name)) {
      case lgas::EngineKind::AlgaConstant: *out = LGAS_ENGINE_ALGA_CONST; break;
      case lgas::EngineKind::AlgaAdaptive: *out = LGAS_ENGINE_ALGA_ADAPTIVE; break;
      case lgas::EngineKind::Lbm: *out = LGAS_ENGINE_LBM; break;
      case lgas::EngineKind::Mclga: *out = LGAS_ENGINE_MCLGA; break;
      case lgas::EngineKind::Qalga: *out = LGAS_ENGINE_QALGA; break;
    }
    return LGAS_OK;
  });
}

const char* lgas_engine_kind_name(lgas_engine_kind kind) {
  switch (kind) {
    case LGAS_ENGINE_ALGA_CONST: return "alga-const";
    case LGAS_ENGINE_ALGA_ADAPTIVE: return "alga-adaptive";
    case LGAS_ENGINE_LBM: return "lbm";
    case LGAS_ENGINE_MCLGA: return "mclga";
    case LGAS_ENGINE_QALGA: return "qalga";
  }
  return "unknown";
}

// ---- fields ---------------------------------------------------------------

lgas_status lgas_field_create_sine(size_t n, double n_max, double u_bias, double p0, lgas_field** out) {
  if (!out) return fail(LGAS_ERR_INVALID_ARGUMENT, "null output handle");
  return guarded([&] { return publish_field(lgas::init_sine(n, n_max, u_bias, p0), out); });
}

lgas_status lgas_field_create_cosine(size_t n, double n_max, double contrast, lgas_field** out) {
  if (!out) return fail(LGAS_ERR_INVALID_ARGUMENT, "null output handle");
  return guarded([&] { return publish_field(lgas::init_cosine(n, n_max, contrast), out); });
}

lgas_status lgas_field_create_from_cells(const lgas_cell* cells, size_t n, lgas_field** out) {
  if (!out || (!cells && n > 0)) return fail(LGAS_ERR_INVALID_ARGUMENT, "null argument");
  if (n < 2) return fail(LGAS_ERR_INVALID_ARGUMENT, "lattice size must be at least 2");
  return guarded([&] {
    lgas::PopulationField field(n);
    for (size_t x = 0; x < n; ++x) field[x] = {cells[x].n_minus, cells[x].n_zero, cells[x].n_plus};
    return publish_field(std::move(field), out);
  });
}

lgas_status lgas_field_clone(const lgas_field* field, lgas_field** out) {
  if (!field || !out) return fail(LGAS_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { return publish_field(field->value, out); });
}

void lgas_field_destroy(lgas_field* field) { delete field; }

size_t lgas_field_size(const lgas_field* field) { return field ? field->value.size() : 0; }

lgas_status lgas_field_get_cells(const lgas_field* field, lgas_cell* out, size_t capacity) {
  if (!field || !out) return fail(LGAS_ERR_INVALID_ARGUMENT, "null argument");
  const size_t n = field->value.size();
  const size_t count = std::min(n, capacity);
  for (size_t x = 0; x < count; ++x) out[x] = to_c(field->value[x]);
  if (capacity < n) return fail(LGAS_ERR_INVALID_ARGUMENT, "output buffer smaller than the field");
  return LGAS_OK;
}

lgas_status lgas_field_totals(const lgas_field* field, double* mass, double* momentum) {
  if (!field) return fail(LGAS_ERR_INVALID_ARGUMENT, "null field");
  if (mass) *mass = field->value.total_mass();
  if (momentum) *momentum = field->value.total_momentum();
  return LGAS_OK;
}

lgas_status lgas_field_round(lgas_field* field) {
  if (!field) return fail(LGAS_ERR_INVALID_ARGUMENT, "null field");
  return guarded([&] {
    field->value = lgas::round_populations(field->value);
    return LGAS_OK;
  });
}

// ---- engines --------------------------------------------------------------

void lgas_engine_config_default(lgas_engine_config* config) {
  if (!config) return;
  *config = lgas_engine_config{};
  config->kind = LGAS_ENGINE_ALGA_ADAPTIVE;
  config->lambda_s = 0.2;
  config->lambda_c = 0.2;
  config->adaptive = 1;
  config->integer_cast = 0;
  config->tau = 1.0;
  config->mc_lambda = 1.0;
  config->attempts_per_cell = 0;
  config->seed = 1;
  config->threads = 1;
}

lgas_status lgas_engine_create(const lgas_engine_config* config, lgas_engine** out) {
  if (!config || !out) return fail(LGAS_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto engine = std::make_unique<lgas_engine>();
    engine->config = *config;
    const lgas_engine_kind kind = config->kind;
    to_kind(kind);
    if (kind == LGAS_ENGINE_ALGA_CONST || kind == LGAS_ENGINE_ALGA_ADAPTIVE || kind == LGAS_ENGINE_QALGA) {
      const bool adaptive = kind == LGAS_ENGINE_ALGA_ADAPTIVE || (kind == LGAS_ENGINE_QALGA && config->adaptive);
      engine->collision = {config->lambda_s, adaptive ? lgas::CrunchMode::LocalLbm : lgas::CrunchMode::Constant,
                           config->lambda_c, config->integer_cast != 0};
      engine->collision.validate();
      if (kind == LGAS_ENGINE_QALGA) {
        if (config->integer_cast) throw std::invalid_argument("integer casting has no amplitude encoding");
        engine->factorization = lgas::svd_lcu(lgas::collision_matrix(config->lambda_s));
      }
    } else if (kind == LGAS_ENGINE_LBM) {
      if (!(config->tau > 0.5)) throw std::invalid_argument("tau must exceed 0.5");
    } else {
      lgas::McParams mc{config->mc_lambda, std::max<size_t>(config->attempts_per_cell, 1), config->seed};
      mc.validate();
      if (config->attempts_per_cell > 0) engine->monte_carlo = mc;
    }
    *out = engine.release();
    return LGAS_OK;
  });
}

void lgas_engine_destroy(lgas_engine* engine) { delete engine; }

lgas_status lgas_engine_step(lgas_engine* engine, lgas_field* field) {
  if (!engine || !field) return fail(LGAS_ERR_INVALID_ARGUMENT, "null argument");
  const lgas_engine_config& cfg = engine->config;
  if (cfg.kind == LGAS_ENGINE_QALGA) {
    if (!lgas::is_power_of_two(field->value.size()))
      return fail(LGAS_ERR_NOT_POWER_OF_TWO, "qalga needs a power-of-two lattice");
    if (all_zero(field->value)) return fail(LGAS_ERR_UNNORMALIZABLE, "cannot encode an all-zero field");
  }
  return guarded([&] {
    lgas::PopulationField next;
    std::size_t skipped = 0;
    switch (cfg.kind) {
      case LGAS_ENGINE_ALGA_CONST:
      case LGAS_ENGINE_ALGA_ADAPTIVE:
        skipped = lgas::count_skip_cells(field->value, engine->collision);
        next = lgas::step(field->value, engine->collision);
        break;
      case LGAS_ENGINE_LBM:
        next = lgas::lbm_step(field->value, cfg.tau);
        break;
      case LGAS_ENGINE_MCLGA:
        if (!engine->monte_carlo)
          engine->monte_carlo = lgas::McParams{cfg.mc_lambda, lgas::default_attempts(field->value), cfg.seed};
        next = lgas::mclga_step(field->value, *engine->monte_carlo, engine->time, std::max(cfg.threads, 1u));
        break;
      case LGAS_ENGINE_QALGA:
        next = lgas::qalga_step(field->value, engine->collision, *engine->factorization, &skipped);
        break;
    }
    engine->last_skip = skipped;
    ++engine->time;
    field->value = std::move(next);
    if (!field->value.is_physical(kStabilityFloor)) return fail(LGAS_ERR_UNSTABLE, "population left the physical range");
    return LGAS_OK;
  });
}

uint64_t lgas_engine_time(const lgas_engine* engine) { return engine ? engine->time : 0; }

size_t lgas_engine_last_skip_count(const lgas_engine* engine) { return engine ? engine->last_skip : 0; }

// ---- experiments ----------------------------------------------------------

void lgas_sweep_config_default(lgas_sweep_config* config) {
  if (!config) return;
  const lgas::SweepConfig d;
  *config = lgas_sweep_config{};
  config->engine = LGAS_ENGINE_ALGA_CONST;
  config->lattice_size = d.lattice_size;
  config->n_max = d.n_max;
  config->p0 = d.p0;
  config->points = d.points;
  config->u_min = d.u_min;
  config->u_max = d.u_max;
  config->steps = d.steps;
  config->average_from = d.average_from;
  config->lambda_s = d.lambda_s;
  config->lambda_c = d.lambda_c;
  config->mc_lambda = d.mc_lambda;
  config->attempts_per_cell = d.attempts_per_cell;
  config->seed = d.seed;
  config->threads = d.threads;
}

lgas_status lgas_equilibrium_sweep(const lgas_sweep_config* config, lgas_sweep_row* rows, size_t capacity,
                                   size_t* written) {
  if (!config || (!rows && capacity > 0)) return fail(LGAS_ERR_INVALID_ARGUMENT, "null argument");
  if (written) *written = 0;
  if (capacity < config->points) return fail(LGAS_ERR_INVALID_ARGUMENT, "row buffer smaller than the point count");
  return guarded([&] {
    lgas::SweepConfig sc;
    sc.engine = to_kind(config->engine);
    sc.lattice_size = config->lattice_size;
    sc.n_max = config->n_max;
    sc.p0 = config->p0;
    sc.points = config->points;
    sc.u_min = config->u_min;
    sc.u_max = config->u_max;
    sc.steps = config->steps;
    sc.average_from = config->average_from;
    sc.lambda_s = config->lambda_s;
    sc.lambda_c = config->lambda_c;
    sc.mc_lambda = config->mc_lambda;
    sc.attempts_per_cell = config->attempts_per_cell;
    sc.seed = config->seed;
    sc.threads = std::max(config->threads, 1u);
    const auto result = lgas::equilibrium_sweep(sc);
    for (size_t k = 0; k < result.size(); ++k) {
      const auto& r = result[k];
      rows[k] = {r.bias, r.measured.u_x, to_c(r.measured.f_avg), to_c(r.measured.f_stderr), to_c(r.theory)};
    }
    if (written) *written = result.size();
    return LGAS_OK;
  });
}

void lgas_tau_scan_config_default(lgas_tau_scan_config* config) {
  if (!config) return;
  const lgas::TauScanConfig d;
  *config = lgas_tau_scan_config{};
  config->engine = LGAS_ENGINE_QALGA;
  config->lattice_size = d.lattice_size;
  config->n_max = d.n_max;
  config->steps = d.steps;
  config->compare_at = d.compare_at;
  config->lambda_points = 20;
  config->tau_points = 80;
  config->tau_max = 20.0;
  config->threads = d.threads;
}

lgas_status lgas_tau_scan(const lgas_tau_scan_config* config, lgas_tau_row* rows, size_t capacity, size_t* written) {
  if (!config || (!rows && capacity > 0)) return fail(LGAS_ERR_INVALID_ARGUMENT, "null argument");
  if (written) *written = 0;
  if ((config->lambda_s_grid == nullptr) != (config->lambda_s_count == 0) ||
      (config->tau_grid == nullptr) != (config->tau_count == 0))
    return fail(LGAS_ERR_INVALID_ARGUMENT, "explicit grids need both a pointer and a count");
  return guarded([&] {
    lgas::TauScanConfig sc;
    sc.engine = to_kind(config->engine);
    sc.lattice_size = config->lattice_size;
    sc.n_max = config->n_max;
    sc.steps = config->steps;
    sc.compare_at = config->compare_at;
    sc.threads = std::max(config->threads, 1u);
    if (config->lambda_s_grid) {
      sc.lambda_s_grid.assign(config->lambda_s_grid, config->lambda_s_grid + config->lambda_s_count);
    } else {
      sc.lambda_s_grid = lgas::TauScanConfig::default_lambda_grid(config->lambda_points);
    }
    if (config->tau_grid) {
      sc.tau_grid.assign(config->tau_grid, config->tau_grid + config->tau_count);
    } else {
      if (!(config->tau_max > 0.0)) throw std::invalid_argument("tau_max must be positive");
      sc.tau_grid = lgas::TauScanConfig::default_tau_grid(config->tau_points, config->tau_max);
    }
    if (capacity < sc.lambda_s_grid.size()) throw std::invalid_argument("row buffer smaller than the lambda_s grid");
    if (sc.engine == lgas::EngineKind::Qalga && !lgas::is_power_of_two(sc.lattice_size))
      return fail(LGAS_ERR_NOT_POWER_OF_TWO, "qalga needs a power-of-two lattice");

    const auto result = lgas::tau_scan(sc);
    for (size_t k = 0; k < result.size(); ++k) {
      const auto& r = result[k];
      rows[k] = {r.lambda_s, r.best_tau, r.distance.mass, r.distance.momentum, r.stable ? 1 : 0};
    }
    if (written) *written = result.size();
    return LGAS_OK;
  });
}

lgas_status lgas_circuit_dump(size_t n, double lambda_s, char* buffer, size_t capacity, size_t* required) {
  if (!buffer && capacity > 0) return fail(LGAS_ERR_INVALID_ARGUMENT, "null buffer with non-zero capacity");
  if (n < 2 || !lgas::is_power_of_two(n)) return fail(LGAS_ERR_NOT_POWER_OF_TWO, "lattice size must be a power of two");
  return guarded([&] {
    if (!(lambda_s >= 0.0 && lambda_s <= 1.0)) throw std::invalid_argument("lambda_s must lie in [0, 1]");
    const auto fact = lgas::svd_lcu(lgas::collision_matrix(lambda_s));
    const std::string text = lgas::step_circuit(fact, lgas::QubitLayout::for_lattice(n)).dump();
    if (required) *required = text.size() + 1;
    if (capacity > 0) {
      const size_t count = std::min(text.size(), capacity - 1);
      std::memcpy(buffer, text.data(), count);
      buffer[count] = '\0';
    }
    if (buffer && capacity < text.size() + 1) return fail(LGAS_ERR_INVALID_ARGUMENT, "buffer too small for the circuit dump");
    return LGAS_OK;
  });
}

}  // extern "C"
