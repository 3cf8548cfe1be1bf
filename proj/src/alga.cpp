#include "lgas/alga.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lgas {

namespace {

bool in_unit_interval(double v) { return v >= 0.0 && v <= 1.0; }

CollisionTerm symmetric_term(double pair_delta) { return {pair_delta, -2.0 * pair_delta, pair_delta}; }

Cell apply_term(const Cell& c, const CollisionTerm& xi) {
  return {c.n_minus + xi.xi_minus, c.n_zero + xi.xi_zero, c.n_plus + xi.xi_plus};
}

}  // namespace

void CollisionParams::validate() const {
  if (!in_unit_interval(lambda_s)) throw std::invalid_argument("lambda_s must lie in [0, 1]");
  if (mode == CrunchMode::Constant && !in_unit_interval(lambda_c))
    throw std::invalid_argument("lambda_c must lie in [0, 1]");
}

CollisionTerm collision_term(const Cell& cell, double lambda_s, double lambda_c) {
  const double crunches = std::min(cell.n_plus, cell.n_minus);
  return symmetric_term(lambda_s * cell.n_zero / 2.0 - lambda_c * crunches);
}

double adaptive_lambda_c_raw(double lambda_s, double u) {
  const double u2 = u * u;
  return lambda_s * (2.0 - 3.0 * u2) / (1.0 - 3.0 * std::abs(u) + 3.0 * u2);
}

std::optional<double> adaptive_lambda_c(double lambda_s, double u) {
  const double lc = adaptive_lambda_c_raw(lambda_s, u);
  if (lc > 0.0 && lc <= 1.0) return lc;
  return std::nullopt;
}

CollisionTerm integer_cast(const Cell& cell, double lambda_s, double lambda_c) {
  const double crunches = std::min(cell.n_plus, cell.n_minus);
  // nearbyint honours the default round-half-to-even mode. The clamps only
  // bite for odd n0 with lambda_s near 1.
  const double s = std::min(std::nearbyint(lambda_s * cell.n_zero / 2.0), std::floor(cell.n_zero / 2.0));
  const double c = std::min(std::nearbyint(lambda_c * crunches), std::floor(crunches));
  return symmetric_term(s - c);
}

Cell collide_cell(const Cell& cell, const CollisionParams& params) {
  double lambda_c = params.lambda_c;
  if (params.mode == CrunchMode::LocalLbm) {
    const auto adapted = adaptive_lambda_c(params.lambda_s, local_velocity(cell));
    if (!adapted) return cell;
    lambda_c = *adapted;
  }
  const CollisionTerm xi = params.integer_cast ? integer_cast(cell, params.lambda_s, lambda_c)
                                               : collision_term(cell, params.lambda_s, lambda_c);
  return apply_term(cell, xi);
}

PopulationField collide(const PopulationField& field, const CollisionParams& params) {
  PopulationField out(field.size());
  for (std::size_t x = 0; x < field.size(); ++x) out[x] = collide_cell(field[x], params);
  return out;
}

PopulationField stream(const PopulationField& field) {
  const std::size_t n = field.size();
  PopulationField out(n);
  for (std::size_t x = 0; x < n; ++x) {
    const Cell& c = field[x];
    out[(x + 1) % n].n_plus = c.n_plus;
    out[(x + n - 1) % n].n_minus = c.n_minus;
    out[x].n_zero = c.n_zero;
  }
  return out;
}

PopulationField step(const PopulationField& field, const CollisionParams& params) {
  return stream(collide(field, params));
}

History run(const PopulationField& field, const CollisionParams& params, std::size_t steps) {
  params.validate();
  History history;
  history.reserve(steps + 1);
  history.push_back(field);
  for (std::size_t t = 0; t < steps; ++t) history.push_back(step(history.back(), params));
  return history;
}

std::size_t count_skip_cells(const PopulationField& field, const CollisionParams& params) {
  if (params.mode == CrunchMode::Constant) return 0;
  std::size_t skipped = 0;
  for (const auto& c : field) {
    if (c.density() > 0.0 && !adaptive_lambda_c(params.lambda_s, local_velocity(c))) ++skipped;
  }
  return skipped;
}

}  // namespace lgas
