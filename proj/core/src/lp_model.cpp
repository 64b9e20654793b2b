#include <algorithm>
#include <cmath>
#include <cstdio>

#include "wcfair/lp.hpp"
#include "wcfair/metrics.hpp"

namespace wcfair {

std::string_view to_string(Objective objective) {
  return objective == Objective::kRawlsian ? "rawlsian" : "utilitarian";
}

std::string_view to_string(SolverStatus status) {
  switch (status) {
    case SolverStatus::kOptimal:
      return "optimal";
    case SolverStatus::kInfeasible:
      return "infeasible";
    case SolverStatus::kUnbounded:
      return "unbounded";
    case SolverStatus::kIterationLimit:
      return "iteration_limit";
  }
  return "unknown";
}

AssignmentLayout::AssignmentLayout(std::size_t k, std::size_t n,
                                   std::size_t colors, bool has_z)
    : k_(k), n_(n), colors_(colors), has_z_(has_z) {}

std::size_t LPModel::add_variable(std::string name, double cost, double lo,
                                  double hi) {
  objective.push_back(cost);
  lower.push_back(lo);
  upper.push_back(hi);
  names.push_back(std::move(name));
  return objective.size() - 1;
}

namespace {

std::string indexed(const char* prefix, std::size_t a, std::size_t b) {
  return std::string(prefix) + "_" + std::to_string(a) + "_" + std::to_string(b);
}

}  // namespace

LPModel build_assignment_lp(Objective objective, const Instance& instance,
                            const Matrix& centers, const Params& params) {
  validate(params, instance);
  const std::size_t k = centers.rows();
  const std::size_t n = instance.n();
  const std::size_t colors = instance.num_colors();
  if (k == 0) throw UsageError("center set is empty");
  if (centers.cols() != instance.d()) {
    throw UsageError("center dimensionality does not match instance");
  }
  const bool rawlsian = objective == Objective::kRawlsian;
  const double lambda = params.lambda;
  const Matrix dist = distance_table(instance, centers, params.p, params.metric);
  const AssignmentLayout layout(k, n, colors, rawlsian);

  LPModel model;
  model.layout = layout;
  const std::size_t total = layout.num_variables();
  model.objective.reserve(total);
  model.lower.reserve(total);
  model.upper.reserve(total);
  model.names.reserve(total);

  for (std::size_t j = 0; j < n; ++j) {
    const double n_h = static_cast<double>(instance.count(instance.color_of(j)));
    for (std::size_t i = 0; i < k; ++i) {
      const double cost = rawlsian ? 0.0 : lambda * dist(i, j) / n_h;
      model.add_variable(indexed("x", i, j), cost, 0.0, 1.0);
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t h = 0; h < colors; ++h) {
      const double cost =
          rawlsian ? 0.0
                   : (1.0 - lambda) / static_cast<double>(instance.count(h));
      model.add_variable(indexed("t", i, h), cost, 0.0, kInfinity);
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t h = 0; h < colors; ++h) {
      model.add_variable(indexed("u", i, h), 0.0, -kInfinity, kInfinity);
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t h = 0; h < colors; ++h) {
      model.add_variable(indexed("o", i, h), 0.0, -kInfinity, kInfinity);
    }
  }
  if (rawlsian) model.add_variable("z", 1.0, -kInfinity, kInfinity);

  // Per color: disutility expression <= z.
  if (rawlsian) {
    for (std::size_t h = 0; h < colors; ++h) {
      const double n_h = static_cast<double>(instance.count(h));
      LinearRow row;
      row.name = "disu_" + std::to_string(h);
      row.sense = RowSense::kLessEqual;
      for (const std::size_t j : instance.members(h)) {
        for (std::size_t i = 0; i < k; ++i) {
          const double coef = lambda * dist(i, j) / n_h;
          if (coef == 0.0) continue;
          row.index.push_back(layout.x(i, j));
          row.value.push_back(coef);
        }
      }
      if (lambda < 1.0) {
        for (std::size_t i = 0; i < k; ++i) {
          row.index.push_back(layout.t(i, h));
          row.value.push_back((1.0 - lambda) / n_h);
        }
      }
      row.index.push_back(layout.z());
      row.value.push_back(-1.0);
      model.rows.push_back(std::move(row));
    }
  }

  // u_{ih} = (r_h - beta_h) sum_j x_ij - sum_{j in P^h} x_ij
  // o_{ih} = sum_{j in P^h} x_ij - (r_h + alpha_h) sum_j x_ij
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t h = 0; h < colors; ++h) {
      const double lower_share = instance.proportion(h) - params.beta[h];
      const double upper_share = instance.proportion(h) + params.alpha[h];
      LinearRow under;
      under.name = indexed("under", i, h);
      LinearRow over;
      over.name = indexed("over", i, h);
      for (std::size_t j = 0; j < n; ++j) {
        const double own = instance.color_of(j) == h ? 1.0 : 0.0;
        const double cu = lower_share - own;
        const double co = own - upper_share;
        if (cu != 0.0) {
          under.index.push_back(layout.x(i, j));
          under.value.push_back(cu);
        }
        if (co != 0.0) {
          over.index.push_back(layout.x(i, j));
          over.value.push_back(co);
        }
      }
      under.index.push_back(layout.u(i, h));
      under.value.push_back(-1.0);
      over.index.push_back(layout.o(i, h));
      over.value.push_back(-1.0);
      model.rows.push_back(std::move(under));
      model.rows.push_back(std::move(over));
    }
  }

  // u <= t, o <= t.
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t h = 0; h < colors; ++h) {
      for (const bool is_u : {true, false}) {
        LinearRow row;
        row.name = indexed(is_u ? "tu" : "to", i, h);
        row.sense = RowSense::kLessEqual;
        row.index = {is_u ? layout.u(i, h) : layout.o(i, h), layout.t(i, h)};
        row.value = {1.0, -1.0};
        model.rows.push_back(std::move(row));
      }
    }
  }

  // Each point fully assigned.
  for (std::size_t j = 0; j < n; ++j) {
    LinearRow row;
    row.name = "assign_" + std::to_string(j);
    row.rhs = 1.0;
    for (std::size_t i = 0; i < k; ++i) {
      row.index.push_back(layout.x(i, j));
      row.value.push_back(1.0);
    }
    model.rows.push_back(std::move(row));
  }

  // Start from the nearest center of every point (lowest index on ties).
  model.start_hint.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < k; ++i) {
      if (dist(i, j) < dist(best, j)) best = i;
    }
    model.start_hint[j] = layout.x(best, j);
  }
  return model;
}

LPModel build_rawlsian_lp(const Instance& instance, const Matrix& centers,
                          const Params& params) {
  return build_assignment_lp(Objective::kRawlsian, instance, centers, params);
}

LPModel build_utilitarian_lp(const Instance& instance, const Matrix& centers,
                             const Params& params) {
  return build_assignment_lp(Objective::kUtilitarian, instance, centers,
                             params);
}

double evaluate_objective(const LPModel& model, const std::vector<double>& v) {
  double total = 0.0;
  for (std::size_t c = 0; c < model.num_variables(); ++c) {
    if (model.objective[c] != 0.0) total += model.objective[c] * v[c];
  }
  return total;
}

double max_infeasibility(const LPModel& model, const std::vector<double>& v) {
  double worst = 0.0;
  for (std::size_t c = 0; c < model.num_variables(); ++c) {
    worst = std::max({worst, model.lower[c] - v[c], v[c] - model.upper[c]});
  }
  for (const auto& row : model.rows) {
    double lhs = 0.0;
    for (std::size_t e = 0; e < row.index.size(); ++e) {
      lhs += row.value[e] * v[row.index[e]];
    }
    const double diff = lhs - row.rhs;
    switch (row.sense) {
      case RowSense::kLessEqual:
        worst = std::max(worst, diff);
        break;
      case RowSense::kGreaterEqual:
        worst = std::max(worst, -diff);
        break;
      case RowSense::kEqual:
        worst = std::max(worst, std::abs(diff));
        break;
    }
  }
  return worst;
}

FractionalSolution extract_assignment(const LPModel& model,
                                      const LPResult& result) {
  if (!model.layout) throw UsageError("model is not an assignment LP");
  const AssignmentLayout& layout = *model.layout;
  const std::size_t k = layout.k();
  const std::size_t colors = layout.colors();

  std::vector<double> v = result.values;
  if (v.size() != model.num_variables()) {
    throw InternalError("solver returned a vector of the wrong length");
  }
  FractionalSolution frac;
  frac.x = Matrix(k, layout.n());
  frac.t = Matrix(k, colors);
  frac.u = Matrix(k, colors);
  frac.o = Matrix(k, colors);
  for (std::size_t j = 0; j < layout.n(); ++j) {
    for (std::size_t i = 0; i < k; ++i) {
      double& x = v[layout.x(i, j)];
      if (x < kAssignmentPruneThreshold) x = 0.0;
      if (x > 1.0) x = 1.0;
      frac.x(i, j) = x;
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t h = 0; h < colors; ++h) {
      const double u = v[layout.u(i, h)];
      const double o = v[layout.o(i, h)];
      double& t = v[layout.t(i, h)];
      t = std::max({u, o, 0.0});
      frac.t(i, h) = t;
      frac.u(i, h) = u;
      frac.o(i, h) = o;
    }
  }
  frac.objective_value = evaluate_objective(model, v);
  frac.solver_status = result.status;
  frac.iterations = result.iterations;
  return frac;
}

FractionalSolution solve_lp(const LPModel& model, double tolerance,
                            const LPSolver& solver) {
  SolverOptions options;
  options.tolerance = tolerance;
  const LPResult result = solver.solve(model, options);
  switch (result.status) {
    case SolverStatus::kInfeasible:
      throw InternalError("assignment LP reported infeasible");
    case SolverStatus::kUnbounded:
      throw InternalError("assignment LP reported unbounded");
    default:
      break;
  }
  return extract_assignment(model, result);
}

std::vector<double> embed_assignment(
    const LPModel& model, const Instance& instance,
    const std::vector<std::size_t>& assignment) {
  if (!model.layout) throw UsageError("model is not an assignment LP");
  const AssignmentLayout& layout = *model.layout;
  if (assignment.size() != layout.n() || instance.n() != layout.n()) {
    throw UsageError("assignment length does not match model");
  }
  std::vector<double> v(model.num_variables(), 0.0);
  for (std::size_t j = 0; j < layout.n(); ++j) {
    v[layout.x(assignment[j], j)] = 1.0;
  }
  // Row coefficients carry r_h -/+ slack, so u and o are read back from the
  // rows themselves to satisfy them to rounding.
  for (const auto& row : model.rows) {
    if (row.sense != RowSense::kEqual || row.rhs != 0.0) continue;
    const std::size_t defined = row.index.back();
    double lhs = 0.0;
    for (std::size_t e = 0; e + 1 < row.index.size(); ++e) {
      lhs += row.value[e] * v[row.index[e]];
    }
    v[defined] = lhs;
  }
  for (std::size_t i = 0; i < layout.k(); ++i) {
    for (std::size_t h = 0; h < layout.colors(); ++h) {
      v[layout.t(i, h)] =
          std::max({v[layout.u(i, h)], v[layout.o(i, h)], 0.0});
    }
  }
  if (layout.has_z()) {
    double z = -kInfinity;
    for (const auto& row : model.rows) {
      if (row.sense != RowSense::kLessEqual || row.index.back() != layout.z()) {
        continue;
      }
      double lhs = 0.0;
      for (std::size_t e = 0; e + 1 < row.index.size(); ++e) {
        lhs += row.value[e] * v[row.index[e]];
      }
      z = std::max(z, lhs);
    }
    v[layout.z()] = z;
  }
  return v;
}

Solution brute_force_assignment(const Instance& instance, const Matrix& centers,
                                const Params& params, Objective objective) {
  validate(params, instance);
  const std::size_t k = centers.rows();
  const std::size_t n = instance.n();
  const std::size_t colors = instance.num_colors();
  if (std::pow(static_cast<double>(k), static_cast<double>(n)) >
      kBruteForceLimit) {
    throw UsageError("brute-force enumeration of " + std::to_string(k) + "^" +
                     std::to_string(n) + " assignments exceeds the limit");
  }
  const Matrix dist = distance_table(instance, centers, params.p, params.metric);

  std::vector<std::size_t> current(n, 0);
  std::vector<std::size_t> best = current;
  double best_value = kInfinity;
  std::vector<double> distance(colors);
  std::vector<double> violation(colors);
  std::vector<std::size_t> size(k);
  std::vector<std::size_t> mass(k * colors);

  auto evaluate = [&]() {
    std::fill(distance.begin(), distance.end(), 0.0);
    std::fill(violation.begin(), violation.end(), 0.0);
    std::fill(size.begin(), size.end(), 0);
    std::fill(mass.begin(), mass.end(), 0);
    for (std::size_t j = 0; j < n; ++j) {
      const ColorId h = instance.color_of(j);
      distance[h] += dist(current[j], j);
      ++size[current[j]];
      ++mass[current[j] * colors + h];
    }
    for (std::size_t i = 0; i < k; ++i) {
      for (ColorId h = 0; h < colors; ++h) {
        violation[h] += weighted_violation_counts(
            mass[i * colors + h], size[i], instance.count(h), n,
            params.alpha[h], params.beta[h]);
      }
    }
    double value = 0.0;
    for (ColorId h = 0; h < colors; ++h) {
      const double disu = (params.lambda * distance[h] +
                           (1.0 - params.lambda) * violation[h]) /
                          static_cast<double>(instance.count(h));
      value = objective == Objective::kRawlsian ? std::max(value, disu)
                                                : value + disu;
    }
    return value;
  };

  // Odometer with point 0 as the most significant digit: lexicographic order.
  while (true) {
    const double value = evaluate();
    if (best_value == kInfinity ||
        value < best_value - 1e-12 * std::max(1.0, std::abs(best_value))) {
      best_value = value;
      best = current;
    }
    std::size_t pos = n;
    while (pos > 0 && current[pos - 1] + 1 == k) current[--pos] = 0;
    if (pos == 0) break;
    ++current[pos - 1];
  }
  return Solution{centers, best};
}

namespace {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_terms(std::ostream& out, const std::vector<std::size_t>& index,
                 const std::vector<double>& value,
                 const std::vector<std::string>& names) {
  std::size_t on_line = 0;
  for (std::size_t e = 0; e < index.size(); ++e) {
    if (value[e] == 0.0) continue;
    if (on_line == 6) {
      out << "\n   ";
      on_line = 0;
    }
    out << (value[e] < 0.0 ? " - " : " + ") << format_number(std::abs(value[e]))
        << ' ' << names[index[e]];
    ++on_line;
  }
  if (index.empty()) out << " 0 " << names.front();
}

}  // namespace

void write_lp_format(const LPModel& model, std::ostream& out) {
  out << "\\ assignment LP\nMinimize\n obj:";
  std::vector<std::size_t> idx;
  std::vector<double> val;
  for (std::size_t c = 0; c < model.num_variables(); ++c) {
    if (model.objective[c] != 0.0) {
      idx.push_back(c);
      val.push_back(model.objective[c]);
    }
  }
  write_terms(out, idx, val, model.names);
  out << "\nSubject To\n";
  for (std::size_t r = 0; r < model.rows.size(); ++r) {
    const auto& row = model.rows[r];
    out << ' ' << (row.name.empty() ? "r" + std::to_string(r) : row.name)
        << ':';
    write_terms(out, row.index, row.value, model.names);
    const char* sense = row.sense == RowSense::kLessEqual   ? "<="
                        : row.sense == RowSense::kEqual     ? "="
                                                            : ">=";
    out << ' ' << sense << ' ' << format_number(row.rhs) << '\n';
  }
  out << "Bounds\n";
  for (std::size_t c = 0; c < model.num_variables(); ++c) {
    const double lo = model.lower[c];
    const double hi = model.upper[c];
    const std::string& name = model.names[c];
    if (lo == -kInfinity && hi == kInfinity) {
      out << ' ' << name << " free\n";
    } else if (hi == kInfinity) {
      if (lo != 0.0) out << ' ' << name << " >= " << format_number(lo) << '\n';
    } else if (lo == -kInfinity) {
      out << " -inf <= " << name << " <= " << format_number(hi) << '\n';
    } else {
      out << ' ' << format_number(lo) << " <= " << name
          << " <= " << format_number(hi) << '\n';
    }
  }
  out << "End\n";
}

}  // namespace wcfair
