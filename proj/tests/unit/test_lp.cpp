#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <sstream>

#include "unit/support.hpp"
#include "wcfair/centers.hpp"
#include "wcfair/lp.hpp"
#include "wcfair/metrics.hpp"

using namespace wcfair;
using wcfair::testing::make_instance;
using wcfair::testing::random_instance;
using wcfair::testing::two_blobs;

namespace {

Params params_for(const Instance& inst, std::size_t k, double lambda,
                  double delta = 0.0, int p = 2) {
  Params params = Params::with_delta(inst, delta);
  params.k = k;
  params.lambda = lambda;
  params.p = p;
  return params;
}

Matrix random_centers(std::size_t k, std::size_t d, std::uint64_t seed) {
  Rng rng(seed);
  Matrix c(k, d);
  for (double& v : c.data()) v = rng.uniform();
  return c;
}

double objective_of(const GroupReport& rep, Objective obj) {
  return obj == Objective::kRawlsian ? rep.rawlsian : rep.utilitarian;
}

LPResult solve_raw(const LPModel& model, double tol = 1e-9) {
  return SimplexSolver{}.solve(model, {tol, 100000});
}

}  // namespace

TEST(AssignmentLP, ShapeOfTheModels) {
  const Instance inst = random_instance(10, 2, 3, 1);
  const Matrix centers = random_centers(4, 2, 2);
  const Params params = params_for(inst, 4, 0.5, 0.1);
  const LPModel raw = build_rawlsian_lp(inst, centers, params);
  const LPModel util = build_utilitarian_lp(inst, centers, params);
  const std::size_t k = 4, n = 10, h = 3;
  EXPECT_EQ(raw.num_variables(), k * n + 3 * k * h + 1);
  EXPECT_EQ(util.num_variables(), k * n + 3 * k * h);
  EXPECT_EQ(raw.rows.size(), h + 4 * k * h + n);
  EXPECT_EQ(util.rows.size(), 4 * k * h + n);
  ASSERT_TRUE(raw.layout.has_value());
  EXPECT_TRUE(raw.layout->has_z());
  EXPECT_FALSE(util.layout->has_z());

  // Rawlsian objective is exactly z.
  const auto& L = *raw.layout;
  for (std::size_t v = 0; v < raw.num_variables(); ++v) {
    EXPECT_EQ(raw.objective[v], v == L.z() ? 1.0 : 0.0);
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      EXPECT_EQ(raw.lower[L.x(i, j)], 0.0);
      EXPECT_EQ(raw.upper[L.x(i, j)], 1.0);
      const double expected = 0.5 *
          distance_pow(centers.row(i), inst.point(j), 2) /
          static_cast<double>(inst.count(inst.color_of(j)));
      EXPECT_DOUBLE_EQ(util.objective[L.x(i, j)], expected);
    }
    for (std::size_t c = 0; c < h; ++c) {
      EXPECT_EQ(raw.lower[L.t(i, c)], 0.0);
      EXPECT_EQ(raw.upper[L.t(i, c)], kInfinity);
      EXPECT_EQ(raw.lower[L.u(i, c)], -kInfinity);
      EXPECT_EQ(raw.upper[L.o(i, c)], kInfinity);
      EXPECT_DOUBLE_EQ(util.objective[L.t(i, c)],
                       0.5 / static_cast<double>(inst.count(c)));
    }
  }
  std::size_t assign_rows = 0;
  for (const auto& row : raw.rows) {
    if (row.sense == RowSense::kEqual && row.rhs == 1.0) ++assign_rows;
  }
  EXPECT_EQ(assign_rows, n);
}

TEST(AssignmentLP, SingleCenterIsForced) {
  const Instance inst = make_instance({{0.0}, {3.0}}, {0, 1});
  Matrix c(1, 1);
  c(0, 0) = 1.0;
  const Solution forced{c, {0, 0}};
  for (double lambda : {0.2, 1.0}) {
    const Params params = params_for(inst, 1, lambda);
    const GroupReport rep = group_costs(inst, forced, params);
    for (Objective obj : {Objective::kRawlsian, Objective::kUtilitarian}) {
      const auto model = build_assignment_lp(obj, inst, c, params);
      const auto sol = solve_lp(model, 1e-9);
      EXPECT_EQ(sol.solver_status, SolverStatus::kOptimal);
      EXPECT_NEAR(sol.objective_value, objective_of(rep, obj), 1e-12);
      EXPECT_DOUBLE_EQ(sol.x(0, 0), 1.0);
      EXPECT_DOUBLE_EQ(sol.x(0, 1), 1.0);
    }
  }
}

TEST(AssignmentLP, PreferenceOnlyMatchesCenterBasedCosts) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Instance inst = random_instance(40, 2, 2 + seed % 2, seed);
    const Params params = params_for(inst, 3, 1.0);
    const Matrix centers = random_centers(3, 2, 100 + seed);
    const auto phi = nearest_assignment(inst, centers);
    const auto w = inverse_group_size_weights(inst);
    const auto util = solve_lp(build_utilitarian_lp(inst, centers, params), 1e-9);
    const double weighted = weighted_cost(inst, {centers, phi}, 2, w);
    EXPECT_NEAR(util.objective_value, weighted, 1e-9 * weighted);

    // One center: every point is assigned to it.
    Matrix one(1, 2);
    one(0, 0) = 0.3;
    one(0, 1) = 0.6;
    const Params p1 = params_for(inst, 1, 1.0);
    const auto raw = solve_lp(build_rawlsian_lp(inst, one, p1), 1e-9);
    const double sf =
        socially_fair_cost(inst, {one, std::vector<std::size_t>(inst.n(), 0)}, 2);
    EXPECT_NEAR(raw.objective_value, sf, 1e-9 * sf);
  }
}

TEST(AssignmentLP, IntegralEmbedding) {
  Rng rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t colors = 2 + trial % 3;
    const Instance inst = random_instance(25, 2, colors, 70 + trial);
    const std::size_t k = 1 + trial % 4;
    const Params params = params_for(inst, k, rng.uniform(), 0.2 * rng.uniform(),
                                     1 + trial % 2);
    const Matrix centers = random_centers(k, 2, 900 + trial);
    std::vector<std::size_t> phi(inst.n());
    for (auto& v : phi) v = rng.below(k);
    const GroupReport rep = group_costs(inst, {centers, phi}, params);
    for (Objective obj : {Objective::kRawlsian, Objective::kUtilitarian}) {
      const auto model = build_assignment_lp(obj, inst, centers, params);
      const auto v = embed_assignment(model, inst, phi);
      EXPECT_LE(max_infeasibility(model, v), 1e-12);
      const double expected = objective_of(rep, obj);
      EXPECT_NEAR(evaluate_objective(model, v), expected, 1e-12 * (1 + expected));
      const auto& L = *model.layout;
      for (std::size_t i = 0; i < k; ++i) {
        for (ColorId h = 0; h < colors; ++h) {
          EXPECT_GE(v[L.t(i, h)], 0.0);
          EXPECT_NEAR(v[L.t(i, h)], std::max({v[L.u(i, h)], v[L.o(i, h)], 0.0}),
                      1e-12);
        }
      }
    }
  }
}

TEST(AssignmentLP, OptimumTightensViolationVariables) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Instance inst = random_instance(60, 2, 2 + seed % 2, 40 + seed);
    const Params params = params_for(inst, 4, 0.5, 0.05);
    const Matrix centers = random_centers(4, 2, 7 + seed);
    for (Objective obj : {Objective::kRawlsian, Objective::kUtilitarian}) {
      const auto model = build_assignment_lp(obj, inst, centers, params);
      const LPResult raw = solve_raw(model, 1e-9);
      ASSERT_EQ(raw.status, SolverStatus::kOptimal);
      EXPECT_LE(max_infeasibility(model, raw.values), 1e-7);
      EXPECT_NEAR(raw.objective, evaluate_objective(model, raw.values), 1e-7);
      const auto sol = extract_assignment(model, raw);
      for (std::size_t j = 0; j < inst.n(); ++j) {
        double col = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
          const double x = sol.x(i, j);
          EXPECT_GE(x, 0.0);
          EXPECT_LE(x, 1.0);
          EXPECT_TRUE(x == 0.0 || x >= kAssignmentPruneThreshold);
          col += x;
        }
        EXPECT_NEAR(col, 1.0, 1e-7);
      }
      for (std::size_t i = 0; i < 4; ++i) {
        for (ColorId h = 0; h < inst.num_colors(); ++h) {
          EXPECT_NEAR(sol.t(i, h), std::max({sol.u(i, h), sol.o(i, h), 0.0}), 1e-7);
        }
      }
      // The cleaned-up objective is no worse than the raw one.
      EXPECT_LE(sol.objective_value, raw.objective + 1e-7);
    }
  }
}

TEST(AssignmentLP, RelaxationIsBelowEveryIntegralAssignment) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t n = 4 + seed % 5;
    const Instance inst = random_instance(n, 2, 2, 2000 + seed);
    Rng rng(seed);
    const Params params =
        params_for(inst, 2, 0.1 + 0.8 * rng.uniform(), 0.1 * rng.uniform());
    const Matrix centers = random_centers(2, 2, 3000 + seed);
    for (Objective obj : {Objective::kRawlsian, Objective::kUtilitarian}) {
      const auto lp = solve_lp(build_assignment_lp(obj, inst, centers, params), 1e-9);
      const Solution best = brute_force_assignment(inst, centers, params, obj);
      const double brute = objective_of(group_costs(inst, best, params), obj);
      EXPECT_LE(lp.objective_value, brute + 1e-9);
      // Exhaustive check that brute force found the minimum.
      std::vector<std::size_t> phi(n, 0);
      for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        for (std::size_t j = 0; j < n; ++j) phi[j] = (mask >> j) & 1;
        const double v = objective_of(group_costs(inst, {centers, phi}, params), obj);
        EXPECT_GE(v, brute - 1e-12);
      }
    }
  }
}

TEST(AssignmentLP, ColorPermutationInvariance) {
  const Instance inst = random_instance(30, 2, 2, 55);
  std::vector<ColorId> swapped = inst.colors();
  for (auto& h : swapped) h = 1 - h;
  const Instance mirror(inst.features(), swapped, {"b", "a"});
  const Matrix centers = random_centers(3, 2, 56);
  for (Objective obj : {Objective::kRawlsian, Objective::kUtilitarian}) {
    const double a = solve_lp(build_assignment_lp(obj, inst, centers,
                                                  params_for(inst, 3, 0.4, 0.02)),
                              1e-9).objective_value;
    const double b = solve_lp(build_assignment_lp(obj, mirror, centers,
                                                  params_for(mirror, 3, 0.4, 0.02)),
                              1e-9).objective_value;
    EXPECT_NEAR(a, b, 1e-8);
  }
}

TEST(AssignmentLP, ToleranceContract) {
  const Instance inst = random_instance(200, 2, 2, 8);
  const Params params = params_for(inst, 5, 0.5, 0.01);
  const Matrix centers = random_centers(5, 2, 8);
  for (Objective obj : {Objective::kRawlsian, Objective::kUtilitarian}) {
    const auto model = build_assignment_lp(obj, inst, centers, params);
    const auto tight = solve_lp(model, 1e-7);
    const auto loose = solve_lp(model, 2e-7);
    EXPECT_GE(loose.objective_value, tight.objective_value - 2e-7);
  }
}

TEST(BruteForce, TwoBlobsMixColors) {
  const double lambda = 0.5;
  const double sep2 = 2.0 * (1.0 - lambda) / lambda * 0.1;
  const Instance inst = two_blobs(4, std::sqrt(sep2));
  const Params params = params_for(inst, 2, lambda);
  Matrix centers(2, 1);
  centers(1, 0) = std::sqrt(sep2);
  const Solution best =
      brute_force_assignment(inst, centers, params, Objective::kRawlsian);
  const GroupReport rep = group_costs(inst, best, params);
  EXPECT_NEAR(rep.rawlsian, lambda / 2.0 * sep2, 1e-12);
  EXPECT_EQ(rep.violation[0], 0.0);
  EXPECT_EQ(rep.violation[1], 0.0);
  // Lexicographically smallest optimum.
  EXPECT_EQ(best.assignment,
            (std::vector<std::size_t>{0, 0, 1, 1, 0, 0, 1, 1}));
}

TEST(BruteForce, SingleCenterAndLimit) {
  const Instance inst = random_instance(6, 2, 2, 5);
  Matrix one(1, 2);
  const Params params = params_for(inst, 1, 0.5);
  EXPECT_EQ(brute_force_assignment(inst, one, params, Objective::kUtilitarian).assignment,
            std::vector<std::size_t>(6, 0));
  const Instance big = random_instance(24, 2, 2, 5);
  EXPECT_THROW(brute_force_assignment(big, random_centers(2, 2, 1),
                                      params_for(big, 2, 0.5), Objective::kRawlsian),
               UsageError);
}

namespace {

LPModel two_var_model() {
  // min -x - 2y  s.t. x + y <= 4, x + 3y <= 6, 0 <= x <= 3, y >= 0.
  LPModel m;
  const auto x = m.add_variable("x", -1.0, 0.0, 3.0);
  const auto y = m.add_variable("y", -2.0, 0.0, kInfinity);
  m.rows.push_back({{x, y}, {1.0, 1.0}, RowSense::kLessEqual, 4.0, "cap"});
  m.rows.push_back({{x, y}, {1.0, 3.0}, RowSense::kLessEqual, 6.0, "mix"});
  return m;
}

}  // namespace

TEST(Simplex, SmallKnownOptimum) {
  const LPResult r = solve_raw(two_var_model());
  ASSERT_EQ(r.status, SolverStatus::kOptimal);
  EXPECT_NEAR(r.values[0], 3.0, 1e-9);
  EXPECT_NEAR(r.values[1], 1.0, 1e-9);
  EXPECT_NEAR(r.objective, -5.0, 1e-9);
}

TEST(Simplex, GreaterEqualAndEqualityRows) {
  // min 2a + 3b + c  s.t. a + b >= 2, b + c = 3, a - c >= -1, all >= 0.
  LPModel m;
  const auto a = m.add_variable("a", 2.0, 0.0, kInfinity);
  const auto b = m.add_variable("b", 3.0, 0.0, kInfinity);
  const auto c = m.add_variable("c", 1.0, 0.0, kInfinity);
  m.rows.push_back({{a, b}, {1, 1}, RowSense::kGreaterEqual, 2.0, "r1"});
  m.rows.push_back({{b, c}, {1, 1}, RowSense::kEqual, 3.0, "r2"});
  m.rows.push_back({{a, c}, {1, -1}, RowSense::kGreaterEqual, -1.0, "r3"});
  const LPResult r = solve_raw(m);
  ASSERT_EQ(r.status, SolverStatus::kOptimal);
  // Candidates: b=0,c=3,a=2 -> 7; b=2,c=1,a=0 -> 7; a=1,b=1,c=2 -> 7.
  EXPECT_NEAR(r.objective, 7.0, 1e-9);
  EXPECT_LE(max_infeasibility(m, r.values), 1e-9);
}

TEST(Simplex, FreeVariables) {
  // min |u| style: min t s.t. t >= u - 5, t >= 5 - u, u free, u = 2 + w, w in [0, 1].
  LPModel m;
  const auto t = m.add_variable("t", 1.0, -kInfinity, kInfinity);
  const auto u = m.add_variable("u", 0.0, -kInfinity, kInfinity);
  const auto w = m.add_variable("w", 0.0, 0.0, 1.0);
  m.rows.push_back({{t, u}, {1, -1}, RowSense::kGreaterEqual, -5.0, "a"});
  m.rows.push_back({{t, u}, {1, 1}, RowSense::kGreaterEqual, 5.0, "b"});
  m.rows.push_back({{u, w}, {1, -1}, RowSense::kEqual, 2.0, "c"});
  const LPResult r = solve_raw(m);
  ASSERT_EQ(r.status, SolverStatus::kOptimal);
  EXPECT_NEAR(r.objective, 2.0, 1e-9);
  EXPECT_NEAR(r.values[u], 3.0, 1e-9);
}

TEST(Simplex, SinglePointFeasibleSet) {
  LPModel m;
  const auto a = m.add_variable("a", 5.0, 0.0, kInfinity);
  const auto b = m.add_variable("b", -1.0, 0.0, kInfinity);
  m.rows.push_back({{a, b}, {1, 1}, RowSense::kEqual, 1.0, "s"});
  m.rows.push_back({{a, b}, {1, -1}, RowSense::kEqual, 0.5, "d"});
  const LPResult r = solve_raw(m);
  ASSERT_EQ(r.status, SolverStatus::kOptimal);
  EXPECT_NEAR(r.values[a], 0.75, 1e-12);
  EXPECT_NEAR(r.values[b], 0.25, 1e-12);
  EXPECT_NEAR(r.objective, 3.5, 1e-12);
}

TEST(Simplex, InfeasibleAndUnbounded) {
  LPModel inf;
  const auto a = inf.add_variable("a", 1.0, 0.0, 1.0);
  inf.rows.push_back({{a}, {1.0}, RowSense::kGreaterEqual, 2.0, "x"});
  EXPECT_EQ(solve_raw(inf).status, SolverStatus::kInfeasible);
  EXPECT_THROW(solve_lp(inf, 1e-7), InternalError);

  LPModel unb;
  const auto x = unb.add_variable("x", -1.0, 0.0, kInfinity);
  const auto y = unb.add_variable("y", 0.0, 0.0, kInfinity);
  unb.rows.push_back({{x, y}, {1, -1}, RowSense::kLessEqual, 1.0, "x"});
  EXPECT_EQ(solve_raw(unb).status, SolverStatus::kUnbounded);
  EXPECT_THROW(solve_lp(unb, 1e-7), InternalError);
}

TEST(Simplex, IterationLimit) {
  const Instance inst = random_instance(100, 2, 2, 3);
  const auto model = build_rawlsian_lp(inst, random_centers(4, 2, 3),
                                       params_for(inst, 4, 0.5, 0.01));
  const LPResult r = SimplexSolver{}.solve(model, {1e-7, 1});
  EXPECT_EQ(r.status, SolverStatus::kIterationLimit);
  EXPECT_LE(r.iterations, 1u);
}

TEST(Simplex, RandomLPsAgainstVertexEnumeration) {
  // min c^T v over the box [0, 2]^2 cut by two random <= rows; the optimum of
  // a 2-D LP lies at an intersection of two active constraints.
  Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    LPModel m;
    const double c0 = 2 * rng.uniform() - 1, c1 = 2 * rng.uniform() - 1;
    m.add_variable("a", c0, 0.0, 2.0);
    m.add_variable("b", c1, 0.0, 2.0);
    std::vector<std::array<double, 3>> lines = {
        {1, 0, 0}, {1, 0, 2}, {0, 1, 0}, {0, 1, 2}};
    for (int r = 0; r < 2; ++r) {
      const double p = rng.uniform() + 0.1, q = rng.uniform() + 0.1;
      const double rhs = 0.5 + 2 * rng.uniform();
      m.rows.push_back({{0, 1}, {p, q}, RowSense::kLessEqual, rhs, "r"});
      lines.push_back({p, q, rhs});
    }
    double best = INFINITY;
    for (std::size_t s = 0; s < lines.size(); ++s) {
      for (std::size_t t = s + 1; t < lines.size(); ++t) {
        const auto& A = lines[s];
        const auto& B = lines[t];
        const double det = A[0] * B[1] - A[1] * B[0];
        if (std::abs(det) < 1e-12) continue;
        const double va = (A[2] * B[1] - A[1] * B[2]) / det;
        const double vb = (A[0] * B[2] - A[2] * B[0]) / det;
        const std::vector<double> v = {va, vb};
        if (max_infeasibility(m, v) > 1e-12) continue;
        best = std::min(best, c0 * va + c1 * vb);
      }
    }
    const LPResult r = solve_raw(m);
    ASSERT_EQ(r.status, SolverStatus::kOptimal);
    EXPECT_NEAR(r.objective, best, 1e-9);
  }
}

TEST(LPFormat, Sections) {
  const Instance inst = make_instance({{0.0}, {1.0}}, {0, 1});
  Matrix c(1, 1);
  c(0, 0) = 0.1;
  const auto model = build_rawlsian_lp(inst, c, params_for(inst, 1, 0.5));
  std::ostringstream out;
  write_lp_format(model, out);
  const std::string text = out.str();
  for (const char* part : {"Minimize", "Subject To", "Bounds", "End", "x_0_1",
                           "assign_1", "free"}) {
    EXPECT_NE(text.find(part), std::string::npos) << part;
  }
  EXPECT_LT(text.find("Minimize"), text.find("Subject To"));
  EXPECT_LT(text.find("Subject To"), text.find("Bounds"));
  // 17 significant digits: 0.5 * 0.81 / 1 = 0.405 prints as 0.40500000000000003.
  EXPECT_NE(text.find("0.40500000000000003"), std::string::npos);
}
