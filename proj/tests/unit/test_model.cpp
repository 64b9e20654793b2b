#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "unit/support.hpp"
#include "wcfair/centers.hpp"
#include "wcfair/metrics.hpp"
#include "wcfair/model.hpp"

using namespace wcfair;
using wcfair::testing::make_instance;
using wcfair::testing::random_instance;
using wcfair::testing::TempDir;

namespace {

const std::vector<std::string> kX = {"x"};

LoadError::Kind load_kind(const std::filesystem::path& path,
                          const std::vector<std::string>& features,
                          const std::string& group) {
  try {
    load_instance(path, features, group);
  } catch (const LoadError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no LoadError from " << path;
  return LoadError::Kind::kNoRows;
}

}  // namespace

TEST(Instance, CountsAndProportions) {
  TempDir dir("model");
  const auto csv = dir.write("three.csv", "x,g\n0,a\n1,b\n2,a\n");
  const Instance inst = load_instance(csv, kX, "g");
  EXPECT_EQ(inst.n(), 3u);
  EXPECT_EQ(inst.d(), 1u);
  ASSERT_EQ(inst.num_colors(), 2u);
  EXPECT_EQ(inst.color_names()[0], "a");
  EXPECT_EQ(inst.count(0), 2u);
  EXPECT_EQ(inst.count(1), 1u);
  EXPECT_DOUBLE_EQ(inst.proportion(0), 2.0 / 3.0);
  EXPECT_EQ(inst.members(0), (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(inst.point(1)[0], 1.0);
}

TEST(Instance, RejectsBrokenInvariants) {
  EXPECT_THROW(make_instance({{0.0}, {1.0}}, {0, 0}), DataError);
  EXPECT_THROW(make_instance({{0.0}, {1.0}}, {0, 2}, 2), DataError);
  EXPECT_THROW(make_instance({{0.0}, {1.0}}, {0, 1}, 1), DataError);
  EXPECT_THROW(Instance(Matrix(0, 1), {}, {"a", "b"}), DataError);
  EXPECT_THROW(Instance(Matrix(2, 1), {0}, {"a", "b"}), DataError);
}

TEST(Instance, CountsSumToN) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Instance inst = random_instance(37, 3, 3 + seed % 2, seed);
    std::size_t total = 0;
    for (ColorId h = 0; h < inst.num_colors(); ++h) total += inst.count(h);
    EXPECT_EQ(total, inst.n());
    std::size_t num = 0;
    for (ColorId h = 0; h < inst.num_colors(); ++h) num += inst.members(h).size();
    EXPECT_EQ(num, inst.n());
  }
}

TEST(LoadInstance, Adult) {
  const std::vector<std::string> features = {
      "age", "final-weight", "education-num", "capital-gain", "hours-per-week"};
  const Instance inst =
      load_instance(WCFAIR_DATA_DIR "/adult.csv", features, "gender");
  EXPECT_EQ(inst.n(), 32561u);
  EXPECT_EQ(inst.d(), 5u);
  EXPECT_EQ(inst.num_colors(), 2u);
}

TEST(LoadInstance, ErrorKinds) {
  TempDir dir("model");
  EXPECT_EQ(load_kind(dir.path() / "absent.csv", kX, "g"),
            LoadError::Kind::kMissingFile);
  EXPECT_EQ(load_kind(dir.write("a.csv", "x,g\n0,a\n1,b\n"), {"y"}, "g"),
            LoadError::Kind::kMissingColumn);
  EXPECT_EQ(load_kind(dir.write("b.csv", "x,g\n0,a\n1,b\n"), kX, "h"),
            LoadError::Kind::kMissingColumn);
  EXPECT_EQ(load_kind(dir.write("c.csv", "x,g\n0,a\n,b\n"), kX, "g"),
            LoadError::Kind::kEmptyCell);
  EXPECT_EQ(load_kind(dir.write("d.csv", "x,g\n0,a\n1,\n"), kX, "g"),
            LoadError::Kind::kEmptyCell);
  EXPECT_EQ(load_kind(dir.write("e.csv", "x,g\n0,a\nabc,b\n"), kX, "g"),
            LoadError::Kind::kNonNumeric);
  EXPECT_EQ(load_kind(dir.write("f.csv", "x,g\n0,a\n1\n"), kX, "g"),
            LoadError::Kind::kRaggedRow);
  EXPECT_EQ(load_kind(dir.write("g.csv", "x,g\n0,a\n1,a\n2,a\n"), kX, "g"),
            LoadError::Kind::kSingleColor);
  EXPECT_EQ(load_kind(dir.write("h.csv", "x,g\n"), kX, "g"),
            LoadError::Kind::kNoRows);
  EXPECT_EQ(load_kind(dir.write("i.csv", ""), kX, "g"),
            LoadError::Kind::kNoRows);
}

TEST(LoadInstance, LoadErrorIsDataError) {
  TempDir dir("model");
  EXPECT_THROW(load_instance(dir.write("s.csv", "x,g\n0,a\n"), kX, "g"),
               DataError);
}

TEST(LoadInstance, QuotesBomAndCrlf) {
  TempDir dir("model");
  const auto csv = dir.write(
      "q.csv", "\xEF\xBB\xBFx,\"g\",note\r\n1.5,\"a, one\",\"say \"\"hi\"\"\"\r\n"
               "2.5,b,plain\r\n");
  const Instance inst = load_instance(csv, kX, "g");
  ASSERT_EQ(inst.n(), 2u);
  EXPECT_EQ(inst.color_names()[0], "a, one");
  EXPECT_EQ(inst.color_names()[1], "b");
  EXPECT_EQ(inst.point(0)[0], 1.5);
}

TEST(LoadInstance, Deterministic) {
  TempDir dir("model");
  const auto csv = dir.write("det.csv", "x,y,g\n0,1,a\n2,3,b\n4,5,b\n6,7,a\n");
  const std::vector<std::string> f = {"y", "x"};
  const Instance a = load_instance(csv, f, "g");
  const Instance b = load_instance(csv, f, "g");
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.point(1)[0], 3.0);
  EXPECT_EQ(a.point(1)[1], 2.0);
}

TEST(Subsample, DeterministicOrderedAndColorSafe) {
  const Instance inst = random_instance(200, 2, 2, 11);
  const Instance a = subsample(inst, 50, 7);
  const Instance b = subsample(inst, 50, 7);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.n(), 50u);
  EXPECT_NE(a, subsample(inst, 50, 8));

  // Each sampled row is a row of the original, in original order.
  std::size_t cursor = 0;
  for (std::size_t j = 0; j < a.n(); ++j) {
    while (cursor < inst.n() &&
           !(inst.point(cursor)[0] == a.point(j)[0] &&
             inst.point(cursor)[1] == a.point(j)[1])) {
      ++cursor;
    }
    ASSERT_LT(cursor, inst.n());
    EXPECT_EQ(inst.color_of(cursor), a.color_of(j));
    ++cursor;
  }
  EXPECT_EQ(subsample(inst, 200, 3), inst);
  EXPECT_THROW(subsample(inst, 0, 1), UsageError);
  EXPECT_THROW(subsample(inst, 201, 1), UsageError);
}

TEST(Subsample, LosingAColorIsAnError) {
  std::vector<std::vector<double>> pts;
  std::vector<ColorId> colors;
  for (int j = 0; j < 40; ++j) {
    pts.push_back({static_cast<double>(j)});
    colors.push_back(j == 0 ? 1 : 0);
  }
  const Instance inst = make_instance(pts, colors);
  bool lost = false;
  for (std::uint64_t seed = 0; seed < 20 && !lost; ++seed) {
    try {
      subsample(inst, 2, seed);
    } catch (const DataError&) {
      lost = true;
    }
  }
  EXPECT_TRUE(lost);
}

TEST(Params, WithDeltaAndValidate) {
  const Instance inst = make_instance({{0}, {1}, {2}, {3}}, {0, 0, 0, 1});
  const Params p = Params::with_delta(inst, 0.1);
  ASSERT_EQ(p.alpha.size(), 2u);
  EXPECT_DOUBLE_EQ(p.alpha[0], 0.075);
  EXPECT_DOUBLE_EQ(p.beta[1], 0.025);
  EXPECT_NO_THROW(validate(p, inst));

  Params bad = p;
  bad.lambda = 1.5;
  EXPECT_THROW(validate(bad, inst), UsageError);
  bad = p;
  bad.p = 3;
  EXPECT_THROW(validate(bad, inst), UsageError);
  bad = p;
  bad.k = 5;
  EXPECT_THROW(validate(bad, inst), UsageError);
  bad = p;
  bad.k = 0;
  EXPECT_THROW(validate(bad, inst), UsageError);
  bad = p;
  bad.alpha = {0.3, 0.0};  // 0.75 + 0.3 > 1
  EXPECT_THROW(validate(bad, inst), UsageError);
  bad = p;
  bad.beta = {0.0, 0.3};  // 0.25 - 0.3 < 0
  EXPECT_THROW(validate(bad, inst), UsageError);
  bad = p;
  bad.alpha = {0.0};
  EXPECT_THROW(validate(bad, inst), UsageError);
  bad = p;
  bad.lp_tolerance = 0.0;
  EXPECT_THROW(validate(bad, inst), UsageError);
}

namespace {

// The rawlsian ratio for one k written out from its definition.
double rawlsian_ratio(const Instance& inst, std::size_t k, std::uint64_t seed,
                      double delta) {
  const std::vector<double> w(inst.n(), 1.0);
  const CenterSet cs = lloyd(inst, k, w, seed);
  const auto phi = nearest_assignment(inst, cs.centers);
  double dist = 0.0;
  for (std::size_t j = 0; j < inst.n(); ++j) {
    for (std::size_t c = 0; c < inst.d(); ++c) {
      const double diff = inst.point(j)[c] - cs.centers(phi[j], c);
      dist += diff * diff;
    }
  }
  double viol = 0.0;
  for (ColorId h = 0; h < inst.num_colors(); ++h) {
    const double r = inst.proportion(h);
    double vh = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      double size = 0.0;
      double own = 0.0;
      for (std::size_t j = 0; j < inst.n(); ++j) {
        if (phi[j] != i) continue;
        size += 1.0;
        if (inst.color_of(j) == h) own += 1.0;
      }
      if (size == 0.0) continue;
      const double frac = own / size;
      vh += size * std::max({frac - (r + delta * r), (r - delta * r) - frac, 0.0});
    }
    viol += vh / static_cast<double>(inst.count(h));
  }
  return (dist / static_cast<double>(inst.n())) / viol;
}

}  // namespace

TEST(Normalization, MatchesDirectRecomputation) {
  const Instance inst = random_instance(120, 2, 2, 5);
  const std::vector<std::size_t> ks = {4};
  for (double delta : {0.0, 0.05}) {
    const double f =
        normalization_factor(inst, ks, 2, NormalizationMode::kRawlsian, 3, delta);
    EXPECT_NEAR(f, rawlsian_ratio(inst, 4, 3, delta), 1e-9 * f);
  }
  const std::vector<std::size_t> sweep = {3, 4, 5};
  const double mean = (rawlsian_ratio(inst, 3, 3, 0.0) +
                       rawlsian_ratio(inst, 4, 3, 0.0) +
                       rawlsian_ratio(inst, 5, 3, 0.0)) / 3.0;
  EXPECT_NEAR(normalization_factor(inst, sweep, 2, NormalizationMode::kRawlsian, 3),
              mean, 1e-9 * mean);
}

TEST(Normalization, UtilitarianFactorIsAtLeastRawlsian) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Instance inst = random_instance(90, 3, 2, 100 + seed);
    const std::vector<std::size_t> ks = {4};
    const double r =
        normalization_factor(inst, ks, 2, NormalizationMode::kRawlsian, seed);
    const double u =
        normalization_factor(inst, ks, 2, NormalizationMode::kUtilitarian, seed);
    EXPECT_GE(u, r);
  }
}

TEST(Normalization, FixedPoint) {
  const Instance inst = random_instance(150, 2, 2, 21);
  const std::vector<std::size_t> ks = {4};
  for (auto mode : {NormalizationMode::kRawlsian, NormalizationMode::kUtilitarian}) {
    const double f = normalization_factor(inst, ks, 2, mode, 9);
    const Instance scaled = apply_normalization(inst, f);
    EXPECT_NEAR(normalization_factor(scaled, ks, 2, mode, 9), 1.0, 1e-6);
  }
}

TEST(Normalization, ApplyScalesSquaredDistances) {
  const Instance inst = make_instance({{0.0}, {2.0}}, {0, 1});
  const Instance scaled = apply_normalization(inst, 4.0);
  EXPECT_DOUBLE_EQ(distance_pow(scaled.point(0), scaled.point(1), 2), 1.0);
  EXPECT_EQ(apply_normalization(inst, 1.0), inst);

  const Instance r = random_instance(30, 4, 2, 4);
  const Instance rs = apply_normalization(r, 7.5);
  for (std::size_t a = 0; a < r.n(); ++a) {
    for (std::size_t b = a + 1; b < r.n(); ++b) {
      const double d = distance_pow(r.point(a), r.point(b), 2);
      EXPECT_NEAR(distance_pow(rs.point(a), rs.point(b), 2), d / 7.5,
                  1e-9 * d);
    }
  }
  EXPECT_EQ(rs.colors(), r.colors());
  EXPECT_THROW(apply_normalization(inst, 0.0), UsageError);
  EXPECT_THROW(apply_normalization(inst, -1.0), UsageError);
}

TEST(Normalization, ZeroViolationIsAnError) {
  // Each cluster holds one point of each color: perfectly proportional.
  const Instance inst =
      make_instance({{0.0}, {0.0}, {10.0}, {10.0}}, {0, 1, 0, 1});
  const std::vector<std::size_t> ks = {2};
  EXPECT_THROW(normalization_factor(inst, ks, 2, NormalizationMode::kRawlsian, 0),
               DataError);
  const std::vector<std::size_t> empty;
  EXPECT_THROW(normalization_factor(inst, empty, 2, NormalizationMode::kRawlsian, 0),
               UsageError);
}
