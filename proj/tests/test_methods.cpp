#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sauq/local_sa.hpp"
#include "sauq/morris.hpp"
#include "sauq/registry.hpp"
#include "sauq/regression_sa.hpp"
#include "sauq/sobol.hpp"
#include "sauq/uq.hpp"

using namespace sauq;

namespace {

std::vector<ParameterSpec> unit_cube(std::size_t n) {
  std::vector<ParameterSpec> s;
  for (std::size_t i = 0; i < n; ++i) s.push_back(ParameterSpec::uniform("x" + std::to_string(i + 1), 0, 1));
  return s;
}

std::vector<double> apply(const SampleMatrix& x, auto f) {
  std::vector<double> y;
  for (std::size_t r = 0; r < x.rows(); ++r) y.push_back(f(x.row(r)));
  return y;
}

}  // namespace

// --- regression_sa ---------------------------------------------------------

TEST(Standardize, Examples) {
  const auto z = standardize(std::vector<double>{1, 2, 3});
  EXPECT_NEAR(z[0], -1, 1e-15);
  EXPECT_NEAR(z[1], 0, 1e-15);
  EXPECT_NEAR(z[2], 1, 1e-15);
  const auto again = standardize(z);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(again[i], z[i], 1e-14);
}

TEST(Standardize, ConstantColumnNamesIt) {
  try {
    standardize(std::vector<double>{5, 5, 5}, "x7");
    FAIL();
  } catch (const DegenerateDataError& e) {
    EXPECT_NE(std::string(e.what()).find("x7"), std::string::npos);
  }
}

TEST(Src, ExactLinearModel) {
  const auto x = sample_matrix(unit_cube(2), 10000, 3);
  const auto y = apply(x, [](auto r) { return 2 * r[0] + r[1]; });
  const auto s = src(x, y);
  EXPECT_NEAR(s.coefficients[0], 2 / std::sqrt(5.0), 0.01);
  EXPECT_NEAR(s.coefficients[1], 1 / std::sqrt(5.0), 0.01);
  EXPECT_NEAR(*s.r_squared, 1.0, 1e-12);
  // Noise-free linear data with near-uncorrelated inputs: sum of squares ~ R^2.
  EXPECT_NEAR(s.coefficients[0] * s.coefficients[0] + s.coefficients[1] * s.coefficients[1], 1.0, 0.02);
}

TEST(Src, NoiseHasNoStructure) {
  const auto x = sample_matrix(unit_cube(3), 10000, 4);
  const auto noise = sample_matrix(unit_cube(1), 10000, 99).column(0);
  const auto s = src(x, noise);
  for (double c : s.coefficients) EXPECT_LT(std::abs(c), 0.04);
  EXPECT_LT(*s.r_squared, 0.01);
}

TEST(Src, AffineRescalingOfInputsIsInvariant) {
  const auto x = sample_matrix(unit_cube(3), 2000, 5);
  const auto y = apply(x, [](auto r) { return eval_sfs(4, r); });
  std::vector<double> scaled(x.values().begin(), x.values().end());
  for (std::size_t r = 0; r < x.rows(); ++r) scaled[r * 3 + 1] = 40.0 * scaled[r * 3 + 1] - 7.0;
  const SampleMatrix xs(x.columns(), x.rows(), std::move(scaled), x.seed());
  const auto a = src(x, y), b = src(xs, y);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(a.coefficients[i], b.coefficients[i], 1e-10);
}

TEST(Src, NeedsMoreRowsThanColumns) {
  const auto x = sample_matrix(unit_cube(3), 4, 1);
  EXPECT_THROW(src(x, std::vector<double>{1, 2, 3, 4}), ArgumentError);
}

TEST(Srrc, MonotoneTransformInvariance) {
  const auto x = sample_matrix(unit_cube(3), 3000, 6);
  const auto y = apply(x, [](auto r) { return eval_sfs(3, r); });
  std::vector<double> ey;
  for (double v : y) ey.push_back(std::exp(v));
  const auto a = srrc(x, y), b = srrc(x, ey);
  const auto c = prcc(x, y), d = prcc(x, ey);
  for (int i = 0; i < 3; ++i) {
    EXPECT_DOUBLE_EQ(a.coefficients[i], b.coefficients[i]);
    EXPECT_DOUBLE_EQ(c.coefficients[i], d.coefficients[i]);
  }
}

TEST(Srrc, PerfectMonotoneSingleInput) {
  const auto x = sample_matrix(unit_cube(1), 500, 7);
  const auto y = apply(x, [](auto r) { return r[0] * r[0] * r[0]; });
  EXPECT_NEAR(srrc(x, y).coefficients[0], 1.0, 1e-12);
  // Exact rank dependence makes the rank correlation matrix singular.
  EXPECT_THROW(prcc(x, y), DegenerateDataError);
}

TEST(Pcc, TwoInputClosedForm) {
  const auto x = sample_matrix(unit_cube(2), 800, 8);
  const auto y = apply(x, [](auto r) { return r[0] + 0.5 * r[1] * r[1] + 0.3 * r[0] * r[1]; });
  const auto x1 = x.column(0), x2 = x.column(1);
  const double r1y = oracle::correlation(x1, y), r2y = oracle::correlation(x2, y);
  const double r12 = oracle::correlation(x1, x2);
  const auto p = pcc(x, y);
  EXPECT_NEAR(p.coefficients[0], oracle::partial_correlation(r1y, r12, r2y), 1e-10);
  EXPECT_NEAR(p.coefficients[1], oracle::partial_correlation(r2y, r12, r1y), 1e-10);
  for (double c : p.coefficients) {
    EXPECT_GE(c, -1.0);
    EXPECT_LE(c, 1.0);
  }
}

TEST(Pcc, SfsLinearSameRankingAsSrc) {
  const auto specs = std::vector<ParameterSpec>{ParameterSpec::uniform("x1", 0, 1), ParameterSpec::uniform("x2", 0, 2),
                                                ParameterSpec::uniform("x3", 0, 3)};
  const auto x = sample_matrix(specs, 10000, 10);
  // A pure sum has zero residual variance, so add a small smooth nonlinearity.
  const auto y = apply(x, [](auto r) { return eval_sfs(1, r) + 0.3 * std::sin(20 * r[0]); });
  const auto a = src(x, y).coefficients, b = pcc(x, y).coefficients;
  auto order = [](std::vector<double> v) {
    std::vector<int> idx{0, 1, 2};
    std::sort(idx.begin(), idx.end(), [&](int i, int j) { return v[i] > v[j]; });
    return idx;
  };
  EXPECT_EQ(order(a), order(b));
}

TEST(Pcc, SingularCorrelationIsDegenerate) {
  const auto x0 = sample_matrix(unit_cube(1), 100, 1);
  std::vector<double> v;
  for (std::size_t r = 0; r < 100; ++r) {
    v.push_back(x0(r, 0));
    v.push_back(2 * x0(r, 0));
  }
  const SampleMatrix x({"a", "b"}, 100, std::move(v), 1);
  const auto y = apply(x, [](auto r) { return r[0]; });
  EXPECT_THROW(pcc(x, y), DataError);
}

// --- morris ----------------------------------------------------------------

TEST(MorrisDesign, Structure) {
  MorrisOptions o{5, 4, std::nullopt, 3};
  const auto d = generate_design(unit_cube(3), o);
  ASSERT_EQ(d.rows(), 20u);
  EXPECT_DOUBLE_EQ(d.step_fraction, 2.0 / 3.0);
  for (std::size_t r = 0; r < 5; ++r) {
    std::vector<int> moved_count(3, 0);
    for (std::size_t k = 1; k <= 3; ++k) {
      const auto a = d.row(r * 4 + k - 1), b = d.row(r * 4 + k);
      int changed = 0;
      for (std::size_t i = 0; i < 3; ++i) {
        if (a[i] != b[i]) {
          ++changed;
          EXPECT_NEAR(std::abs(b[i] - a[i]), d.delta[i], 1e-12);
          moved_count[i]++;
        }
      }
      EXPECT_EQ(changed, 1);
    }
    for (int c : moved_count) EXPECT_EQ(c, 1);
  }
  for (double v : d.points) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(MorrisDesign, ArgumentChecks) {
  EXPECT_THROW(generate_design(unit_cube(2), {5, 1, std::nullopt, 1}), ArgumentError);
  EXPECT_THROW(generate_design(unit_cube(2), {1, 4, std::nullopt, 1}), ArgumentError);
  // Odd p with the default step leaves the middle level without a feasible move.
  EXPECT_THROW(generate_design(unit_cube(2), {50, 3, std::nullopt, 1}), ArgumentError);
}

TEST(MorrisDesign, NormalBoundsAreThreeSigma) {
  const auto d = generate_design(mcfc_parameter_specs(), {10, 20, std::nullopt, 1});
  EXPECT_DOUBLE_EQ(d.bounds[1].lo, 893 - 3 * 8.93);
  EXPECT_NEAR(d.delta[1], d.step_fraction * 6 * 8.93, 1e-9);
}

TEST(Morris, LinearModelHasConstantEffects) {
  const auto f1 = make_model("sfs1");
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto r = morris_screening(f1, unit_cube(3), {20, 4, std::nullopt, seed});
    for (const auto& e : r.effects)
      for (double d : e) EXPECT_NEAR(d, 1.0, 1e-12);
    for (int i = 0; i < 3; ++i) {
      EXPECT_NEAR(r.stats.mu[i], 1.0, 1e-12);
      EXPECT_NEAR(r.stats.mu_star[i], 1.0, 1e-12);
      EXPECT_NEAR(r.stats.sigma[i], 0.0, 1e-12);
    }
  }
}

TEST(Morris, DownwardStepStillGivesUnitEffect) {
  const auto f1 = make_model("sfs1");
  const auto r = morris_screening(f1, unit_cube(3), {30, 4, std::nullopt, 5});
  bool saw_down = false;
  for (double s : r.design.step) saw_down = saw_down || s < 0;
  EXPECT_TRUE(saw_down);
}

TEST(Morris, CubicEffectsVary) {
  const auto r = morris_screening(make_model("sfs3"), unit_cube(3), {30, 20, std::nullopt, 1});
  const auto& d3 = r.effects[2];
  EXPECT_GT(*std::max_element(d3.begin(), d3.end()) - *std::min_element(d3.begin(), d3.end()), 0.1);
}

TEST(Morris, InteractionPattern) {
  const auto s = morris_screening(make_model("sfs2"), unit_cube(3), {100, 20, std::nullopt, 1}).stats;
  EXPECT_GT(s.sigma[0], 0.05);
  EXPECT_GT(s.sigma[1], 0.05);
  EXPECT_NEAR(s.sigma[2], 0.0, 1e-12);
  for (int i = 0; i < 3; ++i) {
    EXPECT_GE(s.mu_star[i], std::abs(s.mu[i]));
    EXPECT_GE(s.sigma[i], 0.0);
  }
}

TEST(Morris, ZeroResponseLeavesNormalizedEmpty) {
  const auto s = morris_stats({{1, 2}, {3, 4}}, std::vector<double>{1, 1}, 0.0);
  EXPECT_FALSE(s.mu_norm.has_value());
  EXPECT_DOUBLE_EQ(s.mu[1], 3.5);
}

TEST(Morris, MisalignedOutputs) {
  const auto d = generate_design(unit_cube(2), {3, 4, std::nullopt, 1});
  EXPECT_THROW(elementary_effects(d, std::vector<double>(5, 0.0)), ArgumentError);
}

TEST(Morris, ClassificationOfSimpleFunctions) {
  auto tags = [](const char* m) {
    return classify(morris_screening(make_model(m), unit_cube(3), {100, 20, std::nullopt, 1}).stats);
  };
  EXPECT_EQ(tags("sfs1"), std::vector<MorrisClass>(3, MorrisClass::Linear));
  const auto f2 = tags("sfs2");
  EXPECT_EQ(f2[0], MorrisClass::NonlinearOrInteracting);
  EXPECT_EQ(f2[2], MorrisClass::Linear);
  const auto f3 = tags("sfs3");
  EXPECT_EQ(f3[0], MorrisClass::Linear);
  EXPECT_EQ(f3[2], MorrisClass::NonlinearOrInteracting);
}

TEST(Morris, ThreadCountDoesNotChangeResult) {
  const auto m = make_model("morris_fn");
  const auto a = morris_screening(m, unit_cube(20), {20, 20, std::nullopt, 2}, 1).stats;
  const auto b = morris_screening(m, unit_cube(20), {20, 20, std::nullopt, 2}, 3).stats;
  EXPECT_EQ(a.mu, b.mu);
  EXPECT_EQ(a.sigma, b.sigma);
}

// --- sobol -----------------------------------------------------------------

TEST(Sobol, AdditiveModelSplitsEvenly) {
  const auto s = estimate_sobol(make_model("sfs1"), unit_cube(3), {10000, 1});
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(s.first[i], 1.0 / 3.0, 0.02);
    EXPECT_NEAR(s.total[i], 1.0 / 3.0, 0.02);
    EXPECT_LT(std::abs(s.first[i] - s.total[i]), 0.02);
  }
  EXPECT_EQ(s.evaluations, 10000u * 8u);
}

TEST(Sobol, IshigamiProperties) {
  const auto specs = default_parameters("ishigami");
  const auto s = estimate_sobol(make_model("ishigami"), specs, {10000, 1});
  const auto o = oracle::ishigami();
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(s.first[i], o.first[i], 0.02);
    EXPECT_NEAR(s.total[i], o.total[i], 0.02);
  }
  EXPECT_NEAR(s.first[1], s.total[1], 0.02);
  EXPECT_LT(s.first[2], 0.05);
  EXPECT_GT(s.total[2], 0.2);
}

TEST(Sobol, IshigamiSpreadAcrossSeeds) {
  const auto specs = default_parameters("ishigami");
  const auto m = make_model("ishigami");
  std::vector<std::vector<double>> values(6);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto s = estimate_sobol(m, specs, {10000, seed});
    for (int i = 0; i < 3; ++i) {
      values[i].push_back(s.first[i]);
      values[3 + i].push_back(s.total[i]);
    }
  }
  for (const auto& v : values) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    EXPECT_LT(0.5 * (*hi - *lo), 0.02);
  }
}

TEST(Sobol, GFunctionOracle) {
  const std::vector<double> a(kSobolGDefaultA.begin(), kSobolGDefaultA.end());
  const auto s = estimate_sobol(make_model("sobol_g"), unit_cube(8), {10000, 1});
  const auto o = oracle::sobol_g(a);
  for (int i = 0; i < 8; ++i) EXPECT_NEAR(s.first[i], o.first[i], 0.02);
}

TEST(Sobol, DeterministicAndThreadIndependent) {
  const auto specs = default_parameters("ishigami");
  const auto m = make_model("ishigami");
  const auto a = estimate_sobol(m, specs, {2000, 5, 1});
  const auto b = estimate_sobol(m, specs, {2000, 5, 4});
  EXPECT_EQ(a.first, b.first);
  EXPECT_EQ(a.total, b.total);
}

TEST(Sobol, PrintedCorrectionIsSelectable) {
  const auto specs = default_parameters("ishigami");
  const auto m = make_model("ishigami");
  const auto a = estimate_sobol(m, specs, {5000, 1, 1, CorrectionTerm::Cross});
  const auto b = estimate_sobol(m, specs, {5000, 1, 1, CorrectionTerm::AsPrinted});
  EXPECT_NE(a.first, b.first);
}

TEST(Sobol, ConstantModelIsDegenerate) {
  const Model c{"const", {"x1", "x2"}, [](std::span<const double>) { return 4.0; }};
  EXPECT_THROW(estimate_sobol(c, unit_cube(2), {200, 1}), DegenerateDataError);
}

TEST(Sobol, TooFewSamples) {
  EXPECT_THROW(estimate_sobol(make_model("sfs1"), unit_cube(3), {50, 1}), ArgumentError);
}

TEST(Sobol, ModelFailureCarriesRow) {
  const Model bad{"bad", {"x1"}, [](std::span<const double> x) {
                    if (x[0] > 0.5) throw DomainError("nope");
                    return x[0];
                  }};
  EXPECT_THROW(estimate_sobol(bad, unit_cube(1), {200, 1}), ModelError);
}

// --- uq --------------------------------------------------------------------

TEST(DeterministicUq, LinearExample) {
  std::vector<ParameterSpec> s{ParameterSpec{"x1", Normal{0, 1}, 0}, ParameterSpec{"x2", Normal{0, 2}, 0},
                               ParameterSpec{"x3", Normal{0, 3}, 0}};
  const auto cx = CovarianceMatrix::diagonal(s);
  EXPECT_EQ(deterministic_variance(std::vector<double>{1, 1, 1}, cx), 14.0);
}

TEST(DeterministicUq, FullMatrixAndPermutation) {
  Eigen::MatrixXd c(3, 3);
  c << 4, 1, 0.5, 1, 2, 0.3, 0.5, 0.3, 1;
  const CovarianceMatrix cx({"a", "b", "c"}, c);
  Eigen::MatrixXd s(2, 3);
  s << 1, -2, 0.5, 0.3, 0.1, 2;
  const auto cy = deterministic_uq(s, cx);
  Eigen::PermutationMatrix<3> p;
  p.indices() << 2, 0, 1;
  const Eigen::MatrixXd cp = p * c * p.transpose();
  const Eigen::MatrixXd sp = s * p.transpose();
  const auto cy2 = deterministic_uq(sp, CovarianceMatrix({"c", "a", "b"}, cp));
  EXPECT_LT((cy - cy2).cwiseAbs().maxCoeff(), 1e-12);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cy);
  EXPECT_GE(eig.eigenvalues().minCoeff(), -1e-12);
  EXPECT_THROW(deterministic_uq(Eigen::MatrixXd::Ones(1, 2), cx), ArgumentError);
}

TEST(DeterministicUq, RejectsInvalidCovariance) {
  Eigen::MatrixXd c(2, 2);
  c << 1, 2, 2, 1;  // eigenvalues 3, -1
  EXPECT_THROW(CovarianceMatrix({"a", "b"}, c), SpecificationError);
  c << 1, 0.5, 0.4, 1;
  EXPECT_THROW(CovarianceMatrix({"a", "b"}, c), SpecificationError);
  c << -1, 0, 0, 1;
  EXPECT_THROW(CovarianceMatrix({"a", "b"}, c), SpecificationError);
  EXPECT_THROW(CovarianceMatrix({"a"}, c), SpecificationError);
}

TEST(MonteCarloUq, ConstantModel) {
  const Model c{"const", {"x1"}, [](std::span<const double>) { return 2.5; }};
  const auto r = monte_carlo_uq(c, unit_cube(1), 100, 1);
  EXPECT_EQ(r.mean, 2.5);
  EXPECT_EQ(r.variance, 0.0);
  EXPECT_EQ(r.ci95->first, 2.5);
  EXPECT_EQ(r.ci95->second, 2.5);
}

TEST(MonteCarloUq, SumOfStandardNormals) {
  std::vector<ParameterSpec> s;
  for (int i = 1; i <= 3; ++i) s.push_back(ParameterSpec{"x" + std::to_string(i), Normal{0, 1}, 0});
  const auto r = monte_carlo_uq(make_model("sfs1"), s, 100000, 1);
  EXPECT_NEAR(r.mean, 0.0, 0.03);
  EXPECT_NEAR(r.variance, 3.0, 0.1);
  EXPECT_NEAR(r.sd, std::sqrt(r.variance), 1e-15);
  EXPECT_NEAR(0.5 * (r.ci95->first + r.ci95->second), r.mean, 1e-12);
  EXPECT_EQ(*r.n_samples, 100000u);
}

TEST(MonteCarloUq, NeedsTwoSamples) {
  EXPECT_THROW(monte_carlo_uq(make_model("sfs1"), unit_cube(3), 1, 1), ArgumentError);
}

TEST(MonteCarloUq, FailureReportsSample) {
  const Model bad{"bad", {"x1"}, [](std::span<const double> x) {
                    if (x[0] > 0.9) throw DomainError("too big");
                    return x[0];
                  }};
  try {
    monte_carlo_uq(bad, unit_cube(1), 1000, 1);
    FAIL();
  } catch (const ModelError& e) {
    const auto x = sample_matrix(unit_cube(1), 1000, 1);
    EXPECT_GT(x(e.sample(), 0), 0.9);
  }
}

TEST(UqCompare, LinearModelMethodsAgree) {
  std::vector<ParameterSpec> s{ParameterSpec::normal("x1", 1, 0.5), ParameterSpec::normal("x2", 2, 0.5),
                               ParameterSpec::normal("x3", 3, 0.5)};
  const auto m = make_model("sfs1");
  const auto x0 = nominal_point(s);
  const auto oat = oat_sensitivity(m, x0);
  const auto mor = morris_screening(m, s, {20, 20, std::nullopt, 1}).stats;
  const auto c = uq_compare(m, s, 100000, 1, oat, mor);
  EXPECT_NEAR(c.oat.variance, 0.25 + 1 + 2.25, 1e-9);
  EXPECT_NEAR(c.morris.variance, c.oat.variance, 1e-9);
  EXPECT_NEAR(c.monte_carlo.variance / c.oat.variance, 1.0, 0.05);
  EXPECT_FALSE(c.oat.ci95.has_value());
  EXPECT_EQ(c.oat.mean, 6.0);
}
