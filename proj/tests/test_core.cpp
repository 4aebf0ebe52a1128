#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sauq/local_sa.hpp"
#include "sauq/models.hpp"
#include "sauq/problem.hpp"
#include "sauq/registry.hpp"
#include "sauq/rng.hpp"

using namespace sauq;

namespace {

std::vector<ParameterSpec> unit_cube(std::size_t n) {
  std::vector<ParameterSpec> s;
  for (std::size_t i = 0; i < n; ++i) s.push_back(ParameterSpec::uniform("x" + std::to_string(i + 1), 0, 1));
  return s;
}

double sfs(int k, std::vector<double> x) { return eval_sfs(k, x); }

}  // namespace

// --- rng / problem ---------------------------------------------------------

TEST(Rng, SameSeedSameStream) {
  Rng a(7), b(7);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.uniform(), b.uniform());
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.normal(), b.normal());
}

TEST(Rng, UniformInUnitInterval) {
  Rng r(3);
  for (int i = 0; i < 10000; ++i) {
    const double u = r.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(Rng, IndexCoversRange) {
  Rng r(5);
  std::vector<int> hits(7, 0);
  for (int i = 0; i < 7000; ++i) hits[r.index(7)]++;
  for (int h : hits) EXPECT_GT(h, 800);
}

TEST(ParameterSpec, NormalSdFromRelativeUncertainty) {
  const auto p = ParameterSpec::normal("T", 893, 0.01);
  EXPECT_DOUBLE_EQ(p.sd(), 8.93);
  const auto b = p.screening_bounds();
  EXPECT_DOUBLE_EQ(b.lo, 893 - 3 * 8.93);
  EXPECT_DOUBLE_EQ(b.hi, 893 + 3 * 8.93);
}

TEST(ParameterSpec, RejectsInvalidDistributions) {
  EXPECT_THROW(ParameterSpec::uniform("x", 1, 1), SpecificationError);
  EXPECT_THROW(ParameterSpec::normal("x", 1, -0.1), SpecificationError);
  ParameterSpec p{"x", Normal{0, 1}, 0};
  p.morris_bounds = Bounds{2, 1};
  EXPECT_THROW(p.validate(), SpecificationError);
}

TEST(SampleMatrix, UniformSupportContainment) {
  const auto x = sample_matrix(unit_cube(3), 1000, 11);
  ASSERT_EQ(x.rows(), 1000u);
  ASSERT_EQ(x.cols(), 3u);
  for (double v : x.values()) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(SampleMatrix, NormalMeanWithinThreeStandardErrors) {
  const std::vector<ParameterSpec> s{ParameterSpec::normal("T", 893, 0.01, true)};
  const auto x = sample_matrix(s, 10000, 1);
  double m = 0;
  for (double v : x.values()) m += v;
  m /= 10000.0;
  EXPECT_NEAR(m, 893.0, 0.3);
}

TEST(SampleMatrix, DeterministicGivenSeed) {
  const auto a = sample_matrix(mcfc_parameter_specs(), 500, 42);
  const auto b = sample_matrix(mcfc_parameter_specs(), 500, 42);
  auto vec = [](const SampleMatrix& m) { return std::vector<double>(m.values().begin(), m.values().end()); };
  EXPECT_EQ(vec(a), vec(b));
  EXPECT_NE(vec(a), vec(sample_matrix(mcfc_parameter_specs(), 500, 43)));
}

TEST(SampleMatrix, MomentsAndIndependence) {
  std::vector<ParameterSpec> s{ParameterSpec::normal("a", 10, 0.1), ParameterSpec::uniform("b", -1, 3),
                               ParameterSpec::normal("c", -5, 0.2)};
  const std::size_t n = 100000;
  const auto x = sample_matrix(s, n, 9);
  for (std::size_t c = 0; c < 3; ++c) {
    const auto col = x.column(c);
    double m = 0, v = 0;
    for (double e : col) m += e;
    m /= n;
    for (double e : col) v += (e - m) * (e - m);
    v /= n - 1;
    const double sd = s[c].sd();
    const double mean = c == 1 ? 1.0 : s[c].nominal;
    EXPECT_NEAR(m, mean, 3 * sd / std::sqrt(double(n)));
    // Var of the sample variance is (m4 - sigma^4)/n; 3 se with a generous kurtosis bound.
    EXPECT_NEAR(v, sd * sd, 3 * sd * sd * std::sqrt(2.0 / n));
  }
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) EXPECT_LT(std::abs(oracle::correlation(x.column(i), x.column(j))), 0.02);
}

TEST(SampleMatrix, NeedsTwoRows) { EXPECT_THROW(sample_matrix(unit_cube(2), 1, 1), ArgumentError); }

TEST(RankTransform, Examples) {
  EXPECT_EQ(rank_transform(std::vector<double>{3.2, 1.1, 2.5}), (RankVector{3, 1, 2}));
  EXPECT_EQ(rank_transform(std::vector<double>{1, 1, 2}), (RankVector{1.5, 1.5, 3}));
  EXPECT_EQ(rank_transform(std::vector<double>{5, 4, 3, 2, 1}), (RankVector{5, 4, 3, 2, 1}));
}

TEST(RankTransform, MonotoneInvariantAndIdempotent) {
  std::vector<double> v{0.3, -2, 7, 1.5, 0.01};
  std::vector<double> g;
  for (double x : v) g.push_back(std::exp(x));
  const auto r = rank_transform(v);
  EXPECT_EQ(r, rank_transform(g));
  EXPECT_EQ(r, rank_transform(r));
}

TEST(RankTransform, NonFiniteIsDataError) {
  EXPECT_THROW(rank_transform(std::vector<double>{1, NAN}), DataError);
}

TEST(TruncatedResample, PassThroughAndGuard) {
  auto p = ParameterSpec::normal("p", 0.6, 0.05, true);
  Rng rng(1);
  EXPECT_EQ(truncated_resample(p, 0.58, rng), 0.58);
  EXPECT_GT(truncated_resample(p, -0.01, rng), 0.0);
  auto t = ParameterSpec::normal("T", 893, 0.01, true);
  EXPECT_EQ(truncated_resample(t, 893 + 5 * 8.93, rng), 893 + 5 * 8.93);
}

TEST(TruncatedResample, AbsurdSpecIsSamplingError) {
  ParameterSpec p = ParameterSpec::normal("p", 1e-9, 0.0, true);
  p.distribution = Normal{-100.0, 1e-3};
  Rng rng(1);
  EXPECT_THROW(truncated_resample(p, -100.0, rng), SamplingError);
}

// --- models ----------------------------------------------------------------

TEST(SobolG, Examples) {
  const std::vector<double> a(kSobolGDefaultA.begin(), kSobolGDefaultA.end());
  EXPECT_EQ(eval_sobol_g(std::vector<double>(8, 0.5), a), 0.0);
  double expect = 1.0;
  for (double ai : a) expect *= (2 + ai) / (1 + ai);
  EXPECT_NEAR(eval_sobol_g(std::vector<double>(8, 0.0), a), expect, 1e-12);
  EXPECT_NEAR(expect, 6.7974, 1e-4);
  EXPECT_DOUBLE_EQ(eval_sobol_g(std::vector<double>(8, 1.0), a), eval_sobol_g(std::vector<double>(8, 0.0), a));
  EXPECT_THROW(eval_sobol_g(std::vector<double>(8, 1.5), a), DomainError);
}

TEST(Ishigami, Examples) {
  const double h = std::numbers::pi / 2;
  EXPECT_EQ(eval_ishigami(std::vector<double>{0, 0, 0}), 0.0);
  EXPECT_DOUBLE_EQ(eval_ishigami(std::vector<double>{h, 0, 0}), 1.0);
  EXPECT_DOUBLE_EQ(eval_ishigami(std::vector<double>{h, h, 1}), 8.1);
}

TEST(MorrisFn, FixedCoefficients) {
  const auto c = MorrisFnCoefficients::generate(20);
  for (std::size_t i = 0; i < 10; ++i) EXPECT_EQ(c.beta1[i], 20.0);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = i + 1; j < 6; ++j) EXPECT_EQ(c.beta2[i][j], -15.0);
  EXPECT_EQ(c.beta3.size(), 10u);
  EXPECT_EQ(c.beta4.size(), 1u);
  EXPECT_EQ(c, MorrisFnCoefficients::generate(20));
  EXPECT_NE(c.beta0, MorrisFnCoefficients::generate(21).beta0);
}

TEST(MorrisFn, TransformAndZeroPoint) {
  EXPECT_EQ(morris_fn_w(0, 0.5), 0.0);
  EXPECT_NEAR(morris_fn_w(2, 0.5), 2 * (0.55 / 0.6 - 0.5), 1e-15);
  EXPECT_NEAR(morris_fn_w(2, 0.5), 0.8333333333333333, 1e-12);
  std::vector<double> x(20, 0.5);
  x[2] = x[4] = x[6] = 1.0 / 12.0;  // 1.1x/(x+0.1) = 0.5
  const auto c = MorrisFnCoefficients::generate(20);
  EXPECT_NEAR(eval_morris_fn(x, c), c.beta0, 1e-12);
}

TEST(Sfs, Examples) {
  EXPECT_EQ(sfs(1, {1, 2, 3}), 6.0);
  EXPECT_EQ(sfs(2, {1, 2, 3}), 6.0);
  EXPECT_EQ(sfs(3, {1, 2, 3}), 1 + 4 + 27.0);
  EXPECT_EQ(sfs(4, {1, 2, 3}), 32.0);
  EXPECT_THROW(sfs(5, {1, 2, 3}), ArgumentError);
}

TEST(Mcfc, NominalChain) {
  const McfcParams p;
  const auto v = mcfc_voltages(p);
  EXPECT_NEAR(v.E0, 1.0421, 1e-4);
  EXPECT_NEAR(v.E, 1.0030, 1e-4);
  EXPECT_NEAR(v.U_an, 0.0629, 1e-4);
  EXPECT_NEAR(v.U_cat, 0.27834, 1e-4);
  EXPECT_NEAR(v.U_ohm, 0.1674, 1e-4);
  const auto o = mcfc_outputs(p);
  EXPECT_NEAR(o.power, 1482, 2);
  EXPECT_NEAR(o.efficiency, 0.394, 0.002);
}

TEST(Mcfc, OhmicExponentVanishesAt923) {
  McfcParams p;
  p.T = 923;
  EXPECT_DOUBLE_EQ(mcfc_voltages(p).U_ohm, 0.5e-4 * p.j);
}

TEST(Mcfc, ZeroCurrent) {
  const McfcParams p{.j = 0};
  const auto v = mcfc_voltages(p);
  const auto o = mcfc_outputs(p);
  EXPECT_EQ(o.power, 0.0);
  EXPECT_DOUBLE_EQ(o.efficiency, 2 * 96485 * v.E / 242000);
}

TEST(Mcfc, DomainChecks) {
  McfcParams p;
  p.p_O2_cat = 0;
  EXPECT_THROW(mcfc_outputs(p), DomainError);
  McfcConstants c;
  c.delta_h = 1;
  EXPECT_THROW(mcfc_outputs(McfcParams{}, c), SpecificationError);
}

TEST(Registry, EveryModelBuildsAndMatchesDefaults) {
  for (const auto& m : kModels) {
    const auto model = make_model(m.name);
    const auto specs = default_parameters(m.name);
    EXPECT_EQ(model.inputs, parameter_names(specs)) << m.name;
    EXPECT_TRUE(std::isfinite(model(nominal_point(specs)))) << m.name;
  }
  EXPECT_FALSE(is_model_name("nope"));
  EXPECT_THROW(make_model("nope"), ArgumentError);
}

// --- local_sa --------------------------------------------------------------

TEST(Oat, LinearModelIsExact) {
  const auto f1 = make_model("sfs1");
  for (double d : {0.01, 0.1, 0.5}) {
    const auto r = oat_sensitivity(f1, std::vector<double>{0.3, 1.7, -2.0}, d);
    for (double s : r.raw) EXPECT_NEAR(s, 1.0, 1e-12);
    EXPECT_EQ(r.evaluations, 4u);
  }
}

TEST(Oat, ForwardDifferenceOnQuadratic) {
  const auto f3 = make_model("sfs3");
  const auto r = oat_sensitivity(f3, std::vector<double>{1, 1, 1}, 0.01);
  EXPECT_NEAR(r.raw[1], 2.01, 1e-10);
}

TEST(Oat, CentralIsExactForQuadratics) {
  const auto f3 = make_model("sfs3");
  const auto r = oat_sensitivity(f3, std::vector<double>{1, 0.7, 1}, 0.05, FdScheme::Central);
  EXPECT_NEAR(r.raw[1], 1.4, 1e-12);
  EXPECT_EQ(r.evaluations, 7u);
}

TEST(Oat, ForwardErrorLinearInStep) {
  const auto f3 = make_model("sfs3");
  const std::vector<double> x0{1, 1, 1};
  const double e2 = oat_sensitivity(f3, x0, 1e-2).raw[1] - 2.0;
  const double e3 = oat_sensitivity(f3, x0, 1e-3).raw[1] - 2.0;
  EXPECT_NEAR(e2 / e3, 10.0, 1e-6);
}

TEST(Oat, NormalizationAndScaleInvariance) {
  const auto f3 = make_model("sfs3");
  const Model scaled{"scaled", f3.inputs, [&](std::span<const double> x) { return 5.0 * f3(x); }};
  const std::vector<double> x0{0.4, 1.2, 0.8};
  const auto a = oat_sensitivity(f3, x0);
  const auto b = oat_sensitivity(scaled, x0);
  ASSERT_TRUE(a.normalized && b.normalized);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR((*a.normalized)[i], a.raw[i] * x0[i] / a.y0, 1e-15);
    EXPECT_NEAR((*a.normalized)[i], (*b.normalized)[i], 1e-12);
  }
}

TEST(Oat, ZeroNominalUsesAbsoluteStep) {
  const auto f1 = make_model("sfs1");
  const auto r = oat_sensitivity(f1, std::vector<double>{0, 1, 1}, 0.01);
  EXPECT_TRUE(r.absolute_step[0]);
  EXPECT_FALSE(r.absolute_step[1]);
  EXPECT_NEAR(r.raw[0], 1.0, 1e-12);
}

TEST(Oat, ZeroResponseHasNoNormalizedForm) {
  const auto f1 = make_model("sfs1");
  const auto r = oat_sensitivity(f1, std::vector<double>{1, -2, 1}, 0.01);
  EXPECT_FALSE(r.normalized.has_value());
  EXPECT_EQ(r.raw.size(), 3u);
}

TEST(Oat, RejectsNonPositivePerturbation) {
  EXPECT_THROW(oat_sensitivity(make_model("sfs1"), std::vector<double>{1, 1, 1}, 0.0), ArgumentError);
}

TEST(Oat, McfcTemperatureNormalized) {
  // Forward 1% step on T; reference values from an independent script.
  const auto model = make_model("mcfc_power");
  const auto at3000 = oat_sensitivity(model, nominal_point(mcfc_parameter_specs(3000)), 0.01);
  EXPECT_NEAR((*at3000.normalized)[1], 6.9934, 1e-3);
  const auto near_opt = oat_sensitivity(model, nominal_point(mcfc_parameter_specs(2958.67)), 0.01);
  EXPECT_NEAR((*near_opt.normalized)[1], 6.7938, 1e-3);
}

TEST(Oat, ThreadCountDoesNotChangeResult) {
  const auto m = make_model("morris_fn");
  const std::vector<double> x0(20, 0.3);
  const auto a = oat_sensitivity(m, x0, 0.01, FdScheme::Central, 1);
  const auto b = oat_sensitivity(m, x0, 0.01, FdScheme::Central, 4);
  EXPECT_EQ(a.raw, b.raw);
}
