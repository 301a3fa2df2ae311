#include <gtest/gtest.h>

#include "klm/bundle.hpp"
#include "klm/oracle.hpp"
#include "klm/problem.hpp"
#include "klm/problems.hpp"
#include "test_util.hpp"

namespace klm {
namespace {

TEST(Evaluate, AbsSmoothBranch) {
    const Oracle abs = make_abs1d();
    const OracleSample s = evaluate(abs, {2.0});
    EXPECT_DOUBLE_EQ(s.value, 2.0);
    EXPECT_DOUBLE_EQ(s.subgradient[0], 1.0);
}

TEST(Evaluate, AbsKinkReturnsSymmetricChoice) {
    const Oracle abs = make_abs1d();
    const OracleSample s = evaluate(abs, {0.0});
    EXPECT_DOUBLE_EQ(s.value, 0.0);
    EXPECT_DOUBLE_EQ(s.subgradient[0], 0.0);
}

TEST(Evaluate, MaxOfCoordinatesTieTakesFirstPiece) {
    // f(x) = max(x1, x2) as a two-piece max-affine function.
    MaxAffine inst;
    inst.k = 2;
    inst.p = 2;
    inst.slopes = {1.0, 0.0, 0.0, 1.0};
    inst.offsets = {0.0, 0.0};
    const Oracle f = make_maxaffine_oracle(inst);
    const OracleSample s = evaluate(f, {1.0, 1.0});
    EXPECT_DOUBLE_EQ(s.value, 1.0);
    EXPECT_DOUBLE_EQ(s.subgradient[0], 1.0);
    EXPECT_DOUBLE_EQ(s.subgradient[1], 0.0);
}

TEST(Evaluate, DeterministicBitIdentical) {
    const LinfRegression inst = gen_linf(7, 5, 42);
    const Oracle f = make_linf_oracle(inst);
    Rng rng(3);
    for (int i = 0; i < 50; ++i) {
        const Vector x = testutil::random_point(rng, 5);
        const OracleSample a = evaluate(f, x);
        const OracleSample b = evaluate(f, x);
        EXPECT_EQ(a.value, b.value);
        EXPECT_EQ(a.subgradient, b.subgradient);
    }
}

TEST(Evaluate, NonFiniteOracleReportsFaultWithPoint) {
    const Oracle bad(1, [](const Vector&) {
        return std::make_pair(std::numeric_limits<double>::quiet_NaN(), Vector{0.0});
    });
    try {
        evaluate(bad, {3.0});
        FAIL() << "expected OracleFault";
    } catch (const OracleFault& e) {
        ASSERT_EQ(e.point.size(), 1u);
        EXPECT_DOUBLE_EQ(e.point[0], 3.0);
    }
}

TEST(Evaluate, DimensionMismatchRejected) {
    const Oracle abs = make_abs1d();
    EXPECT_THROW(evaluate(abs, {1.0, 2.0}), std::invalid_argument);
}

TEST(Evaluate, LipschitzViolationReportsFault) {
    const Oracle liar(1, [](const Vector& x) { return std::make_pair(x[0], Vector{5.0}); });
    EXPECT_THROW(evaluate_checked(liar, {1.0}, 1.0), OracleFault);
}

TEST(Bundle, AppendTracksIncumbent) {
    Bundle b;
    b.append(Cut{{0.0}, 3.0, {1.0}});
    EXPECT_EQ(b.incumbent_index(), 0u);
    b.append(Cut{{1.0}, 2.0, {1.0}});
    EXPECT_EQ(b.incumbent_index(), 1u);  // strictly smaller value replaces
    b.append(Cut{{2.0}, 2.0, {1.0}});
    EXPECT_EQ(b.incumbent_index(), 1u);  // tie keeps the earlier index
    EXPECT_EQ(b.size(), 3u);
}

TEST(Bundle, IncumbentAmongPrefix) {
    Bundle b;
    b.append(Cut{{0.0}, 3.0, {1.0}});
    b.append(Cut{{1.0}, 5.0, {1.0}});
    b.append(Cut{{2.0}, 1.0, {1.0}});
    EXPECT_EQ(b.incumbent_index_among(2), 0u);
    EXPECT_EQ(b.incumbent_index_among(3), 2u);
}

TEST(Bundle, DimensionMismatchRejected) {
    Bundle b;
    b.append(Cut{{0.0}, 0.0, {1.0}});
    EXPECT_THROW(b.append(Cut{{0.0, 1.0}, 0.0, {1.0, 0.0}}), std::invalid_argument);
}

TEST(ProblemSpec, Validation) {
    ProblemSpec spec{make_abs1d(), 1.0, 1.0, {0.0}, 4, 0.0, {}};
    EXPECT_NO_THROW(spec.validate());
    ProblemSpec bad = spec;
    bad.N = 0;
    EXPECT_THROW(bad.validate(), std::invalid_argument);
    bad = spec;
    bad.L = 0.0;
    EXPECT_THROW(bad.validate(), std::invalid_argument);
    bad = spec;
    bad.eps = -0.5;
    EXPECT_THROW(bad.validate(), std::invalid_argument);
    bad = spec;
    bad.x0 = {0.0, 0.0};
    EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(OracleProperties, BuiltInsSatisfySubgradientInequalityAndLipschitz) {
    Rng rng(7);
    {
        const Oracle f = make_abs1d(0.5);
        const auto rep = testutil::check_oracle_properties(f, 1.0, 2000, rng);
        EXPECT_LE(rep.worst_subgrad_violation, 1e-12);
        EXPECT_LE(rep.worst_norm_excess, 1e-12);
    }
    {
        const LinfRegression inst = gen_linf(20, 6, 5);
        const auto rep =
            testutil::check_oracle_properties(make_linf_oracle(inst), inst.lipschitz(), 2000, rng);
        EXPECT_LE(rep.worst_subgrad_violation, 1e-12);
        EXPECT_LE(rep.worst_norm_excess, 1e-12);
    }
    {
        const MaxAffine inst = gen_planted_maxaffine(9, 4, 11);
        const auto rep = testutil::check_oracle_properties(make_maxaffine_oracle(inst),
                                                           inst.lipschitz(), 2000, rng);
        EXPECT_LE(rep.worst_subgrad_violation, 1e-12);
        EXPECT_LE(rep.worst_norm_excess, 1e-12);
    }
}

}  // namespace
}  // namespace klm
