#include <gtest/gtest.h>

#include "gentess/oracle.hpp"
#include "support.hpp"

using namespace gentess;
using testing_support::load;

TEST(Oracle, SingleCellHasNoConstraints) {
    const GSplineSpace sp(load("single_cell"), {GeneratorPair{}, 4}, {GeneratorPair{}, 5}, 1, 1);
    const OracleResult r = brute_force_dimension(sp);
    EXPECT_EQ(r.rows, 0);
    EXPECT_EQ(r.nullity, 20);
}

TEST(Oracle, NullityMatchesFormula) {
    const GeneratorPair trig(ExpTrig{0.2, 0.4});
    for (const auto& name : testing_support::corpus()) {
        const GSplineSpace sp(load(name), {trig, 5}, {trig, 4}, 1, 1);
        const OracleResult r = brute_force_dimension(sp);
        EXPECT_FALSE(r.inconclusive) << name;
        EXPECT_EQ(r.nullity, sp.dimension_terms().total()) << name;
        EXPECT_EQ(r.nullity, sp.dimension()) << name;
    }
}

TEST(Oracle, StableUnderDenserSamplingAndVertexRows) {
    for (const char* name : {"fig1", "staircase", "hole_ring"}) {
        const GSplineSpace sp(load(name), {GeneratorPair{}, 4}, {GeneratorPair{}, 4}, 1, 1);
        const OracleResult base = brute_force_dimension(sp);
        OracleOptions opt;
        opt.sample_factor = 2;
        opt.vertex_rows = true;
        const ConstraintSystem sys = assemble_constraints(sp, opt);
        EXPECT_GT(sys.vertex_rows, 0);
        const OracleResult dense = brute_force_dimension(sp, opt);
        EXPECT_EQ(dense.nullity, base.nullity) << name;
        EXPECT_GT(dense.rows, base.rows);
    }
}

TEST(Oracle, RowCountFollowsSampling) {
    const GSplineSpace sp(load("tensor_2x2"), {GeneratorPair{}, 4}, {GeneratorPair{}, 4}, 1, 1);
    const ConstraintSystem sys = assemble_constraints(sp);
    // 4 shared segments, n1 + n2 + 2 = 10 points each, (r1+1)(r2+1) = 4 rows per point.
    EXPECT_EQ(sys.edge_rows, 4 * 10 * 4);
    EXPECT_EQ(sys.variables, 64);
    EXPECT_NEAR(sys.matrix.row(0).cwiseAbs().maxCoeff(), 1.0, 1e-15);
}

TEST(Oracle, DetectsMissingSmoothness) {
    // C^0 polynomial cubics on 2x2: 7 x 7 = 49; the oracle sees the same.
    const GSplineSpace sp(load("tensor_2x2"), {GeneratorPair(PolynomialDegenerate{}), 4},
                          {GeneratorPair(PolynomialDegenerate{}), 4}, 0, 0);
    EXPECT_EQ(brute_force_dimension(sp).nullity, 49);
}
