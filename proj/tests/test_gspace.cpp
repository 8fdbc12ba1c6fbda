#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "gentess/errors.hpp"
#include "gentess/gspace.hpp"
#include "support.hpp"

using namespace gentess;
using testing_support::load;

namespace {

const GeneratorPair kExp(TwoExponentials{1, -1});
const GeneratorPair kPoly(PolynomialDegenerate{});

// Univariate spline dimension on m intervals: n + (m-1)(n-r-1).
int univariate_dim(int m, int n, int r) { return n + (m - 1) * (n - r - 1); }

} // namespace

TEST(Dimension, SingleCellIsTensorDimension) {
    const auto m = load("single_cell");
    for (int n1 = 3; n1 <= 6; ++n1)
        for (int n2 = 3; n2 <= 5; ++n2)
            EXPECT_EQ(dimension_formula(*m, n1, n2, 0, 0).total(), n1 * n2);
}

TEST(Dimension, TensorGridsMatchUnivariateProducts) {
    struct P { int n1, n2, r1, r2; };
    for (auto [name, k] : {std::pair{"tensor_2x2", 2}, std::pair{"tensor_4x4", 4}})
        for (P p : {P{4, 4, 1, 1}, P{3, 3, 0, 0}, P{6, 5, 2, 1}, P{5, 4, 0, 1}}) {
            const auto m = load(name);
            EXPECT_EQ(dimension_formula(*m, p.n1, p.n2, p.r1, p.r2).total(),
                      univariate_dim(k, p.n1, p.r1) * univariate_dim(k, p.n2, p.r2))
                << name;
        }
}

TEST(Dimension, HandCountedMeshes) {
    // n = 4, r = 1: 4 J_NT (edge and cell terms vanish).
    EXPECT_EQ(dimension_formula(*load("single_t"), 4, 4, 1, 1).total(), 28);
    EXPECT_EQ(dimension_formula(*load("l_shape"), 4, 4, 1, 1).total(), 32);
    EXPECT_EQ(dimension_formula(*load("hole_ring"), 4, 4, 1, 1).total(), 64);
    // n = 5, r = 1 on the single-T mesh: J_NT = 7, E_hor = 4, E_ver = 5, N = 3.
    const DimensionTerms t = dimension_formula(*load("single_t"), 5, 5, 1, 1);
    EXPECT_EQ(t.J_NT, 7);
    EXPECT_EQ(t.E_hor, 4);
    EXPECT_EQ(t.E_ver, 5);
    EXPECT_EQ(t.total(), 4 * 7 + 2 * 1 * 4 + 2 * 1 * 5 + 1 * 3);
}

TEST(Dimension, Preconditions) {
    EXPECT_THROW(dimension_formula(*load("single_cell"), 4, 4, 2, 1), PreconditionViolated);
    EXPECT_THROW(dimension_formula(*load("pinwheel"), 4, 4, 1, 1), PreconditionViolated);
    EXPECT_THROW(dimension_formula(*load("nonregular"), 4, 4, 1, 1), PreconditionViolated);
    EXPECT_THROW(GSplineSpace(load("single_cell"), {kExp, 4}, {kExp, 4}, 2, 1), PreconditionViolated);
}

TEST(Mds, CardinalityAndProvenance) {
    for (const auto& name : testing_support::corpus()) {
        const GSplineSpace sp(load(name), {kExp, 5}, {kExp, 4}, 1, 1);
        const DimensionTerms t = sp.dimension_terms();
        EXPECT_EQ(sp.dimension(), t.total()) << name;
        int nv = 0, ne = 0, nc = 0;
        for (const auto& m : sp.mds()) {
            (m.provenance == Provenance::Vertex ? nv : m.provenance == Provenance::Edge ? ne : nc)++;
            EXPECT_EQ(sp.mds_position(m.point.cell, m.point.i, m.point.j),
                      &m - sp.mds().data());
        }
        EXPECT_EQ(nv, t.vertex_term);
        EXPECT_EQ(ne, t.hor_term + t.ver_term);
        EXPECT_EQ(nc, t.cell_term);
    }
}

TEST(DomainPoints, LatticeLocation) {
    const GSplineSpace sp(load("single_t"), {kExp, 4}, {kExp, 3}, 1, 0);
    const Cell& c = sp.mesh().cell(2);
    const DomainPoint p = domain_point(sp, 2, 1, 2);
    EXPECT_DOUBLE_EQ(p.x, (2 * c.a + 1 * c.b) / 3);
    EXPECT_DOUBLE_EQ(p.y, c.d);
    EXPECT_EQ(domain_points(sp).size(), static_cast<std::size_t>(sp.num_coefficients()));
}

TEST(Completion, KeepsMdsValuesAndIsSmooth) {
    std::mt19937_64 rng(7);
    for (const auto& name : testing_support::corpus()) {
        const GSplineSpace sp(load(name), {kExp, 5}, {GeneratorPair(ExpTrig{0, 0.4}), 4}, 1, 1);
        const auto v = testing_support::random_values(sp.dimension(), rng);
        const BCoefficientMap c = complete_coefficients(sp, v);
        EXPECT_TRUE(c.complete());
        const auto back = restrict_to_mds(sp, c);
        for (std::size_t k = 0; k < v.size(); ++k) EXPECT_EQ(back[k], v[k]);
        EXPECT_LT(testing_support::max_relative_jump(sp, c, 200), 1e-7) << name;
    }
}

TEST(Completion, RejectsWrongLength) {
    const GSplineSpace sp(load("single_cell"), {kExp, 4}, {kExp, 4}, 1, 1);
    std::vector<double> v(3);
    EXPECT_THROW(complete_coefficients(sp, v), InvalidParameter);
}

TEST(Completion, PolynomialMatchesClassicalBezier) {
    // A global polynomial, restricted to M and completed, must agree with the
    // classical Bezier coefficients of the same polynomial on every cell.
    std::mt19937_64 rng(11);
    for (const auto& name : testing_support::corpus()) {
        for (auto [n, r] : {std::pair{4, 1}, std::pair{5, 1}, std::pair{6, 2}}) {
            const GSplineSpace sp(load(name), {kPoly, n}, {kPoly, n}, r, r);
            const Box bb = sp.mesh().bounds();
            Cell ref;
            ref.a = to_double(bb.a);
            ref.b = to_double(bb.b);
            ref.c = to_double(bb.c);
            ref.d = to_double(bb.d);
            Eigen::MatrixXd G(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) G(i, j) = std::uniform_real_distribution<>(-1, 1)(rng);
            BCoefficientMap exact = sp.empty_map();
            for (const auto& c : sp.mesh().cells()) {
                const Eigen::MatrixXd C = testing_support::reparametrize(G, ref, c.a, c.b, c.c, c.d);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) exact.set(c.id, i, j, C(i, j));
            }
            const BCoefficientMap got = complete_coefficients(sp, restrict_to_mds(sp, exact));
            for (std::size_t k = 0; k < got.size(); ++k)
                EXPECT_NEAR(got.values()[k], exact.values()[k], 1e-9) << name << " n=" << n;
        }
    }
}

TEST(Completion, ClassicalSmoothnessAcrossEveryEdge) {
    // Random polynomial splines: across each shared segment, the neighbours'
    // pieces re-expressed by blossoming must agree in the first r+1 rows.
    std::mt19937_64 rng(5);
    for (const auto& name : testing_support::corpus()) {
        const int n = 5, r = 1;
        const GSplineSpace sp(load(name), {kPoly, n}, {kPoly, n}, r, r);
        const BCoefficientMap c = complete_coefficients(sp, testing_support::random_values(sp.dimension(), rng));
        double scale = 1.0;
        for (double x : c.values()) scale = std::max(scale, std::abs(x));
        for (const auto& seg : sp.mesh().segments()) {
            if (seg.cells.size() < 2) continue;
            const Cell& c0 = sp.mesh().cell(seg.cells[0]);
            const Cell& c1 = sp.mesh().cell(seg.cells[1]);
            const double lo = to_double(seg.lo), hi = to_double(seg.hi);
            const bool hor = seg.orientation == Orientation::Horizontal;
            // Frame: the segment in the along direction, c1's extent across.
            const double a2 = hor ? lo : c1.a, b2 = hor ? hi : c1.b;
            const double c2 = hor ? c1.c : lo, d2 = hor ? c1.d : hi;
            const Eigen::MatrixXd P0 = testing_support::reparametrize(c.cell_matrix(c0.id), c0, a2, b2, c2, d2);
            const Eigen::MatrixXd P1 = testing_support::reparametrize(c.cell_matrix(c1.id), c1, a2, b2, c2, d2);
            const double line = to_double(seg.line);
            const bool c1_low = hor ? c1.c == line : c1.a == line;
            for (int q = 0; q <= r; ++q) {
                const int idx = c1_low ? q : n - 1 - q;
                for (int p = 0; p < n; ++p) {
                    const double v0 = hor ? P0(p, idx) : P0(idx, p);
                    const double v1 = hor ? P1(p, idx) : P1(idx, p);
                    EXPECT_NEAR(v0, v1, 1e-9 * scale) << name;
                }
            }
        }
    }
}

TEST(DualBasis, KroneckerProperty) {
    for (const char* name : {"single_t", "fig1", "hole_ring"}) {
        const GSplineSpace sp(load(name), {kExp, 4}, {kExp, 4}, 1, 1);
        for (int k = 0; k < sp.dimension(); k += 5) {
            const auto v = restrict_to_mds(sp, dual_basis_function(sp, k));
            for (int m = 0; m < sp.dimension(); ++m) EXPECT_NEAR(v[m], m == k ? 1.0 : 0.0, 1e-12);
        }
    }
}

TEST(DualBasis, LocalSupport) {
    const GSplineSpace sp(load("tensor_4x4"), {kExp, 4}, {kExp, 4}, 1, 1);
    for (int k = 0; k < sp.dimension(); ++k) {
        const auto cells = support_cells(sp, dual_basis_function(sp, k));
        EXPECT_FALSE(cells.empty());
        EXPECT_LE(cells.size(), 4u);
    }
}

TEST(Evaluation, SplineValueAndDomain) {
    const GSplineSpace sp(load("hole_ring"), {kExp, 4}, {kExp, 4}, 1, 1);
    // Partition of unity: all-ones coefficients on M reproduce the constant.
    const BCoefficientMap one = complete_coefficients(sp, std::vector<double>(sp.dimension(), 1.0));
    for (double x : one.values()) EXPECT_NEAR(x, 1.0, 1e-10);
    EXPECT_NEAR(eval_spline(sp, one, 0.3, 2.7), 1.0, 1e-12);
    EXPECT_THROW(eval_spline(sp, one, 1.5, 1.5), DomainViolation);
}

TEST(Completion, JetAndPropagationPrimitives) {
    const GSplineSpace sp(load("tensor_2x2"), {kPoly, 4}, {kPoly, 4}, 1, 1);
    std::mt19937_64 rng(3);
    const BCoefficientMap full = complete_coefficients(sp, testing_support::random_values(sp.dimension(), rng));
    const int w = *sp.mesh().find_vertex({1, 1});
    // Jets of all four cells at the centre vertex agree.
    const Eigen::MatrixXd j0 = corner_jet(sp, full, 0, w, 1, 1);
    for (int c = 1; c < 4; ++c) EXPECT_LT((corner_jet(sp, full, c, w, 1, 1) - j0).cwiseAbs().maxCoeff(), 1e-10);
    // Propagating from one cell refills the other disks.
    BCoefficientMap part = sp.empty_map();
    for (int i = 2; i < 4; ++i)
        for (int j = 2; j < 4; ++j) part.set(0, i, j, full.at(0, i, j));
    propagate_vertex(sp, w, 0, part);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) EXPECT_NEAR(part.at(3, i, j), full.at(3, i, j), 1e-10);
}
