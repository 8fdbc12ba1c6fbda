#include <cmath>

#include <gtest/gtest.h>

#include "gentess/bernstein.hpp"
#include "gentess/errors.hpp"
#include "support.hpp"

using namespace gentess;

namespace {

struct Case {
    GeneratorPair gen;
    double a, b;
};

std::vector<Case> cases() {
    return {{GeneratorPair(TwoExponentials{1, -1}), -0.5, 1.5},
            {GeneratorPair(TwoExponentials{0.3, 2.5}), 0.0, 1.0},
            {GeneratorPair(ExpTimesLinear{-0.8}), 1.0, 2.2},
            {GeneratorPair(ExpTrig{0.4, 1.3}), -1.0, 1.0},
            {GeneratorPair(PowerPair{5, 6}), 0.2, 0.8},
            {GeneratorPair(PolynomialDegenerate{}), -1.0, 2.0}};
}

} // namespace

TEST(Bernstein, PolynomialPairReproducesClassicalBernstein) {
    for (int n = 3; n <= 6; ++n) {
        const BernsteinBasis basis(SectionSpace(GeneratorPair(PolynomialDegenerate{}), n, -1.0, 2.0));
        for (int k = 0; k <= 40; ++k) {
            const double s = -1.0 + 3.0 * k / 40;
            for (int i = 0; i < n; ++i)
                EXPECT_NEAR(basis.eval(i, s), testing_support::bernstein(i, n - 1, s, -1.0, 2.0), 1e-10);
        }
    }
}

TEST(Bernstein, PartitionOfUnityAndPositivity) {
    for (const auto& c : cases()) {
        for (int n = 3; n <= 6; ++n) {
            const SectionSpace sp(c.gen, n, c.a, c.b);
            ASSERT_TRUE(sp.valid()) << c.gen.kind_name() << " n=" << n;
            const BernsteinBasis basis(sp);
            std::vector<double> v(n);
            for (double s : chebyshev_points(c.a, c.b, kBasisSamplePoints)) {
                basis.eval_all(s, v);
                double sum = 0;
                for (double x : v) {
                    EXPECT_GE(x, -1e-12);
                    sum += x;
                }
                EXPECT_NEAR(sum, 1.0, 1e-12);
            }
        }
    }
}

TEST(Bernstein, BasisSpansTheSectionSpace) {
    for (const auto& c : cases()) {
        const int n = 5;
        const BernsteinBasis basis(SectionSpace(c.gen, n, c.a, c.b));
        const auto pts = chebyshev_points(c.a, c.b, 4 * n);
        Eigen::MatrixXd span(pts.size(), n);
        for (std::size_t p = 0; p < pts.size(); ++p)
            for (int k = 0; k < n; ++k) span(p, k) = basis.space().spanning_function(k, 0, pts[p]);
        for (int i = 0; i < n; ++i) {
            Eigen::VectorXd y(pts.size());
            for (std::size_t p = 0; p < pts.size(); ++p) y(p) = basis.eval(i, pts[p]);
            const Eigen::VectorXd x = span.colPivHouseholderQr().solve(y);
            EXPECT_LT((span * x - y).cwiseAbs().maxCoeff(), 1e-9) << c.gen.kind_name();
        }
    }
}

TEST(Bernstein, RecurrenceDerivativesMatchFiniteDifferences) {
    for (const auto& c : cases()) {
        const int n = 5;
        const BernsteinBasis basis(SectionSpace(c.gen, n, c.a, c.b));
        const double h = 1e-5 * (c.b - c.a);
        for (int i = 0; i < n; ++i)
            for (int order = 0; order < 4; ++order)
                for (double x : {0.25, 0.5, 0.7}) {
                    const double s = c.a + x * (c.b - c.a);
                    const double fd = (basis.eval_derivative(i, order, s + h) -
                                       basis.eval_derivative(i, order, s - h)) / (2 * h);
                    const double exact = basis.eval_derivative(i, order + 1, s);
                    EXPECT_NEAR(exact, fd, 1e-5 * std::max(1.0, std::abs(exact)))
                        << c.gen.kind_name() << " i=" << i << " order=" << order;
                }
    }
}

TEST(Bernstein, PolynomialDerivativesAreExact) {
    // Classical derivative of Bernstein polynomials: d/(b-a) (B_{i-1,d-1} - B_{i,d-1}).
    const int n = 5, d = n - 1;
    const BernsteinBasis basis(SectionSpace(GeneratorPair(PolynomialDegenerate{}), n, 0.0, 2.0));
    for (double s : {0.0, 0.3, 1.1, 2.0})
        for (int i = 0; i < n; ++i) {
            const double lo = i > 0 ? testing_support::bernstein(i - 1, d - 1, s, 0, 2) : 0.0;
            const double hi = i < d ? testing_support::bernstein(i, d - 1, s, 0, 2) : 0.0;
            EXPECT_NEAR(basis.eval_derivative(i, 1, s), d / 2.0 * (lo - hi), 1e-10);
        }
}

TEST(Bernstein, EndpointZeroPatterns) {
    for (const auto& c : cases()) {
        for (int n = 3; n <= 6; ++n) {
            const BernsteinBasis basis(SectionSpace(c.gen, n, c.a, c.b));
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    double scale = 1.0;
                    for (int m = 0; m < n; ++m)
                        scale = std::max({scale, std::abs(basis.eval_derivative(m, j, c.a)),
                                          std::abs(basis.eval_derivative(m, j, c.b))});
                    const double da = basis.eval_derivative(i, j, c.a);
                    const double db = basis.eval_derivative(i, j, c.b);
                    if (j < i) EXPECT_LE(std::abs(da), 1e-9 * scale);
                    if (j == i && i <= n - 2) EXPECT_GE(std::abs(da), 1e-6 * scale);
                    if (j <= n - i - 2) EXPECT_LE(std::abs(db), 1e-9 * scale);
                    if (j == n - i - 1 && i >= 1) EXPECT_GE(std::abs(db), 1e-6 * scale);
                }
            }
        }
    }
}

TEST(Bernstein, LevelFunctionsVanishAtEnds) {
    const BernsteinBasis basis(SectionSpace(GeneratorPair(ExpTrig{0.1, 1.0}), 6, 0.0, 2.0));
    for (int k = 2; k <= 5; ++k)
        for (int i = 0; i <= k; ++i)
            for (int j = 0; j < k; ++j) {
                if (j < i) EXPECT_NEAR(basis.level_derivative(k, i, j, 0.0), 0.0, 1e-9);
                if (j < k - i) EXPECT_NEAR(basis.level_derivative(k, i, j, 2.0), 0.0, 1e-9);
            }
}

TEST(Bernstein, EndpointTablesAreLowerTriangular) {
    const BernsteinBasis basis(SectionSpace(GeneratorPair(ExpTimesLinear{1.0}), 5, 0.0, 1.0));
    for (End e : {End::A, End::B}) {
        const Eigen::MatrixXd& T = basis.endpoint_table(e);
        for (int h = 0; h < T.rows(); ++h)
            for (int m = h + 1; m < T.cols(); ++m)
                EXPECT_NEAR(T(h, m), 0.0, 1e-9 * std::max(1.0, T.row(h).cwiseAbs().maxCoeff()));
        for (int h = 0; h < T.rows() && h < T.cols(); ++h) EXPECT_GT(std::abs(T(h, h)), 1e-6);
    }
}

TEST(Bernstein, SymmetricSpaceGivesMirroredBasis) {
    // span<cosh, sinh> on [-1,1] is invariant under s -> -s.
    const BernsteinBasis basis(SectionSpace(GeneratorPair(TwoExponentials{1, -1}), 4, -1.0, 1.0));
    for (double s : {-0.7, 0.0, 0.4})
        for (int i = 0; i < 4; ++i) EXPECT_NEAR(basis.eval(i, s), basis.eval(3 - i, -s), 1e-12);
}

TEST(Bernstein, InvalidSpaceIsRejected) {
    EXPECT_THROW(BernsteinBasis(SectionSpace(GeneratorPair(ExpTrig{0.0, 2.0}), 4, 0.0, 2.0)),
                 PreconditionViolated);
}

TEST(Bernstein, EvaluationOutsideIntervalThrows) {
    const BernsteinBasis basis(SectionSpace(GeneratorPair{}, 4, 0.0, 1.0));
    EXPECT_THROW(basis.eval(0, 1.5), DomainViolation);
    EXPECT_THROW(basis.eval(4, 0.5), InvalidParameter);
}

TEST(BasisCache, ReusesCongruentCells) {
    auto& cache = basis_cache();
    const auto p1 = cache.get(GeneratorPair{}, 4, 0.0, 1.0);
    const auto p2 = cache.get(GeneratorPair{}, 4, 0.0, 1.0);
    const auto p3 = cache.get(GeneratorPair{}, 4, 0.0, 2.0);
    EXPECT_EQ(p1.get(), p2.get());
    EXPECT_NE(p1.get(), p3.get());
}
