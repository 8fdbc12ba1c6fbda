#include "gentess/section_space.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>

#include "gentess/chebyshev.hpp"
#include "gentess/errors.hpp"

namespace gentess {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

// m (m-1) ... (m-k+1)
double falling(int m, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= double(m - i);
    return r;
}

double power_derivative(int m, int order, double x) {
    if (order > m) return 0.0;
    return falling(m, order) * std::pow(x, m - order);
}

constexpr int kCond2ThetaGrid = 64;
constexpr int kCond2SGrid = 2048;
constexpr int kCond3Grid = 2048;

} // namespace

GeneratorPair::GeneratorPair(Variant v) : v_(std::move(v)) {
    std::visit(overloaded{
                   [](const TwoExponentials& g) {
                       if (!std::isfinite(g.lambda1) || !std::isfinite(g.lambda2))
                           throw InvalidParameter("two_exponentials: non-finite exponent");
                       if (g.lambda1 == g.lambda2)
                           throw InvalidParameter("two_exponentials: lambda1 must differ from lambda2");
                   },
                   [](const ExpTimesLinear& g) {
                       if (!std::isfinite(g.lambda))
                           throw InvalidParameter("exp_times_linear: non-finite exponent");
                   },
                   [](const ExpTrig& g) {
                       if (!std::isfinite(g.alpha) || !std::isfinite(g.beta))
                           throw InvalidParameter("exp_trig: non-finite parameter");
                       if (g.beta == 0.0) throw InvalidParameter("exp_trig: beta must be nonzero");
                   },
                   [](const PowerPair& g) {
                       if (g.m0 <= 0 || g.m1 <= 0)
                           throw InvalidParameter("power_pair: exponents must be positive");
                   },
                   [](const PolynomialDegenerate&) {},
               },
               v_);
}

double GeneratorPair::eval(Generator which, int order, double s, int n) const {
    const bool is_u = which == Generator::U;
    return std::visit(
        overloaded{
            [&](const TwoExponentials& g) {
                const double l = is_u ? g.lambda1 : g.lambda2;
                return std::pow(l, order) * std::exp(l * s);
            },
            [&](const ExpTimesLinear& g) {
                const double l = g.lambda;
                const double e = std::exp(l * s);
                if (is_u) return std::pow(l, order) * e;
                const double lin = std::pow(l, order) * s +
                                   (order > 0 ? order * std::pow(l, order - 1) : 0.0);
                return lin * e;
            },
            [&](const ExpTrig& g) {
                // (alpha + i beta)^k exp((alpha + i beta) s): real part is u^(k),
                // imaginary part is v^(k).
                const double rho = std::hypot(g.alpha, g.beta);
                const double phi = std::atan2(g.beta, g.alpha);
                const double amp = std::pow(rho, order) * std::exp(g.alpha * s);
                const double arg = g.beta * s + order * phi;
                return amp * (is_u ? std::cos(arg) : std::sin(arg));
            },
            [&](const PowerPair& g) {
                if (is_u) return power_derivative(g.m0, order, s);
                const double sign = (order % 2 == 0) ? 1.0 : -1.0;
                return sign * power_derivative(g.m1, order, 1.0 - s);
            },
            [&](const PolynomialDegenerate&) {
                return power_derivative(is_u ? n - 2 : n - 1, order, s);
            },
        },
        v_);
}

bool GeneratorPair::translation_invariant() const {
    return !std::holds_alternative<PowerPair>(v_);
}

bool GeneratorPair::ode_family() const {
    return std::holds_alternative<TwoExponentials>(v_) ||
           std::holds_alternative<ExpTimesLinear>(v_) || std::holds_alternative<ExpTrig>(v_);
}

std::string GeneratorPair::kind_name() const {
    return std::visit(overloaded{
                          [](const TwoExponentials&) { return std::string("two_exponentials"); },
                          [](const ExpTimesLinear&) { return std::string("exp_times_linear"); },
                          [](const ExpTrig&) { return std::string("exp_trig"); },
                          [](const PowerPair&) { return std::string("power_pair"); },
                          [](const PolynomialDegenerate&) { return std::string("polynomial"); },
                      },
                      v_);
}

// ---------------------------------------------------------------------------

bool check_dimension(const GeneratorPair& gen, int n, double a, double b) {
    const int rows = 4 * n;
    const auto pts = chebyshev_points(a, b, rows);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    // Local monomials span the same polynomial part and are better scaled.
    Eigen::MatrixXd m(rows, n);
    for (int r = 0; r < rows; ++r) {
        const double x = (pts[r] - mid) / half;
        for (int k = 0; k <= n - 3; ++k) m(r, k) = std::pow(x, k);
        m(r, n - 2) = gen.eval(Generator::U, 0, pts[r], n);
        m(r, n - 1) = gen.eval(Generator::V, 0, pts[r], n);
    }
    for (int c = 0; c < n; ++c) {
        const double norm = m.col(c).cwiseAbs().maxCoeff();
        if (!(norm > 0.0) || !std::isfinite(norm)) return false;
        m.col(c) /= norm;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& sv = svd.singularValues();
    return sv(n - 1) > tolerance() * sv(0);
}

bool check_condition2(const GeneratorPair& gen, int n, double a, double b,
                      Certification* path) {
    const auto& v = gen.variant();
    if (std::holds_alternative<TwoExponentials>(v) || std::holds_alternative<ExpTimesLinear>(v) ||
        std::holds_alternative<PolynomialDegenerate>(v)) {
        if (path) *path = Certification::Analytic;
        return true;
    }
    if (const auto* g = std::get_if<ExpTrig>(&v)) {
        if (path) *path = Certification::Analytic;
        // Every element of the span is exp(alpha s) A sin(beta s + c), whose
        // zeros are pi / |beta| apart.
        return std::abs(g->beta) * (b - a) < std::numbers::pi;
    }

    // Numeric: zero count of psi_theta = cos(theta) u^(n-2) + sin(theta) v^(n-2).
    if (path) *path = Certification::Numeric;
    std::vector<double> gu(kCond2SGrid), gv(kCond2SGrid);
    double su = 0.0, sv = 0.0;
    for (int k = 0; k < kCond2SGrid; ++k) {
        const double s = a + (b - a) * k / (kCond2SGrid - 1);
        gu[k] = gen.eval(Generator::U, n - 2, s, n);
        gv[k] = gen.eval(Generator::V, n - 2, s, n);
        su = std::max(su, std::abs(gu[k]));
        sv = std::max(sv, std::abs(gv[k]));
    }
    if (su == 0.0 || sv == 0.0) return false;
    for (auto& x : gu) x /= su;
    for (auto& x : gv) x /= sv;
    const double tol = tolerance();
    for (int t = 0; t < kCond2ThetaGrid; ++t) {
        const double theta = std::numbers::pi * t / kCond2ThetaGrid;
        const double c = std::cos(theta), s = std::sin(theta);
        int zeros = 0;
        bool in_zero = false;
        double prev = 0.0;
        for (int k = 0; k < kCond2SGrid; ++k) {
            const double psi = c * gu[k] + s * gv[k];
            if (std::abs(psi) <= tol) {
                if (!in_zero) ++zeros;
                in_zero = true;
                continue;
            }
            if (!in_zero && k > 0 && (psi > 0) != (prev > 0)) ++zeros;
            in_zero = false;
            prev = psi;
        }
        if (zeros >= 2) return false;
    }
    return true;
}

bool check_condition2(const SectionSpace& space) { return space.cond2_ok(); }

bool check_condition3(const GeneratorPair& gen, int n, double a, double b,
                      Certification* path) {
    if (gen.ode_family() || std::holds_alternative<PolynomialDegenerate>(gen.variant())) {
        if (path) *path = Certification::Analytic;
        return true;
    }
    if (path) *path = Certification::Numeric;
    std::vector<double> w(kCond3Grid);
    double scale = 0.0;
    for (int k = 0; k < kCond3Grid; ++k) {
        const double s = a + (b - a) * (k + 1) / (kCond3Grid + 1);
        const double u2 = gen.eval(Generator::U, n - 2, s, n);
        const double u1 = gen.eval(Generator::U, n - 1, s, n);
        const double v2 = gen.eval(Generator::V, n - 2, s, n);
        const double v1 = gen.eval(Generator::V, n - 1, s, n);
        w[k] = u2 * v1 - u1 * v2;
        scale = std::max(scale, std::abs(u2 * v1) + std::abs(u1 * v2));
    }
    if (scale == 0.0) return false;
    const double floor = tolerance() * scale;
    for (int k = 0; k < kCond3Grid; ++k) {
        if (std::abs(w[k]) <= floor) return false;
        if (k > 0 && (w[k] > 0) != (w[k - 1] > 0)) return false;
    }
    return true;
}

bool check_condition3(const SectionSpace& space) { return space.cond3_ok(); }

// ---------------------------------------------------------------------------

SectionSpace::SectionSpace(GeneratorPair gen, int n, double a, double b)
    : gen_(std::move(gen)), n_(n), a_(a), b_(b) {
    if (n < 3) throw InvalidParameter("section space order n must be >= 3");
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
        std::ostringstream os;
        os << "section space interval must satisfy a < b (got [" << a << ", " << b << "])";
        throw InvalidParameter(os.str());
    }
    // Distinct exponents, beta != 0 and the polynomial pair give n independent
    // functions on any interval; only PowerPair needs the numeric rank test.
    if (std::holds_alternative<PowerPair>(gen_.variant())) {
        dim_ok_ = check_dimension(gen_, n_, a_, b_);
        dim_path_ = Certification::Numeric;
    } else {
        dim_ok_ = true;
    }
    cond2_ok_ = check_condition2(gen_, n_, a_, b_, &cond2_path_);
    cond3_ok_ = check_condition3(gen_, n_, a_, b_, &cond3_path_);
}

double SectionSpace::eval_generator(Generator which, int order, double s) const {
    if (order < 0 || order > max_order()) {
        std::ostringstream os;
        os << "derivative order " << order << " out of range [0, " << max_order() << "]";
        throw InvalidParameter(os.str());
    }
    const double slack = 1e-12 * std::max(1.0, std::abs(b_ - a_));
    if (s < a_ - slack || s > b_ + slack) {
        std::ostringstream os;
        os << "s = " << s << " outside [" << a_ << ", " << b_ << "]";
        throw DomainViolation(os.str());
    }
    return generator(which, order, s);
}

double SectionSpace::spanning_function(int k, int order, double s) const {
    if (k == n_ - 2) return generator(Generator::U, order, s);
    if (k == n_ - 1) return generator(Generator::V, order, s);
    return power_derivative(k, order, s);
}

SectionSpace make_section_space(const GeneratorPair& gen, int n, double a, double b) {
    return SectionSpace(gen, n, a, b);
}

} // namespace gentess
