#include "gentess/bernstein.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gentess/errors.hpp"

namespace gentess {

namespace {

constexpr double kProxyTailTol = 1e-13;
constexpr int kProxyMaxDegree = 256;
constexpr double kPositivityFloor = -1e-12;
constexpr double kUnityTol = 1e-9;

std::string describe(const SectionSpace& space) {
    std::ostringstream os;
    os << space.generators().kind_name() << " n=" << space.n() << " on [" << space.a() << ", "
       << space.b() << "]";
    return os.str();
}

} // namespace

BasePair base_pair(const SectionSpace& space) {
    if (!space.dim_ok())
        throw PreconditionViolated("base_pair: dimension check failed for " + describe(space));
    if (!space.cond2_ok())
        throw PreconditionViolated("base_pair: condition (2) fails for " + describe(space));

    const int n = space.n();
    const double a = space.a(), b = space.b();
    const double ua = space.generator(Generator::U, n - 2, a);
    const double va = space.generator(Generator::V, n - 2, a);
    const double ub = space.generator(Generator::U, n - 2, b);
    const double vb = space.generator(Generator::V, n - 2, b);
    const double det = ua * vb - va * ub;
    const double scale = std::abs(ua * vb) + std::abs(va * ub);
    if (!(std::abs(det) > tolerance() * scale))
        throw SingularSystem("base_pair: boundary system singular for " + describe(space));

    BasePair bp;
    // [ua va; ub vb] c = e_0 and e_1.
    bp.coeffs[0] = {vb / det, -ub / det};
    bp.coeffs[1] = {-va / det, ua / det};

    for (int i = 0; i < 2; ++i) {
        const auto c = bp.coeffs[i];
        auto f = [&space, c, n](double s) {
            return c[0] * space.generator(Generator::U, n - 2, s) +
                   c[1] * space.generator(Generator::V, n - 2, s);
        };
        ChebSeries& target = i == 0 ? bp.u0 : bp.u1;
        if (!ChebSeries::fit(f, a, b, kProxyTailTol, kProxyMaxDegree, target)) {
            std::ostringstream os;
            os << "proxy for U_{" << i << ",1} not resolved at degree " << kProxyMaxDegree
               << " for " << describe(space);
            throw ProxyAccuracyError(os.str(), i, 1);
        }
        for (double s : chebyshev_points(a, b, kBasisSamplePoints)) {
            if (s == a || s == b) continue;
            if (f(s) < kPositivityFloor) {
                std::ostringstream os;
                os << "U_{" << i << ",1} negative at s=" << s << " for " << describe(space);
                throw NumericalError(os.str());
            }
        }
    }
    return bp;
}

BernsteinBasis::BernsteinBasis(SectionSpace space)
    : space_(std::move(space)), base_(base_pair(space_)) {
    const int n = space_.n();
    const double a = space_.a(), b = space_.b();

    RecurrenceLevel first;
    first.k = 1;
    first.funcs = {base_.u0, base_.u1};
    levels_.push_back(std::move(first));

    for (int k = 2; k <= n - 1; ++k) {
        RecurrenceLevel& prev = levels_.back();
        std::vector<ChebSeries> v;
        prev.d.resize(prev.funcs.size());
        for (std::size_t i = 0; i < prev.funcs.size(); ++i) {
            const double d = prev.funcs[i].definite_integral();
            if (!(d > 0.0)) {
                std::ostringstream os;
                os << "integral weight d_{" << i << "," << prev.k << "} = " << d
                   << " is not positive for " << describe(space_);
                throw ProxyAccuracyError(os.str(), int(i), prev.k);
            }
            prev.d[i] = d;
            ChebSeries vi = prev.funcs[i].integral();
            vi *= 1.0 / d;
            v.push_back(std::move(vi));
        }
        RecurrenceLevel next;
        next.k = k;
        ChebSeries u0 = ChebSeries::constant(a, b, 1.0);
        u0 -= v[0];
        next.funcs.push_back(std::move(u0));
        for (int i = 1; i <= k - 1; ++i) {
            ChebSeries ui = v[i - 1];
            ui -= v[i];
            next.funcs.push_back(std::move(ui));
        }
        next.funcs.push_back(v[k - 1]);
        levels_.push_back(std::move(next));
    }
    for (const auto& lvl : levels_)
        for (const auto& f : lvl.funcs) proxy_degree_ = std::max(proxy_degree_, f.degree());

    // Positivity and partition of unity on the validation grid.
    std::vector<double> vals(n);
    for (double s : chebyshev_points(a, b, kBasisSamplePoints)) {
        eval_all(s, vals);
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
            sum += vals[i];
            if (s != a && s != b && vals[i] < kPositivityFloor) {
                std::ostringstream os;
                os << "B_{" << i << "," << n - 1 << "}(" << s << ") = " << vals[i]
                   << " violates positivity for " << describe(space_);
                throw NumericalError(os.str());
            }
        }
        if (std::abs(sum - 1.0) > kUnityTol) {
            std::ostringstream os;
            os << "partition of unity violated at s=" << s << " (sum " << sum << ") for "
               << describe(space_);
            throw NumericalError(os.str());
        }
    }

    table_a_.resize(n, n);
    table_b_.resize(n, n);
    for (int h = 0; h < n; ++h) {
        for (int m = 0; m < n; ++m) {
            table_a_(h, m) = eval_derivative(m, h, a);
            table_b_(h, m) = eval_derivative(n - 1 - m, h, b);
        }
    }
    // Endpoint nonzero pattern: the diagonal of both tables.
    for (int h = 0; h < n - 1; ++h) {
        for (const auto* t : {&table_a_, &table_b_}) {
            const double scale = t->row(h).cwiseAbs().maxCoeff();
            if (!(std::abs((*t)(h, h)) > 1e-6 * scale)) {
                std::ostringstream os;
                os << "endpoint derivative of order " << h << " vanishes for " << describe(space_);
                throw SingularSystem(os.str());
            }
        }
    }
}

void BernsteinBasis::check_index(int i) const {
    if (i < 0 || i >= n()) {
        std::ostringstream os;
        os << "basis index " << i << " out of range [0, " << n() - 1 << "]";
        throw InvalidParameter(os.str());
    }
}

void BernsteinBasis::check_domain(double s) const {
    const double slack = 1e-12 * std::max(1.0, b() - a());
    if (!(s >= a() - slack && s <= b() + slack)) {
        std::ostringstream os;
        os << "s = " << s << " outside [" << a() << ", " << b() << "]";
        throw DomainViolation(os.str());
    }
}

double BernsteinBasis::eval(int i, double s) const {
    check_index(i);
    check_domain(s);
    return levels_.back().funcs[i](s);
}

void BernsteinBasis::eval_all(double s, std::span<double> out, int order) const {
    if (order == 0) {
        check_domain(s);
        const auto& f = levels_.back().funcs;
        for (int i = 0; i < n(); ++i) out[i] = f[i](s);
        return;
    }
    for (int i = 0; i < n(); ++i) out[i] = eval_derivative(i, order, s);
}

double BernsteinBasis::eval_derivative(int i, int order, double s) const {
    check_index(i);
    return level_derivative(n() - 1, i, order, s);
}

double BernsteinBasis::level_derivative(int k, int i, int order, double s) const {
    if (k < 1 || k > n() - 1 || i < 0 || i > k) {
        std::ostringstream os;
        os << "level function U_{" << i << "," << k << "} does not exist for n=" << n();
        throw InvalidParameter(os.str());
    }
    if (order < 0 || order > max_derivative_order() + (n() - 1 - k)) {
        std::ostringstream os;
        os << "derivative order " << order << " exceeds the configured maximum";
        throw InvalidParameter(os.str());
    }
    check_domain(s);

    // Weights over the functions of the current level.
    std::vector<double> w(k + 1, 0.0);
    w[i] = 1.0;
    int level = k;
    int remaining = order;
    while (remaining > 0 && level > 1) {
        const auto& d = levels_[level - 2].d;  // weights of level-1
        std::vector<double> next(level, 0.0);
        for (int m = 0; m <= level; ++m) {
            if (w[m] == 0.0) continue;
            if (m >= 1) next[m - 1] += w[m] / d[m - 1];
            if (m <= level - 1) next[m] -= w[m] / d[m];
        }
        w = std::move(next);
        --level;
        --remaining;
    }

    double sum = 0.0;
    if (level == 1) {
        const int g = n() - 2 + remaining;
        const double du = space_.generator(Generator::U, g, s);
        const double dv = space_.generator(Generator::V, g, s);
        for (int m = 0; m <= 1; ++m)
            sum += w[m] * (base_.coeffs[m][0] * du + base_.coeffs[m][1] * dv);
        return sum;
    }
    const auto& funcs = levels_[level - 1].funcs;
    for (int m = 0; m <= level; ++m)
        if (w[m] != 0.0) sum += w[m] * funcs[m](s);
    return sum;
}

BasisPtr build_basis(const SectionSpace& space) {
    return std::make_shared<const BernsteinBasis>(space);
}

BasisPtr BasisCache::get(const GeneratorPair& gen, int n, double a, double b) {
    Key key{gen, n, a, b};
    {
        std::lock_guard lock(mutex_);
        auto it = entries_.find(key);
        if (it != entries_.end()) return it->second;
    }
    BasisPtr basis = build_basis(SectionSpace(gen, n, a, b));
    std::lock_guard lock(mutex_);
    auto [it, inserted] = entries_.emplace(key, std::move(basis));
    return it->second;
}

std::size_t BasisCache::size() const {
    std::lock_guard lock(mutex_);
    return entries_.size();
}

void BasisCache::clear() {
    std::lock_guard lock(mutex_);
    entries_.clear();
}

BasisCache& basis_cache() {
    static BasisCache cache;
    return cache;
}

} // namespace gentess
