#pragma once

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "gentess/chebyshev.hpp"
#include "gentess/section_space.hpp"

namespace gentess {

/// One level k of the integral recurrence: functions U_{0,k}..U_{k,k} and,
/// for k <= n-2, their integrals d_{i,k} over [a,b].
struct RecurrenceLevel {
    int k = 0;
    std::vector<ChebSeries> funcs;
    std::vector<double> d;
};

/// The unique pair in span<u^(n-2), v^(n-2)> with U0(a)=1, U0(b)=0,
/// U1(a)=0, U1(b)=1. coeffs[i] = (weight of u^(n-2), weight of v^(n-2)).
struct BasePair {
    std::array<std::array<double, 2>, 2> coeffs{};
    ChebSeries u0;
    ChebSeries u1;
};

/// Solves the 2x2 boundary system. Throws PreconditionViolated if the space
/// fails condition (2) or the dimension check, SingularSystem if the system
/// is numerically singular, NumericalError if positivity fails on (a,b).
BasePair base_pair(const SectionSpace& space);

enum class End { A, B };

/// Normalized positive Bernstein-like basis B_{0,n-1}..B_{n-1,n-1} of a
/// section space. Immutable after construction; evaluation is reentrant.
class BernsteinBasis {
public:
    explicit BernsteinBasis(SectionSpace space);

    int n() const { return space_.n(); }
    double a() const { return space_.a(); }
    double b() const { return space_.b(); }
    const SectionSpace& space() const { return space_; }

    /// Highest degree among the stored Chebyshev proxies.
    int proxy_degree() const { return proxy_degree_; }

    /// k = 1..n-1.
    const RecurrenceLevel& level(int k) const { return levels_.at(k - 1); }
    const BasePair& base() const { return base_; }

    double eval(int i, double s) const;

    /// Derivative of B_{i,n-1} obtained from D U_{i,k+1} = U_{i-1,k}/d_{i-1,k}
    /// - U_{i,k}/d_{i,k}, descending to level 1 and finishing with
    /// closed-form generator derivatives.
    double eval_derivative(int i, int order, double s) const;

    /// Same recursion for any level function U_{i,k}.
    double level_derivative(int k, int i, int order, double s) const;

    /// All n values (or order-th derivatives) at s.
    void eval_all(double s, std::span<double> out, int order = 0) const;

    int max_derivative_order() const { return space_.max_order() - (n() - 2); }

    /// table(h, m) = B_{idx}^{(h)}(end) with idx = m at A and idx = n-1-m at
    /// B. Lower triangular up to rounding.
    const Eigen::MatrixXd& endpoint_table(End end) const {
        return end == End::A ? table_a_ : table_b_;
    }

private:
    void check_index(int i) const;
    void check_domain(double s) const;

    SectionSpace space_;
    BasePair base_;
    std::vector<RecurrenceLevel> levels_;
    int proxy_degree_ = 0;
    Eigen::MatrixXd table_a_;
    Eigen::MatrixXd table_b_;
};

using BasisPtr = std::shared_ptr<const BernsteinBasis>;

/// Builds and validates a basis: partition of unity and positivity at 257
/// Chebyshev points, endpoint zero/nonzero patterns.
BasisPtr build_basis(const SectionSpace& space);

/// Process-wide cache keyed by (generators, n, a, b) with exact matching.
class BasisCache {
public:
    BasisPtr get(const GeneratorPair& gen, int n, double a, double b);
    std::size_t size() const;
    void clear();

private:
    struct Key {
        GeneratorPair gen;
        int n;
        double a;
        double b;
        auto operator<=>(const Key&) const = default;
    };
    mutable std::mutex mutex_;
    std::map<Key, BasisPtr> entries_;
};

BasisCache& basis_cache();

/// Number of Chebyshev validation points used by build_basis.
inline constexpr int kBasisSamplePoints = 257;

} // namespace gentess
