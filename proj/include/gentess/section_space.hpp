#pragma once

#include <compare>
#include <string>
#include <variant>

namespace gentess {

// Generator families. Each has elementary derivatives of every order.

/// u = exp(l1 s), v = exp(l2 s), l1 != l2. (l, -l) spans cosh/sinh.
struct TwoExponentials {
    double lambda1 = 1.0;
    double lambda2 = -1.0;
    auto operator<=>(const TwoExponentials&) const = default;
};

/// u = exp(l s), v = s exp(l s).
struct ExpTimesLinear {
    double lambda = 1.0;
    auto operator<=>(const ExpTimesLinear&) const = default;
};

/// u = exp(alpha s) cos(beta s), v = exp(alpha s) sin(beta s), beta != 0.
struct ExpTrig {
    double alpha = 0.0;
    double beta = 1.0;
    auto operator<=>(const ExpTrig&) const = default;
};

/// u = s^m0, v = (1 - s)^m1.
struct PowerPair {
    int m0 = 4;
    int m1 = 4;
    auto operator<=>(const PowerPair&) const = default;
};

/// u = s^(n-2), v = s^(n-1): the section space collapses to polynomials of
/// degree n-1. Used as a regression reference against classical splines.
struct PolynomialDegenerate {
    auto operator<=>(const PolynomialDegenerate&) const = default;
};

enum class Generator { U, V };

class GeneratorPair {
public:
    using Variant =
        std::variant<TwoExponentials, ExpTimesLinear, ExpTrig, PowerPair, PolynomialDegenerate>;

    GeneratorPair() = default;
    /// Throws InvalidParameter for malformed parameters (l1 == l2, beta == 0,
    /// non-positive powers, non-finite values).
    GeneratorPair(Variant v);

    /// order-th derivative of u or v at s. n is the section order (only the
    /// polynomial-degenerate pair depends on it).
    double eval(Generator which, int order, double s, int n) const;

    /// Whether span<u,v> modulo low-degree polynomials is invariant under
    /// translation of s (true for every family except PowerPair).
    bool translation_invariant() const;

    /// Whether the pair comes from the linear ODE analysis (closed under
    /// differentiation): exponential, exp-linear and exp-trig families.
    bool ode_family() const;

    std::string kind_name() const;
    const Variant& variant() const { return v_; }

    auto operator<=>(const GeneratorPair&) const = default;
    bool operator==(const GeneratorPair&) const = default;

private:
    Variant v_ = TwoExponentials{};
};

/// How a validity flag was certified.
enum class Certification { Analytic, Numeric };

/// span<1, s, ..., s^(n-3), u, v> on [a,b]. Immutable after construction.
class SectionSpace {
public:
    /// Computes all validity flags; construction succeeds even when a flag is
    /// false. Throws InvalidParameter if n < 3 or a >= b.
    SectionSpace(GeneratorPair gen, int n, double a, double b);

    int n() const { return n_; }
    double a() const { return a_; }
    double b() const { return b_; }
    const GeneratorPair& generators() const { return gen_; }

    bool cond2_ok() const { return cond2_ok_; }
    bool cond3_ok() const { return cond3_ok_; }
    bool dim_ok() const { return dim_ok_; }
    bool valid() const { return cond2_ok_ && cond3_ok_ && dim_ok_; }
    Certification cond2_path() const { return cond2_path_; }
    Certification cond3_path() const { return cond3_path_; }
    Certification dim_path() const { return dim_path_; }

    /// Largest derivative order eval_generator accepts.
    int max_order() const { return 2 * n_ + 2; }

    /// Closed-form derivative of u or v. Throws DomainViolation if s is
    /// outside [a,b] and InvalidParameter if order > max_order().
    double eval_generator(Generator which, int order, double s) const;

    /// Same, without the domain check.
    double generator(Generator which, int order, double s) const {
        return gen_.eval(which, order, s, n_);
    }

    /// Value (order 0) or derivative of the k-th spanning function
    /// 1, s, ..., s^(n-3), u, v.
    double spanning_function(int k, int order, double s) const;

private:
    GeneratorPair gen_;
    int n_;
    double a_;
    double b_;
    bool cond2_ok_ = false;
    bool cond3_ok_ = false;
    bool dim_ok_ = false;
    Certification cond2_path_ = Certification::Analytic;
    Certification cond3_path_ = Certification::Analytic;
    Certification dim_path_ = Certification::Analytic;
};

SectionSpace make_section_space(const GeneratorPair& gen, int n, double a, double b);

/// No nonzero element of span<u^(n-2), v^(n-2)> has two distinct zeros in
/// [a,b]. Analytic for the ODE families, numeric scan otherwise.
bool check_condition2(const SectionSpace& space);
bool check_condition2(const GeneratorPair& gen, int n, double a, double b,
                      Certification* path = nullptr);

/// No nonzero element of span<u^(n-2), v^(n-2)> has a double zero in (a,b),
/// i.e. the Wronskian of (u^(n-2), v^(n-2)) does not vanish there.
bool check_condition3(const SectionSpace& space);
bool check_condition3(const GeneratorPair& gen, int n, double a, double b,
                      Certification* path = nullptr);

/// Numerical rank test of the n spanning functions on a 4n-point grid. Used
/// for dim_ok only for PowerPair; the other families are independent by
/// construction.
bool check_dimension(const GeneratorPair& gen, int n, double a, double b);

} // namespace gentess
