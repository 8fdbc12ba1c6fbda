#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gentess/functions.hpp"
#include "gentess/gspace.hpp"

namespace gentess {

/// Linear system of the local Hermite interpolant at (s0, t0).
///
/// Unknowns, in order: a_ij (i <= n1-3, j <= n2-3, row-major), b_0..b_{n1-3},
/// c_0..c_{n1-3}, d_0..d_{n2-3}, e_0..e_{n2-3}, nu_1..nu_4. They are the
/// weights of (s-s0)^i/i! (t-t0)^j/j!, (s-s0)^i/i! u2, (s-s0)^i/i! v2,
/// u1 (t-t0)^j/j!, v1 (t-t0)^j/j!, u1u2, u1v2, v1u2, v1v2.
///
/// Rows: the derivative conditions (i,j) grouped so that A is upper block
/// triangular with diagonal blocks I, A1, A2, A3.
struct HermiteSystem {
    int n1 = 0, n2 = 0;
    double s0 = 0, t0 = 0;
    Eigen::MatrixXd A;
    Eigen::VectorXd rhs;
    Eigen::Matrix2d D1;  // rows: orders n1-2, n1-1 of (u1, v1) at s0
    Eigen::Matrix2d D2;  // rows: orders n2-2, n2-1 of (u2, v2) at t0
    int off_bc = 0, off_de = 0, off_nu = 0;

    int size() const { return static_cast<int>(A.rows()); }
    int row_of(int i, int j) const;
    int col_of(int k, int l) const;
    Eigen::MatrixXd block(int first, int count_r, int second, int count_c) const {
        return A.block(first, second, count_r, count_c);
    }
};

HermiteSystem assemble_hermite(const SectionSpace& sx, const SectionSpace& sy, double s0,
                               double t0, const DerivativeOracle& f);

/// Block back-substitution: A3, then A1 and A2, then the identity block.
/// Throws SingularSystem naming the block whose determinant is below the
/// floor.
Eigen::VectorXd solve_block(const HermiteSystem& sys);

/// Dense LU with partial pivoting on the full matrix.
Eigen::VectorXd solve_dense(const HermiteSystem& sys);

struct BlockDeterminants {
    double A1 = 0, A2 = 0, A3 = 0, D1 = 0, D2 = 0, A = 0;
};
/// Determinants computed densely from the assembled blocks.
BlockDeterminants block_determinants(const HermiteSystem& sys);

/// Coefficient matrix K (n1 x n2) of the solution over the spanning
/// functions (s-s0)^i/i!, u1, v1 by (t-t0)^j/j!, u2, v2.
Eigen::MatrixXd spanning_coefficients(const HermiteSystem& sys, const Eigen::VectorXd& x);

struct LocalInterpolant {
    double s0 = 0, t0 = 0;
    Eigen::MatrixXd K;   // spanning-function coefficients
    Eigen::MatrixXd bb;  // B-coefficients on the cell
};

/// Q_L(f; s0, t0) on the cell spanned by the two bases. (s0, t0) must lie in
/// the open cell.
LocalInterpolant hermite_local(const BernsteinBasis& bx, const BernsteinBasis& by,
                               const DerivativeOracle& f, double s0, double t0);
LocalInterpolant hermite_local(const GSplineSpace& space, int cell, const DerivativeOracle& f,
                               double s0, double t0);

struct QuasiOptions {
    int threads = 1;
    /// Solve every k-th local system densely as well and compare (0: never).
    int crosscheck_every = 0;
};

/// Values gamma_xi(Q_L(f; center of R_xi)) on M, R_xi the cell of xi.
std::vector<double> quasi_interpolant_mds(const GSplineSpace& space, const DerivativeOracle& f,
                                          const QuasiOptions& opt = {});

/// Qf as a complete coefficient map.
BCoefficientMap quasi_interpolant(const GSplineSpace& space, const DerivativeOracle& f,
                                  const QuasiOptions& opt = {});

enum class Norm { Sup, L2 };

struct ErrorNorms {
    double sup = 0;
    double l2 = 0;
};

/// Sup norm on a grid x grid lattice per cell and discrete L2 with gauss x
/// gauss Gauss-Legendre nodes per cell.
ErrorNorms approximation_error(const GSplineSpace& space, const BCoefficientMap& coeffs,
                               const DerivativeOracle& f, int grid = 64, int gauss = 8);

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int count, std::vector<double>& nodes, std::vector<double>& weights);

std::vector<Box> tensor_grid(const Rational& x0, const Rational& x1, const Rational& y0,
                             const Rational& y1, int nx, int ny);

/// Splits every cell into four.
std::vector<Box> refine_dyadic(const std::vector<Box>& cells);

struct ConvergenceLevel {
    int cells = 0;
    double H = 0;
    double error_sup = 0;
    double error_l2 = 0;
    double error = 0;  // in the selected norm
};

struct ConvergenceReport {
    std::vector<ConvergenceLevel> levels;
    /// orders[l] estimated between levels l and l+1.
    std::vector<double> orders;
    int k = 0;
    Norm norm = Norm::Sup;
};

struct ConvergenceOptions {
    SectionFamily s;
    SectionFamily t;
    int r1 = 1, r2 = 1;
    std::vector<Box> base;  // empty: 2x2 grid on [0,1]^2
    int levels = 4;
    Norm norm = Norm::Sup;
    int threads = 1;
    int grid = 64;
    int gauss = 8;
};

ConvergenceReport convergence_study(const ConvergenceOptions& opt, const DerivativeOracle& f);

struct NormEquivalenceReport {
    int samples = 0;
    double K1 = 0;           // max over cells of ||M^{-1}||_inf
    bool upper_ok = true;    // ||p||_R <= ||c||_inf on every sample
    bool lower_ok = true;    // ||c||_inf / K1 <= ||p||_R on every sample
    double K2 = 0;           // max of A^{1/2} ||c||_2 / ||p||_{2,R}
    bool l2_upper_ok = true; // ||p||_{2,R} <= A^{1/2} ||c||_2
    double K3 = 0;           // max |c_eta| / max_M |c_xi|
    double K4 = 0;           // max diam(Omega_R) / diam(R); 0 if not computed
};

NormEquivalenceReport norm_equivalence_check(const GSplineSpace& space, int samples,
                                             unsigned seed, bool with_supports = true);

/// ||M^{-1}||_inf for the collocation matrix of a cell at its domain points.
double collocation_inverse_norm(const GSplineSpace& space, int cell);

} // namespace gentess
