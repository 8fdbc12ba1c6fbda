#include "gentess/approx.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>

#include <Eigen/Eigenvalues>

#include "gentess/chebyshev.hpp"
#include "gentess/errors.hpp"

namespace gentess {

int HermiteSystem::row_of(int i, int j) const {
    const int p1 = n1 - 2, p2 = n2 - 2;
    if (i < p1 && j < p2) return i * p2 + j;
    if (i < p1) return off_bc + 2 * i + (j - p2);
    if (j < p2) return off_de + 2 * j + (i - p1);
    return off_nu + (i - p1) + 2 * (j - p2);
}

int HermiteSystem::col_of(int k, int l) const {
    const int p1 = n1 - 2, p2 = n2 - 2;
    if (k < p1 && l < p2) return k * p2 + l;
    if (k < p1) return off_bc + (l - p2) * p1 + k;
    if (l < p2) return off_de + (k - p1) * p2 + l;
    return off_nu + 2 * (k - p1) + (l - p2);
}

namespace {

// Phi(i, k): i-th derivative at x0 of the k-th spanning function
// (x-x0)^k/k!, u, v.
Eigen::MatrixXd spanning_derivatives(const SectionSpace& sp, double x0) {
    const int n = sp.n();
    Eigen::MatrixXd phi = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        if (i < n - 2) phi(i, i) = 1.0;
        phi(i, n - 2) = sp.generator(Generator::U, i, x0);
        phi(i, n - 1) = sp.generator(Generator::V, i, x0);
    }
    return phi;
}

double taylor_term(int k, double x, double x0) {
    double v = 1.0;
    for (int m = 1; m <= k; ++m) v *= (x - x0) / m;
    return v;
}

// u and v are replaced by their Taylor remainders of order n-2 at x0. The span
// is unchanged and the set stays well conditioned on small cells.
double spanning_value(const SectionSpace& sp, int k, double x, double x0) {
    const int n = sp.n();
    if (k < n - 2) return taylor_term(k, x, x0);
    const Generator g = k == n - 2 ? Generator::U : Generator::V;
    double v = sp.generator(g, 0, x);
    for (int m = 0; m < n - 2; ++m) v -= sp.generator(g, m, x0) * taylor_term(m, x, x0);
    return v;
}

// Derivatives at x0 of the remainder spanning set: I on top, D in the corner.
Eigen::MatrixXd remainder_derivatives(const SectionSpace& sp, double x0) {
    const int n = sp.n();
    Eigen::MatrixXd phi = Eigen::MatrixXd::Identity(n, n);
    phi.bottomRightCorner(2, 2) = spanning_derivatives(sp, x0).bottomRightCorner(2, 2);
    return phi;
}

// Column k: B-coefficients of the k-th spanning function.
Eigen::MatrixXd spanning_to_bb(const BernsteinBasis& basis, double x0) {
    const int n = basis.n();
    const auto pts = chebyshev_points(basis.a(), basis.b(), 2 * n);
    Eigen::MatrixXd bm(pts.size(), n), phi(pts.size(), n);
    std::vector<double> vals(n);
    for (std::size_t p = 0; p < pts.size(); ++p) {
        basis.eval_all(pts[p], vals);
        for (int i = 0; i < n; ++i) bm(p, i) = vals[i];
        for (int k = 0; k < n; ++k) phi(p, k) = spanning_value(basis.space(), k, pts[p], x0);
    }
    return bm.colPivHouseholderQr().solve(phi);
}

// |det M| >= 1e-12 scale^k with M's columns scaled to unit max-norm, i.e. the
// floor is measured after rescaling the unknowns.
void check_det(const Eigen::MatrixXd& m, const char* block) {
    Eigen::MatrixXd e = m;
    for (Eigen::Index c = 0; c < e.cols(); ++c) {
        const double norm = e.col(c).cwiseAbs().maxCoeff();
        if (norm > 0) e.col(c) /= norm;
    }
    const double det = e.determinant();
    const double scale = e.cwiseAbs().maxCoeff();
    if (!(std::abs(det) >= 1e-12 * std::pow(scale, static_cast<double>(e.rows())))) {
        std::ostringstream os;
        os << "Hermite block " << block << " determinant " << m.determinant()
           << " below the floor (equilibrated " << det << ")";
        throw SingularSystem(os.str());
    }
}

} // namespace

HermiteSystem assemble_hermite(const SectionSpace& sx, const SectionSpace& sy, double s0,
                               double t0, const DerivativeOracle& f) {
    HermiteSystem sys;
    const int n1 = sys.n1 = sx.n();
    const int n2 = sys.n2 = sy.n();
    sys.s0 = s0;
    sys.t0 = t0;
    sys.off_bc = (n1 - 2) * (n2 - 2);
    sys.off_de = sys.off_bc + 2 * (n1 - 2);
    sys.off_nu = sys.off_de + 2 * (n2 - 2);
    const Eigen::MatrixXd phi = spanning_derivatives(sx, s0);
    const Eigen::MatrixXd psi = spanning_derivatives(sy, t0);
    sys.D1 = phi.bottomRightCorner(2, 2);
    sys.D2 = psi.bottomRightCorner(2, 2);

    const int N = n1 * n2;
    sys.A = Eigen::MatrixXd::Zero(N, N);
    sys.rhs.resize(N);
    for (int i = 0; i < n1; ++i) {
        for (int j = 0; j < n2; ++j) {
            const int r = sys.row_of(i, j);
            sys.rhs(r) = f(i, j, s0, t0);
            for (int k = 0; k < n1; ++k) {
                if (phi(i, k) == 0.0) continue;
                for (int l = 0; l < n2; ++l) sys.A(r, sys.col_of(k, l)) = phi(i, k) * psi(j, l);
            }
        }
    }
    return sys;
}

Eigen::VectorXd solve_block(const HermiteSystem& sys) {
    const int p1 = sys.n1 - 2, p2 = sys.n2 - 2;
    const int nI = p1 * p2, nbc = 2 * p1, nde = 2 * p2;
    const Eigen::MatrixXd& A = sys.A;

    const Eigen::Matrix4d A3 = A.block(sys.off_nu, sys.off_nu, 4, 4);
    check_det(A3, "A3");
    check_det(sys.D1, "D1");
    check_det(sys.D2, "D2");

    Eigen::VectorXd x(sys.size());
    const Eigen::Vector4d nu = A3.partialPivLu().solve(sys.rhs.segment(sys.off_nu, 4));
    x.segment(sys.off_nu, 4) = nu;

    if (nbc > 0) {
        const Eigen::MatrixXd A1 = A.block(sys.off_bc, sys.off_bc, nbc, nbc);
        Eigen::VectorXd r = sys.rhs.segment(sys.off_bc, nbc) -
                            A.block(sys.off_bc, sys.off_nu, nbc, 4) * nu;
        x.segment(sys.off_bc, nbc) = A1.partialPivLu().solve(r);
    }
    if (nde > 0) {
        const Eigen::MatrixXd A2 = A.block(sys.off_de, sys.off_de, nde, nde);
        Eigen::VectorXd r = sys.rhs.segment(sys.off_de, nde) -
                            A.block(sys.off_de, sys.off_nu, nde, 4) * nu;
        x.segment(sys.off_de, nde) = A2.partialPivLu().solve(r);
    }
    if (nI > 0) {
        const int rest = sys.size() - nI;
        x.head(nI) = sys.rhs.head(nI) - A.block(0, nI, nI, rest) * x.tail(rest);
    }
    return x;
}

Eigen::VectorXd solve_dense(const HermiteSystem& sys) { return sys.A.partialPivLu().solve(sys.rhs); }

BlockDeterminants block_determinants(const HermiteSystem& sys) {
    const int p1 = sys.n1 - 2, p2 = sys.n2 - 2;
    BlockDeterminants d;
    d.A1 = p1 > 0 ? sys.A.block(sys.off_bc, sys.off_bc, 2 * p1, 2 * p1).determinant() : 1.0;
    d.A2 = p2 > 0 ? sys.A.block(sys.off_de, sys.off_de, 2 * p2, 2 * p2).determinant() : 1.0;
    d.A3 = sys.A.block(sys.off_nu, sys.off_nu, 4, 4).determinant();
    d.D1 = sys.D1.determinant();
    d.D2 = sys.D2.determinant();
    d.A = sys.A.determinant();
    return d;
}

Eigen::MatrixXd spanning_coefficients(const HermiteSystem& sys, const Eigen::VectorXd& x) {
    Eigen::MatrixXd K(sys.n1, sys.n2);
    for (int k = 0; k < sys.n1; ++k)
        for (int l = 0; l < sys.n2; ++l) K(k, l) = x(sys.col_of(k, l));
    return K;
}

LocalInterpolant hermite_local(const BernsteinBasis& bx, const BernsteinBasis& by,
                               const DerivativeOracle& f, double s0, double t0) {
    if (!(s0 > bx.a() && s0 < bx.b() && t0 > by.a() && t0 < by.b())) {
        std::ostringstream os;
        os << "anchor (" << s0 << ", " << t0 << ") not in the open cell";
        throw DomainViolation(os.str());
    }
    const HermiteSystem sys = assemble_hermite(bx.space(), by.space(), s0, t0, f);
    LocalInterpolant li;
    li.s0 = s0;
    li.t0 = t0;
    li.K = spanning_coefficients(sys, solve_block(sys));
    // Same interpolant, rebuilt over the remainder spanning set.
    Eigen::MatrixXd F(sys.n1, sys.n2);
    for (int i = 0; i < sys.n1; ++i)
        for (int j = 0; j < sys.n2; ++j) F(i, j) = sys.rhs(sys.row_of(i, j));
    const Eigen::MatrixXd P1 = remainder_derivatives(bx.space(), s0);
    const Eigen::MatrixXd P2 = remainder_derivatives(by.space(), t0);
    const Eigen::MatrixXd Kr = P1.partialPivLu().solve(P2.partialPivLu().solve(F.transpose()).transpose());
    li.bb = spanning_to_bb(bx, s0) * Kr * spanning_to_bb(by, t0).transpose();
    if (!li.bb.allFinite()) throw NumericalError("local interpolant is not finite");
    return li;
}

LocalInterpolant hermite_local(const GSplineSpace& space, int cell, const DerivativeOracle& f,
                               double s0, double t0) {
    return hermite_local(space.basis_s(cell), space.basis_t(cell), f, s0, t0);
}

std::vector<double> quasi_interpolant_mds(const GSplineSpace& space, const DerivativeOracle& f,
                                          const QuasiOptions& opt) {
    const auto& mds = space.mds();
    // Each M entry uses its own cell, so one local interpolant per cell.
    std::vector<char> needed(space.num_cells(), 0);
    for (const auto& m : mds) needed[m.point.cell] = 1;
    std::vector<int> cells;
    for (int c = 0; c < space.num_cells(); ++c)
        if (needed[c]) cells.push_back(c);

    std::vector<Eigen::MatrixXd> bb(space.num_cells());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t idx = next++;
            if (idx >= cells.size()) return;
            const int c = cells[idx];
            try {
                const Cell& cell = space.mesh().cell(c);
                const double s0 = 0.5 * (cell.a + cell.b), t0 = 0.5 * (cell.c + cell.d);
                bb[c] = hermite_local(space, c, f, s0, t0).bb;
                if (opt.crosscheck_every > 0 && idx % opt.crosscheck_every == 0) {
                    const HermiteSystem sys = assemble_hermite(space.basis_s(c).space(),
                                                               space.basis_t(c).space(), s0, t0, f);
                    const Eigen::VectorXd xb = solve_block(sys), xd = solve_dense(sys);
                    const double scale = std::max(1.0, xd.cwiseAbs().maxCoeff());
                    if ((xb - xd).cwiseAbs().maxCoeff() > 1e-8 * scale)
                        throw NumericalError("block and dense Hermite solutions disagree in cell " +
                                             std::to_string(c));
                }
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = cells.size();
                return;
            }
        }
    };
    const int nthreads = std::max(1, std::min<int>(opt.threads, static_cast<int>(cells.size())));
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    std::vector<double> values;
    values.reserve(mds.size());
    for (const auto& m : mds) values.push_back(bb[m.point.cell](m.point.i, m.point.j));
    return values;
}

BCoefficientMap quasi_interpolant(const GSplineSpace& space, const DerivativeOracle& f,
                                  const QuasiOptions& opt) {
    return complete_coefficients(space, quasi_interpolant_mds(space, f, opt));
}

void gauss_legendre(int count, std::vector<double>& nodes, std::vector<double>& weights) {
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(count, count);
    for (int k = 1; k < count; ++k) {
        const double b = k / std::sqrt(4.0 * k * k - 1.0);
        J(k, k - 1) = J(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    nodes.resize(count);
    weights.resize(count);
    for (int k = 0; k < count; ++k) {
        nodes[k] = es.eigenvalues()(k);
        const double v = es.eigenvectors()(0, k);
        weights[k] = 2.0 * v * v;
    }
}

namespace {

// Rows: basis values (order 0) at the given points.
Eigen::MatrixXd basis_matrix(const BernsteinBasis& b, const std::vector<double>& pts) {
    Eigen::MatrixXd m(pts.size(), b.n());
    std::vector<double> vals(b.n());
    for (std::size_t p = 0; p < pts.size(); ++p) {
        b.eval_all(pts[p], vals);
        for (int i = 0; i < b.n(); ++i) m(p, i) = vals[i];
    }
    return m;
}

std::vector<double> linspace(double a, double b, int count) {
    std::vector<double> out(count);
    for (int k = 0; k < count; ++k) out[k] = count == 1 ? a : a + (b - a) * k / (count - 1);
    out.back() = b;
    return out;
}

} // namespace

ErrorNorms approximation_error(const GSplineSpace& space, const BCoefficientMap& coeffs,
                               const DerivativeOracle& f, int grid, int gauss) {
    std::vector<double> gn, gw;
    gauss_legendre(gauss, gn, gw);
    ErrorNorms out;
    double l2sq = 0.0;
    for (const auto& c : space.mesh().cells()) {
        const Eigen::MatrixXd C = coeffs.cell_matrix(c.id);
        {
            const auto ps = linspace(c.a, c.b, grid), pt = linspace(c.c, c.d, grid);
            const Eigen::MatrixXd V = basis_matrix(space.basis_s(c.id), ps) * C *
                                      basis_matrix(space.basis_t(c.id), pt).transpose();
            for (int p = 0; p < grid; ++p)
                for (int q = 0; q < grid; ++q)
                    out.sup = std::max(out.sup, std::abs(V(p, q) - f(0, 0, ps[p], pt[q])));
        }
        {
            std::vector<double> ps(gauss), pt(gauss);
            for (int k = 0; k < gauss; ++k) {
                ps[k] = 0.5 * (c.a + c.b) + 0.5 * (c.b - c.a) * gn[k];
                pt[k] = 0.5 * (c.c + c.d) + 0.5 * (c.d - c.c) * gn[k];
            }
            const Eigen::MatrixXd V = basis_matrix(space.basis_s(c.id), ps) * C *
                                      basis_matrix(space.basis_t(c.id), pt).transpose();
            const double jac = 0.25 * (c.b - c.a) * (c.d - c.c);
            for (int p = 0; p < gauss; ++p)
                for (int q = 0; q < gauss; ++q) {
                    const double d = V(p, q) - f(0, 0, ps[p], pt[q]);
                    l2sq += jac * gw[p] * gw[q] * d * d;
                }
        }
    }
    out.l2 = std::sqrt(l2sq);
    return out;
}

std::vector<Box> tensor_grid(const Rational& x0, const Rational& x1, const Rational& y0,
                             const Rational& y1, int nx, int ny) {
    if (nx < 1 || ny < 1 || !(x0 < x1) || !(y0 < y1))
        throw InvalidParameter("tensor_grid: invalid extent or cell counts");
    std::vector<Box> out;
    const Rational hx = (x1 - x0) / nx, hy = (y1 - y0) / ny;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            out.push_back({x0 + hx * i, x0 + hx * (i + 1), y0 + hy * j, y0 + hy * (j + 1)});
    return out;
}

std::vector<Box> refine_dyadic(const std::vector<Box>& cells) {
    std::vector<Box> out;
    out.reserve(cells.size() * 4);
    for (const auto& b : cells) {
        const Rational xm = (b.a + b.b) / 2, ym = (b.c + b.d) / 2;
        out.push_back({b.a, xm, b.c, ym});
        out.push_back({xm, b.b, b.c, ym});
        out.push_back({b.a, xm, ym, b.d});
        out.push_back({xm, b.b, ym, b.d});
    }
    return out;
}

ConvergenceReport convergence_study(const ConvergenceOptions& opt, const DerivativeOracle& f) {
    if (opt.levels < 2) throw InvalidParameter("convergence study needs at least 2 levels");
    ConvergenceReport rep;
    rep.k = std::min(opt.s.n - 1, opt.t.n - 1);
    rep.norm = opt.norm;
    std::vector<Box> boxes = opt.base.empty() ? tensor_grid(0, 1, 0, 1, 2, 2) : opt.base;
    for (int level = 0; level < opt.levels; ++level) {
        if (level > 0) boxes = refine_dyadic(boxes);
        auto mesh = std::make_shared<const TMesh>(boxes);
        GSplineSpace space(mesh, opt.s, opt.t, opt.r1, opt.r2);
        QuasiOptions qo;
        qo.threads = opt.threads;
        const BCoefficientMap q = quasi_interpolant(space, f, qo);
        const ErrorNorms err = approximation_error(space, q, f, opt.grid, opt.gauss);
        ConvergenceLevel lv;
        lv.cells = space.num_cells();
        for (const auto& c : mesh->cells()) lv.H = std::max(lv.H, std::hypot(c.b - c.a, c.d - c.c));
        lv.error_sup = err.sup;
        lv.error_l2 = err.l2;
        lv.error = opt.norm == Norm::Sup ? err.sup : err.l2;
        rep.levels.push_back(lv);
    }
    for (std::size_t l = 0; l + 1 < rep.levels.size(); ++l) {
        const auto& a = rep.levels[l];
        const auto& b = rep.levels[l + 1];
        rep.orders.push_back(std::log(a.error / b.error) / std::log(a.H / b.H));
    }
    return rep;
}

double collocation_inverse_norm(const GSplineSpace& space, int cell) {
    const Cell& c = space.mesh().cell(cell);
    const int n1 = space.n1(), n2 = space.n2();
    std::vector<double> xs(n1), ys(n2);
    for (int i = 0; i < n1; ++i) xs[i] = ((n1 - 1 - i) * c.a + i * c.b) / (n1 - 1);
    for (int j = 0; j < n2; ++j) ys[j] = ((n2 - 1 - j) * c.c + j * c.d) / (n2 - 1);
    const Eigen::MatrixXd mx = basis_matrix(space.basis_s(cell), xs);
    const Eigen::MatrixXd my = basis_matrix(space.basis_t(cell), ys);
    Eigen::MatrixXd M(n1 * n2, n1 * n2);
    for (int p = 0; p < n1; ++p)
        for (int q = 0; q < n2; ++q)
            for (int i = 0; i < n1; ++i)
                for (int j = 0; j < n2; ++j) M(p * n2 + q, i * n2 + j) = mx(p, i) * my(q, j);
    const Eigen::MatrixXd inv = M.inverse();
    return inv.cwiseAbs().rowwise().sum().maxCoeff();
}

NormEquivalenceReport norm_equivalence_check(const GSplineSpace& space, int samples,
                                             unsigned seed, bool with_supports) {
    NormEquivalenceReport rep;
    rep.samples = samples;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    const int n1 = space.n1(), n2 = space.n2();
    const int grid = 24;

    std::vector<double> gn, gw;
    gauss_legendre(8, gn, gw);
    for (int cell = 0; cell < space.num_cells(); ++cell)
        rep.K1 = std::max(rep.K1, collocation_inverse_norm(space, cell));

    for (int smp = 0; smp < samples; ++smp) {
        const int cell = smp % space.num_cells();
        const Cell& c = space.mesh().cell(cell);
        Eigen::MatrixXd C(n1, n2);
        for (int i = 0; i < n1; ++i)
            for (int j = 0; j < n2; ++j) C(i, j) = uni(rng);
        const double cinf = C.cwiseAbs().maxCoeff();
        const double c2 = C.norm();
        const double k1 = collocation_inverse_norm(space, cell);

        // Sample points include the domain points of the cell.
        std::vector<double> xs = linspace(c.a, c.b, grid), ys = linspace(c.c, c.d, grid);
        for (int i = 0; i < n1; ++i) xs.push_back(((n1 - 1 - i) * c.a + i * c.b) / (n1 - 1));
        for (int j = 0; j < n2; ++j) ys.push_back(((n2 - 1 - j) * c.c + j * c.d) / (n2 - 1));
        const Eigen::MatrixXd V = basis_matrix(space.basis_s(cell), xs) * C *
                                  basis_matrix(space.basis_t(cell), ys).transpose();
        const double pinf = V.cwiseAbs().maxCoeff();
        if (pinf > cinf * (1 + 1e-12)) rep.upper_ok = false;
        if (cinf / k1 > pinf * (1 + 1e-9)) rep.lower_ok = false;

        std::vector<double> ps(8), pt(8);
        for (int k = 0; k < 8; ++k) {
            ps[k] = 0.5 * (c.a + c.b) + 0.5 * (c.b - c.a) * gn[k];
            pt[k] = 0.5 * (c.c + c.d) + 0.5 * (c.d - c.c) * gn[k];
        }
        const Eigen::MatrixXd G = basis_matrix(space.basis_s(cell), ps) * C *
                                  basis_matrix(space.basis_t(cell), pt).transpose();
        const double area = (c.b - c.a) * (c.d - c.c);
        double l2sq = 0.0;
        for (int p = 0; p < 8; ++p)
            for (int q = 0; q < 8; ++q) l2sq += 0.25 * area * gw[p] * gw[q] * G(p, q) * G(p, q);
        const double pl2 = std::sqrt(l2sq);
        if (pl2 > std::sqrt(area) * c2 * (1 + 1e-12)) rep.l2_upper_ok = false;
        rep.K2 = std::max(rep.K2, std::sqrt(area) * c2 / pl2);
    }

    const int dim = space.dimension();
    for (int smp = 0; smp < samples; ++smp) {
        std::vector<double> v(dim);
        for (auto& x : v) x = uni(rng);
        double vmax = 0.0;
        for (double x : v) vmax = std::max(vmax, std::abs(x));
        const BCoefficientMap m = complete_coefficients(space, v);
        double cmax = 0.0;
        for (double x : m.values()) cmax = std::max(cmax, std::abs(x));
        rep.K3 = std::max(rep.K3, cmax / vmax);
    }

    if (with_supports) {
        const int N = space.num_cells();
        std::vector<std::vector<int>> supp(dim);
        for (int k = 0; k < dim; ++k) supp[k] = support_cells(space, dual_basis_function(space, k));
        for (int r = 0; r < N; ++r) {
            std::vector<char> in_omega(N, 0);
            for (int k = 0; k < dim; ++k) {
                if (!std::binary_search(supp[k].begin(), supp[k].end(), r)) continue;
                for (int c : supp[k]) in_omega[c] = 1;
            }
            std::vector<std::pair<double, double>> corners;
            for (int c = 0; c < N; ++c) {
                if (!in_omega[c]) continue;
                const Cell& cc = space.mesh().cell(c);
                corners.insert(corners.end(),
                               {{cc.a, cc.c}, {cc.b, cc.c}, {cc.a, cc.d}, {cc.b, cc.d}});
            }
            double diam = 0.0;
            for (std::size_t i = 0; i < corners.size(); ++i)
                for (std::size_t j = i + 1; j < corners.size(); ++j)
                    diam = std::max(diam, std::hypot(corners[i].first - corners[j].first,
                                                     corners[i].second - corners[j].second));
            const Cell& rc = space.mesh().cell(r);
            rep.K4 = std::max(rep.K4, diam / std::hypot(rc.b - rc.a, rc.d - rc.c));
        }
    }
    return rep;
}

} // namespace gentess
