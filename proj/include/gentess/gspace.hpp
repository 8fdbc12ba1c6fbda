#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gentess/bernstein.hpp"
#include "gentess/section_space.hpp"
#include "gentess/tmesh.hpp"

namespace gentess {

/// Generator pair and order for one coordinate direction.
struct SectionFamily {
    GeneratorPair gen;
    int n = 4;
    bool operator==(const SectionFamily&) const = default;
};

struct DomainPoint {
    int cell = 0;
    int i = 0;
    int j = 0;
    double x = 0;
    double y = 0;
};

enum class Provenance { Vertex, Edge, Cell };
const char* to_string(Provenance p);

struct MdsEntry {
    DomainPoint point;
    Provenance provenance = Provenance::Cell;
    /// Vertex, composite edge or cell id the point was chosen for.
    int source = 0;
};

/// B-coefficients indexed by (cell, i, j).
class BCoefficientMap {
public:
    BCoefficientMap() = default;
    BCoefficientMap(int cells, int n1, int n2);

    int n1() const { return n1_; }
    int n2() const { return n2_; }
    int cells() const { return cells_; }
    std::size_t size() const { return values_.size(); }

    int index(int cell, int i, int j) const { return (cell * n1_ + i) * n2_ + j; }

    double& at(int cell, int i, int j) { return values_[index(cell, i, j)]; }
    double at(int cell, int i, int j) const { return values_[index(cell, i, j)]; }
    bool is_set(int cell, int i, int j) const { return set_[index(cell, i, j)] != 0; }

    /// Assigns only if the entry has no value yet. Returns whether it wrote.
    bool set_if_unset(int cell, int i, int j, double v);
    void set(int cell, int i, int j, double v);

    bool complete() const;
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

    /// Coefficients of one cell as an n1 x n2 matrix.
    Eigen::MatrixXd cell_matrix(int cell) const;

private:
    int cells_ = 0, n1_ = 0, n2_ = 0;
    std::vector<double> values_;
    std::vector<char> set_;
};

struct DimensionTerms {
    int J_NT = 0, E_hor = 0, E_ver = 0, N = 0;
    int vertex_term = 0, hor_term = 0, ver_term = 0, cell_term = 0;
    int total() const { return vertex_term + hor_term + ver_term + cell_term; }
};

/// Spline space of bi-order (n1,n2) and smoothness (r1,r2) over a T-mesh.
/// Immutable after construction.
class GSplineSpace {
public:
    /// Throws PreconditionViolated when the mesh is irregular or cyclic, when
    /// the order/smoothness pair is outside n-1 >= 2r+1, or when a cell or a
    /// composite-edge span fails the section-space checks.
    GSplineSpace(std::shared_ptr<const TMesh> mesh, SectionFamily s, SectionFamily t, int r1,
                 int r2);

    const TMesh& mesh() const { return *mesh_; }
    std::shared_ptr<const TMesh> mesh_ptr() const { return mesh_; }
    const SectionFamily& family_s() const { return fs_; }
    const SectionFamily& family_t() const { return ft_; }
    int n1() const { return fs_.n; }
    int n2() const { return ft_.n; }
    int r1() const { return r1_; }
    int r2() const { return r2_; }
    int num_cells() const { return static_cast<int>(mesh_->cells().size()); }
    int num_coefficients() const { return num_cells() * n1() * n2(); }

    const BernsteinBasis& basis_s(int cell) const { return *bs_[cell]; }
    const BernsteinBasis& basis_t(int cell) const { return *bt_[cell]; }
    /// Basis along the span of a composite edge.
    const BernsteinBasis& edge_basis(int edge) const { return *be_[edge]; }

    const std::vector<MdsEntry>& mds() const { return mds_; }
    /// Position in mds() of coefficient (cell,i,j), or -1.
    int mds_position(int cell, int i, int j) const {
        return mds_pos_[(cell * n1() + i) * n2() + j];
    }
    int dimension() const { return static_cast<int>(mds_.size()); }
    DimensionTerms dimension_terms() const { return terms_; }

    /// Cell anchoring M_w (longest side at w, smallest id on ties).
    int vertex_cell(int vertex) const { return rw_[vertex]; }
    /// Cell anchoring M_e (side starting at the lower endpoint of e; the cell
    /// below a horizontal edge or left of a vertical one when both exist).
    int edge_cell(int edge) const { return re_[edge]; }

    BCoefficientMap empty_map() const { return BCoefficientMap(num_cells(), n1(), n2()); }

private:
    void build_mds();

    std::shared_ptr<const TMesh> mesh_;
    SectionFamily fs_, ft_;
    int r1_, r2_;
    std::vector<BasisPtr> bs_, bt_, be_;
    std::vector<int> rw_, re_;
    std::vector<MdsEntry> mds_;
    std::vector<int> mds_pos_;
    DimensionTerms terms_;
};

std::vector<DomainPoint> domain_points(const GSplineSpace& space);

DomainPoint domain_point(const GSplineSpace& space, int cell, int i, int j);

/// Formula value. Throws PreconditionViolated outside n-1 >= 2r+1 or for
/// irregular/cyclic meshes.
DimensionTerms dimension_formula(const TMesh& mesh, int n1, int n2, int r1, int r2);
int dimension(const GSplineSpace& space);

const std::vector<MdsEntry>& minimal_determining_set(const GSplineSpace& space);

/// Derivatives D_s^h D_t^k p|_R at a corner w of R for h <= hmax, k <= kmax.
/// Only the coefficients in the corresponding disk are read.
Eigen::MatrixXd corner_jet(const GSplineSpace& space, const BCoefficientMap& coeffs, int cell,
                           int vertex, int hmax, int kmax);

/// Solves the smoothness system at w: fills D_r^{R'}(w) for every other cell
/// R' having w as a corner from the disk D_r^R(w). Entries already set are
/// kept. Throws SingularSystem on a vanishing diagonal.
void propagate_vertex(const GSplineSpace& space, int vertex, int source_cell,
                      BCoefficientMap& coeffs);

/// Fills every coefficient within distance r_e of composite edge e. Requires
/// the band of the anchoring cell at the lower endpoint (its disk and M_e)
/// and a full disk at the upper endpoint. Entries already set are kept.
void propagate_edge(const GSplineSpace& space, int edge, BCoefficientMap& coeffs);

/// Runs the vertex/edge iteration from values on M (ordered as mds()).
/// Values on M are never modified. Throws NumericalError if the iteration
/// stalls.
BCoefficientMap complete_coefficients(const GSplineSpace& space,
                                      std::span<const double> mds_values);

/// B-coefficients of the dual basis element for mds()[k].
BCoefficientMap dual_basis_function(const GSplineSpace& space, int k);

/// D_s^h D_t^k of p|_cell at (s,t).
double eval_cell(const GSplineSpace& space, const BCoefficientMap& coeffs, int cell, double s,
                 double t, int h = 0, int k = 0);

/// Value at (s,t) from the lowest-id containing cell. Throws DomainViolation
/// outside the domain.
double eval_spline(const GSplineSpace& space, const BCoefficientMap& coeffs, double s, double t);

/// Values on M of a complete map.
std::vector<double> restrict_to_mds(const GSplineSpace& space, const BCoefficientMap& coeffs);

/// Cells on which some coefficient exceeds threshold in magnitude.
std::vector<int> support_cells(const GSplineSpace& space, const BCoefficientMap& coeffs,
                               double threshold = 1e-12);

} // namespace gentess
