#pragma once

#include <vector>

#include <Eigen/Dense>

#include "gentess/gspace.hpp"

namespace gentess {

struct OracleOptions {
    /// Multiplier on the n1 + n2 + 2 sample points per shared edge segment.
    int sample_factor = 1;
    /// Also match all derivatives up to (r1, r2) between every pair of cells
    /// meeting at each vertex.
    bool vertex_rows = false;
    /// Relative singular-value threshold.
    double threshold = 1e-8;
};

/// Sampled C^r constraints on all B-coefficients. Each row is scaled to unit
/// max-norm.
struct ConstraintSystem {
    Eigen::MatrixXd matrix;
    int variables = 0;
    int edge_rows = 0;
    int vertex_rows = 0;
};

ConstraintSystem assemble_constraints(const GSplineSpace& space, const OracleOptions& opt = {});

struct OracleResult {
    int nullity = 0;
    int rank = 0;
    int variables = 0;
    int rows = 0;
    double sigma_max = 0.0;
    /// Largest singular value counted as zero and smallest counted as nonzero.
    double largest_zero = 0.0;
    double smallest_nonzero = 0.0;
    /// Some singular value lies within a factor 10 of the threshold.
    bool inconclusive = false;
};

/// Nullity of the constraint matrix by SVD thresholding.
OracleResult brute_force_dimension(const GSplineSpace& space, const OracleOptions& opt = {});

} // namespace gentess
