#pragma once

#include <Eigen/Dense>

#include <complex>
#include <map>

#include "qfa/error.hpp"

namespace qfa {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using Index = Eigen::Index;

inline constexpr double kStructuralTol = 1e-10;
inline constexpr double kReconstructionTol = 1e-9;

// A square matrix of which only some columns are known.
struct PartialMatrix {
  Index dim = 0;
  std::map<Index, ComplexVector> columns;
};

// Max-norm of M^dagger M - I.
double unitarity_defect(const ComplexMatrix& m);

bool is_unitary(const ComplexMatrix& m, double tol = kStructuralTol);

// Fills the unspecified columns with an orthonormal extension of the given
// ones. Seeds are standard basis vectors taken in index order; a seed is
// skipped when its residual after projecting out the current columns is
// small. The specified columns are copied verbatim.
ComplexMatrix complete_unitary(const PartialMatrix& p, double tol = kStructuralTol);

// Principal square root of a symmetric PSD matrix. Eigenvalues in [-tol, 0)
// are clamped to zero; anything below -tol is rejected.
RealMatrix psd_principal_sqrt(const RealMatrix& m, double tol = kReconstructionTol);

bool is_row_stochastic(const RealMatrix& a, double tol = kStructuralTol);

struct StochasticEmbedding {
  ComplexMatrix unitary;  // 2n x 2n, top rows (1/scale)(A | B)
  double scale = 1.0;     // l, the common row length of (A | B)
};

// Doubling construction placing a row-stochastic n x n matrix A in the top
// left block of a 2n x 2n real orthogonal matrix, scaled by 1/l with l = sqrt(n).
StochasticEmbedding embed_stochastic(const RealMatrix& a);

// Scale used by embed_stochastic for an n x n input.
double embedding_scale(Index n);

}  // namespace qfa
