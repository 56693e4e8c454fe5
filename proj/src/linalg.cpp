#include "qfa/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace qfa {

namespace {

// Residuals below this are treated as "seed already spanned" regardless of the
// caller's tolerance; normalising anything smaller amplifies rounding noise.
constexpr double kSeedFloor = 1e-6;

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw DimensionError(std::string(what) + ": expected a square matrix, got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

// Two passes of modified Gram-Schmidt against the first `count` columns of basis.
ComplexVector orthogonalize(ComplexVector v, const ComplexMatrix& basis,
                            const std::vector<Index>& filled) {
  for (int pass = 0; pass < 2; ++pass) {
    for (Index c : filled) {
      const Complex proj = basis.col(c).dot(v);  // conjugates the left operand
      v -= proj * basis.col(c);
    }
  }
  return v;
}

}  // namespace

double unitarity_defect(const ComplexMatrix& m) {
  require_square(m, "unitarity_defect");
  const ComplexMatrix gram = m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols());
  return gram.cwiseAbs().maxCoeff();
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  if (m.size() == 0) {
    require_square(m, "is_unitary");
    return true;
  }
  if (!m.allFinite()) {
    require_square(m, "is_unitary");
    return false;
  }
  return unitarity_defect(m) <= tol;
}

ComplexMatrix complete_unitary(const PartialMatrix& p, double tol) {
  const Index dim = p.dim;
  if (dim <= 0) throw DimensionError("complete_unitary: dimension must be positive");

  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  std::vector<Index> filled;
  for (const auto& [index, column] : p.columns) {
    if (index < 0 || index >= dim) {
      throw DimensionError("complete_unitary: column index " + std::to_string(index) +
                           " outside 0.." + std::to_string(dim - 1));
    }
    if (column.size() != dim) {
      throw DimensionError("complete_unitary: column " + std::to_string(index) + " has length " +
                           std::to_string(column.size()) + ", expected " +
                           std::to_string(dim));
    }
    out.col(index) = column;
    filled.push_back(index);
  }

  for (std::size_t i = 0; i < filled.size(); ++i) {
    const Index a = filled[i];
    const double norm_error = std::abs(out.col(a).squaredNorm() - 1.0);
    if (norm_error > tol) {
      throw CompletionError("complete_unitary: column " + std::to_string(a) +
                                " is not normalised (|norm^2 - 1| = " +
                                std::to_string(norm_error) + ")",
                            a, a);
    }
    for (std::size_t j = i + 1; j < filled.size(); ++j) {
      const Index b = filled[j];
      const double overlap = std::abs(out.col(a).dot(out.col(b)));
      if (overlap > tol) {
        throw CompletionError("complete_unitary: columns " + std::to_string(a) + " and " +
                                  std::to_string(b) + " are not orthogonal (overlap " +
                                  std::to_string(overlap) + ")",
                              a, b);
      }
    }
  }

  const double skip_below = std::max(tol, kSeedFloor);
  Index next_seed = 0;
  for (Index target = 0; target < dim; ++target) {
    if (p.columns.count(target) != 0) continue;
    bool placed = false;
    while (next_seed < dim && !placed) {
      ComplexVector v = orthogonalize(ComplexVector::Unit(dim, next_seed), out, filled);
      ++next_seed;
      const double r = v.norm();
      if (r < skip_below) continue;
      out.col(target) = v / r;
      filled.push_back(target);
      placed = true;
    }
    if (!placed) {
      // Index-order seeds exhausted; take the best remaining basis direction.
      Index best = 0;
      double best_r = -1.0;
      ComplexVector best_v;
      for (Index s = 0; s < dim; ++s) {
        ComplexVector v = orthogonalize(ComplexVector::Unit(dim, s), out, filled);
        if (v.norm() > best_r) {
          best_r = v.norm();
          best = s;
          best_v = v;
        }
      }
      if (best_r < skip_below) {
        throw CompletionError("complete_unitary: no orthogonal direction left for column " +
                                  std::to_string(target),
                              target, best);
      }
      out.col(target) = best_v / best_r;
      filled.push_back(target);
    }
  }
  return out;
}

RealMatrix psd_principal_sqrt(const RealMatrix& m, double tol) {
  if (m.rows() != m.cols()) {
    throw DimensionError("psd_principal_sqrt: expected a square matrix");
  }
  if (m.size() == 0) return m;
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > tol) {
    throw NotPsdError("psd_principal_sqrt: matrix is not symmetric (max asymmetry " +
                      std::to_string(asym) + ")");
  }
  const RealMatrix sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw NotPsdError("psd_principal_sqrt: eigendecomposition failed");
  }
  Eigen::VectorXd values = solver.eigenvalues();
  for (Index i = 0; i < values.size(); ++i) {
    if (values(i) < -tol) {
      throw NotPsdError("psd_principal_sqrt: eigenvalue " + std::to_string(values(i)) +
                        " is below -tol");
    }
    values(i) = std::sqrt(std::max(values(i), 0.0));
  }
  const RealMatrix& vecs = solver.eigenvectors();
  const RealMatrix root = vecs * values.asDiagonal() * vecs.transpose();
  return 0.5 * (root + root.transpose());
}

bool is_row_stochastic(const RealMatrix& a, double tol) {
  if (!a.allFinite()) return false;
  if (a.size() > 0 && (a.minCoeff() < -tol || a.maxCoeff() > 1.0 + tol)) return false;
  for (Index r = 0; r < a.rows(); ++r) {
    if (std::abs(a.row(r).sum() - 1.0) > tol) return false;
  }
  return true;
}

double embedding_scale(Index n) { return std::sqrt(static_cast<double>(n)); }

StochasticEmbedding embed_stochastic(const RealMatrix& a) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw DimensionError("embed_stochastic: expected a non-empty square matrix");
  }
  if (!is_row_stochastic(a, kStructuralTol)) {
    throw ValidationError("embed_stochastic: matrix is not row-stochastic within 1e-10");
  }
  const Index n = a.rows();
  const double l = embedding_scale(n);

  // Rows of (A | B) must be orthogonal with common length l: B B^T = l^2 I - A A^T.
  // For row-stochastic A the spectral radius of A A^T is at most n, so this is PSD.
  const RealMatrix gram = l * l * RealMatrix::Identity(n, n) - a * a.transpose();
  const RealMatrix b = psd_principal_sqrt(gram, kReconstructionTol);

  RealMatrix top(n, 2 * n);
  top << a / l, b / l;

  PartialMatrix rows;
  rows.dim = 2 * n;
  for (Index r = 0; r < n; ++r) {
    rows.columns.emplace(r, top.row(r).transpose().cast<Complex>());
  }
  const ComplexMatrix completed = complete_unitary(rows, kStructuralTol);

  StochasticEmbedding out;
  out.unitary = completed.transpose();
  out.scale = l;
  return out;
}

}  // namespace qfa
