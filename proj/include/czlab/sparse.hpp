#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace czlab {

/// Compressed sparse row matrix with sorted column indices.
struct CsrMatrix {
  std::size_t rows = 0;
  std::vector<std::size_t> row_start;  // rows + 1 entries
  std::vector<std::size_t> col;
  std::vector<double> val;

  void multiply(std::span<const double> x, std::span<double> y) const;
  double diagonal(std::size_t i) const;
};

/// Zero-fill incomplete Cholesky factor L (lower triangle of A's pattern),
/// A ~ L L^T. Falls back to a diagonal shift if a pivot turns non-positive.
class IncompleteCholesky {
 public:
  explicit IncompleteCholesky(const CsrMatrix& a);

  /// z = (L L^T)^{-1} r.
  void apply(std::span<const double> r, std::span<double> z) const;
  double shift() const { return shift_; }

 private:
  bool factor(const CsrMatrix& a, double shift);

  std::size_t n_ = 0;
  std::vector<std::size_t> row_start_;  // strictly lower part, CSR
  std::vector<std::size_t> col_;
  std::vector<double> val_;
  std::vector<double> diag_;
  double shift_ = 0.0;
};

struct PcgResult {
  std::size_t iterations = 0;
  bool converged = false;
  /// Euclidean norm of the final residual.
  double residual_norm = 0.0;
  /// sqrt of the suffix sums of alpha_k rho_k: the A-norm distance from
  /// iterate k to the returned iterate. Non-increasing by construction.
  std::vector<double> energy_trace;
};

/// Preconditioned CG on an SPD matrix. Stops once ||r||_2 <= abs_tol.
/// Throws AssemblyError when a search direction has non-positive curvature.
PcgResult pcg(const CsrMatrix& a, const IncompleteCholesky& pre, std::span<const double> b,
              std::span<double> x, double abs_tol, std::size_t max_iterations);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

}  // namespace czlab
