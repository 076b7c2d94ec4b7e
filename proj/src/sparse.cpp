#include "czlab/sparse.hpp"

#include <cmath>
#include <string>

#include "czlab/errors.hpp"

namespace czlab {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  for (std::size_t i = 0; i < rows; ++i) {
    double s = 0.0;
    for (std::size_t k = row_start[i]; k < row_start[i + 1]; ++k) s += val[k] * x[col[k]];
    y[i] = s;
  }
}

double CsrMatrix::diagonal(std::size_t i) const {
  for (std::size_t k = row_start[i]; k < row_start[i + 1]; ++k) {
    if (col[k] == i) return val[k];
  }
  return 0.0;
}

IncompleteCholesky::IncompleteCholesky(const CsrMatrix& a) : n_(a.rows) {
  double max_diag = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    const double d = a.diagonal(i);
    if (!(d > 0.0)) throw AssemblyError("non-positive diagonal in row " + std::to_string(i));
    max_diag = std::max(max_diag, d);
  }
  double shift = 0.0;
  while (!factor(a, shift)) {
    shift = shift == 0.0 ? 1e-3 * max_diag : 2.0 * shift;
  }
  shift_ = shift;
}

bool IncompleteCholesky::factor(const CsrMatrix& a, double shift) {
  row_start_.assign(n_ + 1, 0);
  col_.clear();
  val_.clear();
  diag_.assign(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    row_start_[i] = col_.size();
    double diag = 0.0;
    for (std::size_t k = a.row_start[i]; k < a.row_start[i + 1]; ++k) {
      const std::size_t j = a.col[k];
      if (j < i) {
        col_.push_back(j);
        val_.push_back(a.val[k]);
      } else if (j == i) {
        diag = a.val[k] + shift;
      }
    }
    const std::size_t begin = row_start_[i];
    const std::size_t end = col_.size();
    for (std::size_t p = begin; p < end; ++p) {
      const std::size_t j = col_[p];
      // subtract sum over common columns c < j of L_ic L_jc
      double s = val_[p];
      std::size_t q = row_start_[j];
      const std::size_t q_end = row_start_[j + 1];
      for (std::size_t r = begin; r < p; ++r) {
        while (q < q_end && col_[q] < col_[r]) ++q;
        if (q < q_end && col_[q] == col_[r]) s -= val_[r] * val_[q];
      }
      val_[p] = s / diag_[j];
      diag -= val_[p] * val_[p];
    }
    if (!(diag > 0.0)) return false;
    diag_[i] = std::sqrt(diag);
  }
  row_start_[n_] = col_.size();
  return true;
}

void IncompleteCholesky::apply(std::span<const double> r, std::span<double> z) const {
  // forward: L y = r
  for (std::size_t i = 0; i < n_; ++i) {
    double s = r[i];
    for (std::size_t p = row_start_[i]; p < row_start_[i + 1]; ++p) s -= val_[p] * z[col_[p]];
    z[i] = s / diag_[i];
  }
  // backward: L^T z = y, column-oriented sweep over the rows of L
  for (std::size_t i = n_; i-- > 0;) {
    z[i] /= diag_[i];
    for (std::size_t p = row_start_[i]; p < row_start_[i + 1]; ++p) z[col_[p]] -= val_[p] * z[i];
  }
}

PcgResult pcg(const CsrMatrix& a, const IncompleteCholesky& pre, std::span<const double> b,
              std::span<double> x, double abs_tol, std::size_t max_iterations) {
  const std::size_t n = a.rows;
  PcgResult result;
  std::vector<double> r(n), z(n), p(n), ap(n);
  a.multiply(x, ap);
  for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - ap[i];
  result.residual_norm = norm2(r);
  std::vector<double> steps;  // alpha_k rho_k
  if (result.residual_norm <= abs_tol) {
    result.converged = true;
    result.energy_trace = {0.0};
    return result;
  }
  pre.apply(r, z);
  p = z;
  double rho = dot(r, z);
  while (result.iterations < max_iterations) {
    a.multiply(p, ap);
    const double curvature = dot(p, ap);
    if (!(curvature > 0.0)) {
      throw AssemblyError("non-positive curvature in CG: system is not positive definite");
    }
    const double alpha = rho / curvature;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
    }
    steps.push_back(alpha * rho);
    ++result.iterations;
    result.residual_norm = norm2(r);
    if (result.residual_norm <= abs_tol) {
      result.converged = true;
      break;
    }
    pre.apply(r, z);
    const double rho_next = dot(r, z);
    const double beta = rho_next / rho;
    rho = rho_next;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  result.energy_trace.assign(steps.size() + 1, 0.0);
  double tail = 0.0;
  for (std::size_t k = steps.size(); k-- > 0;) {
    tail += steps[k];
    result.energy_trace[k] = std::sqrt(tail);
  }
  return result;
}

}  // namespace czlab
