#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fv1d/errors.hpp"

namespace fv1d {

/// Square band matrix with kl subdiagonals and ku superdiagonals.
/// Columns are stored contiguously; entry (i, j) lives at band row
/// ku + i - j of column j.  Requested bandwidths wider than n - 1 are
/// clamped (the matrix is simply dense then).
class BandedMatrix {
 public:
  BandedMatrix(int n, int lower, int upper)
      : n_(n),
        kl_(std::min(lower, n - 1)),
        ku_(std::min(upper, n - 1)) {
    if (n < 1 || lower < 0 || upper < 0)
      throw std::invalid_argument("BandedMatrix: bad dimensions");
    a_.assign(static_cast<std::size_t>(kl_ + ku_ + 1) * n_, 0.0);
  }

  int size() const { return n_; }
  int lower() const { return kl_; }
  int upper() const { return ku_; }

  bool in_band(int i, int j) const {
    return i >= 0 && i < n_ && j >= 0 && j < n_ && j - i <= ku_ && i - j <= kl_;
  }

  double& at(int i, int j) {
    if (!in_band(i, j))
      throw std::logic_error("BandedMatrix: write outside the band at (" +
                             std::to_string(i) + ", " + std::to_string(j) + ")");
    return a_[static_cast<std::size_t>(j) * (kl_ + ku_ + 1) + (ku_ + i - j)];
  }

  double get(int i, int j) const {
    if (i < 0 || i >= n_ || j < 0 || j >= n_)
      throw std::logic_error("BandedMatrix: index out of range");
    if (j - i > ku_ || i - j > kl_) return 0.0;
    return a_[static_cast<std::size_t>(j) * (kl_ + ku_ + 1) + (ku_ + i - j)];
  }

  void multiply(std::span<const double> x, std::span<double> y) const {
    if (x.size() != static_cast<std::size_t>(n_) || y.size() != x.size())
      throw LengthMismatch("BandedMatrix::multiply: size mismatch");
    for (int i = 0; i < n_; ++i) {
      double s = 0.0;
      const int j0 = std::max(0, i - kl_), j1 = std::min(n_ - 1, i + ku_);
      for (int j = j0; j <= j1; ++j) s += get(i, j) * x[j];
      y[i] = s;
    }
  }

  double inf_norm() const {
    double norm = 0.0;
    for (int i = 0; i < n_; ++i) {
      double row = 0.0;
      const int j0 = std::max(0, i - kl_), j1 = std::min(n_ - 1, i + ku_);
      for (int j = j0; j <= j1; ++j) row += std::abs(get(i, j));
      norm = std::max(norm, row);
    }
    return norm;
  }

 private:
  int n_, kl_, ku_;
  std::vector<double> a_;
};

/// LU factorization of a band matrix with partial pivoting.  Row swaps
/// widen the upper band to ku + kl, so the factor carries kl extra
/// superdiagonals of fill.
class BandedLU {
 public:
  explicit BandedLU(const BandedMatrix& m)
      : n_(m.size()), kl_(m.lower()), kuf_(m.upper() + m.lower()), piv_(m.size()) {
    const int ld = kl_ + kuf_ + 1;
    lu_.assign(static_cast<std::size_t>(ld) * n_, 0.0);
    for (int j = 0; j < n_; ++j) {
      const int i0 = std::max(0, j - m.upper()), i1 = std::min(n_ - 1, j + kl_);
      for (int i = i0; i <= i1; ++i) ref(i, j) = m.get(i, j);
    }

    for (int j = 0; j < n_; ++j) {
      const int last_row = std::min(n_ - 1, j + kl_);
      const int last_col = std::min(n_ - 1, j + kuf_);
      int p = j;
      for (int i = j + 1; i <= last_row; ++i)
        if (std::abs(ref(i, j)) > std::abs(ref(p, j))) p = i;
      if (ref(p, j) == 0.0)
        throw SingularMatrix("BandedLU: zero pivot at column " + std::to_string(j));
      piv_[j] = p;
      if (p != j)
        for (int c = j; c <= last_col; ++c) std::swap(ref(j, c), ref(p, c));
      const double pivot = ref(j, j);
      for (int i = j + 1; i <= last_row; ++i) {
        const double mult = ref(i, j) / pivot;
        ref(i, j) = mult;
        for (int c = j + 1; c <= last_col; ++c) ref(i, c) -= mult * ref(j, c);
      }
    }
  }

  void solve_in_place(std::span<double> b) const {
    if (b.size() != static_cast<std::size_t>(n_))
      throw LengthMismatch("BandedLU::solve_in_place: size mismatch");
    for (int j = 0; j < n_; ++j) {
      if (piv_[j] != j) std::swap(b[j], b[piv_[j]]);
      const int last_row = std::min(n_ - 1, j + kl_);
      for (int i = j + 1; i <= last_row; ++i) b[i] -= ref(i, j) * b[j];
    }
    for (int j = n_ - 1; j >= 0; --j) {
      b[j] /= ref(j, j);
      const int first_row = std::max(0, j - kuf_);
      for (int i = first_row; i < j; ++i) b[i] -= ref(i, j) * b[j];
    }
  }

 private:
  double& ref(int i, int j) {
    return lu_[static_cast<std::size_t>(j) * (kl_ + kuf_ + 1) + (kuf_ + i - j)];
  }
  double ref(int i, int j) const {
    return lu_[static_cast<std::size_t>(j) * (kl_ + kuf_ + 1) + (kuf_ + i - j)];
  }

  int n_, kl_, kuf_;
  std::vector<double> lu_;
  std::vector<int> piv_;
};

/// Direct solve of A x = b with two iterative-refinement passes, which
/// bring the solution to working accuracy whenever the factorization is
/// usable at all.  The refined residual must satisfy
/// |b - A x| <= 1e-10 (|A| |x| + |b|) in the max norm, otherwise the
/// system is reported singular.
inline std::vector<double> solve_banded(const BandedMatrix& a,
                                        std::span<const double> b) {
  const int n = a.size();
  if (b.size() != static_cast<std::size_t>(n))
    throw LengthMismatch("solve_banded: right-hand side has wrong length");
  BandedLU lu(a);
  std::vector<double> x(b.begin(), b.end());
  lu.solve_in_place(x);

  std::vector<double> residual(n), correction(n);
  for (int pass = 0; pass < 2; ++pass) {
    a.multiply(x, residual);
    for (int i = 0; i < n; ++i) residual[i] = b[i] - residual[i];
    correction = residual;
    lu.solve_in_place(correction);
    for (int i = 0; i < n; ++i) x[i] += correction[i];
  }

  a.multiply(x, residual);
  double rnorm = 0.0, xnorm = 0.0, bnorm = 0.0;
  for (int i = 0; i < n; ++i) {
    rnorm = std::max(rnorm, std::abs(b[i] - residual[i]));
    xnorm = std::max(xnorm, std::abs(x[i]));
    bnorm = std::max(bnorm, std::abs(b[i]));
  }
  if (rnorm > 1e-10 * (a.inf_norm() * xnorm + bnorm))
    throw SingularMatrix("solve_banded: residual check failed");
  return x;
}

}  // namespace fv1d
