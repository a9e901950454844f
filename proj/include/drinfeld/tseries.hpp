#pragma once

// Power series in t over K_{m,e}, truncated at t^T, with an optional linear
// lower bound on the valuations of all dropped coefficients. Exact
// polynomials and rational functions in t, and matrices of either.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "drinfeld/cinf.hpp"

namespace drinfeld {

/// v(c_i) >= offset + slope * i for every i >= T. An offset of kExact
/// means the series is a polynomial of degree < T.
struct TailBound {
  int64_t offset = 0;
  int64_t slope = 0;
  bool polynomial() const { return offset == kExact; }
  int64_t at(int64_t i) const { return polynomial() ? kExact : sat_add(offset, sat_mul(slope, i)); }
};

class TSeries {
 public:
  TSeries() = default;
  TSeries(std::vector<CInf> coeffs, std::optional<TailBound> tail = std::nullopt);

  static TSeries zero(FieldPtr f, size_t T);
  static TSeries constant(const CInf& c, size_t T);
  /// The variable t.
  static TSeries t(FieldPtr f, size_t T);

  const FieldPtr& field() const { return c_.front().field(); }
  size_t order() const { return c_.size(); }
  const std::vector<CInf>& coeffs() const { return c_; }
  const CInf& coeff(size_t i) const { return c_.at(i); }
  const std::optional<TailBound>& tail() const { return tail_; }
  void set_tail(std::optional<TailBound> tb) { tail_ = tb; }

  friend TSeries operator+(const TSeries& a, const TSeries& b);
  friend TSeries operator-(const TSeries& a, const TSeries& b);
  TSeries operator-() const;
  friend TSeries operator*(const TSeries& a, const TSeries& b);
  TSeries scaled(const CInf& c) const;
  /// Multiplication by t^k (the top k coefficients are dropped).
  TSeries shifted(size_t k) const;
  TSeries truncated_order(size_t T) const;
  /// Coefficientwise absolute truncation.
  TSeries truncated(int64_t prec) const;

  /// Coefficientwise Frobenius c_i -> c_i^(q^n); t is fixed.
  TSeries twist(int64_t n) const;

  /// 1/f for f with c_0 invertible.
  TSeries inverse() const;

  /// Smallest horizon over coefficients.
  int64_t horizon() const;
  bool is_zero_to_precision() const;

  std::string to_string() const;

 private:
  std::vector<CInf> c_;
  std::optional<TailBound> tail_;
};

/// Global linear bound v(c_i) >= offset + slope * i over known and dropped
/// coefficients for the given slope, if a tail bound exists.
std::optional<TailBound> global_bound(const TSeries& f, int64_t slope);

/// f(t0). Requires a tail bound making the dropped terms tend to zero at t0;
/// otherwise throws DivergentEvaluation.
CInf specialize_t(const TSeries& f, const CInf& t0);

/// Exact polynomial in t with K_{m,e} coefficients.
class TPoly {
 public:
  TPoly() = default;
  explicit TPoly(std::vector<CInf> coeffs);
  static TPoly constant(const CInf& c) { return TPoly({c}); }
  static TPoly t(FieldPtr f);

  const std::vector<CInf>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }

  friend TPoly operator+(const TPoly& a, const TPoly& b);
  friend TPoly operator-(const TPoly& a, const TPoly& b);
  TPoly operator-() const;
  friend TPoly operator*(const TPoly& a, const TPoly& b);
  TPoly twist(int64_t n) const;
  CInf eval(const CInf& t0) const;
  TSeries to_series(size_t T) const;
  bool is_zero_to_precision() const;
  std::string to_string() const;

 private:
  void trim();
  std::vector<CInf> c_;
};

/// num/den with den(0) a unit, so that it expands as a series in t.
struct RationalT {
  TPoly num;
  TPoly den;

  static RationalT from(const TPoly& p, const FieldPtr& f);
  RationalT twist(int64_t n) const { return {num.twist(n), den.twist(n)}; }
  TSeries to_series(size_t T) const;
  CInf eval(const CInf& t0) const;
  friend RationalT operator+(const RationalT& a, const RationalT& b);
  friend RationalT operator-(const RationalT& a, const RationalT& b);
  friend RationalT operator*(const RationalT& a, const RationalT& b);
  RationalT operator-() const { return {-num, den}; }
  bool equals_to_precision(const RationalT& b) const;
};

template <class E>
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols, std::vector<E> data)
      : rows_(rows), cols_(cols), d_(std::move(data)) {
    if (d_.size() != rows * cols) raise(ErrorKind::ShapeMismatch, "matrix data size");
  }
  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  const E& operator()(size_t i, size_t j) const { return d_.at(i * cols_ + j); }
  E& operator()(size_t i, size_t j) { return d_.at(i * cols_ + j); }
  const std::vector<E>& data() const { return d_; }

  Matrix transpose() const {
    std::vector<E> out;
    out.reserve(d_.size());
    for (size_t j = 0; j < cols_; ++j)
      for (size_t i = 0; i < rows_; ++i) out.push_back((*this)(i, j));
    return Matrix(cols_, rows_, std::move(out));
  }
  template <class F>
  Matrix map(F&& fn) const {
    std::vector<E> out;
    out.reserve(d_.size());
    for (const E& x : d_) out.push_back(fn(x));
    return Matrix(rows_, cols_, std::move(out));
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) raise(ErrorKind::ShapeMismatch, "matrix product shapes");
    std::vector<E> out;
    out.reserve(a.rows_ * b.cols_);
    for (size_t i = 0; i < a.rows_; ++i)
      for (size_t j = 0; j < b.cols_; ++j) {
        E acc = a(i, 0) * b(0, j);
        for (size_t k = 1; k < a.cols_; ++k) acc = acc + a(i, k) * b(k, j);
        out.push_back(std::move(acc));
      }
    return Matrix(a.rows_, b.cols_, std::move(out));
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) raise(ErrorKind::ShapeMismatch, "matrix difference");
    std::vector<E> out;
    for (size_t k = 0; k < a.d_.size(); ++k) out.push_back(a.d_[k] - b.d_[k]);
    return Matrix(a.rows_, a.cols_, std::move(out));
  }
  friend Matrix kronecker(const Matrix& a, const Matrix& b) {
    const size_t R = a.rows_ * b.rows_, C = a.cols_ * b.cols_;
    std::vector<E> out;
    out.reserve(R * C);
    for (size_t i = 0; i < R; ++i)
      for (size_t j = 0; j < C; ++j)
        out.push_back(a(i / b.rows_, j / b.cols_) * b(i % b.rows_, j % b.cols_));
    return Matrix(R, C, std::move(out));
  }
  /// Cofactor expansion along the first row.
  E det() const {
    if (rows_ != cols_ || rows_ == 0) raise(ErrorKind::ShapeMismatch, "determinant of a non-square matrix");
    if (rows_ == 1) return d_[0];
    if (rows_ == 2) return d_[0] * d_[3] - d_[1] * d_[2];
    std::optional<E> acc;
    for (size_t j = 0; j < cols_; ++j) {
      std::vector<E> minor;
      for (size_t i = 1; i < rows_; ++i)
        for (size_t k = 0; k < cols_; ++k)
          if (k != j) minor.push_back((*this)(i, k));
      E term = d_[j] * Matrix(rows_ - 1, cols_ - 1, std::move(minor)).det();
      if (!acc)
        acc = (j % 2 == 0) ? term : -term;
      else
        acc = (j % 2 == 0) ? *acc + term : *acc - term;
    }
    return *acc;
  }

 private:
  size_t rows_ = 0, cols_ = 0;
  std::vector<E> d_;
};

using TMatrix = Matrix<TSeries>;
using RMatrix = Matrix<RationalT>;
using CMatrix = Matrix<CInf>;

TMatrix twist(const TMatrix& m, int64_t n);
RMatrix twist(const RMatrix& m, int64_t n);
TMatrix to_series(const RMatrix& m, size_t T);
CMatrix specialize_t(const TMatrix& m, const CInf& t0);
CMatrix specialize_t(const RMatrix& m, const CInf& t0);
/// Smallest horizon over all entries.
int64_t horizon(const TMatrix& m);
int64_t horizon(const CMatrix& m);
TMatrix identity_series(FieldPtr f, size_t n, size_t T);
CMatrix identity(FieldPtr f, size_t n);

}  // namespace drinfeld
