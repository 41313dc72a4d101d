#pragma once

// Exact integer/rational scalars and dense matrices.
//
// ExactInt and ExactRational are GMP's mpz_class and mpq_class; every value
// of ExactRational produced by this module is canonical (lowest terms,
// positive denominator).

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace metamatrix {

using ExactInt = mpz_class;
using ExactRational = mpq_class;

/// Builds num/den in lowest terms. Throws std::domain_error when den == 0.
ExactRational make_rational(const ExactInt &num, const ExactInt &den = 1);

/// Parses "a" or "a/b" (decimal). Throws std::invalid_argument on bad input.
ExactRational parse_rational(const std::string &text);

std::string to_string(const ExactInt &value);
std::string to_string(const ExactRational &value);

/// Dense row-major matrix of exact rationals.
class ExactMatrix {
public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols);
  ExactMatrix(std::initializer_list<std::initializer_list<ExactRational>> rows);

  static ExactMatrix identity(std::size_t n);
  static ExactMatrix from_integers(std::size_t rows, std::size_t cols,
                                   std::span<const ExactInt> entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  ExactRational &operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  const ExactRational &operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  ExactMatrix transpose() const;
  ExactMatrix submatrix(std::span<const std::size_t> row_idx,
                        std::span<const std::size_t> col_idx) const;

  bool is_integral() const;
  bool is_symmetric() const;
  bool is_upper_triangular() const;
  bool is_lower_triangular() const;
  bool is_diagonal() const;

  friend ExactMatrix operator*(const ExactMatrix &a, const ExactMatrix &b);
  friend ExactMatrix operator+(const ExactMatrix &a, const ExactMatrix &b);
  friend bool operator==(const ExactMatrix &a, const ExactMatrix &b);

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<ExactRational> data_;
};

std::ostream &operator<<(std::ostream &os, const ExactMatrix &m);

/// Generalized binomial t(t-1)...(t-k+1)/k!, defined for every integer t.
/// Throws std::invalid_argument when k < 0.
ExactInt gen_binom(const ExactInt &t, long k);
ExactInt gen_binom(long t, long k);

/// Exact determinant. Rational input is scaled column-wise to integers first,
/// then reduced by fraction-free (Bareiss) elimination.
/// Throws std::invalid_argument for non-square input.
ExactRational bareiss_det(const ExactMatrix &a);

/// Fraction-free determinant of a row-major integer n x n matrix.
ExactInt bareiss_det_integer(std::vector<ExactInt> entries, std::size_t n);

/// (n+1) x (n+1), entry (i,j) = binom(i,j).
ExactMatrix pascal_matrix(std::size_t n);

/// (n+1) x (n+1), entry (i,j) = (i + 1/2)^j.
ExactMatrix vandermonde_half_nodes(std::size_t n);

/// Inverse of a lower-triangular matrix by forward substitution.
/// Throws std::invalid_argument if the input is not square lower-triangular
/// or has a zero on the diagonal.
ExactMatrix invert_lower_triangular(const ExactMatrix &lower);

/// T = P^-1 L (P^-1)^t with P the Pascal matrix of matching size, so that
/// L = P T P^t.
ExactMatrix conjugate_by_inverse_pascal(const ExactMatrix &l);

/// sum_{i=0}^{k} (-1)^i binom(n,i) binom(n+k-1-i, k-i) == 0, for n,k >= 1.
bool verify_alternating_identity(long n, long k);

/// sum_{i=0}^{k} (-1)^i i! binom(n,i) binom(k,i) prod_{j=0}^{n-1-i} (x+k+j)
///   == prod_{j=0}^{n-1} (x+j), for n >= k >= 1.
bool verify_root_identity(long n, long k, const ExactRational &x);

} // namespace metamatrix
