#include "metamatrix/exact.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace metamatrix {

ExactRational make_rational(const ExactInt &num, const ExactInt &den) {
  if (den == 0)
    throw std::domain_error("rational with zero denominator");
  ExactRational r(num, den);
  r.canonicalize();
  return r;
}

ExactRational parse_rational(const std::string &text) {
  auto valid_int = [](const std::string &s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i >= s.size())
      return false;
    return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
  };
  auto strip_plus = [](std::string s) {
    if (!s.empty() && s[0] == '+')
      s.erase(0, 1);
    return s;
  };
  const auto slash = text.find('/');
  const std::string num = text.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den))
    throw std::invalid_argument("not an exact rational: '" + text + "'");
  ExactInt n(strip_plus(num), 10);
  ExactInt d(strip_plus(den), 10);
  if (d == 0)
    throw std::invalid_argument("zero denominator in '" + text + "'");
  return make_rational(n, d);
}

std::string to_string(const ExactInt &value) { return value.get_str(10); }

std::string to_string(const ExactRational &value) { return value.get_str(10); }

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, ExactRational(0)) {}

ExactMatrix::ExactMatrix(
    std::initializer_list<std::initializer_list<ExactRational>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto &row : rows) {
    if (row.size() != cols_)
      throw std::invalid_argument("ragged matrix literal");
    for (const auto &v : row) {
      ExactRational x = v;
      x.canonicalize();
      data_.push_back(std::move(x));
    }
  }
}

ExactMatrix ExactMatrix::identity(std::size_t n) {
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    m(i, i) = 1;
  return m;
}

ExactMatrix ExactMatrix::from_integers(std::size_t rows, std::size_t cols,
                                       std::span<const ExactInt> entries) {
  if (entries.size() != rows * cols)
    throw std::invalid_argument("entry count does not match shape");
  ExactMatrix m(rows, cols);
  for (std::size_t k = 0; k < entries.size(); ++k)
    m.data_[k] = ExactRational(entries[k]);
  return m;
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      t(c, r) = (*this)(r, c);
  return t;
}

ExactMatrix ExactMatrix::submatrix(std::span<const std::size_t> row_idx,
                                   std::span<const std::size_t> col_idx) const {
  ExactMatrix s(row_idx.size(), col_idx.size());
  for (std::size_t r = 0; r < row_idx.size(); ++r)
    for (std::size_t c = 0; c < col_idx.size(); ++c)
      s(r, c) = (*this)(row_idx[r], col_idx[c]);
  return s;
}

bool ExactMatrix::is_integral() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const ExactRational &x) { return x.get_den() == 1; });
}

bool ExactMatrix::is_symmetric() const {
  if (!is_square())
    return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = r + 1; c < cols_; ++c)
      if ((*this)(r, c) != (*this)(c, r))
        return false;
  return true;
}

bool ExactMatrix::is_upper_triangular() const {
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < std::min(r, cols_); ++c)
      if ((*this)(r, c) != 0)
        return false;
  return true;
}

bool ExactMatrix::is_lower_triangular() const {
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = r + 1; c < cols_; ++c)
      if ((*this)(r, c) != 0)
        return false;
  return true;
}

bool ExactMatrix::is_diagonal() const {
  return is_upper_triangular() && is_lower_triangular();
}

ExactMatrix operator*(const ExactMatrix &a, const ExactMatrix &b) {
  if (a.cols_ != b.rows_)
    throw std::invalid_argument("matrix product shape mismatch");
  ExactMatrix p(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const ExactRational &aik = a(i, k);
      if (aik == 0)
        continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        p(i, j) += aik * b(k, j);
    }
  return p;
}

ExactMatrix operator+(const ExactMatrix &a, const ExactMatrix &b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw std::invalid_argument("matrix sum shape mismatch");
  ExactMatrix s = a;
  for (std::size_t k = 0; k < s.data_.size(); ++k)
    s.data_[k] += b.data_[k];
  return s;
}

bool operator==(const ExactMatrix &a, const ExactMatrix &b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::ostream &operator<<(std::ostream &os, const ExactMatrix &m) {
  os << '[';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    os << (r ? ",[" : "[");
    for (std::size_t c = 0; c < m.cols(); ++c)
      os << (c ? "," : "") << to_string(m(r, c));
    os << ']';
  }
  return os << ']';
}

ExactInt gen_binom(const ExactInt &t, long k) {
  if (k < 0)
    throw std::invalid_argument("gen_binom: negative lower index");
  ExactInt num = 1;
  ExactInt den = 1;
  for (long i = 0; i < k; ++i) {
    num *= t - i;
    den *= i + 1;
  }
  ExactInt q;
  mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

ExactInt gen_binom(long t, long k) { return gen_binom(ExactInt(t), k); }

ExactInt bareiss_det_integer(std::vector<ExactInt> a, std::size_t n) {
  if (a.size() != n * n)
    throw std::invalid_argument("bareiss_det_integer: entry count mismatch");
  if (n == 0)
    return 1;
  auto at = [&](std::size_t r, std::size_t c) -> ExactInt & { return a[r * n + c]; };
  bool negate = false;
  ExactInt prev = 1;
  ExactInt t;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && at(p, k) == 0)
        ++p;
      if (p == n)
        return 0;
      for (std::size_t c = k; c < n; ++c)
        swap(at(k, c), at(p, c));
      negate = !negate;
    }
    const ExactInt &pivot = at(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        t = at(i, j) * pivot;
        t -= at(i, k) * at(k, j);
        mpz_divexact(at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = pivot;
  }
  ExactInt det = at(n - 1, n - 1);
  if (negate)
    det = -det;
  return det;
}

ExactRational bareiss_det(const ExactMatrix &a) {
  if (!a.is_square())
    throw std::invalid_argument("bareiss_det: matrix is not square");
  const std::size_t n = a.rows();
  std::vector<ExactInt> scaled(n * n);
  ExactInt scale = 1;
  for (std::size_t c = 0; c < n; ++c) {
    ExactInt l = 1;
    for (std::size_t r = 0; r < n; ++r)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(r, c).get_den_mpz_t());
    for (std::size_t r = 0; r < n; ++r) {
      ExactInt f;
      mpz_divexact(f.get_mpz_t(), l.get_mpz_t(), a(r, c).get_den_mpz_t());
      scaled[r * n + c] = a(r, c).get_num() * f;
    }
    scale *= l;
  }
  return make_rational(bareiss_det_integer(std::move(scaled), n), scale);
}

ExactMatrix pascal_matrix(std::size_t n) {
  ExactMatrix p(n + 1, n + 1);
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      p(i, j) = ExactRational(gen_binom(static_cast<long>(i), static_cast<long>(j)));
  return p;
}

ExactMatrix vandermonde_half_nodes(std::size_t n) {
  ExactMatrix v(n + 1, n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    const ExactRational node = make_rational(2 * static_cast<long>(i) + 1, 2);
    ExactRational power = 1;
    for (std::size_t j = 0; j <= n; ++j) {
      v(i, j) = power;
      power *= node;
    }
  }
  return v;
}

ExactMatrix invert_lower_triangular(const ExactMatrix &lower) {
  if (!lower.is_square() || !lower.is_lower_triangular())
    throw std::invalid_argument("invert_lower_triangular: not square lower-triangular");
  const std::size_t n = lower.rows();
  for (std::size_t i = 0; i < n; ++i)
    if (lower(i, i) == 0)
      throw std::invalid_argument("invert_lower_triangular: zero diagonal entry");
  ExactMatrix inv(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t i = c; i < n; ++i) {
      ExactRational acc = (i == c) ? 1 : 0;
      for (std::size_t k = c; k < i; ++k)
        acc -= lower(i, k) * inv(k, c);
      inv(i, c) = acc / lower(i, i);
    }
  }
  return inv;
}

ExactMatrix conjugate_by_inverse_pascal(const ExactMatrix &l) {
  if (!l.is_square() || l.rows() == 0)
    throw std::invalid_argument("conjugate_by_inverse_pascal: need a non-empty square matrix");
  const ExactMatrix p_inv = invert_lower_triangular(pascal_matrix(l.rows() - 1));
  return p_inv * l * p_inv.transpose();
}

bool verify_alternating_identity(long n, long k) {
  if (n < 1 || k < 1)
    throw std::invalid_argument("verify_alternating_identity: need n, k >= 1");
  ExactInt sum = 0;
  for (long i = 0; i <= k; ++i) {
    ExactInt term = gen_binom(n, i) * gen_binom(n + k - 1 - i, k - i);
    if (i % 2)
      sum -= term;
    else
      sum += term;
  }
  return sum == 0;
}

bool verify_root_identity(long n, long k, const ExactRational &x) {
  if (k < 1 || n < k)
    throw std::invalid_argument("verify_root_identity: need n >= k >= 1");
  auto rising = [&](const ExactRational &start, long count) {
    ExactRational p = 1;
    for (long j = 0; j < count; ++j)
      p *= start + j;
    return p;
  };
  ExactRational lhs = 0;
  ExactInt factorial = 1;
  for (long i = 0; i <= k; ++i) {
    if (i > 0)
      factorial *= i;
    ExactRational term = rising(x + k, n - i);
    term *= factorial * gen_binom(n, i) * gen_binom(k, i);
    if (i % 2)
      lhs -= term;
    else
      lhs += term;
  }
  return lhs == rising(x, n);
}

} // namespace metamatrix
