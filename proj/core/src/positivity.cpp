#include "metamatrix/positivity.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

#include "metamatrix/coxeter.hpp"
#include "metamatrix/typeb.hpp"

namespace metamatrix {
namespace {

// Advances `idx` (strictly increasing, values < n) to the next combination
// in lexicographic order. Returns false after the last one.
bool next_combination(std::vector<std::size_t> &idx, std::size_t n) {
  const std::size_t k = idx.size();
  std::size_t i = k;
  while (i > 0) {
    --i;
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j)
        idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

void require_square(const ExactMatrix &a, const char *who) {
  if (!a.is_square())
    throw std::invalid_argument(std::string(who) + ": matrix is not square");
}

} // namespace

std::string_view tp_method_name(TpMethod m) {
  return m == TpMethod::AllMinors ? "all-minors" : "fekete";
}

ExactRational evaluate_minor(const ExactMatrix &a, std::span<const std::size_t> rows,
                             std::span<const std::size_t> cols) {
  if (rows.size() != cols.size())
    throw std::invalid_argument("evaluate_minor: index sets differ in size");
  const std::size_t k = rows.size();
  bool integral = true;
  for (std::size_t r : rows)
    for (std::size_t c : cols)
      integral = integral && a(r, c).get_den() == 1;
  if (!integral)
    return bareiss_det(a.submatrix(rows, cols));
  std::vector<ExactInt> entries;
  entries.reserve(k * k);
  for (std::size_t r : rows)
    for (std::size_t c : cols)
      entries.push_back(a(r, c).get_num());
  return ExactRational(bareiss_det_integer(std::move(entries), k));
}

TPCertificate all_minors_positive(const ExactMatrix &a, std::size_t max_size) {
  require_square(a, "all_minors_positive");
  const std::size_t n = a.rows();
  if (n > max_size)
    throw ResourceLimitError("all-minors check is limited to size " + std::to_string(max_size) +
                             " (got " + std::to_string(n) + "); use the Fekete check");
  TPCertificate cert;
  cert.method = TpMethod::AllMinors;
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::size_t> rows(k);
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    do {
      std::vector<std::size_t> cols(k);
      std::iota(cols.begin(), cols.end(), std::size_t{0});
      do {
        ++cert.minors_checked;
        ExactRational v = evaluate_minor(a, rows, cols);
        if (v <= 0) {
          cert.witness = MinorWitness{rows, cols, std::move(v)};
          return cert;
        }
      } while (next_combination(cols, n));
    } while (next_combination(rows, n));
  }
  cert.totally_positive = true;
  return cert;
}

TPCertificate fekete_check(const ExactMatrix &a) {
  require_square(a, "fekete_check");
  const std::size_t n = a.rows();
  TPCertificate cert;
  cert.method = TpMethod::Fekete;
  for (std::size_t k = 1; k <= n; ++k)
    for (std::size_t r0 = 0; r0 + k <= n; ++r0)
      for (std::size_t c0 = 0; c0 + k <= n; ++c0) {
        std::vector<std::size_t> rows(k);
        std::vector<std::size_t> cols(k);
        std::iota(rows.begin(), rows.end(), r0);
        std::iota(cols.begin(), cols.end(), c0);
        ++cert.minors_checked;
        ExactRational v = evaluate_minor(a, rows, cols);
        if (v <= 0) {
          cert.witness = MinorWitness{std::move(rows), std::move(cols), std::move(v)};
          return cert;
        }
      }
  cert.totally_positive = true;
  return cert;
}

GaussDecomposition gauss_decomposition_typeB(int n) {
  if (n < 1)
    throw std::invalid_argument("gauss_decomposition_typeB: need n >= 1");
  const auto size = static_cast<std::size_t>(n);
  const ExactMatrix l = L_matrix(n);
  const ExactMatrix v = vandermonde_half_nodes(size);
  const ExactMatrix p_inv = invert_lower_triangular(pascal_matrix(size));

  GaussDecomposition g;
  g.t = p_inv * l * p_inv.transpose();
  g.q = p_inv * v;
  g.q_upper_triangular = g.q.is_upper_triangular();
  if (!g.q_upper_triangular)
    throw std::logic_error("P^-1 V is not upper triangular for n = " + std::to_string(n));
  g.q_diagonal_positive = true;
  for (std::size_t i = 0; i <= size; ++i)
    g.q_diagonal_positive = g.q_diagonal_positive && g.q(i, i) > 0;

  // V^-1 L V^-t = Q^-1 T Q^-t; Q^-1 is the transpose of a lower inverse.
  const ExactMatrix q_inv = invert_lower_triangular(g.q.transpose()).transpose();
  g.d = q_inv * g.t * q_inv.transpose();
  g.d_diagonal_positive = g.d.is_diagonal();
  for (std::size_t i = 0; i <= size; ++i)
    g.d_diagonal_positive = g.d_diagonal_positive && g.d(i, i) > 0;
  g.reconstructs_t = g.q * g.d * g.q.transpose() == g.t;
  g.reconstructs_l = v * g.d * v.transpose() == l;

  if (!g.q_diagonal_positive || !g.d_diagonal_positive || !g.reconstructs_t || !g.reconstructs_l)
    throw std::logic_error("type-B Gauss decomposition fails for n = " + std::to_string(n));
  return g;
}

} // namespace metamatrix
