#pragma once

// Signed contingency matrices and the closed-form type-B metamatrix.

#include <cstddef>
#include <vector>

#include "metamatrix/coxeter.hpp"
#include "metamatrix/exact.hpp"

namespace metamatrix {

class Metamatrix;

/// A pair (plus, minus) of nonnegative integers; |a| = plus + minus.
struct SignedEntry {
  int plus = 0;
  int minus = 0;
  int magnitude() const { return plus + minus; }
  friend bool operator==(const SignedEntry &, const SignedEntry &) = default;
  friend auto operator<=>(const SignedEntry &, const SignedEntry &) = default;
};

/// A composition of n together with a flag for the short-root generator.
/// The length is parts.size() - lambda.
struct MarginCondition {
  std::vector<int> parts;
  int lambda = 0;

  int total() const;
  int length() const { return static_cast<int>(parts.size()) - lambda; }
  friend bool operator==(const MarginCondition &, const MarginCondition &) = default;
};

/// Rows = alpha.parts.size(), cols = beta.parts.size(). When lambda_row is
/// set, the last row has no minus parts; likewise lambda_col and the last
/// column.
struct SignedMatrix {
  int lambda_row = 0;
  int lambda_col = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<SignedEntry> entries;

  const SignedEntry &at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
  friend bool operator==(const SignedMatrix &, const SignedMatrix &) = default;
};

/// Subsets I of the B_n generators (node n-1 is the short-root generator
/// s_n) correspond to margin conditions of length n - |I|: i and i+1 share a
/// part iff s_i is in I, and lambda = [s_n in I].
MarginCondition subset_to_margin(NodeSet subset, int n);
NodeSet margin_to_subset(const MarginCondition &margin);

/// All margin conditions of n with the given length, in a fixed order.
std::vector<MarginCondition> margins_of_length(int n, int length);

/// Default cap for the exhaustive signed-matrix enumerators.
inline constexpr int kScmEnumerationCap = 5;

/// Every signed contingency matrix with the given margins, in lexicographic
/// order of the flattened (plus, minus) entries. Throws std::invalid_argument
/// if the margins have different totals and ResourceLimitError if n > cap.
std::vector<SignedMatrix> enumerate_scm(const MarginCondition &alpha, const MarginCondition &beta,
                                        int cap = kScmEnumerationCap);

/// Size of the set enumerate_scm would return, without materializing it.
ExactInt scm_size(const MarginCondition &alpha, const MarginCondition &beta,
                  int cap = kScmEnumerationCap);

/// |SCM_n(p, q)|: sum over all margin pairs of lengths (p, q).
ExactInt scm_count(int n, int p, int q, int cap = kScmEnumerationCap);

/// The same sum restricted to margin pairs with flags (lambda, mu).
ExactInt scm_case_count(int n, int p, int q, int lambda, int mu, int cap = kScmEnumerationCap);

/// sum_a binom(a + x - 1, a) binom(n - a + pq - 1, n - a).
ExactInt gscm_binomial_sum(int n, int p, int q, long x);

/// Closed-form size of the generalized signed contingency matrices with
/// flags (lambda, mu).
ExactInt gscm_piece_count(int n, int p, int q, int lambda, int mu);

/// (1/n!) prod_{i=1}^{n} (2pq + p + q + i).
ExactInt gscm_product_formula(int n, int p, int q);

/// |GSCM_n(p, q)| as the binomial sum, checked against the product formula.
/// A mismatch throws std::logic_error.
ExactInt gscm_count(int n, int p, int q);

/// (n+1) x (n+1) table of gscm_count.
ExactMatrix L_matrix(int n);

/// T = P^-1 L P^-t; T(p, q) = |SCM_n(p, q)|.
ExactMatrix scm_table(int n);

/// Metamatrix of W(B_n): M(p, q) = T(n - p, n - q).
Metamatrix metamatrix_typeB(int n);

/// Checks |GSCM^{lambda,mu}_n(p,q)| = sum_{i<=p, j<=q} binom(p,i) binom(q,j)
/// |SCM^{lambda,mu}_n(i,j)| for every 0 <= p, q <= n, with the left side from
/// the closed form and the right side from exhaustive enumeration.
bool verify_scm_gscm_transform(int n, int lambda, int mu, int cap = kScmEnumerationCap);

} // namespace metamatrix
