#include "metamatrix/typeb.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <string>

#include "metamatrix/engine.hpp"

namespace metamatrix {
namespace {

void check_cap(int n, int cap) {
  if (n > cap)
    throw ResourceLimitError("signed contingency enumeration is capped at n = " +
                             std::to_string(cap) + " (requested n = " + std::to_string(n) + ")");
}

void compositions(int n, int parts, std::vector<int> &prefix,
                  std::vector<std::vector<int>> &out) {
  if (parts == 0) {
    if (n == 0)
      out.push_back(prefix);
    return;
  }
  for (int first = 1; first <= n - (parts - 1); ++first) {
    prefix.push_back(first);
    compositions(n - first, parts - 1, prefix, out);
    prefix.pop_back();
  }
}

// Walks every nonnegative integer matrix with the given row/column sums,
// calling emit(magnitudes) for each.
void walk_magnitudes(const MarginCondition &alpha, const MarginCondition &beta,
                     const std::function<void(const std::vector<int> &)> &emit) {
  const std::size_t rows = alpha.parts.size();
  const std::size_t cols = beta.parts.size();
  std::vector<int> row_left(alpha.parts.begin(), alpha.parts.end());
  std::vector<int> col_left(beta.parts.begin(), beta.parts.end());
  std::vector<int> mags(rows * cols, 0);
  std::function<void(std::size_t)> fill = [&](std::size_t k) {
    if (k == rows * cols) {
      emit(mags);
      return;
    }
    const std::size_t r = k / cols;
    const std::size_t c = k % cols;
    int lo = 0;
    int hi = std::min(row_left[r], col_left[c]);
    if (c + 1 == cols)
      lo = row_left[r];
    if (r + 1 == rows)
      lo = std::max(lo, col_left[c]);
    if (r + 1 == rows && c + 1 == cols && row_left[r] != col_left[c])
      return;
    for (int t = lo; t <= hi; ++t) {
      mags[k] = t;
      row_left[r] -= t;
      col_left[c] -= t;
      fill(k + 1);
      row_left[r] += t;
      col_left[c] += t;
    }
    mags[k] = 0;
  };
  if (rows == 0 || cols == 0) {
    if (rows == 0 && cols == 0)
      emit(mags);
    return;
  }
  fill(0);
}

bool sign_restricted(const MarginCondition &alpha, const MarginCondition &beta, std::size_t r,
                     std::size_t c) {
  return (alpha.lambda == 1 && r + 1 == alpha.parts.size()) ||
         (beta.lambda == 1 && c + 1 == beta.parts.size());
}

void check_margins(const MarginCondition &alpha, const MarginCondition &beta, int cap) {
  if (alpha.total() != beta.total())
    throw std::invalid_argument("margin conditions have different totals");
  check_cap(alpha.total(), cap);
}

} // namespace

int MarginCondition::total() const {
  int s = 0;
  for (int p : parts)
    s += p;
  return s;
}

MarginCondition subset_to_margin(NodeSet subset, int n) {
  if (n < 1 || !subset.is_subset_of(NodeSet::all(n)))
    throw std::invalid_argument("subset_to_margin: subset is not inside the B_n generators");
  MarginCondition m;
  int current = 1;
  for (int i = 1; i < n; ++i) {
    if (subset.contains(i - 1)) {
      ++current;
    } else {
      m.parts.push_back(current);
      current = 1;
    }
  }
  m.parts.push_back(current);
  m.lambda = subset.contains(n - 1) ? 1 : 0;
  return m;
}

NodeSet margin_to_subset(const MarginCondition &margin) {
  const int n = margin.total();
  NodeSet s;
  int position = 0;
  for (int part : margin.parts) {
    for (int k = 1; k < part; ++k)
      s = s.with(position + k - 1);
    position += part;
  }
  if (margin.lambda == 1)
    s = s.with(n - 1);
  return s;
}

std::vector<MarginCondition> margins_of_length(int n, int length) {
  std::vector<MarginCondition> out;
  for (int lambda = 0; lambda <= 1; ++lambda) {
    const int parts = length + lambda;
    if (parts < 0)
      continue;
    std::vector<std::vector<int>> comps;
    std::vector<int> prefix;
    compositions(n, parts, prefix, comps);
    for (auto &c : comps)
      out.push_back(MarginCondition{std::move(c), lambda});
  }
  return out;
}

std::vector<SignedMatrix> enumerate_scm(const MarginCondition &alpha, const MarginCondition &beta,
                                        int cap) {
  check_margins(alpha, beta, cap);
  const std::size_t rows = alpha.parts.size();
  const std::size_t cols = beta.parts.size();
  std::vector<SignedMatrix> out;
  walk_magnitudes(alpha, beta, [&](const std::vector<int> &mags) {
    SignedMatrix m;
    m.lambda_row = alpha.lambda;
    m.lambda_col = beta.lambda;
    m.rows = rows;
    m.cols = cols;
    m.entries.assign(rows * cols, SignedEntry{});
    std::function<void(std::size_t)> split = [&](std::size_t k) {
      if (k == mags.size()) {
        out.push_back(m);
        return;
      }
      const int t = mags[k];
      if (sign_restricted(alpha, beta, k / cols, k % cols)) {
        m.entries[k] = {t, 0};
        split(k + 1);
        return;
      }
      for (int minus = 0; minus <= t; ++minus) {
        m.entries[k] = {t - minus, minus};
        split(k + 1);
      }
    };
    split(0);
  });
  std::sort(out.begin(), out.end(), [](const SignedMatrix &a, const SignedMatrix &b) {
    return a.entries < b.entries;
  });
  return out;
}

ExactInt scm_size(const MarginCondition &alpha, const MarginCondition &beta, int cap) {
  check_margins(alpha, beta, cap);
  const std::size_t cols = beta.parts.size();
  ExactInt total = 0;
  walk_magnitudes(alpha, beta, [&](const std::vector<int> &mags) {
    ExactInt ways = 1;
    for (std::size_t k = 0; k < mags.size(); ++k)
      if (!sign_restricted(alpha, beta, k / cols, k % cols))
        ways *= mags[k] + 1;
    total += ways;
  });
  return total;
}

ExactInt scm_case_count(int n, int p, int q, int lambda, int mu, int cap) {
  if (p < 0 || q < 0 || p > n || q > n)
    throw std::invalid_argument("scm_case_count: need 0 <= p, q <= n");
  check_cap(n, cap);
  ExactInt total = 0;
  for (const auto &alpha : margins_of_length(n, p)) {
    if (alpha.lambda != lambda)
      continue;
    for (const auto &beta : margins_of_length(n, q))
      if (beta.lambda == mu)
        total += scm_size(alpha, beta, cap);
  }
  return total;
}

ExactInt scm_count(int n, int p, int q, int cap) {
  ExactInt total = 0;
  for (int lambda = 0; lambda <= 1; ++lambda)
    for (int mu = 0; mu <= 1; ++mu)
      total += scm_case_count(n, p, q, lambda, mu, cap);
  return total;
}

ExactInt gscm_binomial_sum(int n, int p, int q, long x) {
  if (n < 0 || p < 0 || q < 0)
    throw std::invalid_argument("gscm_binomial_sum: negative argument");
  const long pq = static_cast<long>(p) * q;
  ExactInt sum = 0;
  for (long a = 0; a <= n; ++a)
    sum += gen_binom(a + x - 1, a) * gen_binom(n - a + pq - 1, n - a);
  return sum;
}

ExactInt gscm_piece_count(int n, int p, int q, int lambda, int mu) {
  if ((lambda != 0 && lambda != 1) || (mu != 0 && mu != 1))
    throw std::invalid_argument("gscm_piece_count: flags must be 0 or 1");
  const long pl = static_cast<long>(p);
  const long ql = static_cast<long>(q);
  auto sum = [&](long x) { return gscm_binomial_sum(n, p, q, x); };
  if (lambda == 0 && mu == 0)
    return sum(pl * ql);
  if (lambda == 1 && mu == 0)
    return sum((pl + 1) * ql) - sum(pl * ql);
  if (lambda == 0 && mu == 1)
    return sum(pl * (ql + 1)) - sum(pl * ql);
  return sum((pl + 1) * (ql + 1)) - sum(pl * (ql + 1)) - sum((pl + 1) * ql) + sum(pl * ql);
}

ExactInt gscm_product_formula(int n, int p, int q) {
  if (n < 0 || p < 0 || q < 0)
    throw std::invalid_argument("gscm_product_formula: negative argument");
  const long base = 2L * p * q + p + q;
  ExactInt num = 1;
  ExactInt den = 1;
  for (long i = 1; i <= n; ++i) {
    num *= base + i;
    den *= i;
  }
  ExactInt out;
  mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return out;
}

ExactInt gscm_count(int n, int p, int q) {
  const ExactInt by_sum =
      gscm_binomial_sum(n, p, q, (static_cast<long>(p) + 1) * (static_cast<long>(q) + 1));
  const ExactInt by_product = gscm_product_formula(n, p, q);
  if (by_sum != by_product)
    throw std::logic_error("GSCM count mismatch at (n,p,q) = (" + std::to_string(n) + "," +
                           std::to_string(p) + "," + std::to_string(q) + "): " +
                           to_string(by_sum) + " vs " + to_string(by_product));
  return by_sum;
}

ExactMatrix L_matrix(int n) {
  if (n < 1)
    throw std::invalid_argument("L_matrix: need n >= 1");
  const auto size = static_cast<std::size_t>(n) + 1;
  ExactMatrix l(size, size);
  for (int p = 0; p <= n; ++p)
    for (int q = 0; q <= n; ++q)
      l(static_cast<std::size_t>(p), static_cast<std::size_t>(q)) = ExactRational(gscm_count(n, p, q));
  return l;
}

ExactMatrix scm_table(int n) { return conjugate_by_inverse_pascal(L_matrix(n)); }

Metamatrix metamatrix_typeB(int n) {
  const ExactMatrix t = scm_table(n);
  if (!t.is_integral())
    throw std::logic_error("type-B SCM table is not integral");
  const auto size = static_cast<std::size_t>(n) + 1;
  std::vector<ExactInt> entries(size * size);
  for (std::size_t p = 0; p < size; ++p)
    for (std::size_t q = 0; q < size; ++q)
      entries[p * size + q] = t(size - 1 - p, size - 1 - q).get_num();
  return Metamatrix(n, std::move(entries), Provenance::Formula);
}

bool verify_scm_gscm_transform(int n, int lambda, int mu, int cap) {
  check_cap(n, cap);
  const auto size = static_cast<std::size_t>(n) + 1;
  std::vector<ExactInt> scm(size * size);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j)
      scm[static_cast<std::size_t>(i) * size + static_cast<std::size_t>(j)] =
          scm_case_count(n, i, j, lambda, mu, cap);
  for (int p = 0; p <= n; ++p)
    for (int q = 0; q <= n; ++q) {
      ExactInt rhs = 0;
      for (int i = 0; i <= p; ++i)
        for (int j = 0; j <= q; ++j)
          rhs += gen_binom(p, i) * gen_binom(q, j) *
                 scm[static_cast<std::size_t>(i) * size + static_cast<std::size_t>(j)];
      if (rhs != gscm_piece_count(n, p, q, lambda, mu))
        return false;
    }
  return true;
}

} // namespace metamatrix
