#include <gtest/gtest.h>

#include <random>

#include "../golden_tables.hpp"
#include "metamatrix/engine.hpp"
#include "metamatrix/positivity.hpp"
#include "metamatrix/typeb.hpp"

using namespace metamatrix;

namespace {

ExactMatrix from_table(const golden::Table &t) {
  ExactMatrix m(t.size(), t.size());
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j < t.size(); ++j)
      m(i, j) = ExactRational(ExactInt(t[i][j]));
  return m;
}

ExactMatrix random_matrix(std::mt19937_64 &rng, std::size_t n) {
  std::uniform_int_distribution<int> d(-5, 5);
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = d(rng);
  return m;
}

// Product of random lower and upper bidiagonal matrices with nonnegative
// entries and positive diagonal.
ExactMatrix bidiagonal_product(std::mt19937_64 &rng, std::size_t n) {
  std::uniform_int_distribution<int> off(0, 3);
  std::uniform_int_distribution<int> diag(1, 3);
  ExactMatrix acc = ExactMatrix::identity(n);
  for (int f = 0; f < 2 * static_cast<int>(n); ++f) {
    ExactMatrix b = ExactMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
      b(i, i) = diag(rng);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (f % 2)
        b(i + 1, i) = off(rng);
      else
        b(i, i + 1) = off(rng);
    }
    acc = acc * b;
  }
  return acc;
}

// Every minor by direct Bareiss on explicitly built submatrices.
bool all_minors_oracle(const ExactMatrix &a) {
  const std::size_t n = a.rows();
  for (std::uint32_t rs = 1; rs < (1u << n); ++rs)
    for (std::uint32_t cs = 1; cs < (1u << n); ++cs) {
      if (__builtin_popcount(rs) != __builtin_popcount(cs))
        continue;
      std::vector<std::size_t> r, c;
      for (std::size_t k = 0; k < n; ++k) {
        if (rs >> k & 1u)
          r.push_back(k);
        if (cs >> k & 1u)
          c.push_back(k);
      }
      if (bareiss_det(a.submatrix(r, c)) <= 0)
        return false;
    }
  return true;
}

void expect_witness_valid(const ExactMatrix &a, const TPCertificate &cert) {
  if (cert.totally_positive) {
    EXPECT_FALSE(cert.witness.has_value());
    return;
  }
  ASSERT_TRUE(cert.witness.has_value());
  EXPECT_LE(cert.witness->value, 0);
  EXPECT_EQ(bareiss_det(a.submatrix(cert.witness->rows, cert.witness->cols)), cert.witness->value);
}

} // namespace

TEST(AllMinors, Identity) {
  const auto cert = all_minors_positive(ExactMatrix::identity(2));
  EXPECT_FALSE(cert.totally_positive);
  ASSERT_TRUE(cert.witness);
  EXPECT_EQ(cert.witness->rows, (std::vector<std::size_t>{0}));
  EXPECT_EQ(cert.witness->cols, (std::vector<std::size_t>{1}));
  EXPECT_EQ(cert.witness->value, 0);
  EXPECT_EQ(cert.method, TpMethod::AllMinors);
}

TEST(AllMinors, SmallPositive) {
  const auto cert = all_minors_positive(ExactMatrix{{2, 1}, {1, 1}});
  EXPECT_TRUE(cert.totally_positive);
  EXPECT_EQ(cert.minors_checked, 5u);
}

TEST(AllMinors, ReferenceTables) {
  for (const auto *t : {&golden::kH3, &golden::kH4, &golden::kF4, &golden::kE6, &golden::kE7,
                        &golden::kE8}) {
    const ExactMatrix a = from_table(golden::corrected(*t));
    const auto cert = all_minors_positive(a);
    EXPECT_TRUE(cert.totally_positive);
    // sum_k binom(n,k)^2 = binom(2n,n) - 1 minors.
    EXPECT_EQ(ExactInt(static_cast<unsigned long>(cert.minors_checked)),
              gen_binom(2L * static_cast<long>(a.rows()), static_cast<long>(a.rows())) - 1);
  }
}

TEST(AllMinors, UncorrectedE6IsNotTotallyPositive) {
  const ExactMatrix printed = from_table(golden::kE6);
  const auto all = all_minors_positive(printed);
  EXPECT_FALSE(all.totally_positive);
  ASSERT_TRUE(all.witness);
  EXPECT_EQ(all.witness->rows, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(all.witness->cols, (std::vector<std::size_t>{1, 2}));
  // M(0,1) M(1,2) - M(0,2) M(1,1)
  const ExactInt expected = ExactInt(golden::kE6[0][1]) * ExactInt(golden::kE6[1][2]) -
                            ExactInt(golden::kE6[0][2]) * ExactInt(golden::kE6[1][1]);
  EXPECT_EQ(all.witness->value, ExactRational(expected));
  EXPECT_FALSE(fekete_check(printed).totally_positive);
}

TEST(AllMinors, Limits) {
  EXPECT_THROW(all_minors_positive(ExactMatrix::identity(13)), ResourceLimitError);
  EXPECT_THROW(all_minors_positive(ExactMatrix(2, 3)), std::invalid_argument);
  EXPECT_NO_THROW(all_minors_positive(ExactMatrix::identity(13), 13));
}

TEST(Fekete, Examples) {
  EXPECT_TRUE(fekete_check(from_table(golden::kE8)).totally_positive);
  const auto c = fekete_check(ExactMatrix{{1, 2}, {3, 4}});
  EXPECT_FALSE(c.totally_positive);
  ASSERT_TRUE(c.witness);
  EXPECT_EQ(c.witness->value, -2);
  EXPECT_EQ(c.method, TpMethod::Fekete);
  EXPECT_TRUE(fekete_check(from_table(golden::dihedral(5))).totally_positive);
  EXPECT_THROW(fekete_check(ExactMatrix(3, 2)), std::invalid_argument);
}

TEST(Fekete, ContiguousMinorCount) {
  // sum_k (n-k+1)^2 windows.
  const auto c = fekete_check(from_table(golden::kE8));
  EXPECT_EQ(c.minors_checked, 285u);
}

TEST(Agreement, AdversarialCorpus) {
  std::mt19937_64 rng(1729);
  std::vector<ExactMatrix> corpus;
  for (const auto *t : {&golden::kH3, &golden::kH4, &golden::kF4, &golden::kE6})
    corpus.push_back(from_table(golden::corrected(*t)));
  corpus.push_back(from_table(golden::kE6));
  for (int m = 2; m <= 7; ++m)
    corpus.push_back(from_table(golden::dihedral(m)));
  for (int k = 0; k < 100; ++k)
    corpus.push_back(random_matrix(rng, 1 + static_cast<std::size_t>(k % 7)));
  for (int k = 0; k < 100; ++k)
    corpus.push_back(bidiagonal_product(rng, 1 + static_cast<std::size_t>(k % 7)));

  int positive = 0;
  for (const auto &a : corpus) {
    const auto all = all_minors_positive(a);
    const auto fek = fekete_check(a);
    ASSERT_EQ(all.totally_positive, fek.totally_positive) << a;
    ASSERT_EQ(all.totally_positive, all_minors_oracle(a)) << a;
    expect_witness_valid(a, all);
    expect_witness_valid(a, fek);
    positive += all.totally_positive;
  }
  EXPECT_GT(positive, 10);
  EXPECT_LT(positive, static_cast<int>(corpus.size()));
}

TEST(Agreement, PerturbedReferenceTables) {
  std::mt19937_64 rng(31337);
  const std::vector<const golden::Table *> tables = {&golden::kH3, &golden::kH4, &golden::kF4,
                                                     &golden::kE6, &golden::kE7};
  for (int k = 0; k < 100; ++k) {
    ExactMatrix a =
        from_table(golden::corrected(*tables[static_cast<std::size_t>(k) % tables.size()]));
    std::uniform_int_distribution<std::size_t> idx(0, a.rows() - 1);
    const std::size_t i = idx(rng), j = idx(rng);
    a(i, j) = k % 2 ? a(i, j) * 3 : ExactRational(0);
    const auto all = all_minors_positive(a);
    const auto fek = fekete_check(a);
    ASSERT_EQ(all.totally_positive, fek.totally_positive);
    expect_witness_valid(a, all);
    expect_witness_valid(a, fek);
  }
}

TEST(Certificates, TypeBMetamatrices) {
  for (int n = 1; n <= 8; ++n) {
    const ExactMatrix m = metamatrix_typeB(n).to_exact_matrix();
    EXPECT_TRUE(all_minors_positive(m).totally_positive) << n;
    EXPECT_TRUE(fekete_check(m).totally_positive) << n;
  }
}

TEST(Gauss, SmallCases) {
  const GaussDecomposition g1 = gauss_decomposition_typeB(1);
  EXPECT_EQ(g1.q, (ExactMatrix{{1, make_rational(1, 2)}, {0, 1}}));
  EXPECT_EQ(g1.q * g1.d * g1.q.transpose(), (ExactMatrix{{1, 1}, {1, 2}}));
  const GaussDecomposition g2 = gauss_decomposition_typeB(2);
  EXPECT_EQ(g2.q * g2.d * g2.q.transpose(), (ExactMatrix{{1, 2, 1}, {2, 10, 8}, {1, 8, 8}}));
  EXPECT_THROW(gauss_decomposition_typeB(0), std::invalid_argument);
}

TEST(Gauss, UpToEight) {
  for (int n = 1; n <= 8; ++n) {
    const GaussDecomposition g = gauss_decomposition_typeB(n);
    EXPECT_TRUE(g.q_upper_triangular && g.q_diagonal_positive && g.d_diagonal_positive &&
                g.reconstructs_t && g.reconstructs_l);
    EXPECT_TRUE(g.d.is_diagonal());
    EXPECT_EQ(g.t, scm_table(n));
    // D from V directly: V^-1 L V^-t.
    const ExactMatrix v = vandermonde_half_nodes(static_cast<std::size_t>(n));
    EXPECT_EQ(v * g.d * v.transpose(), L_matrix(n));
    for (std::size_t i = 0; i <= static_cast<std::size_t>(n); ++i)
      EXPECT_GT(g.d(i, i), 0);
  }
}
