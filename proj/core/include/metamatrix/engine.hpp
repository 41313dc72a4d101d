#pragma once

// Two-sided Eulerian tables and metamatrices by enumeration, plus a
// double-coset oracle for small groups.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string_view>
#include <vector>

#include "metamatrix/coxeter.hpp"
#include "metamatrix/exact.hpp"

namespace metamatrix {

/// N(i, j) = #{w : |L(w)| = i, |R(w)| = j} with L, R the ascent sets.
class NTable {
public:
  NTable() = default;
  explicit NTable(int rank);
  NTable(int rank, std::vector<ExactInt> counts);

  int rank() const { return rank_; }
  std::size_t size() const { return static_cast<std::size_t>(rank_) + 1; }
  ExactInt &operator()(std::size_t i, std::size_t j) { return counts_[i * size() + j]; }
  const ExactInt &operator()(std::size_t i, std::size_t j) const { return counts_[i * size() + j]; }
  std::span<const ExactInt> counts() const { return counts_; }

  ExactInt total() const;
  bool is_transpose_symmetric() const; ///< N(i,j) == N(j,i)
  bool is_reversal_symmetric() const;  ///< N(i,j) == N(n-i,n-j)

  friend bool operator==(const NTable &, const NTable &) = default;

private:
  int rank_ = 0;
  std::vector<ExactInt> counts_;
};

enum class Provenance { Formula, Enumeration, Oracle };
std::string_view provenance_name(Provenance p);

class Metamatrix {
public:
  Metamatrix() = default;
  Metamatrix(int rank, std::vector<ExactInt> entries, Provenance provenance);

  int rank() const { return rank_; }
  std::size_t size() const { return static_cast<std::size_t>(rank_) + 1; }
  const ExactInt &operator()(std::size_t p, std::size_t q) const { return entries_[p * size() + q]; }
  std::span<const ExactInt> entries() const { return entries_; }
  Provenance provenance() const { return provenance_; }

  ExactMatrix to_exact_matrix() const;

  /// Symmetric, positive, last row binom(n, q), and (0,0) == order.
  bool satisfies_invariants(const ExactInt &order) const;

  /// Entrywise equality; provenance is ignored.
  bool same_entries(const Metamatrix &other) const {
    return rank_ == other.rank_ && entries_ == other.entries_;
  }

private:
  int rank_ = 0;
  std::vector<ExactInt> entries_;
  Provenance provenance_ = Provenance::Enumeration;
};

enum class EnumerationStrategy { Auto, Bfs, Tower };

struct AccumulateOptions {
  EnumerationStrategy strategy = EnumerationStrategy::Auto;
  /// Auto uses breadth-first enumeration up to this order, the tower above.
  std::uint64_t bfs_limit = 100'000;
  /// Largest parabolic subgroup materialized as the tower's inner block.
  std::uint64_t block_limit = 60'000;
  unsigned workers = 1;
  /// Called after each top-level coset finishes (tower strategy only) with
  /// (cosets done, cosets total). May be invoked from worker threads, but
  /// never concurrently.
  std::function<void(std::size_t, std::size_t)> progress;
};

/// Exact N-table. The result does not depend on strategy or worker count.
NTable accumulate_ntable(const CoxeterSystem &sys, const AccumulateOptions &options = {});

/// Closed form for I2(m): N(0,0) = N(2,2) = 1, N(1,1) = 2m - 2.
NTable dihedral_ntable(int m);

/// M(p, q) = sum_{i,j} binom(i, p) binom(j, q) N(i, j).
Metamatrix metamatrix_from_ntable(const NTable &table);

/// Union-find oracle over an indexed copy of W. Construction enumerates the
/// whole group, so it is limited to orders <= max_order.
class DoubleCosetOracle {
public:
  explicit DoubleCosetOracle(const CoxeterSystem &sys, std::uint64_t max_order = 100'000);

  std::size_t order() const { return left_ascents_.size(); }

  /// #{w : I subset of L(w), J subset of R(w)}.
  ExactInt minimal_reps_count(NodeSet left, NodeSet right) const;
  /// |W_I \ W / W_J| by merging w with s_i w (i in I) and w s_j (j in J).
  ExactInt double_coset_count(NodeSet left, NodeSet right) const;
  /// Sum of double_coset_count over all subset pairs of each size.
  Metamatrix metamatrix() const;

private:
  int rank_;
  std::vector<std::uint32_t> left_ascents_;
  std::vector<std::uint32_t> right_ascents_;
  // left_mul_[i][w] = index of s_i w; right_mul_[i][w] = index of w s_i.
  std::vector<std::vector<std::uint32_t>> left_mul_;
  std::vector<std::vector<std::uint32_t>> right_mul_;
};

inline constexpr std::uint64_t kOracleLimit = 100'000;

ExactInt minimal_reps_count(const CoxeterSystem &sys, NodeSet left, NodeSet right);
ExactInt double_coset_count(const CoxeterSystem &sys, NodeSet left, NodeSet right);
/// Throws ResourceLimitError for rank > 8 (4^n subset pairs) or order above
/// kOracleLimit.
Metamatrix metamatrix_bruteforce(const CoxeterSystem &sys);

} // namespace metamatrix
