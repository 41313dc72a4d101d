#pragma once

// Finite Coxeter systems realized on the simple-root basis over Z[phi].
//
// Nodes are 0-based: generator s_i acts by s_i(alpha_j) = alpha_j - c_ij alpha_i
// where c_ij are the (possibly non-symmetric) Cartan entries with
// c_ii = 2 and c_ij c_ji = 4 cos^2(pi / m_ij).

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "metamatrix/exact.hpp"
#include "metamatrix/golden.hpp"

namespace metamatrix {

enum class Family { A, B, D, I2, H, F, E };

std::string_view family_name(Family f);
/// Accepts "A", "B", "D", "I2", "H", "F", "E" (case-insensitive).
Family parse_family(std::string_view text);

/// Raised when a request exceeds a documented size limit (group order,
/// subset-pair count, matrix size).
class ResourceLimitError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A subset of the simple generators, as a bit mask over 0-based nodes.
class NodeSet {
public:
  constexpr NodeSet() = default;
  constexpr explicit NodeSet(std::uint32_t bits) : bits_(bits) {}

  static constexpr NodeSet all(int rank) {
    return NodeSet(rank >= 32 ? ~0u : ((1u << rank) - 1u));
  }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr bool contains(int node) const { return (bits_ >> node) & 1u; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr NodeSet with(int node) const { return NodeSet(bits_ | (1u << node)); }
  constexpr NodeSet without(int node) const { return NodeSet(bits_ & ~(1u << node)); }
  constexpr bool is_subset_of(NodeSet other) const { return (bits_ & ~other.bits_) == 0; }

  std::vector<int> members() const;

  friend constexpr bool operator==(NodeSet, NodeSet) = default;

private:
  std::uint32_t bits_ = 0;
};

class CoxeterSystem {
public:
  Family family() const { return family_; }
  int rank() const { return rank_; }
  /// The dihedral parameter m for I2(m); 0 for other families.
  int dihedral_order() const { return m_; }
  std::string name() const;

  int coxeter_entry(int i, int j) const { return coxeter_[index(i, j)]; }
  const Golden &cartan(int i, int j) const { return cartan_[index(i, j)]; }
  const ExactInt &order() const { return order_; }
  bool crystallographic() const { return crystallographic_; }

  /// Sum of all positive roots (= 2 rho) in simple-root coordinates. Its
  /// pairing with every simple coroot is exactly 2.
  std::span<const Golden> positive_root_sum() const { return rho2_; }
  std::size_t positive_root_count() const { return positive_roots_; }

  /// Parabolic chain: W_k is generated by chain()[0..k-1]; W_n = W.
  std::span<const int> chain() const { return chain_; }

private:
  friend CoxeterSystem build_system(Family, int, int);
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(rank_) +
           static_cast<std::size_t>(j);
  }

  Family family_ = Family::A;
  int rank_ = 0;
  int m_ = 0;
  std::vector<int> coxeter_;
  std::vector<Golden> cartan_;
  ExactInt order_ = 1;
  bool crystallographic_ = true;
  std::vector<Golden> rho2_;
  std::size_t positive_roots_ = 0;
  std::vector<int> chain_;
};

/// Supported: A_n (1..16), B_n (1..16), D_n (3..16), I2(m) for m in 2..6,
/// H3, H4, F4, E6, E7, E8. Anything else throws std::invalid_argument.
/// Dihedral groups with m > 6 have no realization here; their N-table is
/// available in closed form (see dihedral_ntable).
CoxeterSystem build_system(Family family, int rank, int m = 0);

/// Matrix of a group element: entry (i, j) is the alpha_i-coordinate of
/// w(alpha_j). Stored row-major.
class GroupElement {
public:
  GroupElement() = default;
  explicit GroupElement(int rank);
  static GroupElement identity(int rank);

  int rank() const { return rank_; }
  const Golden &operator()(int i, int j) const { return entries_[idx(i, j)]; }
  Golden &operator()(int i, int j) { return entries_[idx(i, j)]; }
  std::span<const Golden> entries() const { return entries_; }

  /// Every column has all coordinates of one sign and at least one nonzero.
  bool columns_are_roots() const;

  friend bool operator==(const GroupElement &, const GroupElement &) = default;

private:
  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(rank_) +
           static_cast<std::size_t>(j);
  }
  int rank_ = 0;
  std::vector<Golden> entries_;
};

struct GroupElementHash {
  std::size_t operator()(const GroupElement &w) const noexcept;
};

enum class Side { Left, Right };

/// s_i * w (Side::Left) or w * s_i (Side::Right).
GroupElement apply_generator(const CoxeterSystem &sys, const GroupElement &w, int i,
                             Side side);
GroupElement multiply(const GroupElement &a, const GroupElement &b);
/// s_{word[0]} s_{word[1]} ... s_{word[k-1]}.
GroupElement element_from_word(const CoxeterSystem &sys, std::span<const int> word);
std::vector<int> reduced_word(const CoxeterSystem &sys, const GroupElement &w);
GroupElement inverse(const CoxeterSystem &sys, const GroupElement &w);
int length(const CoxeterSystem &sys, const GroupElement &w);

/// Ascent sets in the sense l(s_i w) > l(w) (left) and l(w s_i) > l(w) (right).
struct DescentProfile {
  NodeSet left_ascents;
  NodeSet right_ascents;
  friend bool operator==(const DescentProfile &, const DescentProfile &) = default;
};

DescentProfile descent_profile(const CoxeterSystem &sys, const GroupElement &w);
GroupElement longest_element(const CoxeterSystem &sys);

using ElementVisitor = std::function<void(const GroupElement &)>;

struct BfsOptions {
  std::uint64_t max_order = 10'000'000;
  /// Restrict to the parabolic subgroup generated by these nodes; empty
  /// means all generators.
  NodeSet generators{};
};

/// Visits every element of W (or of the requested parabolic subgroup) once,
/// in order of increasing length. Deduplication is by exact matrix equality
/// within one length layer, so memory is bounded by the two largest layers.
/// Throws ResourceLimitError if the group order exceeds options.max_order.
std::uint64_t enumerate_bfs(const CoxeterSystem &sys, const ElementVisitor &visit,
                            const BfsOptions &options = {});

/// Minimal left coset representatives of W_k / W_{k-1} along the chain.
struct Transversal {
  int level = 0; ///< k: the representatives lie in W_k
  std::vector<GroupElement> reps;
  std::vector<GroupElement> inverses;
};

/// transversals[k-1] holds the level-k transversal, k = 1..n. The product
/// of their sizes equals |W| (checked; std::logic_error otherwise).
std::vector<Transversal> coset_transversals(const CoxeterSystem &sys);

/// Visits every element once as a product u_n u_{n-1} ... u_1 of coset
/// representatives; memory is bounded by the transversal sizes.
std::uint64_t enumerate_tower(const CoxeterSystem &sys, const ElementVisitor &visit);

} // namespace metamatrix
