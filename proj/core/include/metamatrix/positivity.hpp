#pragma once

// Total-positivity certificates by exact minors.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "metamatrix/exact.hpp"

namespace metamatrix {

enum class TpMethod { AllMinors, Fekete };
std::string_view tp_method_name(TpMethod m);

struct MinorWitness {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  ExactRational value;
};

struct TPCertificate {
  bool totally_positive = false;
  TpMethod method = TpMethod::AllMinors;
  std::uint64_t minors_checked = 0;
  /// Present iff !totally_positive: the first nonpositive minor in
  /// (size, rows, cols) lexicographic order.
  std::optional<MinorWitness> witness;
};

ExactRational evaluate_minor(const ExactMatrix &a, std::span<const std::size_t> rows,
                             std::span<const std::size_t> cols);

inline constexpr std::size_t kAllMinorsMaxSize = 12;

/// Checks every square minor. Throws std::invalid_argument for a non-square
/// matrix and ResourceLimitError (see coxeter.hpp) above max_size.
TPCertificate all_minors_positive(const ExactMatrix &a, std::size_t max_size = kAllMinorsMaxSize);

/// Checks only minors on consecutive rows and consecutive columns, which
/// suffices for strict total positivity.
TPCertificate fekete_check(const ExactMatrix &a);

/// The type-B factorization T = Q D Q^t with Q = P^-1 V and T the signed
/// contingency table.
struct GaussDecomposition {
  ExactMatrix q;
  ExactMatrix d;
  ExactMatrix t;
  bool q_upper_triangular = false;
  bool q_diagonal_positive = false;
  bool d_diagonal_positive = false;
  bool reconstructs_t = false;
  bool reconstructs_l = false; ///< L == V D V^t
};

/// Throws std::logic_error if any structural property fails.
GaussDecomposition gauss_decomposition_typeB(int n);

} // namespace metamatrix
