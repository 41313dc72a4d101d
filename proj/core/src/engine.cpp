#include "metamatrix/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace metamatrix {

NTable::NTable(int rank)
    : rank_(rank), counts_((static_cast<std::size_t>(rank) + 1) * (static_cast<std::size_t>(rank) + 1), 0) {}

NTable::NTable(int rank, std::vector<ExactInt> counts) : rank_(rank), counts_(std::move(counts)) {
  if (counts_.size() != size() * size())
    throw std::invalid_argument("NTable: entry count does not match rank");
}

ExactInt NTable::total() const {
  ExactInt t = 0;
  for (const auto &c : counts_)
    t += c;
  return t;
}

bool NTable::is_transpose_symmetric() const {
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if ((*this)(i, j) != (*this)(j, i))
        return false;
  return true;
}

bool NTable::is_reversal_symmetric() const {
  const std::size_t n = size() - 1;
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = 0; j <= n; ++j)
      if ((*this)(i, j) != (*this)(n - i, n - j))
        return false;
  return true;
}

std::string_view provenance_name(Provenance p) {
  switch (p) {
  case Provenance::Formula: return "formula";
  case Provenance::Enumeration: return "enumerate";
  case Provenance::Oracle: return "oracle";
  }
  return "?";
}

Metamatrix::Metamatrix(int rank, std::vector<ExactInt> entries, Provenance provenance)
    : rank_(rank), entries_(std::move(entries)), provenance_(provenance) {
  if (entries_.size() != size() * size())
    throw std::invalid_argument("Metamatrix: entry count does not match rank");
}

ExactMatrix Metamatrix::to_exact_matrix() const {
  return ExactMatrix::from_integers(size(), size(), entries_);
}

bool Metamatrix::satisfies_invariants(const ExactInt &order) const {
  const std::size_t n = size() - 1;
  if ((*this)(0, 0) != order || (*this)(n, n) != 1)
    return false;
  for (std::size_t p = 0; p <= n; ++p)
    for (std::size_t q = 0; q <= n; ++q)
      if ((*this)(p, q) <= 0 || (*this)(p, q) != (*this)(q, p))
        return false;
  for (std::size_t q = 0; q <= n; ++q)
    if ((*this)(n, q) != gen_binom(static_cast<long>(n), static_cast<long>(q)))
      return false;
  return true;
}

namespace {

using Tally = std::vector<std::uint64_t>;

NTable tally_to_table(int rank, const Tally &tally) {
  std::vector<ExactInt> counts(tally.size());
  for (std::size_t k = 0; k < tally.size(); ++k) {
    // mpz_class has no uint64 constructor on every platform.
    mpz_import(counts[k].get_mpz_t(), 1, -1, sizeof(std::uint64_t), 0, 0, &tally[k]);
  }
  return NTable(rank, std::move(counts));
}

NTable accumulate_bfs(const CoxeterSystem &sys, const AccumulateOptions &options) {
  const auto size = static_cast<std::size_t>(sys.rank()) + 1;
  Tally tally(size * size, 0);
  BfsOptions bfs;
  bfs.max_order = std::max<std::uint64_t>(options.bfs_limit, 1);
  enumerate_bfs(
      sys,
      [&](const GroupElement &w) {
        const DescentProfile d = descent_profile(sys, w);
        ++tally[static_cast<std::size_t>(d.left_ascents.size()) * size +
                static_cast<std::size_t>(d.right_ascents.size())];
      },
      bfs);
  return tally_to_table(sys.rank(), tally);
}

// ---------------------------------------------------------------------------
// Coset-tower kernel.
//
// Every element factors uniquely as w = x v with x a minimal coset
// representative of W / W_K and v in the block W_K. With C the Cartan matrix
// and 2rho the positive-root sum,
//   i in L(w)  iff  (C x) (v 2rho) has positive i-th entry,
//   j in R(w)  iff  (C v^-1) (x^-1 2rho) has positive j-th entry,
// so each element costs two n x n matrix-vector products.

template <class S> struct ScalarOps;

template <> struct ScalarOps<Golden> {
  static Golden from(const Golden &g) { return g; }
  static bool positive(const Golden &g) { return g.sign() > 0; }
};

template <> struct ScalarOps<std::int32_t> {
  static std::int32_t from(const Golden &g) { return static_cast<std::int32_t>(g.rational_part()); }
  static bool positive(std::int32_t v) { return v > 0; }
};

template <> struct ScalarOps<std::int64_t> {
  static std::int64_t from(const Golden &g) { return g.rational_part(); }
  static bool positive(std::int64_t v) { return v > 0; }
};

struct TowerData {
  int rank = 0;
  // Block: v 2rho and C v^-1 for each v in W_K.
  std::vector<std::vector<Golden>> block_vrho;
  std::vector<GroupElement> block_cvinv;
  // Upper cosets, grouped by top-level representative.
  std::vector<std::vector<GroupElement>> upper_cx;
  std::vector<std::vector<std::vector<Golden>>> upper_z;
};

GroupElement cartan_times(const CoxeterSystem &sys, const GroupElement &m) {
  const int n = sys.rank();
  GroupElement out(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (sys.cartan(i, k).is_zero())
        continue;
      for (int j = 0; j < n; ++j)
        if (!m(k, j).is_zero())
          out(i, j) += sys.cartan(i, k) * m(k, j);
    }
  return out;
}

std::vector<Golden> times_rho2(const CoxeterSystem &sys, const GroupElement &m) {
  const int n = sys.rank();
  const auto rho2 = sys.positive_root_sum();
  std::vector<Golden> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!m(i, j).is_zero())
        out[static_cast<std::size_t>(i)] += m(i, j) * rho2[static_cast<std::size_t>(j)];
  return out;
}

// Products u_hi ... u_lo (and their inverses) over levels [lo, hi].
void expand_levels(const std::vector<Transversal> &levels, int hi, int lo,
                   const GroupElement &prefix, const GroupElement &prefix_inv,
                   std::vector<std::pair<GroupElement, GroupElement>> &out) {
  if (hi < lo) {
    out.emplace_back(prefix, prefix_inv);
    return;
  }
  const Transversal &t = levels[static_cast<std::size_t>(hi)];
  for (std::size_t r = 0; r < t.reps.size(); ++r)
    expand_levels(levels, hi - 1, lo, multiply(prefix, t.reps[r]),
                  multiply(t.inverses[r], prefix_inv), out);
}

TowerData prepare_tower(const CoxeterSystem &sys, const AccumulateOptions &options) {
  const int n = sys.rank();
  const auto levels = coset_transversals(sys);
  // Largest chain prefix whose subgroup fits in the block.
  int block_levels = 0;
  ExactInt block_order = 1;
  for (int k = 0; k < n; ++k) {
    const ExactInt next = block_order * static_cast<unsigned long>(levels[static_cast<std::size_t>(k)].reps.size());
    if (next > options.block_limit && k > 0)
      break;
    block_order = next;
    block_levels = k + 1;
  }
  TowerData data;
  data.rank = n;
  const GroupElement id = GroupElement::identity(n);

  std::vector<std::pair<GroupElement, GroupElement>> block;
  expand_levels(levels, block_levels - 1, 0, id, id, block);
  for (const auto &[v, vinv] : block) {
    data.block_vrho.push_back(times_rho2(sys, v));
    data.block_cvinv.push_back(cartan_times(sys, vinv));
  }

  if (block_levels == n) {
    data.upper_cx.push_back({cartan_times(sys, id)});
    data.upper_z.push_back({times_rho2(sys, id)});
    return data;
  }
  const Transversal &top = levels[static_cast<std::size_t>(n - 1)];
  for (std::size_t r = 0; r < top.reps.size(); ++r) {
    std::vector<std::pair<GroupElement, GroupElement>> upper;
    expand_levels(levels, n - 2, block_levels, top.reps[r], top.inverses[r], upper);
    std::vector<GroupElement> cx;
    std::vector<std::vector<Golden>> z;
    for (const auto &[x, xinv] : upper) {
      cx.push_back(cartan_times(sys, x));
      z.push_back(times_rho2(sys, xinv));
    }
    data.upper_cx.push_back(std::move(cx));
    data.upper_z.push_back(std::move(z));
  }
  return data;
}

template <class S> struct FlatTower {
  int n = 0;
  std::size_t block_size = 0;
  std::vector<S> vrho;  // block_size * n
  std::vector<S> cvinv; // block_size * n * n
  std::vector<std::vector<S>> cx; // per top coset: count * n * n
  std::vector<std::vector<S>> z;  // per top coset: count * n
};

template <class S> FlatTower<S> flatten(const TowerData &d) {
  FlatTower<S> f;
  f.n = d.rank;
  f.block_size = d.block_vrho.size();
  for (std::size_t b = 0; b < f.block_size; ++b) {
    for (const auto &g : d.block_vrho[b])
      f.vrho.push_back(ScalarOps<S>::from(g));
    for (const auto &g : d.block_cvinv[b].entries())
      f.cvinv.push_back(ScalarOps<S>::from(g));
  }
  for (std::size_t t = 0; t < d.upper_cx.size(); ++t) {
    std::vector<S> cx;
    std::vector<S> z;
    for (std::size_t x = 0; x < d.upper_cx[t].size(); ++x) {
      for (const auto &g : d.upper_cx[t][x].entries())
        cx.push_back(ScalarOps<S>::from(g));
      for (const auto &g : d.upper_z[t][x])
        z.push_back(ScalarOps<S>::from(g));
    }
    f.cx.push_back(std::move(cx));
    f.z.push_back(std::move(z));
  }
  return f;
}

// Processes all elements x v with x in top coset `t`.
template <class S, int N>
void kernel_task(const FlatTower<S> &f, std::size_t t, Tally &tally) {
  const int n = N > 0 ? N : f.n;
  const auto un = static_cast<std::size_t>(n);
  const std::size_t stride = un + 1;
  const std::size_t xcount = f.z[t].size() / un;
  std::vector<std::uint64_t> local(stride * stride, 0);
  for (std::size_t xi = 0; xi < xcount; ++xi) {
    const S *cx = f.cx[t].data() + xi * un * un;
    const S *z = f.z[t].data() + xi * un;
    for (std::size_t b = 0; b < f.block_size; ++b) {
      const S *vr = f.vrho.data() + b * un;
      const S *cv = f.cvinv.data() + b * un * un;
      unsigned left = 0;
      unsigned right = 0;
      for (std::size_t i = 0; i < un; ++i) {
        S a{};
        S c{};
        for (std::size_t k = 0; k < un; ++k) {
          a += cx[i * un + k] * vr[k];
          c += cv[i * un + k] * z[k];
        }
        left += ScalarOps<S>::positive(a) ? 1u : 0u;
        right += ScalarOps<S>::positive(c) ? 1u : 0u;
      }
      ++local[left * stride + right];
    }
  }
  for (std::size_t k = 0; k < local.size(); ++k)
    tally[k] += local[k];
}

template <class S, int N>
Tally run_tower(const FlatTower<S> &f, const AccumulateOptions &options) {
  const std::size_t stride = static_cast<std::size_t>(f.n) + 1;
  const std::size_t tasks = f.cx.size();
  const unsigned workers = std::max(1u, std::min<unsigned>(options.workers, static_cast<unsigned>(tasks)));
  std::vector<Tally> partial(workers, Tally(stride * stride, 0));
  std::atomic<std::size_t> next{0};
  std::mutex progress_mutex;
  std::size_t done = 0;
  auto work = [&](unsigned id) {
    for (std::size_t t = next++; t < tasks; t = next++) {
      kernel_task<S, N>(f, t, partial[id]);
      if (options.progress) {
        std::lock_guard lock(progress_mutex);
        options.progress(++done, tasks);
      }
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned id = 0; id < workers; ++id)
      pool.emplace_back(work, id);
    for (auto &th : pool)
      th.join();
  }
  Tally total(stride * stride, 0);
  for (const auto &p : partial)
    for (std::size_t k = 0; k < total.size(); ++k)
      total[k] += p[k];
  return total;
}

template <class S> Tally dispatch_rank(const FlatTower<S> &f, const AccumulateOptions &o) {
  switch (f.n) {
  case 2: return run_tower<S, 2>(f, o);
  case 3: return run_tower<S, 3>(f, o);
  case 4: return run_tower<S, 4>(f, o);
  case 5: return run_tower<S, 5>(f, o);
  case 6: return run_tower<S, 6>(f, o);
  case 7: return run_tower<S, 7>(f, o);
  case 8: return run_tower<S, 8>(f, o);
  default: return run_tower<S, 0>(f, o);
  }
}

// Largest |entry| over a set of Golden values (integer systems only).
std::int64_t max_abs(const std::vector<std::vector<Golden>> &vs) {
  std::int64_t m = 0;
  for (const auto &v : vs)
    for (const auto &g : v)
      m = std::max(m, (g.rational_part() < 0 ? -g.rational_part() : g.rational_part()));
  return m;
}

std::int64_t max_abs(const std::vector<GroupElement> &ms) {
  std::int64_t m = 0;
  for (const auto &e : ms)
    for (const auto &g : e.entries())
      m = std::max(m, (g.rational_part() < 0 ? -g.rational_part() : g.rational_part()));
  return m;
}

NTable accumulate_tower(const CoxeterSystem &sys, const AccumulateOptions &options) {
  const TowerData data = prepare_tower(sys, options);
  if (!sys.crystallographic())
    return tally_to_table(sys.rank(), dispatch_rank(flatten<Golden>(data), options));

  std::int64_t cx = 0;
  std::int64_t z = 0;
  for (const auto &group : data.upper_cx)
    cx = std::max(cx, max_abs(group));
  for (const auto &group : data.upper_z)
    z = std::max(z, max_abs(group));
  const std::int64_t vr = max_abs(data.block_vrho);
  const std::int64_t cv = max_abs(data.block_cvinv);
  const __int128 n = sys.rank();
  const __int128 bound = std::max(static_cast<__int128>(cx) * vr, static_cast<__int128>(cv) * z) * n;
  if (bound < std::numeric_limits<std::int32_t>::max())
    return tally_to_table(sys.rank(), dispatch_rank(flatten<std::int32_t>(data), options));
  if (bound < std::numeric_limits<std::int64_t>::max())
    return tally_to_table(sys.rank(), dispatch_rank(flatten<std::int64_t>(data), options));
  throw std::overflow_error("tower kernel entries exceed 64-bit range for " + sys.name());
}

} // namespace

NTable accumulate_ntable(const CoxeterSystem &sys, const AccumulateOptions &options) {
  switch (options.strategy) {
  case EnumerationStrategy::Bfs:
    return accumulate_bfs(sys, options);
  case EnumerationStrategy::Tower:
    return accumulate_tower(sys, options);
  case EnumerationStrategy::Auto:
    break;
  }
  if (sys.order() <= options.bfs_limit)
    return accumulate_bfs(sys, options);
  return accumulate_tower(sys, options);
}

NTable dihedral_ntable(int m) {
  if (m < 2)
    throw std::invalid_argument("dihedral_ntable: need m >= 2");
  NTable t(2);
  t(0, 0) = 1;
  t(1, 1) = 2 * m - 2;
  t(2, 2) = 1;
  return t;
}

Metamatrix metamatrix_from_ntable(const NTable &table) {
  const std::size_t size = table.size();
  std::vector<ExactInt> m(size * size, 0);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j) {
      const ExactInt &nij = table(i, j);
      if (nij == 0)
        continue;
      for (std::size_t p = 0; p <= i; ++p) {
        const ExactInt bp = gen_binom(static_cast<long>(i), static_cast<long>(p)) * nij;
        for (std::size_t q = 0; q <= j; ++q)
          m[p * size + q] += bp * gen_binom(static_cast<long>(j), static_cast<long>(q));
      }
    }
  return Metamatrix(table.rank(), std::move(m), Provenance::Enumeration);
}

// ---------------------------------------------------------------------------

DoubleCosetOracle::DoubleCosetOracle(const CoxeterSystem &sys, std::uint64_t max_order)
    : rank_(sys.rank()) {
  if (sys.order() > max_order)
    throw ResourceLimitError(sys.name() + " has order " + to_string(sys.order()) +
                             ", above the oracle limit of " + std::to_string(max_order));
  std::vector<GroupElement> elements;
  BfsOptions bfs;
  bfs.max_order = max_order;
  enumerate_bfs(sys, [&](const GroupElement &w) { elements.push_back(w); }, bfs);

  std::unordered_map<GroupElement, std::uint32_t, GroupElementHash> index;
  index.reserve(elements.size());
  for (std::size_t k = 0; k < elements.size(); ++k)
    index.emplace(elements[k], static_cast<std::uint32_t>(k));

  const auto n = static_cast<std::size_t>(rank_);
  left_mul_.assign(n, std::vector<std::uint32_t>(elements.size()));
  right_mul_.assign(n, std::vector<std::uint32_t>(elements.size()));
  left_ascents_.resize(elements.size());
  right_ascents_.resize(elements.size());
  for (std::size_t k = 0; k < elements.size(); ++k) {
    const DescentProfile d = descent_profile(sys, elements[k]);
    left_ascents_[k] = d.left_ascents.bits();
    right_ascents_[k] = d.right_ascents.bits();
    for (int i = 0; i < rank_; ++i) {
      left_mul_[static_cast<std::size_t>(i)][k] =
          index.at(apply_generator(sys, elements[k], i, Side::Left));
      right_mul_[static_cast<std::size_t>(i)][k] =
          index.at(apply_generator(sys, elements[k], i, Side::Right));
    }
  }
}

ExactInt DoubleCosetOracle::minimal_reps_count(NodeSet left, NodeSet right) const {
  std::uint64_t count = 0;
  for (std::size_t k = 0; k < left_ascents_.size(); ++k)
    if (left.is_subset_of(NodeSet(left_ascents_[k])) && right.is_subset_of(NodeSet(right_ascents_[k])))
      ++count;
  return ExactInt(static_cast<unsigned long>(count));
}

ExactInt DoubleCosetOracle::double_coset_count(NodeSet left, NodeSet right) const {
  const std::size_t size = left_ascents_.size();
  std::vector<std::uint32_t> parent(size);
  std::vector<std::uint32_t> weight(size, 1);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t i) {
    while (parent[i] != i)
      i = parent[i] = parent[parent[i]];
    return i;
  };
  std::size_t classes = size;
  auto unite = [&](std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b)
      return;
    if (weight[a] < weight[b])
      std::swap(a, b);
    parent[b] = a;
    weight[a] += weight[b];
    --classes;
  };
  for (int i : left.members())
    for (std::size_t k = 0; k < size; ++k)
      unite(static_cast<std::uint32_t>(k), left_mul_[static_cast<std::size_t>(i)][k]);
  for (int j : right.members())
    for (std::size_t k = 0; k < size; ++k)
      unite(static_cast<std::uint32_t>(k), right_mul_[static_cast<std::size_t>(j)][k]);
  return ExactInt(static_cast<unsigned long>(classes));
}

Metamatrix DoubleCosetOracle::metamatrix() const {
  if (rank_ > 8)
    throw ResourceLimitError("brute-force metamatrix needs 4^n subset pairs; rank " +
                             std::to_string(rank_) + " is above the limit of 8");
  const auto size = static_cast<std::size_t>(rank_) + 1;
  std::vector<ExactInt> m(size * size, 0);
  const std::uint32_t subsets = 1u << rank_;
  for (std::uint32_t a = 0; a < subsets; ++a)
    for (std::uint32_t b = 0; b < subsets; ++b) {
      const NodeSet left(a);
      const NodeSet right(b);
      m[static_cast<std::size_t>(left.size()) * size + static_cast<std::size_t>(right.size())] +=
          double_coset_count(left, right);
    }
  return Metamatrix(rank_, std::move(m), Provenance::Oracle);
}

ExactInt minimal_reps_count(const CoxeterSystem &sys, NodeSet left, NodeSet right) {
  return DoubleCosetOracle(sys, kOracleLimit).minimal_reps_count(left, right);
}

ExactInt double_coset_count(const CoxeterSystem &sys, NodeSet left, NodeSet right) {
  return DoubleCosetOracle(sys, kOracleLimit).double_coset_count(left, right);
}

Metamatrix metamatrix_bruteforce(const CoxeterSystem &sys) {
  if (sys.rank() > 8)
    throw ResourceLimitError("brute-force metamatrix is limited to rank <= 8");
  return DoubleCosetOracle(sys, kOracleLimit).metamatrix();
}

} // namespace metamatrix
