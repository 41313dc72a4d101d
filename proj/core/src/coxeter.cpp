#include "metamatrix/coxeter.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace metamatrix {
namespace {

struct GoldenVectorHash {
  std::size_t operator()(const std::vector<Golden> &v) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (const auto &g : v)
      h = (h ^ std::hash<Golden>{}(g)) * 0x100000001b3ull;
    return h;
  }
};

ExactInt factorial(int n) {
  ExactInt f = 1;
  for (int i = 2; i <= n; ++i)
    f *= i;
  return f;
}

// Pairing <v, alpha_i^vee> = sum_k c_ik v_k for v in root coordinates.
Golden coroot_pairing(const CoxeterSystem &sys, std::span<const Golden> v, int i) {
  Golden acc;
  for (int k = 0; k < sys.rank(); ++k)
    if (!v[static_cast<std::size_t>(k)].is_zero())
      acc += sys.cartan(i, k) * v[static_cast<std::size_t>(k)];
  return acc;
}

int column_sign(const GroupElement &w, int j) {
  for (int i = 0; i < w.rank(); ++i) {
    const int s = w(i, j).sign();
    if (s != 0)
      return s;
  }
  return 0;
}

// Sum of positive roots; also returns their count.
std::vector<Golden> positive_root_sum(const CoxeterSystem &sys, std::size_t &count) {
  const int n = sys.rank();
  std::unordered_set<std::vector<Golden>, GoldenVectorHash> seen;
  std::deque<std::vector<Golden>> queue;
  for (int i = 0; i < n; ++i) {
    std::vector<Golden> e(static_cast<std::size_t>(n));
    e[static_cast<std::size_t>(i)] = 1;
    seen.insert(e);
    queue.push_back(std::move(e));
  }
  std::vector<Golden> sum(static_cast<std::size_t>(n));
  while (!queue.empty()) {
    std::vector<Golden> beta = std::move(queue.front());
    queue.pop_front();
    for (int k = 0; k < n; ++k)
      sum[static_cast<std::size_t>(k)] += beta[static_cast<std::size_t>(k)];
    for (int i = 0; i < n; ++i) {
      const Golden c = coroot_pairing(sys, beta, i);
      if (c.is_zero())
        continue;
      std::vector<Golden> gamma = beta;
      gamma[static_cast<std::size_t>(i)] -= c;
      // s_i permutes the positive roots other than alpha_i.
      if (std::all_of(gamma.begin(), gamma.end(), [](const Golden &g) { return g.sign() >= 0; }) &&
          seen.insert(gamma).second)
        queue.push_back(std::move(gamma));
    }
  }
  count = seen.size();
  return sum;
}

} // namespace

std::string_view family_name(Family f) {
  switch (f) {
  case Family::A: return "A";
  case Family::B: return "B";
  case Family::D: return "D";
  case Family::I2: return "I2";
  case Family::H: return "H";
  case Family::F: return "F";
  case Family::E: return "E";
  }
  return "?";
}

Family parse_family(std::string_view text) {
  std::string up(text);
  for (auto &c : up)
    c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (Family f : {Family::A, Family::B, Family::D, Family::I2, Family::H, Family::F, Family::E})
    if (family_name(f) == up)
      return f;
  throw std::invalid_argument("unknown Coxeter family '" + std::string(text) +
                              "' (expected one of A, B, D, I2, H, F, E)");
}

std::vector<int> NodeSet::members() const {
  std::vector<int> out;
  for (std::uint32_t b = bits_; b; b &= b - 1)
    out.push_back(std::countr_zero(b));
  return out;
}

std::string CoxeterSystem::name() const {
  if (family_ == Family::I2)
    return "I2(" + std::to_string(m_) + ")";
  return std::string(family_name(family_)) + std::to_string(rank_);
}

CoxeterSystem build_system(Family family, int rank, int m) {
  static const char *const kSupported =
      "supported types: A1..A16, B1..B16, D3..D16, I2(m) for m = 2..6, H3, H4, F4, E6, E7, E8";
  auto reject = [&](const std::string &why) {
    throw std::invalid_argument(why + "; " + kSupported);
  };

  CoxeterSystem sys;
  sys.family_ = family;
  std::vector<std::pair<std::pair<int, int>, int>> edges; // (i, j) -> m_ij >= 3
  switch (family) {
  case Family::A:
  case Family::B:
    if (rank < 1 || rank > 16)
      reject("rank out of range for family " + std::string(family_name(family)));
    for (int i = 0; i + 1 < rank; ++i)
      edges.push_back({{i, i + 1}, 3});
    if (family == Family::B && rank >= 2)
      edges.back().second = 4;
    sys.order_ = family == Family::A ? factorial(rank + 1)
                                     : factorial(rank) * (ExactInt(1) << rank);
    break;
  case Family::D:
    if (rank < 3 || rank > 16)
      reject("rank out of range for family D");
    for (int i = 0; i + 2 < rank; ++i)
      edges.push_back({{i, i + 1}, 3});
    edges.push_back({{rank - 3, rank - 1}, 3});
    sys.order_ = factorial(rank) * (ExactInt(1) << (rank - 1));
    break;
  case Family::I2:
    if (rank != 2 && rank != 0)
      reject("I2(m) has rank 2");
    if (m < 2 || m > 6)
      reject("I2(" + std::to_string(m) + ") has no exact realization");
    rank = 2;
    sys.m_ = m;
    if (m > 2)
      edges.push_back({{0, 1}, m});
    sys.order_ = 2 * m;
    break;
  case Family::H:
    if (rank != 3 && rank != 4)
      reject("H" + std::to_string(rank) + " is not a finite Coxeter group");
    edges.push_back({{0, 1}, 5});
    for (int i = 1; i + 1 < rank; ++i)
      edges.push_back({{i, i + 1}, 3});
    sys.order_ = rank == 3 ? 120 : 14400;
    break;
  case Family::F:
    if (rank != 4)
      reject("F" + std::to_string(rank) + " is not a finite Coxeter group");
    edges = {{{0, 1}, 3}, {{1, 2}, 4}, {{2, 3}, 3}};
    sys.order_ = 1152;
    break;
  case Family::E:
    if (rank < 6 || rank > 8)
      reject("E" + std::to_string(rank) + " is not a finite Coxeter group");
    // Bourbaki labels 1..n shifted to 0..n-1: 1-3-4-5-...-n with 2 on 4.
    edges = {{{0, 2}, 3}, {{1, 3}, 3}};
    for (int i = 2; i + 1 < rank; ++i)
      edges.push_back({{i, i + 1}, 3});
    sys.order_ = rank == 6 ? ExactInt(51840) : rank == 7 ? ExactInt(2903040) : ExactInt(696729600);
    break;
  }

  sys.rank_ = rank;
  const auto n = static_cast<std::size_t>(rank);
  sys.coxeter_.assign(n * n, 2);
  sys.cartan_.assign(n * n, Golden(0));
  for (int i = 0; i < rank; ++i) {
    sys.coxeter_[sys.index(i, i)] = 1;
    sys.cartan_[sys.index(i, i)] = 2;
  }
  for (const auto &[ij, mij] : edges) {
    const auto [i, j] = ij;
    sys.coxeter_[sys.index(i, j)] = sys.coxeter_[sys.index(j, i)] = mij;
    Golden cij = -1;
    Golden cji = -1;
    switch (mij) {
    case 3: break;
    case 4: cji = -2; break;
    case 5: cij = cji = -Golden::phi(); break;
    case 6: cji = -3; break;
    default: break;
    }
    sys.cartan_[sys.index(i, j)] = cij;
    sys.cartan_[sys.index(j, i)] = cji;
    if (!cij.is_integer())
      sys.crystallographic_ = false;
  }
  sys.chain_.resize(n);
  for (int i = 0; i < rank; ++i)
    sys.chain_[static_cast<std::size_t>(i)] = i;
  sys.rho2_ = positive_root_sum(sys, sys.positive_roots_);
  return sys;
}

GroupElement::GroupElement(int rank)
    : rank_(rank), entries_(static_cast<std::size_t>(rank) * static_cast<std::size_t>(rank)) {}

GroupElement GroupElement::identity(int rank) {
  GroupElement e(rank);
  for (int i = 0; i < rank; ++i)
    e(i, i) = 1;
  return e;
}

bool GroupElement::columns_are_roots() const {
  for (int j = 0; j < rank_; ++j) {
    bool pos = false;
    bool neg = false;
    for (int i = 0; i < rank_; ++i) {
      const int s = (*this)(i, j).sign();
      pos |= s > 0;
      neg |= s < 0;
    }
    if (pos == neg)
      return false;
  }
  return true;
}

std::size_t GroupElementHash::operator()(const GroupElement &w) const noexcept {
  std::size_t h = 0xcbf29ce484222325ull;
  for (const auto &g : w.entries())
    h = (h ^ std::hash<Golden>{}(g)) * 0x100000001b3ull;
  return h;
}

GroupElement apply_generator(const CoxeterSystem &sys, const GroupElement &w, int i,
                             Side side) {
  const int n = sys.rank();
  if (i < 0 || i >= n)
    throw std::out_of_range("generator index " + std::to_string(i) + " out of range for " +
                            sys.name());
  if (w.rank() != n)
    throw std::invalid_argument("element rank does not match system");
  GroupElement r = w;
  if (side == Side::Left) {
    // s_i(v) = v - <v, alpha_i^vee> alpha_i for every column v.
    for (int j = 0; j < n; ++j) {
      Golden c;
      for (int k = 0; k < n; ++k)
        if (!w(k, j).is_zero())
          c += sys.cartan(i, k) * w(k, j);
      r(i, j) -= c;
    }
  } else {
    // (w s_i)(alpha_j) = w(alpha_j) - c_ij w(alpha_i).
    for (int j = 0; j < n; ++j) {
      const Golden &cij = sys.cartan(i, j);
      if (j == i || cij.is_zero())
        continue;
      for (int k = 0; k < n; ++k)
        r(k, j) -= cij * w(k, i);
    }
    for (int k = 0; k < n; ++k)
      r(k, i) = -w(k, i);
  }
  return r;
}

GroupElement multiply(const GroupElement &a, const GroupElement &b) {
  if (a.rank() != b.rank())
    throw std::invalid_argument("multiply: rank mismatch");
  const int n = a.rank();
  GroupElement p(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (a(i, k).is_zero())
        continue;
      for (int j = 0; j < n; ++j)
        if (!b(k, j).is_zero())
          p(i, j) += a(i, k) * b(k, j);
    }
  return p;
}

GroupElement element_from_word(const CoxeterSystem &sys, std::span<const int> word) {
  GroupElement w = GroupElement::identity(sys.rank());
  for (int i : word)
    w = apply_generator(sys, w, i, Side::Right);
  return w;
}

std::vector<int> reduced_word(const CoxeterSystem &sys, const GroupElement &w) {
  std::vector<int> rev;
  GroupElement x = w;
  for (;;) {
    int j = 0;
    while (j < sys.rank() && column_sign(x, j) > 0)
      ++j;
    if (j == sys.rank())
      break;
    x = apply_generator(sys, x, j, Side::Right);
    rev.push_back(j);
    if (rev.size() > sys.positive_root_count())
      throw std::logic_error("reduced_word: matrix is not a group element");
  }
  return {rev.rbegin(), rev.rend()};
}

GroupElement inverse(const CoxeterSystem &sys, const GroupElement &w) {
  std::vector<int> word = reduced_word(sys, w);
  std::reverse(word.begin(), word.end());
  return element_from_word(sys, word);
}

int length(const CoxeterSystem &sys, const GroupElement &w) {
  return static_cast<int>(reduced_word(sys, w).size());
}

DescentProfile descent_profile(const CoxeterSystem &sys, const GroupElement &w) {
  const int n = sys.rank();
  DescentProfile d;
  std::uint32_t right = 0;
  for (int j = 0; j < n; ++j)
    if (column_sign(w, j) > 0)
      right |= 1u << j;
  // i is a left ascent iff w^-1(alpha_i) > 0 iff <w(2 rho), alpha_i^vee> > 0.
  const auto rho2 = sys.positive_root_sum();
  std::vector<Golden> image(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      if (!w(k, j).is_zero())
        image[static_cast<std::size_t>(k)] += w(k, j) * rho2[static_cast<std::size_t>(j)];
  std::uint32_t left = 0;
  for (int i = 0; i < n; ++i)
    if (coroot_pairing(sys, image, i).sign() > 0)
      left |= 1u << i;
  d.left_ascents = NodeSet(left);
  d.right_ascents = NodeSet(right);
  return d;
}

GroupElement longest_element(const CoxeterSystem &sys) {
  GroupElement w = GroupElement::identity(sys.rank());
  for (;;) {
    int j = 0;
    while (j < sys.rank() && column_sign(w, j) < 0)
      ++j;
    if (j == sys.rank())
      return w;
    w = apply_generator(sys, w, j, Side::Right);
  }
}

std::uint64_t enumerate_bfs(const CoxeterSystem &sys, const ElementVisitor &visit,
                            const BfsOptions &options) {
  const NodeSet gens = options.generators.empty() ? NodeSet::all(sys.rank()) : options.generators;
  if (gens == NodeSet::all(sys.rank()) && sys.order() > options.max_order)
    throw ResourceLimitError(sys.name() + " has order " + to_string(sys.order()) +
                             ", above the breadth-first limit of " +
                             std::to_string(options.max_order) + "; use the coset tower");
  const std::vector<int> gen_list = gens.members();
  std::vector<GroupElement> layer{GroupElement::identity(sys.rank())};
  std::uint64_t count = 0;
  while (!layer.empty()) {
    std::vector<GroupElement> next;
    std::unordered_set<GroupElement, GroupElementHash> seen;
    for (const GroupElement &w : layer) {
      visit(w);
      if (++count > options.max_order)
        throw ResourceLimitError("parabolic subgroup exceeds the breadth-first limit");
      for (int i : gen_list) {
        if (column_sign(w, i) < 0)
          continue;
        GroupElement ws = apply_generator(sys, w, i, Side::Right);
        if (seen.insert(ws).second)
          next.push_back(std::move(ws));
      }
    }
    layer = std::move(next);
  }
  return count;
}

std::vector<Transversal> coset_transversals(const CoxeterSystem &sys) {
  const int n = sys.rank();
  const auto chain = sys.chain();
  std::vector<Transversal> out;
  ExactInt product = 1;
  for (int k = 1; k <= n; ++k) {
    const int fresh = chain[static_cast<std::size_t>(k - 1)];
    std::vector<int> gens(chain.begin(), chain.begin() + k);
    std::sort(gens.begin(), gens.end());

    // Orbit of the fundamental weight of `fresh` under W_k, in weight
    // coordinates; its stabilizer in W_k is exactly W_{k-1}.
    std::vector<Golden> start(static_cast<std::size_t>(n));
    start[static_cast<std::size_t>(fresh)] = 1;
    std::unordered_map<std::vector<Golden>, std::size_t, GoldenVectorHash> index;
    std::vector<std::vector<Golden>> points{start};
    Transversal t;
    t.level = k;
    t.reps.push_back(GroupElement::identity(n));
    t.inverses.push_back(GroupElement::identity(n));
    index.emplace(start, 0);
    for (std::size_t at = 0; at < points.size(); ++at) {
      for (int j : gens) {
        const Golden lj = points[at][static_cast<std::size_t>(j)];
        if (lj.sign() <= 0)
          continue;
        std::vector<Golden> next = points[at];
        for (int i = 0; i < n; ++i)
          if (!sys.cartan(i, j).is_zero())
            next[static_cast<std::size_t>(i)] -= lj * sys.cartan(i, j);
        if (!index.emplace(next, points.size()).second)
          continue;
        points.push_back(std::move(next));
        t.reps.push_back(apply_generator(sys, t.reps[at], j, Side::Left));
        t.inverses.push_back(apply_generator(sys, t.inverses[at], j, Side::Right));
      }
    }
    product *= static_cast<unsigned long>(t.reps.size());
    out.push_back(std::move(t));
  }
  if (product != sys.order())
    throw std::logic_error("coset tower of " + sys.name() + " has " + to_string(product) +
                           " elements, catalog order is " + to_string(sys.order()));
  return out;
}

namespace {

void tower_descend(const std::vector<Transversal> &levels, std::size_t level,
                   const GroupElement &prefix, const ElementVisitor &visit,
                   std::uint64_t &count) {
  for (const GroupElement &u : levels[level].reps) {
    GroupElement x = multiply(prefix, u);
    if (level == 0) {
      visit(x);
      ++count;
    } else {
      tower_descend(levels, level - 1, x, visit, count);
    }
  }
}

} // namespace

std::uint64_t enumerate_tower(const CoxeterSystem &sys, const ElementVisitor &visit) {
  const auto levels = coset_transversals(sys);
  std::uint64_t count = 0;
  if (levels.empty())
    return 0;
  tower_descend(levels, levels.size() - 1, GroupElement::identity(sys.rank()), visit, count);
  return count;
}

} // namespace metamatrix
