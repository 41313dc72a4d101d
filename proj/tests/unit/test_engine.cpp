#include <gtest/gtest.h>

#include "metamatrix/engine.hpp"
#include "metamatrix/typeb.hpp"

using namespace metamatrix;

namespace {

std::vector<CoxeterSystem> systems_up_to(const ExactInt &limit) {
  std::vector<CoxeterSystem> out;
  const std::vector<std::tuple<Family, int, int>> specs = {
      {Family::A, 1, 0}, {Family::A, 2, 0}, {Family::A, 3, 0}, {Family::A, 4, 0},
      {Family::A, 5, 0}, {Family::B, 1, 0}, {Family::B, 2, 0}, {Family::B, 3, 0},
      {Family::B, 4, 0}, {Family::B, 5, 0}, {Family::D, 4, 0}, {Family::D, 5, 0},
      {Family::I2, 2, 2}, {Family::I2, 2, 3}, {Family::I2, 2, 4}, {Family::I2, 2, 5},
      {Family::I2, 2, 6}, {Family::H, 3, 0}, {Family::H, 4, 0}, {Family::F, 4, 0},
      {Family::E, 6, 0}, {Family::A, 7, 0}, {Family::B, 6, 0}, {Family::D, 6, 0}};
  for (auto [f, r, m] : specs) {
    CoxeterSystem sys = build_system(f, r, m);
    if (sys.order() <= limit)
      out.push_back(std::move(sys));
  }
  return out;
}

NTable with_strategy(const CoxeterSystem &sys, EnumerationStrategy s, unsigned workers = 1) {
  AccumulateOptions o;
  o.strategy = s;
  o.workers = workers;
  return accumulate_ntable(sys, o);
}

} // namespace

TEST(NTableTest, Examples) {
  const NTable b2 = accumulate_ntable(build_system(Family::B, 2));
  EXPECT_EQ(b2, NTable(2, {1, 0, 0, 0, 6, 0, 0, 0, 1}));
  EXPECT_EQ(accumulate_ntable(build_system(Family::A, 1)), NTable(1, {1, 0, 0, 1}));
  EXPECT_EQ(accumulate_ntable(build_system(Family::H, 3)).total(), 120);
}

TEST(NTableTest, DihedralClosedForm) {
  EXPECT_EQ(dihedral_ntable(4), accumulate_ntable(build_system(Family::B, 2)));
  EXPECT_EQ(dihedral_ntable(3), accumulate_ntable(build_system(Family::A, 2)));
  EXPECT_EQ(dihedral_ntable(2)(1, 1), 2);
  for (int m = 2; m <= 6; ++m)
    EXPECT_EQ(dihedral_ntable(m), accumulate_ntable(build_system(Family::I2, 2, m))) << m;
  EXPECT_THROW(dihedral_ntable(1), std::invalid_argument);
}

TEST(NTableTest, DihedralMetamatrix) {
  for (int m = 2; m <= 40; ++m) {
    const Metamatrix mm = metamatrix_from_ntable(dihedral_ntable(m));
    EXPECT_EQ(mm.to_exact_matrix(),
              (ExactMatrix{{2 * m, 2 * m, 1}, {2 * m, 2 * m + 2, 2}, {1, 2, 1}}));
  }
}

TEST(NTableTest, SymmetriesAndCorners) {
  std::vector<CoxeterSystem> all = systems_up_to(100'000);
  all.push_back(build_system(Family::E, 7));
  for (const auto &sys : all) {
    const NTable t = accumulate_ntable(sys);
    const std::size_t n = static_cast<std::size_t>(sys.rank());
    EXPECT_EQ(t.total(), sys.order()) << sys.name();
    EXPECT_TRUE(t.is_transpose_symmetric()) << sys.name();
    EXPECT_TRUE(t.is_reversal_symmetric()) << sys.name();
    EXPECT_EQ(t(0, 0), 1);
    EXPECT_EQ(t(n, n), 1);
  }
}

TEST(NTableTest, BfsAndTowerAgree) {
  for (const auto &sys : systems_up_to(100'000))
    EXPECT_EQ(with_strategy(sys, EnumerationStrategy::Bfs),
              with_strategy(sys, EnumerationStrategy::Tower))
        << sys.name();
}

TEST(NTableTest, WorkerCountDoesNotChangeResult) {
  std::vector<CoxeterSystem> all = {build_system(Family::F, 4), build_system(Family::H, 4),
                                    build_system(Family::E, 6), build_system(Family::E, 7)};
  for (const auto &sys : all) {
    const NTable one = with_strategy(sys, EnumerationStrategy::Tower, 1);
    EXPECT_EQ(one, with_strategy(sys, EnumerationStrategy::Tower, 2)) << sys.name();
    EXPECT_EQ(one, with_strategy(sys, EnumerationStrategy::Tower, 8)) << sys.name();
  }
}

TEST(NTableTest, SmallBlockLimitStillExact) {
  const CoxeterSystem e6 = build_system(Family::E, 6);
  AccumulateOptions o;
  o.strategy = EnumerationStrategy::Tower;
  o.block_limit = 100;
  EXPECT_EQ(accumulate_ntable(e6, o), with_strategy(e6, EnumerationStrategy::Bfs));
}

TEST(NTableTest, ProgressReportsEveryTopCoset) {
  const CoxeterSystem e7 = build_system(Family::E, 7);
  AccumulateOptions o;
  o.strategy = EnumerationStrategy::Tower;
  o.workers = 2;
  std::size_t calls = 0, last = 0, total = 0;
  o.progress = [&](std::size_t done, std::size_t all) {
    ++calls;
    last = done;
    total = all;
  };
  accumulate_ntable(e7, o);
  EXPECT_GT(total, 0u);
  EXPECT_EQ(calls, total);
  EXPECT_EQ(last, total);
}

TEST(MetamatrixTest, GoldenEntries) {
  const Metamatrix f4 = metamatrix_from_ntable(accumulate_ntable(build_system(Family::F, 4)));
  EXPECT_EQ(f4(1, 1), 4800);
  const Metamatrix e6 = metamatrix_from_ntable(accumulate_ntable(build_system(Family::E, 6)));
  EXPECT_EQ(e6(2, 2), 658800);
  EXPECT_EQ(e6.provenance(), Provenance::Enumeration);
}

TEST(MetamatrixTest, InvariantsOfEveryEnumeratedTable) {
  for (const auto &sys : systems_up_to(100'000)) {
    const Metamatrix m = metamatrix_from_ntable(accumulate_ntable(sys));
    EXPECT_TRUE(m.satisfies_invariants(sys.order())) << sys.name();
  }
}

TEST(MetamatrixTest, InvariantCheckRejects) {
  Metamatrix bad(1, {2, 1, 2, 1}, Provenance::Oracle);
  EXPECT_FALSE(bad.satisfies_invariants(2));
  Metamatrix good(1, {2, 1, 1, 1}, Provenance::Oracle);
  EXPECT_TRUE(good.satisfies_invariants(2));
  EXPECT_FALSE(good.satisfies_invariants(3));
  EXPECT_THROW(Metamatrix(2, {1, 2, 3}, Provenance::Oracle), std::invalid_argument);
}

TEST(Oracle, TrivialSubsets) {
  for (const auto &sys : systems_up_to(10'000)) {
    const NodeSet all = NodeSet::all(sys.rank());
    EXPECT_EQ(minimal_reps_count(sys, NodeSet(), NodeSet()), sys.order());
    EXPECT_EQ(double_coset_count(sys, NodeSet(), NodeSet()), sys.order());
    EXPECT_EQ(minimal_reps_count(sys, all, all), 1);
    EXPECT_EQ(double_coset_count(sys, all, all), 1);
  }
}

TEST(Oracle, B2Singletons) {
  const CoxeterSystem b2 = build_system(Family::B, 2);
  ExactInt sum = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      sum += minimal_reps_count(b2, NodeSet().with(i), NodeSet().with(j));
  EXPECT_EQ(sum, 10);
}

TEST(Oracle, MinimalRepsEqualDoubleCosets) {
  for (const auto &sys : systems_up_to(10'000)) {
    const DoubleCosetOracle oracle(sys);
    const std::uint32_t subsets = 1u << sys.rank();
    for (std::uint32_t i = 0; i < subsets; ++i)
      for (std::uint32_t j = 0; j < subsets; ++j)
        ASSERT_EQ(oracle.minimal_reps_count(NodeSet(i), NodeSet(j)),
                  oracle.double_coset_count(NodeSet(i), NodeSet(j)))
            << sys.name() << " " << i << " " << j;
  }
}

TEST(Oracle, BurnsideCountForReflectionPairs) {
  // |<s> \ W / <t>| = (|W| + #{w : s w t = w}) / 4.
  for (auto [f, r] : {std::pair{Family::B, 3}, std::pair{Family::H, 3}, std::pair{Family::F, 4}}) {
    const CoxeterSystem sys = build_system(f, r);
    std::vector<GroupElement> elements;
    enumerate_bfs(sys, [&](const GroupElement &w) { elements.push_back(w); });
    const GroupElement e = GroupElement::identity(sys.rank());
    for (int i = 0; i < sys.rank(); ++i)
      for (int j = 0; j < sys.rank(); ++j) {
        const GroupElement s = apply_generator(sys, e, i, Side::Left);
        const GroupElement t = apply_generator(sys, e, j, Side::Left);
        long fixed = 0;
        for (const auto &w : elements)
          fixed += multiply(s, multiply(w, t)) == w;
        const ExactInt expected = (sys.order() + fixed) / 4;
        ASSERT_EQ(double_coset_count(sys, NodeSet().with(i), NodeSet().with(j)), expected)
            << sys.name() << " " << i << "," << j;
      }
  }
}

TEST(Oracle, ThreeWayAgreement) {
  for (const auto &sys : systems_up_to(10'000)) {
    const Metamatrix brute = metamatrix_bruteforce(sys);
    const Metamatrix from_n = metamatrix_from_ntable(accumulate_ntable(sys));
    EXPECT_TRUE(brute.same_entries(from_n)) << sys.name();
    EXPECT_EQ(brute.provenance(), Provenance::Oracle);
    if (sys.family() == Family::B && sys.rank() <= 4) {
      EXPECT_TRUE(metamatrix_typeB(sys.rank()).same_entries(brute)) << sys.name();
    }
  }
}

TEST(Oracle, Limits) {
  EXPECT_THROW(metamatrix_bruteforce(build_system(Family::E, 7)), ResourceLimitError);
  EXPECT_THROW(DoubleCosetOracle(build_system(Family::E, 6), 1000), ResourceLimitError);
  EXPECT_THROW(minimal_reps_count(build_system(Family::E, 8), NodeSet(), NodeSet()),
               ResourceLimitError);
}
