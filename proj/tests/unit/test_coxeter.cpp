#include <gtest/gtest.h>

#include <random>
#include <unordered_set>

#include "metamatrix/coxeter.hpp"

using namespace metamatrix;

namespace {

struct Spec {
  Family family;
  int rank;
  int m;
  const char *order;
};

const std::vector<Spec> &catalog() {
  static const std::vector<Spec> all = {
      {Family::A, 1, 0, "2"},         {Family::A, 2, 0, "6"},      {Family::A, 3, 0, "24"},
      {Family::A, 5, 0, "720"},       {Family::B, 1, 0, "2"},      {Family::B, 2, 0, "8"},
      {Family::B, 3, 0, "48"},        {Family::B, 4, 0, "384"},    {Family::B, 5, 0, "3840"},
      {Family::D, 4, 0, "192"},       {Family::D, 5, 0, "1920"},   {Family::I2, 2, 2, "4"},
      {Family::I2, 2, 3, "6"},        {Family::I2, 2, 4, "8"},     {Family::I2, 2, 5, "10"},
      {Family::I2, 2, 6, "12"},       {Family::H, 3, 0, "120"},    {Family::H, 4, 0, "14400"},
      {Family::F, 4, 0, "1152"},      {Family::E, 6, 0, "51840"},  {Family::E, 7, 0, "2903040"},
      {Family::E, 8, 0, "696729600"},
  };
  return all;
}

CoxeterSystem make(const Spec &s) { return build_system(s.family, s.rank, s.m); }

std::vector<GroupElement> all_elements(const CoxeterSystem &sys) {
  std::vector<GroupElement> out;
  enumerate_bfs(sys, [&](const GroupElement &w) { out.push_back(w); });
  return out;
}

// Small systems whose elements the tests below visit exhaustively.
std::vector<CoxeterSystem> small_systems() {
  std::vector<CoxeterSystem> out;
  for (const auto &s : catalog())
    if (ExactInt(s.order) <= 10'000)
      out.push_back(make(s));
  return out;
}

} // namespace

TEST(Family, Parse) {
  EXPECT_EQ(parse_family("e"), Family::E);
  EXPECT_EQ(parse_family("I2"), Family::I2);
  EXPECT_EQ(family_name(Family::H), "H");
  EXPECT_THROW(parse_family("G"), std::invalid_argument);
}

TEST(NodeSetTest, Basics) {
  const NodeSet s = NodeSet().with(0).with(3);
  EXPECT_EQ(s.size(), 2);
  EXPECT_TRUE(s.contains(3));
  EXPECT_FALSE(s.contains(1));
  EXPECT_EQ(s.without(0), NodeSet().with(3));
  EXPECT_TRUE(s.is_subset_of(NodeSet::all(4)));
  EXPECT_FALSE(NodeSet::all(5).is_subset_of(s));
  EXPECT_EQ(s.members(), (std::vector<int>{0, 3}));
}

TEST(BuildSystem, CatalogOrders) {
  for (const auto &s : catalog()) {
    const CoxeterSystem sys = make(s);
    EXPECT_EQ(sys.order(), ExactInt(s.order)) << sys.name();
    EXPECT_EQ(sys.rank(), s.rank);
  }
  for (int n = 1; n <= 8; ++n) {
    ExactInt expected = 1;
    for (int k = 1; k <= n; ++k)
      expected *= 2 * k;
    EXPECT_EQ(build_system(Family::B, n).order(), expected);
  }
}

TEST(BuildSystem, CoxeterMatrixShape) {
  for (const auto &s : catalog()) {
    const CoxeterSystem sys = make(s);
    for (int i = 0; i < sys.rank(); ++i) {
      EXPECT_EQ(sys.coxeter_entry(i, i), 1);
      EXPECT_EQ(sys.cartan(i, i), Golden(2));
      for (int j = 0; j < sys.rank(); ++j)
        if (i != j) {
          EXPECT_EQ(sys.coxeter_entry(i, j), sys.coxeter_entry(j, i));
          EXPECT_GE(sys.coxeter_entry(i, j), 2);
        }
    }
  }
}

TEST(BuildSystem, Examples) {
  const CoxeterSystem b2 = build_system(Family::B, 2);
  EXPECT_EQ(b2.coxeter_entry(0, 1), 4);
  EXPECT_EQ(b2.order(), 8);
  EXPECT_EQ(build_system(Family::H, 3).order(), 120);
  EXPECT_FALSE(build_system(Family::H, 3).crystallographic());
  EXPECT_EQ(build_system(Family::E, 6).order(), 51840);
  EXPECT_EQ(build_system(Family::E, 6).positive_root_count(), 36u);
  EXPECT_EQ(build_system(Family::H, 4).positive_root_count(), 60u);
}

TEST(BuildSystem, RejectsUnsupported) {
  for (auto [f, r, m] : std::vector<std::tuple<Family, int, int>>{
           {Family::E, 5, 0}, {Family::E, 9, 0}, {Family::F, 3, 0}, {Family::H, 2, 0},
           {Family::D, 2, 0}, {Family::I2, 2, 7}, {Family::I2, 3, 4}, {Family::A, 0, 0}}) {
    try {
      build_system(f, r, m);
      ADD_FAILURE() << "accepted " << family_name(f) << r;
    } catch (const std::invalid_argument &e) {
      EXPECT_NE(std::string(e.what()).find("supported types"), std::string::npos);
    }
  }
}

TEST(Generators, Relations) {
  for (const auto &s : catalog()) {
    const CoxeterSystem sys = make(s);
    const GroupElement e = GroupElement::identity(sys.rank());
    for (int i = 0; i < sys.rank(); ++i)
      for (int j = 0; j < sys.rank(); ++j) {
        std::vector<int> word;
        for (int k = 0; k < sys.coxeter_entry(i, j); ++k) {
          word.push_back(i);
          word.push_back(j);
        }
        ASSERT_EQ(element_from_word(sys, word), e) << sys.name() << " " << i << "," << j;
        // No smaller power is trivial.
        if (i != j)
          for (int k = 1; k < sys.coxeter_entry(i, j); ++k) {
            std::vector<int> shorter(word.begin(), word.begin() + 2 * k);
            ASSERT_NE(element_from_word(sys, shorter), e) << sys.name();
          }
      }
  }
}

TEST(Generators, ReflectionAction) {
  const CoxeterSystem sys = build_system(Family::B, 2);
  const GroupElement s0 = apply_generator(sys, GroupElement::identity(2), 0, Side::Right);
  EXPECT_EQ(s0(0, 0), Golden(-1));
  EXPECT_EQ(s0(1, 0), Golden(0));
  EXPECT_EQ(s0(0, 1), -sys.cartan(0, 1));
  EXPECT_EQ(s0(1, 1), Golden(1));
  EXPECT_EQ(apply_generator(sys, s0, 0, Side::Right), GroupElement::identity(2));
  EXPECT_EQ(apply_generator(sys, s0, 0, Side::Left), GroupElement::identity(2));
  EXPECT_THROW(apply_generator(sys, s0, 2, Side::Left), std::out_of_range);
  EXPECT_THROW(apply_generator(sys, s0, -1, Side::Right), std::out_of_range);
  const std::vector<int> word{0, 1, 0, 1, 0, 1, 0, 1};
  EXPECT_EQ(element_from_word(sys, word), GroupElement::identity(2));
}

TEST(Generators, LeftAndRightAgreeWithMultiply) {
  for (const auto &sys : small_systems()) {
    if (sys.order() > 2000)
      continue;
    std::vector<GroupElement> gens;
    for (int i = 0; i < sys.rank(); ++i)
      gens.push_back(apply_generator(sys, GroupElement::identity(sys.rank()), i, Side::Left));
    for (const auto &w : all_elements(sys))
      for (int i = 0; i < sys.rank(); ++i) {
        ASSERT_EQ(apply_generator(sys, w, i, Side::Left), multiply(gens[i], w));
        ASSERT_EQ(apply_generator(sys, w, i, Side::Right), multiply(w, gens[i]));
      }
  }
}

TEST(Descent, Examples) {
  const CoxeterSystem b2 = build_system(Family::B, 2);
  const auto e = GroupElement::identity(2);
  EXPECT_EQ(descent_profile(b2, e), (DescentProfile{NodeSet::all(2), NodeSet::all(2)}));
  const auto s1 = apply_generator(b2, e, 0, Side::Left);
  EXPECT_EQ(descent_profile(b2, s1), (DescentProfile{NodeSet().with(1), NodeSet().with(1)}));
  const std::vector<int> w0_word{0, 1, 0, 1};
  const auto w0 = element_from_word(b2, w0_word);
  EXPECT_EQ(descent_profile(b2, w0), (DescentProfile{NodeSet(), NodeSet()}));
}

TEST(Descent, MatchesLengthDefinition) {
  for (const auto &sys : small_systems()) {
    if (sys.order() > 2000)
      continue;
    for (const auto &w : all_elements(sys)) {
      const int l = length(sys, w);
      const DescentProfile p = descent_profile(sys, w);
      for (int i = 0; i < sys.rank(); ++i) {
        ASSERT_EQ(p.left_ascents.contains(i), length(sys, apply_generator(sys, w, i, Side::Left)) > l);
        ASSERT_EQ(p.right_ascents.contains(i),
                  length(sys, apply_generator(sys, w, i, Side::Right)) > l);
      }
    }
  }
}

TEST(Descent, InverseSwapsSides) {
  for (const auto &sys : small_systems())
    for (const auto &w : all_elements(sys)) {
      const DescentProfile p = descent_profile(sys, w);
      const DescentProfile q = descent_profile(sys, inverse(sys, w));
      ASSERT_EQ(p.left_ascents, q.right_ascents) << sys.name();
      ASSERT_EQ(p.right_ascents, q.left_ascents) << sys.name();
    }
}

TEST(Longest, Examples) {
  const CoxeterSystem b2 = build_system(Family::B, 2);
  const GroupElement w0 = longest_element(b2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      EXPECT_EQ(w0(i, j), Golden(i == j ? -1 : 0));
  const CoxeterSystem a1 = build_system(Family::A, 1);
  EXPECT_EQ(longest_element(a1), apply_generator(a1, GroupElement::identity(1), 0, Side::Left));
  const CoxeterSystem i23 = build_system(Family::I2, 2, 3);
  const std::vector<int> word{0, 1, 0};
  EXPECT_EQ(longest_element(i23), element_from_word(i23, word));
  EXPECT_EQ(length(build_system(Family::E, 8), longest_element(build_system(Family::E, 8))), 120);
  EXPECT_EQ(length(build_system(Family::H, 4), longest_element(build_system(Family::H, 4))), 60);
}

TEST(Longest, UniqueElementWithoutRightAscents) {
  for (const auto &sys : small_systems()) {
    int count = 0;
    for (const auto &w : all_elements(sys))
      if (descent_profile(sys, w).right_ascents.empty()) {
        ++count;
        EXPECT_EQ(w, longest_element(sys));
      }
    EXPECT_EQ(count, 1) << sys.name();
  }
}

TEST(Words, ReducedWordRoundTrip) {
  for (const auto &sys : small_systems()) {
    if (sys.order() > 2000)
      continue;
    for (const auto &w : all_elements(sys)) {
      const auto word = reduced_word(sys, w);
      ASSERT_EQ(static_cast<int>(word.size()), length(sys, w));
      ASSERT_EQ(element_from_word(sys, word), w);
      ASSERT_EQ(multiply(w, inverse(sys, w)), GroupElement::identity(sys.rank()));
    }
  }
}

TEST(Bfs, Counts) {
  EXPECT_EQ(enumerate_bfs(build_system(Family::F, 4), [](const GroupElement &) {}), 1152u);
  EXPECT_EQ(enumerate_bfs(build_system(Family::H, 4), [](const GroupElement &) {}), 14400u);
  EXPECT_EQ(enumerate_bfs(build_system(Family::B, 3), [](const GroupElement &) {}), 48u);
}

TEST(Bfs, VisitsDistinctRootMatrices) {
  for (const auto &sys : small_systems()) {
    std::unordered_set<GroupElement, GroupElementHash> seen;
    int previous_length = 0;
    enumerate_bfs(sys, [&](const GroupElement &w) {
      ASSERT_TRUE(w.columns_are_roots()) << sys.name();
      ASSERT_TRUE(seen.insert(w).second) << sys.name();
      const int l = length(sys, w);
      ASSERT_GE(l, previous_length);
      previous_length = l;
    });
    EXPECT_EQ(ExactInt(static_cast<unsigned long>(seen.size())), sys.order());
  }
}

TEST(Bfs, LimitAndParabolic) {
  const CoxeterSystem e6 = build_system(Family::E, 6);
  BfsOptions tight;
  tight.max_order = 1000;
  EXPECT_THROW(enumerate_bfs(e6, [](const GroupElement &) {}, tight), ResourceLimitError);

  BfsOptions parabolic;
  parabolic.generators = NodeSet().with(0).with(2).with(3); // A3 inside E6
  EXPECT_EQ(enumerate_bfs(e6, [](const GroupElement &) {}, parabolic), 24u);
}

TEST(Tower, TransversalsMultiplyToOrder) {
  for (const auto &s : catalog()) {
    const CoxeterSystem sys = make(s);
    const auto levels = coset_transversals(sys);
    ASSERT_EQ(static_cast<int>(levels.size()), sys.rank());
    ExactInt product = 1;
    for (const auto &t : levels) {
      product *= static_cast<unsigned long>(t.reps.size());
      ASSERT_EQ(t.reps.size(), t.inverses.size());
      for (std::size_t k = 0; k < t.reps.size(); ++k)
        ASSERT_EQ(multiply(t.reps[k], t.inverses[k]), GroupElement::identity(sys.rank()));
    }
    EXPECT_EQ(product, sys.order()) << sys.name();
  }
}

TEST(Tower, SameElementsAsBfs) {
  for (const auto &sys : small_systems()) {
    std::unordered_set<GroupElement, GroupElementHash> bfs;
    enumerate_bfs(sys, [&](const GroupElement &w) { bfs.insert(w); });
    std::unordered_set<GroupElement, GroupElementHash> tower;
    std::uint64_t visits = enumerate_tower(sys, [&](const GroupElement &w) {
      ASSERT_TRUE(bfs.count(w)) << sys.name();
      tower.insert(w);
    });
    EXPECT_EQ(visits, bfs.size());
    EXPECT_EQ(tower.size(), bfs.size()) << sys.name();
  }
}

TEST(Tower, ExceptionalCountsAndRootColumns) {
  for (auto [rank, expected] : {std::pair{6, 51840ull}, std::pair{7, 2903040ull}}) {
    const CoxeterSystem sys = build_system(Family::E, rank);
    std::mt19937_64 rng(static_cast<unsigned>(rank));
    std::bernoulli_distribution sample(10'000.0 / static_cast<double>(expected));
    std::uint64_t sampled = 0;
    const std::uint64_t visits = enumerate_tower(sys, [&](const GroupElement &w) {
      if (sample(rng)) {
        ++sampled;
        ASSERT_TRUE(w.columns_are_roots());
      }
    });
    EXPECT_EQ(visits, expected);
    EXPECT_GT(sampled, 5000u);
  }
}

TEST(Tower, NonCrystallographicRootColumns) {
  const CoxeterSystem h4 = build_system(Family::H, 4);
  std::uint64_t bad = 0;
  enumerate_tower(h4, [&](const GroupElement &w) { bad += !w.columns_are_roots(); });
  EXPECT_EQ(bad, 0u);
}
