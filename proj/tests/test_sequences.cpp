#include <gtest/gtest.h>

#include <random>
#include <set>

#include "leafspec/io.hpp"
#include "leafspec/sequences.hpp"

using namespace leafspec;

namespace {

bool monotone(const std::vector<std::int64_t>& a, const MonotoneSubsequence& s) {
  for (std::size_t k = 1; k < s.indices.size(); ++k) {
    if (s.indices[k] <= s.indices[k - 1]) return false;
    const auto x = a[s.indices[k - 1]], y = a[s.indices[k]];
    if (s.direction == Direction::increasing ? y < x : y > x) return false;
  }
  return true;
}

// Longest monotone subsequence by O(n^2) dynamic programming.
std::size_t longest_monotone(const std::vector<std::int64_t>& a) {
  std::size_t best = 0;
  for (int dir = 0; dir < 2; ++dir) {
    std::vector<std::size_t> len(a.size(), 1);
    for (std::size_t j = 0; j < a.size(); ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        if (dir == 0 ? a[i] <= a[j] : a[i] >= a[j]) len[j] = std::max(len[j], len[i] + 1);
      }
      best = std::max(best, len[j]);
    }
  }
  return best;
}

// Largest shift set over both sides and all index sets.
std::size_t best_shift_set(const std::vector<std::int64_t>& a) {
  std::set<std::int64_t> plus, minus;
  for (std::size_t i = 0; i < a.size(); ++i) {
    plus.insert(a[i] + static_cast<std::int64_t>(i + 1));
    minus.insert(a[i] - static_cast<std::int64_t>(i + 1));
  }
  return std::max(plus.size(), minus.size());
}

void check_shift_set(const std::vector<std::int64_t>& a, std::int64_t m) {
  const auto r = shift_set(a, m);
  const auto n = static_cast<std::int64_t>(a.size());
  ASSERT_EQ(r.indices.size(), r.values.size());
  for (std::size_t k = 0; k < r.indices.size(); ++k) {
    const auto i = r.indices[k];
    ASSERT_GE(i, 1);
    ASSERT_LE(i, n);
    if (k > 0) {
      ASSERT_GT(i, r.indices[k - 1]);
    }
    const auto x = a[static_cast<std::size_t>(i - 1)];
    EXPECT_EQ(r.values[k], r.side == Side::plus ? x + i : x - i);
  }
  EXPECT_EQ(std::set<std::int64_t>(r.values.begin(), r.values.end()).size(), r.values.size());
  const std::int64_t expected =
      2 * m <= n ? ((n / (2 * m)) + 1) / 2 * ceil_sqrt(m) : ceil_sqrt(n);
  EXPECT_EQ(r.guarantee, expected);
  EXPECT_GE(static_cast<std::int64_t>(r.values.size()), r.guarantee);
}

}  // namespace

TEST(CeilSqrt, Values) {
  EXPECT_EQ(ceil_sqrt(0), 0);
  EXPECT_EQ(ceil_sqrt(1), 1);
  EXPECT_EQ(ceil_sqrt(2), 2);
  EXPECT_EQ(ceil_sqrt(4), 2);
  EXPECT_EQ(ceil_sqrt(5), 3);
  EXPECT_EQ(ceil_sqrt(10000), 100);
  EXPECT_EQ(ceil_sqrt(10001), 101);
}

TEST(ErdosSzekeres, Examples) {
  const std::vector<std::int64_t> inc{1, 2, 3};
  const auto r = erdos_szekeres(inc);
  EXPECT_EQ(r.direction, Direction::increasing);
  EXPECT_EQ(r.indices, (std::vector<std::size_t>{0, 1, 2}));
  const std::vector<std::int64_t> mixed{3, 1, 2};
  const auto s = erdos_szekeres(mixed);
  EXPECT_GE(s.indices.size(), 2u);
  EXPECT_TRUE(monotone(mixed, s));
  EXPECT_THROW(erdos_szekeres(std::vector<std::int64_t>{}), InputError);
}

TEST(ErdosSzekeres, OptimalAgainstQuadraticOracle) {
  std::mt19937_64 rng(47);
  for (int round = 0; round < 500; ++round) {
    std::vector<std::int64_t> a(1 + rng() % 30);
    for (auto& x : a) x = static_cast<std::int64_t>(rng() % 10);
    const auto r = erdos_szekeres(a);
    EXPECT_TRUE(monotone(a, r));
    EXPECT_EQ(r.indices.size(), longest_monotone(a));
    EXPECT_GE(static_cast<std::int64_t>(r.indices.size()), ceil_sqrt(static_cast<std::int64_t>(a.size())));
  }
}

TEST(ErdosSzekeres, LargePermutation) {
  std::mt19937_64 rng(53);
  std::vector<std::int64_t> a(10000);
  std::iota(a.begin(), a.end(), 0);
  std::shuffle(a.begin(), a.end(), rng);
  const auto r = erdos_szekeres(a);
  EXPECT_TRUE(monotone(a, r));
  EXPECT_GE(r.indices.size(), 100u);
}

TEST(ShiftSet, ConstantSequence) {
  const std::vector<std::int64_t> a(100, 5);
  const auto r = shift_set(a, 10);
  EXPECT_EQ(r.side, Side::plus);
  EXPECT_EQ(r.values.size(), r.indices.size());
  check_shift_set(a, 10);
}

TEST(ShiftSet, DecreasingBlocksPickMinus) {
  for (std::int64_t m = 2; m <= 5; ++m) {
    std::vector<std::int64_t> a;
    for (std::int64_t i = 1; i <= 4 * m; ++i) a.push_back(m - (i % m));
    const auto r = shift_set(a, m);
    check_shift_set(a, m);
    EXPECT_LE(r.values.size(), best_shift_set(a));
  }
  const std::vector<std::int64_t> strictly{4, 3, 2, 1, 0, 4, 3, 2, 1, 0};
  EXPECT_EQ(shift_set(strictly, 4).side, Side::minus);
}

TEST(ShiftSet, GuaranteeArithmetic) {
  EXPECT_EQ(shift_set_guarantee(64, 4), 8);
  EXPECT_EQ(shift_set_guarantee(10, 6), 4);
  EXPECT_EQ(shift_set_guarantee(12, 3), 2);
  std::mt19937_64 rng(59);
  std::vector<std::int64_t> a(64);
  for (auto& x : a) x = static_cast<std::int64_t>(rng() % 5);
  EXPECT_GE(shift_set(a, 4).values.size(), 8u);
}

TEST(ShiftSet, ExhaustiveSmall) {
  // Every sequence with n <= 6 over [0, m] for m <= 3, plus random ones up to
  // n = 12, m = 6; the result never beats the best possible shift set.
  for (std::int64_t m = 1; m <= 3; ++m) {
    for (std::int64_t n = 1; n <= 6; ++n) {
      std::vector<std::int64_t> a(static_cast<std::size_t>(n), 0);
      while (true) {
        check_shift_set(a, m);
        EXPECT_LE(shift_set(a, m).values.size(), best_shift_set(a));
        std::size_t k = 0;
        while (k < a.size() && a[k] == m) a[k++] = 0;
        if (k == a.size()) break;
        ++a[k];
      }
    }
  }
  std::mt19937_64 rng(61);
  for (int round = 0; round < 2000; ++round) {
    const auto m = 1 + static_cast<std::int64_t>(rng() % 6);
    std::vector<std::int64_t> a(1 + rng() % 12);
    for (auto& x : a) x = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(m + 1));
    check_shift_set(a, m);
    EXPECT_LE(shift_set(a, m).values.size(), best_shift_set(a));
  }
}

TEST(ShiftSet, RandomLarge) {
  std::mt19937_64 rng(67);
  for (int round = 0; round < 100; ++round) {
    const auto n = 1 + static_cast<std::int64_t>(rng() % 5000);
    const auto m = 1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(n));
    std::vector<std::int64_t> a(static_cast<std::size_t>(n));
    for (auto& x : a) x = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(m + 1));
    check_shift_set(a, m);
  }
}

TEST(ShiftSet, RejectsOutOfRange) {
  EXPECT_THROW(shift_set(std::vector<std::int64_t>{0, 5}, 4), InputError);
  EXPECT_THROW(shift_set(std::vector<std::int64_t>{-1}, 4), InputError);
  EXPECT_THROW(shift_set(std::vector<std::int64_t>{1}, 0), InputError);
  EXPECT_THROW(shift_set(std::vector<std::int64_t>{}, 3), InputError);
}

TEST(SequenceIo, RoundTripAndComments) {
  EXPECT_EQ(parse_sequence("# header\n3\n\n-1\n 7 \n"), (std::vector<std::int64_t>{3, -1, 7}));
  std::ostringstream out;
  write_sequence(out, {4, 0, 9});
  EXPECT_EQ(parse_sequence(out.str()), (std::vector<std::int64_t>{4, 0, 9}));
  EXPECT_THROW(parse_sequence("1 2\n"), InputError);
  EXPECT_THROW(parse_sequence("abc\n"), InputError);
}
