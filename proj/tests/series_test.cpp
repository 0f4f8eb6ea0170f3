#include <gtest/gtest.h>

#include <sstream>

#include "oracles.hpp"
#include "qbij/errors.hpp"
#include "qbij/series.hpp"
#include "qbij/sets.hpp"

namespace {

using qbij::BigInt;
using qbij::ExponentForm;
using qbij::LastBase;
using qbij::MultisumSpec;
using qbij::NumeratorForm;
using qbij::TruncatedSeries;

std::vector<long long> small(const TruncatedSeries& s) {
  std::vector<long long> out;
  for (const auto& c : s.coeffs()) out.push_back(static_cast<long long>(c));
  return out;
}

std::vector<long long> small(const std::vector<std::int64_t>& v) {
  return std::vector<long long>(v.begin(), v.end());
}

TruncatedSeries from(int n, std::vector<long long> c) {
  std::vector<BigInt> b(c.begin(), c.end());
  b.resize(static_cast<std::size_t>(n) + 1);
  return TruncatedSeries(n, b);
}

std::string str128(__int128 v) {
  if (v == 0) return "0";
  std::string s;
  const bool neg = v < 0;
  if (neg) v = -v;
  while (v > 0) {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return neg ? "-" + s : s;
}

TEST(Pochhammer, Examples) {
  EXPECT_EQ(small(qbij::poch_inf(1, 1, 5)), (std::vector<long long>{1, -1, -1, 0, 0, 1}));
  EXPECT_EQ(qbij::poch_inf(7, 1, 5), TruncatedSeries::one(5));
  EXPECT_EQ(small(qbij::poch_inf(2, 5, 12)),
            (std::vector<long long>{1, 0, -1, 0, 0, 0, 0, -1, 0, 1, 0, 0, -1}));
  EXPECT_EQ(small(qbij::poch_finite(1, 1, 2, 5)), (std::vector<long long>{1, -1, -1, 1, 0, 0}));
  EXPECT_EQ(qbij::poch_finite(1, 1, 0, 9), TruncatedSeries::one(9));
  EXPECT_EQ(small(qbij::poch_finite(2, 2, 2, 8)),
            (std::vector<long long>{1, 0, -1, 0, -1, 0, 1, 0, 0}));
  EXPECT_THROW(qbij::poch_inf(0, 1, 5), qbij::PreconditionError);
  EXPECT_THROW(qbij::poch_finite(0, 1, 2, 5), qbij::PreconditionError);
  EXPECT_THROW(qbij::poch_inf(1, 0, 5), qbij::PreconditionError);
}

TEST(Pochhammer, MatchesPolynomialExpansion) {
  for (int offset = 1; offset <= 4; ++offset) {
    for (int modulus = 1; modulus <= 5; ++modulus) {
      std::vector<int> exps;
      for (int e = offset; e <= 40; e += modulus) exps.push_back(e);
      EXPECT_EQ(small(qbij::poch_inf(offset, modulus, 40)), small(oracle::expand_product(exps, 40)));
      std::vector<int> first(exps.begin(), exps.begin() + std::min<std::size_t>(3, exps.size()));
      EXPECT_EQ(small(qbij::poch_finite(offset, modulus, 3, 40)),
                small(oracle::expand_product(first, 40)));
    }
  }
}

TEST(Inverse, Examples) {
  EXPECT_EQ(small(qbij::invert_unit(qbij::poch_inf(1, 1, 5))),
            (std::vector<long long>{1, 1, 2, 3, 5, 7}));
  EXPECT_EQ(qbij::invert_unit(TruncatedSeries::one(6)), TruncatedSeries::one(6));
  EXPECT_EQ(small(qbij::invert_unit(from(6, {1, -1}))), (std::vector<long long>(7, 1)));
  EXPECT_EQ(small(qbij::invert_unit(from(3, {-1, 1}))), (std::vector<long long>{-1, -1, -1, -1}));
  EXPECT_THROW(qbij::invert_unit(from(3, {2, 1})), qbij::PreconditionError);
  EXPECT_THROW(qbij::invert_unit(from(3, {0, 1})), qbij::PreconditionError);
}

TEST(Inverse, PartitionNumbersBeyondMachineWords) {
  const int n = 500;
  const auto series = qbij::invert_unit(qbij::poch_inf(1, 1, n));
  const auto p = oracle::partition_numbers(n);
  for (int d = 0; d <= n; ++d) {
    ASSERT_EQ(series[d].str(), str128(p[static_cast<std::size_t>(d)])) << "degree " << d;
  }
  // p(500) does not fit in 64 bits.
  EXPECT_GT(series[n], BigInt(std::numeric_limits<std::int64_t>::max()));
}

TEST(Inverse, IsTwoSided) {
  auto g = oracle::rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<long long> c(33);
    for (auto& v : c) v = oracle::uniform(g, -9, 9);
    c[0] = oracle::uniform(g, 0, 1) ? 1 : -1;
    const auto s = from(32, c);
    const auto inv = qbij::invert_unit(s);
    EXPECT_EQ(s * inv, TruncatedSeries::one(32));
    EXPECT_EQ(inv * s, TruncatedSeries::one(32));
  }
}

TEST(Ring, LawsOnRandomSeries) {
  auto g = oracle::rng(1234);
  auto random_series = [&](int n) {
    std::vector<BigInt> c(static_cast<std::size_t>(n) + 1);
    for (auto& v : c) {
      v = BigInt(oracle::uniform(g, -1'000'000'000, 1'000'000'000)) *
          BigInt(oracle::uniform(g, -1'000'000'000, 1'000'000'000));
    }
    return TruncatedSeries(n, c);
  };
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_series(64), b = random_series(64), c = random_series(64);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a - b) + b, a);
    EXPECT_EQ(qbij::scale(a, 3), a + a + a);
  }
}

TEST(Ring, MismatchedCapsTruncate) {
  const auto a = from(5, {1, 1, 1, 1, 1, 1});
  const auto b = from(3, {1, 1, 1, 1});
  EXPECT_EQ((a + b).degree_cap(), 3);
  EXPECT_EQ((a * b).degree_cap(), 3);
  EXPECT_EQ(small(a * b), (std::vector<long long>{1, 2, 3, 4}));
  EXPECT_THROW(b.truncated(5), qbij::PreconditionError);
}

TEST(Ring, Shift) {
  EXPECT_EQ(small(qbij::shift(from(3, {1, 1}), 1)), (std::vector<long long>{0, 1, 1, 0}));
  EXPECT_EQ(small(qbij::shift(from(3, {0, 0, 1, 1}), -2)), (std::vector<long long>{1, 1}));
  EXPECT_THROW(qbij::shift(from(3, {0, 1}), -2), qbij::PreconditionError);
  EXPECT_EQ(from(4, {1, -1}) * qbij::invert_unit(from(4, {1, -1})), TruncatedSeries::one(4));
}

TEST(TripleProduct, Examples) {
  const auto rr = qbij::triple_product(2, 5, 10) * qbij::invert_unit(qbij::poch_inf(1, 1, 10));
  EXPECT_EQ(small(rr.truncated(4)), (std::vector<long long>{1, 1, 1, 1, 2}));
  EXPECT_EQ(qbij::triple_product(0, 5, 10), TruncatedSeries(10));
  EXPECT_EQ(qbij::triple_product(5, 5, 10), TruncatedSeries(10));
  for (int m = 2; m <= 9; ++m) {
    for (int a = 0; a <= m; ++a) {
      EXPECT_EQ(qbij::triple_product(a, m, 30), qbij::triple_product(m - a, m, 30));
    }
  }
  EXPECT_THROW(qbij::triple_product(6, 5, 10), qbij::RangeError);
  EXPECT_THROW(qbij::triple_product(-1, 5, 10), qbij::RangeError);
}

TEST(TripleProduct, MatchesPolynomialExpansion) {
  const int n = 40;
  for (int m = 2; m <= 9; ++m) {
    for (int a = 1; a < m; ++a) {
      std::vector<int> exps;
      for (int e = 0; e <= n; e += m) {
        exps.push_back(e + m);
        exps.push_back(e + a);
        exps.push_back(e + m - a);
      }
      EXPECT_EQ(small(qbij::triple_product(a, m, n)), small(oracle::expand_product(exps, n)));
    }
  }
}

TEST(TripleProduct, OverEulerCountsRestrictedPartitions) {
  const int n = 40;
  const auto inv = qbij::invert_unit(qbij::poch_inf(1, 1, n));
  for (int m = 3; m <= 9; ++m) {
    for (int a = 1; a < m; ++a) {
      if (2 * a == m) continue;  // the two middle factors coincide
      const auto got = qbij::triple_product(a, m, n) * inv;
      const auto expected = oracle::restricted_partitions(n, [&](int part) {
        const int res = part % m;
        return res != 0 && res != a && res != m - a;
      });
      EXPECT_EQ(small(got), small(expected)) << "a=" << a << " m=" << m;
    }
  }
}

// Independent evaluation of a multisum in 64-bit arithmetic: each
// 1/(q)_d is the count of partitions into parts <= d, and 1/(q^2;q^2)_d
// counts partitions into even parts <= 2d.
std::vector<std::int64_t> multisum_oracle(const MultisumSpec& sp, int n) {
  const int r = sp.r;
  const int i = sp.i;
  std::vector<std::int64_t> total(static_cast<std::size_t>(n) + 1, 0);
  std::vector<int> s(static_cast<std::size_t>(r - 1), 0);
  auto recip = [&](int d, bool even) {
    return oracle::restricted_partitions(n, [&](int part) {
      if (even) return part % 2 == 0 && part <= 2 * d;
      return part <= d;
    });
  };
  auto sat = [&](int k) { return k >= r ? 0 : s[static_cast<std::size_t>(k - 1)]; };
  std::function<void(int)> rec = [&](int k) {
    if (k == r) {
      long long e = 0;
      for (int v : s) e += static_cast<long long>(v) * v;
      switch (sp.exponent) {
        case ExponentForm::kTailPlus:
          for (int j = i; j <= r - 1; ++j) e += sat(j);
          break;
        case ExponentForm::kTailPlusExtraLast:
          for (int j = i; j <= r - 1; ++j) e += sat(j);
          e += sat(r - 1);
          break;
        case ExponentForm::kHeadMinus:
          for (int j = 1; j <= i; ++j) e -= sat(j);
          break;
        case ExponentForm::kHeadMinusPlusLast:
          for (int j = 1; j <= i; ++j) e -= sat(j);
          e += sat(r - 1);
          break;
      }
      // Numerator as a list of (coefficient, extra exponent).
      std::vector<std::pair<int, long long>> num;
      switch (sp.numerator) {
        case NumeratorForm::kOne: num = {{1, 0}}; break;
        case NumeratorForm::kOneMinusQsi: num = {{1, 0}, {-1, sat(i)}}; break;
        case NumeratorForm::kOneMinusQsiSprev:
          num = {{1, 0}, {-1, sat(i) + sat(i - 1)}};
          break;
        case NumeratorForm::kOneMinusQsiSlast:
          num = {{1, 0}, {-1, sat(i) + sat(r - 1)}};
          break;
        case NumeratorForm::kQslastMinusQsi:
          num = {{1, sat(r - 1)}, {-1, sat(i)}};
          break;
      }
      std::vector<std::int64_t> den(static_cast<std::size_t>(n) + 1, 0);
      den[0] = 1;
      for (int j = 1; j <= r - 2; ++j) den = oracle::multiply(den, recip(sat(j) - sat(j + 1), false));
      den = oracle::multiply(den, recip(sat(r - 1), sp.last_base == LastBase::kQ2));
      for (const auto& [c, extra] : num) {
        const long long shift = e + extra;
        for (long long d = 0; d + shift <= n; ++d) {
          total[static_cast<std::size_t>(d + shift)] += c * den[static_cast<std::size_t>(d)];
        }
      }
      return;
    }
    const int cap = k == 1 ? n + 1 : s[static_cast<std::size_t>(k - 2)];
    for (int v = 0; v <= cap; ++v) {
      if (static_cast<long long>(v) * v - v > n) break;
      s[static_cast<std::size_t>(k - 1)] = v;
      rec(k + 1);
    }
    s[static_cast<std::size_t>(k - 1)] = 0;
  };
  rec(1);
  return total;
}

TEST(Multisum, Examples) {
  const MultisumSpec ag{2, 2, ExponentForm::kTailPlus, LastBase::kQ, NumeratorForm::kOne};
  EXPECT_EQ(small(qbij::multisum(ag, 4)), (std::vector<long long>{1, 1, 1, 1, 2}));
  const MultisumSpec ag1{2, 1, ExponentForm::kTailPlus, LastBase::kQ, NumeratorForm::kOne};
  EXPECT_EQ(small(qbij::multisum(ag1, 0)), (std::vector<long long>{1}));
}

TEST(Multisum, RankTwoMatchesSingleSum) {
  const int n = 60;
  for (int i = 1; i <= 2; ++i) {
    std::vector<std::int64_t> expected(n + 1, 0);
    for (int s = 0; s * s <= n; ++s) {
      const auto den = oracle::restricted_partitions(n, [&](int part) { return part <= s; });
      const int e = s * s + (2 - i) * s;
      for (int d = 0; d + e <= n; ++d) expected[static_cast<std::size_t>(d + e)] += den[static_cast<std::size_t>(d)];
    }
    const MultisumSpec sp{2, i, ExponentForm::kTailPlus, LastBase::kQ, NumeratorForm::kOne};
    EXPECT_EQ(small(qbij::multisum(sp, n)), small(expected));
  }
}

TEST(Multisum, AllFormsMatchIndependentEvaluation) {
  const int n = 30;
  for (int r = 2; r <= 4; ++r) {
    for (auto e : {ExponentForm::kTailPlus, ExponentForm::kTailPlusExtraLast,
                   ExponentForm::kHeadMinus, ExponentForm::kHeadMinusPlusLast}) {
      for (auto b : {LastBase::kQ, LastBase::kQ2}) {
        for (auto num : {NumeratorForm::kOne, NumeratorForm::kOneMinusQsi,
                         NumeratorForm::kOneMinusQsiSprev, NumeratorForm::kOneMinusQsiSlast,
                         NumeratorForm::kQslastMinusQsi}) {
          for (int i = 0; i <= r; ++i) {
            const MultisumSpec sp{r, i, e, b, num};
            try {
              sp.validate();
            } catch (const qbij::RangeError&) {
              continue;
            }
            EXPECT_EQ(small(qbij::multisum(sp, n)), small(multisum_oracle(sp, n))) << sp.to_string();
          }
        }
      }
    }
  }
}

TEST(Multisum, CountsPairSideSets) {
  // The plain tail form counts Q_{i-1,r}; the head form counts P_{i,r}.
  const int n = 22;
  for (int r = 2; r <= 4; ++r) {
    for (int i = 1; i <= r; ++i) {
      const MultisumSpec sp{r, i, ExponentForm::kTailPlus, LastBase::kQ, NumeratorForm::kOne};
      EXPECT_EQ(small(qbij::multisum(sp, n)),
                small(qbij::count_by_weight(qbij::SetId(qbij::Family::kQ, r, i - 1), n)));
    }
    for (int i = 0; i <= r - 1; ++i) {
      const MultisumSpec sp{r, i, ExponentForm::kHeadMinus, LastBase::kQ, NumeratorForm::kOne};
      EXPECT_EQ(small(qbij::multisum(sp, n)),
                small(qbij::count_by_weight(qbij::SetId(qbij::Family::kP, r, i), n)));
    }
  }
}

TEST(Multisum, RankFourPairCoefficientAtThirtyOne) {
  const MultisumSpec sp{4, 3, ExponentForm::kHeadMinus, LastBase::kQ, NumeratorForm::kOne};
  const auto counts = qbij::count_by_weight(qbij::SetId(qbij::Family::kP, 4, 3), 31);
  EXPECT_EQ(qbij::multisum(sp, 31)[31], BigInt(counts[31]));
}

TEST(Multisum, RejectsMissingIndex) {
  EXPECT_THROW(qbij::multisum({3, 0, ExponentForm::kTailPlus, LastBase::kQ, NumeratorForm::kOne}, 5),
               qbij::RangeError);
  EXPECT_THROW(qbij::multisum({3, 3, ExponentForm::kHeadMinus, LastBase::kQ, NumeratorForm::kOne}, 5),
               qbij::RangeError);
  EXPECT_THROW(qbij::multisum({3, 0, ExponentForm::kHeadMinus, LastBase::kQ,
                               NumeratorForm::kOneMinusQsi},
                              5),
               qbij::RangeError);
  EXPECT_THROW(qbij::multisum({3, 1, ExponentForm::kTailPlus, LastBase::kQ2,
                               NumeratorForm::kOneMinusQsiSprev},
                              5),
               qbij::RangeError);
  EXPECT_THROW(qbij::multisum({1, 0, ExponentForm::kHeadMinus, LastBase::kQ, NumeratorForm::kOne}, 5),
               qbij::RangeError);
}

TEST(Serialization, CsvRoundTrip) {
  const auto s = qbij::invert_unit(qbij::poch_inf(1, 1, 450));
  std::stringstream io;
  qbij::write_csv(io, s);
  EXPECT_EQ(qbij::read_csv(io), s);
  std::istringstream bad("degree,coefficient\n0,1\n2,5\n");
  EXPECT_THROW(qbij::read_csv(bad), qbij::PreconditionError);
  std::istringstream junk("0,abc\n");
  EXPECT_THROW(qbij::read_csv(junk), qbij::PreconditionError);
  std::istringstream empty("");
  EXPECT_THROW(qbij::read_csv(empty), qbij::PreconditionError);
}

TEST(Serialization, JsonRoundTrip) {
  const auto s = qbij::scale(qbij::invert_unit(qbij::poch_inf(1, 1, 450)), -1);
  EXPECT_EQ(qbij::series_from_json(qbij::to_json(s)), s);
  EXPECT_THROW(qbij::series_from_json("{"), qbij::PreconditionError);
  EXPECT_THROW(qbij::series_from_json("[]"), qbij::PreconditionError);
  EXPECT_THROW(qbij::series_from_json(R"([{"degree":0,"value":"x1"}])"), qbij::PreconditionError);
}

TEST(Serialization, HumanReadable) {
  EXPECT_EQ(qbij::to_string(qbij::poch_inf(1, 1, 5)), "1 - q - q^2 + q^5 + O(q^6)");
  EXPECT_EQ(qbij::to_string(TruncatedSeries(2)), "0 + O(q^3)");
  EXPECT_EQ(qbij::to_string(from(2, {0, -3, 2})), "-3q + 2q^2 + O(q^3)");
}

}  // namespace
