#include "qbij/verifier.hpp"

#include <atomic>
#include <chrono>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "qbij/errors.hpp"

namespace qbij {

// ---------------------------------------------------------------------------
// Sources

Source Source::count(SetId id) {
  Source s;
  s.kind = Kind::kSetCount;
  s.set = id;
  return s;
}

Source Source::difference(SetId keep, SetId drop) {
  Source s;
  s.kind = Kind::kSetDifference;
  s.set = keep;
  s.drop = drop;
  return s;
}

Source Source::sum(MultisumSpec spec) {
  spec.validate();
  Source s;
  s.kind = Kind::kMultisum;
  s.spec = spec;
  return s;
}

Source Source::product(int a, int m) {
  if (a < 0 || a > m) {
    throw RangeError("product offset " + std::to_string(a) + " outside [0, " +
                     std::to_string(m) + "]");
  }
  Source s;
  s.kind = Kind::kProduct;
  s.a = a;
  s.m = m;
  return s;
}

Source Source::f_count(int r, int i) {
  if (r < 2 || i < 0 || i > r + 1) {
    throw RangeError("F count needs 0 <= i <= r+1");
  }
  Source s;
  s.kind = Kind::kFCount;
  s.r = r;
  s.i = i;
  return s;
}

bool Source::needs_enumeration() const {
  switch (kind) {
    case Kind::kSetCount:
    case Kind::kSetDifference:
      return true;
    case Kind::kFCount:
      return i != 0 && i != r;
    default:
      return false;
  }
}

std::string Source::describe() const {
  switch (kind) {
    case Kind::kSetCount:
      return "#" + set->to_string();
    case Kind::kSetDifference:
      return "#" + set->to_string() + "\\" + drop->to_string();
    case Kind::kMultisum:
      return spec.to_string();
    case Kind::kProduct:
      return "triple(" + std::to_string(a) + "," + std::to_string(m) + ")/(q)inf";
    case Kind::kFCount:
      return "F(r=" + std::to_string(r) + ",i=" + std::to_string(i) + ")";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Evaluation with a shared cache

namespace {

std::mutex g_cache_mutex;
std::map<std::string, TruncatedSeries> g_cache;

TruncatedSeries from_counts(const std::vector<Count>& counts, int n) {
  TruncatedSeries s(n);
  for (int d = 0; d <= n && d < static_cast<int>(counts.size()); ++d) {
    s[d] = counts[static_cast<std::size_t>(d)];
  }
  return s;
}

TruncatedSeries evaluate_uncached(const Source& src, int n);

// 1/(q)_inf, shared by every product side.
TruncatedSeries inverse_euler(int n) {
  const std::string key = "1/(q)inf@" + std::to_string(n);
  {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto it = g_cache.find(key);
    if (it != g_cache.end()) return it->second;
  }
  TruncatedSeries value = invert_unit(poch_inf(1, 1, n));
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  return g_cache.emplace(key, std::move(value)).first->second;
}

TruncatedSeries evaluate(const Source& src, int n) {
  const std::string key = src.describe() + "@" + std::to_string(n);
  {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto it = g_cache.find(key);
    if (it != g_cache.end()) return it->second;
  }
  TruncatedSeries value = evaluate_uncached(src, n);
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  return g_cache.emplace(key, std::move(value)).first->second;
}

TruncatedSeries evaluate_uncached(const Source& src, int n) {
  switch (src.kind) {
    case Source::Kind::kSetCount:
      return from_counts(count_by_weight(*src.set, n), n);
    case Source::Kind::kSetDifference:
      return from_counts(count_difference_by_weight(*src.set, *src.drop, n), n);
    case Source::Kind::kMultisum:
      return multisum(src.spec, n);
    case Source::Kind::kProduct:
      return triple_product(src.a, src.m, n) * inverse_euler(n);
    case Source::Kind::kFCount:
      if (src.i == 0) return TruncatedSeries(n);
      if (src.i == src.r) return evaluate(Source::product(src.r, 2 * src.r), n);
      if (src.i == src.r + 1) return evaluate(Source::f_count(src.r, src.r - 1), n);
      return from_counts(count_by_weight(SetId(Family::kF, src.r, src.i), n), n);
  }
  return TruncatedSeries(n);
}

TruncatedSeries evaluate(const Expression& expr, int n) {
  TruncatedSeries total(n);
  for (const Term& t : expr) {
    total += scale(shift(evaluate(t.source, n), t.shift), t.coef);
  }
  return total;
}

}  // namespace

void clear_cache() {
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  g_cache.clear();
}

// ---------------------------------------------------------------------------
// Registry

namespace {

using Range = std::function<std::pair<int, int>(int)>;

const Range kOneToR = [](int r) { return std::pair{1, r}; };
const Range kOneToRm1 = [](int r) { return std::pair{1, r - 1}; };
const Range kZeroToRm1 = [](int r) { return std::pair{0, r - 1}; };
const Range kTwoToRm1 = [](int r) { return std::pair{2, r - 1}; };
const Range kOnlyR = [](int r) { return std::pair{r, r}; };

Term term(Source s, BigInt coef = 1, int shift = 0) {
  return Term{std::move(coef), shift, std::move(s)};
}

Expression one(Source s) { return {term(std::move(s))}; }

MultisumSpec spec(int r, int i, ExponentForm e, LastBase b,
                  NumeratorForm num = NumeratorForm::kOne) {
  return MultisumSpec{r, i, e, b, num};
}

// Multisum sides, one builder per summand shape.
Source ag_sum(int r, int i) {
  return Source::sum(spec(r, i, ExponentForm::kTailPlus, LastBase::kQ));
}
Source br_sum(int r, int i) {
  return Source::sum(spec(r, i, ExponentForm::kTailPlus, LastBase::kQ2));
}
Source fij_sum(int r, int i) {
  return Source::sum(spec(r, i, ExponentForm::kTailPlusExtraLast, LastBase::kQ2));
}
Source head_q(int r, int i, NumeratorForm num = NumeratorForm::kOne) {
  return Source::sum(spec(r, i, ExponentForm::kHeadMinus, LastBase::kQ, num));
}
Source head_q2(int r, int i, NumeratorForm num = NumeratorForm::kOne) {
  return Source::sum(spec(r, i, ExponentForm::kHeadMinus, LastBase::kQ2, num));
}
Source head_last_q2(int r, int i, NumeratorForm num = NumeratorForm::kOne) {
  return Source::sum(
      spec(r, i, ExponentForm::kHeadMinusPlusLast, LastBase::kQ2, num));
}

// Product sides.
Expression odd_product(int r, int a) { return one(Source::product(a, 2 * r + 1)); }
Expression even_product(int r, int a) { return one(Source::product(a, 2 * r)); }

Expression odd_head_sum(int r, int i) {
  Expression e;
  for (int k = 0; k <= i; ++k) e.push_back(term(Source::product(r - i + k, 2 * r + 1)));
  return e;
}
Expression even_head_sum(int r, int i) {
  Expression e;
  for (int k = 0; k <= i; ++k) e.push_back(term(Source::product(r - i + 2 * k, 2 * r)));
  return e;
}
Expression even_head_sum_shifted(int r, int i) {
  Expression e;
  for (int k = 0; k <= i; ++k) {
    e.push_back(term(Source::product(r - i + 2 * k - 1, 2 * r)));
  }
  return e;
}
// triple(i+1, 2r) + q triple(i-1, 2r).
Expression two_products(int r, int i) {
  return {term(Source::product(i + 1, 2 * r)),
          term(Source::product(i - 1, 2 * r), 1, 1)};
}
Expression neighbour_products(int r, int i) {
  return {term(Source::product(r - i - 1, 2 * r)),
          term(Source::product(r - i + 1, 2 * r))};
}
Expression with_one_plus_q(Source s) {
  return {term(s), term(s, 1, 1)};
}

SetId id(Family f, int r, int i) { return SetId(f, r, i); }

std::vector<IdentityEntry> build_registry() {
  using F = Family;
  using N = NumeratorForm;
  std::vector<IdentityEntry> out;
  auto add = [&](std::string key, std::string description, bool enumerated,
                 Range range, std::function<Expression(int, int)> lhs,
                 std::function<Expression(int, int)> rhs) {
    out.push_back(IdentityEntry{std::move(key), std::move(description),
                                std::move(lhs), std::move(rhs),
                                std::move(range), enumerated});
  };

  // Multisum = product.
  add("AG", "Andrews-Gordon multisum equals (q^{2r+1},q^i,q^{2r+1-i};q^{2r+1})_inf/(q)_inf",
      false, kOneToR, [](int r, int i) { return one(ag_sum(r, i)); },
      [](int r, int i) { return odd_product(r, i); });
  add("BR", "Bressoud multisum equals (q^{2r},q^i,q^{2r-i};q^{2r})_inf/(q)_inf",
      false, kOneToR, [](int r, int i) { return one(br_sum(r, i)); },
      [](int r, int i) { return even_product(r, i); });
  add("FIJ_SUMPROD",
      "(1+q) times the opposite-parity Bressoud multisum equals two even-modulus products",
      false, kOneToR, [](int r, int i) { return with_one_plus_q(fij_sum(r, i)); },
      [](int r, int i) { return two_products(r, i); });
  add("BR33", "odd-modulus multisum with -s_1-...-s_i equals a sum of i+1 products",
      false, kZeroToRm1, [](int r, int i) { return one(head_q(r, i)); },
      [](int r, int i) { return odd_head_sum(r, i); });
  add("BR35", "even-modulus multisum with -s_1-...-s_i equals a sum of i+1 products",
      false, kZeroToRm1, [](int r, int i) { return one(head_q2(r, i)); },
      [](int r, int i) { return even_head_sum(r, i); });
  add("FIJFORM",
      "even-modulus multisum with -s_1-...-s_i+s_{r-1} equals a sum of i+1 products",
      false, kZeroToRm1, [](int r, int i) { return one(head_last_q2(r, i)); },
      [](int r, int i) { return even_head_sum_shifted(r, i); });
  add("AGP", "odd-modulus multisum with numerator 1-q^{s_i} equals one product",
      false, kOneToRm1, [](int r, int i) { return one(head_q(r, i, N::kOneMinusQsi)); },
      [](int r, int i) { return odd_product(r, r - i); });
  add("BP", "even-modulus multisum with numerator 1-q^{s_i+s_{i-1}} equals twice one product",
      false, kTwoToRm1,
      [](int r, int i) { return one(head_q2(r, i, N::kOneMinusQsiSprev)); },
      [](int r, int i) { return Expression{term(Source::product(r - i, 2 * r), 2)}; });
  add("ISAAC", "even-modulus multisum with numerator 1-q^{s_i+s_{r-1}} equals one product",
      false, kOneToRm1,
      [](int r, int i) { return one(head_q2(r, i, N::kOneMinusQsiSlast)); },
      [](int r, int i) { return even_product(r, r - i); });
  add("FIJFORM2",
      "even-modulus multisum with numerator q^{s_{r-1}}-q^{s_i} equals one product",
      false, kOneToRm1,
      [](int r, int i) { return one(head_q2(r, i, N::kQslastMinusQsi)); },
      [](int r, int i) { return even_product(r, r - i - 1); });
  add("FIJFORM3",
      "even-modulus multisum with -s_1-...-s_i+s_{r-1} and numerator 1-q^{s_i+s_{i-1}} "
      "equals two products",
      false, kTwoToRm1,
      [](int r, int i) { return one(head_last_q2(r, i, N::kOneMinusQsiSprev)); },
      [](int r, int i) { return neighbour_products(r, i); });

  // Frequency-side sets against products.
  add("T_PROD", "gap-2 partitions T_{i,r} counted by the odd-modulus product", true,
      kOneToR, [](int r, int i) { return one(Source::count(id(F::kT, r, i))); },
      [](int r, int i) { return odd_product(r, i); });
  add("U_PROD", "parity-gap partitions U_{i,r} counted by the even-modulus product",
      true, kOneToR, [](int r, int i) { return one(Source::count(id(F::kU, r, i))); },
      [](int r, int i) { return even_product(r, i); });
  add("UT_PROD", "(1+q) times the Utilde_{i,r} counts equals two even-modulus products",
      true, kOneToR,
      [](int r, int i) { return with_one_plus_q(Source::count(id(F::kUtilde, r, i))); },
      [](int r, int i) { return two_products(r, i); });
  add("A_PROD", "A_{i,r} counted by a sum of i+1 odd-modulus products", true, kZeroToRm1,
      [](int r, int i) { return one(Source::count(id(F::kA, r, i))); },
      [](int r, int i) { return odd_head_sum(r, i); });
  add("B_PROD", "B_{i,r} counted by a sum of i+1 even-modulus products", true, kZeroToRm1,
      [](int r, int i) { return one(Source::count(id(F::kB, r, i))); },
      [](int r, int i) { return even_head_sum(r, i); });
  add("BT_PROD", "Btilde_{i,r} counted by a sum of i+1 even-modulus products", true,
      kZeroToRm1, [](int r, int i) { return one(Source::count(id(F::kBtilde, r, i))); },
      [](int r, int i) { return even_head_sum_shifted(r, i); });
  add("A_DIFF_PROD", "A_{i,r} minus A_{i-1,r} counted by one odd-modulus product", true,
      kZeroToRm1,
      [](int r, int i) {
        return one(Source::difference(id(F::kA, r, i), id(F::kA, r, i - 1)));
      },
      [](int r, int i) { return odd_product(r, r - i); });
  add("B_DIFF2_PROD", "B_{i,r} minus B_{i-2,r} counted by twice one even-modulus product",
      true, kOneToRm1,
      [](int r, int i) {
        return one(Source::difference(id(F::kB, r, i), id(F::kB, r, i - 2)));
      },
      [](int r, int i) { return Expression{term(Source::product(r - i, 2 * r), 2)}; });
  add("B_BT_PROD", "B_{i,r} minus Btilde_{i-1,r} counted by one even-modulus product",
      true, kZeroToRm1,
      [](int r, int i) {
        return one(Source::difference(id(F::kB, r, i), id(F::kBtilde, r, i - 1)));
      },
      [](int r, int i) { return even_product(r, r - i); });
  add("BT_B_PROD", "Btilde_{i,r} minus B_{i-1,r} counted by one even-modulus product",
      true, kZeroToRm1,
      [](int r, int i) {
        return one(Source::difference(id(F::kBtilde, r, i), id(F::kB, r, i - 1)));
      },
      [](int r, int i) { return even_product(r, r - i - 1); });
  add("BT_DIFF2_PROD",
      "Btilde_{i,r} minus Btilde_{i-2,r} counted by two even-modulus products", true,
      kOneToRm1,
      [](int r, int i) {
        return one(Source::difference(id(F::kBtilde, r, i), id(F::kBtilde, r, i - 2)));
      },
      [](int r, int i) { return neighbour_products(r, i); });

  // Pair-side sets against multisums.
  add("Q_SUM", "pair-side Q_{i-1,r} counted by the Andrews-Gordon multisum", true,
      kOneToR, [](int r, int i) { return one(Source::count(id(F::kQ, r, i - 1))); },
      [](int r, int i) { return one(ag_sum(r, i)); });
  add("S_SUM", "pair-side S_{i-1,r} counted by the Bressoud multisum", true, kOneToR,
      [](int r, int i) { return one(Source::count(id(F::kS, r, i - 1))); },
      [](int r, int i) { return one(br_sum(r, i)); });
  add("ST_SUM", "pair-side Stilde_{i-1,r} counted by the opposite-parity multisum", true,
      kOneToR, [](int r, int i) { return one(Source::count(id(F::kStilde, r, i - 1))); },
      [](int r, int i) { return one(fij_sum(r, i)); });
  add("P_SUM", "pair-side P_{i,r} counted by the odd-modulus head multisum", true,
      kZeroToRm1, [](int r, int i) { return one(Source::count(id(F::kP, r, i))); },
      [](int r, int i) { return one(head_q(r, i)); });
  add("R_SUM", "pair-side R_{i,r} counted by the even-modulus head multisum", true,
      kZeroToRm1, [](int r, int i) { return one(Source::count(id(F::kR, r, i))); },
      [](int r, int i) { return one(head_q2(r, i)); });
  add("RT_SUM", "pair-side Rtilde_{i,r} counted by the head multisum with +s_{r-1}", true,
      kZeroToRm1, [](int r, int i) { return one(Source::count(id(F::kRtilde, r, i))); },
      [](int r, int i) { return one(head_last_q2(r, i)); });
  add("P_DIFF_SUM", "P_{i,r} minus P_{i-1,r} counted by the 1-q^{s_i} multisum", true,
      kOneToRm1,
      [](int r, int i) {
        return one(Source::difference(id(F::kP, r, i), id(F::kP, r, i - 1)));
      },
      [](int r, int i) { return one(head_q(r, i, N::kOneMinusQsi)); });
  add("R_DIFF2_SUM", "R_{i,r} minus R_{i-2,r} counted by the 1-q^{s_i+s_{i-1}} multisum",
      true, kTwoToRm1,
      [](int r, int i) {
        return one(Source::difference(id(F::kR, r, i), id(F::kR, r, i - 2)));
      },
      [](int r, int i) { return one(head_q2(r, i, N::kOneMinusQsiSprev)); });
  add("R_RT_SUM", "R_{i,r} minus Rtilde_{i-1,r} counted by the 1-q^{s_i+s_{r-1}} multisum",
      true, kOneToRm1,
      [](int r, int i) {
        return one(Source::difference(id(F::kR, r, i), id(F::kRtilde, r, i - 1)));
      },
      [](int r, int i) { return one(head_q2(r, i, N::kOneMinusQsiSlast)); });
  add("RT_R_SUM",
      "Rtilde_{i,r} minus R_{i-1,r} counted by the q^{s_{r-1}}-q^{s_i} multisum", true,
      kOneToRm1,
      [](int r, int i) {
        return one(Source::difference(id(F::kRtilde, r, i), id(F::kR, r, i - 1)));
      },
      [](int r, int i) { return one(head_q2(r, i, N::kQslastMinusQsi)); });
  add("RT_DIFF2_SUM",
      "Rtilde_{i,r} minus Rtilde_{i-2,r} counted by the +s_{r-1}, 1-q^{s_i+s_{i-1}} multisum",
      true, kTwoToRm1,
      [](int r, int i) {
        return one(Source::difference(id(F::kRtilde, r, i), id(F::kRtilde, r, i - 2)));
      },
      [](int r, int i) { return one(head_last_q2(r, i, N::kOneMinusQsiSprev)); });

  // Partition theorems and their multisum generating functions.
  add("GORDON_TE", "T_{i,r}(n) = E_{i,r}(n): gap condition vs parts avoiding 0,+-i mod 2r+1",
      true, kOneToR, [](int r, int i) { return one(Source::count(id(F::kT, r, i))); },
      [](int r, int i) { return one(Source::count(id(F::kE, r, i))); });
  add("BRESSOUD_UF", "U_{i,r}(n) = F_{i,r}(n): parity gap condition vs parts avoiding 0,+-i mod 2r",
      true, kOneToRm1, [](int r, int i) { return one(Source::count(id(F::kU, r, i))); },
      [](int r, int i) { return one(Source::f_count(r, i)); });
  add("KUR_COUNT", "Utilde_{i,r}(n) + Utilde_{i,r}(n-1) = F_{i+1,r}(n) + F_{i-1,r}(n-1)",
      true, kOneToR,
      [](int r, int i) { return with_one_plus_q(Source::count(id(F::kUtilde, r, i))); },
      [](int r, int i) {
        return Expression{term(Source::f_count(r, i + 1)),
                          term(Source::f_count(r, i - 1), 1, 1)};
      });
  add("KUR_U", "Utilde_{i,r}(n) + Utilde_{i,r}(n-1) = U_{i+1,r}(n) + U_{i-1,r}(n-1)", true,
      kOneToRm1,
      [](int r, int i) { return with_one_plus_q(Source::count(id(F::kUtilde, r, i))); },
      [](int r, int i) {
        return Expression{term(Source::count(id(F::kU, r, i + 1))),
                          term(Source::count(id(F::kU, r, i - 1)), 1, 1)};
      });
  add("AG_COMB", "T_{i,r} counts equal the Andrews-Gordon multisum", true, kOneToR,
      [](int r, int i) { return one(Source::count(id(F::kT, r, i))); },
      [](int r, int i) { return one(ag_sum(r, i)); });
  add("BR_COMB", "U_{i,r} counts equal the Bressoud multisum", true, kOneToR,
      [](int r, int i) { return one(Source::count(id(F::kU, r, i))); },
      [](int r, int i) { return one(br_sum(r, i)); });
  add("FIJ_COMB", "Utilde_{i,r} counts equal the opposite-parity multisum", true, kOneToR,
      [](int r, int i) { return one(Source::count(id(F::kUtilde, r, i))); },
      [](int r, int i) { return one(fij_sum(r, i)); });
  add("UTILDE_RR", "Utilde_{r,r} and U_{r-1,r} have the same counts", true, kOnlyR,
      [](int r, int i) { return one(Source::count(id(F::kUtilde, r, i))); },
      [](int r, int i) { return one(Source::count(id(F::kU, r, i - 1))); });
  return out;
}

}  // namespace

const std::vector<IdentityEntry>& registry() {
  static const std::vector<IdentityEntry> entries = build_registry();
  return entries;
}

const IdentityEntry* find_entry(const std::string& key) {
  for (const auto& e : registry()) {
    if (e.key == key) return &e;
  }
  return nullptr;
}

// ---------------------------------------------------------------------------
// Verification

namespace {

void check_params(const IdentityEntry& entry, int r, int i, int n) {
  if (r < 2) throw RangeError(entry.key + ": r must be at least 2");
  const auto [lo, hi] = entry.i_range(r);
  if (i < lo || i > hi) {
    throw RangeError(entry.key + ": i=" + std::to_string(i) + " outside [" +
                     std::to_string(lo) + ", " + std::to_string(hi) +
                     "] for r=" + std::to_string(r));
  }
  if (n < 0) throw RangeError(entry.key + ": N must be >= 0");
}

const IdentityEntry& require_entry(const std::string& key) {
  const IdentityEntry* e = find_entry(key);
  if (!e) throw RangeError("unknown identity key: " + key);
  return *e;
}

}  // namespace

std::vector<BigInt> coefficients(const IdentityEntry& entry, Side side, int r,
                                 int i, int n) {
  check_params(entry, r, i, n);
  const Expression expr = side == Side::kLhs ? entry.lhs(r, i) : entry.rhs(r, i);
  return evaluate(expr, n).coeffs();
}

std::vector<BigInt> coefficients(const std::string& key, Side side, int r,
                                 int i, int n) {
  return coefficients(require_entry(key), side, r, i, n);
}

std::string status_name(Status s) {
  switch (s) {
    case Status::kOk:
      return "ok";
    case Status::kMismatch:
      return "mismatch";
    case Status::kError:
      return "error";
  }
  return "?";
}

VerificationReport verify(const IdentityEntry& entry, int r, int i, int n) {
  VerificationReport rep;
  rep.key = entry.key;
  rep.r = r;
  rep.i = i;
  rep.n = n;
  const auto start = std::chrono::steady_clock::now();
  try {
    rep.lhs = coefficients(entry, Side::kLhs, r, i, n);
    rep.rhs = coefficients(entry, Side::kRhs, r, i, n);
    for (int d = 0; d <= n; ++d) {
      if (rep.lhs[static_cast<std::size_t>(d)] != rep.rhs[static_cast<std::size_t>(d)]) {
        rep.status = Status::kMismatch;
        rep.mismatch_degree = d;
        rep.lhs_value = rep.lhs[static_cast<std::size_t>(d)];
        rep.rhs_value = rep.rhs[static_cast<std::size_t>(d)];
        break;
      }
    }
  } catch (const std::exception& ex) {
    rep.status = Status::kError;
    rep.error = ex.what();
  }
  rep.elapsed_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return rep;
}

VerificationReport verify(const std::string& key, int r, int i, int n) {
  const IdentityEntry* e = find_entry(key);
  if (!e) {
    VerificationReport rep;
    rep.key = key;
    rep.r = r;
    rep.i = i;
    rep.n = n;
    rep.status = Status::kError;
    rep.error = "unknown identity key: " + key;
    return rep;
  }
  return verify(*e, r, i, n);
}

std::vector<VerificationReport> sweep(const std::vector<std::string>& keys,
                                      const SweepOptions& options) {
  struct Task {
    const IdentityEntry* entry;
    std::string key;
    int r;
    int i;
    int n;
  };
  std::vector<Task> tasks;
  for (const std::string& key : keys) {
    const IdentityEntry* e = find_entry(key);
    if (!e) {
      tasks.push_back({nullptr, key, 0, 0, options.n});
      continue;
    }
    const int n = e->enumeration_backed ? std::min(options.n, options.n_enum)
                                        : options.n;
    for (int r = 2; r <= options.r_max; ++r) {
      const auto [lo, hi] = e->i_range(r);
      for (int i = lo; i <= hi; ++i) tasks.push_back({e, key, r, i, n});
    }
  }

  std::vector<VerificationReport> reports(tasks.size());
  auto run = [&](std::size_t k) {
    const Task& t = tasks[k];
    reports[k] = t.entry ? verify(*t.entry, t.r, t.i, t.n)
                         : verify(t.key, t.r, t.i, t.n);
  };
  const int jobs = std::max(1, options.jobs);
  if (jobs == 1 || tasks.size() < 2) {
    for (std::size_t k = 0; k < tasks.size(); ++k) run(k);
    return reports;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < jobs; ++w) {
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < tasks.size(); k = next++) run(k);
    });
  }
  for (auto& th : pool) th.join();
  return reports;
}

// ---------------------------------------------------------------------------
// Output

void write_table(std::ostream& out,
                 const std::vector<VerificationReport>& reports) {
  out << "key            r  i   N  status    detail\n";
  for (const auto& rep : reports) {
    std::ostringstream line;
    line << rep.key;
    std::string s = line.str();
    s.resize(std::max<std::size_t>(s.size() + 1, 15), ' ');
    line.str(s);
    line.seekp(0, std::ios::end);
    line << rep.r << "  " << (rep.i >= 0 ? " " : "") << rep.i << "  ";
    if (rep.n < 10) line << ' ';
    line << rep.n << "  " << status_name(rep.status);
    for (std::size_t pad = status_name(rep.status).size(); pad < 10; ++pad) line << ' ';
    if (rep.status == Status::kMismatch) {
      line << "degree " << *rep.mismatch_degree << ": lhs " << rep.lhs_value
           << " rhs " << rep.rhs_value;
    } else if (rep.status == Status::kError) {
      line << rep.error;
    }
    std::string text = line.str();
    text.erase(text.find_last_not_of(' ') + 1);
    out << text << '\n';
  }
}

std::string to_json_line(const VerificationReport& rep) {
  nlohmann::ordered_json j;
  j["key"] = rep.key;
  j["r"] = rep.r;
  j["i"] = rep.i;
  j["N"] = rep.n;
  j["status"] = status_name(rep.status);
  if (rep.mismatch_degree) {
    j["mismatch"] = {{"degree", *rep.mismatch_degree},
                     {"lhs", rep.lhs_value.str()},
                     {"rhs", rep.rhs_value.str()}};
  } else {
    j["mismatch"] = nullptr;
  }
  if (rep.status == Status::kError) j["error"] = rep.error;
  return j.dump();
}

void write_json_lines(std::ostream& out,
                      const std::vector<VerificationReport>& reports) {
  for (const auto& rep : reports) out << to_json_line(rep) << '\n';
}

}  // namespace qbij
