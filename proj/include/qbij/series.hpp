#pragma once

// Exact formal power series in q truncated at an inclusive degree N, with
// q-Pochhammer and triple-product builders and a parameterised evaluator for
// the multisums sum_{s_1 >= ... >= s_{r-1} >= 0} num * q^e / denominators.

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace qbij {

using BigInt = boost::multiprecision::cpp_int;

class TruncatedSeries {
 public:
  // Zero series truncated at degree n.
  explicit TruncatedSeries(int n = 0);
  TruncatedSeries(int n, std::vector<BigInt> coeffs);

  static TruncatedSeries one(int n);
  static TruncatedSeries monomial(int n, int degree, BigInt c = 1);

  int degree_cap() const { return n_; }
  const BigInt& operator[](int d) const { return c_[static_cast<std::size_t>(d)]; }
  BigInt& operator[](int d) { return c_[static_cast<std::size_t>(d)]; }
  const std::vector<BigInt>& coeffs() const { return c_; }

  // Same series truncated at a lower degree.
  TruncatedSeries truncated(int n) const;

  TruncatedSeries& operator+=(const TruncatedSeries& o);
  TruncatedSeries& operator-=(const TruncatedSeries& o);
  TruncatedSeries& operator*=(const TruncatedSeries& o);

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) {
    return a += b;
  }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) {
    return a -= b;
  }
  friend TruncatedSeries operator*(TruncatedSeries a, const TruncatedSeries& b) {
    return a *= b;
  }
  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

 private:
  int n_;
  std::vector<BigInt> c_;
};

TruncatedSeries scale(const TruncatedSeries& s, const BigInt& k);
// Multiplies by q^k. Negative k requires the -k lowest coefficients to be
// zero; otherwise PreconditionError.
TruncatedSeries shift(const TruncatedSeries& s, int k);
// Multiplicative inverse; the constant term must be +-1.
TruncatedSeries invert_unit(const TruncatedSeries& s);

// prod_{j >= 0} (1 - q^{offset + j*modulus}) truncated at n. offset >= 1.
TruncatedSeries poch_inf(int offset, int modulus, int n);
// The first k factors of poch_inf(offset, modulus, n).
TruncatedSeries poch_finite(int offset, int modulus, int k, int n);
// (q^m, q^a, q^{m-a}; q^m)_inf. Zero for a in {0, m}; RangeError for a > m
// or a < 0.
TruncatedSeries triple_product(int a, int m, int n);

// Exponent added to s_1^2 + ... + s_{r-1}^2.
enum class ExponentForm {
  kTailPlus,           // + s_i + ... + s_{r-1}
  kTailPlusExtraLast,  // + s_i + ... + s_{r-1} + s_{r-1}
  kHeadMinus,          // - s_1 - ... - s_i
  kHeadMinusPlusLast,  // - s_1 - ... - s_i + s_{r-1}
};

enum class LastBase { kQ, kQ2 };  // (q)_{s_{r-1}} or (q^2;q^2)_{s_{r-1}}

enum class NumeratorForm {
  kOne,
  kOneMinusQsi,           // 1 - q^{s_i}
  kOneMinusQsiSprev,      // 1 - q^{s_i + s_{i-1}}
  kOneMinusQsiSlast,      // 1 - q^{s_i + s_{r-1}}
  kQslastMinusQsi,        // q^{s_{r-1}} - q^{s_i}
};

struct MultisumSpec {
  int r = 2;
  int i = 0;
  ExponentForm exponent = ExponentForm::kTailPlus;
  LastBase last_base = LastBase::kQ;
  NumeratorForm numerator = NumeratorForm::kOne;

  // Validates r >= 2 and that i indexes an existing s_i where the form needs
  // one. Throws RangeError otherwise.
  void validate() const;
  std::string to_string() const;

  friend bool operator==(const MultisumSpec&, const MultisumSpec&) = default;
};

TruncatedSeries multisum(const MultisumSpec& spec, int n);

// "degree,coefficient" lines with a header.
void write_csv(std::ostream& out, const TruncatedSeries& s);
TruncatedSeries read_csv(std::istream& in);
// [{"degree":n,"value":"<decimal>"}, ...]
std::string to_json(const TruncatedSeries& s);
TruncatedSeries series_from_json(const std::string& text);

std::string to_string(const TruncatedSeries& s);

}  // namespace qbij
