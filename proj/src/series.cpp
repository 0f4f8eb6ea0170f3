#include "qbij/series.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "qbij/errors.hpp"

namespace qbij {

TruncatedSeries::TruncatedSeries(int n) : n_(n), c_() {
  if (n < 0) throw PreconditionError("truncation degree must be >= 0");
  c_.assign(static_cast<std::size_t>(n) + 1, BigInt(0));
}

TruncatedSeries::TruncatedSeries(int n, std::vector<BigInt> coeffs)
    : TruncatedSeries(n) {
  const std::size_t keep = std::min(coeffs.size(), c_.size());
  for (std::size_t d = 0; d < keep; ++d) c_[d] = std::move(coeffs[d]);
}

TruncatedSeries TruncatedSeries::one(int n) { return monomial(n, 0); }

TruncatedSeries TruncatedSeries::monomial(int n, int degree, BigInt c) {
  TruncatedSeries s(n);
  if (degree < 0) throw PreconditionError("monomial degree must be >= 0");
  if (degree <= n) s[degree] = std::move(c);
  return s;
}

TruncatedSeries TruncatedSeries::truncated(int n) const {
  if (n > n_) throw PreconditionError("cannot extend a truncated series");
  return TruncatedSeries(n, std::vector<BigInt>(c_.begin(), c_.begin() + n + 1));
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
  if (o.n_ < n_) *this = truncated(o.n_);
  for (int d = 0; d <= n_; ++d) (*this)[d] += o[d];
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o) {
  if (o.n_ < n_) *this = truncated(o.n_);
  for (int d = 0; d <= n_; ++d) (*this)[d] -= o[d];
  return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(const TruncatedSeries& o) {
  const int n = std::min(n_, o.n_);
  TruncatedSeries out(n);
  for (int a = 0; a <= n; ++a) {
    if (c_[static_cast<std::size_t>(a)].is_zero()) continue;
    for (int b = 0; a + b <= n; ++b) {
      if (o[b].is_zero()) continue;
      out[a + b] += c_[static_cast<std::size_t>(a)] * o[b];
    }
  }
  *this = std::move(out);
  return *this;
}

TruncatedSeries scale(const TruncatedSeries& s, const BigInt& k) {
  TruncatedSeries out = s;
  for (int d = 0; d <= out.degree_cap(); ++d) out[d] *= k;
  return out;
}

TruncatedSeries shift(const TruncatedSeries& s, int k) {
  const int n = s.degree_cap();
  TruncatedSeries out(n);
  if (k >= 0) {
    for (int d = 0; d + k <= n; ++d) out[d + k] = s[d];
    return out;
  }
  for (int d = 0; d < std::min(-k, n + 1); ++d) {
    if (!s[d].is_zero()) {
      throw PreconditionError("negative shift would drop the non-zero "
                              "coefficient of degree " + std::to_string(d));
    }
  }
  // Degrees above n - |k| are unknown after a downward shift, so the result
  // is truncated there.
  const int m = n + k;
  if (m < 0) return TruncatedSeries(0);
  TruncatedSeries down(m);
  for (int d = 0; d <= m; ++d) down[d] = s[d - k];
  return down;
}

TruncatedSeries invert_unit(const TruncatedSeries& s) {
  const BigInt& c0 = s[0];
  if (c0 != 1 && c0 != -1) {
    throw PreconditionError("series is not a unit: constant term " +
                            c0.str() + " is not +-1");
  }
  const int n = s.degree_cap();
  TruncatedSeries inv(n);
  inv[0] = c0;  // 1/c0 == c0 for c0 = +-1
  for (int d = 1; d <= n; ++d) {
    BigInt acc = 0;
    for (int k = 1; k <= d; ++k) {
      if (!s[k].is_zero()) acc += s[k] * inv[d - k];
    }
    inv[d] = -acc * c0;
  }
  return inv;
}

TruncatedSeries poch_finite(int offset, int modulus, int k, int n) {
  if (offset < 1) {
    throw PreconditionError("q-Pochhammer offset must be >= 1; offset 0 "
                            "contributes the factor (1 - 1) = 0");
  }
  if (modulus < 1) throw PreconditionError("q-Pochhammer modulus must be >= 1");
  if (k < 0) throw PreconditionError("q-Pochhammer length must be >= 0");
  TruncatedSeries out = TruncatedSeries::one(n);
  for (int j = 0; j < k; ++j) {
    const long long e = offset + static_cast<long long>(j) * modulus;
    if (e > n) break;
    // Multiply by (1 - q^e) in place, high degrees first.
    for (int d = n; d >= static_cast<int>(e); --d) out[d] -= out[d - static_cast<int>(e)];
  }
  return out;
}

TruncatedSeries poch_inf(int offset, int modulus, int n) {
  if (offset < 1) {
    throw PreconditionError("q-Pochhammer offset must be >= 1; offset 0 "
                            "contributes the factor (1 - 1) = 0");
  }
  if (modulus < 1) throw PreconditionError("q-Pochhammer modulus must be >= 1");
  const int factors = offset > n ? 0 : (n - offset) / modulus + 1;
  return poch_finite(offset, modulus, factors, n);
}

TruncatedSeries triple_product(int a, int m, int n) {
  if (m < 1) throw RangeError("triple product modulus must be >= 1");
  if (a < 0 || a > m) {
    throw RangeError("triple product offset " + std::to_string(a) +
                     " outside [0, " + std::to_string(m) + "]");
  }
  if (a == 0 || a == m) return TruncatedSeries(n);
  return poch_inf(m, m, n) * poch_inf(a, m, n) * poch_inf(m - a, m, n);
}

// ---------------------------------------------------------------------------
// Multisums

void MultisumSpec::validate() const {
  if (r < 2) throw RangeError("multisum rank must be at least 2");
  const bool tail = exponent == ExponentForm::kTailPlus ||
                    exponent == ExponentForm::kTailPlusExtraLast;
  if (tail && (i < 1 || i > r)) {
    throw RangeError("tail exponent needs 1 <= i <= r, got i=" +
                     std::to_string(i));
  }
  if (!tail && (i < 0 || i > r - 1)) {
    throw RangeError("head exponent needs 0 <= i <= r-1, got i=" +
                     std::to_string(i));
  }
  if (numerator != NumeratorForm::kOne && (i < 1 || i > r - 1)) {
    throw RangeError("numerator involving s_i needs 1 <= i <= r-1, got i=" +
                     std::to_string(i));
  }
  if (numerator == NumeratorForm::kOneMinusQsiSprev && i < 2) {
    throw RangeError("numerator 1-q^(s_i+s_{i-1}) needs i >= 2, got i=" +
                     std::to_string(i));
  }
}

std::string MultisumSpec::to_string() const {
  static const char* kExp[] = {"tail", "tail+last", "head", "head+last"};
  static const char* kNum[] = {"1", "1-q^si", "1-q^(si+si-1)", "1-q^(si+sr-1)",
                               "q^sr-1 - q^si"};
  std::ostringstream out;
  out << "multisum(r=" << r << ",i=" << i
      << ",exp=" << kExp[static_cast<int>(exponent)]
      << ",last=" << (last_base == LastBase::kQ ? "q" : "q2")
      << ",num=" << kNum[static_cast<int>(numerator)] << ")";
  return out.str();
}

namespace {

// Coefficient of s_k (1-based) added to s_k^2 in the exponent.
int linear_coefficient(const MultisumSpec& spec, int k) {
  const int last = spec.r - 1;
  switch (spec.exponent) {
    case ExponentForm::kTailPlus:
      return k >= spec.i ? 1 : 0;
    case ExponentForm::kTailPlusExtraLast:
      return (k >= spec.i ? 1 : 0) + (k == last ? 1 : 0);
    case ExponentForm::kHeadMinus:
      return k <= spec.i ? -1 : 0;
    case ExponentForm::kHeadMinusPlusLast:
      return (k <= spec.i ? -1 : 0) + (k == last ? 1 : 0);
  }
  return 0;
}

}  // namespace

TruncatedSeries multisum(const MultisumSpec& spec, int n) {
  spec.validate();
  const int rank = spec.r;
  const int parts = rank - 1;

  std::vector<int> coeff(static_cast<std::size_t>(parts) + 1, 0);
  for (int k = 1; k <= parts; ++k) coeff[static_cast<std::size_t>(k)] = linear_coefficient(spec, k);

  // Each s^2 + c s with c >= -1 is >= s^2 - s, so s^2 - s <= n bounds every s.
  int s_max = 0;
  while ((s_max + 1) * s_max <= n) ++s_max;

  std::vector<TruncatedSeries> inv_q;
  std::vector<TruncatedSeries> inv_q2;
  for (int k = 0; k <= s_max; ++k) {
    inv_q.push_back(invert_unit(poch_finite(1, 1, k, n)));
    inv_q2.push_back(invert_unit(poch_finite(2, 2, k, n)));
  }

  TruncatedSeries total(n);
  std::vector<int> s(static_cast<std::size_t>(parts) + 2, 0);
  auto s_at = [&](int j) -> long long {
    if (j <= 0) return -1;  // s_0 = infinity; callers special-case it
    if (j >= rank) return 0;
    return s[static_cast<std::size_t>(j)];
  };

  auto add_term = [&](long long e) {
    assert(e >= 0 && "multisum summand with negative q-power");
    if (e < 0) throw PreconditionError("multisum summand with negative q-power");
    if (e > n) return;
    const int cap = n - static_cast<int>(e);
    TruncatedSeries term = TruncatedSeries::one(cap);
    for (int k = 1; k <= parts - 1; ++k) {
      term *= inv_q[static_cast<std::size_t>(s_at(k) - s_at(k + 1))].truncated(cap);
    }
    const auto& last_table = spec.last_base == LastBase::kQ ? inv_q : inv_q2;
    term *= last_table[static_cast<std::size_t>(s_at(parts))].truncated(cap);

    TruncatedSeries num = TruncatedSeries::one(cap);
    const int si = spec.i;
    switch (spec.numerator) {
      case NumeratorForm::kOne:
        break;
      case NumeratorForm::kOneMinusQsi: {
        const long long a = s_at(si);
        if (a <= cap) num -= TruncatedSeries::monomial(cap, static_cast<int>(a));
        break;
      }
      case NumeratorForm::kOneMinusQsiSprev: {
        if (si >= 2) {
          const long long a = s_at(si) + s_at(si - 1);
          if (a <= cap) num -= TruncatedSeries::monomial(cap, static_cast<int>(a));
        }
        break;
      }
      case NumeratorForm::kOneMinusQsiSlast: {
        const long long a = s_at(si) + s_at(parts);
        if (a <= cap) num -= TruncatedSeries::monomial(cap, static_cast<int>(a));
        break;
      }
      case NumeratorForm::kQslastMinusQsi: {
        num = TruncatedSeries(cap);
        if (s_at(parts) <= cap) num += TruncatedSeries::monomial(cap, static_cast<int>(s_at(parts)));
        if (s_at(si) <= cap) num -= TruncatedSeries::monomial(cap, static_cast<int>(s_at(si)));
        break;
      }
    }
    term *= num;
    total += shift(TruncatedSeries(n, term.coeffs()), static_cast<int>(e));
  };

  // Depth-first over s_1 >= s_2 >= ... >= s_{r-1} >= 0 with the partial
  // exponent as a lower bound (every later s^2 + c s is >= 0).
  std::function<void(int, int, long long)> walk = [&](int k, int cap, long long partial) {
    if (k > parts) {
      add_term(partial);
      return;
    }
    const int c = coeff[static_cast<std::size_t>(k)];
    for (int v = 0; v <= cap; ++v) {
      const long long e = partial + static_cast<long long>(v) * v + static_cast<long long>(c) * v;
      // v^2 + c v is non-decreasing in v for c >= -1.
      if (e > n) break;
      s[static_cast<std::size_t>(k)] = v;
      walk(k + 1, v, e);
    }
    s[static_cast<std::size_t>(k)] = 0;
  };
  walk(1, s_max, 0);
  return total;
}

// ---------------------------------------------------------------------------
// Serialisation

void write_csv(std::ostream& out, const TruncatedSeries& s) {
  out << "degree,coefficient\n";
  for (int d = 0; d <= s.degree_cap(); ++d) out << d << ',' << s[d] << '\n';
}

TruncatedSeries read_csv(std::istream& in) {
  std::string line;
  std::vector<BigInt> coeffs;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      if (line.rfind("degree", 0) == 0) continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw PreconditionError("malformed CSV line: " + line);
    }
    try {
      const int d = std::stoi(line.substr(0, comma));
      if (d != static_cast<int>(coeffs.size())) {
        throw PreconditionError("CSV degrees must be 0, 1, 2, ... in order");
      }
      coeffs.emplace_back(line.substr(comma + 1));
    } catch (const PreconditionError&) {
      throw;
    } catch (const std::invalid_argument&) {
      throw PreconditionError("malformed CSV line: " + line);
    } catch (const std::runtime_error&) {
      throw PreconditionError("malformed CSV line: " + line);
    }
  }
  if (coeffs.empty()) throw PreconditionError("empty coefficient CSV");
  const int n = static_cast<int>(coeffs.size()) - 1;
  return TruncatedSeries(n, std::move(coeffs));
}

std::string to_json(const TruncatedSeries& s) {
  nlohmann::json arr = nlohmann::json::array();
  for (int d = 0; d <= s.degree_cap(); ++d) {
    arr.push_back({{"degree", d}, {"value", s[d].str()}});
  }
  return arr.dump();
}

TruncatedSeries series_from_json(const std::string& text) {
  std::vector<BigInt> coeffs;
  try {
    const nlohmann::json arr = nlohmann::json::parse(text);
    if (!arr.is_array() || arr.empty()) {
      throw PreconditionError("expected a non-empty JSON array of coefficients");
    }
    coeffs.resize(arr.size());
    for (const auto& item : arr) {
      const int d = item.at("degree").get<int>();
      if (d < 0 || d >= static_cast<int>(arr.size())) {
        throw PreconditionError("coefficient degree out of range");
      }
      coeffs[static_cast<std::size_t>(d)] = BigInt(item.at("value").get<std::string>());
    }
  } catch (const nlohmann::json::exception& ex) {
    throw PreconditionError(std::string("malformed coefficient JSON: ") + ex.what());
  } catch (const std::runtime_error& ex) {
    throw PreconditionError(std::string("malformed coefficient value: ") + ex.what());
  }
  const int n = static_cast<int>(coeffs.size()) - 1;
  return TruncatedSeries(n, std::move(coeffs));
}

std::string to_string(const TruncatedSeries& s) {
  std::ostringstream out;
  bool first = true;
  for (int d = 0; d <= s.degree_cap(); ++d) {
    if (s[d].is_zero()) continue;
    BigInt c = s[d];
    const bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) out << "-";
    } else {
      out << (neg ? " - " : " + ");
    }
    first = false;
    if (c != 1 || d == 0) out << c;
    if (d >= 1) out << "q";
    if (d >= 2) out << "^" << d;
  }
  if (first) out << "0";
  out << " + O(q^" << s.degree_cap() + 1 << ")";
  return out.str();
}

}  // namespace qbij
