#pragma once

// Registry of multisum / product / enumeration identities and a runner that
// compares both sides coefficient by coefficient up to a degree N.
//
// Equality is checked only through degree N. Nothing is claimed beyond it.

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "qbij/series.hpp"
#include "qbij/sets.hpp"

namespace qbij {

// One coefficient stream.
struct Source {
  enum class Kind {
    kSetCount,       // per-weight count of a set
    kSetDifference,  // per-weight count of keep \ drop
    kMultisum,
    kProduct,        // triple_product(a, m) / (q)_inf
    kFCount,         // F_{i,r} counts with the i = 0, r, r+1 conventions
  };

  Kind kind = Kind::kProduct;
  std::optional<SetId> set;
  std::optional<SetId> drop;
  MultisumSpec spec;
  int a = 0;
  int m = 1;
  int r = 0;
  int i = 0;

  static Source count(SetId id);
  static Source difference(SetId keep, SetId drop);
  static Source sum(MultisumSpec spec);
  static Source product(int a, int m);
  static Source f_count(int r, int i);

  bool needs_enumeration() const;
  // Stable descriptor, used as the cache key.
  std::string describe() const;
};

// coef * q^shift * source.
struct Term {
  BigInt coef = 1;
  int shift = 0;
  Source source;
};

using Expression = std::vector<Term>;

struct IdentityEntry {
  std::string key;
  std::string description;
  std::function<Expression(int r, int i)> lhs;
  std::function<Expression(int r, int i)> rhs;
  // Legal i for a given r, inclusive.
  std::function<std::pair<int, int>(int r)> i_range;
  bool enumeration_backed = false;
};

const std::vector<IdentityEntry>& registry();
const IdentityEntry* find_entry(const std::string& key);

enum class Side { kLhs, kRhs };

// Throws RangeError for illegal (r, i).
std::vector<BigInt> coefficients(const IdentityEntry& entry, Side side, int r,
                                 int i, int n);
std::vector<BigInt> coefficients(const std::string& key, Side side, int r,
                                 int i, int n);

enum class Status { kOk, kMismatch, kError };

std::string status_name(Status s);

struct VerificationReport {
  std::string key;
  int r = 0;
  int i = 0;
  int n = 0;
  Status status = Status::kOk;
  std::optional<int> mismatch_degree;
  BigInt lhs_value;
  BigInt rhs_value;
  std::vector<BigInt> lhs;
  std::vector<BigInt> rhs;
  std::string error;
  double elapsed_ms = 0.0;

  bool ok() const { return status == Status::kOk; }
};

VerificationReport verify(const IdentityEntry& entry, int r, int i, int n);
VerificationReport verify(const std::string& key, int r, int i, int n);

struct SweepOptions {
  int r_max = 4;
  int n = 40;       // series-vs-series entries
  int n_enum = 25;  // enumeration-backed entries (capped by n)
  int jobs = 1;
};

// Every (entry, r, i) with 2 <= r <= r_max and i in the entry's legal range,
// in registry order, then r, then i. An empty key list yields no reports.
std::vector<VerificationReport> sweep(const std::vector<std::string>& keys,
                                      const SweepOptions& options);

// Drops all cached coefficient streams.
void clear_cache();

void write_table(std::ostream& out, const std::vector<VerificationReport>& reports);
void write_json_lines(std::ostream& out,
                      const std::vector<VerificationReport>& reports);
std::string to_json_line(const VerificationReport& report);

}  // namespace qbij
