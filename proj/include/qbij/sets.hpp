#pragma once

// Named families of partition sets, the staircase partitions they are built
// from, and exhaustive enumerators used as counting oracles.

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qbij/partition.hpp"

namespace qbij {

// s_1 >= ... >= s_{r-1} >= 0 for a rank r >= 2. s_0 = infinity and s_r = 0
// are implicit.
class Shape {
 public:
  Shape(int rank, std::vector<Count> s);
  Shape(int rank, std::initializer_list<Count> s)
      : Shape(rank, std::vector<Count>(s)) {}

  // All-zero shape of the given rank.
  static Shape empty(int rank);

  int rank() const { return rank_; }
  const std::vector<Count>& values() const { return s_; }
  // s_j for 0 <= j <= r; s_0 is reported as kInfinity.
  Count s(int j) const;
  Count s1() const { return s(1); }
  Count total() const;

  static constexpr Count kInfinity = std::numeric_limits<Count>::max();

  friend bool operator==(const Shape&, const Shape&) = default;

 private:
  int rank_;
  std::vector<Count> s_;
};

// (lambda_0, ..., lambda_{s_1 - 1}) where every segment
// (lambda_{s_{j+1}}, ..., lambda_{s_j - 1}) is non-decreasing.
class InsertionSequence {
 public:
  InsertionSequence(Shape shape, std::vector<Count> values);

  const Shape& shape() const { return shape_; }
  const std::vector<Count>& values() const { return values_; }
  Count operator[](std::size_t u) const { return values_[u]; }
  std::size_t size() const { return values_.size(); }
  Count sum() const;

  friend bool operator==(const InsertionSequence&,
                         const InsertionSequence&) = default;

 private:
  Shape shape_;
  std::vector<Count> values_;
};

// Total weight |mu(shape)| + |lambda| of a pair-side object.
Count pair_weight(const InsertionSequence& x);

enum class Family {
  // frequency side
  kT,
  kU,
  kUtilde,
  kA,
  kB,
  kBtilde,
  kE,  // parts avoiding 0, +-i mod 2r+1
  kF,  // parts avoiding 0, +-i mod 2r
  // pair side
  kP,
  kQ,
  kR,
  kRtilde,
  kS,
  kStilde,
};

bool is_pair_side(Family family);
std::string_view family_name(Family family);
std::optional<Family> family_from_name(std::string_view name);

// A family at a given (r, i). The constructor enforces the index ranges:
// T/U/Utilde 0 <= i <= r, A/B/Btilde and the pair side -1 <= i <= r-1,
// E 1 <= i <= r, F 0 <= i <= r+1. The empty conventions (i = -1, T/U/Utilde
// at i = 0, F at i = 0) and F_{r+1,r} = F_{r-1,r} are honoured by member().
class SetId {
 public:
  SetId(Family family, int r, int i);

  Family family() const { return family_; }
  int r() const { return r_; }
  int i() const { return i_; }
  bool pair_side() const { return is_pair_side(family_); }
  // 2r+1 for E, 2r for F, 0 otherwise.
  int modulus() const;
  // Members are known to be absent by convention.
  bool conventionally_empty() const;

  std::string to_string() const;

  friend bool operator==(const SetId&, const SetId&) = default;

 private:
  Family family_;
  int r_;
  int i_;
};

using SetMember = std::variant<FrequencySequence, InsertionSequence>;

Count member_weight(const SetMember& x);

// Staircase partition: (f_{2u}, f_{2u+1}) = (j, 0) for s_{j+1} <= u < s_j.
FrequencySequence mu_of_shape(const Shape& sh);
// sum s_k^2 - sum s_k.
Count mu_weight(const Shape& sh);

bool member(const SetId& id, const FrequencySequence& f);
bool member(const SetId& id, const InsertionSequence& x);
bool member(const SetId& id, const SetMember& x);

// Membership of A_r = A_{r-1,r}; returns the first index u with
// f_u + f_{u+1} > r - 1 (or 0 when f_0 > r - 1), nullopt when in A_r.
std::optional<std::size_t> first_a_violation(const FrequencySequence& f,
                                             int r);

struct EnumerationLimits {
  Count max_weight = 64;
  std::size_t max_items = 20'000'000;
};

// Calls visit(member) for every member of weight <= max_weight exactly once.
// Frequency-side members are visited as FrequencySequence, pair-side members
// as InsertionSequence.
void for_each_member(const SetId& id, Count max_weight,
                     const std::function<void(const SetMember&)>& visit,
                     const EnumerationLimits& limits = {});

std::vector<SetMember> enumerate(const SetId& id, Count max_weight,
                                 const EnumerationLimits& limits = {});

// Entry n is the number of members of weight exactly n, 0 <= n <= N.
// F_{r,r} has no member predicate and is rejected here.
std::vector<Count> count_by_weight(const SetId& id, Count n,
                                   const EnumerationLimits& limits = {});

// Per-weight counts of members of `keep` that are not members of `drop`.
std::vector<Count> count_difference_by_weight(
    const SetId& keep, const SetId& drop, Count n,
    const EnumerationLimits& limits = {});

// All shapes of rank r with mu_weight <= max_weight, in lexicographically
// decreasing order of (s_1, s_2, ...).
std::vector<Shape> shapes_up_to(int rank, Count max_weight);

// (f_0, f_1, ...) -> (f_1, f_2, ...).
FrequencySequence strip_leading_freq(const FrequencySequence& f);
// (f_1, f_2, ...) -> (i, f_1, f_2, ...).
FrequencySequence prepend_freq(const FrequencySequence& f, Count i);
// Removes one part equal to 1. Requires f_1 >= 1.
FrequencySequence decrement_ones(const FrequencySequence& f);

}  // namespace qbij
