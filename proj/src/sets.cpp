#include "qbij/sets.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "qbij/errors.hpp"

namespace qbij {

// ---------------------------------------------------------------------------
// Shape / InsertionSequence

Shape::Shape(int rank, std::vector<Count> s) : rank_(rank), s_(std::move(s)) {
  if (rank_ < 2) throw RangeError("shape rank must be at least 2");
  if (s_.size() != static_cast<std::size_t>(rank_ - 1)) {
    throw PreconditionError("shape of rank " + std::to_string(rank_) +
                            " needs " + std::to_string(rank_ - 1) +
                            " entries, got " + std::to_string(s_.size()));
  }
  for (std::size_t k = 0; k < s_.size(); ++k) {
    if (s_[k] < 0) {
      throw PreconditionError("shape entry s_" + std::to_string(k + 1) +
                              " is negative");
    }
    if (k + 1 < s_.size() && s_[k] < s_[k + 1]) {
      throw PreconditionError("shape is not non-increasing at s_" +
                              std::to_string(k + 1));
    }
  }
}

Shape Shape::empty(int rank) {
  return Shape(rank, std::vector<Count>(static_cast<std::size_t>(
                         std::max(rank - 1, 0)), 0));
}

Count Shape::s(int j) const {
  if (j <= 0) return kInfinity;
  if (j >= rank_) return 0;
  return s_[static_cast<std::size_t>(j - 1)];
}

Count Shape::total() const {
  return std::accumulate(s_.begin(), s_.end(), Count{0});
}

InsertionSequence::InsertionSequence(Shape shape, std::vector<Count> values)
    : shape_(std::move(shape)), values_(std::move(values)) {
  if (static_cast<Count>(values_.size()) != shape_.s1()) {
    throw PreconditionError("insertion sequence has length " +
                            std::to_string(values_.size()) +
                            " but s_1 = " + std::to_string(shape_.s1()));
  }
  for (std::size_t u = 0; u < values_.size(); ++u) {
    if (values_[u] < 0) {
      throw PreconditionError("insertion value lambda_" + std::to_string(u) +
                              " is negative");
    }
  }
  for (int j = 1; j < shape_.rank(); ++j) {
    for (Count u = shape_.s(j + 1); u + 1 < shape_.s(j); ++u) {
      const auto k = static_cast<std::size_t>(u);
      if (values_[k] > values_[k + 1]) {
        throw PreconditionError(
            "segment " + std::to_string(j) +
            " of the insertion sequence decreases at lambda_" +
            std::to_string(k));
      }
    }
  }
}

Count InsertionSequence::sum() const {
  return std::accumulate(values_.begin(), values_.end(), Count{0});
}

Count pair_weight(const InsertionSequence& x) {
  return mu_weight(x.shape()) + x.sum();
}

// ---------------------------------------------------------------------------
// Families and identifiers

namespace {

struct FamilyInfo {
  Family family;
  std::string_view name;
};

constexpr std::array<FamilyInfo, 14> kFamilies{{
    {Family::kT, "T"},
    {Family::kU, "U"},
    {Family::kUtilde, "Utilde"},
    {Family::kA, "A"},
    {Family::kB, "B"},
    {Family::kBtilde, "Btilde"},
    {Family::kE, "E"},
    {Family::kF, "F"},
    {Family::kP, "P"},
    {Family::kQ, "Q"},
    {Family::kR, "R"},
    {Family::kRtilde, "Rtilde"},
    {Family::kS, "S"},
    {Family::kStilde, "Stilde"},
}};

}  // namespace

bool is_pair_side(Family family) {
  switch (family) {
    case Family::kP:
    case Family::kQ:
    case Family::kR:
    case Family::kRtilde:
    case Family::kS:
    case Family::kStilde:
      return true;
    default:
      return false;
  }
}

std::string_view family_name(Family family) {
  for (const auto& info : kFamilies) {
    if (info.family == family) return info.name;
  }
  return "?";
}

std::optional<Family> family_from_name(std::string_view name) {
  for (const auto& info : kFamilies) {
    if (info.name == name) return info.family;
  }
  return std::nullopt;
}

SetId::SetId(Family family, int r, int i) : family_(family), r_(r), i_(i) {
  if (r < 2) throw RangeError("rank r must be at least 2");
  int lo = -1;
  int hi = r - 1;
  switch (family) {
    case Family::kT:
    case Family::kU:
    case Family::kUtilde:
      lo = 0;
      hi = r;
      break;
    case Family::kE:
      lo = 1;
      hi = r;
      break;
    case Family::kF:
      lo = 0;
      hi = r + 1;
      break;
    default:
      break;
  }
  if (i < lo || i > hi) {
    throw RangeError(std::string(family_name(family)) + " index i=" +
                     std::to_string(i) + " outside [" + std::to_string(lo) +
                     ", " + std::to_string(hi) + "] for r=" +
                     std::to_string(r));
  }
}

int SetId::modulus() const {
  if (family_ == Family::kE) return 2 * r_ + 1;
  if (family_ == Family::kF) return 2 * r_;
  return 0;
}

bool SetId::conventionally_empty() const {
  switch (family_) {
    case Family::kT:
    case Family::kU:
    case Family::kUtilde:
    case Family::kF:
      return i_ == 0;
    case Family::kE:
      return false;
    default:
      return i_ == -1;
  }
}

std::string SetId::to_string() const {
  return std::string(family_name(family_)) + "(r=" + std::to_string(r_) +
         ",i=" + std::to_string(i_) + ")";
}

Count member_weight(const SetMember& x) {
  if (const auto* f = std::get_if<FrequencySequence>(&x)) return f->weight();
  return pair_weight(std::get<InsertionSequence>(x));
}

// ---------------------------------------------------------------------------
// Staircase partitions

FrequencySequence mu_of_shape(const Shape& sh) {
  std::vector<Count> f(static_cast<std::size_t>(2 * sh.s1()), 0);
  for (int j = 1; j < sh.rank(); ++j) {
    for (Count u = sh.s(j + 1); u < sh.s(j); ++u) {
      f[static_cast<std::size_t>(2 * u)] = j;
    }
  }
  return FrequencySequence(std::move(f));
}

Count mu_weight(const Shape& sh) {
  Count w = 0;
  for (Count s : sh.values()) w += s * s - s;
  return w;
}

// ---------------------------------------------------------------------------
// Membership

namespace {

// Frequency-side rules shared by the enumerator and the membership test.
struct FreqRules {
  bool empty = false;
  Count f0_cap = 0;
  std::optional<Count> f1_cap;
  std::optional<Count> window_cap;  // f_u + f_{u+1} <= cap
  std::optional<Parity> saturated_parity;
  std::size_t first_parity_window = 0;
  int modulus = 0;  // E/F congruence filter
  int residue = 0;
};

Parity parity_of(Count value) {
  return (value % 2 + 2) % 2 == 0 ? Parity::kEven : Parity::kOdd;
}

FreqRules rules_for(const SetId& id) {
  FreqRules rules;
  const int r = id.r();
  const int i = id.i();
  if (id.conventionally_empty()) {
    rules.empty = true;
    return rules;
  }
  switch (id.family()) {
    case Family::kA:
    case Family::kB:
    case Family::kBtilde:
      rules.f0_cap = i;
      rules.window_cap = r - 1;
      if (id.family() == Family::kB) rules.saturated_parity = parity_of(r - 1 - i);
      if (id.family() == Family::kBtilde) rules.saturated_parity = parity_of(r - i);
      rules.first_parity_window = 0;
      break;
    case Family::kT:
    case Family::kU:
    case Family::kUtilde:
      rules.f0_cap = 0;
      rules.f1_cap = i - 1;
      rules.window_cap = r - 1;
      if (id.family() == Family::kU) rules.saturated_parity = parity_of(i - 1);
      if (id.family() == Family::kUtilde) rules.saturated_parity = parity_of(i);
      rules.first_parity_window = 1;
      break;
    case Family::kE:
      rules.modulus = 2 * r + 1;
      rules.residue = i;
      break;
    case Family::kF:
      if (i == r) {
        throw PreconditionError(
            "F(r=r) has no member predicate; it is defined only through its "
            "counting series");
      }
      rules.modulus = 2 * r;
      rules.residue = (i == r + 1) ? r - 1 : i;
      break;
    default:
      throw PreconditionError(id.to_string() + " is a pair-side set");
  }
  return rules;
}

bool part_allowed(const FreqRules& rules, Count u) {
  if (rules.modulus == 0) return true;
  const Count rem = u % rules.modulus;
  return rem != 0 && rem != rules.residue && rem != rules.modulus - rules.residue;
}

// Window check for (u, u+1) given both entries.
bool window_ok(const FreqRules& rules, std::size_t u, Count fu, Count fnext) {
  if (!rules.window_cap) return true;
  const Count sum = fu + fnext;
  if (sum > *rules.window_cap) return false;
  if (sum == *rules.window_cap && rules.saturated_parity &&
      u >= rules.first_parity_window) {
    const auto uu = static_cast<Count>(u);
    return parity_matches(uu * fu + (uu + 1) * fnext, *rules.saturated_parity);
  }
  return true;
}

bool freq_member(const FreqRules& rules, const FrequencySequence& f) {
  if (rules.empty) return false;
  if (f[0] > rules.f0_cap) return false;
  if (rules.f1_cap && f[1] > *rules.f1_cap) return false;
  for (std::size_t u = 1; u < f.support(); ++u) {
    if (f[u] > 0 && !part_allowed(rules, static_cast<Count>(u))) return false;
  }
  for (std::size_t u = 0; u < f.support(); ++u) {
    if (!window_ok(rules, u, f[u], f[u + 1])) return false;
  }
  return true;
}

// Pair-side rules: a lower bound for the first entry of every non-empty
// segment and a parity for the entries of segment r-1.
struct PairRules {
  bool empty = false;
  bool staircase_bound = false;  // Q/S/Stilde: j + max(j - i, 0)
  std::optional<Parity> last_segment_parity;
};

PairRules pair_rules_for(const SetId& id) {
  PairRules rules;
  if (id.conventionally_empty()) {
    rules.empty = true;
    return rules;
  }
  const int r = id.r();
  const int i = id.i();
  switch (id.family()) {
    case Family::kP:
      break;
    case Family::kR:
      rules.last_segment_parity = parity_of(r - 1 - i);
      break;
    case Family::kRtilde:
      rules.last_segment_parity = parity_of(r - i);
      break;
    case Family::kQ:
      rules.staircase_bound = true;
      break;
    case Family::kS:
      rules.staircase_bound = true;
      rules.last_segment_parity = parity_of(i);
      break;
    case Family::kStilde:
      rules.staircase_bound = true;
      rules.last_segment_parity = parity_of(i - 1);
      break;
    default:
      throw PreconditionError(id.to_string() + " is a frequency-side set");
  }
  return rules;
}

Count segment_lower_bound(const PairRules& rules, int j, int i) {
  if (rules.staircase_bound) return j + std::max(j - i, 0);
  return std::max(j - i, 0);
}

}  // namespace

bool member(const SetId& id, const FrequencySequence& f) {
  if (id.pair_side()) {
    throw PreconditionError(id.to_string() +
                            " expects a (shape, insertion sequence) pair");
  }
  return freq_member(rules_for(id), f);
}

bool member(const SetId& id, const InsertionSequence& x) {
  if (!id.pair_side()) {
    throw PreconditionError(id.to_string() + " expects a frequency sequence");
  }
  const PairRules rules = pair_rules_for(id);
  const Shape& sh = x.shape();
  if (sh.rank() != id.r()) {
    throw PreconditionError("shape rank " + std::to_string(sh.rank()) +
                            " does not match " + id.to_string());
  }
  if (rules.empty) return false;
  for (int j = 1; j < sh.rank(); ++j) {
    const Count start = sh.s(j + 1);
    if (start >= sh.s(j)) continue;
    if (x[static_cast<std::size_t>(start)] <
        segment_lower_bound(rules, j, id.i())) {
      return false;
    }
  }
  if (rules.last_segment_parity) {
    for (Count u = 0; u < sh.s(sh.rank() - 1); ++u) {
      if (!parity_matches(x[static_cast<std::size_t>(u)],
                          *rules.last_segment_parity)) {
        return false;
      }
    }
  }
  return true;
}

bool member(const SetId& id, const SetMember& x) {
  return std::visit([&](const auto& v) { return member(id, v); }, x);
}

std::optional<std::size_t> first_a_violation(const FrequencySequence& f,
                                             int r) {
  if (f[0] > r - 1) return std::size_t{0};
  for (std::size_t u = 0; u < f.support(); ++u) {
    if (f[u] + f[u + 1] > r - 1) return u;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

class Budget {
 public:
  explicit Budget(const EnumerationLimits& limits) : limits_(limits) {}
  void tick() {
    if (++seen_ > limits_.max_items) {
      throw CapacityError("enumeration exceeded " +
                          std::to_string(limits_.max_items) + " members");
    }
  }

 private:
  const EnumerationLimits& limits_;
  std::size_t seen_ = 0;
};

class FreqEnumerator {
 public:
  FreqEnumerator(const FreqRules& rules, Count max_weight, Budget& budget,
                 const std::function<void(const SetMember&)>& visit)
      : rules_(rules), max_weight_(max_weight), budget_(budget), visit_(visit) {
    current_.assign(static_cast<std::size_t>(max_weight) + 2, 0);
  }

  void run() {
    if (rules_.empty) return;
    for (Count f0 = 0; f0 <= rules_.f0_cap; ++f0) {
      if (rules_.window_cap && f0 > *rules_.window_cap) break;
      current_[0] = f0;
      descend(1, max_weight_);
    }
    current_[0] = 0;
  }

 private:
  void descend(std::size_t u, Count remaining) {
    const Count prev = current_[u - 1];
    if (static_cast<Count>(u) > remaining) {
      // No further part fits: close the last window with f_u = 0.
      if (!window_ok(rules_, u - 1, prev, 0)) return;
      budget_.tick();
      visit_(SetMember(FrequencySequence(std::vector<Count>(
          current_.begin(), current_.begin() + static_cast<long>(u)))));
      return;
    }
    Count cap = remaining / static_cast<Count>(u);
    if (rules_.window_cap) cap = std::min(cap, *rules_.window_cap - prev);
    if (u == 1 && rules_.f1_cap) cap = std::min(cap, *rules_.f1_cap);
    if (!part_allowed(rules_, static_cast<Count>(u))) cap = 0;
    for (Count fu = 0; fu <= cap; ++fu) {
      if (!window_ok(rules_, u - 1, prev, fu)) continue;
      current_[u] = fu;
      descend(u + 1, remaining - static_cast<Count>(u) * fu);
    }
    current_[u] = 0;
  }

  const FreqRules& rules_;
  Count max_weight_;
  Budget& budget_;
  const std::function<void(const SetMember&)>& visit_;
  std::vector<Count> current_;
};

class PairEnumerator {
 public:
  PairEnumerator(const SetId& id, const PairRules& rules, Count max_weight,
                 Budget& budget,
                 const std::function<void(const SetMember&)>& visit)
      : id_(id), rules_(rules), max_weight_(max_weight), budget_(budget),
        visit_(visit) {}

  void run() {
    if (rules_.empty) return;
    for (const Shape& sh : shapes_up_to(id_.r(), max_weight_)) {
      run_shape(sh);
    }
  }

 private:
  void run_shape(const Shape& sh) {
    shape_ = &sh;
    const int r = sh.rank();
    const auto s1 = static_cast<std::size_t>(sh.s1());
    segment_of_.assign(s1, 0);
    for (int j = 1; j < r; ++j) {
      for (Count u = sh.s(j + 1); u < sh.s(j); ++u) {
        segment_of_[static_cast<std::size_t>(u)] = j;
      }
    }
    // Minimal weight of all positions from u onwards.
    min_tail_.assign(s1 + 1, 0);
    for (std::size_t u = s1; u-- > 0;) {
      const int j = segment_of_[u];
      min_tail_[u] = min_tail_[u + 1] + first_value(j, 0, true);
    }
    values_.assign(s1, 0);
    descend(0, max_weight_ - mu_weight(sh));
  }

  // Smallest admissible value at a position of segment j.
  Count first_value(int j, Count floor, bool segment_start) const {
    Count v = floor;
    if (segment_start) v = std::max(v, segment_lower_bound(rules_, j, id_.i()));
    if (j == id_.r() - 1 && rules_.last_segment_parity &&
        !parity_matches(v, *rules_.last_segment_parity)) {
      ++v;
    }
    return v;
  }

  void descend(std::size_t u, Count remaining) {
    if (u == values_.size()) {
      budget_.tick();
      visit_(SetMember(InsertionSequence(*shape_, values_)));
      return;
    }
    const int j = segment_of_[u];
    const bool start = (u == 0 || segment_of_[u - 1] != j);
    const Count floor = start ? 0 : values_[u - 1];
    const Count segment_end = shape_->s(j);
    const Count rest_of_segment = segment_end - static_cast<Count>(u);
    const Count later = min_tail_[static_cast<std::size_t>(segment_end)];
    const Count step =
        (j == id_.r() - 1 && rules_.last_segment_parity) ? 2 : 1;
    for (Count v = first_value(j, floor, start);
         v * rest_of_segment + later <= remaining; v += step) {
      values_[u] = v;
      descend(u + 1, remaining - v);
    }
  }

  const SetId& id_;
  const PairRules& rules_;
  Count max_weight_;
  Budget& budget_;
  const std::function<void(const SetMember&)>& visit_;
  const Shape* shape_ = nullptr;
  std::vector<int> segment_of_;
  std::vector<Count> min_tail_;
  std::vector<Count> values_;
};

void check_weight_bound(Count max_weight, const EnumerationLimits& limits) {
  if (max_weight < 0) throw PreconditionError("max weight must be >= 0");
  if (max_weight > limits.max_weight) {
    throw CapacityError("max weight " + std::to_string(max_weight) +
                        " exceeds the configured bound " +
                        std::to_string(limits.max_weight));
  }
}

}  // namespace

void for_each_member(const SetId& id, Count max_weight,
                     const std::function<void(const SetMember&)>& visit,
                     const EnumerationLimits& limits) {
  check_weight_bound(max_weight, limits);
  Budget budget(limits);
  if (id.pair_side()) {
    const PairRules rules = pair_rules_for(id);
    PairEnumerator(id, rules, max_weight, budget, visit).run();
  } else {
    const FreqRules rules = rules_for(id);
    FreqEnumerator(rules, max_weight, budget, visit).run();
  }
}

std::vector<SetMember> enumerate(const SetId& id, Count max_weight,
                                 const EnumerationLimits& limits) {
  std::vector<SetMember> out;
  for_each_member(
      id, max_weight, [&](const SetMember& x) { out.push_back(x); }, limits);
  return out;
}

std::vector<Count> count_by_weight(const SetId& id, Count n,
                                   const EnumerationLimits& limits) {
  std::vector<Count> counts(static_cast<std::size_t>(std::max<Count>(n, 0)) + 1,
                            0);
  for_each_member(
      id, n,
      [&](const SetMember& x) {
        ++counts[static_cast<std::size_t>(member_weight(x))];
      },
      limits);
  return counts;
}

std::vector<Count> count_difference_by_weight(const SetId& keep,
                                              const SetId& drop, Count n,
                                              const EnumerationLimits& limits) {
  if (keep.pair_side() != drop.pair_side()) {
    throw PreconditionError("set difference across sides: " +
                            keep.to_string() + " minus " + drop.to_string());
  }
  std::vector<Count> counts(static_cast<std::size_t>(std::max<Count>(n, 0)) + 1,
                            0);
  for_each_member(
      keep, n,
      [&](const SetMember& x) {
        if (!member(drop, x)) {
          ++counts[static_cast<std::size_t>(member_weight(x))];
        }
      },
      limits);
  return counts;
}

std::vector<Shape> shapes_up_to(int rank, Count max_weight) {
  if (rank < 2) throw RangeError("rank must be at least 2");
  std::vector<Shape> out;
  std::vector<Count> s(static_cast<std::size_t>(rank - 1), 0);
  std::function<void(std::size_t, Count, Count)> fill =
      [&](std::size_t k, Count cap, Count remaining) {
        if (k == s.size()) {
          out.emplace_back(rank, s);
          return;
        }
        for (Count v = cap; v >= 0; --v) {
          if (v * v - v > remaining) continue;
          s[k] = v;
          fill(k + 1, v, remaining - (v * v - v));
        }
        s[k] = 0;
      };
  Count top = 0;
  while ((top + 1) * (top + 1) - (top + 1) <= max_weight) ++top;
  fill(0, top, max_weight);
  return out;
}

// ---------------------------------------------------------------------------
// Index maps

FrequencySequence strip_leading_freq(const FrequencySequence& f) {
  if (f.empty()) return {};
  return FrequencySequence(
      std::vector<Count>(f.values().begin() + 1, f.values().end()));
}

FrequencySequence prepend_freq(const FrequencySequence& f, Count i) {
  if (i < 0) throw PreconditionError("prepended multiplicity must be >= 0");
  std::vector<Count> out;
  out.reserve(f.support() + 1);
  out.push_back(i);
  out.insert(out.end(), f.values().begin(), f.values().end());
  return FrequencySequence(std::move(out));
}

FrequencySequence decrement_ones(const FrequencySequence& f) {
  if (f[1] < 1) {
    throw PreconditionError("decrement_ones needs at least one part equal to 1");
  }
  std::vector<Count> out = f.values();
  --out[1];
  return FrequencySequence(std::move(out));
}

}  // namespace qbij
