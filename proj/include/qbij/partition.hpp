#pragma once

// Partitions with zero parts allowed, in both the parts-list and the
// multiplicity-sequence encodings.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace qbij {

using Count = std::int64_t;

// Finite non-increasing sequence of non-negative integers. Zero parts count
// towards the length.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<Count> parts);
  Partition(std::initializer_list<Count> parts)
      : Partition(std::vector<Count>(parts)) {}

  const std::vector<Count>& parts() const { return parts_; }
  std::size_t size() const { return parts_.size(); }
  bool empty() const { return parts_.empty(); }
  Count operator[](std::size_t k) const { return parts_[k]; }

  Count weight() const;
  Count length() const { return static_cast<Count>(parts_.size()); }

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<Count> parts_;
};

// Multiplicity sequence (f_0, f_1, ..., f_L) with f_L > 0, implicit zeros
// beyond L. Construction trims trailing zeros and rejects negative entries.
class FrequencySequence {
 public:
  FrequencySequence() = default;
  explicit FrequencySequence(std::vector<Count> freqs);
  FrequencySequence(std::initializer_list<Count> freqs)
      : FrequencySequence(std::vector<Count>(freqs)) {}

  // f_u, zero past the stored support.
  Count operator[](std::size_t u) const {
    return u < freqs_.size() ? freqs_[u] : 0;
  }
  const std::vector<Count>& values() const { return freqs_; }
  // Number of stored entries: one past the largest part, 0 when empty.
  std::size_t support() const { return freqs_.size(); }
  bool empty() const { return freqs_.empty(); }

  Count weight() const;
  Count length() const;

  friend bool operator==(const FrequencySequence&,
                         const FrequencySequence&) = default;
  friend auto operator<=>(const FrequencySequence& a,
                          const FrequencySequence& b) {
    return a.freqs_ <=> b.freqs_;
  }

 private:
  std::vector<Count> freqs_;
};

FrequencySequence parts_to_freq(const Partition& p);
Partition freq_to_parts(const FrequencySequence& f);

inline Count weight(const FrequencySequence& f) { return f.weight(); }
inline Count length(const FrequencySequence& f) { return f.length(); }

enum class Parity { kEven, kOdd, kAny };

bool parity_matches(Count value, Parity parity);

// lambda_k - lambda_{k+m} >= d for all 1 <= k <= l-m. Evaluated on both
// encodings; debug builds assert that they agree.
bool check_gap_condition(const Partition& p, Count d, Count m);

// Gap condition plus: every run of m consecutive parts spanning fewer than d
// integers has a sum of the given parity.
bool check_gap_parity_condition(const Partition& p, Count d, Count m,
                                Parity parity);

// The two halves of the equivalence, exposed for exhaustive testing.
bool gap_condition_on_parts(const Partition& p, Count d, Count m);
bool gap_condition_on_freqs(const FrequencySequence& f, Count d, Count m);
bool gap_parity_condition_on_parts(const Partition& p, Count d, Count m,
                                   Parity parity);
bool gap_parity_condition_on_freqs(const FrequencySequence& f, Count d,
                                   Count m, Parity parity);

// "f0 f1 ... fL" separated by single spaces.
std::string to_string(const FrequencySequence& f);
std::string to_string(const Partition& p);

}  // namespace qbij
