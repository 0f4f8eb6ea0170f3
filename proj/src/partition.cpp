#include "qbij/partition.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>

#include "qbij/errors.hpp"

namespace qbij {

Partition::Partition(std::vector<Count> parts) : parts_(std::move(parts)) {
  for (std::size_t k = 0; k < parts_.size(); ++k) {
    if (parts_[k] < 0) {
      throw PreconditionError("partition has a negative part at position " +
                              std::to_string(k));
    }
    if (k + 1 < parts_.size() && parts_[k] < parts_[k + 1]) {
      throw PreconditionError("partition is not non-increasing at position " +
                              std::to_string(k));
    }
  }
}

Count Partition::weight() const {
  return std::accumulate(parts_.begin(), parts_.end(), Count{0});
}

FrequencySequence::FrequencySequence(std::vector<Count> freqs)
    : freqs_(std::move(freqs)) {
  for (std::size_t u = 0; u < freqs_.size(); ++u) {
    if (freqs_[u] < 0) {
      throw PreconditionError("negative multiplicity at index " +
                              std::to_string(u));
    }
  }
  while (!freqs_.empty() && freqs_.back() == 0) freqs_.pop_back();
}

Count FrequencySequence::weight() const {
  Count w = 0;
  for (std::size_t u = 0; u < freqs_.size(); ++u) {
    w += static_cast<Count>(u) * freqs_[u];
  }
  return w;
}

Count FrequencySequence::length() const {
  return std::accumulate(freqs_.begin(), freqs_.end(), Count{0});
}

FrequencySequence parts_to_freq(const Partition& p) {
  if (p.empty()) return {};
  std::vector<Count> f(static_cast<std::size_t>(p[0]) + 1, 0);
  for (Count part : p.parts()) ++f[static_cast<std::size_t>(part)];
  return FrequencySequence(std::move(f));
}

Partition freq_to_parts(const FrequencySequence& f) {
  std::vector<Count> parts;
  parts.reserve(static_cast<std::size_t>(f.length()));
  for (std::size_t u = f.support(); u-- > 0;) {
    parts.insert(parts.end(), static_cast<std::size_t>(f[u]),
                 static_cast<Count>(u));
  }
  return Partition(std::move(parts));
}

bool parity_matches(Count value, Parity parity) {
  switch (parity) {
    case Parity::kEven:
      return value % 2 == 0;
    case Parity::kOdd:
      return value % 2 != 0;
    case Parity::kAny:
      return true;
  }
  return true;
}

namespace {

void require_window(Count d, Count m) {
  if (d < 1 || m < 1) {
    throw PreconditionError("gap condition needs d >= 1 and m >= 1");
  }
}

}  // namespace

bool gap_condition_on_parts(const Partition& p, Count d, Count m) {
  const auto len = static_cast<Count>(p.size());
  for (Count k = 0; k + m < len; ++k) {
    if (p[static_cast<std::size_t>(k)] - p[static_cast<std::size_t>(k + m)] <
        d) {
      return false;
    }
  }
  return true;
}

bool gap_condition_on_freqs(const FrequencySequence& f, Count d, Count m) {
  const auto support = static_cast<Count>(f.support());
  for (Count u = 0; u < support; ++u) {
    Count window = 0;
    for (Count t = u; t < u + d; ++t) window += f[static_cast<std::size_t>(t)];
    if (window > m) return false;
  }
  return true;
}

bool gap_parity_condition_on_parts(const Partition& p, Count d, Count m,
                                   Parity parity) {
  if (!gap_condition_on_parts(p, d, m)) return false;
  const auto len = static_cast<Count>(p.size());
  for (Count k = 0; k + m - 1 < len; ++k) {
    const auto first = static_cast<std::size_t>(k);
    const auto last = static_cast<std::size_t>(k + m - 1);
    if (p[first] - p[last] <= d - 1) {
      Count sum = 0;
      for (std::size_t t = first; t <= last; ++t) sum += p[t];
      if (!parity_matches(sum, parity)) return false;
    }
  }
  return true;
}

bool gap_parity_condition_on_freqs(const FrequencySequence& f, Count d,
                                   Count m, Parity parity) {
  if (!gap_condition_on_freqs(f, d, m)) return false;
  const auto support = static_cast<Count>(f.support());
  for (Count u = 0; u < support; ++u) {
    Count window = 0;
    Count weighted = 0;
    for (Count t = u; t < u + d; ++t) {
      window += f[static_cast<std::size_t>(t)];
      weighted += t * f[static_cast<std::size_t>(t)];
    }
    if (window == m && !parity_matches(weighted, parity)) return false;
  }
  return true;
}

bool check_gap_condition(const Partition& p, Count d, Count m) {
  require_window(d, m);
  const bool on_freqs = gap_condition_on_freqs(parts_to_freq(p), d, m);
  assert(on_freqs == gap_condition_on_parts(p, d, m));
  return on_freqs;
}

bool check_gap_parity_condition(const Partition& p, Count d, Count m,
                                Parity parity) {
  require_window(d, m);
  const bool on_freqs =
      gap_parity_condition_on_freqs(parts_to_freq(p), d, m, parity);
  assert(on_freqs == gap_parity_condition_on_parts(p, d, m, parity));
  return on_freqs;
}

namespace {

std::string join(const std::vector<Count>& values) {
  std::ostringstream out;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) out << ' ';
    out << values[k];
  }
  return out.str();
}

}  // namespace

std::string to_string(const FrequencySequence& f) { return join(f.values()); }
std::string to_string(const Partition& p) { return join(p.parts()); }

}  // namespace qbij
