#pragma once

#include <stdexcept>
#include <string>

namespace qbij {

// Input violates a documented precondition (invalid shape, sequence not in
// the expected set, f_1 = 0 for decrement_ones, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Rank or index outside the legal range of a set family or identity.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Enumeration would exceed the configured resource bound.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qbij
