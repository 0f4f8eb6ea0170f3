#pragma once

// Text and JSON renderings of bijection runs.
//
// Text layout, forward:
//   # forward r=4 shape 4 2 2 lambda 5 6 1 3
//   3 0 3 0 1 0 1 0              <- initial multiplicities
//   step 3 1 10 3                <- u g_u n_u lambda_u
//   3 0 3 0 1 0 0 0 0 1          <- snapshot after the step
//   ...
//   0 1 2 1 1 2 0 0 0 1          <- final multiplicities
// Backward runs use "# backward r=4 freq ..." as header and end with
// "shape ..." and "kappa ..." lines. Empty sequences print as "()".

#include <string>
#include <vector>

#include "qbij/bijection.hpp"

namespace qbij {

std::string join_counts(const std::vector<Count>& values);
// Parses comma- and/or space-separated non-negative integers; "" and "()"
// give the empty list.
std::vector<Count> parse_counts(const std::string& text);

std::string forward_text(const Shape& sh, const InsertionSequence& lam,
                         const ForwardResult& result);
std::string backward_text(const FrequencySequence& nu,
                          const BackwardResult& result);

// A run in the documented JSON schema:
// {"direction", "r", "shape", "lambda", "freq", "trace":[{"u","gauge","pivot",
//  "delta","snapshot"}], "weight", "length"}.
struct RunRecord {
  Direction direction = Direction::kForward;
  int r = 0;
  std::vector<Count> shape;
  std::vector<Count> lambda;
  std::vector<Count> freq;
  std::vector<StepRecord> trace;
  Count weight = 0;
  Count length = 0;

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

RunRecord record_forward(const Shape& sh, const InsertionSequence& lam,
                         const ForwardResult& result);
RunRecord record_backward(const FrequencySequence& nu,
                          const BackwardResult& result);

std::string to_json(const RunRecord& run);
RunRecord run_from_json(const std::string& text);
// Re-renders a parsed record in the text layout.
std::string to_text(const RunRecord& run);

}  // namespace qbij
