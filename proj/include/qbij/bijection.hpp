#pragma once

// The insertion map Lambda (staircase + insertion sequence -> partition in
// A_r) and its inverse Gamma, with per-step traces and invariant checking.

#include <optional>
#include <string>
#include <vector>

#include "qbij/partition.hpp"
#include "qbij/sets.hpp"

namespace qbij {

enum class Direction { kForward, kBackward };

// One step of either map. Forward: gauge = g_u, pivot = n_u, delta = lambda_u,
// snapshot = theta^(u). Backward: gauge = h_u, pivot = m_u, delta = kappa_u,
// snapshot = eta^(u+1). Snapshots are raw multiplicity vectors with trailing
// zeros trimmed; they are kept raw so that checks can run on corrupted data.
struct StepRecord {
  Count u = 0;
  Count gauge = 0;
  Count pivot = 0;
  Count delta = 0;
  std::vector<Count> snapshot;

  friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

struct BijectionTrace {
  Direction direction = Direction::kForward;
  int r = 0;
  std::vector<StepRecord> steps;  // in execution order
  std::vector<Count> initial;
  std::vector<Count> final;
  bool snapshots_kept = true;
};

struct BijectionOptions {
  // When false, per-step snapshots are not retained (gauges, pivots and
  // deltas still are).
  bool keep_snapshots = true;
};

// max{j in 0..r-1 : s_j > u} with s_0 = infinity.
Count gauge_forward(const Shape& sh, Count u);

struct ForwardResult {
  FrequencySequence freq;
  BijectionTrace trace;
};

ForwardResult lambda_forward(const Shape& sh, const InsertionSequence& lam,
                             const BijectionOptions& options = {});
ForwardResult lambda_forward(const InsertionSequence& x,
                             const BijectionOptions& options = {});

struct BackwardResult {
  Shape shape;
  InsertionSequence kappa;
  BijectionTrace trace;
};

// Requires nu in A_r; otherwise throws PreconditionError naming the first
// violated window.
BackwardResult gamma_backward(const FrequencySequence& nu, int r,
                              const BijectionOptions& options = {});

struct InvariantViolation {
  std::size_t step = 0;  // index into trace.steps
  std::string clause;
  std::string message;
};

struct InvariantReport {
  std::vector<InvariantViolation> violations;
  std::size_t steps_checked = 0;
  bool ok() const { return violations.empty(); }
};

// Forward traces are checked against the shape they were produced from.
InvariantReport check_step_invariants(const BijectionTrace& trace,
                                      const Shape& sh);
// Backward traces only need the rank.
InvariantReport check_step_invariants(const BijectionTrace& trace, int r);

struct InducedReport {
  bool ok = true;
  SetId pair_side;
  SetId freq_side;
  Count max_weight = 0;
  std::vector<Count> pair_counts;
  std::vector<Count> freq_counts;
  std::size_t forward_checked = 0;
  std::size_t backward_checked = 0;
  std::optional<std::string> counterexample;
};

// The six legal pairs at matching r: (P,i)-(A,i), (Q,i)-(T,i+1), (R,i)-(B,i),
// (Rtilde,i)-(Btilde,i), (S,i)-(U,i+1), (Stilde,i)-(Utilde,i+1).
bool is_induced_pair(const SetId& pair_side, const SetId& freq_side);
SetId induced_partner(const SetId& pair_side);

// Runs Lambda over every pair-side member and Gamma over every frequency-side
// member of weight <= max_weight, checking the images land in the partner
// set and per-weight counts agree.
InducedReport verify_induced_membership(const SetId& pair_side,
                                        const SetId& freq_side,
                                        Count max_weight,
                                        const EnumerationLimits& limits = {});

std::string direction_name(Direction d);

}  // namespace qbij
