#include "qbij/bijection.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "qbij/errors.hpp"

namespace qbij {

namespace {

// Dense multiplicity buffer that reads zero and grows on write past the end.
class Buffer {
 public:
  Buffer(const std::vector<Count>& init, std::size_t reserve)
      : data_(init) {
    data_.resize(std::max(reserve, init.size()), 0);
  }

  Count get(Count j) const {
    const auto k = static_cast<std::size_t>(j);
    return k < data_.size() ? data_[k] : 0;
  }
  void set(Count j, Count v) {
    const auto k = static_cast<std::size_t>(j);
    if (k >= data_.size()) data_.resize(k + 1, 0);
    data_[k] = v;
  }
  std::vector<Count> trimmed() const {
    std::vector<Count> out = data_;
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
  }

 private:
  std::vector<Count> data_;
};

Count vec_weight(const std::vector<Count>& f) {
  Count w = 0;
  for (std::size_t j = 0; j < f.size(); ++j) w += static_cast<Count>(j) * f[j];
  return w;
}

Count vec_length(const std::vector<Count>& f) {
  return std::accumulate(f.begin(), f.end(), Count{0});
}

std::string join(const std::vector<Count>& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) out += ' ';
    out += std::to_string(v[k]);
  }
  return out;
}

Count at(const std::vector<Count>& f, Count j) {
  const auto k = static_cast<std::size_t>(j);
  return (j >= 0 && k < f.size()) ? f[k] : 0;
}

// max{f_j + f_{j+1} : j >= from}.
Count window_max(const std::vector<Count>& f, Count from) {
  Count best = 0;
  for (Count j = from; j < static_cast<Count>(f.size()); ++j) {
    best = std::max(best, at(f, j) + at(f, j + 1));
  }
  return best;
}

// min{j >= from : f_{j-2} + f_{j-1} = target}, or -1 if none.
Count first_window_hitting(const std::vector<Count>& f, Count from,
                           Count target) {
  for (Count j = from; j <= static_cast<Count>(f.size()) + 1; ++j) {
    if (at(f, j - 2) + at(f, j - 1) == target) return j;
  }
  return -1;
}

}  // namespace

std::string direction_name(Direction d) {
  return d == Direction::kForward ? "forward" : "backward";
}

Count gauge_forward(const Shape& sh, Count u) {
  if (u < 0) throw PreconditionError("gauge_forward needs u >= 0");
  Count g = 0;
  for (int j = 1; j < sh.rank(); ++j) {
    if (sh.s(j) > u) g = j;
  }
  return g;
}

ForwardResult lambda_forward(const Shape& sh, const InsertionSequence& lam,
                             const BijectionOptions& options) {
  if (!(lam.shape() == sh)) {
    throw PreconditionError("insertion sequence was built for another shape");
  }
  const std::vector<Count> mu = mu_of_shape(sh).values();
  const Count s1 = sh.s1();
  Buffer theta(mu, static_cast<std::size_t>(2 * s1 + lam.sum() + 2));

  BijectionTrace trace;
  trace.direction = Direction::kForward;
  trace.r = sh.rank();
  trace.initial = mu;
  trace.snapshots_kept = options.keep_snapshots;
  trace.steps.reserve(static_cast<std::size_t>(s1));

  for (Count u = s1 - 1; u >= 0; --u) {
    const Count g = gauge_forward(sh, u);
    const Count target = lam[static_cast<std::size_t>(u)];
    // n_u: first t >= 2u+2 whose running sum of g - (theta_t + theta_{t-1})
    // reaches lambda_u. Every term is non-negative, and past the support
    // each term equals g >= 1, so the scan terminates.
    Count acc = 0;
    Count n = 2 * u + 2;
    for (;; ++n) {
      acc += g - (theta.get(n) + theta.get(n - 1));
      if (acc >= target) break;
    }
    // acc now includes the term at n; the formula for theta'_{n-1} needs the
    // sum up to n-1.
    const Count before_n = acc - (g - (theta.get(n) + theta.get(n - 1)));
    const Count last = theta.get(n - 1) + target - before_n;
    for (Count j = 2 * u; j < n - 2; ++j) theta.set(j, theta.get(j + 2));
    theta.set(n - 1, last);
    theta.set(n - 2, g - last);

    StepRecord step{u, g, n, target, {}};
    if (options.keep_snapshots) step.snapshot = theta.trimmed();
    trace.steps.push_back(std::move(step));
  }

  FrequencySequence out(theta.trimmed());
  trace.final = out.values();
  return {std::move(out), std::move(trace)};
}

ForwardResult lambda_forward(const InsertionSequence& x,
                             const BijectionOptions& options) {
  return lambda_forward(x.shape(), x, options);
}

BackwardResult gamma_backward(const FrequencySequence& nu, int r,
                              const BijectionOptions& options) {
  if (r < 2) throw RangeError("rank r must be at least 2");
  if (auto bad = first_a_violation(nu, r)) {
    std::ostringstream msg;
    if (*bad == 0 && nu[0] > r - 1) {
      msg << "input is not in A_" << r << ": f_0 = " << nu[0] << " > "
          << r - 1;
    } else {
      msg << "input is not in A_" << r << ": window at u = " << *bad
          << " has f_u + f_{u+1} = " << nu[*bad] + nu[*bad + 1] << " > "
          << r - 1;
    }
    throw PreconditionError(msg.str());
  }

  const std::vector<Count>& init = nu.values();
  Buffer eta(init, init.size() + 2 * static_cast<std::size_t>(nu.length()) + 4);

  BijectionTrace trace;
  trace.direction = Direction::kBackward;
  trace.r = r;
  trace.initial = init;
  trace.snapshots_kept = options.keep_snapshots;

  std::vector<Count> kappa;
  std::vector<Count> gauges;
  Count support = static_cast<Count>(init.size());
  for (Count u = 0;; ++u) {
    Count h = 0;
    for (Count j = 2 * u; j < support; ++j) {
      h = std::max(h, eta.get(j) + eta.get(j + 1));
    }
    if (h == 0) break;
    Count m = 2 * u + 2;
    while (eta.get(m - 2) + eta.get(m - 1) != h) ++m;
    Count k = h - eta.get(2 * u);
    for (Count j = 2 * u; j <= m - 3; ++j) {
      k += h - (eta.get(j) + eta.get(j + 1));
    }
    for (Count j = m - 1; j >= 2 * u + 2; --j) eta.set(j, eta.get(j - 2));
    eta.set(2 * u, h);
    eta.set(2 * u + 1, 0);
    support = std::max(support, m);

    kappa.push_back(k);
    gauges.push_back(h);
    StepRecord step{u, h, m, k, {}};
    if (options.keep_snapshots) step.snapshot = eta.trimmed();
    trace.steps.push_back(std::move(step));
  }

  // s_j = min{u : h_u <= j-1}, with h_u = 0 from u = U on.
  std::vector<Count> s(static_cast<std::size_t>(r - 1), 0);
  for (int j = 1; j < r; ++j) {
    Count u = 0;
    while (u < static_cast<Count>(gauges.size()) &&
           gauges[static_cast<std::size_t>(u)] > j - 1) {
      ++u;
    }
    s[static_cast<std::size_t>(j - 1)] = u;
  }
  Shape shape(r, std::move(s));
  trace.final = eta.trimmed();
  InsertionSequence seq(shape, std::move(kappa));
  return {std::move(shape), std::move(seq), std::move(trace)};
}

// ---------------------------------------------------------------------------
// Invariant checking

namespace {

class Checker {
 public:
  explicit Checker(InvariantReport& report) : report_(report) {}

  void require(bool cond, std::size_t step, const char* clause,
               const std::string& message) {
    if (!cond) report_.violations.push_back({step, clause, message});
  }

 private:
  InvariantReport& report_;
};

std::string step_label(Count u) { return "step u=" + std::to_string(u) + ": "; }

// Clauses shared by both directions for the transition prev -> cur.
void check_common(Checker& c, std::size_t idx, const StepRecord& st,
                  const std::vector<Count>& prev, int r) {
  const std::vector<Count>& cur = st.snapshot;
  const std::string where = step_label(st.u);
  for (std::size_t j = 0; j < cur.size(); ++j) {
    if (cur[j] < 0) {
      c.require(false, idx, "non-negativity",
                where + "entry " + std::to_string(j) + " is negative");
      break;
    }
  }
  c.require(st.gauge >= 0 && st.gauge <= r - 1, idx, "gauge-range",
            where + "gauge " + std::to_string(st.gauge) + " outside [0, " +
                std::to_string(r - 1) + "]");
  c.require(st.pivot >= 2 * st.u + 2, idx, "pivot-bound",
            where + "pivot " + std::to_string(st.pivot) + " < 2u+2");
  c.require(vec_length(cur) == vec_length(prev), idx, "constant-length",
            where + "length changed from " + std::to_string(vec_length(prev)) +
                " to " + std::to_string(vec_length(cur)));
  bool prefix_ok = true;
  for (Count j = 0; j < 2 * st.u; ++j) prefix_ok &= at(cur, j) == at(prev, j);
  c.require(prefix_ok, idx, "frozen-prefix",
            where + "entries below 2u changed");
}

}  // namespace

InvariantReport check_step_invariants(const BijectionTrace& trace,
                                      const Shape& sh) {
  if (trace.direction != Direction::kForward) {
    throw PreconditionError("a shape is only needed for forward traces");
  }
  if (!trace.snapshots_kept) {
    throw PreconditionError("trace was recorded without snapshots");
  }
  InvariantReport report;
  Checker c(report);
  const int r = sh.rank();
  const std::vector<Count> mu = mu_of_shape(sh).values();
  c.require(trace.initial == mu, 0, "initial-staircase",
            "initial snapshot is not mu(shape)");
  c.require(trace.steps.size() == static_cast<std::size_t>(sh.s1()), 0,
            "step-count", "forward trace should have s_1 steps");

  const std::vector<Count>* prev = &trace.initial;
  for (std::size_t idx = 0; idx < trace.steps.size(); ++idx) {
    const StepRecord& st = trace.steps[idx];
    const std::string where = step_label(st.u);
    const std::vector<Count>& cur = st.snapshot;
    check_common(c, idx, st, *prev, r);

    c.require(st.u == sh.s1() - 1 - static_cast<Count>(idx), idx, "step-order",
              where + "steps must run from s_1 - 1 down to 0");
    c.require(st.gauge == gauge_forward(sh, st.u), idx, "gauge-shape",
              where + "g_u does not match the shape");
    c.require(at(*prev, 2 * st.u) == st.gauge && at(*prev, 2 * st.u + 1) == 0,
              idx, "staircase-pair",
              where + "(theta_2u, theta_2u+1) before the step is not (g_u, 0)");
    c.require(window_max(cur, 2 * st.u) == st.gauge, idx, "gauge-max",
              where + "g_u is not the maximal window sum beyond 2u");
    c.require(first_window_hitting(cur, 2 * st.u + 2, st.gauge) == st.pivot,
              idx, "pivot-min",
              where + "n_u is not the first window reaching g_u");
    c.require(vec_weight(cur) - vec_weight(*prev) == st.delta, idx,
              "weight-delta", where + "weight grew by " +
                                  std::to_string(vec_weight(cur) -
                                                 vec_weight(*prev)) +
                                  ", expected lambda_u = " +
                                  std::to_string(st.delta));
    bool global_prefix = true;
    for (Count j = 0; j < 2 * st.u; ++j) {
      global_prefix &= at(cur, j) == at(mu, j);
    }
    c.require(global_prefix, idx, "frozen-prefix",
              where + "entries below 2u differ from mu(shape)");
    prev = &cur;
    ++report.steps_checked;
  }
  c.require(*prev == trace.final, trace.steps.empty() ? 0 : trace.steps.size() - 1,
            "final-snapshot", "last snapshot differs from the output");
  return report;
}

InvariantReport check_step_invariants(const BijectionTrace& trace, int r) {
  if (trace.direction != Direction::kBackward) {
    throw PreconditionError("forward traces are checked against their shape");
  }
  if (!trace.snapshots_kept) {
    throw PreconditionError("trace was recorded without snapshots");
  }
  InvariantReport report;
  Checker c(report);

  const std::vector<Count>* prev = &trace.initial;
  std::vector<Count> gauges;
  for (std::size_t idx = 0; idx < trace.steps.size(); ++idx) {
    const StepRecord& st = trace.steps[idx];
    const std::string where = step_label(st.u);
    const std::vector<Count>& cur = st.snapshot;
    check_common(c, idx, st, *prev, r);

    c.require(st.u == static_cast<Count>(idx), idx, "step-order",
              where + "steps must run from 0 upwards");
    c.require(st.gauge >= 1, idx, "gauge-range",
              where + "a recorded step must have h_u >= 1");
    c.require(window_max(*prev, 2 * st.u) == st.gauge, idx, "gauge-max",
              where + "h_u is not the maximal window sum beyond 2u");
    c.require(first_window_hitting(*prev, 2 * st.u + 2, st.gauge) == st.pivot,
              idx, "pivot-min",
              where + "m_u is not the first window reaching h_u");
    c.require(at(cur, 2 * st.u) == st.gauge && at(cur, 2 * st.u + 1) == 0, idx,
              "staircase-pair",
              where + "(eta_2u, eta_2u+1) after the step is not (h_u, 0)");
    c.require(st.delta >= 0, idx, "kappa-sign", where + "kappa_u < 0");
    c.require(vec_weight(*prev) - vec_weight(cur) == st.delta, idx,
              "weight-delta", where + "weight dropped by " +
                                  std::to_string(vec_weight(*prev) -
                                                 vec_weight(cur)) +
                                  ", expected kappa_u = " +
                                  std::to_string(st.delta));
    if (idx > 0) {
      const StepRecord& before = trace.steps[idx - 1];
      c.require(st.gauge <= before.gauge, idx, "monotone-gauge",
                where + "h_{u+1} > h_u");
      if (st.gauge == before.gauge) {
        c.require(st.pivot >= before.pivot + 2, idx, "equal-gauge-pivot",
                  where + "equal gauges need m_{u+1} >= m_u + 2");
        c.require(st.delta >= before.delta, idx, "equal-gauge-kappa",
                  where + "equal gauges need kappa_{u+1} >= kappa_u");
      }
    }
    gauges.push_back(st.gauge);
    prev = &cur;
    ++report.steps_checked;
  }
  const std::size_t last_idx = trace.steps.empty() ? 0 : trace.steps.size() - 1;
  const Count stop = static_cast<Count>(trace.steps.size());
  c.require(window_max(*prev, 2 * stop) == 0, last_idx, "stop-rule",
            "trace stopped while a window beyond 2U is non-zero");
  // The final snapshot must be the staircase of the recovered shape.
  std::vector<Count> s(static_cast<std::size_t>(r - 1), 0);
  for (int j = 1; j < r; ++j) {
    Count u = 0;
    while (u < stop && gauges[static_cast<std::size_t>(u)] > j - 1) ++u;
    s[static_cast<std::size_t>(j - 1)] = u;
  }
  bool shape_ok = true;
  try {
    c.require(mu_of_shape(Shape(r, s)).values() == *prev, last_idx,
              "final-staircase", "final snapshot is not mu(recovered shape)");
  } catch (const std::exception&) {
    shape_ok = false;
  }
  c.require(shape_ok, last_idx, "final-staircase",
            "recovered shape is not valid");
  c.require(*prev == trace.final, last_idx, "final-snapshot",
            "last snapshot differs from the recorded final state");
  return report;
}

// ---------------------------------------------------------------------------
// Induced sub-bijections

SetId induced_partner(const SetId& pair_side) {
  const int r = pair_side.r();
  const int i = pair_side.i();
  switch (pair_side.family()) {
    case Family::kP:
      return SetId(Family::kA, r, i);
    case Family::kQ:
      return SetId(Family::kT, r, i + 1);
    case Family::kR:
      return SetId(Family::kB, r, i);
    case Family::kRtilde:
      return SetId(Family::kBtilde, r, i);
    case Family::kS:
      return SetId(Family::kU, r, i + 1);
    case Family::kStilde:
      return SetId(Family::kUtilde, r, i + 1);
    default:
      throw PreconditionError(pair_side.to_string() +
                              " is not a pair-side set");
  }
}

bool is_induced_pair(const SetId& pair_side, const SetId& freq_side) {
  if (!pair_side.pair_side()) return false;
  return induced_partner(pair_side) == freq_side;
}

InducedReport verify_induced_membership(const SetId& pair_side,
                                        const SetId& freq_side,
                                        Count max_weight,
                                        const EnumerationLimits& limits) {
  if (!is_induced_pair(pair_side, freq_side)) {
    throw PreconditionError(pair_side.to_string() + " and " +
                            freq_side.to_string() +
                            " are not a matched pair of the bijection");
  }
  InducedReport report{true,
                       pair_side,
                       freq_side,
                       max_weight,
                       std::vector<Count>(static_cast<std::size_t>(max_weight) + 1, 0),
                       std::vector<Count>(static_cast<std::size_t>(max_weight) + 1, 0),
                       0,
                       0,
                       std::nullopt};
  const int r = pair_side.r();
  const BijectionOptions quiet{false};
  auto fail = [&](std::string why) {
    if (report.ok) report.counterexample = std::move(why);
    report.ok = false;
  };

  for_each_member(
      pair_side, max_weight,
      [&](const SetMember& m) {
        const auto& x = std::get<InsertionSequence>(m);
        ++report.pair_counts[static_cast<std::size_t>(pair_weight(x))];
        ++report.forward_checked;
        if (!report.ok) return;
        const ForwardResult fw = lambda_forward(x, quiet);
        if (!member(freq_side, fw.freq)) {
          fail("Lambda(shape " + join(x.shape().values()) +
               ", lambda " + join(x.values()) +
               ") = " + to_string(fw.freq) + " is not in " +
               freq_side.to_string());
        }
      },
      limits);

  for_each_member(
      freq_side, max_weight,
      [&](const SetMember& m) {
        const auto& nu = std::get<FrequencySequence>(m);
        ++report.freq_counts[static_cast<std::size_t>(nu.weight())];
        ++report.backward_checked;
        if (!report.ok) return;
        const BackwardResult bw = gamma_backward(nu, r, quiet);
        if (!member(pair_side, bw.kappa)) {
          fail("Gamma(" + to_string(nu) + ") has kappa " +
               join(bw.kappa.values()) +
               " outside " + pair_side.to_string());
        }
      },
      limits);

  if (report.ok && report.pair_counts != report.freq_counts) {
    for (std::size_t n = 0; n < report.pair_counts.size(); ++n) {
      if (report.pair_counts[n] != report.freq_counts[n]) {
        fail("counts differ at weight " + std::to_string(n) + ": " +
             std::to_string(report.pair_counts[n]) + " vs " +
             std::to_string(report.freq_counts[n]));
        break;
      }
    }
  }
  return report;
}

}  // namespace qbij
