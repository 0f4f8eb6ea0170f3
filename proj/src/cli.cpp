#include "qbij/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qbij/bijection.hpp"
#include "qbij/errors.hpp"
#include "qbij/serialize.hpp"
#include "qbij/series.hpp"
#include "qbij/sets.hpp"
#include "qbij/verifier.hpp"

namespace qbij {

namespace {

struct Options {
  int r = 0;
  int i = 0;
  int n = 40;
  int n_enum = 25;
  int r_max = 4;
  int jobs = 1;
  Count max_weight = 10;
  std::string shape;
  std::string lambda;
  std::string freq;
  std::string family;
  std::string key;
  std::string side = "lhs";
  std::string format = "text";
  std::string out_path;
  std::vector<std::string> keys;
  bool no_timing = false;
  bool counts_only = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

int default_n() {
  if (const char* env = std::getenv("QBIJ_DEFAULT_N")) {
    try {
      const int n = std::stoi(env);
      if (n >= 0) return n;
    } catch (const std::exception&) {
    }
  }
  return 40;
}

Shape parse_shape(const Options& o) {
  std::vector<Count> s = parse_counts(o.shape);
  // An all-zero shape may be written as "" or "()".
  if (s.empty()) s.assign(static_cast<std::size_t>(o.r - 1), 0);
  return Shape(o.r, std::move(s));
}

void require_r(const Options& o) {
  if (o.r < 2) throw UsageError("--r is required and must be at least 2");
}

std::string member_text(const SetMember& m) {
  if (const auto* f = std::get_if<FrequencySequence>(&m)) {
    return join_counts(f->values());
  }
  const auto& x = std::get<InsertionSequence>(m);
  return "shape " + join_counts(x.shape().values()) + " lambda " +
         join_counts(x.values());
}

nlohmann::ordered_json member_json(const SetMember& m) {
  nlohmann::ordered_json j;
  if (const auto* f = std::get_if<FrequencySequence>(&m)) {
    j["freq"] = f->values();
    j["weight"] = f->weight();
    return j;
  }
  const auto& x = std::get<InsertionSequence>(m);
  j["shape"] = x.shape().values();
  j["lambda"] = x.values();
  j["weight"] = pair_weight(x);
  return j;
}

int cmd_forward(const Options& o, std::ostream& out) {
  require_r(o);
  const Shape sh = parse_shape(o);
  const InsertionSequence lam(sh, parse_counts(o.lambda));
  const ForwardResult res = lambda_forward(sh, lam);
  if (o.format == "json") {
    out << to_json(record_forward(sh, lam, res)) << '\n';
  } else {
    out << forward_text(sh, lam, res);
  }
  return kExitOk;
}

int cmd_backward(const Options& o, std::ostream& out) {
  require_r(o);
  const FrequencySequence nu(parse_counts(o.freq));
  const BackwardResult res = gamma_backward(nu, o.r);
  if (o.format == "json") {
    out << to_json(record_backward(nu, res)) << '\n';
  } else {
    out << backward_text(nu, res);
  }
  return kExitOk;
}

// Runs both maps on one input, checks every step invariant and the round
// trip.
int cmd_trace(const Options& o, std::ostream& out) {
  require_r(o);
  std::optional<InsertionSequence> x;
  std::optional<FrequencySequence> nu;
  if (!o.freq.empty()) {
    nu = FrequencySequence(parse_counts(o.freq));
  } else {
    const Shape sh = parse_shape(o);
    x = InsertionSequence(sh, parse_counts(o.lambda));
  }
  bool ok = true;
  std::ostringstream body;
  auto report = [&](const char* what, const InvariantReport& rep) {
    body << "# invariants " << what << ": "
         << (rep.ok() ? "ok" : "FAILED") << " (" << rep.steps_checked
         << " steps)\n";
    for (const auto& v : rep.violations) {
      body << "#   [" << v.clause << "] " << v.message << '\n';
    }
    ok &= rep.ok();
  };

  if (x) {
    const ForwardResult fw = lambda_forward(*x);
    const BackwardResult bw = gamma_backward(fw.freq, o.r);
    body << forward_text(x->shape(), *x, fw);
    report("forward", check_step_invariants(fw.trace, x->shape()));
    body << backward_text(fw.freq, bw);
    report("backward", check_step_invariants(bw.trace, o.r));
    const bool round = bw.kappa == *x;
    body << "# round trip: " << (round ? "ok" : "FAILED") << '\n';
    ok &= round;
  } else {
    const BackwardResult bw = gamma_backward(*nu, o.r);
    const ForwardResult fw = lambda_forward(bw.kappa);
    body << backward_text(*nu, bw);
    report("backward", check_step_invariants(bw.trace, o.r));
    body << forward_text(bw.shape, bw.kappa, fw);
    report("forward", check_step_invariants(fw.trace, bw.shape));
    const bool round = fw.freq == *nu;
    body << "# round trip: " << (round ? "ok" : "FAILED") << '\n';
    ok &= round;
  }
  out << body.str();
  return ok ? kExitOk : kExitMismatch;
}

SetId parse_set(const Options& o) {
  require_r(o);
  const auto fam = family_from_name(o.family);
  if (!fam) {
    throw UsageError("unknown family '" + o.family +
                     "' (expected T, U, Utilde, A, B, Btilde, E, F, P, Q, R, "
                     "Rtilde, S or Stilde)");
  }
  return SetId(*fam, o.r, o.i);
}

int cmd_enumerate(const Options& o, std::ostream& out) {
  const SetId id = parse_set(o);
  if (o.counts_only) {
    const auto counts = count_by_weight(id, o.max_weight);
    if (o.format == "json") {
      out << nlohmann::json(counts).dump() << '\n';
    } else {
      for (std::size_t n = 0; n < counts.size(); ++n) {
        out << n << ' ' << counts[n] << '\n';
      }
    }
    return kExitOk;
  }
  std::vector<SetMember> members = enumerate(id, o.max_weight);
  std::stable_sort(members.begin(), members.end(),
                   [](const SetMember& a, const SetMember& b) {
                     return member_weight(a) < member_weight(b);
                   });
  for (const auto& m : members) {
    if (o.format == "json") {
      out << member_json(m).dump() << '\n';
    } else {
      out << member_text(m) << '\n';
    }
  }
  return kExitOk;
}

int cmd_coeffs(const Options& o, std::ostream& out) {
  require_r(o);
  if (o.key.empty()) throw UsageError("--key is required");
  if (!find_entry(o.key)) throw UsageError("unknown identity key: " + o.key);
  if (o.side != "lhs" && o.side != "rhs") {
    throw UsageError("--side must be lhs or rhs");
  }
  const Side side = o.side == "lhs" ? Side::kLhs : Side::kRhs;
  const TruncatedSeries s(o.n, coefficients(o.key, side, o.r, o.i, o.n));
  if (o.format == "json") {
    out << to_json(s) << '\n';
  } else if (o.format == "csv") {
    write_csv(out, s);
  } else {
    out << to_string(s) << '\n';
  }
  return kExitOk;
}

int finish_reports(const Options& o, const std::vector<VerificationReport>& reps,
                   double elapsed_ms, std::ostream& out, std::ostream& err) {
  if (o.format == "json") {
    write_json_lines(out, reps);
  } else {
    write_table(out, reps);
  }
  std::size_t bad = 0;
  for (const auto& rep : reps) bad += rep.ok() ? 0 : 1;
  if (!o.no_timing) {
    std::ostream& footer = o.format == "json" ? err : out;
    footer << "# " << reps.size() << " checks, " << bad << " failed, "
           << static_cast<long long>(elapsed_ms) << " ms\n";
  }
  for (const auto& rep : reps) {
    if (rep.status == Status::kError) return kExitUsage;
  }
  return bad == 0 ? kExitOk : kExitMismatch;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  require_r(o);
  if (o.key.empty()) throw UsageError("--key is required");
  const auto start = std::chrono::steady_clock::now();
  const VerificationReport rep = verify(o.key, o.r, o.i, o.n);
  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
  return finish_reports(o, {rep}, ms, out, err);
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
  std::vector<std::string> keys = o.keys;
  if (keys.empty()) {
    for (const auto& e : registry()) keys.push_back(e.key);
  }
  if (keys.size() == 1 && keys[0] == "none") keys.clear();
  const auto start = std::chrono::steady_clock::now();
  const auto reps = sweep(keys, SweepOptions{o.r_max, o.n, o.n_enum, o.jobs});
  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
  return finish_reports(o, reps, ms, out, err);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  Options o;
  o.n = default_n();

  CLI::App app{"Staircase insertion bijection, q-series and identity checks"};
  app.require_subcommand(1);
  const std::vector<std::string> formats{"text", "json", "csv"};

  auto add_r = [&](CLI::App* c) { c->add_option("--r", o.r, "rank r >= 2"); };
  auto add_format = [&](CLI::App* c) {
    c->add_option("--format", o.format, "text, json or csv")
        ->check(CLI::IsMember(formats));
    c->add_option("--out", o.out_path, "write output to a file");
  };

  auto* forward = app.add_subcommand("forward", "apply Lambda to (shape, lambda)");
  add_r(forward);
  forward->add_option("--shape", o.shape, "s_1,...,s_{r-1}")->required();
  forward->add_option("--lambda", o.lambda, "lambda_0,...,lambda_{s_1-1}");
  add_format(forward);

  auto* backward = app.add_subcommand("backward", "apply Gamma to a multiplicity sequence");
  add_r(backward);
  backward->add_option("--freq", o.freq, "f_0,f_1,...")->required();
  add_format(backward);

  auto* trace = app.add_subcommand("trace", "run both maps and check every step invariant");
  add_r(trace);
  trace->add_option("--shape", o.shape, "s_1,...,s_{r-1}");
  trace->add_option("--lambda", o.lambda, "lambda_0,...");
  trace->add_option("--freq", o.freq, "f_0,f_1,... (instead of shape/lambda)");
  trace->add_option("--out", o.out_path, "write output to a file");

  auto* enumerate_cmd = app.add_subcommand("enumerate", "list the members of a set by weight");
  add_r(enumerate_cmd);
  enumerate_cmd->add_option("--family", o.family, "set family")->required();
  enumerate_cmd->add_option("--i", o.i, "index i");
  enumerate_cmd->add_option("--max-weight", o.max_weight, "largest weight listed");
  enumerate_cmd->add_flag("--counts", o.counts_only, "print per-weight counts only");
  add_format(enumerate_cmd);

  auto* coeffs = app.add_subcommand("coeffs", "dump the coefficients of one side of an identity");
  add_r(coeffs);
  coeffs->add_option("--key", o.key, "registry key")->required();
  coeffs->add_option("--i", o.i, "index i");
  coeffs->add_option("--N", o.n, "truncation degree (inclusive)");
  coeffs->add_option("--side", o.side, "lhs or rhs");
  add_format(coeffs);

  auto* verify_cmd = app.add_subcommand("verify", "check one identity up to degree N");
  add_r(verify_cmd);
  verify_cmd->add_option("--key", o.key, "registry key")->required();
  verify_cmd->add_option("--i", o.i, "index i");
  verify_cmd->add_option("--N", o.n, "truncation degree (inclusive)");
  verify_cmd->add_flag("--no-timing", o.no_timing, "omit the timing footer");
  add_format(verify_cmd);

  auto* sweep_cmd = app.add_subcommand("sweep", "check registry entries over their full (r, i) grid");
  sweep_cmd->add_option("--rmax", o.r_max, "largest rank");
  sweep_cmd->add_option("--N", o.n, "degree for series-vs-series entries");
  sweep_cmd->add_option("--N-enum", o.n_enum, "degree for enumeration-backed entries");
  sweep_cmd->add_option("--keys", o.keys, "comma-separated keys (default all)")
      ->delimiter(',');
  sweep_cmd->add_option("--jobs", o.jobs, "worker threads");
  sweep_cmd->add_flag("--no-timing", o.no_timing, "omit the timing footer");
  add_format(sweep_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (!o.out_path.empty()) {
    file.open(o.out_path);
    if (!file) {
      err << "error: cannot open " << o.out_path << " for writing\n";
      return kExitUsage;
    }
    sink = &file;
  }

  try {
    if (forward->parsed()) return cmd_forward(o, *sink);
    if (backward->parsed()) return cmd_backward(o, *sink);
    if (trace->parsed()) return cmd_trace(o, *sink);
    if (enumerate_cmd->parsed()) return cmd_enumerate(o, *sink);
    if (coeffs->parsed()) return cmd_coeffs(o, *sink);
    if (verify_cmd->parsed()) return cmd_verify(o, *sink, err);
    if (sweep_cmd->parsed()) return cmd_sweep(o, *sink, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const RangeError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  err << "error: no command\n";
  return kExitUsage;
}

}  // namespace qbij
