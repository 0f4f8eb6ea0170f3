#include "qbij/serialize.hpp"

#include <sstream>

#include <json.hpp>

#include "qbij/errors.hpp"

namespace qbij {

std::string join_counts(const std::vector<Count>& values) {
  if (values.empty()) return "()";
  std::ostringstream out;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) out << ' ';
    out << values[k];
  }
  return out.str();
}

std::vector<Count> parse_counts(const std::string& text) {
  std::string cleaned;
  for (char c : text) {
    cleaned += (c == ',' || c == '(' || c == ')') ? ' ' : c;
  }
  std::istringstream in(cleaned);
  std::vector<Count> out;
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(token, &used);
    } catch (const std::exception&) {
      throw PreconditionError("not an integer: '" + token + "'");
    }
    if (used != token.size()) {
      throw PreconditionError("not an integer: '" + token + "'");
    }
    if (v < 0) throw PreconditionError("negative entry " + token);
    out.push_back(v);
  }
  return out;
}

RunRecord record_forward(const Shape& sh, const InsertionSequence& lam,
                         const ForwardResult& result) {
  RunRecord run;
  run.direction = Direction::kForward;
  run.r = sh.rank();
  run.shape = sh.values();
  run.lambda = lam.values();
  run.freq = result.freq.values();
  run.trace = result.trace.steps;
  run.weight = result.freq.weight();
  run.length = result.freq.length();
  return run;
}

RunRecord record_backward(const FrequencySequence& nu,
                          const BackwardResult& result) {
  RunRecord run;
  run.direction = Direction::kBackward;
  run.r = result.shape.rank();
  run.shape = result.shape.values();
  run.lambda = result.kappa.values();
  run.freq = nu.values();
  run.trace = result.trace.steps;
  run.weight = nu.weight();
  run.length = nu.length();
  return run;
}

std::string to_text(const RunRecord& run) {
  std::ostringstream out;
  if (run.direction == Direction::kForward) {
    out << "# forward r=" << run.r << " shape " << join_counts(run.shape)
        << " lambda " << join_counts(run.lambda) << '\n';
    out << join_counts(mu_of_shape(Shape(run.r, run.shape)).values()) << '\n';
    for (const auto& st : run.trace) {
      out << "step " << st.u << ' ' << st.gauge << ' ' << st.pivot << ' '
          << st.delta << '\n';
      out << join_counts(st.snapshot) << '\n';
    }
    out << join_counts(run.freq) << '\n';
  } else {
    out << "# backward r=" << run.r << " freq " << join_counts(run.freq)
        << '\n';
    out << join_counts(run.freq) << '\n';
    for (const auto& st : run.trace) {
      out << "step " << st.u << ' ' << st.gauge << ' ' << st.pivot << ' '
          << st.delta << '\n';
      out << join_counts(st.snapshot) << '\n';
    }
    out << "shape " << join_counts(run.shape) << '\n';
    out << "kappa " << join_counts(run.lambda) << '\n';
  }
  return out.str();
}

std::string forward_text(const Shape& sh, const InsertionSequence& lam,
                         const ForwardResult& result) {
  return to_text(record_forward(sh, lam, result));
}

std::string backward_text(const FrequencySequence& nu,
                          const BackwardResult& result) {
  return to_text(record_backward(nu, result));
}

std::string to_json(const RunRecord& run) {
  nlohmann::ordered_json j;
  j["direction"] = direction_name(run.direction);
  j["r"] = run.r;
  j["shape"] = run.shape;
  j["lambda"] = run.lambda;
  j["freq"] = run.freq;
  auto steps = nlohmann::ordered_json::array();
  for (const auto& st : run.trace) {
    nlohmann::ordered_json s;
    s["u"] = st.u;
    s["gauge"] = st.gauge;
    s["pivot"] = st.pivot;
    s["delta"] = st.delta;
    s["snapshot"] = st.snapshot;
    steps.push_back(std::move(s));
  }
  j["trace"] = std::move(steps);
  j["weight"] = run.weight;
  j["length"] = run.length;
  return j.dump();
}

RunRecord run_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    throw PreconditionError(std::string("malformed run JSON: ") + ex.what());
  }
  RunRecord run;
  try {
    const std::string dir = j.at("direction").get<std::string>();
    if (dir == "forward") {
      run.direction = Direction::kForward;
    } else if (dir == "backward") {
      run.direction = Direction::kBackward;
    } else {
      throw PreconditionError("unknown direction '" + dir + "'");
    }
    run.r = j.at("r").get<int>();
    run.shape = j.at("shape").get<std::vector<Count>>();
    run.lambda = j.at("lambda").get<std::vector<Count>>();
    run.freq = j.at("freq").get<std::vector<Count>>();
    for (const auto& s : j.at("trace")) {
      run.trace.push_back(StepRecord{s.at("u").get<Count>(),
                                     s.at("gauge").get<Count>(),
                                     s.at("pivot").get<Count>(),
                                     s.at("delta").get<Count>(),
                                     s.at("snapshot").get<std::vector<Count>>()});
    }
    run.weight = j.at("weight").get<Count>();
    run.length = j.at("length").get<Count>();
  } catch (const nlohmann::json::exception& ex) {
    throw PreconditionError(std::string("run JSON does not match the schema: ") +
                            ex.what());
  }
  return run;
}

}  // namespace qbij
