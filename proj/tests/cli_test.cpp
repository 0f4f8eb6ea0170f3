#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qbij/cli.hpp"
#include "qbij/serialize.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "qbij");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = qbij::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

const std::vector<std::string> kForward = {"forward", "--r", "4", "--shape", "4,2,2",
                                           "--lambda", "5,6,1,3"};

TEST(Cli, ForwardPrintsGoldenTrace) {
  const auto res = run(kForward);
  ASSERT_EQ(res.code, qbij::kExitOk) << res.err;
  const auto ls = lines(res.out);
  ASSERT_FALSE(ls.empty());
  EXPECT_EQ(ls.back(), "0 1 2 1 1 2 0 0 0 1");
  EXPECT_EQ(ls[1], "3 0 3 0 1 0 1");
  EXPECT_EQ(ls[3], "3 0 3 0 1 0 0 0 0 1");
  EXPECT_EQ(ls[5], "3 0 3 0 0 1 0 0 0 1");
  EXPECT_EQ(ls[7], "3 0 0 1 1 2 0 0 0 1");
}

TEST(Cli, BackwardPrintsShapeAndKappa) {
  const auto res = run({"backward", "--r", "4", "--freq", "0 1 2 1 1 2 0 0 0 1"});
  ASSERT_EQ(res.code, qbij::kExitOk) << res.err;
  const auto ls = lines(res.out);
  ASSERT_GE(ls.size(), 2u);
  EXPECT_EQ(ls[ls.size() - 2], "shape 4 2 2");
  EXPECT_EQ(ls.back(), "kappa 5 6 1 3");
}

TEST(Cli, TraceReportsInvariantsAndRoundTrip) {
  const auto res = run({"trace", "--r", "4", "--shape", "4,2,2", "--lambda", "5,6,1,3"});
  EXPECT_EQ(res.code, qbij::kExitOk);
  EXPECT_NE(res.out.find("# invariants forward: ok (4 steps)"), std::string::npos);
  EXPECT_NE(res.out.find("# invariants backward: ok (4 steps)"), std::string::npos);
  EXPECT_NE(res.out.find("# round trip: ok"), std::string::npos);
  const auto from_freq = run({"trace", "--r", "2", "--freq", "1,0,0,0,1,0,1,0,0,1"});
  EXPECT_EQ(from_freq.code, qbij::kExitOk);
  EXPECT_NE(from_freq.out.find("kappa 0 2 2 3"), std::string::npos);
}

TEST(Cli, EnumerateWeightZeroGivesEmptyPartition) {
  const auto res = run({"enumerate", "--family", "T", "--r", "2", "--i", "1",
                        "--max-weight", "0"});
  ASSERT_EQ(res.code, qbij::kExitOk) << res.err;
  EXPECT_EQ(res.out, "()\n");
}

TEST(Cli, EnumerateCounts) {
  const auto res = run({"enumerate", "--family", "T", "--r", "2", "--i", "2",
                        "--max-weight", "4", "--counts", "--format", "json"});
  ASSERT_EQ(res.code, qbij::kExitOk) << res.err;
  EXPECT_EQ(res.out, "[1,1,1,1,2]\n");
  const auto pairs = run({"enumerate", "--family", "P", "--r", "2", "--i", "1",
                          "--max-weight", "2"});
  ASSERT_EQ(pairs.code, qbij::kExitOk) << pairs.err;
  // Both the empty pair and (shape 1, lambda 0) have weight 0; shapes come
  // in decreasing order within a weight.
  const auto ls = lines(pairs.out);
  ASSERT_GE(ls.size(), 2u);
  EXPECT_EQ(ls[0], "shape 1 lambda 0");
  EXPECT_EQ(ls[1], "shape 0 lambda ()");
}

TEST(Cli, VerifyAndSweepExitCodes) {
  const auto ok = run({"verify", "--key", "AG", "--r", "2", "--i", "2", "--N", "50"});
  EXPECT_EQ(ok.code, qbij::kExitOk) << ok.out << ok.err;
  EXPECT_NE(ok.out.find("# 1 checks, 0 failed"), std::string::npos);
  const auto sweep = run({"sweep", "--rmax", "3", "--N", "20", "--N-enum", "10", "--no-timing"});
  EXPECT_EQ(sweep.code, qbij::kExitOk) << sweep.out;
  EXPECT_EQ(sweep.out.find("# "), std::string::npos);
  const auto none = run({"sweep", "--keys", "none", "--no-timing"});
  EXPECT_EQ(none.code, qbij::kExitOk);
  EXPECT_EQ(none.out, "key            r  i   N  status    detail\n");
}

TEST(Cli, UsageErrorsNameTheProblem) {
  auto res = run({"forward", "--r", "4", "--shape", "2,4,2", "--lambda", "1,1"});
  EXPECT_EQ(res.code, qbij::kExitUsage);
  EXPECT_NE(res.err.find("non-increasing"), std::string::npos) << res.err;

  res = run({"forward", "--r", "4", "--shape", "4,2,2", "--lambda", "6,5,1,3"});
  EXPECT_EQ(res.code, qbij::kExitUsage);
  EXPECT_NE(res.err.find("lambda_"), std::string::npos) << res.err;

  res = run({"backward", "--r", "3", "--freq", "0,2,2"});
  EXPECT_EQ(res.code, qbij::kExitUsage);
  EXPECT_NE(res.err.find("window at u = 1"), std::string::npos) << res.err;

  res = run({"verify", "--key", "AG", "--r", "2", "--i", "7"});
  EXPECT_EQ(res.code, qbij::kExitUsage);

  EXPECT_EQ(run({"coeffs", "--key", "NOPE", "--r", "2", "--i", "1"}).code, qbij::kExitUsage);
  EXPECT_EQ(run({"enumerate", "--family", "Z", "--r", "2"}).code, qbij::kExitUsage);
  EXPECT_EQ(run({"enumerate", "--family", "F", "--r", "3", "--i", "3"}).code, qbij::kExitUsage);
  EXPECT_EQ(run({"forward", "--shape", "1"}).code, qbij::kExitUsage);
  EXPECT_EQ(run({"bogus"}).code, qbij::kExitUsage);
  EXPECT_EQ(run({}).code, qbij::kExitUsage);
}

TEST(Cli, IdenticalInvocationsAreByteIdentical) {
  EXPECT_EQ(run(kForward).out, run(kForward).out);
  const std::vector<std::string> sweep = {"sweep", "--rmax", "3", "--N", "15", "--N-enum",
                                          "8", "--format", "json", "--jobs", "3"};
  const auto a = run(sweep), b = run(sweep);
  EXPECT_EQ(a.out, b.out);
  // Timing goes to the error stream in json mode.
  EXPECT_NE(a.err.find("checks"), std::string::npos);
  for (const auto& l : lines(a.out)) {
    const auto j = nlohmann::json::parse(l);
    EXPECT_EQ(j["status"], "ok");
  }
}

TEST(Cli, JsonReproducesTextContent) {
  auto args = kForward;
  args.insert(args.end(), {"--format", "json"});
  const auto js = run(args);
  ASSERT_EQ(js.code, qbij::kExitOk);
  EXPECT_EQ(qbij::to_text(qbij::run_from_json(js.out)), run(kForward).out);
  const auto bjs = run({"backward", "--r", "4", "--freq", "0,1,2,1,1,2,0,0,0,1", "--format", "json"});
  const auto btx = run({"backward", "--r", "4", "--freq", "0,1,2,1,1,2,0,0,0,1"});
  EXPECT_EQ(qbij::to_text(qbij::run_from_json(bjs.out)), btx.out);
}

TEST(Cli, CoefficientFormats) {
  const auto text = run({"coeffs", "--key", "AG", "--r", "2", "--i", "2", "--N", "4", "--side", "rhs"});
  EXPECT_EQ(text.out, "1 + q + q^2 + q^3 + 2q^4 + O(q^5)\n");
  const auto csv = run({"coeffs", "--key", "AG", "--r", "2", "--i", "2", "--N", "2", "--format", "csv"});
  EXPECT_EQ(csv.out, "degree,coefficient\n0,1\n1,1\n2,1\n");
  const auto js = run({"coeffs", "--key", "AG", "--r", "2", "--i", "2", "--N", "1", "--format", "json"});
  EXPECT_EQ(js.out, "[{\"degree\":0,\"value\":\"1\"},{\"degree\":1,\"value\":\"1\"}]\n");
  EXPECT_EQ(run({"coeffs", "--key", "AG", "--r", "2", "--i", "2", "--side", "middle"}).code,
            qbij::kExitUsage);
}

TEST(Cli, DefaultDegreeFromEnvironment) {
  ::setenv("QBIJ_DEFAULT_N", "3", 1);
  const auto res = run({"coeffs", "--key", "AG", "--r", "2", "--i", "2"});
  ::unsetenv("QBIJ_DEFAULT_N");
  EXPECT_EQ(res.out, "1 + q + q^2 + q^3 + O(q^4)\n");
}

TEST(Cli, WritesToFile) {
  const auto path = std::filesystem::temp_directory_path() / "qbij_cli_test_out.txt";
  auto args = kForward;
  args.insert(args.end(), {"--out", path.string()});
  const auto res = run(args);
  ASSERT_EQ(res.code, qbij::kExitOk);
  EXPECT_TRUE(res.out.empty());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_EQ(buf.str(), run(kForward).out);
  std::filesystem::remove(path);
}

}  // namespace
