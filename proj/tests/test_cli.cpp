#include <doctest.h>

#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "latcensus/cli.hpp"
#include "latcensus/io.hpp"
#include "latcensus/lattice.hpp"

using namespace latcensus;
using io::Json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "latcensus");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

// Every emitted line parses and re-serializes to itself.
void check_round_trip(const std::string& out) {
  for (const auto& l : lines(out)) REQUIRE(io::dump(Json::parse(l)) == l);
}

}  // namespace

TEST_CASE("count") {
  auto r = run({"count", "--n", "2", "--V", "4", "--mode", "cyclic", "--method", "both"});
  REQUIRE(r.code == cli::kOk);
  auto j = Json::parse(r.out);
  CHECK(j["count"] == "14");
  CHECK(j["oracle"] == "14");
  CHECK(j["agrees"] == true);
  CHECK(j["report"]["count_total"] == "15");
  check_round_trip(r.out);

  r = run({"count", "--n", "2", "--V", "1", "--mode", "all"});
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["count"] == "1");

  r = run({"count", "--n", "2", "--V", "6", "--mode", "squarefree"});
  CHECK(Json::parse(r.out)["count"] == "26");

  r = run({"count", "--n", "2", "--V", "4", "--mode", "rank=2", "--method", "bruteforce"});
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["count"] == "1");

  r = run({"count", "--n", "2", "--V", "1000", "--format", "csv"});
  REQUIRE(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 5);
  CHECK(ls[0] == "V,count,prediction,ratio");
  CHECK(ls[2].rfind("10,82,", 0) == 0);
  CHECK(ls[4].rfind("1000,760410,", 0) == 0);
}

TEST_CASE("count usage errors and caps") {
  CHECK(run({"count", "--n", "1", "--V", "4", "--mode", "cyclic"}).code == cli::kUsage);
  CHECK(run({"count", "--n", "2", "--V", "4", "--mode", "rank=1"}).code == cli::kUsage);
  const auto bad_mode = run({"count", "--n", "2", "--V", "4", "--mode", "nope"});
  CHECK(bad_mode.code == cli::kUsage);
  CHECK(bad_mode.err.find("--mode") != std::string::npos);
  CHECK(run({"count", "--n", "2", "--V", "4", "--method", "magic"}).code == cli::kUsage);
  CHECK(run({"count", "--n", "2"}).code == cli::kUsage);
  CHECK(run({"count", "--n", "two", "--V", "3"}).code == cli::kUsage);
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"frobnicate"}).code == cli::kUsage);
  CHECK(run({"count", "--n", "3", "--V", "200", "--method", "both", "--cap", "100"}).code == cli::kCapExceeded);
  CHECK(run({"--help"}).code == cli::kOk);
  CHECK(run({"count", "--help"}).code == cli::kOk);
}

TEST_CASE("constants") {
  auto r = run({"constants", "--name", "theta"});
  REQUIRE(r.code == 0);
  auto j = Json::parse(r.out);
  CHECK(j["name"] == "theta");
  CHECK(std::abs(j["value"].get<double>() - 1.9435964368) < 1e-9);
  CHECK(j["err"].get<double>() <= 1e-10);
  CHECK(j.contains("prime_cutoff"));
  check_round_trip(r.out);

  r = run({"constants", "--name", "density-cocyclic"});
  CHECK(std::abs(Json::parse(r.out)["value"].get<double>() - 0.8469) < 1e-4);

  r = run({"constants", "--name", "rho_n", "--n", "2"});
  REQUIRE(r.code == 0);
  j = Json::parse(r.out);
  CHECK(j["checks"]["equals_one"] == true);

  r = run({"constants", "--name", "theta_n", "--n", "3", "--tol", "1e-8"});
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["err"].get<double>() <= 1e-8);

  CHECK(run({"constants", "--name", "nonsense"}).code == cli::kUsage);
  CHECK(run({"constants", "--name", "theta_n"}).code == cli::kUsage);
  CHECK(run({"constants", "--name", "zeta", "--n", "1"}).code == cli::kUsage);
  CHECK(run({"constants", "--name", "theta_n", "--n", "2", "--tol", "1e-30", "--prime-cutoff", "1000"}).code ==
        cli::kCapExceeded);
}

TEST_CASE("sample") {
  auto r = run({"sample", "--n", "2", "--q", "2", "--seed", "1", "--count", "3"});
  REQUIRE(r.code == 0);
  const auto all = lattice::enumerate_sublattices(2, 2);
  const std::set<lattice::HnfBasis> index2(all.begin(), all.end());
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 3);
  for (const auto& l : ls) CHECK(index2.count(io::hnf_from_json(Json::parse(l))) == 1);
  check_round_trip(r.out);

  r = run({"sample", "--n", "4", "--q", "1", "--count", "1"});
  REQUIRE(r.code == 0);
  CHECK(io::hnf_from_json(Json::parse(r.out)) == lattice::HnfBasis::identity(4));
  CHECK(r.err.find("seed") != std::string::npos);

  const auto a = run({"sample", "--n", "3", "--q", "60", "--seed", "77", "--count", "50"});
  const auto b = run({"sample", "--n", "3", "--q", "60", "--seed", "77", "--count", "50"});
  CHECK(a.out == b.out);
  CHECK(run({"sample", "--n", "2", "--q", "0"}).code == cli::kUsage);
  CHECK(run({"sample", "--n", "2", "--q", "-3"}).code == cli::kUsage);
}

TEST_CASE("enumerate") {
  auto r = run({"enumerate", "--n", "3", "--q", "2"});
  REQUIRE(r.code == 0);
  CHECK(lines(r.out).size() == 7);
  r = run({"enumerate", "--n", "2", "--q", "4", "--cocyclic-only"});
  CHECK(lines(r.out).size() == 6);
  check_round_trip(r.out);
  CHECK(run({"enumerate", "--n", "4", "--q", "720720", "--cap", "1000"}).code == cli::kCapExceeded);
}

TEST_CASE("clmass and groups") {
  auto r = run({"clmass", "--V", "3"});
  REQUIRE(r.code == 0);
  auto j = Json::parse(r.out);
  CHECK(j["exact"] == true);
  CHECK(j["total_mass"]["value"].get<double>() == 2.5);
  CHECK(j["total_mass_rational"] == "5/2");
  CHECK(j["predicate"] == "all");
  check_round_trip(r.out);

  r = run({"clmass", "--V", "100", "--predicate", "cyclic"});
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["predicate"] == "cyclic");
  CHECK(run({"clmass", "--V", "10", "--predicate", "weird"}).code == cli::kUsage);

  r = run({"groups", "--V", "4", "--dump"});
  REQUIRE(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 6);
  CHECK(ls[0] == "order,primary_decomposition,aut_order,rank");
  CHECK(ls[4] == "4,2^[1,1],6,2");

  r = run({"groups", "--V", "100"});
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["classes"] == "185");
  CHECK(run({"groups", "--V", "100000000"}).code == cli::kCapExceeded);
}

TEST_CASE("verify") {
  auto r = run({"verify", "--suite", "formulas"});
  CHECK(r.code == 0);
  CHECK(Json::parse(r.out)["ok"] == true);
  CHECK(r.err.find("formulas.A_n_oracle") != std::string::npos);
  CHECK(run({"verify", "--suite", "nothing"}).code == cli::kUsage);
}

TEST_CASE("thread count does not change output") {
  const auto a = run({"--threads", "1", "count", "--n", "3", "--V", "20000"});
  const auto b = run({"--threads", "7", "count", "--n", "3", "--V", "20000"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("io helpers") {
  const auto b = lattice::HnfBasis::from_rows({{1, 1}, {0, 2}});
  CHECK(io::hnf_from_json(io::to_json(b)) == b);
  CHECK(io::dump(io::to_json(b)) == R"({"n":2,"rows":[[1,1],[0,2]]})");
  CHECK_THROWS(io::hnf_from_json(Json::parse(R"({"n":2,"rows":[[1,2],[0,2]]})")));
  const auto e = io::to_json(ErrBoundedReal(0.1L, 1e-20L));
  CHECK(e["err"].get<double>() >= 1e-20);
  CHECK(e["err"].get<double>() > 0);
  std::ostringstream os;
  io::write_csv_row(os, {"a", "1", ""});
  CHECK(os.str() == "a,1,\n");
  CHECK(io::format_real(0.5L) == "0.5");
}
