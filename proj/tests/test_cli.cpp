#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "concswap/cli.hpp"
#include "concswap/verify.hpp"

using namespace concswap;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "concswap");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("concswap_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

bool all_passed(const std::vector<SuiteResult>& results) {
  for (const auto& r : results)
    if (!r.passed) return false;
  return true;
}

bool suite_failed(const std::vector<SuiteResult>& results, const std::string& name) {
  for (const auto& r : results)
    if (r.name == name) return !r.passed;
  FAIL("no suite named " << name);
  return false;
}

}  // namespace

TEST_CASE("parse_complex") {
  CHECK(parse_complex("0.5") == Complex(0.5, 0.0));
  CHECK(parse_complex("-0.5") == Complex(-0.5, 0.0));
  CHECK(parse_complex("0.8i") == Complex(0.0, 0.8));
  CHECK(parse_complex("-1i") == Complex(0.0, -1.0));
  CHECK(parse_complex("0.6+0.8i") == Complex(0.6, 0.8));
  CHECK(parse_complex("0.6-0.8i") == Complex(0.6, -0.8));
  CHECK(parse_complex("1e-1+2e-1i") == Complex(0.1, 0.2));
  CHECK(parse_complex("1e+0-1e+0i") == Complex(1.0, -1.0));
  for (const char* bad : {"", "abc", "0.5+", "1+2", "i0.5", "0.5ii", "1 + 2i"})
    CHECK_THROWS_AS(parse_complex(bad), std::invalid_argument);
}

TEST_CASE("single-shot commands") {
  const Run pure = run({"pure", "--lam0", "0.7", "--lam0p", "0.6"});
  CHECK(pure.code == 0);
  CHECK(pure.out.find("average_concurrence: 0.897997772826") != std::string::npos);
  CHECK(pure.out.find("method: both") != std::string::npos);

  const Run gen = run({"pure", "--lam0", "0.7", "--lam0p", "0.6", "--alpha0", "0.6", "--beta0",
                       "0.8i"});
  CHECK(gen.code == 0);
  CHECK(gen.out.find("average_concurrence: 0.880037817369") != std::string::npos);

  const Run noisy = run({"noisy-qubit", "--p", "0.2", "--lam0", "0.5"});
  CHECK(noisy.code == 0);
  CHECK(noisy.out.find("average_concurrence: 0.46\n") != std::string::npos);

  CHECK(run({"chain", "--specs", "0.5:0.5,0.5:0.5,0.5:0.5"}).code == 0);
  const Run ghz = run({"ghz", "--specs", "0.7:0.3,0.6:0.4,0.8:0.2"});
  CHECK(ghz.code == 0);
  CHECK(ghz.out.find("average_concurrence: 0.718398218261") != std::string::npos);
  const Run qudit = run({"qudit", "--lams", "0.4,0.3,0.2,0.1", "--lamsp", "0.5,0.25,0.15,0.1"});
  CHECK(qudit.code == 0);
  CHECK(qudit.out.find("average_concurrence: 1.10035019236") != std::string::npos);
  const Run iso = run({"noisy-qudit", "--n", "3", "--p", "0.3"});
  CHECK(iso.code == 0);
  CHECK(iso.out.find("average_concurrence: 0.369504172281") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"--version"}).code == 0);
  CHECK(run({}).code == 1);
  CHECK(run({"bogus"}).code == 1);
  CHECK(run({"pure", "--lam0", "0.7"}).code == 1);
  CHECK(run({"pure", "--lam0", "1.7", "--lam0p", "0.5"}).code == 1);
  CHECK(run({"pure", "--lam0", "0.7", "--lam0p", "0.6", "--alpha0", "2"}).code == 1);
  CHECK(run({"qudit", "--lams", "0.5,0.6", "--lamsp", "0.5,0.5"}).code == 1);
  CHECK(run({"qudit", "--lams", "0.5,x", "--lamsp", "0.5,0.5"}).code == 1);
  CHECK(run({"ghz", "--specs", "0.5:0.5,0.5:0.5"}).code == 1);
  CHECK(run({"noisy-qubit", "--p", "1.5", "--lam0", "0.5"}).code == 1);
  CHECK(run({"noisy-qudit", "--n", "1", "--p", "0.1"}).code == 1);
  CHECK(run({"sweep", "--figure", "9", "--out", "x.csv"}).code == 1);
  CHECK(run({"verify", "--trials", "0"}).code != 0);
  const Run unwritable = run({"sweep", "--figure", "1", "--grid", "3", "--out",
                              "/nonexistent_concswap_dir/fig.csv"});
  CHECK(unwritable.code == 2);
  CHECK_FALSE(unwritable.err.empty());
}

TEST_CASE("sweep writes data, boundary and sidecar") {
  const TempDir dir;
  const std::string out = (dir.path / "fig3.csv").string();
  const Run r = run({"sweep", "--figure", "3", "--grid", "5", "--seed", "11", "--out", out});
  REQUIRE(r.code == 0);
  const std::string csv = slurp(out);
  CHECK(csv.rfind("p,lambda0,C_Phi\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 26);
  CHECK(csv.find('\r') == std::string::npos);
  const std::string boundary = slurp(dir.path / "fig3_boundary.csv");
  CHECK(boundary.rfind("p,lambda0_lo,lambda0_hi,input_lo,input_hi\n", 0) == 0);
  const std::string meta = slurp(out + ".meta");
  CHECK(meta.find("seed=11\n") != std::string::npos);
  CHECK(meta.find("figure=3\n") != std::string::npos);
  CHECK(meta.find("rows=25\n") != std::string::npos);
  CHECK(meta.find("version=0.1.0\n") != std::string::npos);
  CHECK(r.out == meta);

  const Run again = run({"sweep", "--figure", "3", "--grid", "5", "--seed", "11", "--out", out});
  CHECK(again.out == r.out);
  CHECK(slurp(out) == csv);
}

TEST_CASE("verify passes and is deterministic") {
  const Run a = run({"verify", "--trials", "5", "--seed", "3"});
  CHECK(a.code == 0);
  CHECK(a.out.find("35/35 suites passed") != std::string::npos);
  const Run b = run({"verify", "--trials", "5", "--seed", "3"});
  CHECK(a.out == b.out);
  CHECK(all_passed(run_verify(VerifyOptions{})));
}

TEST_CASE("verify catches wrong closed forms") {
  VerifyOptions sign_flip;
  sign_flip.trials = 20;
  sign_flip.closed_forms.noisy_qubit = [](double p, double lam0) {
    NoisyQubitSwap r = noisy_qubit_closed_form(p, lam0);
    r.p_phi -= p * (2.0 - p) / 2.0;  // +p(2-p)/4 becomes -p(2-p)/4
    return r;
  };
  const auto flipped = run_verify(sign_flip);
  CHECK(suite_failed(flipped, "swap.noisy_probabilities"));
  CHECK(suite_failed(flipped, "swap.noisy_completeness"));
  CHECK(format_results(flipped).find("FAIL") != std::string::npos);

  VerifyOptions scaled;
  scaled.trials = 20;
  scaled.closed_forms.pure_product = [](const SchmidtSpectrum& a, const SchmidtSpectrum& b) {
    return 0.999 * max_average_concurrence_pure(a, b);
  };
  CHECK(suite_failed(run_verify(scaled), "swap.product_rule"));

  VerifyOptions shifted;
  shifted.trials = 20;
  shifted.closed_forms.qudit_average = [](const SchmidtSpectrum& a, const SchmidtSpectrum& b) {
    return qudit_average_i_concurrence(a, b) + 1e-6;
  };
  CHECK(suite_failed(run_verify(shifted), "swap.qudit_oracle"));
}

TEST_CASE("q_brute_force_n3 reaches both fidelity endpoints") {
  CHECK(q_brute_force_n3(1.0 / 3.0, 1e-3) == doctest::Approx(0.0).epsilon(1e-7));
  CHECK(q_brute_force_n3(1.0, 1e-3) == doctest::Approx(std::sqrt(4.0 / 3.0)).epsilon(1e-12));
  for (double f : {0.4, 0.6, 0.8, 0.95})
    CHECK(std::abs(q_brute_force_n3(f, 1e-3) - q_branch(3, 1, f).q_value) < 2e-3);
  CHECK_THROWS_AS(q_brute_force_n3(0.2, 1e-3), std::invalid_argument);
  CHECK_THROWS_AS(q_brute_force_n3(0.5, 0.0), std::invalid_argument);
}
