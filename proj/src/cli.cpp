#include "concswap/cli.hpp"

#include <CLI11.hpp>

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "concswap/sweep.hpp"
#include "concswap/swap.hpp"
#include "concswap/verify.hpp"

namespace concswap {

namespace {

constexpr std::size_t kChainOracleMax = 10;

// Exit code carried out of a subcommand.
struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double v) {
  std::array<char, 64> buf{};
  const auto r = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                               std::chars_format::general, 12);
  return std::string(buf.data(), r.ptr);
}

std::string num(Complex z) {
  if (z.imag() == 0.0) return num(z.real());
  return num(z.real()) + (z.imag() < 0.0 ? "-" : "+") + num(std::abs(z.imag())) + "i";
}

double parse_double(std::string_view text) {
  double v = 0.0;
  const auto r = std::from_chars(text.data(), text.data() + text.size(), v);
  if (r.ec != std::errc{} || r.ptr != text.data() + text.size() || text.empty())
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  return v;
}

// "a:b,c:d,..." into two-term spectra.
std::vector<SchmidtSpectrum> parse_pairs(std::string_view text) {
  std::vector<SchmidtSpectrum> pairs;
  while (true) {
    const auto comma = text.find(',');
    const std::string_view item = text.substr(0, comma);
    const auto colon = item.find(':');
    if (colon == std::string_view::npos)
      throw std::invalid_argument("pair '" + std::string(item) + "' is not of the form a:b");
    pairs.emplace_back(std::vector<double>{parse_double(item.substr(0, colon)),
                                           parse_double(item.substr(colon + 1))});
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return pairs;
}

void print_outcomes(std::ostream& out, const SwapReport& r) {
  out << "outcome probability concurrence\n";
  for (std::size_t k = 0; k < r.outcomes.size(); ++k)
    out << r.outcomes[k].label << ' ' << num(r.outcomes[k].probability) << ' '
        << num(r.per_outcome_concurrence[k]) << '\n';
}

void print_summary(std::ostream& out, const SwapReport& r) {
  out << "method: " << to_string(r.method_tag) << '\n';
  if (r.method_tag != Method::closed_form)
    out << "average_concurrence: " << num(r.average_concurrence) << '\n';
  if (r.closed_form_value) out << "closed_form: " << num(*r.closed_form_value) << '\n';
  if (r.method_tag == Method::both) out << "difference: " << num(r.discrepancy()) << '\n';
}

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) return false;
  f << content;
  f.close();
  return static_cast<bool>(f);
}

std::string command_line(int argc, const char* const* argv) {
  std::string s = "concswap";
  for (int i = 1; i < argc; ++i) s += ' ' + std::string(argv[i]);
  return s;
}

struct Args {
  double lam0 = 0.5;
  double lam0p = 0.5;
  std::optional<std::string> alpha0, beta0, alpha1, beta1;
  std::string specs;
  double p = 0.0;
  std::size_t n = 2;
  std::string lams, lamsp;
  int figure = 0;
  std::string out_path;
  std::optional<std::size_t> grid;
  std::uint64_t seed = VerifyOptions{}.seed;
  std::size_t trials = VerifyOptions{}.trials;
};

void cmd_pure(const Args& a, std::ostream& out) {
  const SchmidtSpectrum s1 = SchmidtSpectrum::qubit(a.lam0);
  const SchmidtSpectrum s2 = SchmidtSpectrum::qubit(a.lam0p);
  const bool custom = a.alpha0 || a.beta0 || a.alpha1 || a.beta1;
  const Complex h(std::numbers::sqrt2 / 2.0, 0.0);
  const auto coeff = [&h](const std::optional<std::string>& s) {
    return s ? parse_complex(*s) : h;
  };
  const MeasurementBasis basis =
      custom ? generalized_bell_basis(coeff(a.alpha0), coeff(a.beta0), coeff(a.alpha1),
                                      coeff(a.beta1))
             : bell_basis();
  out << "C_ab: " << num(concurrence_pure_qubit(s1)) << '\n';
  out << "C_cd: " << num(concurrence_pure_qubit(s2)) << '\n';
  if (custom)
    out << "basis: generalized Bell alpha0=" << num(coeff(a.alpha0)) << " beta0="
        << num(coeff(a.beta0)) << " alpha1=" << num(coeff(a.alpha1)) << " beta1="
        << num(coeff(a.beta1)) << '\n';
  else
    out << "basis: Bell\n";
  const SwapReport r = swap_pure_qubits(s1, s2, basis);
  print_outcomes(out, r);
  print_summary(out, r);
}

void cmd_chain(const Args& a, std::ostream& out) {
  const auto pairs = parse_pairs(a.specs);
  out << "pairs: " << pairs.size() << '\n';
  out << "closed_form: " << num(swap_chain(pairs)) << '\n';
  if (pairs.size() <= kChainOracleMax) {
    const double oracle = swap_chain_oracle(pairs);
    out << "oracle: " << num(oracle) << '\n';
    out << "difference: " << num(std::abs(oracle - swap_chain(pairs))) << '\n';
  } else {
    out << "oracle: skipped (more than " << kChainOracleMax << " pairs)\n";
  }
}

void cmd_ghz(const Args& a, std::ostream& out) {
  const auto pairs = parse_pairs(a.specs);
  if (pairs.size() != 3) throw std::invalid_argument("ghz needs exactly three pairs");
  const SwapReport r = ghz_swap(pairs[0], pairs[1], pairs[2]);
  print_outcomes(out, r);
  print_summary(out, r);
}

void cmd_noisy_qubit(const Args& a, std::ostream& out) {
  const NoisyQubitSwap cf = noisy_qubit_closed_form(a.p, a.lam0);
  const double cx = noisy_input_concurrence(a.p, a.lam0);
  out << "C_X: " << num(cx) << '\n';
  out << "P_Phi: " << num(cf.p_phi) << '\n';
  out << "P_Psi: " << num(cf.p_psi) << '\n';
  out << "C_Phi: " << num(cf.c_phi) << '\n';
  out << "C_Psi: " << num(cf.c_psi) << '\n';
  const SwapReport r = swap_noisy_qubits(a.p, a.lam0);
  print_outcomes(out, r);
  print_summary(out, r);
  out << "upper_bound: " << num(noisy_upper_bound(a.p, a.lam0)) << '\n';
  if (cx > 0.0) out << "ratio_C_av_over_C_X2: " << num(ratio_cav_over_cx2(a.p, a.lam0)) << '\n';
}

void cmd_qudit(const Args& a, std::ostream& out) {
  const SchmidtSpectrum s1 = SchmidtSpectrum::parse(a.lams);
  const SchmidtSpectrum s2 = SchmidtSpectrum::parse(a.lamsp);
  out << "N: " << s1.size() << '\n';
  out << "C_I_ab: " << num(i_concurrence_pure(s1)) << '\n';
  out << "C_I_cd: " << num(i_concurrence_pure(s2)) << '\n';
  const SwapReport r = swap_pure_qudits(s1, s2);
  if (r.method_tag == Method::closed_form)
    out << "oracle: skipped (N > " << kPureQuditOracleMax << ")\n";
  print_summary(out, r);
}

void cmd_noisy_qudit(const Args& a, std::ostream& out) {
  const IsotropicParams par(a.n, a.p);
  out << "F: " << num(fidelity_isotropic(par)) << '\n';
  out << "C_I_in: " << num(isotropic_i_concurrence(par)) << '\n';
  out << "p_out: " << num(swapped_mixing(a.p)) << '\n';
  const SwapReport r = swap_noisy_qudits(par);
  if (r.method_tag == Method::closed_form) {
    out << "oracle: skipped (N > " << kNoisyQuditOracleMax << ")\n";
  } else {
    const IsotropicSwapCheck check = isotropic_swap_check(par);
    out << "max_probability_error: " << num(check.max_probability_error) << '\n';
    out << "max_alignment_residual: " << num(check.max_alignment_residual) << '\n';
  }
  print_summary(out, r);
}

void cmd_sweep(const Args& a, const std::string& cmdline, std::ostream& out) {
  const std::size_t grid = a.grid.value_or(default_grid(a.figure));
  FigureSweep s = sweep_figure(a.figure, grid);
  s.data.metadata = {{"command", cmdline},
                     {"seed", std::to_string(a.seed)},
                     {"version", std::string(kToolVersion)},
                     {"figure", std::to_string(a.figure)},
                     {"grid", std::to_string(grid)},
                     {"rows", std::to_string(s.data.rows().size())},
                     {"columns", std::to_string(s.data.headers().size())}};
  if (s.boundary) {
    s.data.metadata.emplace_back("boundary", boundary_path(a.out_path));
    s.data.metadata.emplace_back("boundary_rows", std::to_string(s.boundary->rows().size()));
  }
  if (!write_file(a.out_path, to_csv(s.data)))
    throw Failure("cannot write '" + a.out_path + "'");
  if (s.boundary && !write_file(boundary_path(a.out_path), to_csv(*s.boundary)))
    throw Failure("cannot write '" + boundary_path(a.out_path) + "'");
  const std::string meta = to_meta(s.data);
  if (!write_file(a.out_path + ".meta", meta))
    throw Failure("cannot write '" + a.out_path + ".meta'");
  out << meta;
}

void cmd_verify(const Args& a, std::ostream& out) {
  VerifyOptions opt;
  opt.seed = a.seed;
  opt.trials = a.trials;
  const auto results = run_verify(opt);
  out << "seed=" << a.seed << " trials=" << a.trials << '\n';
  out << format_results(results);
  for (const auto& r : results)
    if (!r.passed) throw Failure("verification failed");
}

}  // namespace

Complex parse_complex(std::string_view text) {
  const auto bad = [text] {
    return std::invalid_argument("not a complex number: '" + std::string(text) + "'");
  };
  if (text.empty()) throw bad();
  if (text.back() != 'i') return {parse_double(text), 0.0};
  const std::string_view body = text.substr(0, text.size() - 1);
  // The sign splitting real and imaginary parts is the last one not
  // belonging to an exponent.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;)
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  try {
    if (split == std::string_view::npos) return {0.0, parse_double(body)};
    const std::string_view imag = body.substr(split + (body[split] == '+' ? 1 : 0));
    return {parse_double(body.substr(0, split)), parse_double(imag)};
  } catch (const std::invalid_argument&) {
    throw bad();
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entanglement swapping: average concurrence by closed form and brute force",
               "concswap"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);
  Args a;

  auto* pure = app.add_subcommand("pure", "two pure qubit pairs, Bell or generalized Bell basis");
  pure->add_option("--lam0", a.lam0, "largest Schmidt weight of pair ab")->required();
  pure->add_option("--lam0p", a.lam0p, "largest Schmidt weight of pair cd")->required();
  pure->add_option("--alpha0", a.alpha0, "complex, re[+imi]");
  pure->add_option("--beta0", a.beta0, "complex, re[+imi]");
  pure->add_option("--alpha1", a.alpha1, "complex, re[+imi]");
  pure->add_option("--beta1", a.beta1, "complex, re[+imi]");

  auto* chain = app.add_subcommand("chain", "repeater chain of pure qubit pairs");
  chain->add_option("--specs", a.specs, "pairs as l0:l1,l0:l1,...")->required();

  auto* ghz = app.add_subcommand("ghz", "three pure pairs swapped in the GHZ basis");
  ghz->add_option("--specs", a.specs, "three pairs as l0:l1,l0:l1,l0:l1")->required();

  auto* noisy_qubit = app.add_subcommand("noisy-qubit", "two depolarized pure qubit pairs");
  noisy_qubit->add_option("--p", a.p, "mixing parameter")->required();
  noisy_qubit->add_option("--lam0", a.lam0, "Schmidt weight of |00>")->required();

  auto* qudit = app.add_subcommand("qudit", "two pure qudit pairs in the chi basis");
  qudit->add_option("--lams", a.lams, "Schmidt weights of pair ab, comma separated")->required();
  qudit->add_option("--lamsp", a.lamsp, "Schmidt weights of pair cd, comma separated")
      ->required();

  auto* noisy_qudit = app.add_subcommand("noisy-qudit", "two isotropic qudit pairs");
  noisy_qudit->add_option("--n", a.n, "local dimension")->required()->check(CLI::Range(2, 64));
  noisy_qudit->add_option("--p", a.p, "mixing parameter")->required();

  auto* sweep = app.add_subcommand("sweep", "write the CSV data of one figure");
  sweep->add_option("--figure", a.figure, "figure 1..8")->required()->check(CLI::Range(1, 8));
  sweep->add_option("--out", a.out_path, "output CSV path")->required();
  sweep->add_option("--grid", a.grid, "grid density (default 201, or 1001 for figures 7-8)")
      ->check(CLI::Range(2, 100000));
  sweep->add_option("--seed", a.seed, "recorded in the metadata");

  auto* verify = app.add_subcommand("verify", "run every invariant suite");
  verify->add_option("--seed", a.seed, "RNG seed");
  verify->add_option("--trials", a.trials, "suite size, 100 is the full run")
      ->check(CLI::Range(1, 100000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  const std::string cmdline = command_line(argc, argv);
  const std::vector<std::pair<CLI::App*, std::function<void()>>> handlers{
      {pure, [&] { cmd_pure(a, out); }},
      {chain, [&] { cmd_chain(a, out); }},
      {ghz, [&] { cmd_ghz(a, out); }},
      {noisy_qubit, [&] { cmd_noisy_qubit(a, out); }},
      {qudit, [&] { cmd_qudit(a, out); }},
      {noisy_qudit, [&] { cmd_noisy_qudit(a, out); }},
      {sweep, [&] { cmd_sweep(a, cmdline, out); }},
      {verify, [&] { cmd_verify(a, out); }},
  };
  try {
    for (const auto& [sub, run] : handlers)
      if (sub->parsed()) run();
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace concswap
