#include "concswap/sweep.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <system_error>

#include "concswap/concurrence.hpp"
#include "concswap/swap.hpp"

namespace concswap {

namespace {

double grid_point(std::size_t k, std::size_t grid) {
  return static_cast<double>(k) / static_cast<double>(grid - 1);
}

// Zero-concurrence contour of the depolarized pure pair.
double input_boundary(double lam0) {
  return 1.0 - 1.0 / (1.0 + 4.0 * std::sqrt(lam0 * (1.0 - lam0)));
}

template <typename Fn>
SweepTable p_lambda_map(std::vector<std::string> headers, std::size_t grid, Fn&& values) {
  SweepTable t(std::move(headers));
  for (std::size_t i = 0; i < grid; ++i) {
    const double p = grid_point(i, grid);
    for (std::size_t j = 0; j < grid; ++j) {
      const double lam0 = grid_point(j, grid);
      std::vector<double> row{p, lam0};
      for (double v : values(p, lam0)) row.push_back(v);
      t.add_row(std::move(row));
    }
  }
  return t;
}

// Windows around lambda0 = 1/2 on p in [0, 1 - 1/sqrt3): the output window
// picked by `pick`, then the input window.
template <typename Pick>
SweepTable window_boundary(std::size_t grid, Pick&& pick) {
  SweepTable t({"p", "lambda0_lo", "lambda0_hi", "input_lo", "input_hi"});
  const double p_end = qubit_output_threshold();
  for (std::size_t k = 0; k < grid; ++k) {
    const double p = static_cast<double>(k) * p_end / static_cast<double>(grid);
    const auto out = output_entanglement_windows(p);
    const auto in = input_entanglement_window(p);
    if (!out || !in) throw std::logic_error("window grid left the entangled region");
    const double half = pick(*out);
    t.add_row({p, 0.5 - half, 0.5 + half, in->first, in->second});
  }
  return t;
}

}  // namespace

SweepTable::SweepTable(std::vector<std::string> headers) : headers_(std::move(headers)) {
  if (headers_.empty()) throw std::invalid_argument("SweepTable needs at least one column");
}

void SweepTable::add_row(std::vector<double> row) {
  if (row.size() != headers_.size())
    throw std::invalid_argument("SweepTable row width does not match the header");
  rows_.push_back(std::move(row));
}

std::string format_number(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::general, 17);
  if (res.ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return std::string(buf.data(), res.ptr);
}

std::string to_csv(const SweepTable& table) {
  std::string out;
  for (std::size_t c = 0; c < table.headers().size(); ++c) {
    if (c) out += ',';
    out += table.headers()[c];
  }
  out += '\n';
  for (const auto& row : table.rows()) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_number(row[c]);
    }
    out += '\n';
  }
  return out;
}

std::string to_meta(const SweepTable& table) {
  std::string out;
  for (const auto& [key, value] : table.metadata) out += key + '=' + value + '\n';
  return out;
}

std::size_t default_grid(int figure) {
  if (figure < 1 || figure > kFigureCount) throw std::invalid_argument("figure must be 1..8");
  return figure >= 7 ? 1001 : 201;
}

std::size_t expected_rows(int figure, std::size_t grid) {
  if (figure < 1 || figure > kFigureCount) throw std::invalid_argument("figure must be 1..8");
  switch (figure) {
    case 5: return std::size(kRatioLambdas) * grid;
    case 7:
    case 8: return std::size(kIsotropicDims) * grid;
    default: return grid * grid;
  }
}

FigureSweep sweep_figure(int figure, std::size_t grid) {
  if (figure < 1 || figure > kFigureCount) throw std::invalid_argument("figure must be 1..8");
  if (grid < 2) throw std::invalid_argument("grid must have at least 2 points");

  switch (figure) {
    case 1: {
      FigureSweep s{p_lambda_map({"p", "lambda0", "C_X"}, grid,
                                 [](double p, double l) {
                                   return std::array{noisy_input_concurrence(p, l)};
                                 }),
                    SweepTable({"lambda0", "p_boundary"})};
      for (std::size_t j = 0; j < grid; ++j) {
        const double lam0 = grid_point(j, grid);
        s.boundary->add_row({lam0, input_boundary(lam0)});
      }
      return s;
    }
    case 2:
      return {p_lambda_map({"p", "lambda0", "P_Phi", "P_Psi"}, grid,
                           [](double p, double l) {
                             const auto r = noisy_qubit_closed_form(p, l);
                             return std::array{r.p_phi, r.p_psi};
                           }),
              std::nullopt};
    case 3:
      return {p_lambda_map({"p", "lambda0", "C_Phi"}, grid,
                           [](double p, double l) {
                             return std::array{noisy_qubit_closed_form(p, l).c_phi};
                           }),
              window_boundary(grid, [](const auto& w) { return w.first; })};
    case 4:
      return {p_lambda_map({"p", "lambda0", "C_Psi"}, grid,
                           [](double p, double l) {
                             return std::array{noisy_qubit_closed_form(p, l).c_psi};
                           }),
              window_boundary(grid, [](const auto& w) { return w.second; })};
    case 5: {
      SweepTable t({"lambda0", "p", "ratio"});
      for (double lam0 : kRatioLambdas) {
        const double p_end = input_boundary(lam0);
        for (std::size_t k = 0; k < grid; ++k) {
          const double p = static_cast<double>(k) * p_end / static_cast<double>(grid);
          t.add_row({lam0, p, ratio_cav_over_cx2(p, lam0)});
        }
      }
      return {std::move(t), std::nullopt};
    }
    case 6:
      // C_av > 0 exactly where the wider Psi window is open.
      return {p_lambda_map({"p", "lambda0", "C_av"}, grid,
                           [](double p, double l) {
                             return std::array{noisy_qubit_closed_form(p, l).c_av};
                           }),
              window_boundary(grid, [](const auto& w) { return w.second; })};
    case 7: {
      SweepTable t({"N", "p", "C_I"});
      for (std::size_t n : kIsotropicDims)
        for (std::size_t k = 0; k < grid; ++k) {
          const double p = grid_point(k, grid);
          t.add_row({static_cast<double>(n), p, isotropic_i_concurrence(IsotropicParams(n, p))});
        }
      return {std::move(t), std::nullopt};
    }
    default: {
      SweepTable t({"N", "p", "ratio"});
      for (std::size_t n : kIsotropicDims) {
        const double p_end = isotropic_input_threshold(n);
        for (std::size_t k = 0; k < grid; ++k) {
          const double p = static_cast<double>(k) * p_end / static_cast<double>(grid);
          const double in = isotropic_i_concurrence(IsotropicParams(n, p));
          const double out = isotropic_i_concurrence(IsotropicParams(n, swapped_mixing(p)));
          t.add_row({static_cast<double>(n), p, out / in});
        }
      }
      return {std::move(t), std::nullopt};
    }
  }
}

std::string boundary_path(const std::string& out) {
  const auto slash = out.find_last_of('/');
  const auto dot = out.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash) ||
      dot == (slash == std::string::npos ? 0 : slash + 1))
    return out + "_boundary";
  return out.substr(0, dot) + "_boundary" + out.substr(dot);
}

}  // namespace concswap
