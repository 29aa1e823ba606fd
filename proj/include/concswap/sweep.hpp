// Parameter sweeps behind the figures, as plain tables of doubles.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace concswap {

class SweepTable {
 public:
  explicit SweepTable(std::vector<std::string> headers);

  /// Throws std::invalid_argument unless the row has one value per header.
  void add_row(std::vector<double> row);

  const std::vector<std::string>& headers() const { return headers_; }
  const std::vector<std::vector<double>>& rows() const { return rows_; }

  /// Ordered key/value pairs; written to the sidecar, never into the CSV.
  std::vector<std::pair<std::string, std::string>> metadata;

 private:
  std::vector<std::string> headers_;
  std::vector<std::vector<double>> rows_;
};

/// 17 significant digits (reads back to the same double), locale
/// independent.
std::string format_number(double v);

/// Header line then one line per row, comma separated, LF endings.
std::string to_csv(const SweepTable& table);

/// "key=value" lines.
std::string to_meta(const SweepTable& table);

struct FigureSweep {
  SweepTable data;
  std::optional<SweepTable> boundary;
};

inline constexpr int kFigureCount = 8;

/// 201 for the (p, lambda0) maps, 1001 for the isotropic curves.
std::size_t default_grid(int figure);

/// Rows the data table of `figure` has at density `grid`.
std::size_t expected_rows(int figure, std::size_t grid);

/// Dimensions of the isotropic curves.
inline constexpr std::size_t kIsotropicDims[] = {2, 3, 4, 5, 8};

/// lambda0 values of the ratio curves (figure 5).
inline constexpr double kRatioLambdas[] = {0.01, 0.025, 0.1, 0.15, 0.25, 0.5};

/// Throws std::invalid_argument for an unknown figure or grid < 2.
FigureSweep sweep_figure(int figure, std::size_t grid);

/// "dir/fig.csv" -> "dir/fig_boundary.csv"; no extension appends the suffix.
std::string boundary_path(const std::string& out);

}  // namespace concswap
