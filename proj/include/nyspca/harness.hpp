#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nyspca/basis.hpp"
#include "nyspca/bounds.hpp"
#include "nyspca/mat.hpp"
#include "nyspca/simgen.hpp"
#include "nyspca/specapprox.hpp"

namespace nyspca {

/// A simulation condition: random:<x> or band:<b>.
struct ModelRequest {
  PrecisionSpec::Model model = PrecisionSpec::Model::band;
  double x = 0.0;
  std::size_t b = 0;

  std::string label() const;
};
/// Parses "random:<x>" / "band:<b>"; InvalidParameter otherwise.
ModelRequest parse_model(std::string_view text);

/// Precision matrix for a condition; the seed only matters for random:<x>.
std::pair<Mat, PrecisionSpec> make_precision(const ModelRequest& req, std::size_t p,
                                             std::uint64_t seed);

enum class LRule { default_grid, explicit_list };

struct ExperimentConfig {
  std::optional<ModelRequest> model;           // simulate, or ...
  std::optional<std::filesystem::path> input;  // ... load a matrix
  std::size_t n = 0;
  std::size_t p = 0;
  std::vector<std::size_t> d_list;
  LRule l_rule = LRule::default_grid;
  std::vector<std::size_t> l_list;
  std::vector<Method> methods;
  std::vector<std::uint64_t> seeds;
  NystromRoute route = NystromRoute::stable;
  bool with_bounds = false;
  bool center = true;
  std::size_t timing_runs = 1;  // median over this many repetitions
};

/// Throws InvalidParameter describing the first problem found.
void validate(const ExperimentConfig& cfg);

struct ResultRow {
  std::string condition;
  std::size_t n = 0;
  std::size_t p = 0;
  std::size_t d = 0;
  std::size_t l = 0;
  Method method = Method::exact;
  std::uint64_t seed = 0;
  std::optional<double> delta;
  std::optional<double> relative_error;
  std::optional<double> bound_total;
  std::optional<double> gap;
  double pd_shift = 0.0;
  double runtime_ms = 0.0;
  std::string status = "ok";

  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

/// Ten equally spaced integers from ⌈3d/2⌉ to min(15d, ⌊2p/5⌋), rounded to
/// nearest and deduplicated; both endpoints are kept exactly.
std::vector<std::size_t> expand_l_grid(std::size_t d, std::size_t p);

/// Centered data for one seed of a config, with its label and PD shift.
struct Dataset {
  Mat x;
  std::string condition;
  double pd_shift = 0.0;
};
Dataset prepare_dataset(const ExperimentConfig& cfg, std::uint64_t seed);

/// Seed of the sketch used for a (seed, l) cell; the method and its
/// column-sampling reference always share it.
std::uint64_t selection_seed(std::uint64_t seed, std::size_t l);

/// Rows ordered by (seed, d, l, method) in config order. Cell failures are
/// written to the status column and never abort the run.
std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg);

/// As run_experiment with `runs` timed repetitions per cell; runtime_ms is
/// the median.
std::vector<ResultRow> time_methods(const ExperimentConfig& cfg, std::size_t runs = 4);

inline constexpr std::string_view kResultsHeader =
    "condition,n,p,d,l,method,seed,delta,relative_error,bound_total,gap,pd_shift,runtime_ms,status";

void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows,
                       bool include_runtime = true);
std::vector<ResultRow> read_results_csv(std::istream& in);

/// RFC-4180 field splitting of a single record (no embedded newlines).
std::vector<std::string> split_csv_record(std::string_view line);

/// Median runtime per (method, d) across l, laid out like a timing table.
std::string timing_table(const std::vector<ResultRow>& rows);

/// Relative-error-vs-l curves (median over seeds) for one d, as SVG.
void write_svg_plot(const std::filesystem::path& path, const std::vector<ResultRow>& rows,
                    std::size_t d);

/// One line of the `bounds` subcommand.
struct BoundRow {
  std::string kind;
  std::optional<BoundReport> report;
  std::string status = "ok";
};
std::vector<BoundRow> evaluate_bounds(const Mat& x, const Selection& sel, std::size_t d);
void write_bounds_csv(std::ostream& out, const std::vector<BoundRow>& rows);

}  // namespace nyspca
