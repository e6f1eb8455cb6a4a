#include "nyspca/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "nyspca/errors.hpp"
#include "nyspca/io.hpp"
#include "nyspca/kernels.hpp"
#include "nyspca/matcore.hpp"
#include "nyspca/rng.hpp"
#include "nyspca/subspace.hpp"

namespace nyspca {

namespace {

template <class T>
T parse_number(std::string_view s, const char* what) {
  T v{};
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end)
    throw InvalidParameter(std::string("cannot parse ") + what + " from '" + std::string(s) + "'");
  return v;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

std::string status_of(const std::exception& e) {
  const char* tag = "error";
  if (dynamic_cast<const GapError*>(&e)) tag = "gap_error";
  else if (dynamic_cast<const DegenerateSketch*>(&e)) tag = "degenerate_sketch";
  else if (dynamic_cast<const DegenerateReference*>(&e)) tag = "degenerate_reference";
  else if (dynamic_cast<const RankError*>(&e)) tag = "rank_error";
  else if (dynamic_cast<const InvalidParameter*>(&e)) tag = "invalid_parameter";
  else if (dynamic_cast<const DecompositionError*>(&e)) tag = "decomposition_error";
  return std::string(tag) + ": " + e.what();
}

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string quote_csv(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string opt_field(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

std::optional<double> opt_parse(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return parse_number<double>(s, "results field");
}

}  // namespace

std::string ModelRequest::label() const {
  if (model == PrecisionSpec::Model::band) return "band:" + std::to_string(b);
  return "random:" + format_double(x);
}

ModelRequest parse_model(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw InvalidParameter("model must be random:<x> or band:<b>, got '" + std::string(text) + "'");
  const auto kind = text.substr(0, colon);
  const auto arg = text.substr(colon + 1);
  ModelRequest r;
  if (kind == "random") {
    r.model = PrecisionSpec::Model::random;
    r.x = parse_number<double>(arg, "edge probability");
    if (!(r.x >= 0.0 && r.x <= 1.0)) throw InvalidParameter("random:<x> needs x in [0, 1]");
  } else if (kind == "band") {
    r.model = PrecisionSpec::Model::band;
    r.b = parse_number<std::size_t>(arg, "bandwidth");
  } else {
    throw InvalidParameter("unknown model '" + std::string(kind) + "'");
  }
  return r;
}

std::pair<Mat, PrecisionSpec> make_precision(const ModelRequest& req, std::size_t p,
                                             std::uint64_t seed) {
  if (req.model == PrecisionSpec::Model::band) return precision_band(p, req.b);
  return precision_random(p, req.x, seed);
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.model.has_value() == cfg.input.has_value())
    throw InvalidParameter("exactly one of a model or an input file is required");
  if (cfg.model && (cfg.n == 0 || cfg.p == 0))
    throw InvalidParameter("n and p must be positive for simulated data");
  if (cfg.d_list.empty()) throw InvalidParameter("d list is empty");
  if (std::find(cfg.d_list.begin(), cfg.d_list.end(), 0u) != cfg.d_list.end())
    throw InvalidParameter("d must be at least 1");
  if (cfg.l_rule == LRule::explicit_list && cfg.l_list.empty())
    throw InvalidParameter("explicit l list is empty");
  if (cfg.methods.empty()) throw InvalidParameter("method list is empty");
  if (cfg.seeds.empty()) throw InvalidParameter("seed list is empty");
  if (cfg.timing_runs == 0) throw InvalidParameter("timing runs must be positive");
}

std::vector<std::size_t> expand_l_grid(std::size_t d, std::size_t p) {
  if (d == 0 || p < 4)
    throw InvalidParameter("expand_l_grid: need d >= 1 and p >= 4, got d = " + std::to_string(d) +
                           ", p = " + std::to_string(p));
  const std::size_t lo = (3 * d + 1) / 2;
  const std::size_t hi = std::min(15 * d, (2 * p) / 5);
  if (lo > hi)
    throw InvalidParameter("expand_l_grid: lower end " + std::to_string(lo) + " exceeds upper end " +
                           std::to_string(hi));
  std::vector<std::size_t> grid;
  const double step = static_cast<double>(hi - lo) / 9.0;
  for (int i = 0; i < 10; ++i) {
    std::size_t v = lo + static_cast<std::size_t>(std::llround(step * i));
    if (i == 9) v = hi;
    if (grid.empty() || grid.back() != v) grid.push_back(v);
  }
  return grid;
}

std::uint64_t selection_seed(std::uint64_t seed, std::size_t l) { return derive_seed(seed, l); }

Dataset prepare_dataset(const ExperimentConfig& cfg, std::uint64_t seed) {
  Dataset ds;
  Mat raw;
  if (cfg.input) {
    raw = load_matrix(*cfg.input);
    ds.condition = "file:" + cfg.input->filename().string();
  } else {
    auto [omega, spec] = make_precision(*cfg.model, cfg.p, seed);
    raw = sample_mvn(cfg.n, omega, seed);
    ds.condition = cfg.model->label();
    ds.pd_shift = spec.pd_shift;
  }
  ds.x = cfg.center ? center_columns(raw) : std::move(raw);
  return ds;
}

namespace {

std::vector<ResultRow> run_grid(const ExperimentConfig& cfg, std::size_t runs) {
  validate(cfg);
  std::vector<ResultRow> rows;
  for (std::uint64_t seed : cfg.seeds) {
    const Dataset ds = prepare_dataset(cfg, seed);
    const Mat& x = ds.x;
    const std::size_t n = x.rows(), p = x.cols();
    const Svd full = svd(x);

    for (std::size_t d : cfg.d_list) {
      ResultRow proto;
      proto.condition = ds.condition;
      proto.n = n;
      proto.p = p;
      proto.d = d;
      proto.seed = seed;
      proto.pd_shift = ds.pd_shift;

      std::vector<std::size_t> grid;
      std::string grid_error;
      try {
        grid = cfg.l_rule == LRule::default_grid ? expand_l_grid(d, p) : cfg.l_list;
      } catch (const Error& e) {
        grid_error = status_of(e);
      }
      if (!grid_error.empty()) {
        for (Method m : cfg.methods) {
          ResultRow r = proto;
          r.method = m;
          r.status = grid_error;
          rows.push_back(std::move(r));
        }
        continue;
      }

      std::optional<Basis> exact_right, exact_left;
      std::string exact_error;
      try {
        exact_right = pca_right_from(full, n, d);
        exact_left = pca_left_from(full, n, d);
      } catch (const Error& e) {
        exact_error = status_of(e);
      }

      for (std::size_t l : grid) {
        const std::uint64_t sseed = selection_seed(seed, l);
        std::map<Method, Basis> references;
        auto selection_for = [&](Method m) {
          const Axis axis = sample_axis(m);
          return sample_uniform(axis == Axis::columns ? p : n, l, sseed, axis);
        };

        for (Method m : cfg.methods) {
          ResultRow r = proto;
          r.l = l;
          r.method = m;
          if (!exact_error.empty()) {
            r.status = exact_error;
            rows.push_back(std::move(r));
            continue;
          }
          try {
            if (m == Method::exact) {
              r.delta = 0.0;
              r.relative_error = 0.0;
              rows.push_back(std::move(r));
              continue;
            }
            const Basis& exact = target_of(m) == Target::right ? *exact_right : *exact_left;
            const Selection sel = selection_for(m);
            std::vector<double> times;
            std::optional<Basis> basis;
            for (std::size_t k = 0; k < runs; ++k) {
              const auto t0 = Clock::now();
              basis = approximate(m, x, sel, cfg.route);
              times.push_back(elapsed_ms(t0));
            }
            r.runtime_ms = median(times);
            r.delta = basis_distance(*basis, exact, d);

            const Method ref = reference_of(m);
            if (!references.contains(ref))
              references.emplace(ref, ref == m ? *basis : approximate(ref, x, selection_for(ref)));
            try {
              r.relative_error = relative_error(*basis, references.at(ref), exact, d);
            } catch (const DegenerateReference& e) {
              r.status = status_of(e);
            }

            if (cfg.with_bounds && (m == Method::v_nys || m == Method::v_cs)) {
              try {
                const BoundReport b = m == Method::v_nys ? nystrom_bound(x, sel, d) : cs_bound(x, sel, d);
                r.bound_total = b.total;
                r.gap = b.gap;
              } catch (const GapError& e) {
                r.gap = e.gap();
                if (r.status == "ok") r.status = status_of(e);
              }
            }
          } catch (const Error& e) {
            r.status = status_of(e);
          }
          rows.push_back(std::move(r));
        }
      }
    }
  }
  return rows;
}

}  // namespace

std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg) {
  return run_grid(cfg, cfg.timing_runs);
}

std::vector<ResultRow> time_methods(const ExperimentConfig& cfg, std::size_t runs) {
  if (runs == 0) throw InvalidParameter("time_methods: runs must be positive");
  return run_grid(cfg, runs);
}

void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows, bool include_runtime) {
  out << kResultsHeader << '\n';
  for (const auto& r : rows) {
    out << quote_csv(r.condition) << ',' << r.n << ',' << r.p << ',' << r.d << ',' << r.l << ','
        << to_string(r.method) << ',' << r.seed << ',' << opt_field(r.delta) << ','
        << opt_field(r.relative_error) << ',' << opt_field(r.bound_total) << ','
        << opt_field(r.gap) << ',' << format_double(r.pd_shift) << ','
        << (include_runtime ? format_double(r.runtime_ms) : "") << ',' << quote_csv(r.status)
        << '\n';
  }
}

std::vector<std::string> split_csv_record(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          fields.back() += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else if (c != '\r') {
      fields.back() += c;
    }
  }
  if (quoted) throw FormatError("unterminated quoted field in CSV record");
  return fields;
}

std::vector<ResultRow> read_results_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("results CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kResultsHeader) throw FormatError("results CSV header mismatch: '" + line + "'");
  std::vector<ResultRow> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto f = split_csv_record(line);
    if (f.size() != 14)
      throw FormatError("results CSV line " + std::to_string(lineno) + ": expected 14 fields, got " +
                        std::to_string(f.size()));
    try {
      ResultRow r;
      r.condition = f[0];
      r.n = parse_number<std::size_t>(f[1], "n");
      r.p = parse_number<std::size_t>(f[2], "p");
      r.d = parse_number<std::size_t>(f[3], "d");
      r.l = parse_number<std::size_t>(f[4], "l");
      r.method = method_from_string(f[5]);
      r.seed = parse_number<std::uint64_t>(f[6], "seed");
      r.delta = opt_parse(f[7]);
      r.relative_error = opt_parse(f[8]);
      r.bound_total = opt_parse(f[9]);
      r.gap = opt_parse(f[10]);
      r.pd_shift = parse_number<double>(f[11], "pd_shift");
      r.runtime_ms = f[12].empty() ? 0.0 : parse_number<double>(f[12], "runtime_ms");
      r.status = f[13];
      rows.push_back(std::move(r));
    } catch (const InvalidParameter& e) {
      throw FormatError("results CSV line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return rows;
}

std::string timing_table(const std::vector<ResultRow>& rows) {
  // (method, d) -> l -> runtimes over seeds
  std::map<std::pair<std::size_t, Method>, std::map<std::size_t, std::vector<double>>> cells;
  for (const auto& r : rows)
    if (r.status == "ok" && r.method != Method::exact) cells[{r.d, r.method}][r.l].push_back(r.runtime_ms);
  std::ostringstream out;
  std::size_t last_d = 0;
  for (const auto& [key, by_l] : cells) {
    const auto [d, m] = key;
    if (d != last_d) {
      out << "d = " << d << "\n  l:";
      for (const auto& [l, _] : by_l) out << ' ' << l;
      out << '\n';
      last_d = d;
    }
    out << "  " << to_string(m) << " (ms):";
    for (const auto& [l, t] : by_l) {
      char buf[32];
      std::snprintf(buf, sizeof buf, " %.3f", median(t));
      out << buf;
    }
    out << '\n';
  }
  return out.str();
}

std::vector<BoundRow> evaluate_bounds(const Mat& x, const Selection& sel, std::size_t d) {
  std::vector<BoundRow> out;
  auto attempt = [&](const char* kind, auto&& fn) {
    BoundRow row;
    row.kind = kind;
    try {
      row.report = fn();
    } catch (const Error& e) {
      row.status = status_of(e);
    }
    out.push_back(std::move(row));
  };
  attempt("nystrom_full", [&] { return nystrom_bound(x, sel, d); });
  attempt("cs_full", [&] { return cs_bound(x, sel, d); });

  std::optional<std::pair<BoundReport, BoundReport>> cor;
  std::string cor_error;
  try {
    const double c = coherence_for_selection(x, sel);
    const auto lam = covariance_eigenvalues(x);
    const Mat ls = (1.0 / static_cast<double>(x.rows())) *
                   kernels::matmul_tn(x, take_columns(x, sel.indices));
    const double gap = spectral_gap(lam, svd(ls).sigma, d);
    const Mat v = nystrom_basis_unscaled(x, sel);
    if (v.cols() < d) throw RankError("Nyström basis has fewer than d columns", v.cols());
    cor = corollary_bounds(c, x.cols(), sel.l(), x.rows(), gap, v.leading_columns(d), d);
  } catch (const Error& e) {
    cor_error = status_of(e);
  }
  BoundRow a{"nystrom_corollary", cor ? std::optional(cor->first) : std::nullopt,
             cor ? "ok" : cor_error};
  BoundRow b{"cs_corollary", cor ? std::optional(cor->second) : std::nullopt,
             cor ? "ok" : cor_error};
  out.push_back(std::move(a));
  out.push_back(std::move(b));
  return out;
}

void write_bounds_csv(std::ostream& out, const std::vector<BoundRow>& rows) {
  out << "kind,d,l,gap,term1,term2,total,coherence,clamped,status\n";
  for (const auto& r : rows) {
    out << r.kind << ',';
    if (r.report) {
      const auto& b = *r.report;
      out << b.d << ',' << b.l << ',' << format_double(b.gap) << ',' << format_double(b.term1)
          << ',' << format_double(b.term2) << ',' << format_double(b.total) << ','
          << opt_field(b.coherence) << ',' << (b.clamped ? "true" : "false");
    } else {
      out << ",,,,,,,";
    }
    out << ',' << quote_csv(r.status) << '\n';
  }
}

}  // namespace nyspca
