#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "widomlab/common.hpp"
#include "widomlab/geometry.hpp"
#include "widomlab/trace.hpp"
#include "widomlab/widom.hpp"

namespace widomlab::cli {

enum class ExperimentKind {
  trace2,
  trace_f,
  gamma_decay,
  entropy_lattice,
  entropy_continuum,
  roccaforte,
  lemma51,
  fit,
};

std::string to_string(ExperimentKind k);
ExperimentKind experiment_kind_from(const std::string& name);

struct GridSpec {
  double min = 0.0;
  double max = 0.0;
  bool log_spacing = true;
  int count = 0;

  std::vector<double> expand() const;
};

struct DomainSpec {
  std::string kind;                                // box | ball | ellipsoid
  int dim = 1;
  double radius = 1.0;
  std::vector<double> center;
  std::vector<double> axes;
  std::vector<std::pair<double, double>> bounds;

  geometry::Domain build() const;
};

struct SymbolSpec {
  std::string kind = "one";  // one | cos_p:<a>
  fourier::Symbol build() const;
};

/// Parsed, validated experiment description. Unknown keys are rejected with
/// the offending "section.key" named.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::trace2;
  std::uint64_t seed = 1;
  int jobs = 0;  // 0 -> hardware concurrency
  bool no_cache = false;
  std::string out_dir = ".";
  std::string cache_dir;  // empty -> out_dir/cache (or env override)

  DomainSpec omega, gamma;
  SymbolSpec symbol;
  GridSpec r_grid;
  std::vector<double> r_list;      // explicit grid overrides r_grid
  std::vector<int> l_list;         // lattice sizes
  double k_fermi = 0.5 * kPi;
  std::vector<double> betas{1.0};
  int resolution = 0;
  std::string spectral_function = "t2";  // t<k> | eta | eta_beta:<b>

  std::vector<double> eps_list;
  std::vector<Vec> translates;
  std::string weight = "one";  // one | affine:<c>
  std::string volume_method = "closed";

  int identity_n = 6;
  int identity_trials = 100;

  std::string fit_input;  // CSV path for the fit experiment
  int fit_dim = 1;
  double fit_leading_a = 0.0;

  double tol_log_coefficient_rel = 0.10;
  double tol_identity_abs = 1e-10;
  double tol_slope_lo = 1.8;
  double tol_slope_hi = 2.2;

  std::string echo;  // canonical round-trip text

  std::vector<double> expanded_r() const { return r_list.empty() ? r_grid.expand() : r_list; }
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);
std::string canonical_text(const ExperimentConfig& c);

struct ReportRow {
  double x = 0.0;  // R, L, eps, or |v| depending on the experiment
  double value = 0.0;
  std::string method;
  double std_error = 0.0;
  double wall_ms = 0.0;
};

struct FitRecord {
  std::string label;
  double coefficient = 0.0;
  double std_error = 0.0;
  double target = 0.0;
  std::string status;  // "theorem" or "conjectural"
  bool pass = false;
};

struct ExperimentReport {
  std::string experiment;
  std::string config_echo;
  std::uint64_t seed = 0;
  std::vector<ReportRow> rows;
  std::vector<FitRecord> fits;
  std::vector<std::string> notes;
  bool pass = false;

  /// Fixed schema (R,value,method,stderr,wall_ms); wall_ms is written as 0 so
  /// that re-runs are byte-identical. Measured timings live in the JSON.
  std::string to_csv() const;
  std::string to_json() const;
};

/// 128-bit content hash (FNV-1a style) of the canonical key material.
struct CacheKey {
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;
  std::string hex() const;
};

CacheKey cache_key(const std::string& material);

/// Append-only record file guarded by an advisory lock; a lock timeout
/// degrades to computing without caching.
class TraceCache {
 public:
  explicit TraceCache(std::string directory, bool enabled = true);

  std::optional<trace::TraceResult> get(const CacheKey& key) const;
  void put(const CacheKey& key, const trace::TraceResult& value) const;
  bool enabled() const { return enabled_; }
  const std::string& directory() const { return dir_; }

 private:
  std::string dir_;
  std::string record_path_;
  std::string lock_path_;
  bool enabled_;
};

ExperimentReport run(const ExperimentConfig& config);

/// Writes <out_dir>/<experiment>.csv and .json; returns the CSV path.
std::string write_report(const ExperimentReport& report, const std::string& out_dir);

}  // namespace widomlab::cli
