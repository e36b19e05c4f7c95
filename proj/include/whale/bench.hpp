#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "whale/cloud.hpp"
#include "whale/landmarks.hpp"
#include "whale/persistence.hpp"
#include "whale/witness.hpp"

namespace whale {

enum class PresetName { deep_dive, deep_dive_fast };

struct PresetConfig {
  PresetName name = PresetName::deep_dive_fast;
  int max_dim = 1;
  std::size_t k_witness = 4;
  bool rips_reference_enabled = false;
  std::size_t rips_sample_size = 300;
  AutoMParams auto_m;                  // filled by preset()
  std::size_t thinning_cap = 1000000;  // volume point budget
};

PresetConfig preset(PresetName name);

struct BenchmarkRecord {
  std::string dataset;
  SelectionMethod method = SelectionMethod::hybrid;
  std::size_t n_retained = 0;
  std::size_t m = 0;
  bool auto_m_used = false;
  std::size_t k_witness = 0;
  int max_dim = 1;
  std::uint64_t seed = 0;
  double selection_seconds = 0.0;
  double witness_seconds = 0.0;
  double persistence_seconds = 0.0;
  double cov_mean = 0.0;
  double cov_mean_weighted = 0.0;
  double cov_p95 = 0.0;
  double cov_p95_weighted = 0.0;
  double cov_ratio = 0.0;
  std::size_t h0_count = 0;
  std::size_t h1_count = 0;
  std::size_t h2_count = 0;                // 0 when max_dim == 1
  std::optional<double> bottleneck_h1;     // absent without a Rips reference
};

extern const char* const kBenchmarkCsvHeader;

std::string record_to_csv_row(const BenchmarkRecord& r);

// Dataset source for a run: exactly one generator/file variant is active.
struct DatasetSpec {
  enum class Kind { swiss_roll, torus, gaussian, phantom, cloud_file, volume_file };
  Kind kind = Kind::torus;
  std::string label;             // CSV "dataset" field
  std::size_t n = 5000;          // generator point budget
  double noise = 0.0;
  double major_radius = 1.0;
  double minor_radius = 0.35;
  std::size_t components = 250;
  double separation = 2.0;
  std::array<std::uint32_t, 3> phantom_dims{64, 64, 64};
  std::string path;              // cloud_file / volume_file
  double intensity_quantile = 0.75;
  std::optional<std::size_t> max_points;  // overrides the preset thinning cap
};

struct RunConfig {
  PresetConfig preset;
  DatasetSpec dataset;
  std::vector<SelectionMethod> methods{SelectionMethod::hybrid};
  std::vector<std::uint64_t> seeds{0};
  std::optional<std::size_t> explicit_m;  // exclusive with auto-m
  bool use_auto_m = true;
  HybridParams hybrid;                    // seed field is overwritten per job
  CycleAwareParams cycle;
  double coverage_p = 0.95;
  double coverage_radius = 0.05;
  std::size_t rips_sample = 0;            // 0 disables the reference
  std::string diagram_out;                // witness diagram CSV (single job only)
  std::string reference_diagram_out;      // truncated Rips H1 reference (single job)
  std::string filtration_dump;            // witness filtration dump (single job)
};

// Runs every (method, seed) job in order and returns the records. Jobs are
// pure functions of (config, method, seed); *_seconds fields are the only
// nondeterministic outputs.
std::vector<BenchmarkRecord> run_benchmark(const RunConfig& config);

void write_benchmark_csv(const std::vector<BenchmarkRecord>& records, const std::string& path);

// Bottleneck comparison window used for the bottleneck_h1 column: both H1
// diagrams truncated at the witness filtration's maximum value, the Rips
// reference built with that value as its cap.
double compare_h1_truncated(const PersistenceDiagram& witness, const PersistenceDiagram& rips,
                            double T);

}  // namespace whale
