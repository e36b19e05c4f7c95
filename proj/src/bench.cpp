#include "whale/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "whale/dataset.hpp"
#include "whale/diagnostics.hpp"
#include "whale/error.hpp"
#include "whale/io.hpp"

namespace whale {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_between(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

PointCloud build_dataset(const DatasetSpec& spec, const PresetConfig& preset,
                         std::uint64_t seed) {
  const std::size_t cap = spec.max_points.value_or(preset.thinning_cap);
  switch (spec.kind) {
    case DatasetSpec::Kind::swiss_roll:
      return gen_swiss_roll(spec.n, spec.noise, seed);
    case DatasetSpec::Kind::torus:
      return gen_torus(spec.n, spec.major_radius, spec.minor_radius, spec.noise, seed);
    case DatasetSpec::Kind::gaussian:
      return gen_gaussian_mixture(spec.n, spec.components, spec.separation, seed);
    case DatasetSpec::Kind::phantom: {
      const VolumeGrid vol = gen_phantom(spec.phantom_dims, seed);
      return volume_to_cloud(vol, spec.intensity_quantile, cap, seed);
    }
    case DatasetSpec::Kind::cloud_file:
      return read_cloud_csv(spec.path);
    case DatasetSpec::Kind::volume_file: {
      const VolumeGrid vol = read_volume(spec.path);
      return volume_to_cloud(vol, spec.intensity_quantile, cap, seed);
    }
  }
  fail(Errc::internal, "unhandled dataset kind");
}

std::string dataset_label(const DatasetSpec& spec) {
  if (!spec.label.empty()) return spec.label;
  switch (spec.kind) {
    case DatasetSpec::Kind::swiss_roll: return "swiss_roll";
    case DatasetSpec::Kind::torus: return "torus";
    case DatasetSpec::Kind::gaussian: return "gaussian";
    case DatasetSpec::Kind::phantom: return "phantom";
    case DatasetSpec::Kind::cloud_file:
    case DatasetSpec::Kind::volume_file: return spec.path;
  }
  fail(Errc::internal, "unhandled dataset kind");
}

LandmarkSet select_landmarks(const RunConfig& config, SelectionMethod method,
                             const PointCloud& cloud, const DensityEstimate* density,
                             std::size_t m, std::uint64_t seed,
                             const WitnessParams& witness_params) {
  HybridParams hybrid = config.hybrid;
  hybrid.seed = seed;
  switch (method) {
    case SelectionMethod::random:
      return select_random(cloud, m, seed);
    case SelectionMethod::density:
      return select_density(cloud, *density, m, seed);
    case SelectionMethod::hybrid:
      return select_hybrid(cloud, *density, m, hybrid);
    case SelectionMethod::cycle_aware: {
      // bootstrap pass: plain hybrid landmarks feed a first diagram whose H1
      // representatives steer the reserved slots of the final sweep
      LandmarkSet first = select_hybrid(cloud, *density, m, hybrid);
      SimplicialFiltration filtration =
          build_witness_filtration(cloud, first, witness_params);
      PersistenceDiagram prior = compute_persistence(filtration);
      resolve_representatives(prior, first, cloud);
      return select_cycle_aware(cloud, *density, m, hybrid, prior, config.cycle);
    }
  }
  fail(Errc::internal, "unhandled selection method");
}

}  // namespace

PresetConfig preset(PresetName name) {
  PresetConfig config;
  config.name = name;
  if (name == PresetName::deep_dive) {
    config.max_dim = 2;
    config.k_witness = 8;
    config.rips_reference_enabled = true;
    config.auto_m = {41.0, 0.27, 400, 2400};
    config.thinning_cap = 2000000;
  } else {
    config.max_dim = 1;
    config.k_witness = 4;
    config.rips_reference_enabled = false;
    config.auto_m = {43.0, 0.26, 500, 2200};
    config.thinning_cap = 1000000;
  }
  return config;
}

const char* const kBenchmarkCsvHeader =
    "dataset,method,n_retained,m,auto_m_used,k_witness,max_dim,seed,"
    "selection_seconds,witness_seconds,persistence_seconds,cov_mean,"
    "cov_mean_weighted,cov_p95,cov_p95_weighted,cov_ratio,h0_count,h1_count,"
    "h2_count,bottleneck_h1";

std::string record_to_csv_row(const BenchmarkRecord& r) {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "%s,%s,%zu,%zu,%s,%zu,%d,%llu,%.3f,%.3f,%.3f,%.6f,%.6f,%.6f,%.6f,%.6f,"
                "%zu,%zu,%zu",
                r.dataset.c_str(), method_name(r.method), r.n_retained, r.m,
                r.auto_m_used ? "true" : "false", r.k_witness, r.max_dim,
                static_cast<unsigned long long>(r.seed), r.selection_seconds,
                r.witness_seconds, r.persistence_seconds, r.cov_mean,
                r.cov_mean_weighted, r.cov_p95, r.cov_p95_weighted, r.cov_ratio,
                r.h0_count, r.h1_count, r.h2_count);
  std::string row(buf);
  row += ',';
  if (r.bottleneck_h1.has_value()) {
    if (std::isinf(*r.bottleneck_h1)) {
      row += "inf";
    } else {
      std::snprintf(buf, sizeof(buf), "%.6f", *r.bottleneck_h1);
      row += buf;
    }
  }
  return row;
}

double compare_h1_truncated(const PersistenceDiagram& witness,
                            const PersistenceDiagram& rips, double T) {
  return bottleneck_distance(truncated_features(witness, 1, T),
                             truncated_features(rips, 1, T));
}

std::vector<BenchmarkRecord> run_benchmark(const RunConfig& config) {
  require(!config.methods.empty(), Errc::invalid_argument, "no selection method given");
  require(!config.seeds.empty(), Errc::invalid_argument, "no seeds given");
  require(!config.explicit_m.has_value() || !config.use_auto_m, Errc::invalid_argument,
          "explicit m and auto-m are mutually exclusive");
  const bool single_job = config.methods.size() == 1 && config.seeds.size() == 1;
  require(single_job || (config.diagram_out.empty() &&
                         config.reference_diagram_out.empty() &&
                         config.filtration_dump.empty()),
          Errc::invalid_argument, "diagram and dump outputs need a single job");

  WitnessParams witness_params;
  witness_params.k_witness = config.preset.k_witness;
  witness_params.max_dim = config.preset.max_dim;

  std::vector<BenchmarkRecord> records;
  for (SelectionMethod method : config.methods) {
    for (std::uint64_t seed : config.seeds) {
      PointCloud cloud = build_dataset(config.dataset, config.preset, seed);
      const std::size_t n = cloud.size();
      const std::size_t m = config.explicit_m.has_value()
                                ? *config.explicit_m
                                : auto_m(n, config.preset.auto_m);

      const auto select_start = Clock::now();
      DensityEstimate density;
      if (method != SelectionMethod::random) {
        const double h = silverman_bandwidth(cloud);
        density = kde_density(cloud, cloud.points, h);
      }
      LandmarkSet landmarks =
          select_landmarks(config, method, cloud, &density, m, seed, witness_params);
      const auto select_end = Clock::now();

      SimplicialFiltration filtration =
          build_witness_filtration(cloud, landmarks, witness_params);
      const auto witness_end = Clock::now();

      PersistenceDiagram diagram = compute_persistence(filtration);
      if (config.preset.max_dim == 1) diagram.features_by_dim[2].clear();
      const auto persistence_end = Clock::now();

      const CoverageReport coverage =
          coverage_report(cloud, landmarks, config.coverage_p, config.coverage_radius);

      BenchmarkRecord record;
      record.dataset = dataset_label(config.dataset);
      record.method = method;
      record.n_retained = n;
      record.m = landmarks.indices.size();
      record.auto_m_used = !config.explicit_m.has_value();
      record.k_witness = config.preset.k_witness;
      record.max_dim = config.preset.max_dim;
      record.seed = seed;
      record.selection_seconds = seconds_between(select_start, select_end);
      record.witness_seconds = seconds_between(select_end, witness_end);
      record.persistence_seconds = seconds_between(witness_end, persistence_end);
      record.cov_mean = coverage.cov_mean;
      record.cov_mean_weighted = coverage.cov_mean_weighted;
      record.cov_p95 = coverage.cov_p;
      record.cov_p95_weighted = coverage.cov_p_weighted;
      record.cov_ratio = coverage.cov_ratio;
      record.h0_count = diagram.count(0);
      record.h1_count = diagram.count(1);
      record.h2_count = diagram.count(2);

      if (config.rips_sample > 0) {
        const double T = filtration.simplices.back().value;
        PersistenceDiagram rips =
            rips_reference(cloud, config.rips_sample, config.preset.max_dim, seed, T);
        record.bottleneck_h1 = compare_h1_truncated(diagram, rips, T);
        if (!config.reference_diagram_out.empty()) {
          PersistenceDiagram truncated;
          truncated.features_by_dim[1] = truncated_features(rips, 1, T);
          write_diagram_csv(truncated, config.reference_diagram_out);
        }
      }
      if (!config.diagram_out.empty()) write_diagram_csv(diagram, config.diagram_out);
      if (!config.filtration_dump.empty())
        write_filtration_dump(filtration, config.filtration_dump);

      records.push_back(std::move(record));
    }
  }
  return records;
}

void write_benchmark_csv(const std::vector<BenchmarkRecord>& records,
                         const std::string& path) {
  std::ofstream out(path);
  require(out.is_open(), Errc::io_error, "cannot open " + path + " for writing");
  out << kBenchmarkCsvHeader << '\n';
  for (const BenchmarkRecord& r : records) out << record_to_csv_row(r) << '\n';
  require(out.good(), Errc::io_error, "write failed for " + path);
}

}  // namespace whale
