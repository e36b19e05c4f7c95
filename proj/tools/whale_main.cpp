#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "whale/bench.hpp"
#include "whale/dataset.hpp"
#include "whale/diagnostics.hpp"
#include "whale/error.hpp"
#include "whale/io.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitInternal = 4;

int exit_code_for(whale::Errc code) {
  switch (code) {
    case whale::Errc::io_error:
    case whale::Errc::parse_error:
      return kExitIo;
    case whale::Errc::internal:
    case whale::Errc::invalid_filtration:
      return kExitInternal;
    default:
      return kExitUsage;
  }
}

whale::SelectionMethod parse_method(const std::string& name) {
  if (name == "random") return whale::SelectionMethod::random;
  if (name == "density") return whale::SelectionMethod::density;
  if (name == "hybrid") return whale::SelectionMethod::hybrid;
  if (name == "cycle_aware") return whale::SelectionMethod::cycle_aware;
  whale::fail(whale::Errc::invalid_argument, "unknown method '" + name + "'");
}

struct BenchArgs {
  std::string preset_name = "deep_dive_fast";
  std::string dataset;
  std::string cloud_file;
  std::string volume_file;
  std::string label;
  std::size_t n = 5000;
  double noise = 0.0;
  double major_radius = 1.0;
  double minor_radius = 0.35;
  std::size_t components = 250;
  double separation = 2.0;
  std::uint32_t phantom_dim = 64;
  double intensity_quantile = 0.75;
  std::size_t max_points = 0;  // 0: preset thinning cap
  std::vector<std::string> methods;
  bool cycle_aware = false;
  std::size_t m = 0;  // 0: not set
  bool auto_m = false;
  std::vector<std::uint64_t> seeds;
  std::size_t k_witness = 0;  // 0: preset value
  int max_dim = 0;            // 0: preset value
  double alpha = 0.5;
  double epsilon = 1e-9;
  double pool_constant = 1.0;
  double tau = 0.0;
  double reserve = 0.1;
  double locality_radius = 0.1;
  double coverage_radius = 0.05;
  std::size_t rips_reference = 0;  // 0: preset default
  bool no_rips_reference = false;
  std::string output;
  std::string diagram_out;
  std::string reference_diagram_out;
  std::string filtration_dump;
};

int run_bench(const BenchArgs& args) {
  whale::RunConfig config;
  config.preset = whale::preset(args.preset_name == "deep_dive"
                                    ? whale::PresetName::deep_dive
                                    : whale::PresetName::deep_dive_fast);
  if (args.k_witness > 0) config.preset.k_witness = args.k_witness;
  if (args.max_dim > 0) config.preset.max_dim = args.max_dim;

  whale::DatasetSpec& ds = config.dataset;
  if (!args.cloud_file.empty()) {
    ds.kind = whale::DatasetSpec::Kind::cloud_file;
    ds.path = args.cloud_file;
  } else if (!args.volume_file.empty()) {
    ds.kind = whale::DatasetSpec::Kind::volume_file;
    ds.path = args.volume_file;
  } else if (args.dataset == "swiss_roll") {
    ds.kind = whale::DatasetSpec::Kind::swiss_roll;
  } else if (args.dataset == "torus") {
    ds.kind = whale::DatasetSpec::Kind::torus;
  } else if (args.dataset == "gaussian") {
    ds.kind = whale::DatasetSpec::Kind::gaussian;
  } else if (args.dataset == "phantom") {
    ds.kind = whale::DatasetSpec::Kind::phantom;
  } else {
    whale::fail(whale::Errc::invalid_argument,
                "unknown dataset '" + args.dataset + "'");
  }
  ds.label = args.label;
  ds.n = args.n;
  ds.noise = args.noise;
  ds.major_radius = args.major_radius;
  ds.minor_radius = args.minor_radius;
  ds.components = args.components;
  ds.separation = args.separation;
  ds.phantom_dims = {args.phantom_dim, args.phantom_dim, args.phantom_dim};
  ds.intensity_quantile = args.intensity_quantile;
  if (args.max_points > 0) ds.max_points = args.max_points;

  config.methods.clear();
  for (const std::string& name : args.methods)
    config.methods.push_back(parse_method(name));
  if (args.cycle_aware)
    config.methods.push_back(whale::SelectionMethod::cycle_aware);
  if (config.methods.empty())
    config.methods.push_back(whale::SelectionMethod::hybrid);

  if (args.m > 0) {
    config.explicit_m = args.m;
    config.use_auto_m = false;
  }
  config.seeds = args.seeds.empty() ? std::vector<std::uint64_t>{0} : args.seeds;
  config.hybrid.alpha = args.alpha;
  config.hybrid.epsilon = args.epsilon;
  config.hybrid.pool_constant = args.pool_constant;
  config.cycle.lifetime_threshold = args.tau;
  config.cycle.reserve_fraction = args.reserve;
  config.cycle.locality_radius = args.locality_radius;
  config.coverage_radius = args.coverage_radius;
  if (args.rips_reference > 0)
    config.rips_sample = args.rips_reference;
  else if (config.preset.rips_reference_enabled && !args.no_rips_reference)
    config.rips_sample = config.preset.rips_sample_size;
  config.diagram_out = args.diagram_out;
  config.reference_diagram_out = args.reference_diagram_out;
  config.filtration_dump = args.filtration_dump;

  const std::vector<whale::BenchmarkRecord> records = whale::run_benchmark(config);
  if (args.output.empty()) {
    std::cout << whale::kBenchmarkCsvHeader << '\n';
    for (const auto& r : records) std::cout << whale::record_to_csv_row(r) << '\n';
  } else {
    whale::write_benchmark_csv(records, args.output);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"witness persistent homology benchmark tool"};
  app.require_subcommand(1);

  BenchArgs bench;
  CLI::App* bench_cmd = app.add_subcommand("bench", "run the benchmark pipeline");
  bench_cmd->add_option("--preset", bench.preset_name)
      ->check(CLI::IsMember({"deep_dive", "deep_dive_fast"}));
  auto* dataset_opt = bench_cmd->add_option(
      "--dataset", bench.dataset, "swiss_roll|torus|gaussian|phantom");
  auto* cloud_opt = bench_cmd->add_option("--cloud-file", bench.cloud_file);
  auto* volume_opt = bench_cmd->add_option("--volume-file", bench.volume_file);
  dataset_opt->excludes(cloud_opt)->excludes(volume_opt);
  cloud_opt->excludes(volume_opt);
  bench_cmd->add_option("--label", bench.label, "dataset column override");
  bench_cmd->add_option("--n", bench.n);
  bench_cmd->add_option("--noise", bench.noise);
  bench_cmd->add_option("--major-radius", bench.major_radius);
  bench_cmd->add_option("--minor-radius", bench.minor_radius);
  bench_cmd->add_option("--components", bench.components);
  bench_cmd->add_option("--separation", bench.separation);
  bench_cmd->add_option("--phantom-dim", bench.phantom_dim);
  bench_cmd->add_option("--intensity-quantile", bench.intensity_quantile);
  bench_cmd->add_option("--max-points", bench.max_points);
  bench_cmd->add_option("--method", bench.methods)
      ->check(CLI::IsMember({"random", "density", "hybrid", "cycle_aware"}));
  bench_cmd->add_flag("--cycle-aware", bench.cycle_aware,
                      "append the cycle_aware method");
  auto* m_opt = bench_cmd->add_option("--m", bench.m);
  auto* auto_m_opt = bench_cmd->add_flag("--auto-m", bench.auto_m);
  m_opt->excludes(auto_m_opt);
  bench_cmd->add_option("--seed", bench.seeds);
  bench_cmd->add_option("--seeds", bench.seeds)->delimiter(',');
  bench_cmd->add_option("--k-witness", bench.k_witness);
  bench_cmd->add_option("--max-dim", bench.max_dim)->check(CLI::Range(1, 2));
  bench_cmd->add_option("--alpha", bench.alpha);
  bench_cmd->add_option("--epsilon", bench.epsilon);
  bench_cmd->add_option("--pool-constant", bench.pool_constant);
  bench_cmd->add_option("--tau", bench.tau);
  bench_cmd->add_option("--reserve", bench.reserve);
  bench_cmd->add_option("--locality-radius", bench.locality_radius);
  bench_cmd->add_option("--coverage-radius", bench.coverage_radius);
  bench_cmd->add_option("--rips-reference", bench.rips_reference,
                        "Rips reference sample size");
  bench_cmd->add_flag("--no-rips-reference", bench.no_rips_reference,
                      "disable the preset's Rips reference");
  bench_cmd->add_option("--output", bench.output, "CSV path (default: stdout)");
  bench_cmd->add_option("--diagram-out", bench.diagram_out);
  bench_cmd->add_option("--reference-diagram-out", bench.reference_diagram_out);
  bench_cmd->add_option("--filtration-dump", bench.filtration_dump);

  std::string compare_a, compare_b;
  int compare_dim = 1;
  CLI::App* compare_cmd =
      app.add_subcommand("compare", "bottleneck distance between diagram files");
  compare_cmd->add_option("diagram_a", compare_a)->required();
  compare_cmd->add_option("diagram_b", compare_b)->required();
  compare_cmd->add_option("--dim", compare_dim)->check(CLI::Range(0, 2));

  std::string make_dataset = "torus", make_output;
  std::size_t make_n = 5000;
  double make_noise = 0.0, make_major = 1.0, make_minor = 0.35, make_separation = 2.0;
  std::size_t make_components = 250;
  std::uint64_t make_seed = 0;
  CLI::App* make_cloud_cmd =
      app.add_subcommand("make-cloud", "write a generated point cloud CSV");
  make_cloud_cmd->add_option("--dataset", make_dataset)
      ->check(CLI::IsMember({"swiss_roll", "torus", "gaussian"}));
  make_cloud_cmd->add_option("--n", make_n);
  make_cloud_cmd->add_option("--noise", make_noise);
  make_cloud_cmd->add_option("--major-radius", make_major);
  make_cloud_cmd->add_option("--minor-radius", make_minor);
  make_cloud_cmd->add_option("--components", make_components);
  make_cloud_cmd->add_option("--separation", make_separation);
  make_cloud_cmd->add_option("--seed", make_seed);
  make_cloud_cmd->add_option("--output", make_output)->required();

  std::uint32_t make_dim = 64;
  std::uint64_t volume_seed = 0;
  std::string volume_output;
  CLI::App* make_volume_cmd =
      app.add_subcommand("make-volume", "write a synthetic phantom volume");
  make_volume_cmd->add_option("--dim", make_dim);
  make_volume_cmd->add_option("--seed", volume_seed);
  make_volume_cmd->add_option("--output", volume_output)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (bench_cmd->parsed()) return run_bench(bench);
    if (compare_cmd->parsed()) {
      const whale::PersistenceDiagram a = whale::read_diagram_csv(compare_a);
      const whale::PersistenceDiagram b = whale::read_diagram_csv(compare_b);
      const double d = whale::bottleneck_distance(a, b, compare_dim);
      if (std::isinf(d))
        std::printf("inf\n");
      else
        std::printf("%.6f\n", d);
      return 0;
    }
    if (make_cloud_cmd->parsed()) {
      whale::PointCloud cloud;
      if (make_dataset == "swiss_roll")
        cloud = whale::gen_swiss_roll(make_n, make_noise, make_seed);
      else if (make_dataset == "torus")
        cloud = whale::gen_torus(make_n, make_major, make_minor, make_noise, make_seed);
      else
        cloud = whale::gen_gaussian_mixture(make_n, make_components, make_separation,
                                            make_seed);
      whale::write_cloud_csv(cloud, make_output);
      return 0;
    }
    if (make_volume_cmd->parsed()) {
      const whale::VolumeGrid vol =
          whale::gen_phantom({make_dim, make_dim, make_dim}, volume_seed);
      whale::write_volume(vol, volume_output);
      return 0;
    }
  } catch (const whale::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}
