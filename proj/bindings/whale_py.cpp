#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "whale/cloud.hpp"
#include "whale/dataset.hpp"
#include "whale/density.hpp"
#include "whale/diagnostics.hpp"
#include "whale/error.hpp"
#include "whale/io.hpp"
#include "whale/landmarks.hpp"
#include "whale/persistence.hpp"
#include "whale/witness.hpp"

namespace py = pybind11;
using namespace whale;

PYBIND11_MODULE(_whale, m) {
  m.doc() = "Witness-complex persistent homology with density-aware landmark selection";
  m.attr("__version__") = "0.1.0";
  m.attr("INF_DEATH") = kInfDeath;

  py::register_exception<Error>(m, "Error");

  // data carriers ------------------------------------------------------------

  py::class_<PointCloud>(m, "PointCloud")
      .def(py::init<>())
      .def(py::init([](std::vector<Vec3> points, std::optional<std::vector<double>> weights) {
             PointCloud cloud;
             cloud.points = std::move(points);
             cloud.weights = weights ? std::move(*weights)
                                     : std::vector<double>(cloud.points.size(), 1.0);
             return cloud;
           }),
           py::arg("points"), py::arg("weights") = py::none())
      .def_readwrite("points", &PointCloud::points)
      .def_readwrite("weights", &PointCloud::weights)
      .def("__len__", &PointCloud::size)
      .def("__repr__", [](const PointCloud& c) {
        return "PointCloud(" + std::to_string(c.size()) + " points)";
      });

  py::class_<VolumeGrid>(m, "VolumeGrid")
      .def(py::init<>())
      .def_readwrite("dims", &VolumeGrid::dims)
      .def_readwrite("spacing", &VolumeGrid::spacing)
      .def_readwrite("intensities", &VolumeGrid::intensities)
      .def("voxel_count", &VolumeGrid::voxel_count)
      .def("__repr__", [](const VolumeGrid& v) {
        return "VolumeGrid(" + std::to_string(v.dims[0]) + "x" + std::to_string(v.dims[1]) +
               "x" + std::to_string(v.dims[2]) + ")";
      });

  m.def("validate_cloud", &validate_cloud, py::arg("cloud"));
  m.def("validate_volume", &validate_volume, py::arg("vol"));
  m.def("normalize_unit_cube", &normalize_unit_cube, py::arg("cloud"),
        "In-place isotropic rescale of the cloud into the unit cube.");

  // generators ---------------------------------------------------------------

  m.def("gen_swiss_roll", &gen_swiss_roll, py::arg("n"), py::arg("noise"), py::arg("seed"));
  m.def("gen_torus", &gen_torus, py::arg("n"), py::arg("major_radius"),
        py::arg("minor_radius"), py::arg("noise"), py::arg("seed"));
  m.def("gen_gaussian_mixture", &gen_gaussian_mixture, py::arg("n"), py::arg("components"),
        py::arg("separation"), py::arg("seed"));
  m.def("gen_phantom", &gen_phantom, py::arg("dims"), py::arg("seed"));
  m.def("volume_to_cloud", &volume_to_cloud, py::arg("vol"), py::arg("intensity_quantile"),
        py::arg("max_points"), py::arg("seed"));

  // density ------------------------------------------------------------------

  py::class_<DensityEstimate>(m, "DensityEstimate")
      .def(py::init<>())
      .def_readwrite("bandwidth", &DensityEstimate::bandwidth)
      .def_readwrite("densities", &DensityEstimate::densities)
      .def_readwrite("reference_size", &DensityEstimate::reference_size);

  m.def("silverman_bandwidth", &silverman_bandwidth, py::arg("cloud"));
  m.def("kde_density", &kde_density, py::arg("cloud"), py::arg("queries"),
        py::arg("bandwidth"),
        "Gaussian kernel density of the cloud evaluated at the query points.");

  // landmark selection ---------------------------------------------------------

  py::enum_<SelectionMethod>(m, "SelectionMethod")
      .value("random", SelectionMethod::random)
      .value("density", SelectionMethod::density)
      .value("hybrid", SelectionMethod::hybrid)
      .value("cycle_aware", SelectionMethod::cycle_aware);

  m.def("method_name", &method_name, py::arg("method"));

  py::class_<LandmarkSet>(m, "LandmarkSet")
      .def(py::init<>())
      .def(py::init([](std::vector<std::uint32_t> indices) {
             LandmarkSet set;
             set.indices = std::move(indices);
             return set;
           }),
           py::arg("indices"))
      .def_readwrite("indices", &LandmarkSet::indices)
      .def_readwrite("method", &LandmarkSet::method)
      .def_readwrite("selection_seconds", &LandmarkSet::selection_seconds)
      .def("__len__", [](const LandmarkSet& s) { return s.indices.size(); });

  py::class_<AutoMParams>(m, "AutoMParams")
      .def(py::init([](double beta, double gamma, std::size_t m_min, std::size_t m_max) {
             return AutoMParams{beta, gamma, m_min, m_max};
           }),
           py::arg("beta") = 41.0, py::arg("gamma") = 0.27, py::arg("m_min") = 400,
           py::arg("m_max") = 2400)
      .def_readwrite("beta", &AutoMParams::beta)
      .def_readwrite("gamma", &AutoMParams::gamma)
      .def_readwrite("m_min", &AutoMParams::m_min)
      .def_readwrite("m_max", &AutoMParams::m_max);

  m.def("auto_m", &auto_m, py::arg("n"), py::arg("params") = AutoMParams{},
        "Landmark budget m(n) = clamp(round(beta * n^gamma)).");

  py::class_<HybridParams>(m, "HybridParams")
      .def(py::init([](double alpha, double epsilon, double pool_constant,
                       std::uint64_t seed) {
             HybridParams p;
             p.alpha = alpha;
             p.epsilon = epsilon;
             p.pool_constant = pool_constant;
             p.seed = seed;
             return p;
           }),
           py::arg("alpha") = 0.5, py::arg("epsilon") = 1e-9, py::arg("pool_constant") = 1.0,
           py::arg("seed") = 0)
      .def_readwrite("alpha", &HybridParams::alpha)
      .def_readwrite("epsilon", &HybridParams::epsilon)
      .def_readwrite("pool_constant", &HybridParams::pool_constant)
      .def_readwrite("seed", &HybridParams::seed);

  py::class_<CycleAwareParams>(m, "CycleAwareParams")
      .def(py::init([](double lifetime_threshold, double reserve_fraction,
                       double locality_radius) {
             CycleAwareParams p;
             p.lifetime_threshold = lifetime_threshold;
             p.reserve_fraction = reserve_fraction;
             p.locality_radius = locality_radius;
             return p;
           }),
           py::arg("lifetime_threshold") = 0.0, py::arg("reserve_fraction") = 0.1,
           py::arg("locality_radius") = 0.1)
      .def_readwrite("lifetime_threshold", &CycleAwareParams::lifetime_threshold)
      .def_readwrite("reserve_fraction", &CycleAwareParams::reserve_fraction)
      .def_readwrite("locality_radius", &CycleAwareParams::locality_radius);

  m.def("select_random", &select_random, py::arg("cloud"), py::arg("m"), py::arg("seed"));
  m.def("select_density", &select_density, py::arg("cloud"), py::arg("density"),
        py::arg("m"), py::arg("seed"));
  m.def("select_hybrid", &select_hybrid, py::arg("cloud"), py::arg("density"), py::arg("m"),
        py::arg("params") = HybridParams{},
        "Greedy sparsity-seeking selection, score = d(x, L) / (rho + eps)^alpha.");
  m.def("select_cycle_aware", &select_cycle_aware, py::arg("cloud"), py::arg("density"),
        py::arg("m"), py::arg("params"), py::arg("prior"), py::arg("cycle"),
        "Hybrid selection with slots reserved near persistent loops of a prior run.");

  // witness filtration -----------------------------------------------------------

  py::class_<WitnessParams>(m, "WitnessParams")
      .def(py::init([](std::size_t k_witness, int max_dim) {
             WitnessParams p;
             p.k_witness = k_witness;
             p.max_dim = max_dim;
             return p;
           }),
           py::arg("k_witness") = 8, py::arg("max_dim") = 2)
      .def_readwrite("k_witness", &WitnessParams::k_witness)
      .def_readwrite("max_dim", &WitnessParams::max_dim);

  py::class_<FilteredSimplex>(m, "FilteredSimplex")
      .def_readonly("v", &FilteredSimplex::v)
      .def_readonly("dim", &FilteredSimplex::dim)
      .def_readonly("value", &FilteredSimplex::value)
      .def("vertex_count", &FilteredSimplex::vertex_count);

  py::class_<SimplicialFiltration>(m, "SimplicialFiltration")
      .def(py::init<>())
      .def_readwrite("simplices", &SimplicialFiltration::simplices)
      .def_readwrite("landmark_count", &SimplicialFiltration::landmark_count)
      .def("__len__", [](const SimplicialFiltration& f) { return f.simplices.size(); });

  m.def("build_witness_filtration", &build_witness_filtration, py::arg("cloud"),
        py::arg("landmarks"), py::arg("params") = WitnessParams{},
        "Lazy witness filtration over the landmark set.");
  m.def("validate_filtration", &validate_filtration, py::arg("filtration"));

  // persistence --------------------------------------------------------------

  py::class_<Feature>(m, "Feature")
      .def(py::init<>())
      .def_readwrite("birth", &Feature::birth)
      .def_readwrite("death", &Feature::death)
      .def_readwrite("birth_vertices", &Feature::birth_vertices)
      .def_readwrite("birth_vertex_points", &Feature::birth_vertex_points)
      .def_property_readonly("lifetime", &Feature::lifetime)
      .def_property_readonly("essential", &Feature::essential)
      .def("__repr__", [](const Feature& f) {
        return "Feature(birth=" + std::to_string(f.birth) +
               ", death=" + (f.essential() ? "inf" : std::to_string(f.death)) + ")";
      });

  py::class_<PersistenceDiagram>(m, "PersistenceDiagram")
      .def(py::init<>())
      .def_readwrite("features_by_dim", &PersistenceDiagram::features_by_dim)
      .def_readwrite("zero_lifetime_dropped", &PersistenceDiagram::zero_lifetime_dropped)
      .def("dim", &PersistenceDiagram::dim, py::arg("d"))
      .def("count", &PersistenceDiagram::count, py::arg("d"));

  m.def("compute_persistence", &compute_persistence, py::arg("filtration"),
        "Persistence diagram of a filtration via GF(2) column reduction.");
  m.def("rips_reference", &rips_reference, py::arg("cloud"), py::arg("sample_size"),
        py::arg("max_dim"), py::arg("seed"), py::arg("cap") = py::none(),
        "Vietoris-Rips diagram on a seeded subsample, for cross-checking.");
  m.def("resolve_representatives", &resolve_representatives, py::arg("diagram"),
        py::arg("landmarks"), py::arg("cloud"),
        "Fill birth_vertex_points with landmark coordinates, in place.");
  m.def("truncated_features", &truncated_features, py::arg("diagram"), py::arg("d"),
        py::arg("T"), "Finite view of one dimension up to scale T.");

  // diagnostics ----------------------------------------------------------------

  py::class_<CoverageReport>(m, "CoverageReport")
      .def_readonly("cov_mean", &CoverageReport::cov_mean)
      .def_readonly("cov_mean_weighted", &CoverageReport::cov_mean_weighted)
      .def_readonly("cov_p", &CoverageReport::cov_p)
      .def_readonly("cov_p_weighted", &CoverageReport::cov_p_weighted)
      .def_readonly("cov_ratio", &CoverageReport::cov_ratio)
      .def_readonly("reference_radius", &CoverageReport::reference_radius);

  m.def("coverage_report", &coverage_report, py::arg("cloud"), py::arg("landmarks"),
        py::arg("p") = 0.95, py::arg("reference_radius") = 0.05,
        "Nearest-landmark distance summary over the cloud.");
  m.def("bottleneck_distance",
        py::overload_cast<const PersistenceDiagram&, const PersistenceDiagram&, int>(
            &bottleneck_distance),
        py::arg("a"), py::arg("b"), py::arg("d"));
  m.def("bottleneck_distance",
        py::overload_cast<const std::vector<Feature>&, const std::vector<Feature>&>(
            &bottleneck_distance),
        py::arg("a"), py::arg("b"));

  // file formats ---------------------------------------------------------------

  m.def("write_cloud_csv", &write_cloud_csv, py::arg("cloud"), py::arg("path"));
  m.def("read_cloud_csv", &read_cloud_csv, py::arg("path"));
  m.def("write_volume", &write_volume, py::arg("vol"), py::arg("path"));
  m.def("read_volume", &read_volume, py::arg("path"));
  m.def("write_diagram_csv", &write_diagram_csv, py::arg("diagram"), py::arg("path"));
  m.def("read_diagram_csv", &read_diagram_csv, py::arg("path"));
  m.def("write_filtration_dump", &write_filtration_dump, py::arg("filtration"),
        py::arg("path"));
}
