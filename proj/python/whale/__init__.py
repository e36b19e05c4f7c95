"""Witness-complex persistent homology with density-aware landmark selection."""

from ._whale import (
    INF_DEATH,
    AutoMParams,
    CoverageReport,
    CycleAwareParams,
    DensityEstimate,
    Error,
    Feature,
    FilteredSimplex,
    HybridParams,
    LandmarkSet,
    PersistenceDiagram,
    PointCloud,
    SelectionMethod,
    SimplicialFiltration,
    VolumeGrid,
    WitnessParams,
    __version__,
    auto_m,
    bottleneck_distance,
    build_witness_filtration,
    compute_persistence,
    coverage_report,
    gen_gaussian_mixture,
    gen_phantom,
    gen_swiss_roll,
    gen_torus,
    kde_density,
    method_name,
    normalize_unit_cube,
    read_cloud_csv,
    read_diagram_csv,
    read_volume,
    resolve_representatives,
    rips_reference,
    select_cycle_aware,
    select_density,
    select_hybrid,
    select_random,
    silverman_bandwidth,
    truncated_features,
    validate_cloud,
    validate_filtration,
    validate_volume,
    volume_to_cloud,
    write_cloud_csv,
    write_diagram_csv,
    write_filtration_dump,
    write_volume,
)

__all__ = [name for name in dir() if not name.startswith("_")]
