import math

import pytest

import whale


def test_generator_shapes_and_normalization():
    cloud = whale.gen_torus(500, 1.0, 0.35, 0.0, seed=3)
    assert len(cloud) == 500
    assert len(cloud.weights) == 500
    assert all(w == 1.0 for w in cloud.weights)
    assert all(0.0 <= c <= 1.0 for p in cloud.points for c in p)


def test_pipeline_recovers_torus_loops():
    cloud = whale.gen_torus(2000, 1.0, 0.35, 0.0, seed=1)
    h = whale.silverman_bandwidth(cloud)
    density = whale.kde_density(cloud, cloud.points, h)
    assert density.bandwidth == h
    assert len(density.densities) == len(cloud)

    landmarks = whale.select_hybrid(cloud, density, 150,
                                    whale.HybridParams(alpha=0.0, seed=1))
    assert len(landmarks) == 150
    assert landmarks.method == whale.SelectionMethod.hybrid

    filtration = whale.build_witness_filtration(
        cloud, landmarks, whale.WitnessParams(k_witness=4, max_dim=1))
    diagram = whale.compute_persistence(filtration)
    assert diagram.count(0) >= 1
    essentials = [f for f in diagram.dim(1) if f.essential]
    assert len(essentials) >= 2  # both fundamental loops survive

    report = whale.coverage_report(cloud, landmarks, p=0.95, reference_radius=0.05)
    assert 0.0 < report.cov_mean < 0.1
    assert 0.0 < report.cov_ratio <= 1.0


def test_auto_m_matches_pinned_values():
    assert whale.auto_m(10**6) == 1709
    fast = whale.AutoMParams(beta=43.0, gamma=0.26, m_min=500, m_max=2200)
    assert whale.auto_m(10**6, fast) == 1561


def test_bottleneck_identity_and_diagonal():
    cloud = whale.gen_gaussian_mixture(300, 6, 2.0, seed=4)
    landmarks = whale.select_random(cloud, 40, seed=2)
    diagram = whale.compute_persistence(whale.build_witness_filtration(
        cloud, landmarks, whale.WitnessParams(k_witness=4, max_dim=1)))
    assert whale.bottleneck_distance(diagram, diagram, 1) == 0.0


def test_volume_round_trip(tmp_path):
    vol = whale.gen_phantom([16, 16, 16], seed=5)
    assert vol.voxel_count() == 16**3
    path = str(tmp_path / "phantom.wvol")
    whale.write_volume(vol, path)
    back = whale.read_volume(path)
    assert back.dims == vol.dims
    assert back.intensities == vol.intensities

    cloud = whale.volume_to_cloud(vol, 0.75, 4000, seed=5)
    assert 0 < len(cloud) <= 4000
    assert max(cloud.weights) == 1.0


def test_cloud_csv_round_trip(tmp_path):
    cloud = whale.gen_swiss_roll(120, 0.05, seed=8)
    path = str(tmp_path / "cloud.csv")
    whale.write_cloud_csv(cloud, path)
    back = whale.read_cloud_csv(path)
    assert len(back) == 120
    worst = max(abs(a - b) for p, q in zip(cloud.points, back.points)
                for a, b in zip(p, q))
    assert worst < 1e-9


def test_diagram_csv_round_trip(tmp_path):
    diagram = whale.PersistenceDiagram()
    loop = whale.Feature()
    loop.birth = 0.25
    loop.death = math.inf
    diagram.features_by_dim = [[], [loop], []]
    path = str(tmp_path / "diagram.csv")
    whale.write_diagram_csv(diagram, path)
    back = whale.read_diagram_csv(path)
    assert back.count(1) == 1
    assert back.dim(1)[0].birth == 0.25
    assert back.dim(1)[0].essential


def test_errors_surface_as_whale_error():
    with pytest.raises(whale.Error):
        whale.gen_torus(100, 0.35, 1.0, 0.0, seed=0)  # minor >= major
    with pytest.raises(whale.Error):
        whale.read_cloud_csv("/nonexistent/cloud.csv")
