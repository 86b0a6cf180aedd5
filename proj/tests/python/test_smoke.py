"""Smoke tests for the python module: the main operations round-trip through
the bindings and reproduce a few hand-checked values."""

import math

import numpy as np

import qwalk


def test_two_step_hadamard():
    field = qwalk.CoinField.homogeneous(qwalk.hadamard_coin())
    psi = qwalk.delta_state(0, np.array([1.0, 0.0], dtype=complex))
    psi = qwalk.evolve(psi, field, 2)
    dist = qwalk.position_distribution(psi)
    probs = {dist.x_min + i: p for i, p in enumerate(dist.prob)}
    assert abs(probs[-2] - 0.25) < 1e-12
    assert abs(probs[0] - 0.5) < 1e-12
    assert abs(probs[2] - 0.25) < 1e-12


def test_norm_preserved():
    field = qwalk.CoinField.one_defect(qwalk.hadamard_coin(), qwalk.identity_coin())
    psi = qwalk.delta_state(0, np.array([1.0, 0.0], dtype=complex))
    psi = qwalk.evolve(psi, field, 400)
    assert abs(psi.norm() - 1.0) < 1e-10


def test_konno_density_center():
    assert abs(qwalk.konno_density(0.0, 1.0 / math.sqrt(2.0)) - 1.0 / math.pi) < 1e-14


def test_band_velocities_bounded():
    bands = qwalk.BandDecomposition(qwalk.hadamard_coin(), 256)
    v = bands.velocities
    assert v.shape == (256, 2)
    assert np.all(np.abs(v) <= 1.0 / math.sqrt(2.0) + 1e-12)
    assert not bands.degenerate


def test_pushforward_flip_atom():
    bands = qwalk.BandDecomposition(qwalk.flip_coin(), 512)
    psi = qwalk.delta_state(0, np.array([0.6, 0.8j], dtype=complex))
    mu = qwalk.velocity_pushforward(psi, bands)
    atoms = mu.atoms
    assert atoms.shape == (1, 2)
    assert abs(atoms[0, 0]) < 1e-14
    assert abs(atoms[0, 1] - 1.0) < 1e-10
    assert abs(mu.cdf(0.0) - 1.0) < 1e-10


def test_bound_states_and_weight():
    field = qwalk.CoinField.one_defect(qwalk.hadamard_coin(), qwalk.identity_coin())
    trunc = qwalk.build_truncated(field, 60, qwalk.Boundary.reflecting)
    bs = qwalk.point_spectrum(trunc, field)
    assert len(bs) == 2
    thetas = sorted(bs.thetas)
    assert abs(thetas[0] - math.pi / 2.0) < 1e-9
    assert abs(thetas[1] - 3.0 * math.pi / 2.0) < 1e-9
    psi = qwalk.delta_state(0, np.array([1.0, 0.0], dtype=complex))
    w = qwalk.point_mass_weight(bs, psi)
    assert abs(w - (math.sqrt(2.0) - 1.0)) < 1e-9


def test_wave_probe_residuals_decrease():
    field = qwalk.CoinField.one_defect(qwalk.hadamard_coin(), qwalk.identity_coin())
    pk = qwalk.gaussian_packet(-40, 10.0, 0.0, np.array([1.0, 0.0], dtype=complex))
    probe = qwalk.probe_wave(pk, field, [32, 64, 128, 256], "forward")
    r = probe.residuals
    assert len(r) == 3
    assert r[1] < r[0] and r[2] < r[1]


def test_field_json_roundtrip():
    field = qwalk.CoinField.power_decay(qwalk.hadamard_coin(), 0.5, 1.0)
    back = qwalk.CoinField.from_json(field.to_json())
    assert back.hash == field.hash


def test_config_error_maps_to_value_error():
    try:
        qwalk.konno_density(0.0, 2.0)
    except ValueError:
        return
    raise AssertionError("expected ValueError")


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for t in tests:
        t()
        print(f"ok {t.__name__}")
    print(f"{len(tests)} smoke tests passed")
