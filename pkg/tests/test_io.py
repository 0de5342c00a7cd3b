import json
import os
import struct

import numpy as np
import pytest
from hypothesis import given

from gkdv.flow import FlowConfig, evolve
from gkdv.io import (FormatError, atomic_write, field_from_json, field_to_json, load_field, read_ensemble,
                     read_field, read_field_json, read_trajectory, write_ensemble, write_field, write_field_json,
                     write_trajectory)
from gkdv.sampler import WienerSpec, sample_gibbs_ensemble, sample_wiener
from gkdv.spectral import SpectralField
from strategies import fields


def test_field_header_layout(tmp_path):
    f = SpectralField([1 + 2j, -0.5j])
    p = write_field(tmp_path / "f.bin", f)
    raw = p.read_bytes()
    assert raw[:4] == b"GKDV"
    assert struct.unpack_from("<II", raw, 4) == (1, 2)
    assert np.frombuffer(raw[12:], "<f8").tolist() == [1.0, 2.0, 0.0, -0.5]


@given(fields(1, 12))
def test_field_json_roundtrip_is_exact(f):
    assert field_from_json(field_to_json(f)) == f


def test_binary_and_json_files(tmp_path):
    f = sample_wiener(WienerSpec(7, 3))
    write_field(tmp_path / "a.bin", f)
    write_field_json(tmp_path / "a.json", f)
    assert read_field(tmp_path / "a.bin") == f
    assert read_field_json(tmp_path / "a.json") == f
    assert load_field(tmp_path / "a.bin") == load_field(tmp_path / "a.json") == f


def test_corrupt_inputs(tmp_path):
    (tmp_path / "short").write_bytes(b"GK")
    with pytest.raises(FormatError):
        read_field(tmp_path / "short")
    (tmp_path / "magic").write_bytes(b"XXXX" + bytes(8))
    with pytest.raises(FormatError):
        read_field(tmp_path / "magic")
    p = write_field(tmp_path / "trunc", SpectralField(np.ones(4)))
    p.write_bytes(p.read_bytes()[:-8])
    with pytest.raises(FormatError):
        read_field(p)
    p.write_bytes(struct.pack("<4sII", b"GKDV", 9, 1) + bytes(16))
    with pytest.raises(FormatError, match="version"):
        read_field(p)
    with pytest.raises(FormatError):
        field_from_json(json.dumps({"format": "other"}))
    with pytest.raises(FormatError):
        field_from_json(json.dumps({"format": "gkdv-field", "N": 3, "re": [0, 1], "im": [0, 1]}))


def test_ensemble_roundtrip(tmp_path):
    ens = sample_gibbs_ensemble(WienerSpec(5, 11, 2), 6.0, 40)
    p = write_ensemble(tmp_path / "e.bin", ens)
    back = read_ensemble(p)
    assert back.coeffs.tobytes() == ens.coeffs.tobytes()
    assert back.weights.tobytes() == ens.weights.tobytes()
    assert (back.B, back.seed, back.stream_id) == (6.0, 11, 2)
    manifest = json.loads((tmp_path / "e.bin.json").read_text())
    assert manifest["M"] == 40 and manifest["ess"] == pytest.approx(ens.ess)


def test_trajectory_roundtrip(tmp_path):
    traj = evolve(sample_wiener(WienerSpec(4, 0)), FlowConfig(N=4, T=0.2, dt=1e-3, variant="ungauged"))
    p = write_trajectory(tmp_path / "t.bin", traj)
    back = read_trajectory(p)
    np.testing.assert_array_equal(back.states, traj.states)
    np.testing.assert_allclose(back.times, traj.times, rtol=0, atol=1e-15)
    assert back.config.variant == "ungauged" and back.config.nonlin_coeff == 0.25
    assert back.config.dt == traj.config.dt


def test_trajectory_without_sidecar(tmp_path):
    traj = evolve(sample_wiener(WienerSpec(3, 0)), FlowConfig(N=3, T=0.1, dt=1e-3))
    p = write_trajectory(tmp_path / "t.bin", traj)
    os.unlink(str(p) + ".json")
    assert read_trajectory(p).config.variant == "gauged"


def test_atomic_write_leaves_no_temporaries(tmp_path):
    target = tmp_path / "sub" / "x.txt"
    atomic_write(target, "one")
    atomic_write(target, "two")
    assert target.read_text() == "two"
    assert sorted(os.listdir(target.parent)) == ["x.txt"]


def test_atomic_write_failure_keeps_old_file(tmp_path):
    target = tmp_path / "x.bin"
    atomic_write(target, b"old")
    with pytest.raises(TypeError):
        atomic_write(target, 12345)
    assert target.read_bytes() == b"old"
    assert os.listdir(tmp_path) == ["x.bin"]
