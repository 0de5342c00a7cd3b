"""On-disk formats for fields, ensembles and trajectories.

All binary formats are little-endian.

field       ``b"GKDV"``, u32 version, u32 N, then 2N float64 ``(re, im)`` for n = 1..N
ensemble    ``b"GKDE"``, u32 version, u32 N, u32 M, f64 B, u64 seed, u32 stream_id,
            then M field records of 2N float64 and M float64 weights
trajectory  ``b"GKDT"``, u32 version, u32 N, f64 dt_out, u32 count, u8 variant
            (0 gauged, 1 ungauged), f64 nonlinearity coefficient, then count field records

Fields also have a JSON form ``{"format": "gkdv-field", "version": 1, "N": N,
"re": [...], "im": [...]}`` with decimal numbers written by ``repr`` so that
the float64 values round-trip exactly.  Every write goes through a temporary
file in the target directory followed by an atomic rename.
"""

from __future__ import annotations

import json
import os
import struct
import tempfile
from pathlib import Path

import numpy as np

from .flow import FlowConfig, Trajectory
from .sampler import GibbsEnsemble
from .spectral import SpectralField

__all__ = [
    "FormatError",
    "atomic_write",
    "write_field",
    "read_field",
    "field_to_json",
    "field_from_json",
    "write_field_json",
    "read_field_json",
    "load_field",
    "write_ensemble",
    "read_ensemble",
    "write_trajectory",
    "read_trajectory",
]

VERSION = 1
_FIELD = struct.Struct("<4sII")
_ENSEMBLE = struct.Struct("<4sIIIdQI")
_TRAJ = struct.Struct("<4sIIdIBd")
_VARIANTS = ("gauged", "ungauged")


class FormatError(ValueError):
    """A file does not follow the expected layout."""


def atomic_write(path, data: bytes | str) -> Path:
    """Write ``data`` to ``path`` by way of a temporary file and ``os.replace``."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    mode = "wb" if isinstance(data, bytes) else "w"
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, mode) as fh:
            fh.write(data)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def _records(c: np.ndarray) -> bytes:
    c = np.ascontiguousarray(c, dtype=np.complex128)
    return c.view(np.float64).astype("<f8").tobytes()


def _from_records(buf: bytes, count: int, N: int) -> np.ndarray:
    if len(buf) < 16 * count * N:
        raise FormatError("file is truncated")
    vals = np.frombuffer(buf, dtype="<f8", count=2 * N * count).astype(np.float64)
    return vals.view(np.complex128).reshape(count, N)


def _check_magic(got: bytes, want: bytes, version: int):
    if got != want:
        raise FormatError(f"bad magic {got!r}, expected {want!r}")
    if version != VERSION:
        raise FormatError(f"unsupported version {version}")


def write_field(path, f: SpectralField) -> Path:
    return atomic_write(path, _FIELD.pack(b"GKDV", VERSION, f.max_mode) + _records(f.coeffs))


def read_field(path) -> SpectralField:
    data = Path(path).read_bytes()
    if len(data) < _FIELD.size:
        raise FormatError("file is too short for a field header")
    magic, version, N = _FIELD.unpack_from(data)
    _check_magic(magic, b"GKDV", version)
    return SpectralField(_from_records(data[_FIELD.size:], 1, N)[0])


def field_to_json(f: SpectralField) -> str:
    return json.dumps({
        "format": "gkdv-field",
        "version": VERSION,
        "N": f.max_mode,
        "re": [float(x) for x in f.coeffs.real],
        "im": [float(x) for x in f.coeffs.imag],
    })


def field_from_json(text: str) -> SpectralField:
    obj = json.loads(text)
    if obj.get("format") != "gkdv-field":
        raise FormatError("not a gkdv-field document")
    re_, im_ = np.asarray(obj["re"], float), np.asarray(obj["im"], float)
    if re_.shape != im_.shape or re_.shape != (int(obj["N"]),):
        raise FormatError("coefficient arrays do not match N")
    return SpectralField(re_ + 1j * im_)


def write_field_json(path, f: SpectralField) -> Path:
    return atomic_write(path, field_to_json(f))


def read_field_json(path) -> SpectralField:
    return field_from_json(Path(path).read_text())


def load_field(path) -> SpectralField:
    """Read a field in either the binary or the JSON format."""
    head = Path(path).read_bytes()[:4]
    return read_field(path) if head == b"GKDV" else read_field_json(path)


def write_ensemble(path, ens: GibbsEnsemble) -> Path:
    head = _ENSEMBLE.pack(b"GKDE", VERSION, ens.N, ens.M, float(ens.B), int(ens.seed), int(ens.stream_id))
    body = _records(ens.coeffs) + np.asarray(ens.weights, "<f8").tobytes()
    out = atomic_write(path, head + body)
    manifest = {"format": "gkdv-ensemble", "version": VERSION, "N": ens.N, "M": ens.M, "B": ens.B,
                "seed": int(ens.seed), "stream_id": int(ens.stream_id), "ess": ens.ess,
                "rng": "numpy PCG64 via SeedSequence(seed, spawn_key=(stream_id,))"}
    atomic_write(str(path) + ".json", json.dumps(manifest, indent=2))
    return out


def read_ensemble(path) -> GibbsEnsemble:
    data = Path(path).read_bytes()
    if len(data) < _ENSEMBLE.size:
        raise FormatError("file is too short for an ensemble header")
    magic, version, N, M, B, seed, stream = _ENSEMBLE.unpack_from(data)
    _check_magic(magic, b"GKDE", version)
    off = _ENSEMBLE.size
    c = _from_records(data[off:], M, N)
    off += 16 * M * N
    if len(data) < off + 8 * M:
        raise FormatError("ensemble weights are truncated")
    w = np.frombuffer(data, "<f8", count=M, offset=off).astype(float)
    return GibbsEnsemble(c, w, B, seed, stream)


def write_trajectory(path, traj: Trajectory) -> Path:
    cfg = traj.config
    head = _TRAJ.pack(b"GKDT", VERSION, traj.N, traj.dt_out, len(traj), _VARIANTS.index(cfg.variant),
                      float(cfg.nonlin_coeff))
    out = atomic_write(path, head + _records(traj.states))
    atomic_write(str(path) + ".json", json.dumps({"format": "gkdv-trajectory", "version": VERSION,
                                                  "config": cfg.to_dict()}, indent=2, default=str))
    return out


def read_trajectory(path) -> Trajectory:
    data = Path(path).read_bytes()
    if len(data) < _TRAJ.size:
        raise FormatError("file is too short for a trajectory header")
    magic, version, N, dt_out, count, variant, lam = _TRAJ.unpack_from(data)
    _check_magic(magic, b"GKDT", version)
    if variant >= len(_VARIANTS):
        raise FormatError(f"unknown variant code {variant}")
    states = _from_records(data[_TRAJ.size:], count, N)
    side = Path(str(path) + ".json")
    cfg_kwargs = {}
    if side.exists():
        cfg_kwargs = {k: v for k, v in json.loads(side.read_text())["config"].items()
                      if k in ("dt", "integrator", "output_stride", "adaptive", "courant")}
    T = dt_out * (count - 1)
    cfg = FlowConfig(N=N, T=T, variant=_VARIANTS[variant], nonlin_coeff=lam, max_dt=float("inf"),
                     **{"dt": dt_out if dt_out > 0 else 1e-3, **cfg_kwargs})
    times = dt_out * np.arange(count)
    return Trajectory(times, states, cfg, SpectralField(states[0]))
