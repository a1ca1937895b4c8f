"""Ensemble and report serialisation: CSV, the TRWL1 binary format, manifests.

All writes are atomic (write to a temp name in the target directory, then
rename) and byte-deterministic for a fixed ensemble: floats are emitted via
``repr`` (shortest round-trip form).
"""

from __future__ import annotations

import hashlib
import os
import struct
import tempfile

import numpy as np

from ._errors import FormatError
from .pathsim import EnsembleMeta, PathEnsemble

ENSEMBLE_MAGIC = b"TRWL1"

__all__ = [
    "write_ensemble_csv", "read_ensemble_csv", "write_ensemble_binary",
    "read_ensemble_binary", "write_exponent_csv", "atomic_write_bytes",
    "sha256_file", "read_ensemble", "ENSEMBLE_MAGIC",
]


def atomic_write_bytes(path, data):
    """Write bytes then rename, so readers never observe partial files."""
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def sha256_file(path):
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def _fmt(x):
    return repr(float(x))


def write_ensemble_csv(ensemble, path):
    """Header row ``time,<t_0>,...``, then one path per row (index first).

    A leading ``#`` comment carries the provenance fields so that a CSV file
    alone round-trips to a valid ensemble.
    """
    meta = ensemble.meta
    lines = [
        f"# trawlsim-ensemble kind={meta.process_kind} "
        f"master_seed={meta.master_seed} config_hash={meta.config_hash}",
        "time," + ",".join(_fmt(t) for t in ensemble.times),
    ]
    for i, row in enumerate(ensemble.paths):
        lines.append(str(i) + "," + ",".join(_fmt(v) for v in row))
    atomic_write_bytes(path, ("\n".join(lines) + "\n").encode("ascii"))


def read_ensemble_csv(path):
    meta_kw = {"master_seed": 0, "config_hash": "", "process_kind": "unknown"}
    times = None
    rows = []
    with open(path, "r", encoding="ascii") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                for tok in line[1:].split():
                    if tok.startswith("kind="):
                        meta_kw["process_kind"] = tok[5:]
                    elif tok.startswith("master_seed="):
                        meta_kw["master_seed"] = int(tok[12:])
                    elif tok.startswith("config_hash="):
                        meta_kw["config_hash"] = tok[12:]
                continue
            cells = line.split(",")
            if times is None:
                if cells[0] != "time":
                    raise FormatError(f"{path}: expected 'time' header row")
                times = np.array([float(c) for c in cells[1:]])
                continue
            rows.append([float(c) for c in cells[1:]])
    if times is None:
        raise FormatError(f"{path}: no header row")
    if not rows:
        raise FormatError(f"{path}: no path rows")
    return PathEnsemble(times, np.asarray(rows), EnsembleMeta(**meta_kw))


def write_ensemble_binary(ensemble, path):
    """Compact binary: magic ``TRWL1``, little-endian u64/f64 layout."""
    meta = ensemble.meta
    kind = meta.process_kind.encode("utf-8")
    chash = meta.config_hash.encode("utf-8")
    head = ENSEMBLE_MAGIC + struct.pack(
        "<QQQ", ensemble.paths.shape[0], ensemble.times.size,
        meta.master_seed & 0xFFFFFFFFFFFFFFFF)
    head += struct.pack("<I", len(kind)) + kind
    head += struct.pack("<I", len(chash)) + chash
    body = ensemble.times.astype("<f8").tobytes() + \
        np.ascontiguousarray(ensemble.paths, dtype="<f8").tobytes()
    atomic_write_bytes(path, head + body)


def read_ensemble_binary(path):
    with open(path, "rb") as fh:
        blob = fh.read()
    if blob[:5] != ENSEMBLE_MAGIC:
        raise FormatError(
            f"{path}: bad magic {blob[:5]!r}, expected {ENSEMBLE_MAGIC!r}")
    off = 5
    n_paths, n_times, seed = struct.unpack_from("<QQQ", blob, off)
    off += 24
    klen, = struct.unpack_from("<I", blob, off)
    off += 4
    kind = blob[off:off + klen].decode("utf-8")
    off += klen
    hlen, = struct.unpack_from("<I", blob, off)
    off += 4
    chash = blob[off:off + hlen].decode("utf-8")
    off += hlen
    need = off + 8 * n_times * (n_paths + 1)
    if len(blob) != need:
        raise FormatError(f"{path}: truncated body ({len(blob)} != {need})")
    times = np.frombuffer(blob, dtype="<f8", count=n_times, offset=off)
    paths = np.frombuffer(blob, dtype="<f8", count=n_paths * n_times,
                          offset=off + 8 * n_times).reshape(n_paths, n_times)
    return PathEnsemble(times.copy(), paths.copy(),
                        EnsembleMeta(seed, chash, kind))


def read_ensemble(path):
    """Dispatch on the TRWL1 magic, falling back to CSV."""
    with open(path, "rb") as fh:
        head = fh.read(5)
    if head == ENSEMBLE_MAGIC:
        return read_ensemble_binary(path)
    if head[:1] in (b"#", b"t"):
        return read_ensemble_csv(path)
    raise FormatError(f"{path}: neither a TRWL1 binary nor an ensemble CSV")


def write_exponent_csv(report, path):
    """``T,F_T,I_T,I_limit,rel_gap,regime,tol_achieved`` rows."""
    regime = report.regime.value if report.regime else "unclassified"
    lines = ["T,F_T,I_T,I_limit,rel_gap,regime,tol_achieved"]
    for T, F, I, gap, err in zip(report.T_grid, report.F_values,
                                 report.I_values, report.rel_gaps,
                                 report.tol_achieved):
        lines.append(",".join([_fmt(T), _fmt(F), _fmt(I),
                               _fmt(report.limit_value), _fmt(gap), regime,
                               _fmt(err)]))
    atomic_write_bytes(path, ("\n".join(lines) + "\n").encode("ascii"))
