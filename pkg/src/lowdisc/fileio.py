"""Flat-file formats: point sets, scramble configurations, CSV series.

Point-set files are UTF-8 text: a header line `# lowdisc d=<d> n=<N>`
followed by N lines of d space-separated coordinates printed with 17
significant digits (lossless for float64).  Configuration files are JSON
objects with keys primes, shifts, perms, poly (optional), start_index,
convention.
"""

from __future__ import annotations

import json
import os
from typing import Iterable, Sequence

import numpy as np

from .errors import ConfigError
from .sequences import Permutation, PermPolynomial, PointSet, ScrambleConfig

POINT_HEADER = "# lowdisc"


def write_point_set(ps: PointSet, path: str | os.PathLike) -> None:
    n, d = ps.points.shape
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{POINT_HEADER} d={d} n={n}\n")
        for row in ps.points:
            fh.write(" ".join(f"{x:.17g}" for x in row) + "\n")


def read_point_set(path: str | os.PathLike) -> PointSet:
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip()
        if not header.startswith(POINT_HEADER):
            raise ConfigError(f"{path}: not a point-set file (header {header!r})")
        fields = dict(part.split("=") for part in header[len(POINT_HEADER):].split())
        d, n = int(fields["d"]), int(fields["n"])
        pts = np.loadtxt(fh, dtype=np.float64, ndmin=2)
    if pts.shape != (n, d):
        raise ConfigError(f"{path}: header says {(n, d)}, data is {pts.shape}")
    return PointSet(d, pts, label=str(path))


def config_to_dict(cfg: ScrambleConfig) -> dict:
    out = {
        "primes": list(cfg.primes),
        "shifts": list(cfg.shifts),
        "perms": [list(p.mapping) for p in cfg.perms],
        "start_index": cfg.start_index,
        "convention": cfg.convention,
    }
    if cfg.polys is not None:
        out["poly"] = [list(p.coeffs) if p is not None else None for p in cfg.polys]
    return out


def config_from_dict(data: dict) -> ScrambleConfig:
    try:
        primes = tuple(int(p) for p in data["primes"])
        shifts = tuple(int(a) for a in data["shifts"])
        perms = tuple(Permutation.of(m) for m in data["perms"])
    except KeyError as exc:
        raise ConfigError(f"config is missing key {exc}") from exc
    polys = None
    if data.get("poly") is not None:
        polys = tuple(PermPolynomial(tuple(int(c) for c in coeffs))
                      if coeffs is not None else None
                      for coeffs in data["poly"])
    return ScrambleConfig(primes, shifts, perms, polys=polys,
                          start_index=int(data.get("start_index", 1)),
                          convention=data.get("convention", "paper"))


def write_config(cfg: ScrambleConfig, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(config_to_dict(cfg), fh, indent=2)
        fh.write("\n")


def read_config(path: str | os.PathLike) -> ScrambleConfig:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: malformed config JSON: {exc}") from exc
    return config_from_dict(data)


def write_series_csv(rows: Iterable[tuple[int, float]], path: str | os.PathLike) -> None:
    """CSV `n,scaled` with '.' decimal separator regardless of locale."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("n,scaled\n")
        for n, val in rows:
            fh.write(f"{n},{val:.17g}\n")


def read_series_csv(path: str | os.PathLike) -> list[tuple[int, float]]:
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip()
        if header != "n,scaled":
            raise ConfigError(f"{path}: unexpected series header {header!r}")
        out = []
        for line in fh:
            n_str, val_str = line.strip().split(",")
            out.append((int(n_str), float(val_str)))
    return out
