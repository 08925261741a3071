"""Curated Fano manifold dataset.

The classification filters consult a small table of Fano manifolds with
cyclic Picard group (dimension, index, degree, name, fourth Betti rank).
These facts are literature input; the tool trusts them and never derives
them.  A second table carries the rational pushforward coefficients of
the second Chern class of the tangent bundle for the degree-matched
five-dimensional targets.
"""

from __future__ import annotations

import csv
import os
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Dict, List, Optional, Tuple

DATA_ENV_VAR = "FANOCALC_DATA"


@dataclass(frozen=True)
class FanoEntry:
    dim: int
    index: int
    degree: int
    name: str
    b4_rank: Optional[int]
    source_note: str

    def __post_init__(self):
        if not (1 <= self.index <= self.dim + 1):
            raise ValueError("index must lie between 1 and dim+1")
        if self.degree < 1:
            raise ValueError("degree must be at least 1")


def _default_path(filename: str) -> str:
    return str(resources.files("fanocalc").joinpath("data", filename))


def dataset_path() -> str:
    """Path of the manifold table, honoring the FANOCALC_DATA override."""
    override = os.environ.get(DATA_ENV_VAR)
    if override:
        return override
    return _default_path("fano_manifolds.csv")


def load_dataset(path: Optional[str] = None) -> List[FanoEntry]:
    if path is None:
        path = dataset_path()
    entries = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        for row in csv.DictReader(fh):
            entries.append(FanoEntry(
                dim=int(row["dim"]),
                index=int(row["index"]),
                degree=int(row["degree"]),
                name=row["name"],
                b4_rank=int(row["b4_rank"]) if row["b4_rank"] else None,
                source_note=row["source_note"],
            ))
    return entries


def match_manifolds(dim: int, index: int, degree,
                    dataset: Optional[List[FanoEntry]] = None,
                    ) -> Tuple[List[FanoEntry], Optional[str]]:
    """All dataset entries with the given dimension, index and degree.

    An empty list is meaningful: no known manifold realizes the numbers.
    A non-integral degree can never match and is flagged as the reason.
    """
    degree = Fraction(degree)
    if degree.denominator != 1:
        return [], "non_integral_degree"
    if dataset is None:
        dataset = load_dataset()
    hits = [e for e in dataset
            if e.dim == dim and e.index == index and e.degree == degree]
    return hits, None


def load_c2_pushforward(path: Optional[str] = None) -> Dict[int, Fraction]:
    """Map target degree -> pushforward coefficient of c2 of the tangent
    bundle, used by the degeneracy-divisor formula."""
    if path is None:
        path = _default_path("c2_pushforward.csv")
    out: Dict[int, Fraction] = {}
    with open(path, "r", encoding="utf-8", newline="") as fh:
        for row in csv.DictReader(fh):
            out[int(row["degree"])] = Fraction(row["coeff"])
    return out
