"""Random sparse codes: Bernoulli X-checks plus uniform kernel Z-checks.

The X side is a random classical parity-check matrix whose entries are one
with probability delta/N, delta = beta * ln(N). The Z side draws rows
uniformly from the kernel of the X side, so commutation holds by
construction. Diagnostics report the classical distance, Betti numbers,
Z-row independence, and per-row support-graph expansion; none of the
asymptotic claims are asserted, only measured.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .cone import build_b_complex
from .f2 import SparseBitMatrix, kernel_basis, rank
from .metrics import cheeger, distance_estimate
from .model import CssCode, encoded_dimension, validate
from .seeds import derive_seed

__all__ = [
    "RandomCodeSpec",
    "sample_classical",
    "sample_z_stabilizers",
    "build_applic_code",
]


@dataclass(frozen=True)
class RandomCodeSpec:
    """Parameters of one random draw; beta = 0 is allowed for the
    degenerate zero-matrix case."""

    n: int
    beta: float
    x_check_fraction: Fraction = Fraction(1, 2)
    z_count: Optional[int] = None
    seed: int = 0

    def __post_init__(self):
        if self.n < 8:
            raise ValueError(f"need at least 8 qubits, got {self.n}")
        if self.beta < 0:
            raise ValueError(f"beta must be nonnegative, got {self.beta}")
        frac = Fraction(self.x_check_fraction)
        if not 0 < frac <= 1:
            raise ValueError(f"x_check_fraction outside (0, 1]: {frac}")
        if self.z_count is not None and self.z_count < 0:
            raise ValueError(f"negative z_count: {self.z_count}")

    @property
    def delta(self) -> float:
        return float(self.beta) * math.log(self.n)

    @property
    def num_x_rows(self) -> int:
        return round(Fraction(self.x_check_fraction) * self.n)

    @property
    def num_z_rows(self) -> int:
        return self.z_count if self.z_count is not None else self.n // 4


def sample_classical(spec: RandomCodeSpec) -> SparseBitMatrix:
    """i.i.d. Bernoulli(delta/n) matrix with num_x_rows rows."""
    p = spec.delta / spec.n
    if p > 1:
        raise ValueError(
            f"density delta/n = {p:.3f} exceeds 1; lower beta"
        )
    rng = np.random.default_rng(derive_seed(spec.seed, "classical"))
    dense = rng.random((spec.num_x_rows, spec.n)) < p
    rows = [np.flatnonzero(r).tolist() for r in dense]
    return SparseBitMatrix.from_rows(rows, spec.n)


def sample_z_stabilizers(
    x_checks: SparseBitMatrix, count: int, seed: int = 0
) -> SparseBitMatrix:
    """count uniform elements of the kernel of x_checks.

    Uniformity comes from taking uniform GF(2) combinations of a kernel
    basis; the zero vector is a legal draw and is left in place.
    """
    if count < 0:
        raise ValueError(f"negative count: {count}")
    basis = [v.to_mask() for v in kernel_basis(x_checks)]
    masks = []
    for i in range(count):
        rng_bits = 0
        if basis:
            rng_bits = random.Random(
                derive_seed(seed, f"z-row:{i}")
            ).getrandbits(len(basis))
        acc = 0
        for j, b in enumerate(basis):
            if (rng_bits >> j) & 1:
                acc ^= b
        masks.append(acc)
    return SparseBitMatrix.from_masks(masks, x_checks.cols)


def build_applic_code(spec: RandomCodeSpec) -> tuple[CssCode, dict]:
    """One full random draw plus its health report."""
    hx = sample_classical(spec)
    hz = sample_z_stabilizers(hx, spec.num_z_rows, spec.seed)
    code = CssCode(
        spec.n,
        hx,
        hz,
        {
            "name": "random-applic",
            "beta": float(spec.beta),
            "seed": spec.seed,
        },
    )
    params = validate(code)

    rank_x = rank(hx)
    b1 = spec.n - rank_x
    b0 = hx.rows - rank_x
    assert b1 == spec.n - hx.rows + b0

    classical = CssCode(spec.n, hx, SparseBitMatrix.zeros(0, spec.n))
    if b1 > 0:
        dist = distance_estimate(
            classical, side="z", seed=derive_seed(spec.seed, "classical-dist")
        )
        classical_distance = dist.value
        classical_method = dist.method
    else:
        classical_distance = None
        classical_method = "empty-kernel"

    zero_rows = sum(1 for sup in hz.row_supports if not sup)
    sets = []
    for i, sup in enumerate(hz.row_supports):
        if not sup:
            sets.append({"z_row": i, "size": 0, "degenerate": True})
            continue
        _, g = build_b_complex(code, tuple(sup))
        comps = g.components()
        h = cheeger(g)
        sets.append(
            {
                "z_row": i,
                "size": len(sup),
                "degenerate": False,
                "connected": len(comps) == 1,
                "cheeger": None if math.isinf(h.value) else h.value,
                "cheeger_exact": h.exact,
            }
        )

    isolated = sum(1 for w in hx.column_weights() if w == 0)
    diagnostics = {
        "n": spec.n,
        "delta": spec.delta,
        "k": encoded_dimension(code),
        "w_x": params.w_x,
        "q_x": params.q_x,
        "b0": b0,
        "b1": b1,
        "classical_distance": classical_distance,
        "classical_distance_method": classical_method,
        "classical_relative_distance": (
            None
            if classical_distance is None
            else classical_distance / spec.n
        ),
        "z_rows": hz.rows,
        "z_rank": rank(hz),
        "z_independent": rank(hz) == hz.rows,
        "degenerate_z_rows": zero_rows,
        "isolated_qubits": isolated,
        "q_sets": sets,
    }
    return code, diagnostics
