"""Thickening: homological product with a cellulated interval.

The product of a code with an interval of ell vertices multiplies X-distance
by ell while keeping Z-distance and the encoded dimension. Keeping only one
copy of each original Z-check, placed at a chosen height, leaves the
stabilizer group unchanged but drops the per-qubit Z-degree to roughly the
per-height multiplicity of the kept checks. Height selection is either
seeded rejection sampling against a multiplicity target or a greedy coloring
of the check-conflict graph, which always succeeds at ell = q_Z*w_Z + 1.

Output layout: level qubit (q, k) at index q*ell + k, rung qubit (x, j) at
N*ell + x*(ell-1) + j; X-checks ordered (x, k) -> x*ell + k; Z-checks list
the kept originals first, then the interval checks (q, j) -> q*(ell-1) + j.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Optional

from .errors import RetriesExhausted
from .f2 import RowBasis, SparseBitMatrix
from .model import CssCode, encoded_dimension, validate
from .report import BoundCheck, TransformReport, require_bounds
from .seeds import derive_seed

__all__ = [
    "IntervalComplex",
    "HeightAssignment",
    "thicken",
    "kept_multiplicity",
    "choose_heights_random",
    "choose_heights_coloring",
    "dual",
]


@dataclass(frozen=True)
class IntervalComplex:
    """Cellulated interval: ell vertices, ell-1 edges, edge j on {j, j+1}."""

    ell: int

    def __post_init__(self):
        if self.ell < 2:
            raise ValueError(f"interval needs at least 2 vertices, got {self.ell}")

    @property
    def boundary(self) -> SparseBitMatrix:
        return SparseBitMatrix.from_rows(
            [[j for j in (k - 1, k) if 0 <= j < self.ell - 1] for k in range(self.ell)],
            self.ell - 1,
        )


@dataclass(frozen=True)
class HeightAssignment:
    """One height in 1..ell per Z-check; target_w is the multiplicity goal."""

    ell: int
    heights: tuple
    target_w: Optional[int] = None

    def __post_init__(self):
        if self.ell < 1:
            raise ValueError(f"ell must be >= 1, got {self.ell}")
        for h in self.heights:
            if not 1 <= h <= self.ell:
                raise ValueError(f"height {h} out of range 1..{self.ell}")

    @classmethod
    def uniform(cls, ell: int, count: int, height: int = 1) -> "HeightAssignment":
        return cls(ell, tuple(height for _ in range(count)))


def kept_multiplicity(code: CssCode, heights: HeightAssignment) -> int:
    """Largest number of kept Z-checks meeting one qubit at one height."""

    if len(heights.heights) != code.num_z_stabs:
        raise ValueError("one height per Z-check required")
    counts = {}
    for row, h in zip(code.z_stabs.row_supports, heights.heights):
        for q in row:
            key = (q, h)
            counts[key] = counts.get(key, 0) + 1
    return max(counts.values(), default=0)


def thicken(code: CssCode, ell: int, heights: HeightAssignment) -> tuple:
    """Return (product code restricted to kept Z-checks, report)."""

    if ell < 2:
        raise ValueError(f"ell must be >= 2, got {ell}")
    if heights.ell != ell:
        raise ValueError(f"height assignment built for ell={heights.ell}, not {ell}")
    if len(heights.heights) != code.num_z_stabs:
        raise ValueError("one height per Z-check required")
    before = validate(code)
    n_in = code.n
    n_x = code.num_x_stabs
    n_z = code.num_z_stabs

    def level(q, k):
        return q * ell + k

    def rung(x, j):
        return n_in * ell + x * (ell - 1) + j

    n_out = n_in * ell + n_x * (ell - 1)

    x_rows = []
    for x, sup in enumerate(code.x_stabs.row_supports):
        for k in range(ell):
            row = [level(q, k) for q in sup]
            row += [rung(x, j) for j in (k - 1, k) if 0 <= j < ell - 1]
            x_rows.append(sorted(row))

    z_rows = []
    for sup, h in zip(code.z_stabs.row_supports, heights.heights):
        z_rows.append(sorted(level(q, h - 1) for q in sup))
    x_cols = code.x_stabs.column_masks()
    for q in range(n_in):
        stabs_on_q = [x for x in range(n_x) if (x_cols[q] >> x) & 1]
        for j in range(ell - 1):
            row = [level(q, j), level(q, j + 1)] + [rung(x, j) for x in stabs_on_q]
            z_rows.append(sorted(row))

    out = CssCode(
        n_out,
        SparseBitMatrix.from_rows(x_rows, n_out),
        SparseBitMatrix.from_rows(z_rows, n_out),
        meta={
            "transform": "thicken",
            "ell": ell,
            "kept_rows": list(range(n_z)),
            "interval_rows": list(range(n_z, n_z + n_in * (ell - 1))),
            "heights": list(heights.heights),
        },
    )
    after = validate(out)

    # The kept code and the full product have the same stabilizer group:
    # every original Z-check embedded at every height must be spanned.
    basis = RowBasis(out.z_stabs.row_masks())
    embedded_ok = True
    for sup in code.z_stabs.row_supports:
        for m in range(ell):
            mask = 0
            for q in sup:
                mask |= 1 << level(q, m)
            if not basis.contains(mask):
                embedded_ok = False

    k_in = encoded_dimension(code)
    k_out = encoded_dimension(out)
    mult = kept_multiplicity(code, heights)
    grow = 2 if ell >= 3 else 1
    checks = [
        BoundCheck("k_out == k_in", k_out == k_in, k_out, k_in),
        BoundCheck(
            "n_out == n_in*ell + n_x*(ell-1)",
            n_out == n_in * ell + n_x * (ell - 1),
            n_out,
            n_in * ell + n_x * (ell - 1),
        ),
        BoundCheck(
            "all original Z-checks at all heights in output row space",
            embedded_ok,
            embedded_ok,
            True,
        ),
        BoundCheck(
            f"w_x_out == w_x_in + {grow}",
            after.w_x == before.w_x + grow,
            after.w_x,
            before.w_x + grow,
            required=n_x >= 1,
        ),
        BoundCheck(
            "w_z_out == max(w_z_in, 2 + q_x_in)",
            after.w_z == max(before.w_z, 2 + before.q_x),
            after.w_z,
            max(before.w_z, 2 + before.q_x),
            required=n_in >= 1,
        ),
        BoundCheck(
            "q_x_out == max(q_x_in, 2)",
            after.q_x == max(before.q_x, 2),
            after.q_x,
            max(before.q_x, 2),
            required=n_x >= 1,
        ),
    ]
    if heights.target_w is not None:
        cap = max(heights.target_w + 2, before.w_x)
        checks.append(
            BoundCheck(
                "q_z_out <= max(target_w + 2, w_x_in)",
                after.q_z <= cap,
                after.q_z,
                cap,
            )
        )
    report = TransformReport(
        step="thicken",
        config={"ell": ell, "heights": list(heights.heights), "target_w": heights.target_w},
        params_before=before,
        params_after=after,
        bound_checks=tuple(checks),
        notes={"kept_multiplicity": mult},
    )
    require_bounds(report)
    return out, report


def choose_heights_random(
    code: CssCode,
    ell: int,
    w: int,
    seed: int = 0,
    max_retries: int = 1000,
) -> HeightAssignment:
    """Uniform i.i.d. heights, resampled until multiplicity <= w."""

    if ell < 1 or w < 1:
        raise ValueError("ell and w must be >= 1")
    last_offender = None
    for t in range(max_retries):
        rng = random.Random(derive_seed(seed, f"heights:{t}"))
        heights = tuple(rng.randrange(1, ell + 1) for _ in range(code.num_z_stabs))
        counts = {}
        offender = None
        for row, h in zip(code.z_stabs.row_supports, heights):
            for q in row:
                key = (q, h)
                counts[key] = counts.get(key, 0) + 1
                if counts[key] > w and offender is None:
                    offender = q
        if offender is None:
            return HeightAssignment(ell, heights, target_w=w)
        last_offender = offender
    params = validate(code)
    # Smallest ell making the union-bound expression at most one.
    base = 2 * math.e * math.comb(params.q_z, w + 1) * min(
        params.q_z * params.w_z, code.n
    )
    suggested = max(ell + 1, math.ceil(base ** (1 / w))) if base > 0 else ell + 1
    raise RetriesExhausted(
        f"no height assignment with multiplicity <= {w} found in "
        f"{max_retries} tries at ell={ell}",
        qubit=last_offender,
        suggested_ell=suggested,
    )


def choose_heights_coloring(code: CssCode) -> tuple:
    """Greedy conflict-graph coloring; ell = q_Z*w_Z + 1 always suffices."""

    params = validate(code)
    n_z = code.num_z_stabs
    masks = code.z_stabs.row_masks()
    heights = []
    for i in range(n_z):
        taken = {
            heights[j] for j in range(i) if masks[i] & masks[j]
        }
        h = 1
        while h in taken:
            h += 1
        heights.append(h)
    ell = max(2, params.q_z * params.w_z + 1)
    assert all(h <= ell for h in heights)
    return ell, HeightAssignment(ell, tuple(heights), target_w=1)


def dual(code: CssCode) -> CssCode:
    """Swap X- and Z-checks (transpose the complex). Involution."""

    return CssCode(code.n, code.z_stabs, code.x_stabs, dict(code.meta))
