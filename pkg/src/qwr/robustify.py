"""Connecting disconnected Z-checks, and edge augmentation of set graphs.

Connecting repairs codes where some Z-check's support graph splits into
several components whose partial products are not themselves stabilizers.
One fresh qubit is inserted between each adjacent pair of components and
tied in by a weight-3 Z-check; X-checks touching exactly one of the two
component representatives absorb the new qubit so that commutation is
preserved and the X rank cannot move (the new column is the sum of the two
representative columns). The rewritten check's support then runs through
the connecting qubits and forms a single component.

Soundness improvement works on the graphs G_i of chosen qubit sets. Any
component whose edge expansion sits below the requested floor receives
rounds of uniformly random near-perfect matchings until the floor is met,
so vertex degrees grow by at most one per round.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .cone import BComplex, build_b_complex
from .errors import AugmentationFailed, NotReasonable
from .f2 import SparseBitMatrix, row_space_equal
from .metrics import Graph, cheeger
from .model import (
    CssCode,
    encoded_dimension,
    is_reasonable,
    support_graph,
    validate,
)
from .report import BoundCheck, TransformReport, require_bounds
from .seeds import derive_seed

__all__ = [
    "ConnectPlan",
    "connect",
    "improve_soundness",
    "augment_b_complex",
]


@dataclass(frozen=True)
class ConnectPlan:
    """Per rewritten Z-check: the representative pairs and their new qubits.

    entries is ((z_row, ((rep_a, rep_b, new_qubit), ...)), ...) with one
    triple per adjacent component pair, so k components yield k-1 triples.
    """

    entries: tuple = ()

    def __post_init__(self):
        seen_rows = set()
        seen_new = set()
        for z_row, trips in self.entries:
            if z_row in seen_rows:
                raise ValueError(f"duplicate plan entry for Z-check {z_row}")
            seen_rows.add(z_row)
            if not trips:
                raise ValueError(f"empty triple list for Z-check {z_row}")
            for a in range(len(trips) - 1):
                if trips[a][1] != trips[a + 1][0]:
                    raise ValueError("triples must chain through shared reps")
            for _, _, r in trips:
                if r in seen_new:
                    raise ValueError(f"connecting qubit {r} used twice")
                seen_new.add(r)

    @property
    def num_added(self) -> int:
        return sum(len(trips) for _, trips in self.entries)

    def as_dict(self) -> dict:
        return {
            "entries": [
                {"z_row": z_row, "triples": [list(t) for t in trips]}
                for z_row, trips in self.entries
            ]
        }


def _shortened_z_space(masks, added_cols, n_orig: int) -> SparseBitMatrix:
    """Row space of the vectors vanishing on the added columns, restricted
    back to the original columns."""
    work = list(masks)
    for c in added_cols:
        bit = 1 << c
        pivot = None
        for i, m in enumerate(work):
            if m & bit:
                pivot = i
                break
        if pivot is None:
            continue
        pm = work[pivot]
        work = [
            (m ^ pm) if (i != pivot and m & bit) else m
            for i, m in enumerate(work)
        ]
        del work[pivot]
    keep = (1 << n_orig) - 1
    assert all(m & ~keep == 0 for m in work)
    return SparseBitMatrix.from_masks([m & keep for m in work], n_orig)


def connect(code: CssCode) -> tuple[CssCode, ConnectPlan, TransformReport]:
    """Insert connecting qubits until every rewritten Z-check support is a
    single component. Reasonable codes pass through untouched."""

    params_in = validate(code)
    decision = is_reasonable(code)
    if decision.ok:
        report = TransformReport(
            step="connect",
            params_before=params_in,
            params_after=params_in,
            bound_checks=(
                BoundCheck("input already reasonable; no-op", True),
            ),
            notes={"reasonable": True, "added_qubits": 0},
        )
        return code, ConnectPlan(), report

    x_masks = list(code.x_stabs.row_masks())
    z_masks = list(code.z_stabs.row_masks())
    triples_masks: list[int] = []
    entries = []
    next_q = code.n
    for zi in range(code.num_z_stabs):
        comps = support_graph(code, zi).components()
        if len(comps) <= 1:
            continue
        reps = [qubits[0] for qubits, _ in comps]
        trips = []
        for a in range(len(reps) - 1):
            trips.append((reps[a], reps[a + 1], next_q))
            next_q += 1
        entries.append((zi, tuple(trips)))
        for qa, qb, r in trips:
            bit = 1 << r
            for i, m in enumerate(x_masks):
                if ((m >> qa) ^ (m >> qb)) & 1:
                    x_masks[i] = m | bit
            tri = (1 << qa) | (1 << qb) | bit
            z_masks[zi] ^= tri
            triples_masks.append(tri)

    added = next_q - code.n
    plan = ConnectPlan(tuple(entries))
    out = CssCode(
        next_q,
        SparseBitMatrix.from_masks(x_masks, next_q),
        SparseBitMatrix.from_masks(z_masks + triples_masks, next_q),
        dict(code.meta, transform="connect"),
    )
    params_out = validate(out)

    keep = (1 << code.n) - 1
    x_restricted = SparseBitMatrix.from_masks(
        [m & keep for m in x_masks], code.n
    )
    z_shortened = _shortened_z_space(
        out.z_stabs.row_masks(), range(code.n, next_q), code.n
    )
    rows_connected = all(
        support_graph(out, zi).is_connected for zi, _ in entries
    )
    checks = (
        BoundCheck(
            "k_out == k_in",
            encoded_dimension(out) == params_in.k,
            observed=encoded_dimension(out),
            limit=params_in.k,
        ),
        BoundCheck(
            "z group unchanged off the connecting qubits",
            row_space_equal(z_shortened, code.z_stabs),
        ),
        BoundCheck(
            "x rows unchanged on the original qubits",
            row_space_equal(x_restricted, code.x_stabs),
        ),
        BoundCheck(
            "rewritten z rows each one component",
            rows_connected,
        ),
        BoundCheck(
            "one connecting qubit per adjacent component pair",
            added == plan.num_added,
            observed=added,
            limit=plan.num_added,
        ),
    )
    report = TransformReport(
        step="connect",
        params_before=params_in,
        params_after=params_out,
        bound_checks=checks,
        notes={
            "reasonable": False,
            "added_qubits": added,
            "rewritten_rows": [zi for zi, _ in entries],
        },
    )
    return out, plan, require_bounds(report)


def improve_soundness(
    code: CssCode,
    q_sets,
    target_h,
    seed: int = 0,
    max_rounds: int = 20,
    exact_limit: int = 20,
) -> tuple[tuple[Graph, ...], TransformReport]:
    """Grow each set graph into an expander with edge expansion >= target_h.

    Edges are added one random near-perfect matching per round, always
    inside an existing component, re-measuring the expansion after each
    round. Raises AugmentationFailed when a component is still below the
    floor after max_rounds matchings.
    """

    target = Fraction(target_h)
    if target <= 0:
        raise ValueError(f"target_h must be positive, got {target_h}")
    decision = is_reasonable(code)
    if not decision.ok:
        raise NotReasonable(
            "improve_soundness needs a reasonable code",
            witness=decision.witness,
        )

    graphs = []
    per_set = []
    all_exact = True
    worst = math.inf
    for i, q_raw in enumerate(q_sets):
        q = tuple(sorted(set(q_raw)))
        _, g = build_b_complex(code, q)
        new_edges: list[tuple[int, int]] = []
        rounds_used = 0
        for ci, comp in enumerate(g.components()):
            if len(comp) <= 1:
                continue
            rng = random.Random(derive_seed(seed, f"augment:{i}:{ci}"))
            comp_added: list[tuple[int, int]] = []

            def measure():
                whole = Graph(
                    g.num_vertices, g.edges + tuple(comp_added)
                )
                sub, _ = whole.induced(comp)
                return cheeger(sub, exact_limit=exact_limit)

            res = measure()
            rounds = 0
            while res.value < target and rounds < max_rounds:
                verts = list(comp)
                rng.shuffle(verts)
                for j in range(0, len(verts) - 1, 2):
                    a, b = verts[j], verts[j + 1]
                    comp_added.append((min(a, b), max(a, b)))
                rounds += 1
                res = measure()
            if res.value < target:
                raise AugmentationFailed(
                    f"component still below target after {max_rounds} "
                    "matching rounds",
                    best=res.value,
                    q_set=i,
                    component=ci,
                    target=float(target),
                )
            new_edges.extend(comp_added)
            rounds_used = max(rounds_used, rounds)
            all_exact = all_exact and res.exact
            worst = min(worst, res.value)
        graphs.append(Graph(g.num_vertices, g.edges + tuple(new_edges)))
        per_set.append(
            {
                "q_set": i,
                "added_edges": len(new_edges),
                "degree_increase_max": rounds_used,
            }
        )

    checks = (
        BoundCheck(
            "every component expansion >= target",
            worst >= target or math.isinf(worst),
            observed=None if math.isinf(worst) else worst,
            limit=float(target),
        ),
    )
    report = TransformReport(
        step="improve-soundness",
        config={"target_h": float(target), "max_rounds": max_rounds},
        seed=seed,
        bound_checks=checks,
        notes={"sets": per_set, "exact": all_exact},
    )
    return tuple(graphs), require_bounds(report)


def augment_b_complex(bc: BComplex, augmented: Graph) -> BComplex:
    """Adopt the extra edges of an augmented set graph as new 0-cells.

    The augmented graph must extend bc's own graph edge for edge; the new
    0-cells carry no crossing X-check and existing cycle indices stay
    valid. Rebuild redundancies afterwards if the cycle basis should see
    the new edges.
    """

    base = bc.graph()
    if augmented.num_vertices != base.num_vertices:
        raise ValueError("augmented graph has a different vertex count")
    if augmented.edges[: len(base.edges)] != base.edges:
        raise ValueError("augmented graph does not extend the complex graph")
    extra = augmented.edges[len(base.edges) :]
    cells = list(bc.zero_cells)
    for a, b in extra:
        qa, qb = bc.qubits[a], bc.qubits[b]
        cells.append((None, min(qa, qb), max(qa, qb)))
    return BComplex(bc.qubits, tuple(cells), bc.cycles)
