"""Distance, expansion, and homology measurements.

Distance search works on the coset structure of a CSS code: a Z-type logical
operator is a vector in the kernel of the X-check matrix that is not a row
combination of the Z-check matrix, and symmetrically for X-type.  The exact
search enumerates combinations of generator rows over several disjoint
systematic column sets, which yields a certified lower bound that grows with
each completed round; the search stops once the bound meets the best operator
found.  The estimator repeats the same idea with randomized column sets and
reports the lightest operator seen.
"""

from __future__ import annotations

import math
import os
import random
from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from .errors import BudgetExceeded, DimensionMismatch, IndexOutOfRange
from .f2 import RowBasis, indices_from_mask, kernel_basis
from .model import ChainComplex, CssCode
from .seeds import derive_seed

# ---------------------------------------------------------------------------
# distance


@dataclass(frozen=True)
class DistanceResult:
    """Outcome of a distance computation.

    value    minimum operator weight; None means no logical operator exists
    method   "exact", "lower-bound", "estimate", or "infinite"
    witness  support of the lightest logical operator found, if any; for
             "lower-bound" its length is an upper bound while value is the
             certified lower bound
    side     "x" or "z", naming the operator type the witness belongs to
    """

    value: Optional[int]
    method: str
    witness: Optional[tuple[int, ...]] = None
    side: Optional[str] = None


def _systematic_bases(gens: Sequence[int]) -> list[tuple[list[int], int]]:
    """Row-reduce the generators over successive disjoint pivot column sets.

    Returns (rows, num_pivots) pairs.  Within each entry every pivot column
    appears in exactly one row, and pivot columns never repeat across
    entries.  A codeword equal to a combination of r rows of an entry with
    p pivots therefore has at least r - (m - p) ones inside that entry's
    pivot columns, which is what certifies the round lower bounds.
    """
    m = len(gens)
    used = 0
    bases: list[tuple[list[int], int]] = []
    while True:
        rows = list(gens)
        pivots: list[tuple[int, int]] = []
        for i in range(m):
            for pbit, j in pivots:
                if rows[i] & pbit:
                    rows[i] ^= rows[j]
            free = rows[i] & ~used
            if free:
                pbit = free & -free
                for j in range(i):
                    if rows[j] & pbit:
                        rows[j] ^= rows[i]
                pivots.append((pbit, i))
        if not pivots:
            return bases
        for pbit, _ in pivots:
            used |= pbit
        bases.append((rows, len(pivots)))


def _round_bound(num_gens: int, bases: Sequence[tuple[list[int], int]], r: int) -> int:
    """Certified weight floor for codewords missed by all rounds up to r."""
    if r < 1:
        return 1
    return max(1, sum(max(0, (r + 1) - (num_gens - p)) for _, p in bases))


def _coset_minimum_weight(
    gens: list[int], excluded: RowBasis, budget: int
) -> tuple[Optional[int], int, str]:
    """Minimum weight over span(gens) minus the excluded row space.

    Returns (certified value or None, witness mask, method).  Enumeration
    cost is counted per generated combination; when the budget stops the
    search after at least one whole round, the value is the bound certified
    by the last completed round.
    """
    m = len(gens)
    bases = _systematic_bases(gens)
    best_w: Optional[int] = None
    best_mask = 0
    consumed = 0
    completed = 0
    for r in range(1, m + 1):
        bound = _round_bound(m, bases, completed)
        if best_w is not None and best_w <= bound:
            return best_w, best_mask, "exact"
        for rows, _ in bases:
            for combo in combinations(range(m), r):
                if consumed >= budget:
                    if completed >= 1:
                        value = _round_bound(m, bases, completed)
                        return value, best_mask, "lower-bound"
                    raise BudgetExceeded(
                        "distance search budget exhausted before completing "
                        "the first enumeration round",
                        lower_bound=1,
                        budget=budget,
                    )
                consumed += 1
                v = 0
                for i in combo:
                    v ^= rows[i]
                w = v.bit_count()
                if (best_w is None or w < best_w) and not excluded.contains(v):
                    best_w = w
                    best_mask = v
        completed = r
    # every codeword was enumerated
    return best_w, best_mask, "exact"


def _side_matrices(code: CssCode, side: str):
    if side == "z":
        return code.x_stabs, code.z_stabs
    if side == "x":
        return code.z_stabs, code.x_stabs
    raise ValueError(f"side must be 'x' or 'z', got {side!r}")


def _logical_generators(code: CssCode, side: str) -> tuple[list[int], RowBasis]:
    parity, quotient = _side_matrices(code, side)
    gens = [v.to_mask() for v in kernel_basis(parity)]
    span = RowBasis(gens)
    excluded = RowBasis()
    for mask in quotient.row_masks():
        if not span.contains(mask):
            raise DimensionMismatch(
                "excluded rows must lie inside the ambient kernel; "
                "the code does not commute",
                side=side,
            )
        excluded.add(mask)
    return gens, excluded


def _one_side_exact(code: CssCode, side: str, budget: int) -> DistanceResult:
    gens, excluded = _logical_generators(code, side)
    if len(gens) == excluded.rank:
        return DistanceResult(None, "infinite", None, side)
    value, mask, method = _coset_minimum_weight(gens, excluded, budget)
    witness = indices_from_mask(mask) if mask else None
    return DistanceResult(value, method, witness, side)


def _combine(a: DistanceResult, b: DistanceResult) -> DistanceResult:
    """Minimum of two one-sided results with the strongest honest method."""
    if a.method == "infinite":
        return b
    if b.method == "infinite":
        return a
    lo, hi = (a, b) if (a.value, a.method != "exact") <= (b.value, b.method != "exact") else (b, a)
    if lo.method == "exact" and (hi.method == "exact" or hi.value >= lo.value):
        return DistanceResult(lo.value, "exact", lo.witness, lo.side)
    if lo.method == "estimate":
        return DistanceResult(lo.value, "estimate", lo.witness, lo.side)
    # lo is a lower bound; pick the lighter witness as the live upper bound
    wit, wside = lo.witness, lo.side
    if hi.witness is not None and (wit is None or len(hi.witness) < len(wit)):
        wit, wside = hi.witness, hi.side
    return DistanceResult(lo.value, "lower-bound", wit, wside)


def distance_exact(code: CssCode, side: str = "both", budget: int = 2_000_000) -> DistanceResult:
    """Minimum logical operator weight by certified enumeration.

    side "x" or "z" restricts to that operator type; "both" returns the
    smaller of the two.  budget caps the number of enumerated row
    combinations per side.  The result method is "exact" when the search
    self-certified, "lower-bound" when the budget stopped it after at least
    one whole round, and "infinite" (value None) when no logical exists.
    """
    if side in ("x", "z"):
        return _one_side_exact(code, side, budget)
    if side != "both":
        raise ValueError(f"side must be 'x', 'z', or 'both', got {side!r}")
    return _combine(
        _one_side_exact(code, "z", budget),
        _one_side_exact(code, "x", budget),
    )


# ---------------------------------------------------------------------------
# randomized estimate


def _randomized_reduced_rows(gens: Sequence[int], rng: random.Random) -> list[int]:
    """Full row reduction with pivot columns chosen at random."""
    order = list(range(len(gens)))
    rng.shuffle(order)
    rows: list[int] = []
    pivots: list[tuple[int, int]] = []
    for i in order:
        r = gens[i]
        for pbit, j in pivots:
            if r & pbit:
                r ^= rows[j]
        if r == 0:
            continue
        support = indices_from_mask(r)
        pbit = 1 << support[rng.randrange(len(support))]
        for j in range(len(rows)):
            if rows[j] & pbit:
                rows[j] ^= r
        rows.append(r)
        pivots.append((pbit, len(rows) - 1))
    return rows


def _estimate_trial(args: tuple) -> tuple[Optional[int], int]:
    """One randomized trial; deterministic in (seed, trial) alone."""
    gens, quotient_masks, seed, trial, depth = args
    rng = random.Random(derive_seed(seed, f"distance-trial:{trial}"))
    excluded = RowBasis(quotient_masks)
    rows = _randomized_reduced_rows(gens, rng)
    m = len(rows)
    best_w: Optional[int] = None
    best_mask = 0
    for r in range(1, min(depth, m) + 1):
        for combo in combinations(range(m), r):
            v = 0
            for i in combo:
                v ^= rows[i]
            w = v.bit_count()
            if (best_w is None or w < best_w) and not excluded.contains(v):
                best_w = w
                best_mask = v
    return best_w, best_mask


def _worker_count() -> int:
    raw = os.environ.get("QWR_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _one_side_estimate(
    code: CssCode, side: str, trials: int, depth: int, seed: int
) -> DistanceResult:
    gens, excluded = _logical_generators(code, side)
    if len(gens) == excluded.rank:
        return DistanceResult(None, "infinite", None, side)
    quotient_masks = _side_matrices(code, side)[1].row_masks()
    jobs = [(gens, quotient_masks, seed, f"{side}:{t}", depth) for t in range(trials)]
    workers = _worker_count()
    if workers > 1 and trials > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_estimate_trial, jobs))
    else:
        outcomes = [_estimate_trial(job) for job in jobs]
    best_w: Optional[int] = None
    best_mask = 0
    for w, mask in outcomes:
        if w is not None and (best_w is None or w < best_w):
            best_w, best_mask = w, mask
    if best_w is None:
        # every trial landed inside the excluded space; fall back to any
        # coset representative so the caller still gets an upper bound
        for g in gens:
            if not excluded.contains(g):
                best_w, best_mask = g.bit_count(), g
                break
    return DistanceResult(best_w, "estimate", indices_from_mask(best_mask), side)


def distance_estimate(
    code: CssCode,
    side: str = "both",
    trials: int = 32,
    depth: int = 2,
    seed: int = 0,
) -> DistanceResult:
    """Upper-bound the distance with randomized systematic sweeps.

    Each trial row-reduces the logical generators against a random pivot
    set and scans all combinations of up to depth rows.  Trials are seeded
    independently from (seed, trial index), so the result does not depend
    on how trials are scheduled; set QWR_THREADS to run them in a process
    pool.  The reported value is the weight of a real operator, hence an
    upper bound on the true distance.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if depth < 1:
        raise ValueError("depth must be at least 1")
    if side in ("x", "z"):
        return _one_side_estimate(code, side, trials, depth, seed)
    if side != "both":
        raise ValueError(f"side must be 'x', 'z', or 'both', got {side!r}")
    return _combine(
        _one_side_estimate(code, "z", trials, depth, seed),
        _one_side_estimate(code, "x", trials, depth, seed),
    )


# ---------------------------------------------------------------------------
# graphs and expansion


@dataclass(frozen=True)
class Graph:
    """Undirected multigraph on vertices 0..num_vertices-1.

    Parallel edges are kept and count separately in every cut.  Self loops
    are allowed but never cross a cut.
    """

    num_vertices: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for a, b in self.edges:
            if not (0 <= a < self.num_vertices and 0 <= b < self.num_vertices):
                raise IndexOutOfRange(
                    f"edge ({a}, {b}) outside 0..{self.num_vertices - 1}"
                )

    @classmethod
    def from_edges(cls, num_vertices: int, edges) -> "Graph":
        return cls(num_vertices, tuple((int(a), int(b)) for a, b in edges))

    def adjacency(self) -> list[dict[int, int]]:
        """Neighbor multiplicity maps, self loops excluded."""
        adj: list[dict[int, int]] = [dict() for _ in range(self.num_vertices)]
        for a, b in self.edges:
            if a == b:
                continue
            adj[a][b] = adj[a].get(b, 0) + 1
            adj[b][a] = adj[b].get(a, 0) + 1
        return adj

    def components(self) -> list[tuple[int, ...]]:
        parent = list(range(self.num_vertices))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.edges:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
        groups: dict[int, list[int]] = {}
        for v in range(self.num_vertices):
            groups.setdefault(find(v), []).append(v)
        return sorted((tuple(sorted(g)) for g in groups.values()), key=lambda g: g[0])

    def induced(self, vertices: Sequence[int]) -> tuple["Graph", tuple[int, ...]]:
        """Subgraph on the given vertices plus the relabeling back to self."""
        keep = tuple(sorted(set(vertices)))
        index = {v: i for i, v in enumerate(keep)}
        edges = tuple(
            (index[a], index[b]) for a, b in self.edges if a in index and b in index
        )
        return Graph(len(keep), edges), keep


@dataclass(frozen=True)
class ExpansionResult:
    """value is exact when the subset search was exhaustive; otherwise it is
    the spectral floor (half the second Laplacian eigenvalue) and exact is
    False.  witness is the minimizing vertex set when known."""

    value: float
    exact: bool
    witness: Optional[tuple[int, ...]] = None


def _exhaustive_cheeger(g: Graph) -> ExpansionResult:
    """Gray-code sweep over all vertex subsets of a connected graph."""
    n = g.num_vertices
    adj = g.adjacency()
    in_set = bytearray(n)
    cut = 0
    size = 0
    best_num = best_den = 0
    best_mask = 0
    mask = 0
    half = n // 2
    for i in range(1, 1 << n):
        v = (i & -i).bit_length() - 1
        to_set = sum(m for u, m in adj[v].items() if in_set[u])
        away = sum(adj[v].values()) - to_set
        if in_set[v]:
            cut += to_set - away
            size -= 1
            in_set[v] = 0
            mask ^= 1 << v
        else:
            cut += away - to_set
            size += 1
            in_set[v] = 1
            mask ^= 1 << v
        if 1 <= size <= half:
            if best_den == 0 or cut * best_den < best_num * size:
                best_num, best_den, best_mask = cut, size, mask
    return ExpansionResult(best_num / best_den, True, indices_from_mask(best_mask))


def _spectral_floor(g: Graph) -> float:
    """Half the algebraic connectivity; a lower bound on the constant."""
    n = g.num_vertices
    lap = np.zeros((n, n))
    for a, b in g.edges:
        if a == b:
            continue
        lap[a, a] += 1
        lap[b, b] += 1
        lap[a, b] -= 1
        lap[b, a] -= 1
    eigs = np.linalg.eigvalsh(lap)
    return float(eigs[1]) / 2.0


def cheeger(g: Graph, exact_limit: int = 20) -> ExpansionResult:
    """Edge expansion min over subsets S, |S| <= n/2, of cut(S) / |S|.

    Exhaustive and exact up to exact_limit vertices; larger connected
    graphs fall back to the spectral floor with exact=False.  Disconnected
    graphs have constant 0.
    """
    n = g.num_vertices
    if n <= 1:
        return ExpansionResult(math.inf, True, None)
    comps = g.components()
    if len(comps) > 1:
        smallest = min(comps, key=len)
        return ExpansionResult(0.0, True, smallest)
    if n <= exact_limit:
        return _exhaustive_cheeger(g)
    return ExpansionResult(_spectral_floor(g), False, None)


def soundness(g: Graph, exact_limit: int = 20) -> ExpansionResult:
    """Expansion modulo component flips.

    Minimum over vertex sets S outside the span of component indicators of
    cut(S) divided by the flip distance min over indicator combinations c
    of |S xor c|.  The per-component choice in the denominator separates,
    so the minimum equals the smallest Cheeger constant among the
    components; components contribute independently and single vertices
    contribute nothing.
    """
    best: Optional[ExpansionResult] = None
    for comp in g.components():
        if len(comp) < 2:
            continue
        sub, labels = g.induced(comp)
        res = cheeger(sub, exact_limit=exact_limit)
        if best is None or res.value < best.value:
            witness = (
                tuple(labels[v] for v in res.witness) if res.witness is not None else None
            )
            best = ExpansionResult(res.value, res.exact, witness)
    if best is None:
        return ExpansionResult(math.inf, True, None)
    return best


# ---------------------------------------------------------------------------
# homology


def homology_ranks(cx: ChainComplex) -> tuple[int, ...]:
    """Dimension of homology at each grade, lowest grade first."""
    from .f2 import rank as f2_rank

    top = len(cx.dims) - 1
    out_ranks = [0] * len(cx.dims)
    in_ranks = [0] * len(cx.dims)
    for j, b in enumerate(cx.boundaries):
        r = f2_rank(b)
        in_ranks[j] = r
        out_ranks[j + 1] = r
    ranks = tuple(
        cx.dims[j] - out_ranks[j] - in_ranks[j] for j in range(top + 1)
    )
    euler_cells = sum((-1) ** j * cx.dims[j] for j in range(top + 1))
    euler_homology = sum((-1) ** j * ranks[j] for j in range(top + 1))
    assert euler_cells == euler_homology
    return ranks
