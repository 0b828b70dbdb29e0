"""Coning: turn chosen Z-supports into induced stabilizers of a larger code.

Each chosen qubit set Q_i becomes a small complex B_i: its qubits are
1-cells, and every X-check crossing Q_i contributes one 0-cell per pair of
crossed qubits under a chosen pairing. Viewing 1-cells as vertices and
0-cells as edges gives a graph G_i; simple cycles of G_i are appended as
-1-cells so the complex has trivial zeroth homology. The cone of the
obvious map from these complexes into the base code is again a CSS code:
0-cells become new qubits, -1-cells become new X-checks, and each vertex
becomes a weight-(1+degree) Z-check tying the original qubit to its
incident new qubits.

The reduction step bounds the X-side of the result: big cycle checks are
cellulated into triangles and quads by chords between vertices j and w-j,
and a dual thickening assigns each disc a height so that no qubit meets two
added checks at the same height.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import HeightSearchFailed, NontrivialHomology, OddCrossingParity
from .f2 import RowBasis, SparseBitMatrix, mat_mul, rank
from .metrics import Graph
from .model import ChainComplex, CssCode, encoded_dimension, validate
from .report import BoundCheck, TransformReport, require_bounds
from .seeds import derive_seed
from .thicken import HeightAssignment, dual, thicken

__all__ = [
    "ConeInput",
    "Pairing",
    "BComplex",
    "build_b_complex",
    "fix_pairing",
    "cycle_basis",
    "with_cycle_redundancies",
    "induced_code",
    "cone_code",
    "mapping_cone",
    "cellulate_cycle",
    "reduce_cone",
]


# ---------------------------------------------------------------------------
# types


@dataclass(frozen=True)
class ConeInput:
    """Base code, Z-checks kept verbatim, and the qubit sets to induce."""

    base: CssCode
    direct_z: tuple
    q_sets: tuple

    def __post_init__(self):
        seen = set()
        for j in self.direct_z:
            if not 0 <= j < self.base.num_z_stabs or j in seen:
                raise ValueError(f"bad direct Z-check index {j}")
            seen.add(j)
        for qs in self.q_sets:
            if tuple(sorted(set(qs))) != tuple(qs):
                raise ValueError("q_sets entries must be sorted and duplicate-free")
            for q in qs:
                if not 0 <= q < self.base.n:
                    raise ValueError(f"qubit {q} out of range")

    @classmethod
    def build(cls, base: CssCode, direct_z, q_sets) -> "ConeInput":
        return cls(
            base,
            tuple(sorted(set(direct_z))),
            tuple(tuple(sorted(set(qs))) for qs in q_sets),
        )


@dataclass(frozen=True)
class Pairing:
    """Per crossing X-check: a partition of its crossed qubits into pairs."""

    pairs: tuple  # ((stab, ((a, b), ...)), ...)

    def __post_init__(self):
        last = -1
        for stab, ps in self.pairs:
            if stab <= last:
                raise ValueError("stabilizer entries must be strictly ascending")
            last = stab
            used = set()
            for a, b in ps:
                if a >= b or a in used or b in used:
                    raise ValueError(f"invalid pair ({a}, {b}) for check {stab}")
                used.update((a, b))

    @classmethod
    def build(cls, mapping: dict) -> "Pairing":
        entries = []
        for stab in sorted(mapping):
            ps = sorted(tuple(sorted(p)) for p in mapping[stab])
            entries.append((stab, tuple(ps)))
        return cls(tuple(entries))

    def as_dict(self) -> dict:
        return {stab: [list(p) for p in ps] for stab, ps in self.pairs}


@dataclass(frozen=True)
class BComplex:
    """Three layers: qubits (1-cells), pair tuples (0-cells), cycles (-1)."""

    qubits: tuple  # sorted qubit ids of Q_i
    zero_cells: tuple  # (crossing X-check id or None, qubit a, qubit b)
    cycles: tuple = ()  # tuples of zero-cell indices, in closed-walk order

    def __post_init__(self):
        qset = set(self.qubits)
        for stab, a, b in self.zero_cells:
            if a not in qset or b not in qset or a == b:
                raise ValueError(f"bad 0-cell ({stab}, {a}, {b})")
        for cyc in self.cycles:
            for c in cyc:
                if not 0 <= c < len(self.zero_cells):
                    raise ValueError(f"cycle references unknown 0-cell {c}")

    def graph(self) -> Graph:
        pos = {q: i for i, q in enumerate(self.qubits)}
        return Graph(
            len(self.qubits),
            tuple((pos[a], pos[b]) for _, a, b in self.zero_cells),
        )

    def boundary_one(self) -> SparseBitMatrix:
        """Map from 1-cells to 0-cells; rows are 0-cells."""
        pos = {q: i for i, q in enumerate(self.qubits)}
        return SparseBitMatrix.from_rows(
            [sorted((pos[a], pos[b])) for _, a, b in self.zero_cells],
            len(self.qubits),
        )

    def boundary_zero(self) -> SparseBitMatrix:
        """Map from 0-cells to -1-cells; rows are cycles."""
        return SparseBitMatrix.from_rows(
            [sorted(c) for c in self.cycles], len(self.zero_cells)
        )

    def zeroth_homology_trivial(self) -> bool:
        r1 = rank(self.boundary_one())
        r0 = rank(self.boundary_zero())
        return r1 == len(self.zero_cells) - r0


# ---------------------------------------------------------------------------
# complex construction


def _crossings(code: CssCode, q_set: tuple) -> dict:
    qs = set(q_set)
    out = {}
    for s, sup in enumerate(code.x_stabs.row_supports):
        hit = sorted(q for q in sup if q in qs)
        if hit:
            if len(hit) % 2:
                raise OddCrossingParity(
                    f"X-check {s} crosses the set in {len(hit)} qubits; "
                    "its Z-product anticommutes",
                    stabilizer=s,
                )
            out[s] = hit
    return out


def _support_components(crossings: dict, q_set: tuple) -> int:
    """Component count of the bipartite qubit/check incidence on the set."""
    parent = {q: q for q in q_set}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for hit in crossings.values():
        for q in hit[1:]:
            ra, rb = find(hit[0]), find(q)
            if ra != rb:
                parent[ra] = rb
    return len({find(q) for q in q_set})


def _pairing_components(pairing: Pairing, q_set: tuple) -> int:
    parent = {q: q for q in q_set}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for _, ps in pairing.pairs:
        for a, b in ps:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
    return len({find(q) for q in q_set})


def fix_pairing(code: CssCode, q_set, initial: Pairing) -> Pairing:
    """Re-pair crossings until the pairing graph has as few components as
    the qubit/check incidence graph allows. Only strictly improving swaps
    are applied, so the loop always terminates."""

    q = tuple(sorted(set(q_set)))
    crossings = _crossings(code, q)
    target = _support_components(crossings, q)
    current = {stab: [tuple(p) for p in ps] for stab, ps in initial.pairs}

    def count(mapping):
        return _pairing_components(Pairing.build(mapping), q)

    comps = count(current)
    improved = True
    while comps > target and improved:
        improved = False
        for stab in sorted(current):
            ps = current[stab]
            for i in range(len(ps)):
                for j in range(i + 1, len(ps)):
                    (a, b), (c, d) = ps[i], ps[j]
                    for left, right in (((a, c), (b, d)), ((a, d), (b, c))):
                        trial = {s: list(v) for s, v in current.items()}
                        trial[stab] = [
                            p for k, p in enumerate(ps) if k not in (i, j)
                        ] + [tuple(sorted(left)), tuple(sorted(right))]
                        c2 = count(trial)
                        if c2 < comps:
                            current = trial
                            comps = c2
                            improved = True
                            break
                    if improved:
                        break
                if improved:
                    break
            if improved:
                break
    return Pairing.build(current)


def build_b_complex(
    code: CssCode, q_set, pairing: Optional[Pairing] = None
) -> tuple:
    """Return (B_i without redundancies, its graph G_i)."""

    q = tuple(sorted(set(q_set)))
    crossings = _crossings(code, q)
    if pairing is None:
        # Scatter each check's crossings with a fixed per-check shuffle
        # before pairing; consecutive pairs of sorted crossings cluster
        # edges between nearby qubit indices, which starves expansion on
        # dense random supports. With two crossings both orders give the
        # same pair, so forced cases are untouched.
        mapping = {}
        for s, hit in crossings.items():
            order = list(hit)
            random.Random(derive_seed(0, f"pairing:{s}")).shuffle(order)
            mapping[s] = [
                tuple(sorted(order[i : i + 2])) for i in range(0, len(order), 2)
            ]
        initial = Pairing.build(mapping)
        pairing = fix_pairing(code, q, initial) if q else initial
    else:
        given = {stab: ps for stab, ps in pairing.pairs}
        if set(given) != set(crossings):
            raise ValueError("pairing must cover exactly the crossing X-checks")
        for s, hit in crossings.items():
            flat = sorted(x for p in given[s] for x in p)
            if flat != hit:
                raise ValueError(f"pairing for check {s} does not match crossings")
    cells = []
    for stab, ps in pairing.pairs:
        for a, b in ps:
            cells.append((stab, a, b))
    bc = BComplex(q, tuple(cells))
    return bc, bc.graph()


def _adjacency_with_edges(g: Graph):
    adj = [[] for _ in range(g.num_vertices)]
    for idx, (a, b) in enumerate(g.edges):
        if a == b:
            continue
        adj[a].append((b, idx))
        adj[b].append((a, idx))
    for lst in adj:
        lst.sort()
    return adj


def cycle_basis(g: Graph) -> tuple:
    """Fundamental cycles of a breadth-first forest, each a tuple of edge
    indices in closed-walk order starting with its non-tree edge."""

    adj = _adjacency_with_edges(g)
    parent = [None] * g.num_vertices  # (parent vertex, edge index)
    depth = [None] * g.num_vertices
    tree_edges = set()
    for root in range(g.num_vertices):
        if depth[root] is not None:
            continue
        depth[root] = 0
        queue = [root]
        while queue:
            u = queue.pop(0)
            for v, idx in adj[u]:
                if depth[v] is None:
                    depth[v] = depth[u] + 1
                    parent[v] = (u, idx)
                    tree_edges.add(idx)
                    queue.append(v)

    cycles = []
    for idx, (u, v) in enumerate(g.edges):
        if idx in tree_edges:
            continue
        if u == v:
            cycles.append((idx,))
            continue
        path_u, path_v = [], []
        a, b = u, v
        while depth[a] > depth[b]:
            pa, ea = parent[a]
            path_u.append(ea)
            a = pa
        while depth[b] > depth[a]:
            pb, eb = parent[b]
            path_v.append(eb)
            b = pb
        while a != b:
            pa, ea = parent[a]
            path_u.append(ea)
            a = pa
            pb, eb = parent[b]
            path_v.append(eb)
            b = pb
        # walk: chord u->v, then v up to the meeting point, then back to u
        cycles.append(tuple([idx] + path_v + list(reversed(path_u))))

    if cycles:
        basis = RowBasis()
        for cyc in cycles:
            mask = 0
            for e in cyc:
                mask ^= 1 << e
            added = basis.add(mask)
            assert added, "fundamental cycles must be independent"
    return tuple(cycles)


def with_cycle_redundancies(bc: BComplex, cycles: Optional[Sequence] = None) -> BComplex:
    """Attach -1-cells; defaults to the fundamental cycle basis of G_i."""

    if cycles is None:
        cycles = cycle_basis(bc.graph())
    return BComplex(bc.qubits, bc.zero_cells, tuple(tuple(c) for c in cycles))


# ---------------------------------------------------------------------------
# cone assembly


def induced_code(inp: ConeInput, complexes: Sequence[BComplex]) -> CssCode:
    """Direct Z-checks plus one component-product Z-check per G_i part."""

    base = inp.base
    z_rows = [list(base.z_stabs.row_supports[j]) for j in inp.direct_z]
    for bc in complexes:
        g = bc.graph()
        for comp in g.components():
            z_rows.append(sorted(bc.qubits[v] for v in comp))
    return CssCode(
        base.n,
        base.x_stabs,
        SparseBitMatrix.from_rows(z_rows, base.n),
        meta={"transform": "induced"},
    )


def _ordered_vertices(bc: BComplex, cycle: tuple) -> Optional[tuple]:
    """Vertex qubits along a simple closed walk; None if not walkable."""

    ends = [(bc.zero_cells[c][1], bc.zero_cells[c][2]) for c in cycle]
    if len(cycle) == 1:
        return None
    if len(cycle) == 2:
        if set(ends[0]) != set(ends[1]):
            return None
        return ends[0]
    first, second = set(ends[0]), set(ends[1])
    shared = first & second
    if len(shared) != 1:
        return None
    start = (first - shared).pop()
    verts = [start]
    cur = shared.pop()
    for e in ends[1:]:
        verts.append(cur)
        if cur not in e:
            return None
        nxt = e[0] if e[1] == cur else e[1]
        cur = nxt
    if cur != start or len(set(verts)) != len(verts):
        return None
    return tuple(verts)


def cone_code(
    inp: ConeInput,
    complexes: Sequence[BComplex],
    check_homology: bool = True,
) -> tuple:
    """Assemble the cone of the inclusion maps; returns (code, report).

    With check_homology disabled, complexes with nontrivial zeroth homology
    are accepted; the encoded dimension then need not match the induced
    code's and the corresponding check is recorded instead of enforced.
    """

    base = inp.base
    before = validate(base)
    if len(complexes) != len(inp.q_sets):
        raise ValueError("one complex per qubit set required")
    for bc, qs in zip(complexes, inp.q_sets):
        if bc.qubits != qs:
            raise ValueError("complex qubits do not match the declared set")
        for stab, a, b in bc.zero_cells:
            if stab is not None and not 0 <= stab < base.num_x_stabs:
                raise ValueError(f"0-cell references unknown X-check {stab}")
    if check_homology:
        for i, bc in enumerate(complexes):
            if not bc.zeroth_homology_trivial():
                raise NontrivialHomology(
                    f"complex {i} keeps zeroth homology; add cycle redundancies",
                    index=i,
                )

    n_base = base.n
    qubit_base = []
    n_out = n_base
    for bc in complexes:
        qubit_base.append(n_out)
        n_out += len(bc.zero_cells)

    x_rows = [set(sup) for sup in base.x_stabs.row_supports]
    for i, bc in enumerate(complexes):
        for c, (stab, _, _) in enumerate(bc.zero_cells):
            if stab is not None:
                x_rows[stab].add(qubit_base[i] + c)
    added_x = []
    discs = []
    for i, bc in enumerate(complexes):
        for cyc in bc.cycles:
            added_x.append((i, cyc))
    x_supports = [sorted(r) for r in x_rows]
    added_x_rows = []
    for i, cyc in added_x:
        row_id = len(x_supports)
        x_supports.append(sorted(qubit_base[i] + c for c in cyc))
        added_x_rows.append(row_id)

    z_rows = [list(base.z_stabs.row_supports[j]) for j in inp.direct_z]
    added_z_rows = []
    vertex_row_of = {}  # (set index, qubit) -> Z-row id
    for i, bc in enumerate(complexes):
        incid = {q: [] for q in bc.qubits}
        for c, (_, a, b) in enumerate(bc.zero_cells):
            incid[a].append(c)
            incid[b].append(c)
        for q in bc.qubits:
            row_id = len(z_rows)
            vertex_row_of[(i, q)] = row_id
            added_z_rows.append(row_id)
            z_rows.append(sorted([q] + [qubit_base[i] + c for c in incid[q]]))

    for (i, cyc), row_id in zip(added_x, added_x_rows):
        bc = complexes[i]
        verts = _ordered_vertices(bc, cyc)
        discs.append(
            {
                "x_row": row_id,
                "edge_qubits": [qubit_base[i] + c for c in cyc],
                "vertex_z_rows": (
                    [vertex_row_of[(i, q)] for q in verts] if verts else None
                ),
            }
        )

    structure = {
        "added_qubits": list(range(n_base, n_out)),
        "added_x_rows": added_x_rows,
        "added_z_rows": added_z_rows,
        "discs": discs,
    }
    out = CssCode(
        n_out,
        SparseBitMatrix.from_rows(x_supports, n_out),
        SparseBitMatrix.from_rows(z_rows, n_out),
        meta={"transform": "cone", "cone_structure": structure},
    )
    after = validate(out)

    induced = induced_code(inp, complexes)
    k_out = encoded_dimension(out)
    k_induced = encoded_dimension(induced)
    sum_q = sum(len(bc.qubits) for bc in complexes)
    denom = n_base + sum_q * max(1, before.q_x)
    checks = (
        BoundCheck(
            "k_out == k_induced",
            k_out == k_induced,
            k_out,
            k_induced,
            required=check_homology,
        ),
    )
    report = TransformReport(
        step="cone",
        config={
            "direct_z": list(inp.direct_z),
            "q_sets": [list(qs) for qs in inp.q_sets],
            "check_homology": check_homology,
        },
        params_before=before,
        params_after=after,
        bound_checks=checks,
        notes={
            "n_out": n_out,
            "n_over_base_plus_degree": round(n_out / denom, 4),
            "k_induced": k_induced,
        },
    )
    require_bounds(report)
    return out, report


def mapping_cone(a: ChainComplex, b: ChainComplex, f: Sequence[SparseBitMatrix]) -> ChainComplex:
    """General mapping cone of a chain map f: B -> A of equal-length
    complexes; grade j of the result is A_j plus B_{j-1}."""

    if len(a.dims) != len(b.dims):
        raise ValueError("complexes must have the same number of grades")
    k = len(a.dims)
    if len(f) != k:
        raise ValueError("one block of f per grade required")
    for j in range(k):
        if (f[j].rows, f[j].cols) != (a.dims[j], b.dims[j]):
            raise ValueError(f"f[{j}] must be {a.dims[j]} x {b.dims[j]}")
    for j in range(k - 1):
        left = mat_mul(a.boundaries[j], f[j + 1])
        right = mat_mul(f[j], b.boundaries[j])
        if left.row_masks() != right.row_masks():
            raise ValueError(f"f is not a chain map at grade {j + 1}")

    dims = tuple(
        (a.dims[j] if j < k else 0) + (b.dims[j - 1] if j >= 1 else 0)
        for j in range(k + 1)
    )
    boundaries = []
    for j in range(k):
        rows_a = a.dims[j]
        rows_b = b.dims[j - 1] if j >= 1 else 0
        cols_a = a.dims[j + 1] if j + 1 < k else 0
        cols_b = b.dims[j]
        sups = []
        for r in range(rows_a):
            sup = list(a.boundaries[j].row_supports[r]) if j < k - 1 else []
            sup.extend(cols_a + c for c in f[j].row_supports[r])
            sups.append(sorted(sup))
        for r in range(rows_b):
            sups.append(
                sorted(cols_a + c for c in b.boundaries[j - 1].row_supports[r])
            )
        boundaries.append(SparseBitMatrix.from_rows(sups, cols_a + cols_b))
    cone = ChainComplex(dims, tuple(boundaries))
    cone.check_composition()
    return cone


# ---------------------------------------------------------------------------
# reduction


def cellulate_cycle(w: int) -> tuple:
    """Chord cellulation of a disc over a length-w cycle.

    Vertices are positions 0..w-1, edge a joins vertices a and a+1 mod w.
    Chords join j and w-j for 0 < j < w-j; for odd w the innermost chord is
    dropped so the last face is a quad rather than a 2-gon. Returns
    (chords, faces): chords as vertex-position pairs, faces as (edge
    positions, chord indices). Every face has 3 or 4 sides.
    """

    if w < 2:
        raise ValueError("a disc needs a cycle of length >= 2")
    if w < 4:
        return (), ((tuple(range(w)), ()),)
    m = w // 2
    chords = tuple((j, w - j) for j in range(1, m))
    faces = []
    if w % 2 == 0:
        faces.append(((0, w - 1), (0,)))
        for j in range(1, m - 1):
            faces.append(((j, w - 1 - j), (j - 1, j)))
        faces.append(((m - 1, m), (m - 2,)))
    else:
        faces.append(((0, w - 1), (0,)))
        for j in range(1, m - 1):
            faces.append(((j, w - 1 - j), (j - 1, j)))
        faces.append(((m - 1, m, m + 1), (m - 2,)))
    return chords, tuple(faces)


def reduce_cone(
    cone: CssCode,
    structure: Optional[dict] = None,
    ell_prime: int = 1,
    seed: int = 0,
    threshold: int = 5,
    height_mode: str = "added",
) -> tuple:
    """Cellulate heavy added X-checks, then dual-thicken by ell_prime.

    Cellulation replaces each added check of weight above the threshold by
    triangle/quad faces over its cycle, with chord qubits joining opposite
    vertices. The dual thickening assigns one height per disc (greedy
    coloring of discs that share a qubit) so no qubit meets two added
    checks at a height; ell_prime=1 skips the thickening entirely.
    """

    if height_mode not in ("added", "all"):
        raise ValueError(f"unknown height_mode {height_mode!r}")
    if ell_prime < 1:
        raise ValueError("ell_prime must be >= 1")
    if structure is None:
        structure = cone.meta.get("cone_structure")
    if structure is None:
        raise ValueError("no cone structure available; pass one explicitly")
    before = validate(cone)
    k_in = encoded_dimension(cone)

    x_rows = [list(sup) for sup in cone.x_stabs.row_supports]
    z_rows = [list(sup) for sup in cone.z_stabs.row_supports]
    n_out = cone.n
    cellulated = 0
    kept_rows = set(range(len(x_rows)))
    face_groups = []  # per disc: list of face supports (new rows)
    plain_groups = []  # per disc kept whole: row id
    for disc in structure["discs"]:
        row_id = disc["x_row"]
        edges = disc["edge_qubits"]
        verts = disc.get("vertex_z_rows")
        w = len(edges)
        if w <= threshold or verts is None:
            plain_groups.append(row_id)
            continue
        chords, faces = cellulate_cycle(w)
        chord_qubits = []
        for (va, vb) in chords:
            q = n_out
            n_out += 1
            chord_qubits.append(q)
            z_rows[verts[va]].append(q)
            z_rows[verts[vb]].append(q)
        group = []
        for edge_pos, chord_idx in faces:
            sup = [edges[e] for e in edge_pos] + [chord_qubits[c] for c in chord_idx]
            group.append(sorted(sup))
        kept_rows.discard(row_id)
        face_groups.append(group)
        cellulated += 1

    new_x = [sorted(x_rows[r]) for r in range(len(x_rows)) if r in kept_rows]
    tracked_groups = []  # lists of row ids in the new indexing
    old_to_new = {}
    new_id = 0
    for r in range(len(x_rows)):
        if r in kept_rows:
            old_to_new[r] = new_id
            new_id += 1
    for row_id in plain_groups:
        tracked_groups.append([old_to_new[row_id]])
    for group in face_groups:
        ids = []
        for sup in group:
            ids.append(len(new_x))
            new_x.append(sup)
        tracked_groups.append(ids)

    celled = CssCode(
        n_out,
        SparseBitMatrix.from_rows(new_x, n_out),
        SparseBitMatrix.from_rows([sorted(r) for r in z_rows], n_out),
        meta={"transform": "cone-cellulated"},
    )
    validate(celled)

    notes = {"cellulated_discs": cellulated, "threshold": threshold}
    flipped = dual(celled)
    n_rows = flipped.num_z_stabs
    masks = flipped.z_stabs.row_masks()
    if height_mode == "all":
        groups = [[r] for r in range(n_rows)]
    else:
        groups = tracked_groups
    heights = [1] * n_rows
    placed = []  # (group mask, height)
    needed = 1
    for ids in groups:
        gmask = 0
        for r in ids:
            gmask |= masks[r]
        taken = {h for m, h in placed if m & gmask}
        h = 1
        while h in taken:
            h += 1
        needed = max(needed, h)
        placed.append((gmask, h))
        for r in ids:
            heights[r] = h
    notes["ell_prime_needed"] = needed
    if ell_prime == 1:
        out = celled
        notes["dual_thicken"] = "skipped (ell_prime=1)"
    else:
        if needed > ell_prime:
            raise HeightSearchFailed(
                f"disc heights need ell_prime >= {needed}, got {ell_prime}",
                suggested_ell_prime=needed,
            )
        thickened, _ = thicken(
            flipped, ell_prime, HeightAssignment(ell_prime, tuple(heights))
        )
        out = dual(thickened)
    out = CssCode(
        out.n,
        out.x_stabs,
        out.z_stabs,
        meta={"transform": "reduce-cone", "ell_prime": ell_prime},
    )
    after = validate(out)
    k_out = encoded_dimension(out)
    checks = (
        BoundCheck("k_out == k_in", k_out == k_in, k_out, k_in),
        BoundCheck(
            "cellulated face weight <= 5, no quad split needed",
            after.w_x <= max(before.w_x, 5) + (2 if ell_prime >= 3 else ell_prime - 1),
            after.w_x,
            max(before.w_x, 5) + (2 if ell_prime >= 3 else ell_prime - 1),
            required=False,
        ),
    )
    report = TransformReport(
        step="reduce-cone",
        config={
            "ell_prime": ell_prime,
            "threshold": threshold,
            "height_mode": height_mode,
        },
        seed=seed,
        params_before=before,
        params_after=after,
        bound_checks=checks,
        notes=notes,
    )
    require_bounds(report)
    return out, report
