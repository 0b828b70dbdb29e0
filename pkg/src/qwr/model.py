"""CSS codes as graded GF(2) complexes, with structural predicates.

A code is the pair of check matrices (X rows, Z rows) over n qubits. The
chain-complex view puts Z-checks at grade 2, qubits at grade 1 and X-checks
at grade 0, so commutation is exactly "boundary composed twice is zero".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence

from .errors import CommutationViolation, DimensionMismatch, NotReasonable
from .f2 import RowBasis, SparseBitMatrix, mat_mul, rank, row_space_equal


@dataclass(frozen=True)
class CssCode:
    """A CSS code: qubit count and the X/Z check matrices.

    Rows are stabilizer generators; dependent rows are deliberately kept,
    redundancy is meaningful to several transformations.
    """

    n: int
    x_stabs: SparseBitMatrix
    z_stabs: SparseBitMatrix
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.x_stabs.cols != self.n or self.z_stabs.cols != self.n:
            raise DimensionMismatch(
                f"check matrices must have {self.n} columns "
                f"(got {self.x_stabs.cols} and {self.z_stabs.cols})"
            )

    @classmethod
    def from_support_lists(
        cls,
        n: int,
        hx: Sequence[Sequence[int]],
        hz: Sequence[Sequence[int]],
        meta: Optional[dict] = None,
    ) -> "CssCode":
        return cls(
            n,
            SparseBitMatrix.from_rows(hx, n),
            SparseBitMatrix.from_rows(hz, n),
            dict(meta or {}),
        )

    @property
    def num_x_stabs(self) -> int:
        return self.x_stabs.rows

    @property
    def num_z_stabs(self) -> int:
        return self.z_stabs.rows


@dataclass(frozen=True)
class CodeParams:
    """Measured parameters of a code. Weights/degrees are maxima."""

    n: int
    k: int
    num_x_stabs: int
    num_z_stabs: int
    rank_x: int
    rank_z: int
    w_x: int
    w_z: int
    q_x: int
    q_z: int

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "num_x_stabs": self.num_x_stabs,
            "num_z_stabs": self.num_z_stabs,
            "rank_x": self.rank_x,
            "rank_z": self.rank_z,
            "w_x": self.w_x,
            "w_z": self.w_z,
            "q_x": self.q_x,
            "q_z": self.q_z,
        }


def validate(code: CssCode, max_reported_pairs: int = 20) -> CodeParams:
    """Check X/Z commutation and return measured parameters.

    Raises CommutationViolation listing the offending (x_row, z_row) pairs.
    """
    x_masks = code.x_stabs.row_masks()
    z_masks = code.z_stabs.row_masks()
    bad: list[tuple[int, int]] = []
    for i, xm in enumerate(x_masks):
        for j, zm in enumerate(z_masks):
            if (xm & zm).bit_count() & 1:
                bad.append((i, j))
                if len(bad) >= max_reported_pairs:
                    break
        if len(bad) >= max_reported_pairs:
            break
    if bad:
        raise CommutationViolation(
            f"{len(bad)}+ anticommuting X/Z row pairs", pairs=bad
        )
    rank_x = rank(code.x_stabs)
    rank_z = rank(code.z_stabs)
    return CodeParams(
        n=code.n,
        k=code.n - rank_x - rank_z,
        num_x_stabs=code.num_x_stabs,
        num_z_stabs=code.num_z_stabs,
        rank_x=rank_x,
        rank_z=rank_z,
        w_x=code.x_stabs.max_row_weight(),
        w_z=code.z_stabs.max_row_weight(),
        q_x=code.x_stabs.max_column_weight(),
        q_z=code.z_stabs.max_column_weight(),
    )


def encoded_dimension(code: CssCode) -> int:
    return code.n - rank(code.x_stabs) - rank(code.z_stabs)


# --- chain complex view -----------------------------------------------------


@dataclass(frozen=True)
class ChainComplex:
    """Graded GF(2) complex. boundaries[j] maps grade j+1 to grade j."""

    dims: tuple[int, ...]
    boundaries: tuple[SparseBitMatrix, ...]

    def __post_init__(self):
        if len(self.boundaries) != max(len(self.dims) - 1, 0):
            raise DimensionMismatch("need one boundary map per adjacent grade pair")
        for j, b in enumerate(self.boundaries):
            if b.rows != self.dims[j] or b.cols != self.dims[j + 1]:
                raise DimensionMismatch(
                    f"boundary {j} is {b.rows}x{b.cols}, expected "
                    f"{self.dims[j]}x{self.dims[j + 1]}"
                )

    def check_composition(self) -> None:
        for j in range(len(self.boundaries) - 1):
            prod = mat_mul(self.boundaries[j], self.boundaries[j + 1])
            if any(prod.row_supports):
                raise CommutationViolation(
                    f"boundary composition at grades {j + 2}->{j} is nonzero"
                )


def code_to_complex(code: CssCode) -> ChainComplex:
    """Grades: 0 = X-checks, 1 = qubits, 2 = Z-checks."""
    return ChainComplex(
        dims=(code.num_x_stabs, code.n, code.num_z_stabs),
        boundaries=(code.x_stabs, code.z_stabs.transpose()),
    )


def complex_to_code(cx: ChainComplex, meta: Optional[dict] = None) -> CssCode:
    if len(cx.dims) != 3:
        raise DimensionMismatch("a CSS code needs exactly grades 0, 1, 2")
    return CssCode(
        cx.dims[1], cx.boundaries[0], cx.boundaries[1].transpose(), dict(meta or {})
    )


# --- support graphs and reasonableness --------------------------------------


@dataclass(frozen=True)
class SupportGraph:
    """Bipartite incidence graph of one Z-check's support.

    Left vertices are the support qubits, right vertices the X-checks
    touching that support; edges are the qubit/check incidences.
    """

    z_index: int
    left: tuple[int, ...]
    right: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    def components(self) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
        """Connected components as (qubits, x_checks), ordered by least qubit."""
        parent: dict = {("q", q): ("q", q) for q in self.left}
        parent.update({("s", s): ("s", s) for s in self.right})

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for q, s in self.edges:
            ra, rb = find(("q", q)), find(("s", s))
            if ra != rb:
                parent[ra] = rb
        groups: dict = {}
        for node in parent:
            groups.setdefault(find(node), []).append(node)
        comps = []
        for members in groups.values():
            qs = tuple(sorted(m[1] for m in members if m[0] == "q"))
            ss = tuple(sorted(m[1] for m in members if m[0] == "s"))
            if qs or ss:
                comps.append((qs, ss))
        comps.sort(key=lambda c: c[0][0] if c[0] else -1)
        return comps

    @property
    def is_connected(self) -> bool:
        return len(self.components()) <= 1


def support_graph(code: CssCode, z_index: int) -> SupportGraph:
    supp = code.z_stabs.row_supports[z_index]
    supp_set = set(supp)
    right = []
    edges = []
    for s, x_sup in enumerate(code.x_stabs.row_supports):
        hit = [q for q in x_sup if q in supp_set]
        if hit:
            right.append(s)
            edges.extend((q, s) for q in hit)
    return SupportGraph(z_index, tuple(supp), tuple(right), tuple(edges))


class ReasonablenessReport(NamedTuple):
    ok: bool
    witness: Optional[tuple[int, tuple[int, ...]]]  # (z_index, component qubits)


def is_reasonable(code: CssCode) -> ReasonablenessReport:
    """Every component product of every Z-check support must be a Z-stabilizer.

    Components of a connected support are the whole support, whose product
    is the check itself; only multi-component checks can fail.
    """
    z_basis = RowBasis(code.z_stabs.row_masks())
    for zi in range(code.num_z_stabs):
        graph = support_graph(code, zi)
        comps = graph.components()
        if len(comps) <= 1:
            continue
        for qubits, _ in comps:
            mask = 0
            for q in qubits:
                mask |= 1 << q
            if not z_basis.contains(mask):
                return ReasonablenessReport(False, (zi, qubits))
    return ReasonablenessReport(True, None)


def is_connected_code(code: CssCode) -> bool:
    return all(
        support_graph(code, zi).is_connected for zi in range(code.num_z_stabs)
    )


def make_connected(code: CssCode) -> CssCode:
    """Split every disconnected Z-check into its per-component products.

    Requires a reasonable code; the stabilizer group is unchanged (verified)
    and no Z weight or qubit Z-degree increases.
    """
    report = is_reasonable(code)
    if not report.ok:
        raise NotReasonable(
            "component product is not a stabilizer", witness=report.witness
        )
    new_rows: list[tuple[int, ...]] = []
    for zi, sup in enumerate(code.z_stabs.row_supports):
        comps = support_graph(code, zi).components()
        if len(comps) <= 1:
            new_rows.append(sup)
        else:
            new_rows.extend(qubits for qubits, _ in comps)
    new_z = SparseBitMatrix(len(new_rows), code.n, tuple(new_rows))
    if not row_space_equal(new_z, code.z_stabs):
        raise NotReasonable("component split changed the stabilizer group")
    return CssCode(code.n, code.x_stabs, new_z, dict(code.meta))
