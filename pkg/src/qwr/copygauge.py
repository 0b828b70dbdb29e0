"""X-side weight reduction: copying qubits and splitting X-checks into chains.

Every qubit is replaced by one copy per unit of X-degree (the global maximum
is used uniformly), tied together by weight-2 X-type repetition checks. Each
X-check of weight d is then rewritten as a chain of d checks, each acting on
at most one copied qubit and at most two of d-1 fresh chain qubits. Copies
are assigned round robin so a copied qubit meets at most one chain check,
hence at most three checks total.

Z-checks are rebuilt in two steps: act on every copy of each original
support qubit, then multiply by correction strings of chain qubits so the
result commutes with every chain check. For each X-check sharing support
with the Z-check, the crossing positions along the chain are paired
consecutively and each pair contributes the string of chain qubits between
its two positions.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CommutationViolation
from .f2 import SparseBitMatrix
from .model import CssCode, encoded_dimension, validate
from .report import BoundCheck, TransformReport, require_bounds

__all__ = ["XReductionPlan", "x_reduce"]


@dataclass(frozen=True)
class XReductionPlan:
    """Labeling of the output of :func:`x_reduce`.

    ``stab_qubits[s]`` is the sorted support of input X-check ``s`` and
    ``copy_index[s][k]`` the copy used by its k-th chain check, so output
    qubit ``copied_qubit(q, j)`` carries copy ``j`` of input qubit ``q``.
    Chain qubits for check ``s`` occupy a contiguous block starting at
    ``chain_base[s]``.
    """

    copies: int
    num_qubits_in: int
    stab_qubits: tuple
    copy_index: tuple
    chain_base: tuple
    x_row_labels: tuple

    def copied_qubit(self, q: int, j: int) -> int:
        if not 0 <= j < self.copies:
            raise ValueError(f"copy index {j} out of range 0..{self.copies - 1}")
        return q * self.copies + j

    def chain_qubits(self, s: int) -> tuple:
        d = len(self.stab_qubits[s])
        base = self.chain_base[s]
        return tuple(range(base, base + max(0, d - 1)))


def x_reduce(code: CssCode) -> tuple:
    """Return (reduced code, plan, report) with X-weights and degrees <= 3."""

    before = validate(code)
    if before.q_x < 1:
        raise ValueError("x_reduce needs at least one X-check touching a qubit")
    copies = before.q_x
    n_in = code.n
    x_rows = [list(sup) for sup in code.x_stabs.row_supports]

    # Round robin: the i-th X-check containing q (row order) uses copy i.
    copy_of = {}
    used = [0] * n_in
    for s, row in enumerate(x_rows):
        for q in row:
            copy_of[(s, q)] = used[q]
            used[q] += 1
    assert max(used, default=0) <= copies

    chain_base = []
    next_qubit = n_in * copies
    for row in x_rows:
        chain_base.append(next_qubit)
        next_qubit += max(0, len(row) - 1)
    n_out = next_qubit

    out_x = []
    labels = []
    for q in range(n_in):
        for j in range(copies - 1):
            out_x.append({q * copies + j, q * copies + j + 1})
            labels.append(("rep", q, j))
    copy_index = []
    for s, row in enumerate(x_rows):
        copy_index.append(tuple(copy_of[(s, q)] for q in row))
        d = len(row)
        base = chain_base[s]
        for k in range(d):
            support = {row[k] * copies + copy_of[(s, row[k])]}
            if k > 0:
                support.add(base + k - 1)
            if k < d - 1:
                support.add(base + k)
            out_x.append(support)
            labels.append(("chain", s, k))

    out_z = []
    for z_row in code.z_stabs.row_masks():
        mask = 0
        for q in range(n_in):
            if (z_row >> q) & 1:
                for j in range(copies):
                    mask ^= 1 << (q * copies + j)
        for s, row in enumerate(x_rows):
            crossings = [k for k, q in enumerate(row) if (z_row >> q) & 1]
            # Even by commutation of the validated input.
            assert len(crossings) % 2 == 0
            base = chain_base[s]
            for idx in range(0, len(crossings), 2):
                a, b = crossings[idx], crossings[idx + 1]
                for t in range(a, b):
                    mask ^= 1 << (base + t)
        out_z.append(mask)

    reduced = CssCode(
        n_out,
        SparseBitMatrix.from_rows([sorted(r) for r in out_x], n_out),
        SparseBitMatrix.from_masks(out_z, n_out),
        meta={"transform": "copy-gauge", "copies": copies},
    )
    try:
        after = validate(reduced)
    except CommutationViolation as exc:
        raise CommutationViolation(
            "copy-gauge produced a non-commuting code (implementation bug): "
            + str(exc),
            **exc.details,
        ) from exc

    k_in = encoded_dimension(code)
    k_out = encoded_dimension(reduced)
    qz_cap = max(before.q_z, before.w_x * before.q_z)
    wz_cap = before.w_z * before.q_x * (1 + before.w_x)
    wz_cap_alt = before.q_z * before.q_x * (1 + before.w_x)
    checks = (
        BoundCheck("k_out == k_in", k_out == k_in, k_out, k_in),
        BoundCheck("w_x_out <= 3", after.w_x <= 3, after.w_x, 3),
        BoundCheck("q_x_out <= 3", after.q_x <= 3, after.q_x, 3),
        BoundCheck("q_z_out <= max(q_z_in, w_x_in*q_z_in)", after.q_z <= qz_cap, after.q_z, qz_cap),
        BoundCheck("w_z_out <= w_z_in*q_x_in*(1+w_x_in)", after.w_z <= wz_cap, after.w_z, wz_cap),
        BoundCheck(
            "w_z_out <= q_z_in*q_x_in*(1+w_x_in)",
            after.w_z <= wz_cap_alt,
            after.w_z,
            wz_cap_alt,
            required=False,
        ),
    )
    plan = XReductionPlan(
        copies=copies,
        num_qubits_in=n_in,
        stab_qubits=tuple(tuple(r) for r in x_rows),
        copy_index=tuple(copy_index),
        chain_base=tuple(chain_base),
        x_row_labels=tuple(labels),
    )
    report = TransformReport(
        step="copy-gauge",
        config={"copies": copies},
        params_before=before,
        params_after=after,
        bound_checks=checks,
        notes={
            "n_out": n_out,
            "n_formula": n_in * copies + sum(max(0, len(r) - 1) for r in x_rows),
        },
    )
    require_bounds(report)
    return reduced, plan, report
