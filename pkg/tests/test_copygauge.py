"""Copying + gauging: forced small examples, rank oracles, distance bounds."""

import random

import pytest

from qwr.copygauge import XReductionPlan, x_reduce
from qwr.f2 import SparseBitMatrix, kernel_basis
from qwr.fixtures import steane, toric
from qwr.metrics import distance_exact
from qwr.model import CssCode, encoded_dimension, validate


def random_commuting_code(rng, n_lo=4, n_hi=9):
    """Hx rows drawn from ker(Hz) so the pair commutes by construction."""
    while True:
        n = rng.randrange(n_lo, n_hi)
        hz_rows = [
            sorted(rng.sample(range(n), rng.randrange(1, 4)))
            for _ in range(rng.randrange(1, 4))
        ]
        hz = SparseBitMatrix.from_rows(hz_rows, n)
        kb = [v.to_mask() for v in kernel_basis(hz)]
        if not kb:
            continue
        hx_masks = []
        for _ in range(rng.randrange(1, 4)):
            v = 0
            for g in kb:
                if rng.random() < 0.5:
                    v ^= g
            if v:
                hx_masks.append(v)
        if not hx_masks:
            continue
        hx = SparseBitMatrix.from_masks(hx_masks, n)
        return CssCode(n, hx, hz)


def chain_rows(code, plan):
    labels = plan.x_row_labels
    return [
        (lab, sup)
        for lab, sup in zip(labels, code.x_stabs.row_supports)
        if lab[0] == "chain"
    ]


def test_single_weight4_stabilizer_counts():
    # One X-check on four qubits, degree 1: four copied plus three chain
    # qubits, four chain checks of weights 2,3,3,2 and no repetition checks.
    code = CssCode.from_support_lists(4, [[0, 1, 2, 3]], [])
    out, plan, report = x_reduce(code)
    assert plan.copies == 1
    assert out.n == 7
    assert out.num_x_stabs == 4
    assert sorted(len(s) for s in out.x_stabs.row_supports) == [2, 2, 3, 3]
    assert [set(s) for s in out.x_stabs.row_supports] == [
        {0, 4},
        {1, 4, 5},
        {2, 5, 6},
        {3, 6},
    ]
    assert all(lab[0] == "chain" for lab in plan.x_row_labels)
    assert report.check("k_out == k_in").satisfied


def test_plan_navigation():
    code = CssCode.from_support_lists(4, [[0, 1, 2, 3]], [])
    _, plan, _ = x_reduce(code)
    assert plan.stab_qubits == ((0, 1, 2, 3),)
    assert plan.copy_index == ((0, 0, 0, 0),)
    assert plan.chain_qubits(0) == (4, 5, 6)
    assert plan.copied_qubit(2, 0) == 2
    with pytest.raises(ValueError):
        plan.copied_qubit(0, 1)


def test_z_rebuild_single_string():
    # Z on {0,1} crosses the chain at positions 0 and 1; the correction
    # string is the single chain qubit between them.
    code = CssCode.from_support_lists(4, [[0, 1, 2, 3]], [[0, 1]])
    out, plan, _ = x_reduce(code)
    assert out.z_stabs.row_supports == ((0, 1, 4),)
    validate(out)


def test_z_rebuild_two_pairs():
    # Crossings at chain positions 0,1,2,3 pair as (0,1) and (2,3): strings
    # {chain 0} and {chain 2}.
    code = CssCode.from_support_lists(4, [[0, 1, 2, 3]], [[0, 1, 2, 3]])
    out, _, _ = x_reduce(code)
    assert out.z_stabs.row_supports == ((0, 1, 2, 3, 4, 6),)


def test_steane_bounds_and_k():
    code = steane()
    out, plan, report = x_reduce(code)
    params = validate(out)
    assert encoded_dimension(out) == 1
    assert params.w_x <= 3 and params.q_x <= 3
    assert plan.copies == 3
    # 7*3 copied + 9 per-check chain qubits (weight-4 checks)
    assert out.n == 21 + 3 * 3
    assert report.check("w_x_out <= 3").satisfied
    assert report.check("q_x_out <= 3").satisfied


def test_copied_qubit_in_at_most_one_chain_check():
    rng = random.Random(7)
    for _ in range(10):
        code = random_commuting_code(rng)
        out, plan, _ = x_reduce(code)
        seen = {}
        for lab, sup in chain_rows(out, plan):
            for q in sup:
                if q < plan.num_qubits_in * plan.copies:
                    seen[q] = seen.get(q, 0) + 1
        assert all(c == 1 for c in seen.values())


def test_random_codes_preserve_k_and_commute():
    rng = random.Random(19)
    for _ in range(10):
        code = random_commuting_code(rng)
        out, _, report = x_reduce(code)
        validate(out)
        assert encoded_dimension(out) == encoded_dimension(code)
        assert all(c.satisfied for c in report.bound_checks if c.required)


def test_toric_distance_bounds():
    code = toric(3)
    # d_z = d_x = 3, w_x = 4, q_x = 2 on the input.
    out, _, _ = x_reduce(code)
    dz = distance_exact(out, side="z")
    assert dz.method == "exact"
    assert dz.value >= 3 * 2
    dx = distance_exact(out, side="x")
    assert dx.method == "exact"
    # proof's explicit constant: at least d_x / w_x
    assert dx.value >= (3 + 4 - 1) // 4


def test_degenerate_no_x_support_rejected():
    code = CssCode.from_support_lists(3, [[]], [[0]])
    with pytest.raises(ValueError):
        x_reduce(code)
