"""Connecting and expander augmentation."""

import pytest

from qwr.cone import build_b_complex, with_cycle_redundancies
from qwr.errors import AugmentationFailed, NotReasonable
from qwr.fixtures import punctured_sphere, steane, toric
from qwr.metrics import cheeger, distance_exact, soundness
from qwr.model import CssCode, encoded_dimension, is_reasonable, support_graph
from qwr.robustify import (
    ConnectPlan,
    augment_b_complex,
    connect,
    improve_soundness,
)


# ---------------------------------------------------------------------------
# connect


def test_connect_reasonable_is_identity():
    code = toric(3)
    out, plan, report = connect(code)
    assert out is code
    assert plan.entries == ()
    assert report.notes["reasonable"] is True


def test_connect_two_qubit_bare_pair():
    code = CssCode.from_support_lists(2, [], [[0, 1]])
    assert not is_reasonable(code).ok
    out, plan, report = connect(code)
    assert out.n == 3
    assert plan.entries == ((0, ((0, 1, 2),)),)
    assert out.z_stabs.row_supports == ((2,), (0, 1, 2))
    assert encoded_dimension(code) == encoded_dimension(out) == 1


def test_connect_three_components_bookkeeping():
    # one Z-check over three parts, each held together by its own X-check
    code = CssCode.from_support_lists(
        6, [[0, 1], [2, 3], [4, 5]], [[0, 1, 2, 3, 4, 5]]
    )
    assert not is_reasonable(code).ok
    out, plan, report = connect(code)
    assert plan.entries == ((0, ((0, 2, 6), (2, 4, 7))),)
    assert out.x_stabs.row_supports == ((0, 1, 6), (2, 3, 6, 7), (4, 5, 7))
    assert out.z_stabs.row_supports[0] == (1, 2, 3, 5, 6, 7)
    assert out.z_stabs.row_supports[1:] == ((0, 2, 6), (2, 4, 7))
    assert encoded_dimension(out) == encoded_dimension(code) == 2
    assert support_graph(out, 0).is_connected
    assert report.check("rewritten z rows each one component").satisfied


def pair_of_pants():
    """Punctured sphere with the two puncture boundaries merged into one
    generator of disconnected support."""
    base = punctured_sphere(3)
    loops = base.meta["puncture_loops"]
    product = sorted(set(loops[0]) ^ set(loops[1]))
    hz = [list(sup) for sup in base.z_stabs.row_supports[:-1]]
    hz.append(product)
    return CssCode.from_support_lists(base.n, base.x_stabs.row_supports, hz)


def test_connect_avoids_pair_of_pants():
    code = pair_of_pants()
    assert not is_reasonable(code).ok
    assert encoded_dimension(code) == 1
    out, plan, report = connect(code)
    assert out.n == code.n + 1
    assert encoded_dimension(out) == 1
    assert is_reasonable(out).ok
    ((zi, trips),) = plan.entries
    assert zi == code.num_z_stabs - 1 and len(trips) == 1


def test_connect_distance_degradation_stays_bounded():
    code = pair_of_pants()
    # the merged generator admits a weight-2 X logical entering one
    # puncture boundary and leaving the other
    assert distance_exact(code, side="z").value == 4
    assert distance_exact(code, side="x").value == 2
    out, _, _ = connect(code)
    assert distance_exact(out, side="x").value == 2
    assert distance_exact(out, side="z").value == 4


def test_connect_plan_validation():
    with pytest.raises(ValueError):
        ConnectPlan(((0, ()),))
    with pytest.raises(ValueError):
        ConnectPlan(((0, ((0, 1, 5), (2, 3, 6))),))  # reps do not chain
    with pytest.raises(ValueError):
        ConnectPlan(((0, ((0, 1, 5),)), (1, ((2, 3, 5),))))  # qubit reuse
    plan = ConnectPlan(((0, ((0, 1, 5), (1, 2, 6))),))
    assert plan.num_added == 2
    assert plan.as_dict()["entries"][0]["z_row"] == 0


# ---------------------------------------------------------------------------
# improve_soundness


def path_code(n):
    """X-checks form a path on the Z-check's support."""
    hx = [[i, i + 1] for i in range(n - 1)]
    return CssCode.from_support_lists(n, hx, [list(range(n))])


def test_improve_soundness_no_op_when_already_expanding():
    code = toric(3)
    q = tuple(code.z_stabs.row_supports[0])
    (g,), report = improve_soundness(code, [q], 1, seed=0)
    base = build_b_complex(code, q)[1]
    assert g.edges == base.edges
    assert report.notes["sets"][0]["added_edges"] == 0


def test_improve_soundness_path_graph():
    code = path_code(8)
    assert is_reasonable(code).ok
    q = tuple(range(8))
    before = cheeger(build_b_complex(code, q)[1])
    assert before.value < 0.5
    (g,), report = improve_soundness(code, [q], 0.5, seed=0)
    after = soundness(g)
    assert after.value >= 0.5 and after.exact
    assert report.notes["sets"][0]["degree_increase_max"] <= 3


def test_improve_soundness_singletons_and_disjoint_edges():
    hx = [[0, 1], [0, 1]]
    hz = [[0, 1, 2, 3], [0, 1], [2], [3]]
    code = CssCode.from_support_lists(4, hx, hz)
    assert is_reasonable(code).ok
    (g,), report = improve_soundness(code, [(0, 1, 2, 3)], 1, seed=0)
    assert len(g.edges) == 2  # the two parallel crossings, nothing added
    assert report.notes["sets"][0]["added_edges"] == 0


def test_improve_soundness_keeps_components_apart():
    hx = [[i, i + 1] for i in range(3)] + [[i, i + 1] for i in range(4, 7)]
    hz = [list(range(8)), [0, 1, 2, 3], [4, 5, 6, 7]]
    code = CssCode.from_support_lists(8, hx, hz)
    assert is_reasonable(code).ok
    (g,), _ = improve_soundness(code, [tuple(range(8))], 0.5, seed=3)
    for a, b in g.edges:
        assert (a < 4) == (b < 4)
    assert soundness(g).value >= 0.5


def test_improve_soundness_determinism():
    code = path_code(8)
    (g1,), _ = improve_soundness(code, [tuple(range(8))], 0.5, seed=7)
    (g2,), _ = improve_soundness(code, [tuple(range(8))], 0.5, seed=7)
    assert g1.edges == g2.edges


def test_improve_soundness_rejects_unreasonable():
    code = CssCode.from_support_lists(2, [], [[0, 1]])
    with pytest.raises(NotReasonable):
        improve_soundness(code, [(0, 1)], 0.5)


def test_improve_soundness_unreachable_target():
    code = path_code(4)
    with pytest.raises(AugmentationFailed) as err:
        improve_soundness(code, [(0, 1, 2, 3)], 100, seed=0, max_rounds=5)
    assert err.value.code == "augmentation-failed"
    assert err.value.best is not None and err.value.best > 0


def test_improve_soundness_validates_target():
    code = path_code(4)
    with pytest.raises(ValueError):
        improve_soundness(code, [(0, 1, 2, 3)], 0)


# ---------------------------------------------------------------------------
# adopting augmented graphs


def test_augment_b_complex_adds_unchecked_cells():
    code = path_code(8)
    q = tuple(range(8))
    bc, g = build_b_complex(code, q)
    (aug,), _ = improve_soundness(code, [q], 0.5, seed=0)
    bc2 = augment_b_complex(bc, aug)
    extra = bc2.zero_cells[len(bc.zero_cells) :]
    assert len(extra) == len(aug.edges) - len(g.edges) > 0
    assert all(stab is None for stab, _, _ in extra)
    full = with_cycle_redundancies(bc2)
    assert full.zeroth_homology_trivial()
    assert len(full.cycles) == len(aug.edges) - 7


def test_augment_b_complex_rejects_mismatch():
    code = path_code(8)
    bc, g = build_b_complex(code, (0, 1, 2, 3, 4, 5, 6, 7))
    from qwr.metrics import Graph

    with pytest.raises(ValueError):
        augment_b_complex(bc, Graph(4, ()))
    shuffled = Graph(g.num_vertices, tuple(reversed(g.edges)))
    with pytest.raises(ValueError):
        augment_b_complex(bc, shuffled)
