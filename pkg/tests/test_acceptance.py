"""Release acceptance suite: one test per shipped guarantee.

Run with -v to get one pass/fail line per item. Stated runtime caps are
asserted inside the tests that carry them. Frozen numbers (distances,
parameter counts) were computed by the independent oracles in the unit
suites; nothing here is copied from an implementation result without a
second derivation.
"""

import math
import random
import time
from fractions import Fraction

import pytest

from test_metrics import oracle_cheeger, oracle_soundness

from qwr.cli import main as cli_main
from qwr.cone import (
    ConeInput,
    build_b_complex,
    cone_code,
    mapping_cone,
    reduce_cone,
    with_cycle_redundancies,
    induced_code,
)
from qwr.copygauge import x_reduce
from qwr.errors import RetriesExhausted, AugmentationFailed
from qwr.f2 import SparseBitMatrix, is_zero, mat_mul
from qwr.fixtures import big_face_torus, punctured_sphere, steane, toric
from qwr.metrics import (
    Graph,
    cheeger,
    distance_exact,
    homology_ranks,
    soundness,
)
from qwr.model import CssCode, code_to_complex, encoded_dimension, validate
from qwr.pipeline import reduce_applic, reduce_full
from qwr.randapplic import RandomCodeSpec, build_applic_code, sample_classical, sample_z_stabilizers
from qwr.robustify import connect, improve_soundness
from qwr.thicken import (
    HeightAssignment,
    choose_heights_coloring,
    choose_heights_random,
    kept_multiplicity,
    thicken,
)

DESK_APPLIC_CONFIG = {
    "distance_trials": 2,
    "max_balance_ell": 2,
    "balance": "skip",
    "reduce": {
        "steps": {"thicken": "skip"},
        "cone": {"sets": "heaviest", "ell_prime": 1},
    },
}


def random_draw(n, beta, seed):
    """The random-code constructor without its diagnostics pass."""
    spec = RandomCodeSpec(n=n, beta=beta, seed=seed)
    hx = sample_classical(spec)
    hz = sample_z_stabilizers(hx, spec.num_z_rows, spec.seed)
    return CssCode(n, hx, hz, {"name": "random-applic", "seed": seed})


@pytest.fixture(scope="module")
def small_corpus():
    return [
        ("toric-2", toric(2)),
        ("toric-3", toric(3)),
        ("toric-4", toric(4)),
        ("steane", steane()),
        ("fig1-6", big_face_torus(6)),
        ("fig1-8", big_face_torus(8)),
        ("punctured-sphere", punctured_sphere(3)),
    ]


@pytest.fixture(scope="module")
def random_corpus():
    return [
        (f"applic-{n}-{seed}", random_draw(n, 5, seed))
        for n in (16, 32, 48, 64)
        for seed in range(5)
    ]


def heaviest_row(code):
    sups = code.z_stabs.row_supports
    return max(range(len(sups)), key=lambda i: len(sups[i]))


def cone_chain(code, row):
    """Cone one Z-row (all others direct) and reduce; returns both stages."""
    sups = code.z_stabs.row_supports
    direct = tuple(i for i in range(len(sups)) if i != row)
    q = tuple(sups[row])
    inp = ConeInput.build(code, direct, [q])
    bc, _ = build_b_complex(code, q)
    cone, _ = cone_code(inp, [with_cycle_redundancies(bc)])
    reduced, _ = reduce_cone(cone, ell_prime=1)
    return cone, reduced


def commutes(code):
    return is_zero(mat_mul(code.x_stabs, code.z_stabs.transpose()))


def test_c01_commutation_over_corpus(small_corpus, random_corpus):
    t0 = time.monotonic()
    outputs = []
    for _, code in small_corpus + random_corpus:
        assert commutes(code)
        validate(code)
        outputs.append(x_reduce(code)[0])
        heights = HeightAssignment.uniform(2, code.num_z_stabs)
        outputs.append(thicken(code, 2, heights)[0])
        outputs.append(connect(code)[0])
    for _, code in small_corpus:
        cone, reduced = cone_chain(code, heaviest_row(code))
        outputs.extend([cone, reduced])
    for out in outputs:
        assert commutes(out)
        validate(out)
    elapsed = time.monotonic() - t0
    assert elapsed < 60
    print(
        f"commutation: {len(small_corpus) + len(random_corpus)} inputs, "
        f"{len(outputs)} transform outputs, {elapsed:.1f}s"
    )


def test_c02_k_preserved_by_every_transform(small_corpus):
    elements = list(small_corpus) + [("applic-48-0", random_draw(48, 5, 0))]
    for name, code in elements:
        k0 = encoded_dimension(code)
        assert encoded_dimension(x_reduce(code)[0]) == k0, name
        heights = HeightAssignment.uniform(2, code.num_z_stabs)
        assert encoded_dimension(thicken(code, 2, heights)[0]) == k0, name
        assert encoded_dimension(connect(code)[0]) == k0, name
        cone, reduced = cone_chain(code, heaviest_row(code))
        assert encoded_dimension(cone) == k0, name
        assert encoded_dimension(reduced) == k0, name
    for name, code in elements:
        k0 = encoded_dimension(code)
        if name.startswith("applic"):
            spec = RandomCodeSpec(n=48, beta=5, seed=0)
            final, _ = reduce_applic(spec, dict(DESK_APPLIC_CONFIG, ell=2))
        else:
            final, _ = reduce_full(code, seed=0)
        assert encoded_dimension(final) == k0, name
    print(f"k preserved across {len(elements)} elements, 6 transforms each")


def test_c03_copy_gauge_bounds(small_corpus, random_corpus):
    for name, code in small_corpus + random_corpus:
        before = validate(code)
        out, _, _ = x_reduce(code)
        after = validate(out)
        assert after.w_x <= 3, name
        assert after.q_x <= 3, name
        assert after.q_z <= max(before.q_z, before.w_x * before.q_z), name
        assert after.w_z <= before.w_z * before.q_x * (1 + before.w_x), name
    for name, code in [
        ("toric-2", toric(2)),
        ("toric-3", toric(3)),
        ("steane", steane()),
    ]:
        before = validate(code)
        out, _, _ = x_reduce(code)
        dz_in = distance_exact(code, side="z")
        dz_out = distance_exact(out, side="z")
        assert dz_in.method == "exact" and dz_out.method == "exact"
        assert dz_out.value >= dz_in.value * before.q_x, name
    print("copy-gauge bounds hold on all corpus inputs; z-distance growth exact on 3")


def test_c04_thickening_distance_exactness():
    t0 = time.monotonic()
    code = toric(3)
    # d_x = d_z = 3 on the input, frozen from exhaustive search
    for ell in (2, 3):
        heights = HeightAssignment.uniform(ell, code.num_z_stabs)
        out, _ = thicken(code, ell, heights)
        dx = distance_exact(out, side="x")
        dz = distance_exact(out, side="z")
        assert dx.method == "exact" and dz.method == "exact"
        assert dx.value == ell * 3
        assert dz.value == 3
    elapsed = time.monotonic() - t0
    assert elapsed < 300
    print(f"thickening distances exact for ell in {{2,3}}, {elapsed:.1f}s")


def test_c05_height_assignments(small_corpus, random_corpus):
    for name, code in small_corpus + random_corpus:
        if code.num_z_stabs == 0:
            continue
        ell, heights = choose_heights_coloring(code)
        assert kept_multiplicity(code, heights) <= 1, name
    successes = 0
    code = toric(3)
    for seed in range(100):
        try:
            choose_heights_random(code, 9, 1, seed=seed)
            successes += 1
        except RetriesExhausted:
            pass
    assert successes >= 95
    print(f"coloring multiplicity <= 1 everywhere; random heights {successes}/100")


def test_c06_cone_golden_pattern():
    t0 = time.monotonic()
    code = big_face_torus(6)
    row = code.meta["big_face_row"]
    direct = tuple(j for j in range(code.num_z_stabs) if j != row)
    q = tuple(code.z_stabs.row_supports[row])
    inp = ConeInput.build(code, direct, [q])
    bc, g = build_b_complex(code, q)

    # without the redundancy: six weight-3 triangles along the loop, each
    # pairing one loop qubit with its two incident added qubits, and the
    # added qubits closing into a single 6-cycle
    out, _ = cone_code(inp, [bc], check_homology=False)
    added = set(range(code.n, out.n))
    assert len(added) == 6
    tri = [sup for sup in out.z_stabs.row_supports if set(sup) & added]
    assert len(tri) == 6 and all(len(sup) == 3 for sup in tri)
    for sup in tri:
        orig = [x for x in sup if x not in added]
        assert len(orig) == 1 and orig[0] in q
    ends = [tuple(x for x in sup if x in added) for sup in tri]
    ring = Graph.from_edges(out.n, ends)
    big = [c for c in ring.components() if len(c) > 1]
    assert len(big) == 1 and len(big[0]) == 6

    # with the redundancy: exactly one extra X-check, covering every added qubit
    full = with_cycle_redundancies(bc)
    cone, _ = cone_code(inp, [full])
    extra = cone.x_stabs.row_supports[code.num_x_stabs:]
    assert len(extra) == 1
    assert set(extra[0]) == set(range(code.n, cone.n))
    assert encoded_dimension(cone) == 2

    # reduced cone: K = 2 and exact distances within the cellulation bound
    # of the induced code's (lambda = 2/3 for the hexagon)
    ind = induced_code(inp, [full])
    dx_ind = distance_exact(ind, side="x")
    dz_ind = distance_exact(ind, side="z")
    reduced, _ = reduce_cone(cone, ell_prime=1)
    assert encoded_dimension(reduced) == 2
    dx_red = distance_exact(reduced, side="x")
    dz_red = distance_exact(reduced, side="z")
    assert dx_red.method == "exact" and dz_red.method == "exact"
    assert dx_red.value >= dx_ind.value
    assert dz_red.value >= Fraction(2, 3) * 1 * dz_ind.value
    assert dz_red.value == dz_ind.value == 3
    elapsed = time.monotonic() - t0
    assert elapsed < 60
    print(
        f"cone golden pattern: triangles + product check ok, "
        f"reduced d_x={dx_red.value} d_z={dz_red.value}, {elapsed:.1f}s"
    )


def test_c07_identity_mapping_cone_is_exact():
    cx = code_to_complex(toric(3))
    ident = [SparseBitMatrix.identity(d) for d in cx.dims]
    cone = mapping_cone(cx, cx, ident)
    ranks = homology_ranks(cone)
    assert all(r == 0 for r in ranks)
    print(f"identity mapping cone: homology ranks {ranks}")


def test_c08_soundness_dominates_cheeger():
    rng = random.Random(808)
    checked = 0
    for _ in range(50):
        n = rng.randrange(2, 13)
        m = rng.randrange(0, 2 * n)
        edges = []
        for _ in range(m):
            a = rng.randrange(n)
            b = rng.randrange(n)
            if a != b:
                edges.append((min(a, b), max(a, b)))
        g = Graph.from_edges(n, edges)
        want_c = oracle_cheeger(g)
        want_s = oracle_soundness(g)
        got_c = cheeger(g)
        got_s = soundness(g)
        assert got_c.exact and got_s.exact
        if want_c is None:
            assert math.isinf(got_c.value)
        else:
            assert got_c.value == float(want_c)
        if want_s is None:
            assert math.isinf(got_s.value)
        else:
            assert got_s.value == float(want_s)
        assert got_s.value >= got_c.value
        checked += 1
    assert checked == 50
    print("soundness >= cheeger on 50 brute-forced instances")


def test_c09_expander_augmentation():
    successes = 0
    for seed in range(20):
        rng = random.Random(1000 + seed)
        n = rng.randrange(4, 17)
        edges = [tuple(sorted((v, rng.randrange(v)))) for v in range(1, n)]
        for _ in range(max(1, n // 3)):
            a, b = rng.sample(range(n), 2)
            edges.append(tuple(sorted((a, b))))
        code = CssCode.from_support_lists(
            n, [list(e) for e in edges], [list(range(n))]
        )
        before = Graph.from_edges(n, edges)
        deg0 = [sum(before.adjacency()[v].values()) for v in range(n)]
        try:
            graphs, _ = improve_soundness(code, [tuple(range(n))], Fraction(1, 2))
        except AugmentationFailed:
            continue
        after = graphs[0]
        deg1 = [sum(after.adjacency()[v].values()) for v in range(n)]
        increase = max(b - a for a, b in zip(deg0, deg1))
        res = cheeger(after)
        if res.exact and res.value >= 0.5 and increase <= 4:
            successes += 1
    assert successes >= 18
    print(f"augmentation reached h >= 1/2 with degree increase <= 4: {successes}/20")


def test_c10_full_pipeline_ldpc_targets():
    t0 = time.monotonic()
    out, reports = reduce_full(toric(3), seed=0)
    params = validate(out)
    assert params.w_x <= 5
    assert params.q_x <= 3
    assert params.w_z <= 5
    assert params.q_z <= 5
    assert params.k == 2
    for rep in reports:
        for check in rep.bound_checks:
            if check.required:
                assert check.satisfied, (rep.step, check.expression)
    elapsed = time.monotonic() - t0
    assert elapsed < 600
    print(
        f"pipeline targets met: w_x={params.w_x} q_x={params.q_x} "
        f"w_z={params.w_z} q_z={params.q_z} k={params.k}, {elapsed:.1f}s"
    )


def test_c11_random_code_diagnostics():
    independent = connected = total = 0
    for n in (32, 48, 64):
        for seed in range(20):
            _, diag = build_applic_code(RandomCodeSpec(n=n, beta=5, seed=seed))
            total += 1
            independent += diag["z_independent"]
            live = [q for q in diag["q_sets"] if not q["degenerate"]]
            connected += bool(live) and all(q["connected"] for q in live)
    assert independent >= math.ceil(0.95 * total)
    assert connected >= math.ceil(0.90 * total)

    def min_h(diag):
        vals = [
            math.inf if q["cheeger"] is None else q["cheeger"]
            for q in diag["q_sets"]
            if not q["degenerate"]
        ]
        return min(vals) if vals else math.inf

    averages = []
    for beta in (2, 4, 6, 8):
        hs = []
        for seed in range(10):
            _, diag = build_applic_code(RandomCodeSpec(n=48, beta=beta, seed=seed))
            hs.append(min_h(diag))
        averages.append(sum(hs) / len(hs))
    assert all(a <= b for a, b in zip(averages, averages[1:])), averages
    print(
        f"diagnostics: independent {independent}/{total}, connected "
        f"{connected}/{total}, h trend {['%.3f' % a for a in averages]}"
    )


def test_c12_seeded_commands_are_byte_identical(tmp_path):
    import json

    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps(DESK_APPLIC_CONFIG), encoding="utf-8")
    fixture = tmp_path / "toric3.json"
    assert cli_main(["gen-fixture", "toric", "--size", "3", "--out", str(fixture)]) == 0
    fig = tmp_path / "fig1.json"
    assert cli_main(["gen-fixture", "fig1", "--size", "6", "--out", str(fig)]) == 0

    commands = {
        "distance": lambda d: [
            "distance", str(fixture), "--method", "estimate",
            "--trials", "4", "--seed", "9", "--out", str(d / "dist.json"),
        ],
        "copy-gauge": lambda d: [
            "copy-gauge", str(fixture), str(d / "cg.json"),
            "--report", str(d / "cg_rep.json"),
        ],
        "thicken": lambda d: [
            "thicken", str(fixture), str(d / "th.json"), "--ell", "3",
            "--strategy", "random", "--seed", "4",
            "--report", str(d / "th_rep.json"),
        ],
        "cone": lambda d: [
            "cone", str(fig), str(d / "cone.json"), "--seed", "2",
            "--direct-z", ",".join(str(i) for i in range(7)),
            "--report", str(d / "cone_rep.json"),
        ],
        "improve-soundness": lambda d: [
            "improve-soundness", str(fixture), "--target-h", "1.0",
            "--seed", "3", "--out", str(d / "sound.json"),
        ],
        "connect": lambda d: [
            "connect", str(fixture), str(d / "conn.json"),
            "--plan", str(d / "plan.json"),
        ],
        "reduce": lambda d: [
            "reduce", str(fig), str(d / "red.json"), "--seed", "5",
            "--report", str(d / "red_rep.json"),
        ],
        "random": lambda d: [
            "random", "--n", "16", "--beta", "2", "--seed", "6",
            "--out", str(d / "rand.json"),
            "--diagnostics", str(d / "diag.json"),
        ],
        "reduce-applic": lambda d: [
            "reduce-applic", "--n", "32", "--beta", "2", "--z-count", "4",
            "--ell", "2", "--seed", "0", "--config", str(cfg),
            "--out", str(d / "ra.json"), "--report", str(d / "ra_rep.json"),
        ],
    }
    for name, build in commands.items():
        runs = []
        for tag in ("a", "b"):
            d = tmp_path / f"{name}-{tag}"
            d.mkdir()
            assert cli_main([str(a) for a in build(d)]) == 0, name
            runs.append(
                sorted((f.name, f.read_bytes()) for f in d.iterdir())
            )
        assert runs[0] == runs[1], name
    print(f"determinism: {len(commands)} seeded commands byte-identical on rerun")
