"""End-to-end weight reduction and the random-code scaling driver.

reduce_full runs the fixed step order: gauge the X side down, thicken to
spread Z-degree over heights, insert connecting qubits if some Z-check
support falls apart, then cone the remaining heavy Z-checks and reduce the
cone. Each step may be forced, skipped, or left on auto, where it runs
only when the parameter it repairs sits above its target. Steps cannot be
reordered.

reduce_applic starts from a random sparse draw, thickens it by a length
proportional to the block size, weight-reduces, and finishes with a
distance-balancing thickening on whichever side measures shorter.
"""

from __future__ import annotations

from .cone import (
    ConeInput,
    build_b_complex,
    cone_code,
    reduce_cone,
    with_cycle_redundancies,
)
from .copygauge import x_reduce
from .errors import QwrError, RetriesExhausted
from .metrics import distance_estimate
from .model import CssCode, encoded_dimension, is_reasonable, validate
from .randapplic import RandomCodeSpec, build_applic_code
from .report import BoundCheck, TransformReport, require_bounds
from .robustify import connect
from .seeds import derive_seed
from .thicken import (
    HeightAssignment,
    choose_heights_coloring,
    choose_heights_random,
    dual,
    thicken,
)

__all__ = ["default_config", "reduce_full", "reduce_applic"]

_STEP_MODES = ("auto", "always", "skip")


def default_config() -> dict:
    return {
        "targets": {"w_x": 5, "q_x": 3, "w_z": 5, "q_z": 5},
        "steps": {
            "copy_gauge": "auto",
            "thicken": "auto",
            "connect": "auto",
            "cone": "auto",
        },
        "thicken": {
            "ell": "auto",
            "strategy": "random",
            "target_w": "auto",
            "max_ell": 64,
        },
        "cone": {"sets": "auto", "threshold": 5, "ell_prime": "auto"},
    }


def _merge(base: dict, override: dict) -> dict:
    out = dict(base)
    for key, val in override.items():
        if isinstance(val, dict) and isinstance(out.get(key), dict):
            out[key] = _merge(out[key], val)
        else:
            out[key] = val
    return out


def _skipped(step: str, params, reason: str) -> TransformReport:
    return TransformReport(
        step=step,
        params_before=params,
        params_after=params,
        notes={"skipped": True, "reason": reason},
    )


def _annotate(err: QwrError, step: str):
    err.details.setdefault("pipeline_step", step)
    return err


def _auto_thicken(code: CssCode, target_w: int, seed: int, max_ell: int):
    ell = 2
    last = None
    while ell <= max_ell:
        try:
            heights = choose_heights_random(
                code, ell, target_w, seed=seed, max_retries=100
            )
            return thicken(code, ell, heights)
        except RetriesExhausted as err:
            last = err
            ell = min(max(ell + 1, (ell * 3) // 2), max_ell) if ell < max_ell else max_ell + 1
    raise _annotate(last, "thicken")


def _run_thicken(code: CssCode, cfg: dict, seed: int):
    tcfg = cfg["thicken"]
    target_w = tcfg["target_w"]
    if target_w == "auto":
        target_w = max(1, cfg["targets"]["q_z"] - 2)
    strategy = tcfg["strategy"]
    ell = tcfg["ell"]
    if strategy == "coloring":
        ell_c, heights = choose_heights_coloring(code)
        return thicken(code, ell_c, heights)
    if strategy == "uniform":
        if ell == "auto":
            raise ValueError("uniform strategy needs an explicit ell")
        return thicken(
            code, ell, HeightAssignment.uniform(ell, code.num_z_stabs)
        )
    if strategy != "random":
        raise ValueError(f"unknown thicken strategy {strategy!r}")
    if ell == "auto":
        return _auto_thicken(code, target_w, seed, tcfg["max_ell"])
    heights = choose_heights_random(code, ell, target_w, seed=seed)
    return thicken(code, ell, heights)


def _cone_selection(code: CssCode, cfg: dict) -> tuple[tuple, tuple]:
    mode = cfg["cone"]["sets"]
    supports = code.z_stabs.row_supports
    target_w = cfg["targets"]["w_z"]
    if isinstance(mode, (list, tuple)):
        chosen = sorted(set(int(i) for i in mode))
    elif mode == "heaviest":
        heaviest = max(range(len(supports)), key=lambda i: len(supports[i]))
        chosen = [heaviest]
    elif mode == "auto":
        if "kept_rows" in code.meta and "interval_rows" in code.meta:
            pool = code.meta["kept_rows"]
        else:
            pool = range(len(supports))
        chosen = [i for i in pool if len(supports[i]) > target_w]
    else:
        raise ValueError(f"unknown cone set mode {mode!r}")
    direct = tuple(i for i in range(len(supports)) if i not in set(chosen))
    q_sets = tuple(tuple(supports[i]) for i in chosen)
    return direct, q_sets


def _run_cone(code: CssCode, cfg: dict, seed: int):
    direct, q_sets = _cone_selection(code, cfg)
    if not q_sets:
        raise ValueError("cone step forced but no Z-check selected")
    inp = ConeInput.build(code, direct, q_sets)
    complexes = []
    for qs in q_sets:
        bc, _ = build_b_complex(code, qs)
        complexes.append(with_cycle_redundancies(bc))
    cone, rep_cone = cone_code(inp, complexes)

    threshold = cfg["cone"]["threshold"]
    ell_prime = cfg["cone"]["ell_prime"]
    if ell_prime == "auto":
        out, rep_red = reduce_cone(
            cone, ell_prime=1, seed=seed, threshold=threshold
        )
        needed = rep_red.notes["ell_prime_needed"]
        if needed > 1:
            out, rep_red = reduce_cone(
                cone, ell_prime=needed, seed=seed, threshold=threshold
            )
    else:
        out, rep_red = reduce_cone(
            cone, ell_prime=ell_prime, seed=seed, threshold=threshold
        )
    return out, (rep_cone, rep_red)


def reduce_full(
    code: CssCode, config: dict = None, seed: int = 0
) -> tuple[CssCode, tuple]:
    """Run the full reduction; returns the final code and one report per
    step plus a closing summary."""

    cfg = _merge(default_config(), config or {})
    for step, mode in cfg["steps"].items():
        if mode not in _STEP_MODES:
            raise ValueError(f"step {step} has unknown mode {mode!r}")

    params_in = validate(code)
    targets = cfg["targets"]
    reports = []
    steps_run = []
    current = code

    params = params_in
    mode = cfg["steps"]["copy_gauge"]
    if mode == "always" or (
        mode == "auto"
        and (params.w_x > targets["w_x"] or params.q_x > targets["q_x"])
    ):
        try:
            current, _, rep = x_reduce(current)
        except QwrError as err:
            raise _annotate(err, "copy-gauge")
        reports.append(rep)
        steps_run.append("copy-gauge")
    else:
        reports.append(
            _skipped("copy-gauge", params, "x side already within targets")
        )

    params = validate(current)
    mode = cfg["steps"]["thicken"]
    if mode == "always" or (mode == "auto" and params.q_z > targets["q_z"]):
        try:
            current, rep = _run_thicken(current, cfg, seed)
        except QwrError as err:
            raise _annotate(err, "thicken")
        reports.append(rep)
        steps_run.append("thicken")
    else:
        reports.append(
            _skipped("thicken", params, "z degree already within target")
        )

    params = validate(current)
    mode = cfg["steps"]["connect"]
    if mode == "always" or (
        mode == "auto" and not is_reasonable(current).ok
    ):
        try:
            current, _, rep = connect(current)
        except QwrError as err:
            raise _annotate(err, "connect")
        reports.append(rep)
        steps_run.append("connect")
    else:
        reports.append(_skipped("connect", params, "code is reasonable"))

    params = validate(current)
    mode = cfg["steps"]["cone"]
    if mode == "always" or (mode == "auto" and params.w_z > targets["w_z"]):
        try:
            current, cone_reports = _run_cone(current, cfg, seed)
        except QwrError as err:
            raise _annotate(err, "cone")
        reports.extend(cone_reports)
        steps_run.append("cone")
    else:
        reports.append(
            _skipped("cone", params, "z weight already within target")
        )

    params_out = validate(current)
    k_out = encoded_dimension(current)
    checks = [
        BoundCheck(
            "k preserved end to end",
            k_out == params_in.k,
            observed=k_out,
            limit=params_in.k,
        )
    ]
    for name in ("w_x", "q_x", "w_z", "q_z"):
        observed = getattr(params_out, name)
        checks.append(
            BoundCheck(
                f"final {name} <= {targets[name]}",
                observed is not None and observed <= targets[name],
                observed=observed,
                limit=targets[name],
                required=False,
            )
        )
    summary = TransformReport(
        step="summary",
        config=cfg,
        seed=seed,
        params_before=params_in,
        params_after=params_out,
        bound_checks=tuple(checks),
        notes={
            "steps_run": steps_run,
            "n_blowup": params_out.n / params_in.n,
        },
    )
    reports.append(require_bounds(summary))
    return current, tuple(reports)


def _balance(code: CssCode, cfg: dict, seed: int):
    trials = cfg["distance_trials"]
    dx = distance_estimate(
        code, side="x", trials=trials, seed=derive_seed(seed, "balance:x")
    )
    dz = distance_estimate(
        code, side="z", trials=trials, seed=derive_seed(seed, "balance:z")
    )
    cap = cfg["max_balance_ell"]
    if dx.value == dz.value or dx.value == 0 or dz.value == 0:
        return code, None, (dx, dz)
    if dx.value < dz.value:
        ell = min(cap, max(2, round(dz.value / dx.value)))
        out, rep = thicken(
            code, ell, HeightAssignment.uniform(ell, code.num_z_stabs)
        )
        note = {"side": "x", "ell": ell}
    else:
        ell = min(cap, max(2, round(dx.value / dz.value)))
        flipped = dual(code)
        out, rep = thicken(
            flipped, ell, HeightAssignment.uniform(ell, flipped.num_z_stabs)
        )
        out = dual(out)
        note = {"side": "z", "ell": ell}
    return out, {"balance": note, "report": rep}, (dx, dz)


def reduce_applic(
    spec: RandomCodeSpec, config: dict = None
) -> tuple[CssCode, tuple]:
    """Random draw, proportional thickening, weight reduction, balancing."""

    cfg = _merge(
        {
            "ell_factor": 1 / 16,
            "ell": None,
            "max_ell": 64,
            "distance_trials": 8,
            "balance": "auto",
            "max_balance_ell": 4,
            "reduce": {"steps": {"thicken": "skip"}},
        },
        config or {},
    )
    code, diagnostics = build_applic_code(spec)
    reports = [
        TransformReport(
            step="random-applic",
            seed=spec.seed,
            params_after=validate(code),
            notes={"diagnostics": diagnostics},
        )
    ]

    ell = cfg["ell"]
    if ell is None:
        ell = max(2, round(cfg["ell_factor"] * spec.n))
    heights = None
    for w in range(1, code.num_z_stabs + 1):
        try:
            heights = choose_heights_random(
                code, ell, w, seed=spec.seed, max_retries=50
            )
            break
        except RetriesExhausted:
            continue
    if heights is None:
        heights = HeightAssignment.uniform(ell, code.num_z_stabs)
    thickened, rep = thicken(code, ell, heights)
    reports.append(rep)

    reduced, inner = reduce_full(
        thickened, cfg["reduce"], seed=derive_seed(spec.seed, "reduce")
    )
    reports.extend(inner)

    if cfg["balance"] == "skip":
        final, balance_info = reduced, None
        dx = distance_estimate(
            reduced,
            side="x",
            trials=cfg["distance_trials"],
            seed=derive_seed(spec.seed, "balance:x"),
        )
        dz = distance_estimate(
            reduced,
            side="z",
            trials=cfg["distance_trials"],
            seed=derive_seed(spec.seed, "balance:z"),
        )
    else:
        final, balance_info, (dx, dz) = _balance(reduced, cfg, spec.seed)
    if balance_info is not None:
        reports.append(balance_info["report"])

    trials = cfg["distance_trials"]
    dx_final = distance_estimate(
        final, side="x", trials=trials, seed=derive_seed(spec.seed, "final:x")
    )
    dz_final = distance_estimate(
        final, side="z", trials=trials, seed=derive_seed(spec.seed, "final:z")
    )
    scaling = {
        "n_input": spec.n,
        "n_final": final.n,
        "k": encoded_dimension(final),
        "d_x_est": dx_final.value,
        "d_z_est": dz_final.value,
        "pre_balance": {"d_x_est": dx.value, "d_z_est": dz.value},
        "balance": None if balance_info is None else balance_info["balance"],
    }
    summary = TransformReport(
        step="applic-summary",
        config={k: v for k, v in cfg.items() if k != "reduce"},
        seed=spec.seed,
        params_after=validate(final),
        bound_checks=(
            BoundCheck(
                "k > 0 after the full chain",
                encoded_dimension(final) > 0,
                observed=encoded_dimension(final),
                limit=1,
            ),
        ),
        notes={"scaling": scaling},
    )
    reports.append(require_bounds(summary))
    return final, tuple(reports)
