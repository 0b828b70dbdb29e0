"""The whole chain, twice.

First on the one-big-face torus: the driver inspects the parameters,
skips what is already within target, and runs only the coning step.
Second on a random draw: sample, thicken proportionally, reduce, and
report how the parameters moved. Desk-scale settings keep the second run
small; the same entry points scale up by loosening the config.
"""

from qwr import (
    RandomCodeSpec,
    big_face_torus,
    reduce_applic,
    reduce_full,
    validate,
)


def show(tag, params):
    print(f"  {tag}: n={params.n} k={params.k} "
          f"w_x={params.w_x} q_x={params.q_x} "
          f"w_z={params.w_z} q_z={params.q_z}")


def main():
    code = big_face_torus(8)
    show("input ", validate(code))
    out, reports = reduce_full(code, seed=0)
    show("output", validate(out))
    print(f"  steps run: {reports[-1].notes['steps_run']}")
    print()

    spec = RandomCodeSpec(n=32, beta=2, z_count=4, seed=0)
    config = {
        "ell": 2,
        "distance_trials": 2,
        "max_balance_ell": 2,
        "reduce": {
            "steps": {"thicken": "skip"},
            "cone": {"sets": "heaviest", "ell_prime": 1},
        },
    }
    final, reports = reduce_applic(spec, config)
    scaling = reports[-1].notes["scaling"]
    print(f"random draw n={scaling['n_input']} -> n={scaling['n_final']}, "
          f"k={scaling['k']}")
    show("final ", validate(final))
    print(f"  distance estimates: d_x ~ {scaling['d_x_est']}, "
          f"d_z ~ {scaling['d_z_est']}")
    for rep in reports:
        bad = [c.name for c in rep.bound_checks if c.required and not c.satisfied]
        assert not bad, (rep.step, bad)
    print("  all required checks passed")


if __name__ == "__main__":
    main()
