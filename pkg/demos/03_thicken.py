"""Thickening: product with an interval to dilute Z-degrees.

The code is crossed with a length-ell path. Each qubit becomes a column of
ell copies, each X-check a column of copies plus vertical rungs, and each
Z-check is planted at a single height of its column. Qubits then meet at
most w+2 Z-checks once a height assignment with multiplicity <= w is found.
X-distance multiplies by ell; Z-distance is untouched.
"""

from qwr import (
    HeightAssignment,
    choose_heights_coloring,
    choose_heights_random,
    distance_exact,
    thicken,
    toric,
    validate,
)


def main():
    code = toric(3)
    base = validate(code)
    print(f"input: n={base.n} k={base.k} q_z={base.q_z} "
          f"d_x={distance_exact(code, side='x').value}")

    for ell in (2, 3):
        heights = HeightAssignment.uniform(ell, code.num_z_stabs)
        out, report = thicken(code, ell, heights)
        p = validate(out)
        dx = distance_exact(out, side="x").value
        dz = distance_exact(out, side="z").value
        print(f"ell={ell}: n={p.n} k={p.k} q_z={p.q_z}  d_x={dx} d_z={dz}")

    # height search: random with a multiplicity target, or greedy coloring
    heights = choose_heights_random(code, 9, 1, seed=0)
    out, _ = thicken(code, 9, heights)
    print(f"random heights at ell=9, target multiplicity 1: q_z -> "
          f"{validate(out).q_z}")

    ell, heights = choose_heights_coloring(code)
    print(f"coloring picks ell={ell} on its own and guarantees "
          f"multiplicity <= 1")


if __name__ == "__main__":
    main()
