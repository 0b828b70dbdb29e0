"""Tour of the data model: build fixtures, validate them, read their params.

A CSS code here is a pair of sparse GF(2) matrices over n qubits whose row
spaces are orthogonal. validate() checks the commutation condition and
returns the parameter ledger; is_reasonable() inspects each Z-check's
support graph.
"""

from qwr import (
    big_face_torus,
    is_reasonable,
    punctured_sphere,
    steane,
    support_graph,
    toric,
    validate,
)


def describe(name, code):
    params = validate(code)
    decision = is_reasonable(code)
    print(f"{name}:")
    print(f"  n={params.n}  k={params.k}  "
          f"x-checks={params.num_x_stabs}  z-checks={params.num_z_stabs}")
    print(f"  weights  w_x={params.w_x} w_z={params.w_z}   "
          f"degrees q_x={params.q_x} q_z={params.q_z}")
    print(f"  reasonable: {decision.ok}")


def main():
    describe("Steane [[7,1,3]]", steane())
    describe("toric L=3", toric(3))
    describe("punctured sphere L=3", punctured_sphere(3))

    code = big_face_torus(8)
    describe("torus with one merged 8-gon face", code)
    row = code.meta["big_face_row"]
    sg = support_graph(code, row)
    print(f"  the 8-gon Z-check has a connected support graph: {sg.is_connected}")
    print(f"  its loop runs through qubits {code.meta['big_face_loop']}")


if __name__ == "__main__":
    main()
