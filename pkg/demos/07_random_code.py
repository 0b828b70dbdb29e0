"""Random sparse codes and their health report.

X-checks are rows of a sparse random binary matrix with expected row
weight Delta = beta * ln(n); Z-checks are random combinations of the
kernel, so they commute by construction. The diagnostics measure what the
downstream transforms care about: Z-row independence, support
connectivity, and the expansion of each support graph.
"""

from qwr import RandomCodeSpec, build_applic_code


def main():
    for beta in (1, 5):
        spec = RandomCodeSpec(n=48, beta=beta, seed=7)
        code, diag = build_applic_code(spec)
        live = [q for q in diag["q_sets"] if not q["degenerate"]]
        connected = sum(q["connected"] for q in live)
        hs = [q["cheeger"] for q in live if q["cheeger"] is not None]
        print(f"beta={beta} (Delta={diag['delta']:.1f}):")
        print(f"  n={diag['n']} k={diag['k']} w_x={diag['w_x']} "
              f"q_x={diag['q_x']}")
        print(f"  classical distance estimate: {diag['classical_distance']} "
              f"({diag['classical_relative_distance']:.3f} relative)")
        print(f"  z-rows independent: {diag['z_independent']}, "
              f"isolated qubits: {diag['isolated_qubits']}")
        print(f"  supports connected: {connected}/{len(live)}, "
              f"min h = {min(hs):.3f}" if hs else "  no live supports")
        print()


if __name__ == "__main__":
    main()
