"""Reference code constructions used by tests, demos and the CLI.

The torus/sphere builders carry their geometry in code metadata (edge
labels, face boundary loops) so downstream constructions can find puncture
boundaries without re-deriving them.
"""

from __future__ import annotations

from .errors import FormatError
from .model import CssCode


def steane() -> CssCode:
    rows = [[0, 2, 4, 6], [1, 2, 5, 6], [3, 4, 5, 6]]
    return CssCode.from_support_lists(7, rows, rows, {"name": "steane"})


def _toric_edges(L: int):
    # horizontal edge h(r,c): vertex (r,c) -> (r,c+1); index r*L + c
    # vertical   edge v(r,c): vertex (r,c) -> (r+1,c); index L*L + r*L + c
    def h(r: int, c: int) -> int:
        return (r % L) * L + (c % L)

    def v(r: int, c: int) -> int:
        return L * L + (r % L) * L + (c % L)

    return h, v


def toric(L: int) -> CssCode:
    """Toric code on an L x L torus: N = 2L^2, two logical qubits."""
    if L < 2:
        raise FormatError("toric: L must be at least 2")
    h, v = _toric_edges(L)
    hx = []  # vertex stars
    hz = []  # plaquettes
    for r in range(L):
        for c in range(L):
            hx.append(sorted({h(r, c), h(r, c - 1), v(r, c), v(r - 1, c)}))
            hz.append(sorted({h(r, c), h(r + 1, c), v(r, c), v(r, c + 1)}))
    return CssCode.from_support_lists(2 * L * L, hx, hz, {"name": "toric", "L": L})


def big_face_torus(n: int) -> CssCode:
    """Torus cellulation with one n-gon face among the squares.

    A horizontal strip of k = (n-2)/2 plaquettes in row 0 is merged into a
    single face by deleting the k-1 interior vertical edges. The strip has
    no interior vertices, so all vertex stars survive. Metadata records the
    merged face's boundary as an ordered edge loop.
    """
    if n < 6 or n % 2:
        raise FormatError("big-face torus needs an even n >= 6")
    k = (n - 2) // 2
    L = max(3, k + 1)
    h, v = _toric_edges(L)
    interior = {v(0, c) for c in range(1, k)}

    # drop the interior edges, then relabel the survivors densely
    keep = [e for e in range(2 * L * L) if e not in interior]
    relabel = {e: i for i, e in enumerate(keep)}

    hx = []
    for r in range(L):
        for c in range(L):
            star = {h(r, c), h(r, c - 1), v(r, c), v(r - 1, c)} - interior
            hx.append(sorted(relabel[e] for e in star))

    hz = []
    merged = set()
    for c in range(k):
        merged ^= {h(0, c), h(1, c), v(0, c), v(0, c + 1)}
    merged -= interior
    # walk the merged boundary in order: bottom, right side, top, left side
    loop = [h(0, c) for c in range(k)]
    loop.append(v(0, k))
    loop.extend(h(1, c) for c in reversed(range(k)))
    loop.append(v(0, 0))
    assert set(loop) == merged and len(loop) == n
    big_face_row = len(
        [1 for r in range(L) for c in range(L) if not (r == 0 and c < k)]
    )
    for r in range(L):
        for c in range(L):
            if r == 0 and c < k:
                continue
            plaq = {h(r, c), h(r + 1, c), v(r, c), v(r, c + 1)}
            hz.append(sorted(relabel[e] for e in plaq))
    hz.append(sorted(relabel[e] for e in merged))

    meta = {
        "name": "big-face-torus",
        "L": L,
        "n_gon": n,
        "big_face_row": big_face_row,
        "big_face_loop": [relabel[e] for e in loop],
    }
    return CssCode.from_support_lists(len(keep), hx, hz, meta)


def punctured_sphere(L: int = 3) -> CssCode:
    """Sphere cellulation (planar L x L grid plus outer face), two single
    plaquettes removed. One logical qubit; puncture loops kept in metadata."""
    if L < 3:
        raise FormatError("punctured sphere: L must be at least 3")

    def h(r: int, c: int) -> int:  # r in 0..L, c in 0..L-1
        return r * L + c

    def v(r: int, c: int) -> int:  # r in 0..L-1, c in 0..L
        return (L + 1) * L + r * (L + 1) + c

    n = 2 * L * (L + 1)
    hx = []
    for r in range(L + 1):
        for c in range(L + 1):
            star = set()
            if c < L:
                star.add(h(r, c))
            if c > 0:
                star.add(h(r, c - 1))
            if r < L:
                star.add(v(r, c))
            if r > 0:
                star.add(v(r - 1, c))
            hx.append(sorted(star))

    def plaquette(r: int, c: int) -> list[int]:
        return sorted({h(r, c), h(r + 1, c), v(r, c), v(r, c + 1)})

    punctures = [(0, 0), (L - 1, L - 1)]
    hz = [
        plaquette(r, c)
        for r in range(L)
        for c in range(L)
        if (r, c) not in punctures
    ]
    outer = sorted(
        {h(0, c) for c in range(L)}
        | {h(L, c) for c in range(L)}
        | {v(r, 0) for r in range(L)}
        | {v(r, L) for r in range(L)}
    )
    hz.append(outer)

    meta = {
        "name": "punctured-sphere",
        "L": L,
        "puncture_loops": [plaquette(r, c) for r, c in punctures],
    }
    return CssCode.from_support_lists(n, hx, hz, meta)
