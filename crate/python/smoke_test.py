#!/usr/bin/env python3
"""Smoke test for the crooked_py extension module.

Build the module first:

    cargo build -p crooked-py --release

then run this script from the repository root:

    python3 python/smoke_test.py
"""

import math
import os
import shutil
import sys
import tempfile


def load_module():
    root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    candidates = [
        os.path.join(root, "target", profile, name)
        for profile in ("release", "debug")
        for name in ("libcrooked_py.so", "crooked_py.so", "libcrooked_py.dylib")
    ]
    built = next((c for c in candidates if os.path.exists(c)), None)
    if built is None:
        sys.exit("build the extension first: cargo build -p crooked-py")
    tmp = tempfile.mkdtemp(prefix="crooked_py_")
    shutil.copy(built, os.path.join(tmp, "crooked_py.so"))
    sys.path.insert(0, tmp)
    import crooked_py

    return crooked_py


def close(a, b, eps=1e-9):
    return abs(a - b) <= eps


def main():
    ck = load_module()

    # Causal classification and the basic algebra.
    assert ck.classify((0.0, 1.0, 1.0)) == "null_future"
    assert ck.classify((1.0, 0.0, 0.0)) == "spacelike"
    assert ck.inner((0.0, 1.0, 1.0), (0.0, -1.0, 1.0)) == -2.0
    assert ck.det3((1, 0, 0), (0, 1, 0), (0, 0, 1)) == 1.0
    assert ck.cross((1, 0, 0), (0, 1, 0)) == [0.0, 0.0, -1.0]

    # Null frame of the canonical director.
    s, sm, sp = ck.null_frame((1.0, 0.0, 0.0))
    r = 1.0 / math.sqrt(2.0)
    assert all(close(a, b) for a, b in zip(sm, (0.0, r, r)))
    assert all(close(a, b) for a, b in zip(sp, (0.0, -r, r)))

    # Canonical halfspace membership and strata.
    h = ck.Halfspace((0, 0, 0), (1, 0, 0))
    assert h.contains(h.point_at(1.0, 1.0, 0.0))
    assert h.contains((0, 0, 0), closed=True)
    assert not h.contains((0, 0, 0))
    assert h.stratum(h.point_at(0.0, 3.0, 0.0)) == "hinge_minus"
    assert h.stratum(h.point_at(2.0, 0.0, 7.0)) == "wing_minus"

    # Orbit invariant.
    assert close(h.phi(h.point_at(1.0, 1.0, 0.25)), 0.25)
    assert h.phi(h.point_at(0.0, 1.0, -1.0)) == -math.inf

    # A particle through a point, contained in the closed halfspace.
    base, direction = h.particle_through(h.point_at(1.0, 2.0, 0.0))
    assert ck.classify(direction) == "timelike_future"
    assert h.line_contained(base, direction, closed=True)

    # The worked disjointness pair: directors (-1,0,0) and (cosh 1, 0, sinh 1)
    # with vertex offset (0,1,0).
    h1 = ck.Halfspace((0, 0, 0), (-1.0, 0.0, 0.0))
    h2 = ck.Halfspace((0, 1.0, 0), (math.cosh(1.0), 0.0, math.sinh(1.0)))
    assert ck.planes_disjoint_direct(h1.vertex(), h1.director(), h2.vertex(), h2.director())
    assert ck.halfspaces_disjoint(h1, h2, closed=True)
    report = ck.disjointness_report(h1, h2, oracle_samples=2000, seed=7)
    assert report["agree"] and report["relation"] == "ultraparallel"

    # Crossing directors intersect, with a witness from the oracle.
    h3 = ck.Halfspace((0, 0, 0), (1.0, 0.0, 0.0))
    h4 = ck.Halfspace((0, 0, 0), (0.0, 1.0, 0.0))
    report = ck.disjointness_report(h3, h4, oracle_samples=2000, seed=7)
    assert not report["disjoint_closed"] and report["witness"] is not None

    # Foliation: constant coefficients sqrt(2) reproduce the straight vertex
    # path (-2t, 0, 0), and the certification passes.
    f = ck.Foliation(-1.0, 1.0, 100, p0=(2.0, 0.0, 0.0))
    for t, p in f.vertex_path():
        assert close(p[0], -2.0 * t, 1e-6) and close(p[1], 0.0, 1e-6)
    cert = f.certify()
    assert cert["certified"]
    mid = f.leaf(50).vertex()
    i, j = f.locate((mid[0] + 0.05, mid[1], mid[2]))
    assert j == i + 1

    print("crooked_py smoke test: all checks passed")


if __name__ == "__main__":
    main()
