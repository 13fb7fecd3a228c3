"""Builds the regular-octagon genus-2 Fuchsian group used as a fixture.

Side pairings of the regular octagon with interior angles pi/4 are composed
in the Poincare disk and conjugated to the upper half plane.  The script
searches the pairing orientations for the standard relator
[A1,B1][A2,B2] = +-I and writes data/fixtures/genus2_closed.json.
"""
import itertools
import json
import sys

import numpy as np

rho = np.arccosh(1 + np.sqrt(2))          # centre-to-edge distance
rvert = np.arccosh(3 + 2 * np.sqrt(2))    # centre-to-vertex distance


def rot(theta):
    # disk rotation z -> e^{i theta} z as an SU(1,1) matrix
    return np.array([[np.exp(0.5j * theta), 0], [0, np.exp(-0.5j * theta)]])


def trans(d):
    # hyperbolic translation along the real diameter by distance d
    return np.array([[np.cosh(d / 2), np.sinh(d / 2)], [np.sinh(d / 2), np.cosh(d / 2)]], dtype=complex)


def pairing(j, k):
    th = lambda m: m * np.pi / 4
    return rot(th(k)) @ trans(2 * rho) @ rot(np.pi - th(j))


# Cayley: disk -> H is w -> i(1+w)/(1-w)
C = np.array([[1j, 1j], [-1, 1]])
Cinv = np.linalg.inv(C)


def to_h(m):
    g = C @ m @ Cinv
    g = g / np.sqrt(np.linalg.det(g))
    assert np.max(np.abs(g.imag)) < 1e-12, g
    return g.real


def comm(a, b):
    return a @ b @ np.linalg.inv(a) @ np.linalg.inv(b)


pairs = {(0, 2): pairing(0, 2), (1, 3): pairing(1, 3), (4, 6): pairing(4, 6), (5, 7): pairing(5, 7)}
cands = [to_h(m) for m in pairs.values()]
best = None
for signs in itertools.product([1, -1], repeat=4):
    gs = [c if s == 1 else np.linalg.inv(c) for c, s in zip(cands, signs)]
    for perm in itertools.permutations(range(4)):
        a1, b1, a2, b2 = (gs[p] for p in perm)
        r = comm(a1, b1) @ comm(a2, b2)
        res = min(np.max(np.abs(r - np.eye(2))), np.max(np.abs(r + np.eye(2))))
        if best is None or res < best[0]:
            best = (res, a1, b1, a2, b2)
res, a1, b1, a2, b2 = best
print("relator residual", res, file=sys.stderr)
if res > 1e-12:
    sys.exit("no standard-form relator found")

verts = []
for m in range(8):
    ang = (2 * m + 1) * np.pi / 8
    w = np.tanh(rvert / 2) * np.exp(1j * ang)
    z = 1j * (1 + w) / (1 - w)
    verts.append([z.real, z.imag])

mat = lambda g: [[float(x) for x in row] for row in g]
out = {
    "name": "genus2_closed",
    "g": 2,
    "r": 0,
    "gens": {"A1": mat(a1), "B1": mat(b1), "A2": mat(a2), "B2": mat(b2)},
    "domain": {"kind": "compact_polygon", "vertices": verts},
    "expected_area_over_pi": 4,
    "relator_residual": res,
}
json.dump(out, open(sys.argv[1], "w"), indent=2)
