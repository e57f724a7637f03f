"""Aligning two congruent frames with a rotor built from complete flags.

A random frame is rotated by a hidden rotor; the alignment recovers a rotor
with the same action from nothing but the two frames.  The antipodal case
(where the two-vector rotor formula degenerates) goes through the half-turn
recovery and is shown at the end.
"""

import numpy as np

from carnotga import FramePair, Multivector, align_bases, sandwich
from carnotga.flags import flag_from_basis, align_flags

rng = np.random.default_rng(7)


def random_frame(dim):
    while True:
        mat = rng.uniform(-1.0, 1.0, size=(dim, dim))
        if abs(np.linalg.det(mat)) > 0.2:
            return [Multivector.from_vector(dim, row) for row in mat]


def random_rotation_matrix(dim):
    a = rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(a)
    q = q @ np.diag(np.sign(np.diag(r)))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


for dim in (3, 4):
    print(f"== hidden rotation in dimension {dim} ==")
    frame = random_frame(dim)
    hidden = random_rotation_matrix(dim)
    ys = [Multivector.from_vector(dim, hidden @ x.vector_coords()) for x in frame]
    rot = align_bases(FramePair(tuple(frame), tuple(ys)))
    print("hidden matrix:\n", np.round(hidden, 6))
    print("recovered action:\n", np.round(rot.matrix(), 6))
    worst = max(
        float(np.max(np.abs(sandwich(rot, x).coeffs - y.coeffs)))
        for x, y in zip(frame, ys)
    )
    print(f"worst vector mismatch: {worst:.2e}\n")

print("== antipodal case ==")
e = [Multivector.basis_vector(3, i) for i in (1, 2, 3)]
v = flag_from_basis(e)
w = flag_from_basis([-e[0], -e[1], e[2]])
rot = align_flags(v, w)
print("half turn recovered; action on the basis:")
print(np.round(rot.matrix(), 6))
