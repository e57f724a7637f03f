"""The two step-2 Carnot group models and their geodesic machinery.

Model "36" lives on R^3 + R^3 with a 3-dimensional horizontal distribution;
points are stored as G_3 multivectors q = x + z with a grade-1 part x and a
grade-2 part z.  Model "47" lives on R + R^3 + R^3 with a 4-dimensional
distribution split into a preferred axis and an involutive complement;
points are G_4 multivectors q = x e1 + l + y with l spanned by e2, e3, e4
and y spanned by e1^e2, e1^e3, e1^e4.

Coordinate conventions, fixed by requiring the closed-form geodesics below
to solve the left-invariant horizontal systems:

* 36: the classical z coordinates (z_1, z_2, z_3) embed into bivectors as
  z_bivec = z_vec I, i.e. (z_1, z_2, z_3) -> z_1 e23 - z_2 e13 + z_3 e12,
  equivalently z_vec = (z_23, -z_13, z_12).  Under this identification the
  vertical equation dz = (1/2) x cross h becomes dz_bivec = (1/2) x ^ h.
* 47: y_i is literally the coefficient on e1 ^ e_{i+1}; the vertical
  equation is dy = (1/2)(x hbar - h0 l) componentwise.

Both conventions are pinned numerically by the worked reference targets in
the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import RotorDomain
from .ga import (
    Multivector,
    Rotor,
    geometric_product,
    grade_project,
    inner_product,
    outer_product,
    pseudoscalar,
    sandwich,
)

_E1_4 = "e1"


class Model(str, Enum):
    """The two supported growth vectors."""

    M36 = "36"
    M47 = "47"


def _as_model(model) -> Model:
    if isinstance(model, Model):
        return model
    return Model(str(model))


# ---------------------------------------------------------------------------
# points


@dataclass(frozen=True)
class Model36Point:
    """Group element of the 6-dimensional model, stored as q = x + z in G_3."""

    mv: Multivector

    def __post_init__(self):
        if self.mv.dim != 3:
            raise ValueError("Model36Point lives in G_3")
        junk = abs(self.mv.coeffs[0]) + abs(self.mv.coeffs[7])
        if junk > 1e-9:
            raise ValueError("point has scalar or pseudoscalar contamination")
        if junk != 0.0:
            cleaned = self.mv.coeffs.copy()
            cleaned[0] = 0.0
            cleaned[7] = 0.0
            object.__setattr__(self, "mv", Multivector(3, cleaned))

    @classmethod
    def origin(cls) -> "Model36Point":
        return cls(Multivector.zero(3))

    @classmethod
    def from_parts(cls, x_coords, z_coeffs) -> "Model36Point":
        """Build from grade-1 coordinates and bivector coefficients (e12, e13, e23)."""
        x = np.asarray(x_coords, float)
        z = np.asarray(z_coeffs, float)
        c = np.zeros(8)
        c[1], c[2], c[4] = x
        c[3], c[5], c[6] = z
        return cls(Multivector(3, c))

    @classmethod
    def from_vector_parts(cls, x_coords, z_vector) -> "Model36Point":
        """Build from the classical coordinates (x_1..x_3, z_1..z_3)."""
        z1, z2, z3 = np.asarray(z_vector, float)
        return cls.from_parts(x_coords, (z3, -z2, z1))

    @property
    def x_coords(self) -> np.ndarray:
        c = self.mv.coeffs
        return np.array([c[1], c[2], c[4]])

    @property
    def z_coeffs(self) -> np.ndarray:
        """Bivector coefficients on (e12, e13, e23)."""
        c = self.mv.coeffs
        return np.array([c[3], c[5], c[6]])

    @property
    def z_vector(self) -> np.ndarray:
        """Classical vertical coordinates (z_1, z_2, z_3)."""
        z12, z13, z23 = self.z_coeffs
        return np.array([z23, -z13, z12])


@dataclass(frozen=True)
class Model47Point:
    """Group element of the 7-dimensional model, stored in G_4 as
    q = x e1 + l + y with l in span(e2,e3,e4) and y in e1 ^ span(e2,e3,e4)."""

    mv: Multivector

    def __post_init__(self):
        if self.mv.dim != 4:
            raise ValueError("Model47Point lives in G_4")
        c = self.mv.coeffs
        bad = [0, 6, 10, 12, 7, 11, 13, 14, 15]  # scalar, e23,e24,e34, grades 3-4
        junk = float(np.max(np.abs(c[bad])))
        if junk > 1e-9:
            raise ValueError("point leaves the model subspace of G_4")
        if junk != 0.0:
            cleaned = c.copy()
            cleaned[bad] = 0.0
            object.__setattr__(self, "mv", Multivector(4, cleaned))

    @classmethod
    def origin(cls) -> "Model47Point":
        return cls(Multivector.zero(4))

    @classmethod
    def from_parts(cls, x: float, l_coords, y_coords) -> "Model47Point":
        c = np.zeros(16)
        c[1] = x
        c[2], c[4], c[8] = np.asarray(l_coords, float)
        c[3], c[5], c[9] = np.asarray(y_coords, float)
        return cls(Multivector(4, c))

    @property
    def x(self) -> float:
        return float(self.mv.coeffs[1])

    @property
    def l_coords(self) -> np.ndarray:
        c = self.mv.coeffs
        return np.array([c[2], c[4], c[8]])

    @property
    def y_coords(self) -> np.ndarray:
        """Bivector coefficients on (e12, e13, e14)."""
        c = self.mv.coeffs
        return np.array([c[3], c[5], c[9]])


# ---------------------------------------------------------------------------
# group structure


def group_product_36(p: Model36Point, q: Model36Point) -> Model36Point:
    """Group law (x, z) (x', z') = (x + x', z + z' + (1/2) x ^ x')."""
    xp = grade_project(p.mv, 1)
    xq = grade_project(q.mv, 1)
    z = grade_project(p.mv, 2) + grade_project(q.mv, 2) + 0.5 * outer_product(xp, xq)
    return Model36Point(xp + xq + z)


def group_inverse_36(p: Model36Point) -> Model36Point:
    return Model36Point(-p.mv)


def group_product_47(p: Model47Point, q: Model47Point) -> Model47Point:
    """Group law (x, l, y) (x', l', y') = (x + x', l + l', y + y' + (1/2)(x l' - x' l)).

    The vertical correction comes from the bracket [x Y_0 + l, x' Y_0 + l']
    of the distribution split, matching the left-invariant fields of the
    model; the y coordinates are the e1 ^ e_{i+1} coefficients.
    """
    e1 = Multivector.basis_vector(4, 1)
    lp = Multivector.from_vector(4, np.concatenate([[0.0], p.l_coords]))
    lq = Multivector.from_vector(4, np.concatenate([[0.0], q.l_coords]))
    y = (
        grade_project(p.mv, 2)
        + grade_project(q.mv, 2)
        + 0.5 * (outer_product(e1 * p.x, lq) - outer_product(e1 * q.x, lp))
    )
    x = p.x + q.x
    return Model47Point(Multivector.blade(4, "e1", x) + lp + lq + y)


def group_inverse_47(p: Model47Point) -> Model47Point:
    return Model47Point(-p.mv)


def omega_matrix(model, k1: float, k2: float, k3: float) -> np.ndarray:
    """Skew-symmetric system matrix of the vertical momentum equation."""
    model = _as_model(model)
    if model is Model.M36:
        return np.array([[0.0, k1, k2], [-k1, 0.0, k3], [-k2, -k3, 0.0]])
    return np.array(
        [
            [0.0, k1, k2, k3],
            [-k1, 0.0, 0.0, 0.0],
            [-k2, 0.0, 0.0, 0.0],
            [-k3, 0.0, 0.0, 0.0],
        ]
    )


# ---------------------------------------------------------------------------
# fiber solutions


def fiber_solution_36(kvec, cvec, t: float) -> np.ndarray:
    """Momentum h(t) solving dh = -Omega h in the eigenspace-adapted basis.

    ``cvec`` holds the three expansion constants against the adapted
    orthonormal basis (v1, v2, v3) with v3 spanning ker(Omega).  For a zero
    curvature vector the momentum is constant and the basis is the standard
    one.
    """
    k1, k2, k3 = (float(v) for v in kvec)
    c1, c2, c3 = (float(v) for v in cvec)
    kk = np.hypot(np.hypot(k1, k2), k3)
    if kk == 0.0:
        return np.array([c1, c2, c3])
    perp = k2 * k2 + k3 * k3
    if perp > 1e-24:
        den = np.sqrt(perp)
        v1 = np.array([-k1 * k3, k1 * k2, perp]) / (kk * den)
        v2 = np.array([-k2, -k3, 0.0]) / den
        v3 = np.array([k3, -k2, k1]) / kk
    else:
        # kernel along e3 up to sign; any orthonormal pair of the
        # complement with Omega v1 = -K v2 serves as (v1, v2)
        v3 = np.array([k3, -k2, k1]) / kk
        v1 = np.array([1.0, 0.0, 0.0])
        omega = omega_matrix(Model.M36, k1, k2, k3)
        v2 = -(omega @ v1) / kk
    s, c = np.sin(kk * t), np.cos(kk * t)
    return (c1 * c - c2 * s) * v1 + (c1 * s + c2 * c) * v2 + c3 * v3


def fiber_solution_47(kvec, cvec, t: float) -> np.ndarray:
    """Momentum (h0, hbar)(t) of the 4-dimensional model.

    ``cvec`` holds (C1, C2, C3, C4): the first two drive the oscillation
    between the axis coordinate and the curvature direction, the last two
    weight the kernel combination C3 (-k3, 0, k1) + C4 (-k2, k1, 0), which is
    the constant drift of hbar.  For zero curvature the momentum is the
    constant (C1, C2, C3, C4).
    """
    k1, k2, k3 = (float(v) for v in kvec)
    c1, c2, c3, c4 = (float(v) for v in cvec)
    kk = np.hypot(np.hypot(k1, k2), k3)
    if kk == 0.0:
        return np.array([c1, c2, c3, c4])
    r1 = np.array([k1, k2, k3]) / kk
    drift = c3 * np.array([-k3, 0.0, k1]) + c4 * np.array([-k2, k1, 0.0])
    s, c = np.sin(kk * t), np.cos(kk * t)
    h0 = kk * (c2 * c - c1 * s)
    hbar = kk * (c2 * s + c1 * c) * r1 + drift
    return np.concatenate([[h0], hbar])


# ---------------------------------------------------------------------------
# representative geodesics


@dataclass(frozen=True)
class GeodesicParams36:
    """Constants of a representative geodesic of the 6-dimensional model.

    Arc-length parameterization corresponds to the level set D^2 + C3^2 = 1;
    the level defect is not enforced here because the moduli solver needs to
    evaluate off-level candidates, but every solver output satisfies it.
    K = 0 selects the straight-line branch.
    """

    K: float
    D: float
    C3: float
    t_final: float

    def __post_init__(self):
        if self.K < 0 or self.D < 0:
            raise ValueError("K and D must be non-negative")
        if not self.t_final > 0:
            raise ValueError("t_final must be positive")

    @property
    def level(self) -> float:
        return self.D * self.D + self.C3 * self.C3


@dataclass(frozen=True)
class GeodesicParams47:
    """Constants of a representative geodesic of the 7-dimensional model.

    Arc length corresponds to K^2 (C1^2 + C2^2) + C^2 = 1.  K = 0 selects
    the straight-line branch along the drift axis.
    """

    K: float
    C1: float
    C2: float
    C: float
    t_final: float

    def __post_init__(self):
        if self.K < 0:
            raise ValueError("K must be non-negative")
        if not self.t_final > 0:
            raise ValueError("t_final must be positive")

    @property
    def level(self) -> float:
        return self.K * self.K * (self.C1 * self.C1 + self.C2 * self.C2) + self.C * self.C


def _geodesic_raw_36(K: float, D: float, C3: float, t: float) -> np.ndarray:
    """Coefficients (x1, x2, x3, z12, z13, z23) of the representative curve."""
    if K == 0.0:
        return np.array([0.0, D * t, C3 * t, 0.0, 0.0, 0.0])
    s, c = np.sin(K * t), np.cos(K * t)
    kt = K * t
    return np.array(
        [
            D / K * (1.0 - c),
            D / K * s,
            C3 * t,
            -D * D / (2.0 * K * K) * (kt - s),
            C3 * D / (2.0 * K * K) * (kt - 2.0 * s + kt * c),
            C3 * D / (2.0 * K * K) * (2.0 - kt * s - 2.0 * c),
        ]
    )


def _geodesic_raw_47(K: float, C1: float, C2: float, C: float, t: float) -> np.ndarray:
    """Coefficients (x, l1, l2, l3, y12, y13, y14) of the representative curve."""
    if K == 0.0:
        return np.array([0.0, 0.0, C * t, 0.0, 0.0, 0.0, 0.0])
    s, c = np.sin(K * t), np.cos(K * t)
    kt = K * t
    return np.array(
        [
            C1 * c + C2 * s - C1,
            C1 * s - C2 * c + C2,
            C * t,
            0.0,
            0.5 * (C1 * C1 + C2 * C2) * (kt - s),
            C
            / (2.0 * K)
            * ((2.0 * C1 - C2 * kt) * s - (C1 * kt + 2.0 * C2) * c + 2.0 * C2 - C1 * kt),
            0.0,
        ]
    )


def representative_geodesic_36(params: GeodesicParams36, t: float) -> Model36Point:
    """Closed-form moduli representative at time t, starting from the origin."""
    v = _geodesic_raw_36(params.K, params.D, params.C3, t)
    return Model36Point.from_parts(v[:3], v[3:])


def representative_geodesic_47(params: GeodesicParams47, t: float) -> Model47Point:
    v = _geodesic_raw_47(params.K, params.C1, params.C2, params.C, t)
    return Model47Point.from_parts(v[0], v[1:4], v[4:])


# ---------------------------------------------------------------------------
# invariants


@dataclass(frozen=True)
class Invariants36:
    """Moduli coordinates of a 6-dimensional model point."""

    xx: float
    zz: float
    xz_star: float

    def as_tuple(self):
        return (self.xx, self.zz, self.xz_star)


@dataclass(frozen=True)
class Invariants47:
    """Moduli coordinates of a 7-dimensional model point."""

    x: float
    ll: float
    ly_e1: float
    yy: float

    def as_tuple(self):
        return (self.x, self.ll, self.ly_e1, self.yy)


def invariants_36(point) -> Invariants36:
    """Rotation invariants (x.x, z.z, (x^z)*), evaluated by algebra operations."""
    mv = point.mv if isinstance(point, Model36Point) else point
    x = grade_project(mv, 1)
    z = grade_project(mv, 2)
    xx = inner_product(x, x).scalar_part
    zz = inner_product(z, z).scalar_part
    xzs = geometric_product(outer_product(x, z), pseudoscalar(3)).scalar_part
    return Invariants36(xx, zz, xzs)


def invariants_47(point) -> Invariants47:
    """Invariants (x, l.l, (l.y) e1, y.y) of the symmetry action fixing e1."""
    mv = point.mv if isinstance(point, Model47Point) else point
    g1 = grade_project(mv, 1)
    xc = g1.coeff(_E1_4)
    lvec = g1 - Multivector.blade(4, _E1_4, xc)
    y = grade_project(mv, 2)
    ll = inner_product(lvec, lvec).scalar_part
    yy = inner_product(y, y).scalar_part
    lye1 = geometric_product(inner_product(lvec, y), Multivector.basis_vector(4, 1)).scalar_part
    return Invariants47(xc, ll, lye1, yy)


def invariants(model, point):
    model = _as_model(model)
    if model is Model.M36:
        return invariants_36(point)
    return invariants_47(point)


# ---------------------------------------------------------------------------
# symmetry action


def so3_action(model, rotor: Rotor, point, tol: float = 1e-9):
    """Apply the rotation symmetry to a group element.

    For the 6-dimensional model the rotor acts on both grade parts by
    conjugation.  For the 7-dimensional model the rotor must fix e1 (the
    symmetry only rotates the involutive complement); a rotor moving e1
    raises RotorDomain.
    """
    model = _as_model(model)
    if model is Model.M36:
        if point.mv.dim != 3:
            raise ValueError("model/point mismatch")
        return Model36Point(sandwich(rotor, point.mv))
    e1 = Multivector.basis_vector(4, 1)
    moved = sandwich(rotor, e1)
    if float(np.max(np.abs(moved.coeffs - e1.coeffs))) > tol:
        raise RotorDomain("rotor moves e1; the model symmetry fixes the first axis")
    return Model47Point(sandwich(rotor, point.mv))


# ---------------------------------------------------------------------------
# printed closed-form invariants (audit surface)


def invariant_closed_forms(model, params, t: float):
    """Closed-form invariant expressions as printed in the source material.

    Kept verbatim for auditing against the algebra-evaluated invariants;
    several terms are suspected transcription artifacts and the algebra path
    is canonical.  See the printed-formula audit in the test suite.
    """
    model = _as_model(model)
    if model is Model.M36:
        K, D, C3 = params.K, params.D, params.C3
        s, c = np.sin(K * t), np.cos(K * t)
        xx = -2.0 * D * D / (K * K) * (c - 1.0) + C3 * C3 * t * t
        zz = (
            -(D * D)
            / (4.0 * K**4)
            * (
                (4.0 * C3 * C3 * K * K - 4.0 * C3 * C3 - D * D) * c * c
                + 2.0 * K * C3 * C3 * (2.0 * t * (K - 1.0) * s + t * t * K - 4.0) * c
                - 2.0 * K * t * (4.0 * C3 * C3 + D * D) * s
                + t * t * (2.0 * C3 * C3 + D * D) * K * K
                + D * D
                + 8.0 * C3 * C3
            )
        )
        xzs = (
            D
            * D
            * C3
            / (2.0 * K**3)
            * (
                (-2.0 * K + 2.0) * c * c
                + (2.0 * K + 2.0) * c
                + K * K * t * t
                + K * t * s
                - 4.0
            )
        )
        return (xx, zz, xzs)
    K, C1, C2, C = params.K, params.C1, params.C2, params.C
    s, c = np.sin(K * t), np.cos(K * t)
    kt = K * t
    x = C1 * (c - 1.0) + C2 * s
    ll = (C1 * s + C2 * (1.0 - c)) ** 2 + (C * t) ** 2
    bracket = C1 * (2.0 * s - kt * c - kt) + C2 * (2.0 - 2.0 * c - kt * s)
    lye1 = 0.5 * (
        (C1 * C1 + C2 * C2) * (C1 * s + C2 * (1.0 - c)) * (kt - c)
        + C * C / K * t * bracket
    )
    yy = 0.25 * (
        (C1 * C1 + C2 * C2) ** 2 * (kt - c) ** 2 + C * C / (K * K) * bracket**2
    )
    return (x, ll, lye1, yy)
