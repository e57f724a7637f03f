"""Numerical inversion of the moduli maps, plus the independent RK4 oracle.

Given target invariants, the solver searches for representative-geodesic
constants and an arrival time whose endpoint invariants match the target
and whose constants sit on the arc-length level set.  The nonlinear system
is square (4 equations for the 6-dimensional model, 5 for the other) and
smooth, so a damped Newton iteration from quasi-random multistart points
over a bounded box is enough; no global solver is used.

The RK4 integrator at the bottom solves the coupled base and momentum
systems directly from the structure constants.  It never enters the solve
loop; it exists to validate the closed forms against an independent route.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import qmc

from .errors import InfeasibleTarget
from .ga import Multivector, geometric_product, grade_project, inner_product, outer_product, pseudoscalar
from .models import (
    GeodesicParams36,
    GeodesicParams47,
    Model,
    Model36Point,
    Model47Point,
    _as_model,
    _geodesic_raw_36,
    _geodesic_raw_47,
    fiber_solution_36,
    fiber_solution_47,
    omega_matrix,
)

_BIG = 1e12

_E1 = Multivector.basis_vector(4, 1)
_I3 = pseudoscalar(3)


def _invariants_raw_36(v: np.ndarray) -> np.ndarray:
    c = np.zeros(8)
    c[1], c[2], c[4] = v[:3]
    c[3], c[5], c[6] = v[3:]
    q = Multivector(3, c)
    x = grade_project(q, 1)
    z = grade_project(q, 2)
    return np.array(
        [
            inner_product(x, x).scalar_part,
            inner_product(z, z).scalar_part,
            geometric_product(outer_product(x, z), _I3).scalar_part,
        ]
    )


def _invariants_raw_47(v: np.ndarray) -> np.ndarray:
    c = np.zeros(16)
    c[1], c[2], c[4], c[8] = v[:4]
    c[3], c[5], c[9] = v[4:]
    q = Multivector(4, c)
    xc = c[1]
    lvec = grade_project(q, 1) - Multivector.blade(4, "e1", xc)
    y = grade_project(q, 2)
    return np.array(
        [
            xc,
            inner_product(lvec, lvec).scalar_part,
            geometric_product(inner_product(lvec, y), _E1).scalar_part,
            inner_product(y, y).scalar_part,
        ]
    )


def _residual_raw(model: Model, u: np.ndarray, target: np.ndarray) -> np.ndarray:
    """Invariant mismatch plus level-set defect at a raw parameter vector."""
    if model is Model.M36:
        K, D, C3, t = u
        if abs(K) < 1e-10:
            return np.full(4, _BIG)
        vals = _geodesic_raw_36(K, D, C3, t)
        if not np.all(np.isfinite(vals)):
            return np.full(4, _BIG)
        inv = _invariants_raw_36(vals)
        return np.concatenate([inv - target, [D * D + C3 * C3 - 1.0]])
    K, C1, C2, C, t = u
    if abs(K) < 1e-10:
        return np.full(5, _BIG)
    vals = _geodesic_raw_47(K, C1, C2, C, t)
    if not np.all(np.isfinite(vals)):
        return np.full(5, _BIG)
    inv = _invariants_raw_47(vals)
    return np.concatenate([inv - target, [K * K * (C1 * C1 + C2 * C2) + C * C - 1.0]])


def residual(model, params, t: float, target) -> np.ndarray:
    """Public residual: invariant mismatch of the representative geodesic at
    time t against the target, with the level-set defect appended."""
    model = _as_model(model)
    target = np.asarray(target, float)
    if model is Model.M36:
        u = np.array([params.K, params.D, params.C3, t])
        if target.shape != (3,):
            raise ValueError("target for this model has 3 invariants")
    else:
        u = np.array([params.K, params.C1, params.C2, params.C, t])
        if target.shape != (4,):
            raise ValueError("target for this model has 4 invariants")
    return _residual_raw(model, u, target)


def _line_search(f, u, fu, step):
    """Halving line search on the residual norm, down to 2^-20."""
    base = np.linalg.norm(fu)
    lam = 1.0
    while lam >= 2.0**-20:
        cand = u + lam * step
        fc = f(cand)
        if np.linalg.norm(fc) < (1.0 - 1e-4 * lam) * base:
            return cand, fc, True
        lam *= 0.5
    return u, fu, False


def _newton(f, u0: np.ndarray, max_iter: int = 50, tol: float = 1e-10):
    """Damped Newton with central-difference Jacobian and halving line search.

    Near folds of the invariant map the Jacobian turns singular and the pure
    Newton direction stalls; a Levenberg-style regularized step is tried
    before giving up on an iteration.
    """
    u = np.asarray(u0, float)
    fu = f(u)
    for _ in range(max_iter):
        if np.max(np.abs(fu)) < tol:
            return u, fu, True
        d = len(u)
        jac = np.empty((d, d))
        for j in range(d):
            h = 1e-7 * max(1.0, abs(u[j]))
            up = u.copy()
            up[j] += h
            um = u.copy()
            um[j] -= h
            jac[:, j] = (f(up) - f(um)) / (2.0 * h)
        try:
            step = np.linalg.solve(jac, -fu)
        except np.linalg.LinAlgError:
            step, *_ = np.linalg.lstsq(jac, -fu, rcond=None)
        if not np.all(np.isfinite(step)):
            return u, fu, False
        u, fu, moved = _line_search(f, u, fu, step)
        if not moved:
            jtj = jac.T @ jac
            jtf = jac.T @ fu
            diag = np.diag(np.maximum(np.diag(jtj), 1e-12))
            for mu in (1e-8, 1e-4, 1e-2, 1.0, 1e2):
                try:
                    step = np.linalg.solve(jtj + mu * diag, -jtf)
                except np.linalg.LinAlgError:
                    continue
                if not np.all(np.isfinite(step)):
                    continue
                u, fu, moved = _line_search(f, u, fu, step)
                if moved:
                    break
        if not moved:
            break
    return u, fu, bool(np.max(np.abs(fu)) < tol)


@dataclass
class SolveRequest:
    """Inputs of a moduli solve.

    ``target`` is the invariant tuple of the steering target; bounds confine
    the frequency K to (0, k_max] and the arrival time to (0, t_max].
    ``tolerance`` bounds the forward-checked residual of accepted roots.
    ``early_stop`` optionally ends the multistart scan once that many
    distinct roots were accepted (a speed knob; results stay deterministic).
    """

    model: Model
    target: tuple
    k_max: float = 10.0
    t_max: float = 20.0
    tolerance: float = 1e-9
    max_starts: int = 64
    seed: int = 0
    early_stop: int | None = None
    dedup_radius: float = 1e-6

    def __post_init__(self):
        self.model = _as_model(self.model)
        want = 3 if self.model is Model.M36 else 4
        if len(self.target) != want:
            raise ValueError(f"model {self.model.value} takes {want} invariants")
        if self.k_max <= 0 or self.t_max <= 0 or self.tolerance <= 0:
            raise ValueError("bounds and tolerance must be positive")
        if self.max_starts < 1:
            raise ValueError("max_starts must be at least 1")


@dataclass(frozen=True)
class SolveSolution:
    params: object
    residual_norm: float

    @property
    def t_final(self) -> float:
        return self.params.t_final


@dataclass(frozen=True)
class SolveResult:
    solutions: tuple
    starts_attempted: int
    converged: int


def _starts(req: SolveRequest) -> np.ndarray:
    d = 3 if req.model is Model.M36 else 4
    sampler = qmc.LatinHypercube(d=d, seed=req.seed)
    raw = sampler.random(req.max_starts)
    out = []
    # unit-speed horizontal curves cannot beat the straight line, so the
    # arrival time is at least the horizontal displacement of the target
    if req.model is Model.M36:
        t_floor = np.sqrt(max(req.target[0], 0.0))
    else:
        t_floor = np.sqrt(max(req.target[0] ** 2 + req.target[1], 0.0))
    t_lo = min(max(0.2, 0.999 * t_floor), 0.9 * req.t_max)
    k0 = 0.05 + raw[:, 0] * (req.k_max - 0.05)
    t0 = t_lo + raw[:, 1] * (req.t_max - t_lo)
    if req.model is Model.M36:
        theta = 0.1 + raw[:, 2] * (np.pi - 0.2)
        for k, t, th in zip(k0, t0, theta):
            out.append(np.array([k, np.sin(th), np.cos(th), t]))
    else:
        alpha = 0.1 + raw[:, 2] * (np.pi - 0.2)
        psi = raw[:, 3] * 2.0 * np.pi
        for k, t, al, ps in zip(k0, t0, alpha, psi):
            r = np.sin(al) / k
            out.append(np.array([k, r * np.cos(ps), r * np.sin(ps), np.cos(al), t]))
    return out


def _canonicalize(model: Model, u: np.ndarray) -> np.ndarray:
    """Fold the documented sign symmetries to a canonical representative.

    36: D -> |D| (a half-turn about the drift axis gives the same moduli
    curve); a joint flip of (K, C3) likewise.  47: a joint flip of (K, C2),
    and C -> |C| (flipping the drift direction is a rotation of the orbit).
    """
    u = u.copy()
    if model is Model.M36:
        if u[0] < 0:
            u[0], u[2] = -u[0], -u[2]
        u[1] = abs(u[1])
    else:
        if u[0] < 0:
            u[0], u[2] = -u[0], -u[2]
        u[3] = abs(u[3])
    return u


def _orbit_signature(model: Model, u: np.ndarray) -> np.ndarray:
    """Invariant curve fingerprint used to identify orbit-equivalent roots."""
    t = u[-1]
    sig = [t]
    for frac in (0.25, 0.5, 0.75, 1.0):
        if model is Model.M36:
            sig.extend(_invariants_raw_36(_geodesic_raw_36(u[0], u[1], u[2], frac * t)))
        else:
            sig.extend(_invariants_raw_47(_geodesic_raw_47(u[0], u[1], u[2], u[3], frac * t)))
    return np.array(sig)


def solve(req: SolveRequest) -> SolveResult:
    """Multistart damped Newton over the bounded parameter box.

    Accepted roots are canonicalized, forward-checked against the target
    (independently of the Newton residual), deduplicated both by parameter
    distance and by invariant-curve signature, and sorted by arrival time.
    Raises InfeasibleTarget when no start converges at all.
    """
    target = np.asarray(req.target, float)

    def f(u):
        return _residual_raw(req.model, u, target)

    roots = []
    signatures = []
    converged = 0
    attempted = 0
    for u0 in _starts(req):
        attempted += 1
        u, fu, ok = _newton(f, u0)
        if not ok:
            continue
        converged += 1
        u = _canonicalize(req.model, u)
        k, t = u[0], u[-1]
        if not (0.0 < k <= req.k_max and 0.0 < t <= req.t_max):
            continue
        res = f(u)
        rnorm = float(np.max(np.abs(res)))
        if rnorm > req.tolerance:
            continue
        if any(np.max(np.abs(u - r[0])) <= req.dedup_radius for r in roots):
            continue
        sig = _orbit_signature(req.model, u)
        scale = max(1.0, float(np.max(np.abs(sig))))
        if any(np.max(np.abs(sig - s)) <= 1e-6 * scale for s in signatures):
            continue
        roots.append((u, rnorm))
        signatures.append(sig)
        if req.early_stop is not None and len(roots) >= req.early_stop:
            break

    if converged == 0:
        raise InfeasibleTarget(
            "no start converged; the target may be outside the sampled "
            "reachable set or the bounds too tight"
        )

    roots.sort(key=lambda r: r[0][-1])
    sols = []
    for u, rnorm in roots:
        u = [float(v) for v in u]
        if req.model is Model.M36:
            params = GeodesicParams36(K=u[0], D=u[1], C3=u[2], t_final=u[3])
        else:
            params = GeodesicParams47(K=u[0], C1=u[1], C2=u[2], C=u[3], t_final=u[4])
        sols.append(SolveSolution(params=params, residual_norm=rnorm))
    return SolveResult(solutions=tuple(sols), starts_attempted=attempted, converged=converged)


# ---------------------------------------------------------------------------
# RK4 oracle


def rk4_endpoint(model, kvec, constants, t_final: float, steps: int):
    """Endpoint of the coupled base and momentum system, integrated by
    classical fixed-step RK4 from the origin.

    ``kvec`` holds the three constant vertical momenta; ``constants`` are
    the fiber expansion constants handed to the fiber solution at t = 0.
    This path never uses the closed-form trigonometric solutions, so it is
    a genuine cross-check for them.
    """
    model = _as_model(model)
    if steps < 1:
        raise ValueError("steps must be at least 1")
    kvec = np.asarray(kvec, float)
    dt = t_final / steps
    if model is Model.M36:
        omega = omega_matrix(model, *kvec)
        h0 = fiber_solution_36(kvec, constants, 0.0)
        state = np.zeros(9)
        state[6:] = h0

        def rhs(s):
            x = s[0:3]
            h = s[6:9]
            dz = 0.5 * np.array(
                [x[0] * h[1] - x[1] * h[0], x[0] * h[2] - x[2] * h[0], x[1] * h[2] - x[2] * h[1]]
            )
            return np.concatenate([h, dz, -omega @ h])

        for _ in range(steps):
            k1 = rhs(state)
            k2 = rhs(state + 0.5 * dt * k1)
            k3 = rhs(state + 0.5 * dt * k2)
            k4 = rhs(state + dt * k3)
            state = state + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        return Model36Point.from_parts(state[0:3], state[3:6])

    omega = omega_matrix(model, *kvec)
    h0 = fiber_solution_47(kvec, constants, 0.0)
    state = np.zeros(11)
    state[7:] = h0

    def rhs47(s):
        x = s[0]
        l = s[1:4]
        h = s[7:11]
        dy = 0.5 * (x * h[1:4] - h[0] * l)
        return np.concatenate([[h[0]], h[1:4], dy, -omega @ h])

    for _ in range(steps):
        k1 = rhs47(state)
        k2 = rhs47(state + 0.5 * dt * k1)
        k3 = rhs47(state + 0.5 * dt * k2)
        k4 = rhs47(state + dt * k3)
        state = state + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return Model47Point.from_parts(state[0], state[1:4], state[4:7])


def aligned_fiber_inputs(model, params):
    """Map representative-geodesic constants to the (kvec, constants) pair
    whose momentum solution reproduces the representative exactly.

    For the 6-dimensional model the aligned curvature vector is (-K, 0, 0)
    with constants (0, -D, -C3); for the other it is (K, 0, 0) with
    constants (C1, C2, 0, C/K).  Used by the oracle-equivalence tests.
    """
    model = _as_model(model)
    if model is Model.M36:
        if params.K == 0.0:
            return np.zeros(3), np.array([0.0, params.D, params.C3])
        return np.array([-params.K, 0.0, 0.0]), np.array([0.0, -params.D, -params.C3])
    if params.K == 0.0:
        return np.zeros(3), np.array([0.0, 0.0, params.C, 0.0])
    return (
        np.array([params.K, 0.0, 0.0]),
        np.array([params.C1, params.C2, 0.0, params.C / params.K]),
    )
