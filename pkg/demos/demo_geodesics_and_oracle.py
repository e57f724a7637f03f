"""Closed-form geodesics against the RK4 oracle.

The representative geodesics of both models come in closed form.  An
independent check integrates the coupled base and momentum systems with
classical RK4 from nothing but the structure constants, then compares
endpoints.  The momentum stays on the unit sphere (arc-length property) and
the integrator shows fourth-order convergence.
"""

import numpy as np

from carnotga import (
    GeodesicParams36,
    GeodesicParams47,
    Model,
    aligned_fiber_inputs,
    fiber_solution_36,
    representative_geodesic_36,
    representative_geodesic_47,
    rk4_endpoint,
)

p36 = GeodesicParams36(K=1.2, D=0.6, C3=0.8, t_final=6.0)
p47 = GeodesicParams47(K=0.9, C1=0.5, C2=-0.4, C=np.sqrt(1 - 0.81 * 0.41), t_final=6.0)

print("== model 36: closed form vs RK4 ==")
kv, cv = aligned_fiber_inputs(Model.M36, p36)
for steps in (64, 256, 1024, 4096):
    got = rk4_endpoint(Model.M36, kv, cv, p36.t_final, steps)
    want = representative_geodesic_36(p36, p36.t_final)
    err = np.max(np.abs(got.mv.coeffs - want.mv.coeffs))
    print(f"  steps {steps:5d}: endpoint gap {err:.3e}")

print("\n== model 47: closed form vs RK4 ==")
kv, cv = aligned_fiber_inputs(Model.M47, p47)
for steps in (64, 256, 1024, 4096):
    got = rk4_endpoint(Model.M47, kv, cv, p47.t_final, steps)
    want = representative_geodesic_47(p47, p47.t_final)
    err = np.max(np.abs(got.mv.coeffs - want.mv.coeffs))
    print(f"  steps {steps:5d}: endpoint gap {err:.3e}")

print("\n== arc length: the momentum is a unit vector for all time ==")
k = np.array([0.4, -0.8, 0.3])
c = np.array([0.6, -0.64, 0.48])  # unit combination
for t in (0.0, 1.5, 4.0, 9.0):
    h = fiber_solution_36(k, c, t)
    print(f"  |h({t:3.1f})| = {np.linalg.norm(h):.12f}")

print("\n== unit speed of the curve itself (finite differences) ==")
eps = 1e-6
for t in (1.0, 3.0, 5.0):
    a = representative_geodesic_36(p36, t - eps).x_coords
    b = representative_geodesic_36(p36, t + eps).x_coords
    print(f"  |dx/dt| at t={t}: {np.linalg.norm((b - a) / (2 * eps)):.9f}")
