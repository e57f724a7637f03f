"""Tour of the dense geometric algebra kernel.

Runs through the product zoo on G_3: geometric, outer and inner products,
duality against the pseudoscalar, the classical cross product recovered from
the wedge, and rotors acting by conjugation.
"""

import numpy as np

from carnotga import (
    Multivector,
    dual,
    geometric_product,
    inner_product,
    normalize,
    outer_product,
    pseudoscalar,
    reverse,
    rotor_between_vectors,
    sandwich,
)

e1 = Multivector.basis_vector(3, 1)
e2 = Multivector.basis_vector(3, 2)
e3 = Multivector.basis_vector(3, 3)

print("== products on basis vectors ==")
print("e1 e1   =", geometric_product(e1, e1))
print("e1 e2   =", geometric_product(e1, e2))
print("e1 . e2 =", inner_product(e1, e2))
print("e1 ^ e2 =", outer_product(e1, e2))

print("\n== the geometric product splits on vectors ==")
u = Multivector.from_vector(3, [0.5, -1.0, 2.0])
v = Multivector.from_vector(3, [1.5, 0.25, -0.75])
uv = geometric_product(u, v)
print("u v         =", uv)
print("u.v + u^v   =", inner_product(u, v) + outer_product(u, v))

print("\n== duality: multiplication by the pseudoscalar ==")
I = pseudoscalar(3)
print("I           =", I)
print("I I         =", geometric_product(I, I), "(negative unit scalar in G_3)")
b = outer_product(u, v)
print("u ^ v       =", b)
print("(u ^ v)*    =", dual(b), "(the plane's normal direction)")

print("\n== cross product from the wedge ==")
got = -dual(outer_product(u, v))
want = np.cross(u.vector_coords(), v.vector_coords())
print("-(u ^ v)*   =", got.vector_coords())
print("numpy cross =", want)

print("\n== rotors ==")
x = normalize(Multivector.from_vector(3, [1.0, 1.0, 0.0]))
y = normalize(Multivector.from_vector(3, [0.0, 1.0, 1.0]))
rot = rotor_between_vectors(x, y)
print("rotor x->y     =", rot.mv)
print("R x ~R         =", sandwich(rot, x))
print("target y       =", y)
print("R ~R           =", geometric_product(rot.mv, reverse(rot.mv)))
print("rotation matrix:\n", np.round(rot.matrix(), 6))
