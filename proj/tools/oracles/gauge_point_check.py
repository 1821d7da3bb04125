"""Independent recomputation of the n=1 gauge reference point.

Builds eta, d_eta, G, G_inv, Phi symbolically at (w, p, q) = (0, -2, 1) for
the factor Omega = 1/p, then derives zeta, xi', eta', Phi', d_eta', G' from
first principles and prints every block that the C++ tests freeze.
"""

import sympy as sp

w, p, q = sp.symbols("w p q", real=True)
coords = [w, p, q]

eta = sp.Matrix([1, 0, p])  # dw + p dq
D = sp.Matrix([[0, 0, 0], [0, 0, sp.Rational(1, 2)], [0, -sp.Rational(1, 2), 0]])
G = eta * eta.T - sp.Matrix([[0, 0, 0], [0, 0, sp.Rational(1, 2)], [0, sp.Rational(1, 2), 0]])
G_inv = G.inv()
xi = sp.Matrix([1, 0, 0])
# Phi: kills xi, +1 on P = d/dp, -1 on Q = d/dq - p d/dw
P_vec = sp.Matrix([0, 1, 0])
Q_vec = sp.Matrix([-p, 0, 1])
basis = sp.Matrix.hstack(xi, P_vec, Q_vec)
Phi = basis * sp.diag(0, 1, -1) * basis.inv()

omega = 1 / p
d_omega = sp.Matrix([sp.diff(omega, c) for c in coords])

zeta = -(1 / (2 * omega)) * Phi * (G_inv * d_omega)
xi_prime = (xi + zeta) / omega
eta_prime = omega * eta
phi_prime = Phi + (1 / (2 * omega)) * (G_inv * d_omega - d_omega[0] * xi) * eta.T
d_eta_prime = omega * D + sp.Rational(1, 2) * (d_omega * eta.T - eta * d_omega.T)
g_prime = eta_prime * eta_prime.T - phi_prime.T * d_eta_prime

z = G * zeta
closed = omega * (G - (eta * z.T + z * eta.T)) + omega * (
    omega - 1 + (zeta.T * G * zeta)[0]
) * (eta * eta.T)

at = {w: 0, p: -2, q: 1}
for name, m in [
    ("omega", sp.Matrix([omega])),
    ("d_omega", d_omega),
    ("zeta", zeta),
    ("xi_prime", xi_prime),
    ("eta_prime", eta_prime),
    ("phi_prime", phi_prime),
    ("d_eta_prime", d_eta_prime),
    ("g_prime", g_prime),
    ("closed_form", closed),
    ("closed_minus_direct", sp.simplify(closed - g_prime)),
]:
    print(name, sp.nsimplify(m.subs(at)).tolist())

# identity d_omega = 2*omega*d_eta(zeta, .) + xi(omega)*eta, as a covector
identity = sp.simplify(2 * omega * (D.T * zeta) + d_omega[0] * eta - d_omega)
print("d_omega_identity_residual", identity.subs(at).T.tolist())

# zeta closed forms for the three named factors
for label, om in [("constant", sp.Integer(3)), ("inv_p1", 1 / p), ("exp_q1", sp.exp(q))]:
    dom = sp.Matrix([sp.diff(om, c) for c in coords])
    zz = sp.simplify(-(1 / (2 * om)) * Phi * (G_inv * dom))
    print("zeta", label, zz.T.tolist())
