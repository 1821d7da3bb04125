"""Independent check that the graph embedding w = f(q), p = -grad f pulls the
phase-space metric back to Hess f, and that eta vanishes on graph tangents.
Verified symbolically for a generic 2-variable potential f(x, y).
"""

import sympy as sp

x, y = sp.symbols("x y", real=True)
f = sp.Function("f")(x, y)

# embedding (w, p1, p2, q1, q2) = (f, -f_x, -f_y, x, y)
emb = sp.Matrix([f, -sp.diff(f, x), -sp.diff(f, y), x, y])
J = emb.jacobian([x, y])

p1, p2 = -sp.diff(f, x), -sp.diff(f, y)
eta = sp.Matrix([1, 0, 0, p1, p2])
print("eta_on_tangents", sp.simplify(eta.T * J).tolist())

half = sp.Rational(1, 2)
S = sp.zeros(5, 5)
S[1, 3] = S[3, 1] = half
S[2, 4] = S[4, 2] = half
G = eta * eta.T - S
pullback = sp.simplify(J.T * G * J)
hess = sp.hessian(f, (x, y))
print("pullback_minus_hessian", sp.simplify(pullback - hess).tolist())

# quadratic spot value used by the tests
q = sp.Matrix([1, 2])
fq = (q[0] ** 2 + q[1] ** 2) / 2
print("quadratic_w", fq, "p", [-1, -2])

# ideal gas with c_v = R = 1 in energy form: u = e^s/v at (s, v) = (0, 1)
s_, v_ = sp.symbols("s v", positive=True)
E = sp.exp(s_) / v_
print("toygas_w", E.subs({s_: 0, v_: 1}),
      "p", [sp.simplify(-sp.diff(E, s_).subs({s_: 0, v_: 1})),
            sp.simplify(-sp.diff(E, v_).subs({s_: 0, v_: 1}))])
