"""Independent curvature and connection references.

  * Christoffel symbols and scalar curvature from first principles (sympy),
  * round unit 2-sphere -> R = 2,
  * log-type entropy Hessian metrics are flat,
  * van der Waals det Hess(s) along v = v_c and the divergence of R,
  * nabla xi = -Phi for the n = 1 phase-space metric.
"""

import sympy as sp


def christoffel(g, coords):
    m = len(coords)
    gi = g.inv()
    gamma = [[[sp.S(0)] * m for _ in range(m)] for _ in range(m)]
    for k in range(m):
        for i in range(m):
            for j in range(m):
                expr = sum(
                    gi[k, l]
                    * (sp.diff(g[l, j], coords[i]) + sp.diff(g[l, i], coords[j])
                       - sp.diff(g[i, j], coords[l]))
                    for l in range(m)
                )
                gamma[k][i][j] = sp.simplify(expr / 2)
    return gamma


def scalar_curvature(g, coords):
    m = len(coords)
    gi = g.inv()
    gamma = christoffel(g, coords)
    R = sp.S(0)
    for s_ in range(m):
        for n_ in range(m):
            ric = sp.S(0)
            for r in range(m):
                term = sp.diff(gamma[r][n_][s_], coords[r]) - sp.diff(
                    gamma[r][r][s_], coords[n_]
                )
                for l in range(m):
                    term += (
                        gamma[r][r][l] * gamma[l][n_][s_]
                        - gamma[r][n_][l] * gamma[l][r][s_]
                    )
            # note index order: Ricci_{sn} = R^r_{s r n}
                ric += term
            R += gi[s_, n_] * ric
    return sp.simplify(R)


theta, phi_ = sp.symbols("theta phi", positive=True)
sphere = sp.diag(1, sp.sin(theta) ** 2)
print("sphere_R", scalar_curvature(sphere, [theta, phi_]))

u, v = sp.symbols("u v", positive=True)
cv, Rg = sp.symbols("c_v R_g", positive=True)
ideal = sp.hessian(cv * sp.log(u) + Rg * sp.log(v), (u, v))
print("ideal_gamma_uuu", christoffel(sp.diag(-1 / u**2, -1 / v**2), [u, v])[0][0][0])
print("ideal_R", scalar_curvature(ideal, [u, v]))

a, b = sp.symbols("a b", positive=True)
svdw = cv * sp.log(u + a / v) + sp.log(v - b)
gvdw = sp.hessian(svdw, (u, v))
det = sp.simplify(gvdw.det())
T = (u + a / v) / cv
det_on_isochore = sp.simplify(det.subs(u, cv * T * 1 - a / v).subs(v, 3 * b))
Tc = sp.Rational(8, 27) * a / b
print("vdw_det_on_critical_isochore", sp.factor(sp.simplify(det_on_isochore)))
print("vdw_det_at_Tc", sp.simplify(det_on_isochore.subs(T, Tc)))

# numerical scan ratio for a=3, b=1/3, cv=3/2
params = {a: 3, b: sp.Rational(1, 3), cv: sp.Rational(3, 2)}
Rvdw = scalar_curvature(gvdw.subs(params), [u, v])
vc = 1
Tc_num = sp.Rational(8, 3)
uv = lambda TT: sp.Rational(3, 2) * TT - 3

def R_at(TT):
    return float(Rvdw.subs({u: uv(TT), v: vc}))

first = R_at(sp.Rational(3, 2) * Tc_num)
last = R_at((1 + sp.Rational(1, 1000)) * Tc_num)
print("scan_R_first", first)
print("scan_R_last", last)
print("scan_ratio", abs(last) / abs(first))

# n = 1 phase-space metric: nabla xi vs Phi
w, p, q = sp.symbols("w p q", real=True)
G = sp.Matrix([[1, 0, p], [0, 0, -sp.Rational(1, 2)], [p, -sp.Rational(1, 2), p**2]])
gamma = christoffel(G, [w, p, q])
M = sp.Matrix(3, 3, lambda k, i: gamma[k][i][0])  # (nabla_{d_i} xi)^k
xi = sp.Matrix([1, 0, 0])
P_vec = sp.Matrix([0, 1, 0])
Q_vec = sp.Matrix([-p, 0, 1])
B = sp.Matrix.hstack(xi, P_vec, Q_vec)
Phi = B * sp.diag(0, 1, -1) * B.inv()
print("nabla_xi_matrix", sp.simplify(M).tolist())
print("nabla_xi_plus_Phi", sp.simplify(M + Phi).tolist())
