"""Independent recomputation of the energy/entropy chart structures.

Checks, in physical coordinates (u, s, v, T, p):
  * eta covectors and the -1/T scaling between them,
  * Mrugala metric spot values for both charts,
  * the full gauge transform with Omega = -1/T applied in the energy chart
    equals the entropy-chart structures at (u,s,v,T,p) = (1,0,1,1,1),
  * the Hessian/conformal facts for the toy gas u = e^s/v.
"""

import sympy as sp

u, s, v, T, p = sp.symbols("u s v T p", real=True, positive=True)
phys = [u, s, v, T, p]

w1, p1, p2, q1, q2 = sp.symbols("w1 p1 p2 q1 q2", real=True)


def darboux_structures(pp1, pp2):
    eta = sp.Matrix([1, 0, 0, pp1, pp2])  # on (dw, dp1, dp2, dq1, dq2)
    half = sp.Rational(1, 2)
    S = sp.zeros(5, 5)
    S[1, 3] = S[3, 1] = half
    S[2, 4] = S[4, 2] = half
    G = eta * eta.T - S
    xi = sp.Matrix([1, 0, 0, 0, 0])
    P1 = sp.Matrix([0, 1, 0, 0, 0])
    P2 = sp.Matrix([0, 0, 1, 0, 0])
    Q1 = sp.Matrix([-pp1, 0, 0, 1, 0])
    Q2 = sp.Matrix([-pp2, 0, 0, 0, 1])
    B = sp.Matrix.hstack(xi, P1, P2, Q1, Q2)
    Phi = B * sp.diag(0, 1, 1, -1, -1) * B.inv()
    return eta, G, Phi, xi


# chart maps: darboux = F(physical)
energy_map = sp.Matrix([u, -T, p, s, v])
entropy_map = sp.Matrix([s, -1 / T, -p / T, u, v])

J_u = energy_map.jacobian(phys)
J_s = entropy_map.jacobian(phys)

eta_u_dar, G_dar_u, Phi_dar_u, xi_dar = darboux_structures(-T, p)
eta_s_dar, G_dar_s, Phi_dar_s, _ = darboux_structures(-1 / T, -p / T)

eta_u = sp.simplify(J_u.T * eta_u_dar)
eta_s = sp.simplify(J_s.T * eta_s_dar)
print("eta_u", eta_u.T.tolist())
print("eta_s", eta_s.T.tolist())
print("eta_scaling_residual", sp.simplify(eta_s + eta_u / T).T.tolist())

G_u = sp.simplify(J_u.T * G_dar_u * J_u)
G_s = sp.simplify(J_s.T * G_dar_s * J_s)
print("G_u(du,du)", G_u[0, 0])
print("G_u(ds,dT)", G_u[1, 3])
print("G_s(dT,du)", sp.simplify(G_s[3, 0]))

# gauge transform with Omega = 1/p1 = -1/T in the energy chart
dar = [w1, p1, p2, q1, q2]
eta_g, G_g, Phi_g, xi_g = darboux_structures(p1, p2)
D = sp.zeros(5, 5)
D[1, 3] = sp.Rational(1, 2)
D[3, 1] = -sp.Rational(1, 2)
D[2, 4] = sp.Rational(1, 2)
D[4, 2] = -sp.Rational(1, 2)
omega = 1 / p1
d_omega = sp.Matrix([sp.diff(omega, c) for c in dar])
G_inv = G_g.inv()
raised = G_inv * d_omega
zeta = -(1 / (2 * omega)) * Phi_g * raised
xi_prime = (xi_g + zeta) / omega
phi_prime = Phi_g + (1 / (2 * omega)) * (raised - d_omega[0] * xi_g) * eta_g.T
d_eta_prime = omega * D + sp.Rational(1, 2) * (d_omega * eta_g.T - eta_g * d_omega.T)
g_prime = sp.simplify(eta_g * eta_g.T * omega**2 - phi_prime.T * d_eta_prime)

at_state = {u: 1, s: 0, v: 1, T: 1, p: 1}
subs_dar = {w1: 1, p1: -1, p2: 1, q1: 0, q2: 1}  # energy chart image of the state

Ju_num = J_u.subs(at_state)
Js_num = J_s.subs(at_state)
xi_prime_phys = sp.simplify(Ju_num.inv() * xi_prime.subs(subs_dar))
print("xi_prime_physical", xi_prime_phys.T.tolist())

g_prime_phys = sp.simplify(Ju_num.T * g_prime.subs(subs_dar) * Ju_num)
G_s_num = G_s.subs(at_state)
print("g_prime_minus_G_s", sp.simplify(g_prime_phys - G_s_num).tolist())

phi_prime_phys = sp.simplify(Ju_num.inv() * phi_prime.subs(subs_dar) * Ju_num)
phi_s_phys = sp.simplify(Js_num.inv() * Phi_dar_s.subs(at_state) * Js_num)
print("phi_prime_minus_phi_s", sp.simplify(phi_prime_phys - phi_s_phys).tolist())

# toy gas u = e^s/v: Hessian, entropy-side Hessian, conformal transport
ss, vv = sp.symbols("ss vv", positive=True)
E = sp.exp(ss) / vv
gW = sp.hessian(E, (ss, vv))
print("weinhold_at_(0,1)", gW.subs({ss: 1e0 * 0, vv: 1}).tolist())
S_rel = sp.log(u) + sp.log(v)
gR = sp.hessian(S_rel, (u, v))
print("ruppeiner(u,v)", gR.tolist())
A = sp.Matrix([[sp.diff(E, ss), sp.diff(E, vv)], [0, 1]])
transported = sp.simplify(A.T * gR.subs({u: E, v: vv}) * A)
TT = sp.diff(E, ss)
print("transport_residual", sp.simplify(transported + gW / TT).tolist())
print("transported_at_(0,1)", transported.subs({ss: 0, vv: 1}).tolist())

# closed-form G' for Omega = 1/p1, compared entrywise against the expansion
expansion = (1 / p1) * (
    G_g + (1 / p1) * sp.Rational(1, 2) * (eta_g * sp.Matrix([0, 1, 0, 0, 0]).T
                                          + sp.Matrix([0, 1, 0, 0, 0]) * eta_g.T)
) + ((1 - p1) / p1**2) * (eta_g * eta_g.T)
print("closed_form_expansion_residual", sp.simplify(g_prime - expansion).tolist())
