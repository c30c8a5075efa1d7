# Copyright 2026 The migsim Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Independent numpy/scipy evaluation of the reference numbers frozen into
the C++ tests. Run with `python3 derive_values.py`; nothing here is imported
by the build."""

import numpy as np
from scipy.integrate import quad, solve_ivp
from scipy.linalg import expm

TP = 2 * np.pi
C3, C6, C4 = TP * 1619, TP * -87, TP * -1032
OC, G = TP * 90, TP * 6.1
VC = OC**2 / (2 * G)
R, DY, N = 20.0, 1.0, 5
OMIN, OMAX, SC, W = TP * 0.5e-3, TP * 5.28e-3, 1.0, 3 * R / 8
C_LIGHT = 299792458.0
T_PERIOD = np.pi * R**3 / (2 * C3)


def coupling(x):
    s = sum(np.tanh((x - (n - 0.5) * R + W) / SC) - np.tanh((x - (n - 0.5) * R - W) / SC)
            for n in range(-2, N + 2))
    return OMIN + (OMAX - OMIN) / 2 * s


def geometry(n=N):
    agg = np.array([[k * R, 0, 0] for k in range(n)], float)
    det = np.array([[k * R, DY, 0] for k in range(n)], float)
    return agg, det


def vbar(agg, det):
    v = np.zeros((len(det), len(agg)))
    for a in range(len(det)):
        d = np.linalg.norm(det[a] - agg, axis=1)
        for n in range(len(agg)):
            v[a, n] = C4 / d[n]**4 + sum(C6 / d[m]**6 for m in range(len(agg)) if m != n)
    return v


def lindblad_run(h, v, probe, rho0, t_end, steps, heff=True):
    """Exact propagation of the reduced equation with the probe frozen at
    each step midpoint (matrix exponential of the Liouvillian)."""
    n = h.shape[0]
    eye = np.eye(n)
    dt = t_end / steps
    vec = rho0.reshape(-1).astype(complex)
    for k in range(steps):
        p = probe((k + 0.5) * dt)
        l = np.where(v == 0, 0, -(p[:, None] / np.sqrt(G)) / (1j + VC / np.where(v == 0, 1, v)))
        he = (p[:, None]**2 / OC**2 * v / (1 + (v / VC)**2)).sum(0) if heff else np.zeros(n)
        ht = h + np.diag(he)
        m = -1j * (np.kron(ht, eye) - np.kron(eye, ht.T))
        for a in range(l.shape[0]):
            la = np.diag(l[a])
            ld = la.conj().T @ la
            m += np.kron(la, la.conj()) - 0.5 * np.kron(ld, eye) - 0.5 * np.kron(eye, ld.T)
        vec = expm(m * dt) @ vec
    return vec.reshape(n, n)


def main():
    print("V_c/2pi", VC / TP)
    print("R_c,s", (abs(C6) / VC)**(1 / 6), "R_c,p", (abs(C4) / VC)**(1 / 4))
    print("t_period", T_PERIOD)

    agg, det = geometry()
    v = vbar(agg, det)
    print("vbar[0,0]", v[0, 0], "vbar[0,1]", v[0, 1], "vbar[2,2]", v[2, 2], "vbar[1,3]", v[1, 3])
    p18 = TP * 18
    rate = abs(p18 / np.sqrt(G) / (1j + VC / v[1, 1]))**2
    print("jump rate 18 MHz own site", rate)

    print("coupling(0)", coupling(0.0), "coupling(10)", coupling(10.0), "coupling(2.5)", coupling(2.5))
    inv = sum(quad(lambda x: 1 / coupling(x)**2, a, b, epsabs=0, epsrel=1e-13, limit=500)[0]
              for a, b in [(0, R / 2 - W), (R / 2 - W, R / 2 + W), (R / 2 + W, R)])
    kappa = (C_LIGHT * T_PERIOD - R) / inv
    print("kappa", repr(kappa))
    vg = lambda x: C_LIGHT * coupling(x)**2 / (coupling(x)**2 + kappa)
    print("v_min", vg(0.0), "v_max", vg(10.0))
    sol = solve_ivp(lambda t, x: [vg(xi) for xi in x], (0, 3.0), [-21.5, 38.5],
                    rtol=1e-12, atol=1e-12, dense_output=True, max_step=1e-3)
    print("x(1.0)", list(sol.sol(1.0)), "x(2.5)", list(sol.sol(2.5)))

    # Zeno: N = 2, probe held on the detector of site 2.
    agg2, det2 = geometry(2)
    v2 = vbar(agg2, det2)[1:2]
    h2 = np.array([[0, C3 / R**3], [C3 / R**3, 0]])
    for amp in (18, 45):
        rho = lindblad_run(h2, v2, lambda t: np.array([TP * amp]), np.diag([1.0, 0]), T_PERIOD, 4000)
        print("zeno", amp, "rho11(t_period)", rho[0, 0].real)

    # Pure dephasing: H = 0, constant probe on one detector of a 2-site chain.
    vv = np.array([[-3000.0, 500.0]])
    rho0 = np.full((2, 2), 0.5)
    rho = lindblad_run(np.zeros((2, 2)), vv, lambda t: np.array([TP * 10]), rho0, 0.01, 50, heff=False)
    print("dephasing |rho12|(0.01)", abs(rho[0, 1]))


if __name__ == "__main__":
    main()
