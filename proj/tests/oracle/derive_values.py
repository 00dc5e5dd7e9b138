# Copyright 2026 The wva Authors
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

"""Independent reference values for the C++ test suite.

Everything here is built from explicit density matrices and numerical
integration (numpy/scipy); nothing is shared with the C++ closed forms.
Run `python3 derive_values.py` and compare with the constants frozen in
tests/reference_values.hpp.
"""

import numpy as np
from scipy import integrate, optimize

# basis per qubit: index 0 = |1> (sigma_z = +1), index 1 = |0>
I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)


def ket(theta, phi):
    return np.array([np.cos(theta / 2), np.sin(theta / 2) * np.exp(1j * phi)])


def bd(c1, c2, c3):
    return (np.kron(I2, I2) + c1 * np.kron(SX, SX) + c2 * np.kron(SY, SY)
            + c3 * np.kron(SZ, SZ)) / 4


def meter_moments(gt, sigma, p0=0.0):
    """Tr_M weights for target blocks (i, j): J_ij and K_ij by quadrature."""
    phi = lambda p: (2 * np.pi * sigma**2) ** -0.25 * np.exp(-(p - p0) ** 2 / (4 * sigma**2))
    shift = {0: -gt, 1: +gt}  # |1> -> |p - gt>, |0> -> |p + gt>
    lo, hi = p0 - 14 * sigma - 3 * gt, p0 + 14 * sigma + 3 * gt
    J, K = np.zeros((2, 2)), np.zeros((2, 2))
    for i in range(2):
        for j in range(2):
            # <p|shifted_i><shifted_j|p>: phi(p - s_i) phi(p - s_j) with common p
            f = lambda p: phi(p - shift[i]) * phi(p - shift[j])
            J[i, j] = integrate.quad(f, lo, hi, epsabs=1e-14, epsrel=1e-13, limit=400)[0]
            K[i, j] = integrate.quad(lambda p: p * f(p), lo, hi, epsabs=1e-14,
                                     epsrel=1e-13, limit=400)[0]
    return J, K


def mean_p(rho, dims_ctrl, psi_a, effect, gt, sigma, p0=0.0):
    """<p> after post-selecting the target on psi_a and applying `effect`
    (projector or identity) on the controls."""
    J, K = meter_moments(gt, sigma, p0)
    d = dims_ctrl
    num = den = 0.0
    for i in range(2):
        for j in range(2):
            block = rho[i * d:(i + 1) * d, j * d:(j + 1) * d]
            amp = np.conj(psi_a[i]) * psi_a[j]
            num += amp * K[i, j] * np.trace(block @ effect)
            den += amp * J[i, j] * np.trace(block @ effect)
    return (num / den).real


def weak_limit_wv(rho, d, psi_a, effect):
    P = np.outer(psi_a, psi_a.conj())
    Pa = np.kron(P, effect)
    Za = np.kron(SZ, np.eye(d))
    return (np.trace(Pa @ Za @ rho) / np.trace(Pa @ rho)).real, np.trace(Pa @ rho).real


def wv_finite(rho, d, psi_a, effect, gt, sigma):
    return -mean_p(rho, d, psi_a, effect, gt, sigma) / gt


def h(x):
    return 0.0 if x <= 0 or x >= 1 else -x * np.log2(x) - (1 - x) * np.log2(1 - x)


def main():
    bell = bd(1, -1, 1)
    proj = lambda t, p: np.outer(ket(t, p), ket(t, p).conj())

    # Bell, theta_a = theta_b = 1.4, phi_a = pi, weak limit
    wv, p = weak_limit_wv(bell, 2, ket(1.4, np.pi), proj(1.4, 0))
    print(f"bell_1p4_weak_limit_wv = {wv:.15g}  probability = {p:.15g}")

    # gt thresholds by root finding on the finite-gt model
    for sigma in (0.5, 1.5):
        f = lambda gt: abs(wv_finite(bell, 2, ket(1.4, np.pi), proj(1.4, 0), gt, sigma)) - 1
        gtc = optimize.brentq(f, 0.05 * sigma, 5 * sigma, xtol=1e-13)
        print(f"threshold_gt sigma={sigma}: {gtc:.12g}")

    # asymptote: gt/sigma large (J10 = e^-50)
    wv_inf = wv_finite(bell, 2, ket(1.4, np.pi), proj(1.4, 0), 10.0, 1.0)
    print(f"asymptote (gt/sigma = 10) = {wv_inf:.12g}")

    # squeezing threshold at gt = 1.5
    f = lambda r: abs(wv_finite(bell, 2, ket(1.4, np.pi), proj(1.4, 0), 1.5, np.exp(r) / 2)) - 1
    print(f"threshold_r gt=1.5: {optimize.brentq(f, 0.5, 3, xtol=1e-13):.12g}")

    # single qubit |+>|0>, theta_a = 1.4, phi_a = pi, sigma = 1/2
    plus0 = np.kron(np.array([1, 1]) / np.sqrt(2), np.array([0, 1]))
    rho_u = np.outer(plus0, plus0.conj())
    f = lambda gt: abs(wv_finite(rho_u, 2, ket(1.4, np.pi), I2, gt, 0.5)) - 1
    print(f"single_qubit_threshold = {optimize.brentq(f, 0.05, 2, xtol=1e-13):.12g}")

    # two-qubit optimum: theta_b = pi/2, delta = pi, p >= 0.1
    ta = 2 * np.arctan(1 / 3)
    wv, p = weak_limit_wv(bell, 2, ket(ta, np.pi), proj(np.pi / 2, 0))
    print(f"fig2 optimum: theta_a = {ta:.15g} wv = {wv:.15g} p = {p:.15g}")

    # sensitivity configurations
    for pa in (np.pi, np.pi / 2):
        g = lambda tb: weak_limit_wv(bell, 2, ket(np.pi / 3, pa), proj(tb, 0))[0]
        w0, p = weak_limit_wv(bell, 2, ket(np.pi / 3, pa), proj(np.pi / 2, 0))
        dw = (g(np.pi / 2 + 1e-5) - g(np.pi / 2 - 1e-5)) / 2e-5
        print(f"sensitivity phi_a={pa:.6f}: wv = {w0:.12g} dwv = {dw:.10g} p = {p:.12g} "
              f"min_angle(1%) = {0.01 * abs(w0) / abs(dw):.10g}")

    # Werner control without entanglement
    for c in (0.25, 1 / 3, 1.0):
        r = bd(-c, -c, -c)
        w2, _ = weak_limit_wv(r, 2, ket(np.pi / 10, 0), proj(np.pi / 2, 0))
        w4, _ = weak_limit_wv(r, 2, ket(np.pi / 10, 0), proj(np.pi / 4, 0))
        print(f"werner c={c:.6f}: wv(pi/2) = {w2:.15g} wv(pi/4) = {w4:.15g} diff = {w2 - w4:.6g}")
    cs = np.linspace(0, 1, 100001)
    diffs = []
    for c in cs[::100]:
        r = bd(-c, -c, -c)
        diffs.append(weak_limit_wv(r, 2, ket(np.pi / 10, 0), proj(np.pi / 2, 0))[0]
                     - weak_limit_wv(r, 2, ket(np.pi / 10, 0), proj(np.pi / 4, 0))[0])
    k = int(np.argmax(diffs))
    print(f"max diff over c<=1/3 region: {max(d for d, c in zip(diffs, cs[::100]) if c <= 1/3):.6g}; "
          f"global max {diffs[k]:.6g} at c = {cs[::100][k]:.4f}")

    # correlation numbers
    lam = np.linalg.eigvalsh(bd(-0.25, -0.25, -0.25))
    mi = 2 + sum(x * np.log2(x) for x in lam if x > 0)
    cc = 1 - h((1 + 0.25) / 2)
    print(f"werner 0.25: MI = {mi:.15g} CC = {cc:.15g} QD = {mi - cc:.15g}")
    print(f"eof(C=1/2) = {h((1 + np.sqrt(1 - 0.25)) / 2):.15g}")
    lam = np.linalg.eigvalsh(bd(-0.5, -0.5, -0.5))
    mi = 2 + sum(x * np.log2(x) for x in lam if x > 0)
    print(f"werner 0.5: MI = {mi:.15g} CC = {1 - h(0.75):.15g}")

    # Wootters concurrence for Werner 2/3 from the spin-flip spectrum
    r = bd(-2 / 3, -2 / 3, -2 / 3)
    yy = np.kron(SY, SY)
    mu = np.sqrt(np.abs(np.sort(np.linalg.eigvals(r @ yy @ r.conj() @ yy).real)[::-1]))
    print(f"concurrence(werner 2/3) = {max(0, mu[0] - mu[1:].sum()):.15g}")

    # three qubits: GHZ / W in (a, b, e) order
    def three(amps):
        v = np.zeros(8, dtype=complex)
        for (a, b, e), x in amps.items():
            v[(1 - a) * 4 + (1 - b) * 2 + (1 - e)] = x  # |1> is index 0
        return np.outer(v, v.conj())
    ghz = three({(0, 0, 0): 1 / np.sqrt(2), (1, 1, 1): 1 / np.sqrt(2)})
    w = three({(1, 0, 0): 1 / np.sqrt(3), (0, 1, 0): 1 / np.sqrt(3), (0, 0, 1): 1 / np.sqrt(3)})

    cfg = dict(ta=1.1, pa=0.4, tb=2.0, pb=1.3, te=0.7, pe=5.0, gt=0.35, sigma=0.8)
    E = np.kron(proj(cfg['tb'], cfg['pb']), proj(cfg['te'], cfg['pe']))
    for name, rho in (("ghz", ghz), ("w", w)):
        mp = mean_p(rho, 4, ket(cfg['ta'], cfg['pa']), E, cfg['gt'], cfg['sigma'])
        print(f"{name} projected-projected mean_p = {mp:.15g}")
    Et = np.kron(np.eye(2), proj(cfg['te'], cfg['pe']))
    mp = mean_p(w, 4, ket(cfg['ta'], cfg['pa']), Et, cfg['gt'], cfg['sigma'])
    print(f"w traced-projected mean_p = {mp:.15g}")

    # W trace-b / project-e sup at fixed theta_e on a fine grid
    for te in (np.pi / 2, 8 * np.pi / 180):
        best = 0
        for ta in np.linspace(0, np.pi, 721):
            wv, _ = weak_limit_wv(w, 4, ket(ta, np.pi), np.kron(np.eye(2), proj(te, 0)))
            best = max(best, abs(wv))
        print(f"W sup at theta_e={te:.6f}: {best:.10g} vs 1/sin(te/2) = {1 / np.sin(te / 2):.10g}")

    # Bell example at finite gt for the oracle suite
    mp = mean_p(bell, 2, ket(1.4, np.pi), proj(1.4, 0), 0.2, 0.5)
    print(f"bell 1.4/1.4 gt=0.2 sigma=0.5 mean_p = {mp:.15g}")
    J, K = meter_moments(0.3, 1.0, 1.0)
    print(f"K10(p0=1, sigma=1, gt=0.3) = {K[0, 1]:.15g} vs exp(-0.045) = {np.exp(-0.045):.15g}")


if __name__ == "__main__":
    main()
