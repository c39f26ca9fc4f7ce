#!/usr/bin/env python3
"""Arbitrary-precision reference values frozen into the C++ unit tests.

Every quantity is evaluated from its defining formula with mpmath at 50
significant digits, independently of the library code paths.
Run: python3 tests/oracles/reference_values.py
"""
from mpmath import mp, mpf, mpc, sqrt, pi, quad, inf, exp, e1, im, re
import numpy as np

mp.dps = 50
I = mpc(0, 1)


def alpha_ground(w_eg, d2, gamma, w):
    return d2 / 3 * (1 / (w_eg - w - I * gamma / 2) + 1 / (w_eg + w + I * gamma / 2))


def alpha_excited(w_eg, d2, gamma, w):
    return d2 / 3 * (1 / (-w_eg - w - I * gamma / 2) + 1 / (-w_eg + w + I * gamma / 2))


def index(w_b, d2_b, gamma_b, n0, w):
    n = sqrt(1 + 4 * pi * n0 * alpha_ground(w_b, d2_b, gamma_b, w))
    return n


def show(name, value):
    print(f"{name} = {mp.nstr(value, 20)}")


# polarizability at resonance with finite width
show("alpha_ground(1.5,1,0.01; w=1.5)", alpha_ground(mpf("1.5"), 1, mpf("0.01"), mpf("1.5")))

# permittivity of the physical test medium at zero frequency
show("eps(n0=1e-4; w=0)", 1 + 4 * pi * mpf("1e-4") * alpha_ground(mpf("1.5"), 1, mpf("0.01"), 0))

# photon mean free path: exact definition and first-order dilute closed form
wa, wb, d2, g, n0 = mpf(1), mpf("1.5"), mpf(1), mpf("0.01"), mpf("1e-4")
n_a = index(wb, d2, g, n0, wa)
show("L_exact", 1 / (2 * im(n_a) * wa))
show("L_dilute", 3 * ((wb**2 - wa**2) ** 2 + (g * wa) ** 2) / (8 * pi * n0 * d2 * g * wb * wa**2))
show("L_literature_print", 3 * ((wb**2 - wa**2) ** 2 + (g * wa) ** 2) / (4 * pi * n0 * d2 * g * wa**2))


# excited-ground potential in the absorbing medium at R = 100
def nonresonant(R, excited=True):
    def integrand(u):
        n = index(wb, d2, g, n0, I * u)
        aa = alpha_excited(wa, 1, 0, I * u) if excited else alpha_ground(wa, 1, 0, I * u)
        ab = alpha_ground(wb, d2, g, I * u)
        x = n * u * R
        poly = 1 + 2 / x + 5 / x**2 + 6 / x**3 + 3 / x**4
        return aa * ab * u**4 / R**2 * poly * exp(-2 * n * u * R)
    val = quad(integrand, [0, 1 / R, 10 / R, 1, 10, inf])
    return re(-val / pi)


def resonant(R):
    x = n_a * wa * R
    pref = -mpf(4) / 9 * 1 * d2 * wb * wa**4 / ((wb**2 - wa**2 - I * g * wa) * R**2)
    return re(pref * (1 + 1 / x**2 + 3 / x**4) * exp(-2 * im(n_a) * wa * R))


R = mpf(100)
nr, rs = nonresonant(R), resonant(R)
show("U_nonresonant(R=100)", nr)
show("U_resonant(R=100)", rs)
show("U_total(R=100)", nr + rs)
show("U_ground(R=100)", nonresonant(R, excited=False))

# quadrature reference integral
show("int u^4 exp(-2u)/(1+u^2)", quad(lambda u: u**4 * exp(-2 * u) / (1 + u**2), [0, 1, 10, inf]))

# finite-window fit of the exact hemisphere radial bracket 1 + 2 e^x E1(x), x = R0/L
for lo, hi in [(10, 100), (100, 1000)]:
    xs = np.logspace(np.log10(lo), np.log10(hi), 21)
    f = np.array([float(1 + 2 * exp(x) * e1(x)) for x in xs])
    a, b = np.linalg.lstsq(np.vstack([np.ones_like(xs), 1 / xs]).T, f, rcond=None)[0]
    print(f"hemisphere fit b/(a L) on [{lo}L,{hi}L] (21 log points) = {b / a:.10f}")
