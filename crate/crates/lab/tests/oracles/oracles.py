"""Reference values frozen into the lab tests.

Run with `python3 oracles.py`; needs mpmath, numpy and scipy.
"""
import mpmath as mp
import numpy as np
from scipy.special import fresnel

mp.mp.dps = 30
RHO, SIGMA = 0.5, 0.25


def bump(x, rho=RHO):
    r = (x / rho) ** 2
    return mp.e ** (1 - 1 / (1 - r)) if r < 1 else mp.mpf(0)


def bump_np(x, rho=RHO):
    r = (x / rho) ** 2
    out = np.zeros_like(x)
    m = r < 1
    out[m] = np.exp(1 - 1 / (1 - r[m]))
    return out


print("bump mass", mp.nstr(mp.quad(bump, [-RHO, 0, RHO]), 20))

# Morse phase: the integral factorizes into two one-dimensional pieces.
for lam in [64, 1024]:
    pts = np.linspace(-RHO, RHO, 4001)
    outer = mp.quad(lambda x: bump(x) * mp.expj(lam * x * x), list(pts))
    # Gaussian Fresnel integral in closed form; mp.quad on the half line is
    # unreliable once the oscillation dominates.
    inner = mp.sqrt(mp.pi / (SIGMA ** -2 - 1j * lam))
    j = outer * inner
    print("morse", lam, mp.nstr(j.real, 16), mp.nstr(j.imag, 16))

# E1 and E2 by a brute-force trapezoid rule on the full rectangle; the
# integrand is smooth and negligible at the boundary.
phases = {
    "e1": lambda x, y: y**2 - 2 * x**2 * y + x**4 + x**5,
    "e2": lambda x, y: x * y**2 - 2 * x**3 * y + x**5 + x**6,
}
for name, phi in phases.items():
    for lam in [16.0, 64.0]:
        x = np.linspace(-RHO, RHO, 4001)
        y = np.linspace(-8 * SIGMA, 8 * SIGMA, 4001)
        X, Y = np.meshgrid(x, y, indexing="ij")
        f = bump_np(X) * np.exp(-(Y / SIGMA) ** 2) * np.exp(1j * lam * phi(X, Y))
        j = np.trapezoid(np.trapezoid(f, y, axis=1), x)
        print(name, lam, repr(j.real), repr(j.imag))

# Fresnel: int_0^1 e^{i lam s^2} ds = sqrt(pi/(2 lam)) (C(z) + i S(z)), z = sqrt(2 lam/pi).
for k in [10, 15, 20]:
    lam = 2.0**k
    s, c = fresnel(np.sqrt(2 * lam / np.pi))
    scale = np.sqrt(np.pi / (2 * lam))
    print("fresnel", k, repr(scale * c), repr(scale * s))

# Airy: lam^(1/3) int e^{i lam t^3} bump_{1/4}(t) dt, and the limit.
print("airy limit", mp.nstr(2 * mp.gamma(mp.mpf(1) / 3) / 3 * mp.cos(mp.pi / 6), 20))
for k in [9, 12]:
    lam = 2**k
    pts = list(np.linspace(-0.25, 0.25, 801))
    j = mp.quad(lambda t: bump(t, 0.25) * mp.expj(lam * t**3), pts)
    g = mp.cbrt(lam) * j
    print("airy", k, mp.nstr(g.real, 16), mp.nstr(g.imag, 16))
