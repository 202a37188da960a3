"""Independent reference values for the continuum soliton momentum map.

Velocity along axis 1 makes every integrand separable in polar coordinates,
so each Fourier integral is a product of a radial and an angular 1D quadrature
(scipy, tight tolerances).  The printed numbers are frozen into the C++ tests.
Default density: rho = Laplacian of exp(-r^2/2), sigma = amplitude = 1, m = I = 1.
"""
import numpy as np
from scipy import integrate

SIGMA, AMP, MASS, INERTIA = 1.0, 1.0, 1.0, 1.0


def ghat(k):
    return AMP * 2 * np.pi * SIGMA**2 * np.exp(-0.5 * (SIGMA * k) ** 2)


def radial(fn):
    val, _ = integrate.quad(fn, 0, 40, epsabs=1e-15, epsrel=1e-14, limit=400)
    return val


def angular(fn):
    val, _ = integrate.quad(fn, 0, 2 * np.pi, epsabs=1e-15, epsrel=1e-14, limit=400)
    return val


def momentum_map(v, w):
    # r = rhohat^2 = k^4 g^2 ; gg = |grad rhohat|^2 = k^2 g^2 (k^2 - 2)^2 ; D = k^2 (1 - v^2 c^2)
    Rr = radial(lambda k: ghat(k) ** 2 * k**3)                        # int r / k^2 ... * k dk
    Rg = radial(lambda k: ghat(k) ** 2 * (SIGMA**2 * k**2 - 2) ** 2 * k)
    den = lambda c: 1 - v * v * c * c
    # P1: v k1 k1 |A|^2 + pv1 r / D with pv1 = v s^2
    a1 = angular(lambda t: v * np.cos(t) ** 2 * v * v * np.sin(t) ** 2 / den(np.cos(t)) ** 2)
    a2 = angular(lambda t: v * np.cos(t) ** 2 / den(np.cos(t)) ** 2)
    a3 = angular(lambda t: v * np.sin(t) ** 2 / den(np.cos(t)))
    P1 = MASS * v + (Rr * (a1 + a3) + w * w * Rg * a2) / (2 * np.pi) ** 2
    M = INERTIA * w + w * Rg * angular(lambda t: 1 / den(np.cos(t))) / (2 * np.pi) ** 2
    return P1, M


if __name__ == "__main__":
    for v, w in [(0.0, 1.0), (0.3, 0.0), (0.5, 2.0), (0.9, 0.0), (0.9, 5.0)]:
        P1, M = momentum_map(v, w)
        print(f"v={v} omega={w}: P1={P1:.15e} M={M:.15e}")
    # field-mass corrections at v = 0
    mu = radial(lambda k: ghat(k) ** 2 * k**3) * np.pi / (2 * np.pi) ** 2
    iota = radial(lambda k: ghat(k) ** 2 * (k**2 - 2) ** 2 * k) * 2 * np.pi / (2 * np.pi) ** 2
    print(f"mu_f={mu:.15e} (pi/2={np.pi/2:.15e}) iota_f={iota:.15e} (2pi={2*np.pi:.15e})")
