"""Independent quadrature oracle for Ai and Ai'.

Evaluates the oscillatory integrals

    Ai(z)  =  (1/pi) int_0^inf cos(xi^3/3 + z xi) dxi
    Ai'(z) = -(1/pi) int_0^inf xi sin(xi^3/3 + z xi) dxi

in extended precision with ``mpmath.quadosc``.  The integration is cut at the
zeros of the cosine on the monotone branch of the phase, and the resulting
alternating cell sums are extrapolated.  None of the series or asymptotic
machinery in ``_kernels`` is used, so the two paths are independent.

Slow (about one second per point); only used to build and refresh the
frozen fixtures under ``tests/data``.
"""

from __future__ import annotations

import json
from pathlib import Path

import mpmath as mp


def _phase_inverse(theta, z):
    # largest real root of xi^3/3 + z xi - theta (the increasing branch)
    roots = mp.polyroots([mp.mpf(1) / 3, 0, z, -theta], maxsteps=200, extraprec=80)
    return max(mp.re(r) for r in roots if abs(mp.im(r)) < mp.mpf(10) ** (-mp.mp.dps // 2))


def oracle_airy(z: float, dps: int = 30) -> tuple[mp.mpf, mp.mpf]:
    """Return (Ai(z), Ai'(z)) from the integral definition at ``dps`` digits."""
    with mp.workdps(dps):
        z = mp.mpf(z)
        # phase minimum on [0, inf); later cells lie where the phase increases
        theta_min = mp.mpf(0) if z >= 0 else -mp.mpf(2) / 3 * (-z) ** mp.mpf(1.5)
        k0 = int(mp.floor(theta_min / mp.pi - mp.mpf(1) / 2)) + 1

        def zeros(n):
            return _phase_inverse((k0 + n - 1 + mp.mpf(1) / 2) * mp.pi, z)

        value = mp.quadosc(lambda x: mp.cos(x**3 / 3 + z * x), [0, mp.inf], zeros=zeros) / mp.pi
        deriv = -mp.quadosc(lambda x: x * mp.sin(x**3 / 3 + z * x), [0, mp.inf], zeros=zeros) / mp.pi
        return +value, +deriv


def oracle_airy_max(dps: int = 30):
    """Locate the first negative critical point of Ai by Newton on Ai'.

    Uses Ai'' = z Ai, so each step costs one oracle call.  Returns (x0, Ai(x0)).
    """
    with mp.workdps(dps):
        x = mp.mpf("-1.0188")
        for _ in range(8):
            v, d = oracle_airy(x, dps)
            step = d / (x * v)
            x -= step
            if abs(step) < mp.mpf(10) ** (-(dps - 5)):
                break
        v, _ = oracle_airy(x, dps)
        return +x, +v


def freeze_fixture(path: Path, points, dps: int = 30) -> None:
    """Write oracle values at ``points`` to JSON as decimal strings."""
    rows = []
    for z in points:
        v, d = oracle_airy(float(z), dps)
        rows.append({"z": repr(float(z)), "ai": mp.nstr(v, 25), "aip": mp.nstr(d, 25)})
    x0, amax = oracle_airy_max(dps)
    payload = {
        "dps": dps,
        "x0": mp.nstr(x0, 25),
        "ai_max": mp.nstr(amax, 25),
        "points": rows,
    }
    path.write_text(json.dumps(payload, indent=1) + "\n")


if __name__ == "__main__":
    import sys

    import numpy as np

    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("airy_oracle.json")
    grid = np.linspace(-50.0, 50.0, 201)
    extra = np.random.default_rng(20240601).uniform(-50.0, 50.0, 40)
    freeze_fixture(out, np.concatenate([grid, np.sort(extra)]))
