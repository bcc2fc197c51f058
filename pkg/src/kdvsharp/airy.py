"""Airy function Ai and its derivative, the sup of |Ai|, and decay envelopes.

Evaluation routes (see ``_kernels``): Maclaurin series on [-7, 5.5], the
exponentially small asymptotic expansion above, the oscillatory expansion
below.  Ai' comes from the term-wise differentiated expansions.  Each value
carries an absolute error estimate; the contract is <= 1e-10 on |z| <= 50.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels

__all__ = [
    "AIRY_RANGE",
    "AiryEvaluation",
    "AiryExtremum",
    "airy_ai",
    "airy_array",
    "find_airy_max",
    "verify_decay_envelopes",
]

AIRY_RANGE = 1.0e3


@dataclass(frozen=True)
class AiryEvaluation:
    z: float
    value: float
    derivative: float
    abs_error_estimate: float


@dataclass(frozen=True)
class AiryExtremum:
    x0: float
    ai_max: float
    sharp_constant: float


def _check_range(z):
    z = np.asarray(z, dtype=float)
    if not np.all(np.isfinite(z)) or np.any(np.abs(z) > AIRY_RANGE):
        bad = z[~(np.abs(z) <= AIRY_RANGE)]
        raise ValueError(f"Airy argument outside supported range |z| <= {AIRY_RANGE:g}: {bad[:3]}")
    return z


def airy_ai(z: float) -> AiryEvaluation:
    """Ai(z), Ai'(z) and an absolute error estimate.  Raises ValueError for |z| > 1e3."""
    z = float(_check_range(z))
    a, d, e = _kernels.airy_eval(np.array([z]))
    return AiryEvaluation(z, float(a[0]), float(d[0]), float(e[0]))


def airy_array(z) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized form: arrays (Ai, Ai', error estimate) shaped like ``z``."""
    z = _check_range(z)
    a, d, e = _kernels.airy_eval(z.ravel())
    return a.reshape(z.shape), d.reshape(z.shape), e.reshape(z.shape)


@lru_cache(maxsize=1)
def find_airy_max() -> AiryExtremum:
    """Global max of |Ai|.

    Dense scan of |Ai| on [-20, 5] at step 1e-3, then Newton on Ai' from the
    best sample (Ai'' = z Ai is exact, so this converges quadratically).
    A final golden-section pass is unnecessary once |Ai'(x0)| hits rounding.
    """
    zs = np.linspace(-20.0, 5.0, 25001)
    a, _, _ = airy_array(zs)
    x = float(zs[int(np.argmax(np.abs(a)))])
    for _ in range(20):
        ev = airy_ai(x)
        step = ev.derivative / (x * ev.value)
        x -= step
        if abs(step) < 1e-15 * max(1.0, abs(x)):
            break
    ai_max = abs(airy_ai(x).value)
    return AiryExtremum(x, ai_max, 2.0 * ai_max * ai_max)


def verify_decay_envelopes(x_min: float, x_max: float, samples: int) -> tuple[float, float]:
    """Empirical sup |Ai|(1+|x|)^{1/4} and sup |Ai'|(1+|x|)^{-1/4} over a uniform sample."""
    if not x_min < x_max:
        raise ValueError("need x_min < x_max")
    if samples < 100:
        raise ValueError("need at least 100 samples")
    zs = np.linspace(x_min, x_max, int(samples))
    a, d, _ = airy_array(zs)
    w = (1.0 + np.abs(zs)) ** 0.25
    return float(np.max(np.abs(a) * w)), float(np.max(np.abs(d) / w))
