"""Frozen input families shared by the estimate checks and the suite.

Definitions live in ``data/families.json`` so regression baselines always
refer to the same inputs:

* gaussians           exp(-(x/w)^2)
* bumps               bump(x - c)
* random_bandlimited  exp(-x^2/envelope) * sum_{|m| <= modes} c_m exp(i m kappa x),
                      c_m complex normal from numpy's default_rng(seed)
* modulated           exp(i k x) exp(-x^2)
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Callable

import numpy as np

from .estimates import bump

__all__ = ["FAMILY_NAMES", "FamilyMember", "family", "family_config", "standard_family"]

FAMILY_NAMES = ("gaussians", "bumps", "random_bandlimited", "modulated")


@dataclass(frozen=True)
class FamilyMember:
    family: str
    index: int
    label: str
    fn: Callable[[np.ndarray], np.ndarray]


@lru_cache(maxsize=1)
def _load() -> str:
    return resources.files("kdvsharp").joinpath("data/families.json").read_text()


def family_config() -> dict:
    return json.loads(_load())


def family(name: str, seed: int | None = None) -> list:
    """Members of one family.  ``seed`` overrides the frozen seed of random_bandlimited."""
    cfg = family_config()
    if name not in FAMILY_NAMES:
        raise ValueError(f"unknown test family {name!r}; choose from {', '.join(FAMILY_NAMES)}")
    c = cfg[name]
    out = []
    if name == "gaussians":
        for i, w in enumerate(c["widths"]):
            out.append(FamilyMember(name, i, f"w={w:g}", lambda x, w=w: np.exp(-((x / w) ** 2))))
    elif name == "bumps":
        s = c["scale"]
        for i, x0 in enumerate(c["centers"]):
            out.append(FamilyMember(name, i, f"c={x0:g}", lambda x, x0=x0: bump((x - x0) / s)))
    elif name == "random_bandlimited":
        rng = np.random.default_rng(c["seed"] if seed is None else seed)
        m = np.arange(-c["modes"], c["modes"] + 1)
        for i in range(c["members"]):
            coef = rng.standard_normal(m.size) + 1j * rng.standard_normal(m.size)
            fn = lambda x, coef=coef: np.exp(-(x**2) / c["envelope"]) * (  # noqa: E731
                np.exp(1j * c["kappa"] * np.multiply.outer(x, m)) @ coef
            )
            out.append(FamilyMember(name, i, f"member={i}", fn))
    else:
        for i, k in enumerate(c["wavenumbers"]):
            out.append(FamilyMember(name, i, f"k={k:g}", lambda x, k=k: np.exp(1j * k * x - x**2)))
    return out


def standard_family(seed: int | None = None) -> list:
    """All four families concatenated, in FAMILY_NAMES order."""
    return [m for name in FAMILY_NAMES for m in family(name, seed)]
