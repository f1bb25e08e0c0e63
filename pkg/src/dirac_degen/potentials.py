"""Charge-scaled 4-potential families paired with the degenerate spinors,
and the direction in potential space along which they can be shifted
freely.

Components are stored as expression trees, so the electromagnetic module
can differentiate them exactly.  All values are the charge-scaled
combinations q*A_mu; division by the charge happens only where the
physical potentials are needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .algebra import GAMMAS, bilinear
from .spinors import SpinorField
from .symexpr import Const, ScalarExpr, SpacetimePoint, as_expr


class KappaVector(NamedTuple):
    """Constant shift direction in 4-potential space."""

    k0: float
    k1: float
    k2: float
    k3: float

    def as_array(self) -> np.ndarray:
        return np.array(self, dtype=float)


class DenominatorError(ValueError):
    """The transpose bilinear in the shift-direction ratios vanished."""


@dataclass(frozen=True)
class FourPotentialField:
    """Four charge-scaled potential components as expression trees."""

    components: tuple
    family: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.components) != 4:
            raise ValueError("a 4-potential needs exactly four components")
        object.__setattr__(
            self, "components", tuple(as_expr(c) for c in self.components)
        )

    def value(self, point: SpacetimePoint) -> np.ndarray:
        return np.array([c.eval(point) for c in self.components], dtype=float)


def zero_potential() -> FourPotentialField:
    return FourPotentialField((0.0, 0.0, 0.0, 0.0), family="zero")


def degenerate_potential(f, g, xi: float, mass: float) -> FourPotentialField:
    """Base 4-potential paired with the closed-form degenerate family:

        a0 = f_t cos xi + f_z - g
        a1 = f_x cos xi - m cot xi
        a2 = f_y cos xi + (f_z - g) sin xi
        a3 = g cos xi

    for arbitrary real functions f, g; sin xi must not vanish.
    """
    if abs(math.sin(xi)) < 1e-12:
        raise ValueError("xi must keep sin(xi) away from zero")
    if mass <= 0:
        raise ValueError("mass must be positive")
    f = as_expr(f)
    g = as_expr(g)
    s, c = math.sin(xi), math.cos(xi)
    f_z = f.diff("z")
    components = (
        c * f.diff("t") + f_z - g,
        c * f.diff("x") - Const(mass * c / s),
        c * f.diff("y") + s * (f_z - g),
        c * g,
    )
    return FourPotentialField(components, family="degenerate",
                              params={"xi": xi, "mass": mass})


# transpose-bilinear matrices entering the shift-direction ratios,
# all with upper indices: (g0 g1 g2, g0, g0 g2 g3) over g2
_G0, _G1, _G2, _G3 = GAMMAS.upper
_KAPPA_NUMERATORS = (_G0 @ _G1 @ _G2, _G0, _G0 @ _G2 @ _G3)
_KAPPA_SIGNS = (-1.0, -1.0, +1.0)


def kappa_direction(spinor_field: SpinorField, point: SpacetimePoint,
                    tol: float = 1e-10) -> KappaVector:
    """Shift direction of the potential family at one point, computed from
    the transpose bilinear ratios of the spinor.

    The spinor is normalized internally (the ratios are scale-free).
    Raises DenominatorError if the denominator bilinear is smaller than
    ``tol`` relative to the spinor norm, and ValueError if a ratio keeps a
    relative imaginary part above 1e-10 (reported, never discarded
    silently).
    """
    psi = spinor_field.value(point)
    norm = float(np.linalg.norm(psi))
    if norm == 0.0:
        raise DenominatorError("zero spinor")
    unit = psi / norm
    denom = bilinear(unit, _G2, unit, mode="transpose")
    if abs(denom) < tol:
        raise DenominatorError(
            f"transpose bilinear {abs(denom):.3e} below tolerance {tol:.3e}"
        )
    kappa = [1.0]
    for sign, matrix in zip(_KAPPA_SIGNS, _KAPPA_NUMERATORS):
        ratio = sign * bilinear(unit, matrix, unit, mode="transpose") / denom
        scale = max(1.0, abs(ratio))
        if abs(ratio.imag) > 1e-10 * scale:
            raise ValueError(
                f"shift-direction ratio has imaginary part {ratio.imag:.3e} "
                f"(relative to {scale:.3e}); convention mismatch"
            )
        kappa.append(ratio.real)
    return KappaVector(*kappa)


def kappa_constant(spinor_field: SpinorField, points, tol: float = 1e-10,
                   spread_tol: float = 1e-10) -> KappaVector:
    """Point-independent shift direction: evaluates ``kappa_direction`` on
    every point, requires the componentwise spread to stay below
    ``spread_tol`` and returns the componentwise mean."""
    samples = np.array([kappa_direction(spinor_field, p, tol=tol) for p in points])
    if samples.shape[0] == 0:
        raise ValueError("at least one sample point is required")
    spread = samples.max(axis=0) - samples.min(axis=0)
    worst = float(spread.max())
    if worst > spread_tol:
        raise ValueError(
            f"shift direction is point-dependent: spread {worst:.3e} exceeds "
            f"{spread_tol:.3e}"
        )
    return KappaVector(*samples.mean(axis=0))


def shifted_potential(base: FourPotentialField, s, kappa: KappaVector) -> FourPotentialField:
    """One member of the potential family base + s * kappa for a real
    shift function s."""
    s = as_expr(s)
    components = tuple(
        base.components[mu] + float(kappa[mu]) * s for mu in range(4)
    )
    return FourPotentialField(components, family=f"{base.family}+shift",
                              params=dict(base.params, kappa=tuple(kappa)))


def perturbed_potential(e2: float, mass: float, s,
                        kappa2_sign: int = -1) -> FourPotentialField:
    """Potential paired with the nearly degenerate states:

        (m e2 + s, 0, kappa2_sign * s, 0)

    ``kappa2_sign`` defaults to -1 (the printed pairing).  Under the
    representation used here only +1 keeps the residual first order in
    (e1, e2); the sign is exposed so both pairings can be residual-tested.
    """
    if abs(e2) >= 0.1:
        raise ValueError("|e2| must stay below 0.1")
    if mass <= 0:
        raise ValueError("mass must be positive")
    if kappa2_sign not in (-1, 1):
        raise ValueError("kappa2_sign must be -1 or +1")
    s = as_expr(s)
    components = (Const(mass * e2) + s, Const(0.0), float(kappa2_sign) * s, Const(0.0))
    return FourPotentialField(components, family="near-degenerate",
                              params={"e2": e2, "mass": mass,
                                      "kappa2_sign": kappa2_sign})
