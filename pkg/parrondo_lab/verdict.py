"""Verdict vocabulary shared by the one-dimensional, planar and linear code."""
from enum import Enum


class Stability(str, Enum):
    """Local character of a fixed point."""

    HYPERBOLIC_ATTRACTING = "HyperbolicAttracting"
    HYPERBOLIC_REPELLING = "HyperbolicRepelling"
    LAS = "LAS"
    REPELLER = "Repeller"
    SEMI_AS_LEFT = "SemiASLeft"
    SEMI_AS_RIGHT = "SemiASRight"
    SADDLE = "Saddle"
    INVOLUTION_UP_TO_ORDER = "InvolutionUpToOrder"
    UNDETERMINED_AT_ORDER = "UndeterminedAtOrder"
    UNDETERMINED_BY_B1 = "UndeterminedByB1"

    @property
    def is_attracting(self) -> bool:
        return self in (Stability.LAS, Stability.HYPERBOLIC_ATTRACTING)

    @property
    def is_repelling(self) -> bool:
        return self in (Stability.REPELLER, Stability.HYPERBOLIC_REPELLING)

    @property
    def is_undetermined(self) -> bool:
        return self in (
            Stability.INVOLUTION_UP_TO_ORDER,
            Stability.UNDETERMINED_AT_ORDER,
            Stability.UNDETERMINED_BY_B1,
        )


class Paradox(str, Enum):
    """Outcome of comparing per-map verdicts with the composition verdict."""

    REPELLERS_TO_LAS = "RepellersToLAS"
    LAS_TO_REPELLER = "LASToRepeller"
    NONE = "None"
    INDETERMINATE = "Indeterminate"


def paradox_of(per_map, composition: Stability) -> Paradox:
    """Decide the Parrondo flag from per-map and composition verdicts.

    Args:
        per_map: Iterable of ``Stability`` values, one per map.
        composition: Verdict of the composition map.

    Returns:
        ``INDETERMINATE`` if any verdict is undetermined,
        ``REPELLERS_TO_LAS`` if every map repels and the composition
        attracts, ``LAS_TO_REPELLER`` for the dual case, else ``NONE``.
    """
    per_map = list(per_map)
    if composition.is_undetermined or any(v.is_undetermined for v in per_map):
        return Paradox.INDETERMINATE
    if all(v.is_repelling for v in per_map) and composition.is_attracting:
        return Paradox.REPELLERS_TO_LAS
    if all(v.is_attracting for v in per_map) and composition.is_repelling:
        return Paradox.LAS_TO_REPELLER
    return Paradox.NONE
