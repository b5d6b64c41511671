"""Numeric tolerance configuration shared by all modules."""

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    """Relative tolerances against auxiliary (Euclidean) norms.

    light:   lightcone membership, |<x,x>| <= light * |x|_E^2
    proj:    projective equality of representatives
    rank:    singular-value threshold for rank decisions
    contact: oriented-contact test |<r,s>| <= contact * |r|_E |s|_E
    """

    light: float = 1e-9
    proj: float = 1e-9
    rank: float = 1e-8
    contact: float = 1e-8

    def with_overrides(self, **kwargs):
        kwargs = {k: v for k, v in kwargs.items() if v is not None}
        return replace(self, **kwargs)


DEFAULT = Tolerances()
