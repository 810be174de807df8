"""Adder TAC generators and their adversarial inputs."""

from .carryselect import build_carryselect
from .carryskip import build_carryskip
from .combined import build_combined
from .ripple import build_ripple

KINDS = ("ripple", "carryskip", "carryselect", "combined")

_BUILDERS = {
    "ripple": build_ripple,
    "carryskip": build_carryskip,
    "carryselect": build_carryselect,
    "combined": build_combined,
}


def build(kind: str, n: int):
    try:
        return _BUILDERS[kind](n)
    except KeyError:
        raise ValueError(f"unknown adder kind {kind!r}; choose from {KINDS}") from None


def adversarial_input(kind: str, n: int):
    """Worst-case (a, b) for ``kind``, LSB first.

    Every kind uses a = 1...1, b = 0...0: all n pairs propagate, so the
    carry-in 0 has to travel the whole width.  For the ripple and
    carry-select adders every input takes the same time, so any pair is a
    worst case; the all-propagate pair is kept for uniformity.
    """
    if kind not in _BUILDERS:
        raise ValueError(f"unknown adder kind {kind!r}")
    if n < 1:
        raise ValueError("n must be at least 1")
    return (1,) * n, (0,) * n


__all__ = ["KINDS", "build", "adversarial_input", "build_ripple", "build_carryskip",
           "build_carryselect", "build_combined"]
