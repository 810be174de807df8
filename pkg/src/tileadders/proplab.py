"""Executable pieces of the lower-bound argument.

* :func:`diff_propagation_check`: two seeds that differ in one cell can only
  differ within Chebyshev radius r of that cell after r parallel steps.
* :func:`separation_lower_bound` / :func:`max_cross_separation`: 2n points
  in the plane always contain an A/B pair that is far apart.
* :func:`build_comm_tac` / :func:`comm_runtime_floor`: hard-wire all but two
  input bits of an adder so that one output bit becomes the AND of the two
  free bits; the run time then cannot drop below half their distance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, NamedTuple, Sequence, Tuple

import numpy as np

from .engine import TileSystem, run_parallel
from .model import Position, chebyshev
from .templates import TAC, InputTemplate, OutputTemplate, decode


class SizeMismatch(ValueError):
    pass


class NotDisjoint(ValueError):
    pass


class IndexOutOfRange(ValueError):
    pass


@dataclass
class PerturbationCase:
    system: TileSystem
    p: Position
    tile_a: str
    tile_b: str

    def __post_init__(self):
        if self.tile_a == self.tile_b:
            raise ValueError("the two variants must place different tiles")

    def variant(self, which: int) -> TileSystem:
        seed = self.system.seed.copy()
        seed.cells[self.p] = self.tile_a if which == 0 else self.tile_b
        return TileSystem(self.system.tileset, seed, self.system.temperature)

    @classmethod
    def flip_bit(cls, tac: TAC, bits: Sequence[int], index: int) -> "PerturbationCase":
        """Seeds of ``tac`` filled with ``bits`` and with bit ``index`` flipped."""
        sys = tac.system(bits)
        p = tac.input.wildcards[index]
        return cls(sys, p, tac.input.zero_id, tac.input.one_id)


def diff_propagation_check(case: PerturbationCase, r: int) -> bool:
    """True iff both variants agree outside radius ``r`` of ``case.p`` after r steps."""
    if r < 0:
        raise ValueError("r must be non-negative")
    a = run_parallel(case.variant(0), r, allow_budget=True).terminal.cells
    b = run_parallel(case.variant(1), r, allow_budget=True).terminal.cells
    for q in a.keys() | b.keys():
        if chebyshev(case.p, q) > r and a.get(q) != b.get(q):
            return False
    return True


def separation_lower_bound(n: int, d: int) -> int:
    """ceil(ceil((2n)^(1/d)) / 2) - 1, computed in exact integer arithmetic."""
    if n < 1 or d not in (1, 2, 3):
        raise ValueError("need n >= 1 and d in {1, 2, 3}")
    k = 1
    while k ** d < 2 * n:
        k += 1
    return (k + 1) // 2 - 1


def max_cross_separation(set_a: Sequence[Position], set_b: Sequence[Position]) -> Tuple[Position, Position, int]:
    """The pair (p in A, q in B) at maximal Chebyshev distance."""
    if len(set_a) != len(set_b):
        raise SizeMismatch(f"{len(set_a)} vs {len(set_b)} points")
    if set(map(tuple, set_a)) & set(map(tuple, set_b)):
        raise NotDisjoint("the two point sets overlap")
    if not set_a:
        raise SizeMismatch("point sets are empty")
    A = np.asarray(set_a, dtype=np.int64)
    B = np.asarray(set_b, dtype=np.int64)
    best = (-1, 0, 0)
    for i in range(len(A)):
        d = np.max(np.abs(B - A[i]), axis=1)
        j = int(np.argmax(d))
        if d[j] > best[0]:
            best = (int(d[j]), i, j)
    delta, i, j = best
    return tuple(set_a[i]), tuple(set_b[j]), delta


@dataclass
class CommTAC:
    base: TAC
    i: int
    j: int
    delta: int
    tac: TAC

    def outputs(self) -> List[Tuple[int, int, int, int]]:
        """(b1, b2, output bit, rho) for the four inputs."""
        rows = []
        for b1 in (0, 1):
            for b2 in (0, 1):
                res = run_parallel(self.tac.system((b1, b2)))
                rows.append((b1, b2, decode(res, self.tac.output)[0], res.rho))
        return rows


def build_comm_tac(base: TAC, i: int, j: int) -> CommTAC:
    """Two-bit AND computer carved out of an n-bit adder (1-based 1 <= j < i <= n).

    Free bits: A_i and B_j (1-based).  A bits j..i-1 are wired to 1, every
    other input bit to 0, and the output is sum bit i+1 (1-based).
    """
    n = len(base.input.wildcards) // 2
    if not (1 <= j < i <= n):
        raise IndexOutOfRange(f"need 1 <= j < i <= n, got i={i}, j={j}, n={n}")
    inp = base.input
    frame = inp.frame.copy()
    for k in range(1, n + 1):
        if k != i:
            frame.cells[inp.wildcards[k - 1]] = inp.one_id if j <= k < i else inp.zero_id
        if k != j:
            frame.cells[inp.wildcards[n + k - 1]] = inp.zero_id
    w1, w2 = inp.wildcards[i - 1], inp.wildcards[n + j - 1]
    tmpl = InputTemplate(frame, [w1, w2], inp.zero_id, inp.one_id, strict=False)
    out = OutputTemplate([base.output.positions[i]])
    tac = TAC(base.tileset, tmpl, out, base.temperature, f"comm-{base.name}-{i}-{j}")
    return CommTAC(base, i, j, chebyshev(w1, w2), tac)


class Floor(NamedTuple):
    max_rho: int
    floor: int
    ok: bool


def comm_runtime_floor(c: CommTAC) -> Floor:
    max_rho = max(row[3] for row in c.outputs())
    floor = math.ceil(c.delta / 2)
    return Floor(max_rho, floor, max_rho >= floor)


def max_separation_pair(base: TAC) -> Tuple[int, int]:
    """1-based (i, j) with j < i maximising the A_i / B_j distance."""
    n = len(base.input.wildcards) // 2
    w = base.input.wildcards
    best = (-1, 2, 1)
    for i in range(2, n + 1):
        for j in range(1, i):
            d = chebyshev(w[i - 1], w[n + j - 1])
            if d > best[0]:
                best = (d, i, j)
    return best[1], best[2]
