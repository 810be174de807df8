"""Verification sweeps and benchmark records for the adder constructions."""

from __future__ import annotations

import csv
import io
import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, field
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .constructions import KINDS, adversarial_input, build
from .engine import derive_seed, run_continuous, run_parallel
from .templates import bits_to_int, decode

HEADER = ("kind,n,input_kind,trial,mode,a_hex,b_hex,rho,sigma,tiles_placed,"
          "tileset_size,rng_seed").split(",")
INPUT_KINDS = ("random", "adversarial", "zeros")
MODES = ("parallel", "continuous")


@lru_cache(maxsize=None)
def cached_tac(kind: str, n: int):
    return build(kind, n)


def make_input(kind: str, n: int, input_kind: str, seed: int) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    if input_kind == "zeros":
        return (0,) * n, (0,) * n
    if input_kind == "adversarial":
        return adversarial_input(kind, n)
    if input_kind == "random":
        g = np.random.Generator(np.random.PCG64(seed))
        bits = g.integers(0, 2, size=2 * n)
        return tuple(int(v) for v in bits[:n]), tuple(int(v) for v in bits[n:])
    raise ValueError(f"unknown input kind {input_kind!r}")


@dataclass
class VerifyReport:
    kind: str
    n: int
    total: int = 0
    passed: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.passed == self.total


def verify(kind: str, n: int, exhaustive: bool = False, samples: int = 1000,
           rng_seed: int = 0, pairs: Optional[Iterable] = None) -> VerifyReport:
    """Compare decoded sums with integer addition; errors count as failures."""
    if exhaustive and n > 8:
        raise ValueError("exhaustive verification is limited to n <= 8")
    tac = cached_tac(kind, n)
    if pairs is None:
        if exhaustive:
            vals = range(2 ** n)
            pairs = ((tuple((a >> i) & 1 for i in range(n)), tuple((b >> i) & 1 for i in range(n)))
                     for a, b in itertools.product(vals, vals))
        else:
            pairs = (make_input(kind, n, "random", derive_seed(rng_seed, n, t)) for t in range(samples))
    rep = VerifyReport(kind, n)
    for a, b in pairs:
        rep.total += 1
        want = bits_to_int(a) + bits_to_int(b)
        try:
            res = run_parallel(tac.system(tuple(a) + tuple(b)))
            got = bits_to_int(decode(res, tac.output))
        except Exception as e:  # any simulation error is a reported failure
            rep.failures.append(f"a={bits_to_int(a):x} b={bits_to_int(b):x}: {type(e).__name__}: {e}")
            continue
        if got == want:
            rep.passed += 1
        else:
            rep.failures.append(f"a={bits_to_int(a):x} b={bits_to_int(b):x}: got {got:x} want {want:x}")
    return rep


@dataclass
class BenchRecord:
    kind: str
    n: int
    input_kind: str
    trial: int
    mode: str
    a_hex: str
    b_hex: str
    rho: int
    sigma: str
    tiles_placed: int
    tileset_size: int
    rng_seed: int


def _task(args) -> List[BenchRecord]:
    kind, n, input_kind, trial, modes, base_seed = args
    seed = derive_seed(base_seed, KINDS.index(kind), n, INPUT_KINDS.index(input_kind), trial)
    tac = cached_tac(kind, n)
    a, b = make_input(kind, n, input_kind, seed)
    sys = tac.system(a + b)
    par = run_parallel(sys)
    common = (kind, n, input_kind, trial)
    ah, bh = f"{bits_to_int(a):x}", f"{bits_to_int(b):x}"
    size = len(tac.tileset)
    out = []
    for mode in MODES:
        if mode not in modes:
            continue
        if mode == "parallel":
            out.append(BenchRecord(*common, mode, ah, bh, par.rho, "", par.tiles_placed, size, seed))
        else:
            cont = run_continuous(sys, seed)
            out.append(BenchRecord(*common, mode, ah, bh, par.rho, f"{cont.sigma_sample:.17g}",
                                   cont.tiles_placed, size, seed))
    return out


def bench(kinds: Sequence[str], n_list: Sequence[int], trials: int,
          modes: Sequence[str] = MODES, rng_seed: int = 0,
          input_kinds: Sequence[str] = INPUT_KINDS, workers: int = 1) -> List[BenchRecord]:
    """One record per (kind, n, input_kind, trial, mode), in that order.

    The continuous row also carries the parallel rho of the same system so
    the two run-time models can be compared row by row.
    """
    for m in modes:
        if m not in MODES:
            raise ValueError(f"unknown mode {m!r}")
    tasks = [(k, n, ik, t, tuple(modes), rng_seed)
             for k in kinds for n in n_list for ik in input_kinds for t in range(trials)]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(workers) as ex:
            chunks = list(ex.map(_task, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
    else:
        chunks = [_task(t) for t in tasks]
    return [r for chunk in chunks for r in chunk]


def write_csv(records: Iterable[BenchRecord], stream) -> None:
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(HEADER)
    for r in records:
        w.writerow(astuple(r))


def csv_text(records: Iterable[BenchRecord]) -> str:
    buf = io.StringIO()
    write_csv(records, buf)
    return buf.getvalue()
