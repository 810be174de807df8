"""Execution of tile systems under the parallel and continuous run-time models.

The hot loops live in ``_ckernel`` (Cython) with ``_pykernel`` as a
pure-Python fallback picked at import time.  Set ``TILEADDERS_KERNEL=python``
to force the fallback.  Both kernels consume the same flat-array encoding of
a tile set, built once per tile set by :func:`compile_tileset`.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, NamedTuple, Optional, Set, Tuple

import numpy as np

from . import _pykernel
from .model import (
    DIRECTIONS,
    Assembly,
    Position,
    TileAssemblyError,
    TileSet,
    is_tau_stable,
    neighbor,
)

try:
    from . import _ckernel
except ImportError:  # pragma: no cover - depends on the build
    _ckernel = None

KERNELS = {"python": _pykernel}
if _ckernel is not None:
    KERNELS["cython"] = _ckernel

if os.environ.get("TILEADDERS_KERNEL", "").lower() == "python" or _ckernel is None:
    DEFAULT_KERNEL = "python"
else:
    DEFAULT_KERNEL = "cython"

RNG_NAME = "xoshiro256**/splitmix64"

TERMINAL, BUDGET, CONFLICT, OUT_OF_BOUNDS = 0, 1, 2, 3
_MARGIN = 8
_MAX_MARGIN = 1 << 16


class NondeterministicConflict(TileAssemblyError):
    def __init__(self, position, msg=""):
        super().__init__(msg or f"two distinct tiles can attach at {position}")
        self.position = position


class StepBudgetExceeded(TileAssemblyError):
    pass


class EventBudgetExceeded(TileAssemblyError):
    pass


class UnstableSeed(TileAssemblyError):
    pass


def kernel(name: Optional[str] = None):
    name = name or DEFAULT_KERNEL
    try:
        return KERNELS[name]
    except KeyError:
        raise ValueError(f"kernel {name!r} is not available; have {sorted(KERNELS)}") from None


# -- tile-set compilation -------------------------------------------------


@dataclass
class CompiledTileSet:
    """Flat-array view of a tile set shared by both kernels."""

    ids: List[str]
    index: Dict[str, int]
    tile_glue: np.ndarray  # int32[ntiles*4], glue id per (tile, N/E/S/W), 0 = null
    glue_str: np.ndarray  # int32[nglue]
    cand_ptr: np.ndarray  # int32[4*nglue+1]
    cand_idx: np.ndarray  # tiles whose side d carries glue g, CSR by d*nglue+g
    nglue: int

    @property
    def ntiles(self) -> int:
        return len(self.ids)

    def candidates(self, d: int, g: int) -> np.ndarray:
        key = d * self.nglue + g
        return self.cand_idx[self.cand_ptr[key]:self.cand_ptr[key + 1]]


def compile_tileset(ts: TileSet) -> CompiledTileSet:
    cached = getattr(ts, "_compiled", None)
    if cached is not None:
        return cached
    glue_ids = {"": 0}
    strengths = [0]
    ids = [t.id for t in ts]
    tile_glue = np.zeros(len(ids) * 4, dtype=np.int32)
    for i, t in enumerate(ts):
        for d, name in enumerate(DIRECTIONS):
            g = t.glue(name)
            if g.label not in glue_ids:
                glue_ids[g.label] = len(strengths)
                strengths.append(g.strength)
            tile_glue[i * 4 + d] = glue_ids[g.label]
    nglue = len(strengths)
    buckets: List[List[int]] = [[] for _ in range(4 * nglue)]
    for i in range(len(ids)):
        for d in range(4):
            g = int(tile_glue[i * 4 + d])
            if g:
                buckets[d * nglue + g].append(i)
    cand_ptr = np.zeros(4 * nglue + 1, dtype=np.int32)
    cand_ptr[1:] = np.cumsum([len(b) for b in buckets])
    cand_idx = np.array([i for b in buckets for i in b], dtype=np.int32)
    comp = CompiledTileSet(
        ids=ids,
        index={tid: i for i, tid in enumerate(ids)},
        tile_glue=tile_glue,
        glue_str=np.array(strengths, dtype=np.int32),
        cand_ptr=cand_ptr,
        cand_idx=cand_idx,
        nglue=nglue,
    )
    ts._compiled = comp
    return comp


# -- systems and results ----------------------------------------------------


class Move(NamedTuple):
    position: Position
    tile_id: str


@dataclass
class TileSystem:
    tileset: TileSet
    seed: Assembly
    temperature: Optional[int] = None

    def __post_init__(self):
        if self.temperature is None:
            self.temperature = self.tileset.temperature
        if self.temperature < 1:
            raise ValueError("temperature must be positive")
        for p, tid in self.seed.cells.items():
            if tid not in self.tileset:
                raise KeyError(f"seed tile {tid!r} at {p} is not in the tile set")

    def validate(self) -> None:
        """Check the seed is temperature-stable (min-cut; small seeds only)."""
        if not is_tau_stable(self.seed, self.temperature):
            raise UnstableSeed("seed assembly is not temperature-stable")

    @cached_property
    def compiled(self) -> CompiledTileSet:
        return compile_tileset(self.tileset)

    @cached_property
    def _seed_cells(self) -> List[Tuple[int, int, int]]:
        idx = self.compiled.index
        return sorted((x, y, idx[t]) for (x, y), t in self.seed.cells.items())

    def default_max_steps(self) -> int:
        return 16 * (len(self.seed) + 64)

    def default_max_events(self) -> int:
        return 64 * (len(self.seed) + 64)


@dataclass
class _Layout:
    x0: int
    y0: int
    width: int
    height: int
    grid: np.ndarray
    init_pos: np.ndarray


def _layout(sys: TileSystem, margin: int) -> _Layout:
    cells = sys._seed_cells
    if cells:
        xs = [c[0] for c in cells]
        ys = [c[1] for c in cells]
        x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    else:
        x0 = x1 = y0 = y1 = 0
    x0 -= margin
    y0 -= margin
    width = x1 - x0 + margin + 1
    height = y1 - y0 + margin + 1
    grid = np.full(width * height, -1, dtype=np.int32)
    for x, y, t in cells:
        grid[(y - y0) * width + (x - x0)] = t
    init = []
    for x, y, _ in cells:
        q = (y - y0) * width + (x - x0)
        for off in (width, 1, -width, -1):
            if grid[q + off] < 0:
                init.append(q + off)
    return _Layout(x0, y0, width, height, grid, np.array(init, dtype=np.int32))


@dataclass
class RunResult:
    """Outcome of a run.  The terminal assembly is materialised lazily."""

    system: TileSystem
    rho: Optional[int]
    sigma_sample: Optional[float]
    tiles_placed: int
    _layout: _Layout = field(repr=False)
    _grid: np.ndarray = field(repr=False)
    _times: np.ndarray = field(repr=False)

    def _q(self, p: Position) -> int:
        x, y = p[0] - self._layout.x0, p[1] - self._layout.y0
        if 0 <= x < self._layout.width and 0 <= y < self._layout.height:
            return y * self._layout.width + x
        return -1

    def get(self, p: Position) -> Optional[str]:
        """Tile id at ``p`` in the terminal assembly, without building it."""
        q = self._q(p)
        if q < 0 or self._grid[q] < 0:
            return None
        return self.system.compiled.ids[self._grid[q]]

    def tile_at(self, p: Position):
        tid = self.get(p)
        return None if tid is None else self.system.tileset[tid]

    def _occupied(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        lay = self._layout
        g2 = self._grid.reshape(lay.height, lay.width)
        # transpose so nonzero() comes out ordered by x, then y
        xi, yi = np.nonzero(g2.T >= 0)
        return xi + lay.x0, yi + lay.y0, g2[yi, xi]

    @cached_property
    def terminal(self) -> Assembly:
        xs, ys, ts = self._occupied()
        ids = self.system.compiled.ids
        cells = {(int(x), int(y)): ids[t] for x, y, t in zip(xs, ys, ts)}
        return Assembly(self.system.tileset, cells)

    @cached_property
    def terminal_hash(self) -> int:
        xs, ys, ts = self._occupied()
        ids = self.system.compiled.ids
        # positions are unique, so (x, y) order is the (x, y, tile_id) order
        text = "".join(f"{x},{y},{ids[t]}\n" for x, y, t in zip(xs.tolist(), ys.tolist(), ts.tolist()))
        return fnv1a64(text.encode())

    def placement_times(self) -> Dict[Position, float]:
        """Step (parallel) or time (continuous) at which each grown tile attached."""
        lay = self._layout
        g2 = self._grid.reshape(lay.height, lay.width)
        seedmask = lay.grid.reshape(lay.height, lay.width) >= 0
        yi, xi = np.nonzero((g2 >= 0) & ~seedmask)
        t2 = self._times.reshape(lay.height, lay.width)
        return {(int(x) + lay.x0, int(y) + lay.y0): float(t2[y, x]) for y, x in zip(yi, xi)}

    def to_dict(self) -> dict:
        return {
            "rho": self.rho,
            "sigma_sample": self.sigma_sample,
            "tiles_placed": self.tiles_placed,
            "terminal_hash": f"{self.terminal_hash:016x}",
        }


def fnv1a64(data: bytes) -> int:
    k = _ckernel if _ckernel is not None and DEFAULT_KERNEL == "cython" else _pykernel
    return int(k.fnv1a64(data))


# -- kernel dispatch --------------------------------------------------------


def _call(sys: TileSystem, mode: str, budget: int, seed: int, kern: Optional[str]):
    k = kernel(kern)
    comp = sys.compiled
    margin = _MARGIN
    while True:
        lay = _layout(sys, margin)
        grid = lay.grid.copy()
        times = np.zeros(grid.shape[0], dtype=np.float64)
        args = [lay.width, lay.height, comp.tile_glue, comp.glue_str, comp.cand_ptr,
                comp.cand_idx, comp.nglue, comp.ntiles, sys.temperature, lay.init_pos]
        if k is _pykernel:
            g, tm = grid.tolist(), times.tolist()
            args = [g, tm] + [a.tolist() if isinstance(a, np.ndarray) else a for a in args]
        else:
            args = [grid, times] + args
        if mode == "parallel":
            out = k.run_parallel(*args, budget)
        else:
            out = k.run_continuous(*args, seed & _pykernel.MASK64, budget, float(comp.ntiles))
        if k is _pykernel:
            grid[:] = g
            times[:] = tm
        status = out[0]
        if status != OUT_OF_BOUNDS:
            return status, out, lay, grid, times
        if margin >= _MAX_MARGIN:
            raise TileAssemblyError("assembly keeps growing; giving up")
        margin *= 4


def _pos(lay: _Layout, q: int) -> Position:
    return (q % lay.width + lay.x0, q // lay.width + lay.y0)


def run_parallel(sys: TileSystem, max_steps: Optional[int] = None, *, kernel: Optional[str] = None,
                 allow_budget: bool = False) -> RunResult:
    """Run parallel steps until terminal.

    With ``allow_budget`` the run simply stops after ``max_steps`` steps and
    the partial assembly is returned instead of raising.
    """
    if max_steps is None:
        max_steps = sys.default_max_steps()
    status, (_, steps, placed, bad), lay, grid, times = _call(sys, "parallel", max_steps, 0, kernel)
    if status == CONFLICT:
        raise NondeterministicConflict(_pos(lay, bad))
    if status == BUDGET and not allow_budget:
        raise StepBudgetExceeded(f"not terminal after {max_steps} parallel steps")
    return RunResult(sys, int(steps), None, int(placed), lay, grid, times)


def run_continuous(sys: TileSystem, rng_seed: int, max_events: Optional[int] = None, *,
                   kernel: Optional[str] = None) -> RunResult:
    """One continuous-time trajectory; each frontier move fires at rate 1/|T|."""
    if max_events is None:
        max_events = sys.default_max_events()
    status, (_, elapsed, events, bad), lay, grid, times = _call(
        sys, "continuous", max_events, rng_seed, kernel)
    if status == CONFLICT:
        raise NondeterministicConflict(_pos(lay, bad))
    if status == BUDGET:
        raise EventBudgetExceeded(f"not terminal after {max_events} attachment events")
    return RunResult(sys, None, float(elapsed), int(events), lay, grid, times)


def derive_seed(base: int, *keys: int) -> int:
    """Independent 64-bit stream seed for ``(base, keys...)``."""
    state = base & _pykernel.MASK64
    out = state
    for k in keys:
        state, out = _pykernel.splitmix64(state ^ ((k * 0xD1B54A32D192ED03) & _pykernel.MASK64))
    return out


def continuous_samples(sys: TileSystem, trials: int, rng_seed: int, *,
                       kernel: Optional[str] = None) -> np.ndarray:
    return np.array([run_continuous(sys, derive_seed(rng_seed, i), kernel=kernel).sigma_sample
                     for i in range(trials)])


def mean_ci95(samples) -> Tuple[float, float]:
    x = np.asarray(samples, dtype=float)
    if len(x) < 2:
        raise ValueError("need at least two samples")
    return float(x.mean()), float(1.959963984540054 * x.std(ddof=1) / math.sqrt(len(x)))


def estimate_continuous_mean(sys: TileSystem, trials: int, rng_seed: int, *,
                             kernel: Optional[str] = None) -> Tuple[float, float]:
    """Sample mean of ς and its normal-approximation 95% half-width."""
    if trials < 2:
        raise ValueError("trials must be at least 2")
    return mean_ci95(continuous_samples(sys, trials, rng_seed, kernel=kernel))


# -- reference (slow) semantics on Assembly objects ---------------------------


def frontier(sys: TileSystem, a: Assembly) -> Set[Move]:
    """Every (position, tile) pair attachable to ``a`` at the system temperature."""
    comp = sys.compiled
    tau = sys.temperature
    empties = {neighbor(p, d) for p in a.cells for d in DIRECTIONS} - a.cells.keys()
    moves = set()
    for p in empties:
        strength: Dict[int, int] = {}
        for d, name in enumerate(DIRECTIONS):
            tid = a.cells.get(neighbor(p, name))
            if tid is None:
                continue
            g = int(comp.tile_glue[comp.index[tid] * 4 + (d + 2) % 4])
            if g == 0:
                continue
            for c in comp.candidates(d, g):
                strength[int(c)] = strength.get(int(c), 0) + int(comp.glue_str[g])
        moves.update(Move(p, comp.ids[c]) for c, s in strength.items() if s >= tau)
    return moves


def parallel_step(sys: TileSystem, a: Assembly) -> Assembly:
    """Apply every frontier move at once."""
    moves = frontier(sys, a)
    seen: Dict[Position, str] = {}
    for m in moves:
        if seen.setdefault(m.position, m.tile_id) != m.tile_id:
            raise NondeterministicConflict(m.position)
    out = a.copy()
    out.cells.update(seen)
    return out
