"""Input/output templates and tile assembly computers (TACs).

A TAC turns bit strings into seeds by dropping the designated "0" or "1"
input tile onto each wildcard position of a fixed frame, and reads its
answer off the display labels found at the output positions once growth
stops.  Bit strings are tuples of ints with index 0 the least significant.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .engine import RunResult, TileSystem, run_continuous, run_parallel
from .model import Assembly, Position, TileAssemblyError, TileSet

Bits = Tuple[int, ...]


class LengthMismatch(ValueError):
    pass


class OutputUnresolved(TileAssemblyError):
    pass


class OutputUnlabeled(TileAssemblyError):
    pass


def bits_from_int(value: int, n: int) -> Bits:
    if value < 0 or value >> n:
        raise ValueError(f"{value} does not fit in {n} bits")
    return tuple((value >> i) & 1 for i in range(n))


def bits_to_int(bits: Sequence[int]) -> int:
    return sum(b << i for i, b in enumerate(bits))


def parse_msb(text: str) -> Bits:
    """``"1001"`` (most significant first) to LSB-first bits."""
    if not text or set(text) - {"0", "1"}:
        raise ValueError(f"not a binary string: {text!r}")
    return tuple(int(c) for c in reversed(text))


def format_msb(bits: Sequence[int]) -> str:
    return "".join(str(b) for b in reversed(bits))


def _pos_list(doc) -> List[Position]:
    return [(p["x"], p["y"]) for p in doc]


@dataclass
class InputTemplate:
    frame: Assembly
    wildcards: List[Position]
    zero_id: str
    one_id: str
    # a communication frame hard-codes input tiles, so it may relax this
    strict: bool = True

    def __post_init__(self):
        self.wildcards = [tuple(p) for p in self.wildcards]
        if len(set(self.wildcards)) != len(self.wildcards):
            raise ValueError("wildcard positions must be distinct")
        clash = [p for p in self.wildcards if p in self.frame]
        if clash:
            raise ValueError(f"wildcards overlap the frame at {clash[:3]}")
        ts = self.frame.tileset
        if ts[self.zero_id].label != "0" or ts[self.one_id].label != "1":
            raise ValueError("input tiles must carry the display labels '0' and '1'")
        if self.strict and any(t in (self.zero_id, self.one_id) for t in self.frame.cells.values()):
            raise ValueError("the frame may not contain the input tiles")

    def __len__(self) -> int:
        return len(self.wildcards)


@dataclass
class OutputTemplate:
    positions: List[Position]

    def __post_init__(self):
        self.positions = [tuple(p) for p in self.positions]
        if len(set(self.positions)) != len(self.positions):
            raise ValueError("output positions must be distinct")

    def __len__(self) -> int:
        return len(self.positions)


def fill(template: InputTemplate, bits: Sequence[int]) -> Assembly:
    """The frame plus the 0/1 input tile at every wildcard."""
    if len(bits) != len(template.wildcards):
        raise LengthMismatch(f"{len(bits)} bits for {len(template.wildcards)} wildcards")
    out = template.frame.copy()
    for p, b in zip(template.wildcards, bits):
        if b not in (0, 1):
            raise ValueError(f"bit value {b!r}")
        out.cells[p] = template.one_id if b else template.zero_id
    return out


def decode(a, out: OutputTemplate) -> Bits:
    """Read display labels at the output positions of an Assembly or RunResult."""
    bits = []
    for p in out.positions:
        t = a.tile_at(p)
        if t is None:
            raise OutputUnresolved(f"no tile at output position {p}")
        if t.label not in ("0", "1"):
            raise OutputUnlabeled(f"tile {t.id!r} at {p} has no 0/1 label")
        bits.append(int(t.label))
    return tuple(bits)


@dataclass
class TAC:
    tileset: TileSet
    input: InputTemplate
    output: OutputTemplate
    temperature: int = 2
    name: str = ""
    geometry: Dict = field(default_factory=dict)

    def system(self, bits: Sequence[int]) -> TileSystem:
        return TileSystem(self.tileset, fill(self.input, bits), self.temperature)

    def to_dict(self) -> dict:
        doc = self.tileset.to_dict()
        doc["temperature"] = self.temperature
        doc["input"] = {
            "wildcards": [{"x": x, "y": y} for x, y in self.input.wildcards],
            "zero_tile": self.input.zero_id,
            "one_tile": self.input.one_id,
            "strict": self.input.strict,
        }
        doc["output"] = {"positions": [{"x": x, "y": y} for x, y in self.output.positions]}
        doc["frame"] = self.input.frame.to_dict()
        if self.geometry:
            doc["geometry"] = self.geometry
        return doc

    @classmethod
    def from_dict(cls, doc: dict) -> "TAC":
        ts = TileSet.from_dict(doc)
        inp = InputTemplate(
            Assembly.from_dict(ts, doc["frame"]),
            _pos_list(doc["input"]["wildcards"]),
            doc["input"]["zero_tile"],
            doc["input"]["one_tile"],
            doc["input"].get("strict", True),
        )
        out = OutputTemplate(_pos_list(doc["output"]["positions"]))
        return cls(ts, inp, out, doc.get("temperature", 2), doc.get("name", ""),
                   doc.get("geometry", {}))


def tac_run(tac: TAC, a: Sequence[int], b: Optional[Sequence[int]] = None,
            mode: str = "parallel", rng_seed: Optional[int] = None,
            **run_kw) -> Tuple[Bits, RunResult]:
    """Fill with ``a`` followed by ``b``, run to terminal and decode.

    The wildcard order of every adder in this package is A_0..A_{n-1} then
    B_0..B_{n-1}; pass ``b=None`` to give the full input vector directly.
    """
    bits = tuple(a) + (tuple(b) if b is not None else ())
    sys = tac.system(bits)
    if mode == "parallel":
        res = run_parallel(sys, **run_kw)
    elif mode == "continuous":
        if rng_seed is None:
            raise ValueError("continuous mode needs an rng_seed")
        res = run_continuous(sys, rng_seed, **run_kw)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return decode(res, tac.output), res
