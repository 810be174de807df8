"""Shared plumbing for the adder generators.

Every generator builds its tile set through a :class:`Builder`, which
namespaces glue labels and tile ids so tile sets of different constructions
never bond with each other.  Faces can be given in compass terms (N/E/S/W)
or in the abstract frame of a row (F forward along the carry, B back, U away
from the seed, D toward the seed) through an orientation map.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

from ..model import Assembly, Glue, Position, Tile, TileSet
from ..templates import TAC, InputTemplate, OutputTemplate

TEMPERATURE = 2

# abstract face -> compass face
WESTWARD_UP = {"F": "W", "B": "E", "U": "N", "D": "S"}
EASTWARD_DOWN = {"F": "E", "B": "W", "U": "S", "D": "N"}


@dataclass(frozen=True)
class AdderSpec:
    kind: str
    n: int
    n_padded: int
    row_width: int = 0
    section_pairs: int = 0


class Builder:
    def __init__(self, ns: str):
        self.ns = ns
        self.tiles: Dict[str, Tile] = {}
        self.frame: Dict[Position, str] = {}

    def glue(self, spec) -> Glue:
        if spec is None:
            return Glue()
        label, strength = spec
        return Glue(f"{self.ns}.{label}", strength)

    def tile(self, name: str, label: str = "", orient: Optional[Dict[str, str]] = None,
             **faces) -> str:
        tid = f"{self.ns}.{name}"
        glues = {}
        for face, spec in faces.items():
            if spec is None:
                continue
            d = orient[face] if orient else face
            glues[d] = self.glue(spec)
        t = Tile.make(tid, label, **glues)
        old = self.tiles.setdefault(tid, t)
        if old != t:
            raise ValueError(f"conflicting definitions for tile {tid!r}")
        return tid

    def put(self, p: Position, tid: str) -> None:
        if p in self.frame:
            raise ValueError(f"frame position {p} used twice")
        self.frame[p] = tid

    def tileset(self, name: str) -> TileSet:
        return TileSet(self.tiles.values(), name, TEMPERATURE)


def input_tiles(b: Builder, faces: Sequence[str] = ("N",)) -> tuple:
    """The unique 0/1 input tiles, plus an unlabeled twin of t0 for padding.

    Input tiles bond sideways with strength 2 (so a filled row is stable)
    and present their bit on each listed face with strength 1.
    """
    out = []
    for v, label, name in ((0, "0", "in0"), (1, "1", "in1"), (0, "", "pad0")):
        faces_kw = {f: (f"{f}.bit{v}", 1) for f in faces}
        out.append(b.tile(name, label, E=("wild", 2), W=("wild", 2), **faces_kw))
    return tuple(out)


def skip_block_tiles(b: Builder, orient: Dict[str, str], p: str, up: str,
                     with_unknown: bool = False) -> None:
    """Tiles of the three-layer skip block on a row with the given orientation.

    ``p`` prefixes glue labels (one prefix per orientation); ``up`` is the
    compass face the input bits present toward the growing layers.
    Carry values are 0, 1 and, with ``with_unknown``, "U" for a carry that
    still depends on the previous section.
    """
    carries = ["0", "1"] + (["U"] if with_unknown else [])
    bit = f"{up}.bit"
    t = lambda name, label="", **kw: b.tile(f"{p}{name}", label, orient, **kw)  # noqa: E731

    t("R1S", D=(f"{p}S", 2), F=(f"{p}r1s", 1), U=(f"{p}r1sU", 1))
    for a in (0, 1):
        t(f"R1A{a}", B=(f"{p}r1s", 1), D=(f"{bit}{a}", 1), F=(f"{p}a{a}", 1), U=(f"{p}r1a", 1))
        for bb in (0, 1):
            top = (f"{p}gen{a}", 2) if a == bb else (f"{p}prop", 1)
            t(f"R1B{a}{bb}", B=(f"{p}a{a}", 1), D=(f"{bit}{bb}", 1), U=top)
    for c in carries:
        known = c != "U"
        t(f"R2S{c}", B=(f"{p}c{c}", 1), D=(f"{p}r1sU", 1), F=(f"{p}cS{c}", 1),
          U=None if known else (f"{p}sU", 1))
        t(f"R2A{c}", B=(f"{p}cS{c}", 1), D=(f"{p}r1a", 1), F=(f"{p}cA{c}", 1),
          U=(f"{p}cin{c}", 2) if known else (f"{p}cinU", 1))
        psum = (f"{p}psum{1 - int(c)}", 2) if known else (f"{p}psumU", 1)
        t(f"R2P{c}", B=(f"{p}cA{c}", 1), D=(f"{p}prop", 1), F=(f"{p}c{c}", 1), U=psum)
    for g in (0, 1):
        t(f"R2G{g}", D=(f"{p}gen{g}", 2), F=(f"{p}c{g}", 1), U=(f"{p}G", 1))
        t(f"R3A{g}", D=(f"{p}cin{g}", 2), F=(f"{p}o{g}", 1))
        t(f"OUTG{g}", str(g), B=(f"{p}o{g}", 1), D=(f"{p}G", 1))
        t(f"OUTP{g}", str(g), D=(f"{p}psum{g}", 2))
    if with_unknown:
        # second pass: the real carry sweeps the blocks whose carry-in was U
        for r in (0, 1):
            t(f"R3S{r}", B=(f"{p}real{r}", 1), D=(f"{p}sU", 1), F=(f"{p}rS{r}", 1))
            t(f"R3AR{r}", B=(f"{p}rS{r}", 1), D=(f"{p}cinU", 1), F=(f"{p}oR{r}", 1))
            t(f"OUTGR{r}", str(r), B=(f"{p}oR{r}", 1), D=(f"{p}G", 1))
            t(f"OUTPU{r}", str(1 - r), B=(f"{p}oR{r}", 1), D=(f"{p}psumU", 1),
              F=(f"{p}real{r}", 1))


def finish(b: Builder, spec: AdderSpec, a_pos: List[Position], b_pos: List[Position],
           c_pos: List[Position], extra_geometry: Optional[dict] = None) -> TAC:
    """Assemble the TAC; bits at index >= n are padded with the blank zero tile.

    ``a_pos``/``b_pos`` cover all n_padded bits, ``c_pos`` has n_padded + 1
    entries (sum bits then the final carry).
    """
    n = spec.n
    pad = f"{b.ns}.pad0"
    for p in a_pos[n:] + b_pos[n:]:
        b.put(p, pad)
    ts = b.tileset(f"{spec.kind}")
    frame = Assembly(ts, dict(b.frame))
    inp = InputTemplate(frame, a_pos[:n] + b_pos[:n], f"{b.ns}.in0", f"{b.ns}.in1")
    out = OutputTemplate(c_pos[:n + 1])
    geometry = {
        "kind": spec.kind,
        "n": n,
        "n_padded": spec.n_padded,
        "row_width": spec.row_width,
        "section_pairs": spec.section_pairs,
        "a": [list(p) for p in a_pos[:n]],
        "b": [list(p) for p in b_pos[:n]],
        "c": [list(p) for p in c_pos[:n + 1]],
    }
    if extra_geometry:
        geometry.update(extra_geometry)
    return TAC(ts, inp, out, TEMPERATURE, f"{spec.kind}-{n}", geometry)
