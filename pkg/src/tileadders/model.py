"""Tiles, glues, assemblies and the single-tile attachment rule.

Positions are ``(x, y)`` integer tuples with x growing east and y growing
north.  Glues bond only when their labels are equal and non-empty; the
bond strength is the (shared) glue strength.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

import networkx as nx

Position = Tuple[int, int]

DIRECTIONS = ("N", "E", "S", "W")
OFFSETS = {"N": (0, 1), "E": (1, 0), "S": (0, -1), "W": (-1, 0)}
OPPOSITE = {"N": "S", "S": "N", "E": "W", "W": "E"}


class TileAssemblyError(Exception):
    """Base class for errors raised by the model and engine."""


class OccupiedPosition(TileAssemblyError):
    pass


class InsufficientStrength(TileAssemblyError):
    pass


@dataclass(frozen=True)
class Glue:
    label: str = ""
    strength: int = 0

    def __post_init__(self):
        if self.strength < 0:
            raise ValueError(f"negative glue strength {self.strength}")
        if not self.label and self.strength:
            raise ValueError("the null glue must have strength 0")

    @property
    def is_null(self) -> bool:
        return not self.label

    def bonds_with(self, other: "Glue") -> int:
        """Strength of the bond formed with a facing glue (0 if none)."""
        if self.label and self.label == other.label:
            return self.strength
        return 0


NULL_GLUE = Glue()


@dataclass(frozen=True)
class Tile:
    id: str
    label: str = ""
    north: Glue = NULL_GLUE
    east: Glue = NULL_GLUE
    south: Glue = NULL_GLUE
    west: Glue = NULL_GLUE

    def __post_init__(self):
        if self.label not in ("0", "1", ""):
            raise ValueError(f"tile {self.id!r}: display label must be '0', '1' or ''")

    def glue(self, direction: str) -> Glue:
        return {"N": self.north, "E": self.east, "S": self.south, "W": self.west}[direction]

    @classmethod
    def make(cls, id: str, label: str = "", **glues) -> "Tile":
        """Build a tile from ``N=("g", 2)``-style keyword glues."""
        kw = {}
        for d, name in zip(DIRECTIONS, ("north", "east", "south", "west")):
            spec = glues.get(d)
            if spec is None:
                continue
            kw[name] = spec if isinstance(spec, Glue) else Glue(*spec)
        return cls(id, label, **kw)


class TileSet:
    """An ordered collection of tiles with unique ids."""

    def __init__(self, tiles: Iterable[Tile], name: str = "", temperature: int = 2):
        self.name = name
        self.temperature = temperature
        self.tiles: List[Tile] = []
        self._by_id: Dict[str, Tile] = {}
        for t in tiles:
            if t.id in self._by_id:
                if self._by_id[t.id] == t:
                    continue
                raise ValueError(f"duplicate tile id {t.id!r}")
            self._by_id[t.id] = t
            self.tiles.append(t)
        strengths: Dict[str, int] = {}
        for t in self.tiles:
            for d in DIRECTIONS:
                g = t.glue(d)
                if g.label and strengths.setdefault(g.label, g.strength) != g.strength:
                    raise ValueError(f"glue {g.label!r} used with two strengths")

    def __len__(self) -> int:
        return len(self.tiles)

    def __iter__(self) -> Iterator[Tile]:
        return iter(self.tiles)

    def __contains__(self, tile_id: str) -> bool:
        return tile_id in self._by_id

    def __getitem__(self, tile_id: str) -> Tile:
        return self._by_id[tile_id]

    def with_labels(self, label: str) -> List[Tile]:
        return [t for t in self.tiles if t.label == label]

    def to_dict(self) -> dict:
        out = []
        for t in self.tiles:
            glues = {}
            for d in DIRECTIONS:
                g = t.glue(d)
                if not g.is_null:
                    glues[d] = {"label": g.label, "strength": g.strength}
            out.append({"id": t.id, "label": t.label, "glues": glues})
        return {"name": self.name, "temperature": self.temperature, "tiles": out}

    @classmethod
    def from_dict(cls, doc: dict) -> "TileSet":
        tiles = []
        for rec in doc["tiles"]:
            glues = {d: (g["label"], g["strength"]) for d, g in rec.get("glues", {}).items()}
            tiles.append(Tile.make(rec["id"], rec.get("label", ""), **glues))
        return cls(tiles, doc.get("name", ""), doc.get("temperature", 2))

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_json(cls, text: str) -> "TileSet":
        return cls.from_dict(json.loads(text))


@dataclass
class Assembly:
    """Sparse map from positions to tile ids drawn from ``tileset``."""

    tileset: TileSet
    cells: Dict[Position, str] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.cells)

    def __contains__(self, p: Position) -> bool:
        return p in self.cells

    def __getitem__(self, p: Position) -> str:
        return self.cells[p]

    def get(self, p: Position) -> Optional[str]:
        return self.cells.get(p)

    def tile_at(self, p: Position) -> Optional[Tile]:
        tid = self.cells.get(p)
        return None if tid is None else self.tileset[tid]

    def copy(self) -> "Assembly":
        return Assembly(self.tileset, dict(self.cells))

    def place(self, p: Position, tile_id: str) -> None:
        if p in self.cells:
            raise OccupiedPosition(f"position {p} already holds {self.cells[p]!r}")
        if tile_id not in self.tileset:
            raise KeyError(tile_id)
        self.cells[p] = tile_id

    def is_subassembly_of(self, other: "Assembly") -> bool:
        return all(other.cells.get(p) == t for p, t in self.cells.items())

    def bounding_box(self) -> Tuple[int, int, int, int]:
        xs = [p[0] for p in self.cells]
        ys = [p[1] for p in self.cells]
        return min(xs), min(ys), max(xs), max(ys)

    def sorted_cells(self) -> List[Tuple[int, int, str]]:
        return sorted((x, y, t) for (x, y), t in self.cells.items())

    def to_dict(self) -> dict:
        return {"cells": [{"x": x, "y": y, "tile_id": t} for x, y, t in self.sorted_cells()]}

    @classmethod
    def from_dict(cls, tileset: TileSet, doc: dict) -> "Assembly":
        return cls(tileset, {(c["x"], c["y"]): c["tile_id"] for c in doc["cells"]})

    def __eq__(self, other) -> bool:
        if not isinstance(other, Assembly):
            return NotImplemented
        return self.cells == other.cells


def neighbor(p: Position, direction: str) -> Position:
    dx, dy = OFFSETS[direction]
    return (p[0] + dx, p[1] + dy)


def chebyshev(p: Position, q: Position) -> int:
    return max(abs(p[0] - q[0]), abs(p[1] - q[1]))


def bond_strength(a: Tile, b: Tile, direction: str) -> int:
    """Bond between ``a`` and ``b`` when ``b`` sits in ``direction`` of ``a``."""
    return a.glue(direction).bonds_with(b.glue(OPPOSITE[direction]))


def bond_graph(a: Assembly) -> nx.Graph:
    """Weighted bond graph: one vertex per tile, edges for positive bonds."""
    g = nx.Graph()
    g.add_nodes_from(a.cells)
    for p, tid in a.cells.items():
        t = a.tileset[tid]
        for d in ("N", "E"):
            q = neighbor(p, d)
            other = a.tile_at(q)
            if other is None:
                continue
            w = bond_strength(t, other, d)
            if w > 0:
                g.add_edge(p, q, weight=w)
    return g


def min_cut(a: Assembly) -> float:
    """Weight of the global minimum cut of the bond graph (inf for one tile)."""
    g = bond_graph(a)
    if g.number_of_nodes() < 2:
        return float("inf")
    if not nx.is_connected(g):
        return 0
    value, _ = nx.stoer_wagner(g)
    return value


def is_tau_stable(a: Assembly, tau: int) -> bool:
    if len(a) == 0:
        raise ValueError("stability is undefined for the empty assembly")
    return min_cut(a) >= tau


def attachment_strength(a: Assembly, t: Tile, p: Position) -> int:
    total = 0
    for d in DIRECTIONS:
        other = a.tile_at(neighbor(p, d))
        if other is not None:
            total += bond_strength(t, other, d)
    return total


def can_attach(a: Assembly, t: Tile, p: Position, tau: int) -> bool:
    return p not in a.cells and attachment_strength(a, t, p) >= tau


def attach(a: Assembly, t: Tile, p: Position, tau: Optional[int] = None) -> Assembly:
    """Return a new assembly with ``t`` placed at ``p``; ``a`` is left untouched."""
    if tau is None:
        tau = a.tileset.temperature
    if p in a.cells:
        raise OccupiedPosition(f"position {p} already holds {a.cells[p]!r}")
    s = attachment_strength(a, t, p)
    if s < tau:
        raise InsufficientStrength(f"tile {t.id!r} binds with strength {s} < {tau} at {p}")
    out = a.copy()
    out.cells[p] = t.id
    return out

