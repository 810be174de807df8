import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

import pytest  # noqa: E402

from tileadders.model import Assembly, Tile, TileSet  # noqa: E402


def line_system_parts(m, ntypes=1):
    """A 1 x m row of seed tiles, each offering one tile above.

    The seed tiles carry no side glues so nothing grows sideways; the row is
    not bonded, which the run semantics do not need.

    ``ntypes`` pads the tile set with inert tiles so |T| can be set freely.
    """
    tiles = [
        Tile.make("s", "", N=("up", 2)),
        Tile.make("u", "", S=("up", 2)),
    ]
    tiles += [Tile.make(f"x{k}", "") for k in range(max(0, ntypes - 2))]
    ts = TileSet(tiles, "line")
    seed = Assembly(ts, {(x, 0): "s" for x in range(m)})
    return ts, seed


@pytest.fixture
def line_parts():
    return line_system_parts


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
