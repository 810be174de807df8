from tileadders.constructions import build
from tileadders.engine import run_parallel
from tileadders.model import Assembly, TileSet
from tileadders.render import to_ascii, to_svg
from tileadders.templates import fill, parse_msb


def test_empty():
    a = Assembly(TileSet([]))
    assert to_ascii(a) == ""
    assert "<svg" in to_svg(a)


def test_carryskip_seed_row():
    tac = build("carryskip", 4)
    seed = fill(tac.input, parse_msb("1001") + parse_msb("1010"))
    text = to_ascii(seed)
    assert text.count("\n") == 1
    assert len(text.rstrip("\n")) == 3 * 4 + 2
    assert set(text.strip()) <= {"0", "1", "·"}


def test_carryselect_terminal_has_output_row():
    tac = build("carryselect", 9)
    res = run_parallel(tac.system(parse_msb("100110101") + parse_msb("110101100")))
    lines = to_ascii(res).splitlines()
    x0, _, _, y1 = res.terminal.bounding_box()
    for x, y in tac.output.positions:
        assert lines[y1 - y][x - x0] in "01"


def test_svg_marks_geometry():
    tac = build("ripple", 3)
    res = run_parallel(tac.system((1, 0, 1, 0, 1, 1)))
    svg = to_svg(res, tac.geometry)
    assert svg.count("<rect") == len(res.terminal) + 3 * 3 + 1
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")
