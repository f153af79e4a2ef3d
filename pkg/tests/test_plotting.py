from ccrep.bivariant import transform_T0
from ccrep.lts import build_lts, lts_from_json
from ccrep.plotting import draw_lts
from ccrep.syntax import parse_term
from helpers import BISIG, SIG

THREE_STATES = '{"states": ["X", "Y", "Z"], "initial": "X", "edges": [["X", "a", "Y"], ["Y", "c", "X"], ["Z", "b", "Y"]]}'


def test_draws_png_and_svg(tmp_path):
    image = transform_T0(lts_from_json(THREE_STATES, BISIG), BISIG)
    png = draw_lts(image, tmp_path / "t0.png", title="T0", extra_states={"u"})
    assert png.read_bytes()[:4] == b"\x89PNG"
    svg = draw_lts(image, tmp_path / "t0.svg")
    assert "<svg" in svg.read_text()


def test_many_states_use_a_circle_layout(tmp_path):
    lts = build_lts(parse_term("a.a.a.a.a.a.a.0 + b.w", SIG), SIG)
    assert len(lts.states) > 6
    out = draw_lts(lts, tmp_path / "big.png")
    assert out.stat().st_size > 0
