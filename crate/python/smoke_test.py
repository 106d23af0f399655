"""Smoke test for the Python bindings.

Build and run from the repository root:

    cargo build -p pwrot-py --release --features extension-module
    cp target/release/libpwrot_py.so python/pwrot.so
    python3 python/smoke_test.py
"""

import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import pwrot  # noqa: E402


def main():
    f = pwrot.Field(4, 5)
    assert (f.conductor, f.degree) == (20, 8)
    m = pwrot.PiecewiseRotation(f)

    q = f.parse("Q")
    orbit = m.orbit(q, 10)
    assert orbit[0].format_phi() == "-phi"
    assert orbit[3].format_phi() == "1 + phi"
    assert orbit[10] == f.parse("phi")

    z = f.parse("(1/3, -2/7)")
    assert m.inverse_step(m.step(z)) == z
    assert (z - z).is_zero()
    assert (z * z.conj()).sign_re() == 1

    returns = [i for i, _ in m.line_returns(q, 220)]
    assert returns == [0, 3, 10, 15, 38, 48, 53, 78, 83, 93, 220], returns

    assert pwrot.pentagon_periods(4) == [1, 7, 38, 232, 1388]

    p1 = f.parse("P1")
    period, hits = m.minimal_period(p1, 1000)
    assert period == 7 and hits == []
    tile = pwrot.tile_from_seed(m, p1)
    assert (tile.ell, tile.k, tile.sides, tile.regular) == (7, 5, 5, True)
    ok, report = pwrot.verify(m, tile, samples=10)
    assert ok, report

    h = pwrot.Field(11, 12)
    hm = pwrot.PiecewiseRotation(h)
    hex_tile = pwrot.tile_from_seed(hm, h.parse("C"))
    assert (hex_tile.ell, hex_tile.k, hex_tile.sides, hex_tile.regular) == (20, 3, 6, False)
    assert pwrot.hexagon()[0]

    segs = pwrot.critical_segments(m, 4, "-2,-2,2,2")
    assert segs and all(d <= 4 for d, _, _ in segs)
    tiles = pwrot.scan(hm, "1,-1,3,1", "1/4")
    assert any(t.sides == 6 and not t.regular for t in tiles)

    try:
        f.parse("(1, ")
    except ValueError:
        pass
    else:
        raise AssertionError("expected a parse error")
    try:
        pwrot.Field(2, 4)
    except ValueError:
        pass
    else:
        raise AssertionError("expected a parameter error")

    print("python smoke test passed")


if __name__ == "__main__":
    main()
