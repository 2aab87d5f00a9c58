"""Smoke test for the Python extension. Run after `pip install ./crates/py`."""

from fractions import Fraction

import whurwitz as wh


def main():
    exp = wh.Weight.exp()
    mono = wh.Weight.from_json('{"kind":"product-Gtilde","c":["1"]}')
    assert mono == wh.Weight.monotone()

    assert wh.character([2, 1], [1, 1, 1]) == 2
    assert wh.f2([2, 1]) == Fraction(0)
    assert len(wh.partitions_of(5)) == 7

    for route in ("character", "brute", "tropical"):
        assert wh.double_hurwitz(exp, [2], [1, 1], 1, route=route) == Fraction(1, 2)
    h = wh.double_hurwitz(mono, [2, 1], [3], 3, connected=True)
    assert h == wh.double_hurwitz(mono, [2, 1], [3], 3, connected=True, route="tropical")

    assert wh.completed_cycles_double(2, [2], [2], 1) == Fraction(7, 24)
    covers = wh.tropical_covers([2], [1, 1], 1, weight=exp)
    assert [c["multiplicity"] for c in covers] == ["1/2"]

    s = wh.Series("w", [1, 1, Fraction(1, 2), 0])
    assert (s.log().exp()) == s
    assert (s * s.invert()).coeffs() == [1, 0, 0, 0]

    n = wh.elliptic_qseries(mono, 2, 2)
    assert n == [0, 0, 4], n
    q = wh.elliptic_qseries(exp, 2, 12, route="feynman")
    coords, validated = wh.fit_quasimodular_series(q, 6)
    assert validated >= 3 and coords["P^3"] == Fraction(1, 5184)

    fit = wh.chamber_polynomial(wh.Weight.strictly_monotone(), 2, [1, 3, -2, -2])
    assert fit["degree"] <= fit["degreeBound"]
    wc = wh.wall_crossing(wh.Weight.strictly_monotone(), [1, 1], [1, 2], [2, -2, 3, -3])
    assert wc["holds"]

    try:
        wh.double_hurwitz(exp, [2], [1], 1)
    except wh.HurwitzError as e:
        assert "SizeMismatch" in str(e)
    else:
        raise AssertionError("size mismatch was accepted")

    print("python smoke test passed")


if __name__ == "__main__":
    main()
