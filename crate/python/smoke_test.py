"""Smoke test for the pathring extension module.

Build first:  maturin develop --release -m crates/python/Cargo.toml
"""

import pathring


def main():
    p = pathring.Polynomial("HS + SH + 1")
    assert str(p.reversed()) == str(p)
    assert (p + p).is_zero()

    rs = pathring.RewriteSystem(3, 20)
    assert rs.is_complete()
    assert set(rs.normal_form("SH").terms()) == {"1", "HS"}
    assert str(rs.normal_form("H^2SYH")) == str(pathring.Polynomial("H^3SY + H^2Y"))
    assert sum(v for (d, _), v in rs.hilbert(6).items() if d == 4) == 3

    cells = pathring.pn_homology(2, "Z", 6)
    z4 = [g for d, lvl, g in cells if d == 2 and lvl == 1]
    assert [str(g) for g in z4] == ["Z/4"], z4
    st = pathring.st_rpn_homology(2, "Z")
    assert [str(g) for _, _, g in st] == ["Z", "Z/4", "Z"]

    v = pathring.verify(3, 30)
    assert v.matches and not v.repairs
    v = pathring.verify(2, 20)
    assert not v.matches and v.totals[0][0] == 0
    assert any({"H^2T -> 0", "H^2Y -> 0"} <= set(r) for r in v.repairs), v.repairs

    for n in range(1, 5):
        assert pathring.check_golden(n) == [], n
    assert (2, 0, ["U_2"]) in pathring.generator_table(2, 1)

    r = pathring.critical_index(2, 2, 12)
    assert (r.index, r.nullity) == r.expected == (3, 3)

    rep = pathring.concat_check(200, 7)
    assert rep.passed and rep.checks[0][2] < 1e-9
    assert pathring.halfcircle_check(2).passed
    assert pathring.yk_check(3, 2).passed
    assert pathring.geodesic_check(1).passed

    try:
        pathring.Polynomial("HQ")
    except ValueError:
        pass
    else:
        raise AssertionError("bad generator accepted")
    print("pathring smoke test: ok")


if __name__ == "__main__":
    main()
