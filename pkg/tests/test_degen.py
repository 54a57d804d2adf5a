"""Degeneration families: radical rewrites, sextic lifts, quartic members."""

from fractions import Fraction

import pytest

from torusdecomp import (
    QQ,
    BEST_EFFORT_FAMILIES,
    FAMILY_CLAIMS,
    KConditionFails,
    PolyRing,
    VisibleQuarticDecomposition,
    build_sextic_family,
    decomposition_radical_parts,
    degeneration_check,
    family_specialize,
    is_reduced,
    quartic_family,
    substitute,
)


def _xyz(tower=QQ):
    ring = PolyRing(tower, "X Y Z")
    return ring, ring.var("X"), ring.var("Y"), ring.var("Z")


def _row(report, name):
    for row in report:
        if row["name"] == name:
            return row
    raise AssertionError("no check named %r" % name)


# ----- folding units into the components


def test_radical_parts_perfect_powers():
    ring, X, Y, Z = _xyz()
    C = X ** 2 - Y ** 2 - Z ** 2
    Q = C ** 2 * 4 + Y ** 3 * Z * 8
    dec = VisibleQuarticDecomposition(Q, C, Y, QQ.of(4), QQ.of(8))
    F1p, F2p = decomposition_radical_parts(dec)
    assert F2p == C * 2
    assert F1p == Y * 2
    assert F2p.tower == QQ


def test_radical_parts_adjoin_roots():
    ring, X, Y, Z = _xyz()
    C = X ** 2 + Y ** 2 + 4 * X * Z + Z ** 2
    L = X + Z * Fraction(1, 2)
    Q = C ** 2 * (-3) + L ** 3 * Z * 32
    dec = VisibleQuarticDecomposition(Q, C, L, QQ.of(-3), QQ.of(32))
    F1p, F2p = decomposition_radical_parts(dec)
    T = F2p.tower
    assert T.names == ("r", "w")
    Zv = F2p.ring.var("Z")
    assert (F2p * F2p + F1p ** 3 * Zv - Q._lift_to(T)).is_zero()


def test_radical_parts_transcendental_unit():
    T = QQ.extend("t")
    ring, X, Y, Z = _xyz(T)
    C = X ** 2 - Y ** 2 - Z ** 2
    t = T.gen("t")
    Q = C ** 2 + Y ** 3 * Z * ring.of(t)
    dec = VisibleQuarticDecomposition(Q, C, Y, T.one(), t)
    F1p, F2p = decomposition_radical_parts(dec)
    W = F1p.tower
    assert W.names == ("t", "w")
    assert (W.gen("w") ** 3 - W.gen("t")).is_zero()
    assert F2p == C._lift_to(W)


# ----- the sextic lift


def test_sextic_family_basic():
    ring, X, Y, Z = _xyz()
    F2p = X ** 2 - Y ** 2 - Z ** 2
    F1p = Y
    fam = build_sextic_family(F1p, F2p, Y, Y ** 2)
    assert fam.param == "t"
    report = fam.report()
    assert [row["status"] for row in report] == ["pass", "pass"]
    assert _row(report, "limit is the quartic plus a double line")
    assert _row(report, "base point has order 2 for every parameter value")
    quartic = F2p ** 2 + F1p ** 3 * Z
    assert fam.at(0) == quartic * Z ** 2
    assert fam.sextic.total_degree() == 6
    assert str(fam.base_point) == "[0:1:0]"
    member = fam.at(1)
    assert member.total_degree() == 6
    assert member != fam.at(0)


def test_sextic_family_picks_fresh_parameter():
    T = QQ.extend("t")
    ring, X, Y, Z = _xyz(T)
    fam = build_sextic_family(Y, X ** 2 - Y ** 2 - Z ** 2, Y, Y ** 2)
    assert fam.param == "t1"
    assert fam.tower.names[-1] == "t1"


def test_sextic_family_guards():
    ring, X, Y, Z = _xyz()
    F2p = X ** 2 - Y ** 2 - Z ** 2
    with pytest.raises(KConditionFails):
        # K1 = X vanishes at the base point direction (0, 1)
        build_sextic_family(Y, F2p, X, Y ** 2)
    with pytest.raises(ValueError):
        build_sextic_family(Y, F2p, Y, Y * Z)
    with pytest.raises(ValueError):
        build_sextic_family(Y ** 2 * 0 + Y, X, Y, Y ** 2)


# ----- explicit quartic families


def test_quartic_family_structural_forms():
    for fid in (1, 3, 4):
        fam = quartic_family(fid)
        assert not fam.best_effort
        ring = fam.poly.ring
        Zv = ring.var("Z")
        assert fam.poly == fam.conic ** 2 + fam.line ** 3 * Zv
    fam2 = quartic_family(2)
    assert fam2.best_effort
    assert fam2.conic is None
    assert BEST_EFFORT_FAMILIES == {2}
    with pytest.raises(ValueError):
        quartic_family(5)


def test_family_parameters():
    assert quartic_family(1).params == ("s", "t", "u")
    assert quartic_family(2).params == ("s", "t", "u")
    assert quartic_family(3).params == ("s", "t")
    assert quartic_family(4).params == ("s", "t")


def test_family_specialize():
    fam = quartic_family(1)
    ring, X, Y, Z = _xyz()
    member = family_specialize(fam, (0, 0, 0))
    assert member == X ** 4 + Y ** 3 * Z
    assert family_specialize(fam, {"s": 0, "t": 0, "u": 0}) == member
    with pytest.raises(ValueError):
        family_specialize(fam, (0, 0))
    with pytest.raises(ValueError):
        family_specialize(fam, {"s": 0, "t": 0})


def test_is_reduced():
    ring, X, Y, Z = _xyz()
    assert is_reduced(X ** 4 + Y ** 3 * Z)
    assert not is_reduced((X ** 2 + Y * Z) ** 2)
    assert not is_reduced(ring.zero())


def test_degeneration_check_stated_members():
    for fid in (1, 3, 4):
        fam = quartic_family(fid)
        for values, expected in FAMILY_CLAIMS[fid]:
            report = degeneration_check(fam, values, expected)
            assert all(row["status"] == "pass" for row in report), \
                (fid, values, report)
            assert report[-1]["name"] == "class matches the claim"


def test_degeneration_check_family_two_is_honest():
    # family 2 keeps its stated members even though only one of the five
    # actually lands in the stated class
    fam = quartic_family(2)
    outcomes = {(0, 1, 1): False, (0, 1, 0): True, (1, 0, 1): False,
                (0, 0, 1): False, (1, 1, 1): False}
    for values, expected in FAMILY_CLAIMS[2]:
        report = degeneration_check(fam, values, expected)
        verdict = _row(report, "class matches the claim")
        assert (verdict["status"] == "pass") == outcomes[values]
        assert _row(report, "member is reduced")["status"] == "pass"
    bad = degeneration_check(fam, (0, 1, 1), 3)
    assert "none (a1, case i)" in _row(bad, "class matches the claim")["detail"]
    smooth = degeneration_check(fam, (1, 1, 1), 1)
    assert "none (smooth, case None)" in \
        _row(smooth, "class matches the claim")["detail"]


def test_degeneration_check_parameter_errors():
    fam = quartic_family(3)
    report = degeneration_check(fam, (1,), 9)
    assert report[0]["name"] == "parameters assigned"
    assert report[0]["status"] == "fail"
    assert len(report) == 1
