"""Borel-orbit verifier on the projective line: fibers over the closed
orbit, purity on the open one, the dualizing complex, and the report."""

import pytest

from stagger.flag import (
    Monomial,
    O,
    flag_restrict_U,
    flag_restrict_Z,
    flag_verify,
    ideal_I,
    member_z_flag,
)


def test_monomial_bookkeeping():
    m = Monomial(2, 3)  # x^2 y^3
    assert m.degree == 5
    assert m.weight == 1
    assert Monomial(1, 0).weight == -1
    assert Monomial(0, 1).weight == 1
    # localized monomials carry negative exponents without breaking grading
    assert Monomial(-4, 0).weight == 4
    assert Monomial(3, -1).degree == 2


def test_fibers_over_closed_orbit():
    for n in range(-4, 5):
        assert flag_restrict_Z(O(n)) == [-n]
        assert flag_restrict_Z(ideal_I(n)) == [1 - n]
    assert flag_restrict_Z(ideal_I()) == [1]


def test_fiber_membership_is_sharp():
    # i* O(n) lands sharply in C_{<= n} over the closed orbit
    for n in range(-4, 5):
        w = flag_restrict_Z(O(n))
        assert member_z_flag("le", n, w)
        assert not member_z_flag("le", n - 1, w)
    w = flag_restrict_Z(ideal_I())
    assert member_z_flag("le", -1, w)
    assert not member_z_flag("le", -2, w)


def test_open_orbit_purity():
    for n in range(-4, 5):
        rank, s = flag_restrict_U(O(n))
        assert rank == 1 and s == n


def test_restriction_rejects_unknown_shapes():
    with pytest.raises(ValueError):
        flag_restrict_U(ideal_I())


def test_flag_verify_report():
    rep = flag_verify(window=4)
    assert rep.ok, "\n".join(rep.summary_lines())
    labels = {c.label for c in rep.checks}
    assert {
        "F1_ideal_fiber",
        "F1_membership",
        "F2_twist_fibers",
        "U_purity",
        "omega_z_h0",
        "omega_z_h1",
        "alt_z",
        "strict_perversity_computed",
        "strict_perversity_asserted",
        "flip_roundtrip",
    } <= labels
    assert rep.alt_z == 1
    assert rep.alt_u == 0
    assert rep.cod_z == 1
    # the two scod readings disagree; the report carries both and the
    # strictness hypotheses of (0, 1) hold under either
    assert rep.scod_z_computed == 2
    assert rep.scod_z_asserted == 3
    assert rep.scod_z_computed != rep.scod_z_asserted


def test_flag_report_serializes():
    rep = flag_verify(window=3)
    js = rep.to_json()
    assert js["ok"] is True
    assert js["scod_z_computed"] == 2
    assert js["scod_z_asserted"] == 3
    assert any("IC" in s for s in js["simples"])


def test_flag_summary_mentions_both_scods():
    rep = flag_verify(window=3)
    text = "\n".join(rep.summary_lines())
    assert "computed" in text and "asserted" in text
