"""Staggered t-structures: aisles, truncation triangles, the heart,
simple objects and Jordan-Holder filtrations."""

import random

import pytest

from stagger.grmod import F as Fmod, T as Tmod, V, gm, module_map
from stagger.derived import FormalObject, derived_hom, dualize, formal
from stagger.sstruct import SConfig, SITE_X
from stagger.stag import (
    Perversity,
    aisle_member,
    dual_perversity,
    geometry_report,
    heart_kernel_cokernel,
    heart_morphism,
    ic,
    jh_factors,
    simples,
    stag_truncate,
    tstructure_suite,
    validate_perversity,
)

W = SConfig("weight")
TR = SConfig("trivial")
P01 = Perversity(0, 1)


# ---------------------------------------------------------------------------
# geometry and perversities
# ---------------------------------------------------------------------------


def test_geometry_weight_mode():
    g = geometry_report(W)
    assert (g.cod_u, g.alt_u, g.cod_z, g.alt_z) == (0, 0, 1, 1)
    assert g.scod_u == 0
    assert g.scod_z == 2


def test_geometry_trivial_mode():
    g = geometry_report(TR)
    assert (g.alt_z, g.scod_z, g.scod_u) == (0, 1, 0)


def test_perversity_validation():
    r = validate_perversity(W, P01)
    assert r.valid and r.strict and r.middle
    assert r.dual == Perversity(0, 1)  # self-dual in weight mode
    r = validate_perversity(W, Perversity(1, 0))
    assert not r.monotone and not r.valid
    r = validate_perversity(W, Perversity(-1, 0))
    assert r.valid and r.strict and not r.middle
    # trivial mode: scod Z = 1, so (0,1) is comonotone only weakly
    r = validate_perversity(TR, P01)
    assert r.valid and not r.strict


def test_dual_perversity_roundtrip():
    for p in (P01, Perversity(-1, 0), Perversity(1, 2)):
        assert dual_perversity(W, dual_perversity(W, p)) == p


# ---------------------------------------------------------------------------
# aisles and truncation
# ---------------------------------------------------------------------------


def test_aisle_anchors():
    assert aisle_member(W, P01, formal(Fmod(0), 0), "le0")
    assert not aisle_member(W, P01, formal(Fmod(0), 1), "le0")
    assert aisle_member(W, P01, formal(Fmod(0), 0), "ge0")
    # the skyscraper V(2) sits in the heart at degree pZ - n = -1: degrees
    # at or below stay in the lower aisle, above in the upper one
    assert aisle_member(W, P01, formal(V(2), -1), "le0")
    assert aisle_member(W, P01, formal(V(2), -2), "le0")
    assert not aisle_member(W, P01, formal(V(2), 0), "le0")
    assert aisle_member(W, P01, formal(V(2), -1), "ge0")
    assert not aisle_member(W, P01, formal(V(2), -2), "ge0")


def test_heart_requires_strictness():
    with pytest.raises(ValueError):
        simples(TR, P01, 0, 1)


def test_truncation_anchors():
    tr = stag_truncate(W, P01, formal(Fmod(2), 0), 0)
    assert tr.below == formal(Fmod(1), 0)
    assert tr.above == formal(Tmod(2, 1), 0)
    assert tr.audit() == []

    tr = stag_truncate(W, P01, formal(Fmod(-2), 0), -1)
    assert tr.below == formal(Tmod(-1, 1), 1)
    assert tr.above == formal(Fmod(-1), 0)
    assert tr.audit() == []


def test_truncation_random_audit():
    rng = random.Random(21)
    from stagger import sampling

    for _ in range(60):
        Fo = FormalObject(
            sampling.random_formal_components(rng, -2, 2, allow_free=True, max_len=3)
        )
        n = rng.randint(-3, 3)
        tr = stag_truncate(W, P01, Fo, n)
        assert tr.audit() == [], str(Fo)


def test_truncation_trivial_mode_is_degreewise():
    Fo = FormalObject({0: gm([4], [(-3, 2)]), 2: Fmod(0)})
    tr = stag_truncate(TR, Perversity(0, 1), Fo, 0)
    # level 0: free parts kept for k <= 0, torsion for k <= 1
    assert tr.below == FormalObject({0: gm([4], [(-3, 2)])})
    assert tr.above == FormalObject({2: Fmod(0)})


# ---------------------------------------------------------------------------
# heart, kernels, cokernels
# ---------------------------------------------------------------------------


def test_heart_kernel_of_x_inclusion():
    # x: F(-1) -> F(0) is injective on modules, but its heart kernel is
    # the simple S_Z(0): the staggered cokernel V(0) @ 0 lies outside the
    # heart and rotates around the triangle.
    f = module_map(Fmod(-1), Fmod(0), {(0, 0): 1})
    hm = heart_morphism(W, P01, formal(Fmod(-1), 0), formal(Fmod(0), 0), {0: f})
    kio = heart_kernel_cokernel(hm)
    assert kio.kernel == formal(Tmod(0, 1), 1)
    assert kio.cokernel.is_zero


def test_heart_kernel_of_skyscraper_quotient():
    f = module_map(Fmod(1), Tmod(1, 1), {(0, 0): 1})
    hm = heart_morphism(W, P01, formal(Fmod(1), 0), formal(Tmod(1, 1), 0), {0: f})
    kio = heart_kernel_cokernel(hm)
    assert kio.kernel == formal(Fmod(0), 0)
    assert kio.cokernel.is_zero


def test_heart_zero_morphism():
    hm = heart_morphism(W, P01, formal(Fmod(0), 0), formal(Tmod(1, 1), 0), {})
    kio = heart_kernel_cokernel(hm)
    assert kio.kernel == formal(Fmod(0), 0)
    assert kio.cokernel == formal(Tmod(1, 1), 0)


# ---------------------------------------------------------------------------
# simples, IC objects, duality
# ---------------------------------------------------------------------------


def test_simples_shapes():
    S = dict(simples(W, P01, -2, 2))
    assert S["OX"] == formal(Fmod(0), 0)
    for n in range(-2, 3):
        assert S["SZ(%d)" % n] == formal(Tmod(n, 1), 1 - n)


def test_ic_objects():
    assert ic(W, P01, "U", 2) == formal(gm([0, 0]), 0)
    assert ic(W, P01, "Z", 3) == formal(V(3), -2)
    with pytest.raises(ValueError):
        ic(W, P01, "U", -1)


def test_simples_schur():
    S = simples(W, P01, -3, 3)
    for i, (_, A) in enumerate(S):
        for j, (_, B) in enumerate(S):
            d = derived_hom(SITE_X, A, B).get(0, 0)
            assert d == (1 if i == j else 0)


def test_duality_permutes_simples():
    assert dualize(formal(Fmod(0), 0)) == formal(Fmod(0), 0)
    S = dict(simples(W, P01, -4, 5))
    for n in range(-4, 6):
        want = S["SZ(%d)" % (1 - n)]
        assert dualize(S["SZ(%d)" % n]) == want


def test_simples_are_jh_irreducible():
    for label, S in simples(W, P01, -3, 3):
        rep = jh_factors(W, P01, S)
        assert rep.factors == [label]
        assert rep.audit(W, P01) == []


# ---------------------------------------------------------------------------
# Jordan-Holder
# ---------------------------------------------------------------------------


def test_jh_anchors():
    assert jh_factors(W, P01, formal(Fmod(0), 0)).factors == ["OX"]
    assert sorted(jh_factors(W, P01, formal(Fmod(1), 0)).factors) == ["OX", "SZ(1)"]
    assert sorted(jh_factors(W, P01, formal(Fmod(-1), 0)).factors) == ["OX", "SZ(0)"]


def test_jh_composite_multiset_invariant():
    big = FormalObject(
        {0: gm([1, 1, 0, -1], [(1, 1)]), 1: gm([], [(0, 1), (0, 1)]), -1: V(2)}
    )
    rep = jh_factors(W, P01, big)
    assert rep.audit(W, P01) == []
    want = ["OX"] * 4 + ["SZ(0)"] * 3 + ["SZ(1)"] * 3 + ["SZ(2)"]
    assert sorted(rep.factors) == sorted(want)
    alt = jh_factors(W, P01, big, _order="alt")
    assert sorted(alt.factors) == sorted(rep.factors)
    assert alt.audit(W, P01) == []


def test_jh_random_heart_objects():
    rng = random.Random(31)
    for _ in range(40):
        comps = {}
        frees = [rng.choice([-1, 0, 1]) for _ in range(rng.randint(0, 3))]
        tors = []
        for _ in range(rng.randint(0, 2)):
            k = rng.randint(-2, 2)
            comps.setdefault(k, []).append(k)
        parts = {}
        if frees:
            parts[0] = gm(sorted(frees))
        for k, ks in comps.items():
            mods = gm([], [(1 - k, 1)] * len(ks))
            if k in parts:
                from stagger.grmod import direct_sum

                parts[k] = direct_sum(parts[k], mods)
            else:
                parts[k] = mods
        Fo = FormalObject(parts)
        if Fo.is_zero:
            continue
        assert aisle_member(W, P01, Fo, "le0") and aisle_member(W, P01, Fo, "ge0")
        rep = jh_factors(W, P01, Fo)
        assert rep.audit(W, P01) == []
        alt = jh_factors(W, P01, Fo, _order="alt")
        assert sorted(rep.factors) == sorted(alt.factors)
        # predicted multiset from the summand recipe
        want = []
        for d in frees:
            want.append("OX")
            if d == 1:
                want.append("SZ(1)")
            elif d == -1:
                want.append("SZ(0)")
        for k, ks in comps.items():
            want.extend(["SZ(%d)" % (1 - k)] * len(ks))
        assert sorted(rep.factors) == sorted(want)


def test_jh_nonstrict_perversity_rejected():
    with pytest.raises(ValueError):
        jh_factors(TR, P01, formal(Fmod(0), 0))


# ---------------------------------------------------------------------------
# the suite, both modes and other perversities
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("mode", ["weight", "trivial"])
def test_tstructure_suite_clean(mode):
    rep = tstructure_suite(SConfig(mode), seed=1, samples=60)
    assert rep.ok, "\n".join(rep.summary_lines())


def test_truncation_other_perversities():
    rng = random.Random(41)
    from stagger import sampling

    for p in (Perversity(-1, 0), Perversity(1, 2)):
        for _ in range(25):
            Fo = FormalObject(
                sampling.random_formal_components(
                    rng, -2, 2, allow_free=True, max_len=3
                )
            )
            tr = stag_truncate(W, p, Fo, rng.randint(-2, 2))
            assert tr.audit() == []
