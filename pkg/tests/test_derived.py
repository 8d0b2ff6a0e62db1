"""Derived-level machinery: duality, (co)restriction to thickenings,
derived hom, chain complexes, cones and normal forms."""

import random

import pytest

from stagger.grmod import F, T, V, gm, module_map
from stagger.derived import (
    FormalObject,
    chain_map_on_embeds,
    cone,
    derived_hom,
    dualize,
    formal,
    formal_sum,
    free_embed,
    li_star,
    normal_form,
    push_z,
    r_gamma_z,
    restrict_u,
    ri_flat,
    std_truncate,
)
from stagger.sstruct import SITE_X, site_z
from stagger import sampling


def _random_formal(rng):
    return FormalObject(
        sampling.random_formal_components(rng, -2, 2, allow_free=True, max_len=4)
    )


# ---------------------------------------------------------------------------
# duality
# ---------------------------------------------------------------------------


def test_dualize_anchors():
    assert dualize(formal(F(3), 0)) == formal(F(-3), 0)
    assert dualize(formal(F(0), 2)) == formal(F(0), -2)
    # D(T(g,n)[0]) = T(n-g, n)[1]: Serre duality shifts torsion by one
    assert dualize(formal(T(0, 1), 0)) == formal(T(1, 1), 1)
    assert dualize(formal(T(2, 3), 0)) == formal(T(1, 3), 1)
    assert dualize(formal(V(1), 1)) == formal(V(0), 0)


def test_dualize_involutive():
    rng = random.Random(11)
    for _ in range(200):
        Fo = _random_formal(rng)
        assert dualize(dualize(Fo)) == Fo


def test_duality_exchanges_li_and_ri():
    rng = random.Random(12)
    for _ in range(200):
        Fo = _random_formal(rng)
        n = rng.randint(1, 4)
        assert dualize(li_star(Fo, n)) == ri_flat(dualize(Fo), n)


# ---------------------------------------------------------------------------
# li* / ri-flat
# ---------------------------------------------------------------------------


def test_li_star_anchors():
    got = li_star(formal(F(-1), 0), 1)
    assert got.component(0) == V(-1)
    assert got.component(-1).is_zero
    # derived tensor of a torsion module picks up the kernel in degree -1
    got = li_star(formal(T(1, 2), 0), 2)
    assert got == FormalObject({-1: T(-1, 2), 0: T(1, 2)})


def test_ri_flat_anchors():
    assert ri_flat(formal(F(-2), 0), 1) == formal(V(-1), 1)
    # the dualizing module of the reduced point
    assert ri_flat(formal(F(0), 0), 1) == formal(V(1), 1)
    assert ri_flat(formal(T(1, 2), 0), 2) == FormalObject({0: T(1, 2), 1: T(3, 2)})


def test_li_star_free_is_underived():
    rng = random.Random(13)
    for _ in range(60):
        d = rng.randint(-6, 6)
        n = rng.randint(1, 4)
        got = li_star(formal(F(d), 0), n)
        assert got == formal(T(d, n), 0)


def test_push_and_restrict():
    assert push_z(1, formal(V(2), 0)) == formal(T(2, 1), 0)
    # the open orbit is free, so twists trivialize and torsion dies
    got = restrict_u(formal(gm([3], [(1, 2)]), 0))
    assert got.component(0) == gm([0])


def test_r_gamma_z_shapes():
    g = r_gamma_z(formal(gm([0], [(2, 1)]), 0))
    assert g.torsion[0] == V(2)
    (cf,) = g.cofree[1]
    assert cf.socle == 1
    # weights at the socle and above are present, below absent
    assert g.weight_dim(1, 1) == 1
    assert g.weight_dim(1, 5) == 1
    assert g.weight_dim(1, 0) == 0


# ---------------------------------------------------------------------------
# derived hom
# ---------------------------------------------------------------------------


def test_derived_hom_anchors():
    assert derived_hom(SITE_X, formal(F(0), 0), formal(F(0), 0)) == {0: 1}
    # ext of a skyscraper against a deep twist sits one degree up
    assert derived_hom(SITE_X, formal(T(-1, 1), 0), formal(F(-2), 1)) == {2: 1}
    assert derived_hom(SITE_X, formal(T(0, 1), 0), formal(T(-1, 1), 0)) == {1: 1}


def test_derived_hom_semisimple_point():
    z1 = site_z(1)
    assert derived_hom(z1, formal(V(0), 0), formal(V(0), 0)) == {0: 1}
    assert derived_hom(z1, formal(V(0), 0), formal(V(1), 0)) == {}


def test_derived_hom_refuses_thickenings():
    with pytest.raises(ValueError):
        derived_hom(site_z(2), formal(V(0), 0), formal(V(0), 0))


def test_derived_hom_shift_equivariance():
    rng = random.Random(14)
    for _ in range(60):
        A, B = _random_formal(rng), _random_formal(rng)
        s = rng.randint(-2, 2)
        base = derived_hom(SITE_X, A, B)
        shifted = derived_hom(SITE_X, A.shift(s), B.shift(s))
        assert base == shifted
        # Hom(A, B[s][t]) = Hom(A, B[s+t]), so shifting B reindexes by -s
        moved = derived_hom(SITE_X, A, B.shift(s))
        assert moved == {t - s: d for t, d in base.items()}


def test_pushforward_adjunction_reduced_point():
    """Hom_{Z_1}(Li* F, G) == Hom_X(F, i_* G), degreewise."""
    rng = random.Random(7)
    for _ in range(200):
        Fo = FormalObject(
            sampling.random_formal_components(rng, -1, 1, allow_free=True, max_len=3)
        )
        G = formal(sampling.random_torsion_module(rng, max_len=1), rng.randint(-1, 1))
        assert derived_hom(site_z(1), li_star(Fo, 1), G) == derived_hom(
            SITE_X, Fo, push_z(1, G)
        )


# ---------------------------------------------------------------------------
# complexes, cones, normal forms
# ---------------------------------------------------------------------------


def test_free_embed_round_trip():
    rng = random.Random(15)
    for _ in range(120):
        Fo = _random_formal(rng)
        c = free_embed(Fo)
        assert c.validate() == []
        assert normal_form(c) == Fo


def test_cone_of_zero_map_splits():
    A = formal(F(1), 0)
    B = formal(T(0, 2), 0)
    _, _, phi = chain_map_on_embeds(A, B, {})
    assert phi.validate() == []
    assert normal_form(cone(phi)) == formal_sum(B, A.shift(1))


def test_cone_of_identity_vanishes():
    M = gm([2, 0], [(1, 2)])
    f = module_map(M, M, {(i, i): 1 for i in range(3)})
    _, _, phi = chain_map_on_embeds(formal(M), formal(M), {0: f})
    assert phi.validate() == []
    assert normal_form(cone(phi)).is_zero


def test_cone_of_x_multiplication():
    # 0 -> F(0) -x-> F(1) -> T(1,1) -> 0 realized as a cone
    f = module_map(F(0), F(1), {(0, 0): 1})
    _, _, phi = chain_map_on_embeds(formal(F(0)), formal(F(1)), {0: f})
    assert normal_form(cone(phi)) == formal(T(1, 1), 0)


def test_std_truncate_partition():
    Fo = FormalObject({-1: F(2), 0: T(0, 1), 2: F(-1)})
    lo, hi = std_truncate(Fo, 0)
    assert lo == FormalObject({-1: F(2), 0: T(0, 1)})
    assert hi == FormalObject({2: F(-1)})
    assert formal_sum(lo, hi) == Fo


def test_shift_composes():
    rng = random.Random(16)
    for _ in range(40):
        Fo = _random_formal(rng)
        a, b = rng.randint(-3, 3), rng.randint(-3, 3)
        assert Fo.shift(a).shift(b) == Fo.shift(a + b)
        assert Fo.shift(0) == Fo
