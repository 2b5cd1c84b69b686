"""Hecke algebra arithmetic, idempotents, the double-coset projection."""

import random

import pytest

from qdiag.errors import SizeMismatch
from qdiag.hecke import (DiagElt, HeckeElt, diag_kernel_of_p, formal_product,
                         idempotents_r2, idempotents_r3, project_p,
                         projection_matrix, r3_normalizers, t, t_upper, theta)
from qdiag.permutations import all_perms, perm_of_word, reduced_word, s
from qdiag.scalars import ONE, ZERO, omega, q_power, qs


def rand_elt(rng, r):
    terms = {}
    for p in rng.sample(all_perms(r), k=3):
        terms[p] = qs(rng.randint(-3, 3)) * q_power(rng.randint(-1, 1))
    return HeckeElt(r, terms)


def test_quadratic_relation():
    for r in (2, 3, 4):
        for i in range(1, r):
            g = t(s(r, i))
            assert g * g == HeckeElt.one(r) + g.scale(omega())


def test_braid_relation():
    for r in (3, 4):
        for i in range(1, r - 1):
            a = t(s(r, i)) * t(s(r, i + 1)) * t(s(r, i))
            b = t(s(r, i + 1)) * t(s(r, i)) * t(s(r, i + 1))
            assert a == b


def test_longest_element_square_pattern():
    w = omega()
    prod = t((3, 2, 1)) * t((3, 2, 1))
    assert prod.terms == {
        (1, 2, 3): ONE, (1, 3, 2): w, (2, 1, 3): w,
        (2, 3, 1): w * w, (3, 1, 2): w * w, (3, 2, 1): w ** 3 + w}


def test_identity_neutral():
    rng = random.Random(23)
    for r in (3, 4):
        one = HeckeElt.one(r)
        for _ in range(10):
            x = rand_elt(rng, r)
            assert one * x == x and x * one == x


def test_associativity_random():
    rng = random.Random(29)
    for r in (3, 4):
        for _ in range(50):
            x, y, z = (rand_elt(rng, r) for _ in range(3))
            assert (x * y) * z == x * (y * z)


def test_reduced_word_independence():
    # assembling T_sigma from any split of any reduced word agrees
    for p in all_perms(4):
        word = reduced_word(p)
        for cut in range(len(word) + 1):
            a = t(perm_of_word(4, word[:cut]))
            b = t(perm_of_word(4, word[cut:]))
            assert a * b == t(p)


def test_size_mismatch():
    with pytest.raises(SizeMismatch):
        HeckeElt.one(3) * HeckeElt.one(4)


def test_upper_basis_coset_table():
    assert t_upper((1, 3, 2)) == t(perm_of_word(3, (2,)))
    assert t_upper((2, 1, 3)) == t(perm_of_word(3, (1,)))
    assert t_upper((3, 1, 2)) == t(perm_of_word(3, (2, 1)))
    assert t_upper((2, 3, 1)) == t(perm_of_word(3, (1, 2)))
    assert t_upper((1, 2, 3)) == HeckeElt.one(3)


def test_projection_examples():
    assert project_p(DiagElt.basis((1, 2, 3))) == HeckeElt.one(3)
    assert project_p(DiagElt.basis((2, 1, 3))) == \
        HeckeElt.one(3) + t(s(3, 1)).scale(omega())
    gen = DiagElt(3, {(1, 3, 2): ONE, (3, 1, 2): -ONE,
                      (2, 1, 3): -ONE, (2, 3, 1): ONE})
    assert not project_p(gen)


def test_rank2_idempotents():
    e2, e11 = idempotents_r2()
    one = HeckeElt.one(2)
    assert e2 * e2 == e2 and e11 * e11 == e11
    assert not (e2 * e11) and not (e11 * e2)
    assert e2 + e11 == one
    ts = t(s(2, 1))
    assert not ((one.scale(q_power(-1)) + ts) * (one.scale(q_power(1)) - ts))
    assert not ((one.scale(q_power(1)) - ts) * (one.scale(q_power(-1)) + ts))


def test_rank3_idempotent_suite():
    e3, ep, em, e111 = idempotents_r3()
    idems = [e3, ep, em, e111]
    for e in idems:
        assert e * e == e
    for i, a in enumerate(idems):
        for j, b in enumerate(idems):
            if i != j:
                assert not (a * b)
    assert sum(idems[1:], e3) == HeckeElt.one(3)
    th = theta()
    assert th * ep == ep and ep * th == ep
    assert th * em == em.scale(-ONE) and em * th == em.scale(-ONE)
    central = ep + em
    for i in (1, 2):
        g = t(s(3, i))
        assert central * g == g * central
        assert g * e3 == e3.scale(q_power(1))
        assert g * e111 == e111.scale(-q_power(-1))
    assert ep.bar_involution() == em
    assert em.bar_involution() == ep


def test_normalizers_reported():
    c3, c111 = r3_normalizers()
    assert c3 and c111
    # the two constants swap under q -> q^-1
    e3, _, _, e111 = idempotents_r3()
    assert e3.coeff((1, 2, 3)) * c3 == ONE
    assert e111.coeff((1, 2, 3)) * c111 == ONE


def test_diag_kernel_dimensions():
    assert diag_kernel_of_p(2).dim == 0
    k3 = diag_kernel_of_p(3)
    assert k3.dim == 1
    perms = all_perms(3)
    expect = {perms.index((1, 3, 2)): ONE, perms.index((2, 1, 3)): -ONE,
              perms.index((2, 3, 1)): ONE, perms.index((3, 1, 2)): -ONE}
    from qdiag.linalg import SubspaceBasis
    assert SubspaceBasis.from_vectors([expect], 6) == \
        SubspaceBasis.from_vectors(k3.rows, 6)
    # rank-nullity against the projection matrix
    k4 = diag_kernel_of_p(4)
    m4 = projection_matrix(4)
    from qdiag.linalg import SubspaceBasis as SB
    image_dim = SB.from_vectors([m4.row(i) for i in range(24)], 24).dim
    assert k4.dim == 24 - image_dim


def test_formal_product_tracks_words():
    w = omega()
    fp = formal_product(3, (2, 1), (1, 2))
    assert fp == {(): ONE, (2,): w, (2, 1, 2): w}
    fp2 = formal_product(3, (1, 2), (2, 1))
    assert fp2 == {(): ONE, (1,): w, (1, 2, 1): w}
    # collapsing formal words onto basis elements recovers the product
    collapsed = {}
    for word, c in fp.items():
        p = perm_of_word(3, word)
        collapsed[p] = collapsed.get(p, ZERO) + c
    assert HeckeElt(3, collapsed) == \
        t(perm_of_word(3, (2, 1))) * t(perm_of_word(3, (1, 2)))


def test_rendering():
    elt = HeckeElt.one(3) + t((3, 1, 2)).scale(omega())
    assert str(elt) == "T[123] + (q - q^-1)*T[312]"
    assert elt.to_json() == {"123": "1", "312": "q - q^-1"}
