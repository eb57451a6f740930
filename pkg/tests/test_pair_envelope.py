"""Enveloping rings, pairs, morphisms, ideals and quotients."""

import numpy as np
import pytest

from ternfield import (
    EnvelopeRing,
    Morphism,
    RingMorphism,
    StructureError,
    build_envelope,
    build_f0,
    embedding_criterion,
    evenly_maximal_check,
    lift_morphism,
    odd_residue_field,
    quotient_by_ideal,
    residue_ring,
    retract_addition,
    ring_isomorphism,
    units_as_3field,
    verify_local,
)
from ternfield.pair_envelope import (
    IdealHandle,
    Pair,
    QuotientNotFieldError,
    ThreeRingMap,
    pair_add,
    pair_mul,
    pair_zero,
    standard_form,
    universal_extension,
)


@pytest.fixture(scope="module")
def f8():
    return odd_residue_field(8)


@pytest.fixture(scope="module")
def env8(f8):
    return build_envelope(f8)


# -- envelope construction ----------------------------------------------------

@pytest.mark.parametrize("modulus", [2, 4, 8, 16, 32])
def test_envelope_has_twice_the_elements(modulus):
    f = odd_residue_field(modulus)
    env = build_envelope(f)
    assert env.n == 2 * f.n
    assert env.labels[:f.n] == f.labels
    assert all(lab.startswith("q(") for lab in env.labels[f.n:])


def test_envelope_is_a_validated_ring(env8):
    env8.validate_ring()  # raises on any failure
    assert env8.zero == env8.pair_index(env8.base.quer(env8.base.one))


def test_parity_grading(env8):
    par = env8.parity
    assert (par[env8.add] == (par[:, None] + par[None, :]) % 2).all()
    assert (par[env8.mul] == par[:, None] * par[None, :]).all()


def test_odd_part_reproduces_field_operations(f8, env8):
    for a in f8.elements():
        for b in f8.elements():
            assert env8.mul_at(a, b) == f8.mu(a, b)
            for c in f8.elements():
                s = env8.add_at(env8.add_at(a, b), c)
                assert s == f8.nu(a, b, c)


def test_sum_of_two_odds_is_a_pair(f8, env8):
    for a in f8.elements():
        for b in f8.elements():
            assert env8.is_pair(env8.add_at(a, b))


# -- pairs in standard form ----------------------------------------------------

def test_standard_form_preserves_translation_action(f8):
    for a in f8.elements():
        for b in f8.elements():
            p = standard_form(f8, a, b)
            for x in f8.elements():
                assert p.act(x) == f8.nu(x, a, b)


def test_pair_addition_and_multiplication_laws(f8):
    one = f8.one
    for alpha in f8.elements():
        for beta in f8.elements():
            s = pair_add(Pair(f8, alpha), Pair(f8, beta))
            assert s.alpha == f8.nu(alpha, beta, one)
            p = pair_mul(Pair(f8, alpha), Pair(f8, beta))
            assert p.alpha == f8.nu(alpha, beta, f8.mu(alpha, beta))


def test_pair_zero_is_neutral(f8):
    z = pair_zero(f8)
    for alpha in f8.elements():
        assert pair_add(Pair(f8, alpha), z) == Pair(f8, alpha)


def test_pair_arithmetic_matches_envelope_tables(f8, env8):
    for alpha in f8.elements():
        i = env8.pair_index(alpha)
        for beta in f8.elements():
            j = env8.pair_index(beta)
            s = pair_add(Pair(f8, alpha), Pair(f8, beta))
            assert env8.add_at(i, j) == env8.pair_index(s.alpha)
            p = pair_mul(Pair(f8, alpha), Pair(f8, beta))
            assert env8.mul_at(i, j) == env8.pair_index(p.alpha)


# -- locality -------------------------------------------------------------------

@pytest.mark.parametrize("modulus", [2, 4, 8, 16])
def test_envelope_is_local_with_two_element_residue(modulus):
    env = build_envelope(odd_residue_field(modulus))
    report = verify_local(env)
    assert report["is_local_with_z2_residue"]
    assert report["residue_sizes"] == [2]
    assert report["maximal_is_pair_part"]


def test_units_recover_the_field(f8, env8):
    back = units_as_3field(env8)
    assert back.n == f8.n
    assert [back.label(i) for i in back.elements()] == list(f8.labels)
    for a in back.elements():
        for b in back.elements():
            assert back.mu(a, b) == f8.mu(a, b)
            for c in back.elements():
                assert back.nu(a, b, c) == f8.nu(a, b, c)


def test_odd_envelope_is_the_full_residue_ring():
    # U((Z/2^m)^odd) is isomorphic to Z/2^m: odd part to odd residues,
    # q_alpha to alpha+1
    for m in (2, 4, 8, 16):
        f = odd_residue_field(m)
        env = build_envelope(f)
        target = residue_ring(m)
        mapping = [0] * env.n
        for i in f.elements():
            mapping[i] = int(f.label(i))
        for alpha in f.elements():
            mapping[env.pair_index(alpha)] = (int(f.label(alpha)) + 1) % m
        phi = RingMorphism(env, target, mapping)
        assert phi.is_bijective()


# -- morphisms -------------------------------------------------------------------

def test_field_morphism_reduction(f8):
    f4 = odd_residue_field(4)
    mapping = [f4.index(str(int(f8.label(i)) % 4)) for i in f8.elements()]
    phi = Morphism(f8, f4, mapping)  # validates on construction
    assert phi(f8.one) == f4.one


def test_bad_morphism_is_rejected(f8):
    f4 = odd_residue_field(4)
    good = [f4.index(str(int(f8.label(i)) % 4)) for i in f8.elements()]
    bad = list(good)
    bad[2] = (bad[2] + 1) % f4.n
    with pytest.raises(StructureError):
        Morphism(f8, f4, bad)


def test_lifted_morphism_acts_on_pairs(f8):
    f4 = odd_residue_field(4)
    phi = Morphism(f8, f4, [f4.index(str(int(f8.label(i)) % 4))
                            for i in f8.elements()])
    env8 = build_envelope(f8)
    env4 = build_envelope(f4)
    lifted = lift_morphism(phi, env8, env4)
    for alpha in f8.elements():
        assert lifted(env8.pair_index(alpha)) == env4.pair_index(phi(alpha))


def test_universal_extension_through_residue_ring(f8, env8):
    # the inclusion odd -> Z/8 extends uniquely to U(F) -> Z/8
    target = residue_ring(8)
    phi = ThreeRingMap(f8, target, [int(f8.label(i)) for i in f8.elements()])
    bar = universal_extension(phi, env8)
    for alpha in f8.elements():
        expected = (int(f8.label(alpha)) + 1) % 8
        assert bar(env8.pair_index(alpha)) == expected
    assert bar.is_bijective()


# -- embedding criterion -----------------------------------------------------------

def test_only_the_one_element_field_embeds():
    trivial = build_f0(1)
    report = embedding_criterion(trivial)
    assert report["embeds"] and report["witness"] is None

    for f in (odd_residue_field(4), odd_residue_field(8), build_f0(3)):
        report = embedding_criterion(f)
        assert not report["embeds"]
        assert report["witness"] is not None
        assert report["zero_divisor"] is not None


def test_embedding_witness_solves_the_equation(f8, env8):
    report = embedding_criterion(f8, env8)
    x = f8.index(report["witness"][0])
    y = f8.index(report["witness"][1])
    # x + y - x*y = 1 inside the envelope, with x, y both different from 1
    assert x != f8.one and y != f8.one
    s = env8.add_at(env8.add_at(x, y), env8.neg_at(env8.mul_at(x, y)))
    assert s == env8.one


# -- ideals and quotients -----------------------------------------------------------

def test_quotient_of_sixteen_by_four(f8):
    f16 = odd_residue_field(16)
    env = build_envelope(f16)
    # the ideal generated by q(3) = 4 in the residue picture: collapses mod 4
    ideal = IdealHandle(env, [env.pair_index(f16.index("3"))])
    result = quotient_by_ideal(f16, ideal)
    assert result.field.n == 2
    assert result.report["evenly_maximal"]
    assert sorted(result.class_reps) == ["1", "3"]


def test_every_principal_pair_ideal_quotients_to_a_field():
    # the envelope is local, so no proper over-ideal can meet the odd part:
    # the evenly-maximal condition holds for every ideal and every quotient
    # is again a 3-field
    f16 = odd_residue_field(16)
    env = build_envelope(f16)
    sizes = {}
    for alpha in f16.elements():
        ideal = IdealHandle(env, [env.pair_index(alpha)])
        result = quotient_by_ideal(f16, ideal)
        assert result.report["evenly_maximal"]
        assert result.field.n * len(ideal) == f16.n or len(ideal) == 1
        sizes[f16.label(alpha)] = result.field.n
    # q(15) = 0 generates the zero ideal, q(7) = 8 halves, q(3) = 4 quarters
    assert sizes["15"] == 8 and sizes["7"] == 4 and sizes["3"] == 2
    assert issubclass(QuotientNotFieldError, StructureError)


def test_ideal_generators_must_be_pairs(env8):
    with pytest.raises(StructureError, match="pair part"):
        IdealHandle(env8, [env8.base.one])


@pytest.mark.parametrize("k0,expected", [
    (1, True), (2, True), (3, False), (4, True), (6, False), (8, True),
    (12, False), (16, True), (20, False), (32, True), (96, False),
])
def test_evenly_maximal_iff_power_of_two(k0, expected):
    report = evenly_maximal_check(k0)
    assert report["evenly_maximal"] is expected
    if not expected:
        w = report["witness"]
        assert w["prime"] % 2 == 1 and k0 % w["prime"] == 0


# -- retracted binary addition --------------------------------------------------------

def test_retract_addition_gives_a_group(f8):
    for c in f8.elements():
        r = retract_addition(f8, c)
        assert r.neutral == f8.quer(c)
        table = r.table
        idx = np.arange(f8.n)
        assert (np.sort(table, axis=1) == idx).all()  # Latin rows
        assert (table == table.T).all()
        assert (table[table] == table[:, table]).all()


# -- ring isomorphism search ------------------------------------------------------------

def test_envelope_isomorphic_to_residue_ring(f8, env8):
    iso = ring_isomorphism(env8, residue_ring(8))
    assert iso is not None and iso.is_bijective()


def test_no_isomorphism_between_different_rings():
    assert ring_isomorphism(residue_ring(4), residue_ring(8)) is None
    env = build_envelope(build_f0(3))  # 8 elements, characteristic 2
    assert ring_isomorphism(env, residue_ring(8)) is None
