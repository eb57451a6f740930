"""Tests for substitution endomorphisms, automorphism groups, and their
Cayley/composition tables on the singly generated quotient fields."""

import numpy as np
import pytest

from ternfield import (
    CompositionTable,
    StructureError,
    automorphism_group,
    build_f0,
    cayley_table,
    enumerate_endomorphisms,
    fingerprint_group,
    letter_label_map,
    odd_residue_field,
    truncation_morphism,
)
from ternfield.automorphisms import PolyEndo, compose_elements


# ---------------------------------------------------------------------------
# letter labels
# ---------------------------------------------------------------------------

def test_letter_labels_for_four_element_field():
    f = build_f0(3)
    m = letter_label_map(f)
    assert m[f.one] == "1"
    assert m[f.index("x")] == "a"
    assert m[f.index("x^2")] == "b"
    assert m[f.index("x^2+x+1")] == "c"


def test_letter_labels_cover_every_element():
    for n in (2, 3, 4, 5):
        f = build_f0(n)
        m = letter_label_map(f)
        assert sorted(m) == list(range(f.n))
        assert len(set(m.values())) == f.n


def test_letter_labels_refuse_other_fields():
    with pytest.raises(StructureError, match="letter naming"):
        letter_label_map(odd_residue_field(8))
    with pytest.raises(StructureError, match="letter naming"):
        letter_label_map(build_f0(6))  # no letter table this large


# ---------------------------------------------------------------------------
# composition of elements (polynomial substitution)
# ---------------------------------------------------------------------------

def test_substituting_into_x_is_identity():
    f = build_f0(4)
    x = f.index("x")
    for e in range(f.n):
        assert compose_elements(f, x, e) == e
        assert compose_elements(f, e, x) == e


def test_substitution_example_x_squared_into_itself():
    # (x^2)(x^2) = x^4 = 1 in the four-element field
    f = build_f0(3)
    b = f.index("x^2")
    assert compose_elements(f, b, b) == f.one


def test_substitution_is_associative():
    f = build_f0(3)
    for p in range(f.n):
        for q in range(f.n):
            for r in range(f.n):
                left = compose_elements(f, compose_elements(f, p, q), r)
                right = compose_elements(f, p, compose_elements(f, q, r))
                assert left == right


# ---------------------------------------------------------------------------
# endomorphisms
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_every_element_is_an_endomorphism_image(n):
    f = build_f0(n)
    endos = enumerate_endomorphisms(f)
    assert len(endos) == f.n
    assert sorted(e.image for e in endos) == list(range(f.n))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_endomorphisms_preserve_both_operations_brute_force(n):
    # Independent of the Morphism validator: replay the homomorphism
    # conditions elementwise for every enumerated endomorphism.
    f = build_f0(n)
    for endo in enumerate_endomorphisms(f):
        h = endo.mapping
        assert h[f.one] == f.one
        for a in range(f.n):
            for b in range(f.n):
                assert h[f.mu(a, b)] == f.mu(h[a], h[b])
                for c in range(f.n):
                    assert h[f.nu(a, b, c)] == f.nu(h[a], h[b], h[c])


def test_endo_repr_and_identity_flag():
    f = build_f0(3)
    ident = PolyEndo(f, f.index("x"))
    assert ident.is_identity()
    assert ident.poly_label() == "x"
    squarer = PolyEndo(f, f.index("x^2"))
    assert not squarer.is_identity()
    assert "x^2" in repr(squarer)


# ---------------------------------------------------------------------------
# automorphism groups
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("n,order", [(1, 1), (2, 1), (3, 2), (4, 4), (5, 8)])
def test_automorphism_group_orders(n, order):
    aut = automorphism_group(build_f0(n))
    assert aut.order == order
    assert aut.is_latin_square()


def test_four_element_field_has_one_nontrivial_automorphism():
    f = build_f0(3)
    aut = automorphism_group(f)
    assert sorted(aut.labels(letters=True)) == ["a", "c"]
    c = aut.position("c", letters=True)
    # c is an involution: c o c = x
    assert aut.table[c, c] == aut.identity
    assert aut.labels(letters=True)[aut.identity] == "a"


def test_eight_element_field_automorphisms_are_klein_four():
    aut = automorphism_group(build_f0(4))
    assert sorted(aut.labels(letters=True)) == ["a", "c", "d", "f"]
    fp = fingerprint_group(aut)
    assert fp["order"] == 4
    assert fp["abelian"] is True
    assert fp["element_orders"] == [1, 2, 2, 2]
    assert fp["iso_class"] == ("C2 x C2 (the Klein four group, a.k.a. the "
                               "dihedral group of order 4)")


GOLDEN_AUT16 = {
    "a": ["a", "c", "e", "g", "p", "r", "t", "v"],
    "c": ["c", "a", "p", "r", "e", "g", "v", "t"],
    "e": ["e", "v", "g", "t", "c", "p", "a", "r"],
    "g": ["g", "r", "t", "a", "v", "c", "e", "p"],
    "p": ["p", "t", "r", "v", "a", "e", "c", "g"],
    "r": ["r", "g", "v", "c", "t", "a", "p", "e"],
    "t": ["t", "p", "a", "e", "r", "v", "g", "c"],
    "v": ["v", "e", "c", "p", "g", "t", "r", "a"],
}


def test_sixteen_element_field_automorphism_table_is_golden():
    aut = automorphism_group(build_f0(5))
    order = ["a", "c", "e", "g", "p", "r", "t", "v"]
    g = aut.reorder(order, letters=True)
    assert g.labels(letters=True) == order
    for i, lab in enumerate(order):
        row = [g.entry_label(i, j, letters=True) for j in range(8)]
        assert row == GOLDEN_AUT16[lab], f"row {lab} differs"


def test_sixteen_element_field_automorphisms_are_dihedral():
    fp = fingerprint_group(automorphism_group(build_f0(5)))
    assert fp["order"] == 8
    assert fp["abelian"] is False
    assert fp["iso_class"] == "D4 (the dihedral group of order 8)"
    assert fp["element_orders"] == [1, 2, 2, 2, 2, 2, 4, 4]


# ---------------------------------------------------------------------------
# multiplication Cayley tables and fingerprints
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("n,iso", [
    (2, "C2"),
    (3, "C4"),
    (4, "C4 x C2"),
    (5, "C8 x C2"),
])
def test_multiplicative_group_fingerprints(n, iso):
    t = cayley_table(build_f0(n))
    assert t.mode == "multiplication"
    assert t.is_latin_square()
    fp = fingerprint_group(t)
    assert fp["iso_class"] == iso
    assert fp["abelian"] is True


def test_multiplication_table_matches_field_mu():
    f = build_f0(3)
    t = cayley_table(f)
    for a in range(f.n):
        for b in range(f.n):
            assert int(t.table[a, b]) == f.mu(a, b)


def test_composition_mode_identity_is_x():
    f = build_f0(3)
    t = cayley_table(f, mode="composition")
    assert t.mode == "composition"
    assert t.identity == f.index("x")
    # composition over all elements is NOT a Latin square (constants absorb)
    assert not t.is_latin_square()


def test_unknown_table_mode_rejected():
    with pytest.raises(StructureError, match="mode"):
        cayley_table(build_f0(2), mode="sideways")


# ---------------------------------------------------------------------------
# CompositionTable surface
# ---------------------------------------------------------------------------

def test_reorder_is_a_relabeled_isomorphic_table():
    t = cayley_table(build_f0(3))
    labs = t.labels()
    g = t.reorder(list(reversed(labs)))
    assert g.labels() == list(reversed(labs))
    for a in range(4):
        for b in range(4):
            assert g.entry_label(a, b) == t.entry_label(3 - a, 3 - b)


def test_reorder_rejects_duplicates_and_unknowns():
    t = cayley_table(build_f0(3))
    with pytest.raises(StructureError, match="every element exactly once"):
        t.reorder(["1", "1", "x", "x"])
    with pytest.raises(StructureError, match="no element labeled"):
        t.position("nope")


def test_markdown_and_csv_exports():
    t = automorphism_group(build_f0(3))
    md = t.to_markdown(letters=True)
    assert md.splitlines()[0] == "| o | a | c |"
    assert "| **c** | c | a |" in md
    csv = t.to_csv(letters=True)
    assert csv.splitlines() == ["o,a,c", "a,a,c", "c,c,a"]
    mult_csv = cayley_table(build_f0(2)).to_csv()
    assert mult_csv.splitlines()[0].startswith("*,")


def test_table_json_round_trip():
    t = automorphism_group(build_f0(4))
    doc = t.to_json()
    assert doc["mode"] == "composition"
    assert len(doc["elements"]) == 4
    assert doc["table"][doc["identity"]] == list(range(4))
    rebuilt = CompositionTable(t.field, t.elements, np.array(doc["table"]),
                               doc["identity"], doc["mode"])
    assert (rebuilt.table == t.table).all()


def test_constructor_validates_shape_and_range():
    f = build_f0(2)
    with pytest.raises(StructureError, match="shape"):
        CompositionTable(f, [0, 1], np.zeros((2, 3), dtype=np.int32), 0, "multiplication")
    with pytest.raises(StructureError, match="not closed"):
        CompositionTable(f, [0, 1], np.array([[0, 1], [1, 5]]), 0, "multiplication")


# ---------------------------------------------------------------------------
# fingerprint validation paths
# ---------------------------------------------------------------------------

def test_fingerprint_rejects_broken_identity():
    f = build_f0(2)
    t = CompositionTable(f, [0, 1], np.array([[1, 1], [1, 0]]), 0, "multiplication")
    with pytest.raises(StructureError, match="identity"):
        fingerprint_group(t)


def test_fingerprint_rejects_missing_inverse():
    f = build_f0(2)
    # 0 is an identity and composition is associative, but 1 has no inverse
    t = CompositionTable(f, [0, 1], np.array([[0, 1], [1, 1]]), 0, "multiplication")
    with pytest.raises(StructureError, match="no inverse"):
        fingerprint_group(t)


def test_fingerprint_trivial_group():
    fp = fingerprint_group(automorphism_group(build_f0(1)))
    assert fp == {"order": 1, "abelian": True, "element_orders": [1],
                  "iso_class": "C1"}


# ---------------------------------------------------------------------------
# truncation morphisms between the quotient fields
# ---------------------------------------------------------------------------

def test_truncation_is_a_surjective_morphism():
    f5, f3 = build_f0(5), build_f0(3)
    t = truncation_morphism(f5, f3)
    assert t.mapping[f5.index("x")] == f3.index("x")
    assert t.mapping[f5.one] == f3.one
    assert set(t.mapping) == set(range(f3.n))


def test_truncations_compose():
    f5, f4, f3 = build_f0(5), build_f0(4), build_f0(3)
    ab = truncation_morphism(f5, f4)
    bc = truncation_morphism(f4, f3)
    ac = truncation_morphism(f5, f3)
    for i in range(f5.n):
        assert bc.mapping[ab.mapping[i]] == ac.mapping[i]


def test_truncation_to_self_is_identity():
    f = build_f0(4)
    t = truncation_morphism(f, f)
    assert list(t.mapping) == list(range(f.n))


def test_no_truncation_upward():
    with pytest.raises(StructureError, match="truncation"):
        truncation_morphism(build_f0(3), build_f0(5))
