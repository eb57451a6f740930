"""End-to-end verification suite behind the `paper-suite` CLI verb.

Eleven criteria re-derive the package's central results from scratch and
check them against frozen reference data: axiom scans, envelope locality,
cardinalities, multiplication tables, automorphism groups, the
completely-even factorization law, the embedding criterion, product fields,
dyadic coherence, free resolutions, and the matrix / quaternion / group
constructions.  Every value in the ledger is computed exactly; timings go
to stderr so the data stream stays byte-identical across runs.
"""

import math
import random
import time
from fractions import Fraction

from .ternary_kernel import (
    check_distributivity,
    check_ternary_group,
    detect_derived_structure,
    odd_residue_field,
)
from .pair_envelope import (
    RingMorphism,
    build_envelope,
    embedding_criterion,
    field_isomorphism,
    residue_ring,
    verify_local,
)
from .dyadic import TruncatedDyadic, odd_rational, reduce_mod, val2
from .poly_fields import (
    QuotientFieldSpec,
    TernaryPolynomial,
    build_f0,
    build_quotient_field,
    cardinality,
    completely_even,
    parity,
    product_field,
)
from .automorphisms import (
    automorphism_group,
    cayley_table,
    fingerprint_group,
    letter_label_map,
)
from .structures import (
    cyclic_group,
    free_resolution,
    group_algebra,
    quaternion_field,
    quaternion_inverse_check,
    toeplitz_field,
    triangular_field,
    vector_power_space,
)

# frozen reference tables, written in the display letters ------------------

F03_LETTER_ORDER = ["1", "a", "b", "c"]
F03_MULT_REFERENCE = [
    ["1", "a", "b", "c"],
    ["a", "b", "c", "1"],
    ["b", "c", "1", "a"],
    ["c", "1", "a", "b"],
]
# the transcription this table was checked against prints c at the (c,c)
# cell; the Latin-square property and direct computation force b there
F03_TRANSCRIBED_CC = "c"

F04_LETTER_ORDER = ["1", "a", "b", "c", "d", "e", "f", "g"]
F04_MULT_REFERENCE = [
    ["1", "a", "b", "c", "d", "e", "f", "g"],
    ["a", "b", "c", "1", "g", "d", "e", "f"],
    ["b", "c", "1", "a", "f", "g", "d", "e"],
    ["c", "1", "a", "b", "e", "f", "g", "d"],
    ["d", "g", "f", "e", "b", "a", "1", "c"],
    ["e", "d", "g", "f", "a", "1", "c", "b"],
    ["f", "e", "d", "g", "1", "c", "b", "a"],
    ["g", "f", "e", "d", "c", "b", "a", "1"],
]

AUT5_LETTER_ORDER = ["a", "c", "e", "g", "p", "r", "t", "v"]
AUT5_COMPOSITION_REFERENCE = [
    ["a", "c", "e", "g", "p", "r", "t", "v"],
    ["c", "a", "p", "r", "e", "g", "v", "t"],
    ["e", "v", "g", "t", "c", "p", "a", "r"],
    ["g", "r", "t", "a", "v", "c", "e", "p"],
    ["p", "t", "r", "v", "a", "e", "c", "g"],
    ["r", "g", "v", "c", "t", "a", "p", "e"],
    ["t", "p", "a", "e", "r", "v", "g", "c"],
    ["v", "e", "c", "p", "g", "t", "r", "a"],
]

_BUDGETS = {1: 10.0, 5: 5.0, 11: 30.0}


def _suite_fields():
    """The field roster shared by criteria 1, 2, 3 and 7."""
    roster = []
    for n in range(1, 7):
        roster.append((f"odd(2^{n})", odd_residue_field(1 << n, check="light")))
    for n in range(1, 7):
        roster.append((f"F0({n})", build_f0(n, check="light")))
    roster.append(("F0(2,2)", build_f0(2, 2, check="light")))
    prod = product_field(build_f0(2, check="light"), build_f0(2, check="light"))
    roster.append(("F0(2)xF0(2)", prod.field))
    return roster


def criterion_1():
    """Axiom suite over the full field roster."""
    detail = {"fields": []}
    ok = True
    for name, f in _suite_fields():
        v_add = check_ternary_group(f.carrier, limit=f.n)
        v_mul = check_distributivity(f.carrier, limit=f.n)
        found = detect_derived_structure(f.carrier)
        passed = (bool(v_add) and bool(v_mul)
                  and found["unit"] == f.one and found["zero"] is None)
        entry = {"field": name, "size": f.n, "passed": passed}
        if not v_add:
            entry["witness"] = v_add.detail
        if not v_mul:
            entry["witness"] = v_mul.detail
        detail["fields"].append(entry)
        ok = ok and passed
    return ok, detail


def criterion_2():
    """Envelope size, locality, and the residue-ring isomorphism."""
    detail = {"fields": [], "constructed_isomorphisms": []}
    ok = True
    for name, f in _suite_fields():
        env = build_envelope(f)
        report = verify_local(env)
        passed = (env.n == 2 * f.n
                  and report["is_local_with_z2_residue"]
                  and report.get("maximal_is_pair_part", False))
        detail["fields"].append({
            "field": name, "envelope_size": env.n,
            "maximal_ideal_count": len(report["maximal_ideals"]),
            "residue_sizes": report["residue_sizes"],
            "passed": passed,
        })
        ok = ok and passed
    for n in range(1, 7):
        mod = 1 << n
        f = odd_residue_field(mod, check="light")
        env = build_envelope(f)
        ring = residue_ring(mod)
        mapping = [0] * env.n
        for i in range(f.n):
            value = int(f.labels[i])
            mapping[i] = value
            mapping[env.pair_index(i)] = (value + 1) % mod
        iso = RingMorphism(env, ring, mapping)
        passed = iso.is_bijective()
        detail["constructed_isomorphisms"].append(
            {"envelope_of": f"odd(2^{n})", "target": f"Z/{mod}Z", "passed": passed})
        ok = ok and passed
    return ok, detail


def criterion_3():
    """Cardinalities: every constructed field is a power of two, and the
    single-variable quotient fields have 2^(n-1) elements through n = 8."""
    detail = {"sizes": [], "quotient_sizes": []}
    ok = True
    for name, f in _suite_fields():
        is_pow2 = f.n & (f.n - 1) == 0
        detail["sizes"].append({"field": name, "size": f.n, "power_of_two": is_pow2})
        ok = ok and is_pow2
    for n in range(1, 9):
        f = build_f0(n, check="light")
        expected = 1 << (n - 1)
        match = (f.n == expected
                 and cardinality(QuotientFieldSpec((n,))) == expected)
        detail["quotient_sizes"].append(
            {"n": n, "size": f.n, "expected": expected, "passed": match})
        ok = ok and match
    return ok, detail


def criterion_4():
    """Multiplication tables against the frozen references, with the
    corrected (c,c) cell reported explicitly."""
    detail = {}
    f3 = build_f0(3, check="light")
    t3 = cayley_table(f3, "multiplication").reorder(F03_LETTER_ORDER, letters=True)
    rows3 = [[t3.entry_label(i, j, letters=True) for j in range(t3.order)]
             for i in range(t3.order)]
    detail["f03_matches_reference"] = rows3 == F03_MULT_REFERENCE
    cc = rows3[F03_LETTER_ORDER.index("c")][F03_LETTER_ORDER.index("c")]
    detail["corrected_cell"] = {
        "row": "c", "column": "c",
        "computed": cc,
        "transcribed": F03_TRANSCRIBED_CC,
        "discrepancy_confirmed": cc == "b" and cc != F03_TRANSCRIBED_CC,
    }

    f4 = build_f0(4, check="light")
    t4 = cayley_table(f4, "multiplication").reorder(F04_LETTER_ORDER, letters=True)
    rows4 = [[t4.entry_label(i, j, letters=True) for j in range(t4.order)]
             for i in range(t4.order)]
    detail["f04_matches_reference"] = rows4 == F04_MULT_REFERENCE

    ok = (detail["f03_matches_reference"]
          and detail["corrected_cell"]["discrepancy_confirmed"]
          and detail["f04_matches_reference"])
    return ok, detail


def criterion_5():
    """Automorphism groups through n = 5."""
    detail = {}
    ok = True

    orders = {}
    for n in range(2, 6):
        f = build_f0(n, check="light")
        orders[n] = automorphism_group(f).order
    detail["orders"] = {f"F0({n})": orders[n] for n in orders}
    ok = ok and orders[2] == 1 and orders[3] == 2 and orders[4] == 4 and orders[5] == 8

    f3 = build_f0(3, check="light")
    t3 = automorphism_group(f3)
    pos_c = t3.position("c", letters=True)
    detail["f03_c_after_c_is_x"] = int(t3.table[pos_c, pos_c]) == t3.identity
    ok = ok and detail["f03_c_after_c_is_x"]

    f4 = build_f0(4, check="light")
    t4 = automorphism_group(f4)
    labs4 = t4.labels(letters=True)
    nontrivial = [l for i, l in enumerate(labs4) if i != t4.identity]
    involutions = all(int(t4.table[i, i]) == t4.identity
                      for i in range(t4.order) if i != t4.identity)
    detail["f04_nontrivial"] = sorted(nontrivial)
    detail["f04_all_involutions"] = involutions
    ok = ok and sorted(nontrivial) == ["c", "d", "f"] and involutions

    f5 = build_f0(5, check="light")
    t5 = automorphism_group(f5).reorder(AUT5_LETTER_ORDER, letters=True)
    rows5 = [[t5.entry_label(i, j, letters=True) for j in range(t5.order)]
             for i in range(t5.order)]
    detail["f05_matches_reference"] = rows5 == AUT5_COMPOSITION_REFERENCE
    fp = fingerprint_group(t5)
    detail["f05_fingerprint"] = fp["iso_class"]
    detail["f05_nonabelian"] = not fp["abelian"]
    ok = (ok and detail["f05_matches_reference"] and not fp["abelian"]
          and fp["iso_class"] == "D4 (the dihedral group of order 8)")
    return ok, detail


# -- an independent factorization oracle over the two-element coefficients --

def _mask_deg(m):
    return m.bit_length() - 1


def _mask_divmod(a, b):
    q = 0
    db = _mask_deg(b)
    while a and _mask_deg(a) >= db:
        shift = _mask_deg(a) - db
        q ^= 1 << shift
        a ^= b << shift
    return q, a


def _mask_factor(m):
    """Full factorization over the two-element coefficient ring by trial
    division, smallest divisor first."""
    factors = []
    while _mask_deg(m) > 0:
        hit = None
        d = 2
        while d <= 1 << (_mask_deg(m) // 2 + 1):
            q, r = _mask_divmod(m, d)
            if r == 0:
                hit = d
                break
            d += 1
        if hit is None:
            factors.append(m)
            break
        factors.append(hit)
        m, _ = _mask_divmod(m, hit)
    return factors


def criterion_6():
    """completely_even(x^n - 1) holds exactly for n in {1,2,4,8,16} within
    n <= 20, cross-checked against full trial-division factorization."""
    detail = {"cases": []}
    ok = True
    for n in range(1, 21):
        p = TernaryPolynomial.parse(f"x^{n} - 1")
        report = completely_even(p, domain="gf2")
        expected = n in (1, 2, 4, 8, 16)
        # oracle: completely even over these coefficients means every
        # irreducible factor has an even number of terms
        mask = (1 << n) | 1
        oracle = all(bin(f).count("1") % 2 == 0 for f in _mask_factor(mask))
        entry = {"n": n, "completely_even": report["completely_even"],
                 "expected": expected, "oracle": oracle}
        if not report["completely_even"]:
            entry["witness"] = str(report["witness"])
            entry["witness_parity"] = parity(report["witness"])
        passed = (report["completely_even"] == expected == oracle
                  and (report["completely_even"]
                       or entry["witness_parity"] == "odd"))
        entry["passed"] = passed
        detail["cases"].append(entry)
        ok = ok and passed
    return ok, detail


def criterion_7():
    """Embedding criterion: false with witness beyond one element, true for
    the one-element field, with both formulations agreeing."""
    detail = {"fields": []}
    ok = True
    for name, f in _suite_fields():
        report = embedding_criterion(f)
        expected = f.n == 1
        passed = (report["embeds"] == expected
                  and (expected or (report["witness"] is not None
                                    and report["zero_divisor"] is not None)))
        entry = {"field": name, "embeds": report["embeds"], "passed": passed}
        if report["witness"] is not None:
            entry["witness"] = list(report["witness"])
        if report["zero_divisor"] is not None:
            entry["zero_divisor"] = list(report["zero_divisor"])
        detail["fields"].append(entry)
        ok = ok and passed
    return ok, detail


def criterion_8():
    """Product of two 2-term quotient fields vs the two-variable quotient
    field, with the presentation relations checked inside the product."""
    f2 = build_f0(2, check="light")
    prod = product_field(f2, f2)
    fp = prod.field
    f22 = build_f0(2, 2, check="light")
    detail = {
        "product_size": fp.n,
        "two_variable_size": f22.n,
        "sizes_differ": fp.n != f22.n,
        "presentation_verified": prod.presentation is not None
                                 and prod.presentation["verified"],
    }
    x1 = fp.index("(x,1)")
    x2 = fp.index("(1,x)")
    one = fp.one
    m1 = fp.quer(one)                      # the element acting as -1
    squares = fp.mu(x1, x1) == one and fp.mu(x2, x2) == one
    mixed = fp.mu(x1, x2) == fp.nu(x1, x2, m1)
    detail["x1_squared_is_1"] = squares
    detail["x1x2_equals_x1_plus_x2_minus_1"] = mixed
    ok = (detail["sizes_differ"] and detail["presentation_verified"]
          and squares and mixed and fp.n == 4 and f22.n == 8)
    return ok, detail


def criterion_9():
    """Dyadic coherence: residue reduction is a morphism, truncation
    commutes with the operations, and the valuation laws hold."""
    rng = random.Random(20260819)
    detail = {}

    def rand_odd():
        return odd_rational(2 * rng.randrange(-500, 500) + 1,
                            2 * rng.randrange(0, 500) + 1)

    cases = 0
    for _ in range(10000):
        x, y, z = rand_odd(), rand_odd(), rand_odd()
        n = rng.randrange(1, 17)
        mod = 1 << n
        rx, ry, rz = reduce_mod(x, n), reduce_mod(y, n), reduce_mod(z, n)
        s = x + y + z
        p = x * y
        if reduce_mod(s, n) != (rx + ry + rz) % mod:
            detail["morphism_counterexample"] = [str(x), str(y), str(z), n]
            break
        if reduce_mod(p, n) != (rx * ry) % mod:
            detail["morphism_counterexample"] = [str(x), str(y), n]
            break
        cases += 1
    detail["morphism_cases"] = cases
    morphism_ok = "morphism_counterexample" not in detail and cases == 10000

    commute = 0
    for _ in range(10000):
        big = rng.randrange(2, 17)
        small = rng.randrange(1, big + 1)
        a = TruncatedDyadic(2 * rng.randrange(0, 1 << (big - 1)) + 1, big)
        b = TruncatedDyadic(2 * rng.randrange(0, 1 << (big - 1)) + 1, big)
        c = TruncatedDyadic(2 * rng.randrange(0, 1 << (big - 1)) + 1, big)
        lhs_mul = (a * b).reduce_precision(small)
        rhs_mul = a.reduce_precision(small) * b.reduce_precision(small)
        lhs_add = a.add3(b, c).reduce_precision(small)
        rhs_add = a.reduce_precision(small).add3(
            b.reduce_precision(small), c.reduce_precision(small))
        lhs_inv = a.inv().reduce_precision(small)
        rhs_inv = a.reduce_precision(small).inv()
        if lhs_mul != rhs_mul or lhs_add != rhs_add or lhs_inv != rhs_inv:
            detail["truncation_counterexample"] = [str(a), str(b), str(c), small]
            break
        commute += 1
    detail["truncation_cases"] = commute
    truncation_ok = commute == 10000

    val_cases = 0
    for _ in range(10000):
        num1 = rng.randrange(-2000, 2001) or 1
        num2 = rng.randrange(-2000, 2001) or 1
        den1 = 2 * rng.randrange(0, 1000) + 1
        den2 = 2 * rng.randrange(0, 1000) + 1
        x = Fraction(num1, den1)
        y = Fraction(num2, den2)
        if val2(x * y) != val2(x) + val2(y):
            detail["val2_counterexample"] = [str(x), str(y), "multiplicativity"]
            break
        lo = min(val2(x), val2(y))
        if val2(x + y) < lo:
            detail["val2_counterexample"] = [str(x), str(y), "ultrametric"]
            break
        val_cases += 1
    detail["val2_cases"] = val_cases
    val_ok = val_cases == 10000

    ok = morphism_ok and truncation_ok and val_ok
    return ok, detail


def criterion_10():
    """Free resolution of the rank-2 vector power over the 4-residue odd
    field by the generators (1,1) and (3,1): the kernel is enumerated over
    all of U(F)^2 and the cardinality identity checked."""
    f = odd_residue_field(4, check="light")
    space = vector_power_space(f, 2)
    g1 = space.from_labels(("1", "1"))
    g2 = space.from_labels(("3", "1"))
    report = free_resolution(space, [g1, g2])
    detail = {
        "space_size": report["space_size"],
        "free_size": report["free_size"],
        "kernel_size": report["kernel_size"],
        "kernel": [list(k) for k in report["kernel"]],
        "formula_size": report["formula_size"],
        "formula_holds": report["formula_holds"],
    }
    ok = (report["kernel_size"] == 2 and report["formula_size"] == 4
          and report["formula_holds"] and report["space_size"] == 4)
    return ok, detail


def criterion_11():
    """Toeplitz, triangular, quaternion and group-algebra constructions."""
    detail = {}
    ok = True

    f1 = odd_residue_field(2, check="light")
    f4 = odd_residue_field(4, check="light")

    tp = toeplitz_field(3, f1)
    iso_ok = tp.isomorphism is not None and tp.isomorphism.is_bijective()
    independent = field_isomorphism(tp.field, build_f0(3, check="light"))
    detail["toeplitz"] = {
        "size": tp.field.n,
        "constructed_isomorphism": iso_ok,
        "independent_isomorphism": independent is not None,
    }
    ok = ok and tp.field.n == 4 and iso_ok and independent is not None

    tr = triangular_field(2, f4)
    detail["triangular"] = {
        "size": tr.field.n,
        "noncommutative": tr.noncommutative_witness is not None,
        "witness": list(tr.noncommutative_witness or ()),
    }
    ok = ok and tr.field.n == 16 and tr.noncommutative_witness is not None

    q = quaternion_field(f4)
    inverses = quaternion_inverse_check(q)
    i1, i2, i3 = q.unit_index(1), q.unit_index(2), q.unit_index(3)
    env = q.env
    minus_i3 = q.index[(env.zero, env.zero, env.zero, env.neg_at(env.one))]
    detail["quaternion"] = {
        "size": q.field.n,
        "inverses_verified": inverses,
        "i1i2_is_i3": q.field.mu(i1, i2) == i3,
        "i2i1_is_minus_i3": q.field.mu(i2, i1) == minus_i3,
        "noncommutative": q.field.mu(i1, i2) != q.field.mu(i2, i1),
    }
    ok = (ok and q.field.n == 128 and inverses == 128
          and detail["quaternion"]["i1i2_is_i3"]
          and detail["quaternion"]["i2i1_is_minus_i3"]
          and detail["quaternion"]["noncommutative"])

    ga3 = group_algebra(cyclic_group(3), f1)
    detail["group_algebra_z3"] = {
        "is_3field": ga3.is_3field,
        "witness": ga3.witness,
        "verdict_mode": ga3.verdict_mode,
    }
    ok = ok and not ga3.is_3field and ga3.witness is not None

    ga4 = group_algebra(cyclic_group(4), f1)
    iso4 = ga4.isomorphism is not None and ga4.isomorphism.is_bijective()
    detail["group_algebra_z4"] = {
        "is_3field": ga4.is_3field,
        "size": ga4.size,
        "constructed_isomorphism": iso4,
        "isomorphism_target_size": ga4.isomorphism.target.n if iso4 else None,
        "size_note": "an 8-element algebra; its quotient-field partner is "
                     "the exponent-4 field of the same size",
    }
    ok = ok and ga4.is_3field and iso4 and ga4.size == 8

    return ok, detail


_CRITERIA = [
    (1, "axiom suite over the field roster", criterion_1),
    (2, "envelope size, locality and residue isomorphism", criterion_2),
    (3, "cardinalities are powers of two", criterion_3),
    (4, "multiplication tables match the frozen references", criterion_4),
    (5, "automorphism groups through five terms", criterion_5),
    (6, "completely-even law with factorization oracle", criterion_6),
    (7, "embedding criterion with dual formulations", criterion_7),
    (8, "product field vs two-variable quotient", criterion_8),
    (9, "dyadic reduction, truncation and valuation laws", criterion_9),
    (10, "free resolution cardinality identity", criterion_10),
    (11, "matrix, quaternion and group constructions", criterion_11),
]


def run_suite(stream=None):
    """Run every criterion; returns the machine-readable ledger dict."""
    entries = []
    all_ok = True
    for number, title, fn in _CRITERIA:
        start = time.perf_counter()
        ok, detail = fn()
        elapsed = time.perf_counter() - start
        budget = _BUDGETS.get(number)
        entry = {"criterion": number, "title": title, "passed": bool(ok)}
        if budget is not None:
            entry["budget_seconds"] = budget
            entry["within_budget"] = elapsed < budget
            entry["passed"] = entry["passed"] and entry["within_budget"]
        entry["detail"] = detail
        entries.append(entry)
        all_ok = all_ok and entry["passed"]
        if stream is not None:
            print(f"criterion {number:2d} "
                  f"[{'pass' if entry['passed'] else 'FAIL'}] "
                  f"{elapsed:6.2f}s  {title}", file=stream)
    return {"schema": 1, "criteria": entries, "all_passed": all_ok}
