"""Endomorphisms and automorphisms of singly generated quotient 3-fields.

Every element of F0(n) is a polynomial in the generator x, so an
endomorphism is determined by where x goes: f(x) -> f(P).  Any image P
works, because every element satisfies (f-1)^n = 0; the implementation
still verifies each substitution map exhaustively.  Automorphisms are
detected along two independent routes — a compositional inverse exists, or
the image generates the whole carrier — which must agree.

Composition tables follow the convention table[P][Q] = P(Q(x)) (substitute
Q into P).
"""

import numpy as np

from .ternary_kernel import FiniteThreeField, StructureError
from .pair_envelope import Morphism
from .poly_fields import generated_subalgebra

# compact one-letter names for the small single-variable fields
_LETTERS = {
    2: {"1": "1", "x": "y"},
    3: {"1": "1", "x": "a", "x^2": "b", "x^2+x+1": "c"},
    4: {"1": "1", "x": "a", "x^2": "b", "x^3": "c", "x^2+x+1": "d",
        "x^3+x+1": "e", "x^3+x^2+1": "f", "x^3+x^2+x": "g"},
    5: {"1": "1", "x": "a", "x^2": "b", "x^3": "c", "x^4": "d",
        "x^2+x+1": "e", "x^3+x+1": "f", "x^4+x+1": "g",
        "x^3+x^2+1": "p", "x^4+x^2+1": "q", "x^4+x^3+1": "r",
        "x^3+x^2+x": "s", "x^4+x^2+x": "t", "x^4+x^3+x": "u",
        "x^4+x^3+x^2": "v", "x^4+x^3+x^2+x+1": "w"},
}


def _algebra_of(field):
    origin = field.origin or {}
    if (origin.get("kind") == "quotient_field" and origin.get("base") == "F0"
            and len(origin.get("exponents", ())) == 1
            and not origin.get("relations") and "algebra" in origin):
        return origin["algebra"]
    raise StructureError(
        "a singly generated single-variable quotient field is required")


def letter_label_map(field):
    """index -> compact letter label (the --labels=paper display mode)."""
    n = (field.origin or {}).get("exponents", [None])[0]
    letters = _LETTERS.get(n)
    if letters is None:
        raise StructureError(f"no letter naming for this field")
    return {i: letters[field.label(i)] for i in range(field.n)}


def compose_elements(field, i, j):
    """The element P_i(P_j(x)): substitute element j into element i."""
    alg = _algebra_of(field)
    fx = alg.to_x(alg.carrier[i])
    gm = alg.carrier[j]
    out = 0
    k = 0
    while fx:
        if fx & 1:
            out ^= alg.pow(gm, k)
        fx >>= 1
        k += 1
    return alg.index_of[out]


class PolyEndo:
    """Substitution endomorphism x -> image of a singly generated field."""

    def __init__(self, field, image, mapping=None):
        self.field = field
        self.image = int(image)
        if mapping is None:
            mapping = [compose_elements(field, v, self.image)
                       for v in range(field.n)]
        self.morphism = Morphism(field, field, mapping)
        self.mapping = self.morphism.mapping

    def __call__(self, i):
        return self.mapping[i]

    def poly_label(self):
        return self.field.label(self.image)

    def is_identity(self):
        return all(self.mapping[i] == i for i in range(self.field.n))

    def __repr__(self):
        return f"PolyEndo(x -> {self.poly_label()})"


def enumerate_endomorphisms(field):
    """One verified endomorphism per candidate generator image — for F0(n)
    every element qualifies, so the count equals the field size."""
    out = []
    for image in range(field.n):
        out.append(PolyEndo(field, image))
    return out


class CompositionTable:
    """Dense Cayley table over a chosen element list of a field, either under
    multiplication or under polynomial composition."""

    def __init__(self, field, elements, table, identity, mode):
        self.field = field
        self.elements = [int(e) for e in elements]
        self.table = np.ascontiguousarray(table, dtype=np.int32)
        self.identity = int(identity)
        self.mode = mode
        k = len(self.elements)
        if self.table.shape != (k, k):
            raise StructureError("table shape does not match the element list")
        if (self.table < 0).any() or (self.table >= k).any():
            raise StructureError("table is not closed over the element list")

    @property
    def order(self):
        return len(self.elements)

    def labels(self, letters=False):
        if letters:
            m = letter_label_map(self.field)
            return [m[e] for e in self.elements]
        return [self.field.label(e) for e in self.elements]

    def entry_label(self, i, j, letters=False):
        return self.labels(letters)[self.table[i, j]]

    def is_latin_square(self):
        k = self.order
        idx = np.arange(k, dtype=np.int32)
        return bool((np.sort(self.table, axis=1) == idx).all()
                    and (np.sort(self.table.T, axis=1) == idx).all())

    def position(self, label, letters=False):
        labs = self.labels(letters)
        try:
            return labs.index(label)
        except ValueError:
            raise StructureError(f"no element labeled {label!r}") from None

    def reorder(self, labels, letters=False):
        """A new table over the same elements listed in the given order."""
        pos = [self.position(lab, letters) for lab in labels]
        inv = {p: t for t, p in enumerate(pos)}
        if len(inv) != self.order:
            raise StructureError("reorder must list every element exactly once")
        k = self.order
        table = np.empty((k, k), dtype=np.int32)
        for a in range(k):
            for b in range(k):
                table[a, b] = inv[int(self.table[pos[a], pos[b]])]
        return CompositionTable(self.field, [self.elements[p] for p in pos],
                                table, inv[self.identity], self.mode)

    # -- export ------------------------------------------------------------

    def to_markdown(self, letters=False):
        labs = self.labels(letters)
        op = "*" if self.mode == "multiplication" else "o"
        lines = ["| " + " | ".join([op] + labs) + " |",
                 "|" + "---|" * (self.order + 1)]
        for i, lab in enumerate(labs):
            row = [labs[int(self.table[i, j])] for j in range(self.order)]
            lines.append("| " + " | ".join([f"**{lab}**"] + row) + " |")
        return "\n".join(lines)

    def to_csv(self, letters=False):
        labs = self.labels(letters)
        op = "*" if self.mode == "multiplication" else "o"
        lines = [",".join([op] + labs)]
        for i, lab in enumerate(labs):
            row = [labs[int(self.table[i, j])] for j in range(self.order)]
            lines.append(",".join([lab] + row))
        return "\n".join(lines)

    def to_json(self):
        return {
            "mode": self.mode,
            "elements": self.labels(),
            "identity": self.identity,
            "table": [[int(v) for v in row] for row in self.table],
        }

    def __repr__(self):
        return f"CompositionTable({self.mode}, order {self.order})"


def cayley_table(field, mode="multiplication"):
    """The full table over every field element."""
    n = field.n
    if mode == "multiplication":
        t = CompositionTable(field, range(n), field.carrier.mu, field.one,
                             "multiplication")
        if not t.is_latin_square():
            raise StructureError("multiplication table is not a Latin square")
        idx = np.arange(n, dtype=np.int32)
        if not ((t.table[field.one] == idx).all()
                and (t.table[:, field.one] == idx).all()):
            raise StructureError("unit row/column mismatch")
        return t
    if mode == "composition":
        table = np.empty((n, n), dtype=np.int32)
        for i in range(n):
            for j in range(n):
                table[i, j] = compose_elements(field, i, j)
        labels = list(field.labels)
        identity = labels.index("x") if "x" in labels else field.one
        return CompositionTable(field, range(n), table, identity, "composition")
    raise StructureError(f"unknown table mode {mode!r}")


def automorphism_group(field):
    """Automorphisms by two independent routes (compositional inverse exists;
    image generates the carrier), asserted to agree; returns the composition
    Cayley table with identity x."""
    endos = enumerate_endomorphisms(field)
    labels = list(field.labels)
    x_idx = labels.index("x") if "x" in labels else field.one

    invertible = set()
    for p in endos:
        for q in endos:
            if (compose_elements(field, p.image, q.image) == x_idx
                    and compose_elements(field, q.image, p.image) == x_idx):
                invertible.add(p.image)
                break

    generating = set()
    for p in endos:
        closure, _ = generated_subalgebra(field, [p.image])
        if len(closure) == field.n:
            generating.add(p.image)

    if invertible != generating:
        raise StructureError(
            "the two automorphism criteria disagree: "
            f"inverse-route {sorted(invertible)} vs generator-route "
            f"{sorted(generating)}")

    elements = sorted(invertible)
    pos = {e: i for i, e in enumerate(elements)}
    k = len(elements)
    table = np.empty((k, k), dtype=np.int32)
    for a, ea in enumerate(elements):
        for b, eb in enumerate(elements):
            c = compose_elements(field, ea, eb)
            if c not in pos:
                raise StructureError("automorphisms are not closed under composition")
            table[a, b] = pos[c]
    return CompositionTable(field, elements, table, pos[x_idx], "composition")


def fingerprint_group(t):
    """Identify the abstract group behind a composition table: order,
    abelianness, element-order multiset, and the isomorphism class for every
    group the multiset pins down (all groups of order <= 8; abelian ones
    through order 16)."""
    k = t.order
    table = t.table
    idx = np.arange(k, dtype=np.int32)
    if not ((table[t.identity] == idx).all() and (table[:, t.identity] == idx).all()):
        raise StructureError("identity row or column is broken")
    bad = table[table] != table[:, table]
    if bad.any():
        a, b, c = np.unravel_index(int(np.argmax(bad)), bad.shape)
        raise StructureError(f"composition is not associative at ({a},{b},{c})")
    for a in range(k):
        if t.identity not in table[a]:
            raise StructureError(f"element {a} has no inverse")

    abelian = bool((table == table.T).all())
    orders = []
    for a in range(k):
        p = a
        o = 1
        while p != t.identity:
            p = int(table[p, a])
            o += 1
        orders.append(o)
    multiset = sorted(orders)

    iso = None
    involutions = multiset.count(2)
    if k == 1:
        iso = "C1"
    elif k in (2, 3, 5, 7, 11, 13):
        iso = f"C{k}"
    elif k == 4:
        iso = ("C2 x C2 (the Klein four group, a.k.a. the dihedral group "
               "of order 4)") if involutions == 3 else "C4"
    elif k == 6:
        iso = "C6" if abelian else "S3 (the dihedral group of order 6)"
    elif k == 8:
        if abelian:
            if max(multiset) == 8:
                iso = "C8"
            elif max(multiset) == 4:
                iso = "C4 x C2"
            else:
                iso = "C2 x C2 x C2"
        else:
            iso = ("Q8 (the quaternion group)" if involutions == 1
                   else "D4 (the dihedral group of order 8)")
    elif abelian and k <= 16:
        # element-order multisets separate the abelian groups up to order 16
        table_of = {
            (9, 9): "C9", (9, 3): "C3 x C3",
            (10, 10): "C10", (12, 12): "C12", (12, 6): "C6 x C2",
            (14, 14): "C14", (15, 15): "C15",
            (16, 16): "C16",
        }
        key = (k, max(multiset))
        if k == 16:
            if max(multiset) == 16:
                iso = "C16"
            elif max(multiset) == 8:
                iso = "C8 x C2"
            elif max(multiset) == 4:
                iso = "C4 x C4" if multiset.count(2) == 3 else "C4 x C2 x C2"
            else:
                iso = "C2 x C2 x C2 x C2"
        else:
            iso = table_of.get(key)
    if iso is None:
        iso = f"{'abelian' if abelian else 'nonabelian'} group of order {k}"
    return {
        "order": k,
        "abelian": abelian,
        "element_orders": multiset,
        "iso_class": iso,
    }


def truncation_morphism(source, target):
    """The quotient map F0(m) -> F0(n) for n <= m: cut the shifted-coordinate
    expansion after the first n terms."""
    alg_s = _algebra_of(source)
    alg_t = _algebra_of(target)
    m = alg_s.exponents[0]
    n = alg_t.exponents[0]
    if n > m:
        raise StructureError(f"no truncation from {m} terms to {n}")
    keep = (1 << n) - 1
    mapping = [alg_t.index_of[alg_s.carrier[i] & keep] for i in range(source.n)]
    return Morphism(source, target, mapping)
