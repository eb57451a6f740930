"""Carriers for 3-rings/3-fields and brute-force verification of their axioms.

A carrier is a finite ordered set of elements (identified by index) together
with dense operation tables: a ternary addition nu and, usually, a binary
multiplication mu whose derived ternary product is mu(mu(x,y),z).  Tables are
immutable after construction and all verdicts are deterministic: every scan
reports the lexicographically least witness.

The O(n^5) scans (total associativity, ternary distributivity) run in a
compiled extension when available and fall back to NumPy broadcasting
otherwise; both backends return identical witnesses.
"""

import json
import os

import numpy as np

try:
    from . import _axioms as _kernels
except ImportError:
    from . import _axioms_py as _kernels

# Exhaustive O(n^5) checks are size-gated; the built-in exhibits fit in 32.
DEFAULT_CHECK_LIMIT = 32
# O(n^3) vectorized checks are always run, but guard against absurd tables.
_CUBIC_LIMIT = 512

FOREIGN = -1  # table entry for a result that falls outside the carrier


def kernel_backend():
    """Name of the active scan backend: "cython" or "numpy"."""
    return _kernels.backend_name()


def check_limit(limit=None):
    """Resolve the exhaustive-check size gate (TERNARY_MAX_CARRIER overrides)."""
    if limit is not None:
        return int(limit)
    env = os.environ.get("TERNARY_MAX_CARRIER")
    return int(env) if env else DEFAULT_CHECK_LIMIT


class StructureError(ValueError):
    """An algebraic invariant failed during construction or lookup."""


class CarrierSizeError(ValueError):
    """Carrier exceeds the size gate for an exhaustive check."""


class Verdict:
    """Outcome of an axiom scan; falsy iff some axiom failed.

    axiom: short name of the first failing axiom, witness: the least
    counterexample tuple (element indices), detail: human-readable account.
    """

    __slots__ = ("ok", "axiom", "witness", "detail")

    def __init__(self, ok, axiom=None, witness=None, detail=None):
        self.ok = bool(ok)
        self.axiom = axiom
        self.witness = witness
        self.detail = detail

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return "Verdict(pass)"
        return f"Verdict(fail: {self.axiom} at {self.witness}: {self.detail})"

    def as_dict(self):
        return {
            "ok": self.ok,
            "axiom": self.axiom,
            "witness": list(self.witness) if self.witness is not None else None,
            "detail": self.detail,
        }


_PASS = Verdict(True)


def _table(data, shape, what):
    arr = np.ascontiguousarray(data, dtype=np.int32).reshape(shape)
    n = shape[0]
    if arr.size and (arr.max() >= n or arr.min() < FOREIGN):
        raise StructureError(f"{what} table entries must lie in [-1, {n})")
    arr.setflags(write=False)
    return arr


class TernaryCarrier:
    """Finite ordered carrier with table-backed operations.

    labels: element names in canonical order.
    nu: (n,n,n) index table for the ternary addition.
    mu: optional (n,n) index table for the binary multiplication.
    Entries equal to FOREIGN (-1) mark results that leave the carrier; the
    *_foreign dicts map the offending argument tuples to a label of the
    outside value, for witness reporting.
    """

    def __init__(self, labels, nu, mu=None, nu_foreign=None, mu_foreign=None):
        self.labels = tuple(str(x) for x in labels)
        self.n = len(self.labels)
        if self.n < 1:
            raise StructureError("carrier must have at least one element")
        if len(set(self.labels)) != self.n:
            raise StructureError("carrier labels must be distinct")
        self.nu = _table(nu, (self.n, self.n, self.n), "nu")
        self.mu = None if mu is None else _table(mu, (self.n, self.n), "mu")
        self.nu_foreign = dict(nu_foreign or {})
        self.mu_foreign = dict(mu_foreign or {})

    @classmethod
    def from_ops(cls, values, nu, mu=None, label=str):
        """Materialize tables from callables over an ordered list of values."""
        values = list(values)
        index = {v: i for i, v in enumerate(values)}
        if len(index) != len(values):
            raise StructureError("carrier values must be distinct")
        n = len(values)
        nu_t = np.empty((n, n, n), dtype=np.int32)
        nu_f = {}
        for i, x in enumerate(values):
            for j, y in enumerate(values):
                for k, z in enumerate(values):
                    r = nu(x, y, z)
                    got = index.get(r, FOREIGN)
                    nu_t[i, j, k] = got
                    if got == FOREIGN:
                        nu_f[(i, j, k)] = label(r)
        mu_t = None
        mu_f = {}
        if mu is not None:
            mu_t = np.empty((n, n), dtype=np.int32)
            for i, x in enumerate(values):
                for j, y in enumerate(values):
                    r = mu(x, y)
                    got = index.get(r, FOREIGN)
                    mu_t[i, j] = got
                    if got == FOREIGN:
                        mu_f[(i, j)] = label(r)
        return cls([label(v) for v in values], nu_t, mu_t, nu_f, mu_f)

    def nu_at(self, i, j, k):
        return int(self.nu[i, j, k])

    def mu_at(self, i, j):
        if self.mu is None:
            raise StructureError("carrier has no binary multiplication")
        return int(self.mu[i, j])

    def derived_ternary_mu(self):
        """Dense table of the derived ternary product mu(mu(x,y),z)."""
        if self.mu is None:
            raise StructureError("carrier has no binary multiplication")
        if (self.mu < 0).any():
            raise StructureError("mu is not closed; no derived ternary product")
        return self.mu[self.mu]  # [i,j,k] -> mu[mu[i,j],k]

    def index(self, lab):
        try:
            return self.labels.index(lab)
        except ValueError:
            raise StructureError(f"no element labeled {lab!r}") from None

    def label(self, i):
        return self.labels[i]

    def to_json(self, one=None):
        doc = {
            "elements": list(self.labels),
            "nu": [int(v) for v in self.nu.reshape(-1)],
            "mu": None if self.mu is None else [int(v) for v in self.mu.reshape(-1)],
            "one": one,
        }
        return doc

    @classmethod
    def from_json(cls, doc):
        labels = doc["elements"]
        n = len(labels)
        nu = np.asarray(doc["nu"], dtype=np.int32).reshape(n, n, n)
        mu = doc.get("mu")
        if mu is not None:
            mu = np.asarray(mu, dtype=np.int32).reshape(n, n)
        return cls(labels, nu, mu)

    def dumps(self, one=None):
        return json.dumps(self.to_json(one), indent=2, sort_keys=False)

    def __repr__(self):
        return f"TernaryCarrier({self.n} elements)"


def _first_foreign(table, foreign_map, labels, opname):
    flat = table.reshape(-1)
    pos = int(np.argmax(flat < 0))
    idx = np.unravel_index(pos, table.shape)
    idx = tuple(int(v) for v in idx)
    outside = foreign_map.get(idx, "?")
    args = ",".join(labels[v] for v in idx)
    return Verdict(False, "closure", idx,
                   f"{opname}({args}) = {outside} not in carrier")


def _nu_of(obj):
    nu = obj.nu if isinstance(obj, TernaryCarrier) else obj.nu
    return nu


def check_ternary_group(carrier, limit=None):
    """Verify the additive axioms: closure, full commutativity, unique
    solvability of nu(a,b,x)=c, and total associativity (checked in that
    order, cheapest first).  Returns a Verdict with the least witness."""
    n = carrier.n
    nu = carrier.nu
    labels = carrier.labels
    if (nu < 0).any():
        return _first_foreign(nu, getattr(carrier, "nu_foreign", {}), labels, "nu")
    if n > _CUBIC_LIMIT:
        raise CarrierSizeError(f"carrier size {n} exceeds the O(n^3) guard")
    # commutativity under all argument permutations: two transpositions generate S3
    bad = (nu != nu.transpose(1, 0, 2)) | (nu != nu.transpose(0, 2, 1))
    if bad.any():
        i, j, k = (int(v) for v in np.unravel_index(int(np.argmax(bad)), bad.shape))
        return Verdict(False, "commutativity", (i, j, k),
                       f"nu is not symmetric at ({labels[i]},{labels[j]},{labels[k]})")
    # unique solvability of nu(a,b,x)=c: each row must be a permutation
    rows_ok = (np.sort(nu, axis=2) == np.arange(n, dtype=np.int32)).all(axis=2)
    if not rows_ok.all():
        a, b = (int(v) for v in np.unravel_index(int(np.argmax(~rows_ok)), rows_ok.shape))
        return Verdict(False, "solvability", (a, b),
                       f"nu({labels[a]},{labels[b]},x) does not reach every element exactly once")
    gate = check_limit(limit)
    if n > gate:
        raise CarrierSizeError(
            f"carrier size {n} exceeds the exhaustive-check gate {gate} "
            "(raise it via the limit argument or TERNARY_MAX_CARRIER)")
    w = _kernels.assoc3(nu.reshape(-1), n)
    if w is not None:
        a, b, c, d, e = w
        return Verdict(False, "associativity", w,
                       "the regroupings of nu disagree at "
                       f"({labels[a]},{labels[b]},{labels[c]},{labels[d]},{labels[e]})")
    return _PASS


def check_distributivity(obj, limit=None):
    """Verify multiplication: closure, associativity, and the three ternary
    distributivity laws over nu.  Accepts a TernaryCarrier (derived ternary
    product) or a ProperThreeThreeField (genuine ternary product)."""
    n = obj.n
    labels = obj.labels
    nu = obj.nu
    if (nu < 0).any():
        return _first_foreign(nu, getattr(obj, "nu_foreign", {}), labels, "nu")
    if isinstance(obj, ProperThreeThreeField):
        tmu = obj.ternary_mu
        if (tmu < 0).any():
            return _first_foreign(tmu, obj.tmu_foreign, labels, "mu")
    else:
        if obj.mu is None:
            raise StructureError("carrier has no multiplication to check")
        if (obj.mu < 0).any():
            return _first_foreign(obj.mu, getattr(obj, "mu_foreign", {}), labels, "mu")
        if n > _CUBIC_LIMIT:
            raise CarrierSizeError(f"carrier size {n} exceeds the O(n^3) guard")
        mu = obj.mu
        left = mu[mu]          # [i,j,k] -> mu[mu[i,j],k]
        right = mu[:, mu]      # [i,j,k] -> mu[i,mu[j,k]]
        bad = left != right
        if bad.any():
            i, j, k = (int(v) for v in np.unravel_index(int(np.argmax(bad)), bad.shape))
            return Verdict(False, "mu-associativity", (i, j, k),
                           f"mu is not associative at ({labels[i]},{labels[j]},{labels[k]})")
        tmu = obj.derived_ternary_mu()
    gate = check_limit(limit)
    if n > gate:
        raise CarrierSizeError(
            f"carrier size {n} exceeds the exhaustive-check gate {gate} "
            "(raise it via the limit argument or TERNARY_MAX_CARRIER)")
    w = _kernels.distrib3(nu.reshape(-1), np.ascontiguousarray(tmu).reshape(-1), n)
    if w is not None:
        law, a, b, c, d, e = w
        return Verdict(False, f"distributivity-law-{law}", (a, b, c, d, e),
                       f"law {law} fails at "
                       f"({labels[a]},{labels[b]},{labels[c]},{labels[d]},{labels[e]})")
    return _PASS


def quer_add(carrier, x):
    """The additive querelement: unique t with nu(x,x,t) = x."""
    row = carrier.nu[x, x]
    sols = np.flatnonzero(row == x)
    if len(sols) != 1:
        raise StructureError(
            f"nu({carrier.labels[x]},{carrier.labels[x]},t)={carrier.labels[x]} "
            f"has {len(sols)} solutions; not a ternary group")
    return int(sols[0])


def quer_total(carrier):
    """Whether quer_add is defined for every element (no exceptions raised)."""
    nu = carrier.nu
    n = carrier.n
    diag = nu[np.arange(n), np.arange(n), :]  # [x, t] = nu(x,x,t)
    counts = (diag == np.arange(n, dtype=np.int32)[:, None]).sum(axis=1)
    return bool((counts == 1).all())


def _ternary_units(tmu, n):
    """Indices e with tmu(e,e,x) = x for all x."""
    idx = np.arange(n, dtype=np.int32)
    return [int(e) for e in range(n) if (tmu[e, e] == idx).all()]


def detect_derived_structure(obj):
    """Report a multiplicative unit and/or a zero element, if present.

    The unit of a binary-backed carrier is the (unique) two-sided identity of
    mu; for a genuinely ternary product, any e with mu(e,e,x)=x qualifies and
    the least one is reported.  A zero must be additively neutral
    (nu(z,z,x)=x for all x), multiplicatively absorbing (ternary product
    mu(z,x,y)=z for all x,y), and distinct from the unit; a carrier with
    such a zero has operations derived from ordinary binary ones.
    """
    n = obj.n
    nu = obj.nu
    idx = np.arange(n, dtype=np.int32)
    if isinstance(obj, ProperThreeThreeField):
        tmu = obj.ternary_mu
        units = _ternary_units(tmu, n)
        unit = units[0] if units else None
    else:
        unit = None
        tmu = None
        if obj.mu is not None and (obj.mu >= 0).all():
            mu = obj.mu
            hits = [e for e in range(n) if (mu[e] == idx).all() and (mu[:, e] == idx).all()]
            unit = hits[0] if hits else None
            tmu = obj.derived_ternary_mu()
    zero = None
    if tmu is not None:
        for z in range(n):
            if z == unit:
                continue
            if (nu[z, z] == idx).all() and (tmu[z] == z).all():
                zero = z
                break
    return {"unit": unit, "zero": zero}


class FiniteThreeField:
    """Finite unital 3-field: a carrier whose multiplication is a group with
    identity `one` and whose ternary addition has no zero element.

    check: "auto" gates the O(n^5) scans by carrier size, "full" forces them,
    "light" runs only the cheap invariants, False trusts the caller.
    """

    def __init__(self, carrier, one, origin=None, check="auto", limit=None):
        self.carrier = carrier
        self.one = int(one)
        self.origin = dict(origin) if origin else {}
        self._inv = None
        self._quer = None
        if not (0 <= self.one < carrier.n):
            raise StructureError("unit index out of range")
        if check:
            self._validate(check, limit)

    # -- table access -------------------------------------------------------

    @property
    def n(self):
        return self.carrier.n

    @property
    def labels(self):
        return self.carrier.labels

    def nu(self, i, j, k):
        return int(self.carrier.nu[i, j, k])

    def mu(self, i, j):
        return int(self.carrier.mu[i, j])

    def label(self, i):
        return self.carrier.labels[i]

    def index(self, lab):
        return self.carrier.index(lab)

    def elements(self):
        return range(self.carrier.n)

    def inv(self, i):
        if self._inv is None:
            self._inv = self._inverse_table()
        return int(self._inv[i])

    def quer(self, i):
        if self._quer is None:
            self._quer = [quer_add(self.carrier, x) for x in range(self.n)]
        return self._quer[i]

    def power(self, i, k):
        """k-th multiplicative power, k >= 0 (0 gives the unit)."""
        acc = self.one
        base = i
        k = int(k)
        if k < 0:
            base, k = self.inv(i), -k
        while k:
            if k & 1:
                acc = self.mu(acc, base)
            base = self.mu(base, base)
            k >>= 1
        return acc

    # -- invariants ----------------------------------------------------------

    def _inverse_table(self):
        mu = self.carrier.mu
        n = self.carrier.n
        pos = mu == self.one
        if not pos.any(axis=1).all():
            x = int(np.argmax(~pos.any(axis=1)))
            raise StructureError(f"element {self.labels[x]} has no right inverse")
        inv = np.argmax(pos, axis=1)
        if not (mu[inv, np.arange(n)] == self.one).all():
            x = int(np.argmax(mu[inv, np.arange(n)] != self.one))
            raise StructureError(f"element {self.labels[x]} has no two-sided inverse")
        return inv

    def _validate(self, check, limit):
        c = self.carrier
        n = c.n
        if c.mu is None:
            raise StructureError("a 3-field needs a binary multiplication")
        if (c.nu < 0).any() or (c.mu < 0).any():
            raise StructureError("field operations must be closed")
        idx = np.arange(n, dtype=np.int32)
        if not ((c.mu[self.one] == idx).all() and (c.mu[:, self.one] == idx).all()):
            raise StructureError(f"{self.label(self.one)} is not a two-sided unit")
        self._inv = self._inverse_table()
        # additive structure: cheap parts always
        bad = (c.nu != c.nu.transpose(1, 0, 2)) | (c.nu != c.nu.transpose(0, 2, 1))
        if bad.any():
            raise StructureError("nu is not commutative")
        if not (np.sort(c.nu, axis=2) == idx).all():
            raise StructureError("nu(a,b,x)=c is not uniquely solvable")
        mu = c.mu
        if not (mu[mu] == mu[:, mu]).all():
            raise StructureError("mu is not associative")
        found = detect_derived_structure(c)
        if found["zero"] is not None:
            raise StructureError(
                f"additive zero {self.label(found['zero'])} present; not a proper 3-field")
        if check == "light":
            return
        gate = check_limit(limit)
        if check == "full" or n <= gate:
            v = check_ternary_group(c, limit=n if check == "full" else limit)
            if not v:
                raise StructureError(f"additive axioms fail: {v.detail}")
            v = check_distributivity(c, limit=n if check == "full" else limit)
            if not v:
                raise StructureError(f"distributivity fails: {v.detail}")

    # -- derived views -------------------------------------------------------

    def subset_carrier(self, indices):
        """Carrier restricted to a subset, foreign results marked."""
        indices = [int(i) for i in indices]
        back = {g: s for s, g in enumerate(indices)}
        n = len(indices)
        nu = np.empty((n, n, n), dtype=np.int32)
        nu_f = {}
        for a, ga in enumerate(indices):
            for b, gb in enumerate(indices):
                for c, gc in enumerate(indices):
                    r = self.nu(ga, gb, gc)
                    nu[a, b, c] = back.get(r, FOREIGN)
                    if r not in back:
                        nu_f[(a, b, c)] = self.label(r)
        mu = np.empty((n, n), dtype=np.int32)
        mu_f = {}
        for a, ga in enumerate(indices):
            for b, gb in enumerate(indices):
                r = self.mu(ga, gb)
                mu[a, b] = back.get(r, FOREIGN)
                if r not in back:
                    mu_f[(a, b)] = self.label(r)
        labels = [self.label(g) for g in indices]
        return TernaryCarrier(labels, nu, mu, nu_f, mu_f)

    def is_subfield(self, indices):
        """Whether the subset is a unital 3-subfield (unit, closure, inverses)."""
        s = set(int(i) for i in indices)
        if self.one not in s:
            return False
        for a in s:
            if self.inv(a) not in s:
                return False
            for b in s:
                if self.mu(a, b) not in s:
                    return False
                for c in s:
                    if self.nu(a, b, c) not in s:
                        return False
        return True

    def to_json(self):
        doc = self.carrier.to_json(one=self.one)
        if self.origin:
            doc["origin"] = self.origin
        return doc

    def dumps(self):
        return json.dumps(self.to_json(), indent=2, sort_keys=False)

    def __repr__(self):
        kind = self.origin.get("kind", "table")
        return f"FiniteThreeField({self.n} elements, {kind})"


class ProperThreeThreeField:
    """(3,3)-field with a genuinely ternary multiplication and no unit."""

    def __init__(self, labels, nu, ternary_mu, tmu_foreign=None, check=True, limit=None):
        self.labels = tuple(str(x) for x in labels)
        self.n = len(self.labels)
        self.nu = _table(nu, (self.n, self.n, self.n), "nu")
        self.ternary_mu = _table(ternary_mu, (self.n, self.n, self.n), "ternary_mu")
        self.tmu_foreign = dict(tmu_foreign or {})
        self.nu_foreign = {}
        if check:
            self._validate(limit)

    def _validate(self, limit):
        if (self.nu < 0).any() or (self.ternary_mu < 0).any():
            raise StructureError("operations must be closed")
        v = check_ternary_group(self, limit=limit)
        if not v:
            raise StructureError(f"additive axioms fail: {v.detail}")
        units = _ternary_units(self.ternary_mu, self.n)
        if units:
            raise StructureError(
                f"multiplicative unit {self.labels[units[0]]} found; "
                "not a proper (3,3)-field")
        gate = check_limit(limit)
        if self.n > gate:
            raise CarrierSizeError(f"carrier size {self.n} exceeds gate {gate}")
        w = _kernels.assoc3(self.ternary_mu.reshape(-1), self.n)
        if w is not None:
            raise StructureError(f"ternary multiplication not associative at {w}")
        v = check_distributivity(self, limit=limit)
        if not v:
            raise StructureError(f"distributivity fails: {v.detail}")

    def label(self, i):
        return self.labels[i]

    def __repr__(self):
        return f"ProperThreeThreeField({self.n} elements)"


def twisted_coset(field, subfield_indices, t):
    """The coset t*F1 of a unital 3-subfield F1, for t outside F1 with t*t in
    F1: a proper (3,3)-field with inherited nu and the genuine ternary product.

    Raises StructureError if the preconditions fail, if the coset is not
    closed, or if the result has a multiplicative unit (properness).
    """
    f1 = sorted(int(i) for i in subfield_indices)
    t = int(t)
    if not field.is_subfield(f1):
        raise StructureError("given subset is not a unital 3-subfield")
    if t in f1:
        raise StructureError("t must lie outside the subfield")
    if field.mu(t, t) not in set(f1):
        raise StructureError("t*t must lie in the subfield")
    coset = sorted({field.mu(t, f) for f in f1})
    back = {g: s for s, g in enumerate(coset)}
    n = len(coset)
    nu = np.empty((n, n, n), dtype=np.int32)
    tmu = np.empty((n, n, n), dtype=np.int32)
    for a, ga in enumerate(coset):
        for b, gb in enumerate(coset):
            gab = field.mu(ga, gb)
            for c, gc in enumerate(coset):
                r = field.nu(ga, gb, gc)
                if r not in back:
                    raise StructureError(
                        f"coset not closed under nu: nu({field.label(ga)},"
                        f"{field.label(gb)},{field.label(gc)}) = {field.label(r)}")
                nu[a, b, c] = back[r]
                m = field.mu(gab, gc)
                if m not in back:
                    raise StructureError(
                        f"coset not closed under the ternary product at "
                        f"({field.label(ga)},{field.label(gb)},{field.label(gc)})")
                tmu[a, b, c] = back[m]
    labels = [field.label(g) for g in coset]
    return ProperThreeThreeField(labels, nu, tmu)


def odd_residue_field(modulus, check="auto"):
    """(Z/2^n Z)^odd: the odd residues mod a power of two, with ternary
    addition x+y+z and ordinary multiplication."""
    m = int(modulus)
    if m < 2 or m & (m - 1):
        raise StructureError("modulus must be a power of two, at least 2")
    vals = np.arange(1, m, 2, dtype=np.int64)
    n = len(vals)
    s3 = (vals[:, None, None] + vals[None, :, None] + vals[None, None, :]) % m
    nu = ((s3 - 1) // 2).astype(np.int32)
    p2 = (vals[:, None] * vals[None, :]) % m
    mu = ((p2 - 1) // 2).astype(np.int32)
    carrier = TernaryCarrier([str(int(v)) for v in vals], nu, mu)
    return FiniteThreeField(carrier, 0, origin={"kind": "odd_residue", "modulus": m},
                            check=check)
