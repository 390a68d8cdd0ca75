"""Grothendieck-Witt and Witt ring arithmetic over the field towers.

A ``GwElement`` is a formal ZZ-combination of one-dimensional diagonal
forms <a> with square-class entries.  A ``WittClass`` is the canonical form
of its image in the Witt ring: recursively, the pair (unramified part,
ramified part) of the top-variable splitting, bottoming out in base-field
data (dimension parity / signature / parity plus signed discriminant).
Equality in GW is decided through the pair (dimension, Witt class), which
determines an element uniquely.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations

from .fields import (
    QUAD_CLOSED,
    REAL_CLOSED,
    FieldDescriptor,
    FieldMismatchError,
    FieldSyntaxError,
    SquareClass,
    minus_one,
    parse_sc,
    sc_one,
)
from .series import TruncSeries


class MembershipError(ValueError):
    """A Witt class is outside the required power of the fundamental ideal."""


# ---------------------------------------------------------------------------
# formal diagonal forms


class GwElement:
    """Formal ZZ-combination of diagonal one-dimensional forms."""

    __slots__ = ("field", "terms")

    def __init__(self, field: FieldDescriptor, terms: dict[int, int] | None = None):
        self.field = field
        self.terms = {m: c for m, c in (terms or {}).items() if c != 0}

    # -- constructors

    @classmethod
    def zero(cls, field: FieldDescriptor) -> "GwElement":
        return cls(field, {})

    @classmethod
    def unit(cls, field: FieldDescriptor) -> "GwElement":
        return cls(field, {0: 1})

    @classmethod
    def from_int(cls, field: FieldDescriptor, n: int) -> "GwElement":
        return cls(field, {0: n})

    @classmethod
    def diag(cls, *classes: SquareClass) -> "GwElement":
        if not classes:
            raise ValueError("a diagonal form needs at least one entry")
        field = classes[0].field
        terms: dict[int, int] = {}
        for a in classes:
            if a.field != field:
                raise FieldMismatchError("diagonal entries over different fields")
            terms[a.mask] = terms.get(a.mask, 0) + 1
        return cls(field, terms)

    # -- ring structure

    def _check(self, other: "GwElement") -> None:
        if self.field != other.field:
            raise FieldMismatchError("forms over different fields")

    def __add__(self, other: "GwElement") -> "GwElement":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return GwElement(self.field, out)

    def __sub__(self, other: "GwElement") -> "GwElement":
        return self + (-other)

    def __neg__(self) -> "GwElement":
        return GwElement(self.field, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other: "GwElement") -> "GwElement":
        self._check(other)
        out: dict[int, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 ^ m2
                out[m] = out.get(m, 0) + c1 * c2
        return GwElement(self.field, out)

    def scale(self, n: int) -> "GwElement":
        return GwElement(self.field, {m: n * c for m, c in self.terms.items()})

    @property
    def dim(self) -> int:
        return sum(self.terms.values())

    @property
    def is_formal_zero(self) -> bool:
        return not self.terms

    def entries(self) -> list[tuple[SquareClass, int]]:
        return [
            (SquareClass(self.field, m), c) for m, c in sorted(self.terms.items())
        ]

    def is_nonneg_diagonal(self) -> bool:
        return all(c > 0 for c in self.terms.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, GwElement):
            return NotImplemented
        return gw_equal(self, other)

    __hash__ = None

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for a, c in self.entries():
            atom = f"<{a}>"
            if c == 1:
                parts.append(f"+ {atom}")
            elif c == -1:
                parts.append(f"- {atom}")
            else:
                parts.append(f"{'+' if c > 0 else '-'} {abs(c)}*{atom}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self) -> str:
        return f"GwElement({self.field}, {self.terms!r})"


def mul_forms(x: GwElement, y: GwElement) -> GwElement:
    """Bilinear product of diagonal forms."""
    return x * y


def pfister(classes: list[SquareClass] | tuple[SquareClass, ...]) -> GwElement:
    """The 2^n-dimensional form <1,-a_1> x ... x <1,-a_n>."""
    if not classes:
        raise ValueError("a Pfister form needs at least one slot")
    out = GwElement.unit(classes[0].field)
    for a in classes:
        out = out * GwElement.diag(sc_one(a.field), -a)
    return out


def gpfister(classes: list[SquareClass] | tuple[SquareClass, ...]) -> GwElement:
    """The dimension-0 lift (<1> - <a_1>) x ... x (<1> - <a_n>)."""
    if not classes:
        raise ValueError("a Pfister lift needs at least one slot")
    field = classes[0].field
    out = GwElement.unit(field)
    for a in classes:
        out = out * (GwElement.unit(field) - GwElement.diag(a))
    return out


# ---------------------------------------------------------------------------
# Witt canonical forms


@dataclass(frozen=True)
class WittClass:
    """Canonical form of a Witt class; structural equality is Witt equality."""

    field: FieldDescriptor
    base: tuple | None = None
    unram: "WittClass | None" = None
    ram: "WittClass | None" = None

    @property
    def is_zero(self) -> bool:
        if self.base is not None:
            return all(v == 0 for v in self.base)
        return self.unram.is_zero and self.ram.is_zero

    @property
    def dim_parity(self) -> int:
        if self.base is not None:
            if self.field.kind == REAL_CLOSED:
                return self.base[0] % 2
            return self.base[0]
        return (self.unram.dim_parity + self.ram.dim_parity) % 2

    def __add__(self, other: "WittClass") -> "WittClass":
        if self.field != other.field:
            raise FieldMismatchError("Witt classes over different fields")
        if self.base is not None:
            return WittClass(self.field, _base_add(self.field, self.base, other.base))
        return WittClass(
            self.field,
            unram=self.unram + other.unram,
            ram=self.ram + other.ram,
        )

    def __sub__(self, other: "WittClass") -> "WittClass":
        return self + (-other)

    def __neg__(self) -> "WittClass":
        if self.base is not None:
            return WittClass(self.field, _base_neg(self.field, self.base))
        return WittClass(self.field, unram=-self.unram, ram=-self.ram)

    def __mul__(self, other: "WittClass") -> "WittClass":
        if self.field != other.field:
            raise FieldMismatchError("Witt classes over different fields")
        if self.base is not None:
            return WittClass(self.field, _base_mul(self.field, self.base, other.base))
        u1, r1, u2, r2 = self.unram, self.ram, other.unram, other.ram
        return WittClass(self.field, unram=u1 * u2 + r1 * r2, ram=u1 * r2 + r1 * u2)

    def int_mul(self, n: int) -> "WittClass":
        out = witt_zero(self.field)
        step = self if n >= 0 else -self
        for _ in range(abs(n)):
            out = out + step
        return out

    def scale_sq(self, a: SquareClass) -> "WittClass":
        """Pointwise multiplication by the scalar a."""
        if self.field != a.field:
            raise FieldMismatchError("scalar over a different field")
        if self.base is not None:
            return WittClass(self.field, _base_scale(self.field, self.base, a.mask))
        sub = SquareClass(self.field.parent(), a.mask & (self.field.top_bit - 1))
        u, r = self.unram.scale_sq(sub), self.ram.scale_sq(sub)
        if a.mask & self.field.top_bit:
            u, r = r, u
        return WittClass(self.field, unram=u, ram=r)

    def diag_rep(self) -> list[SquareClass]:
        """A small diagonal form with this Witt class."""
        return [SquareClass(self.field, m) for m in _rep_masks(self)]

    def __str__(self) -> str:
        rep = self.diag_rep()
        if not rep:
            return "0"
        return "<" + ",".join(str(a) for a in rep) + ">"


def _base_add(field: FieldDescriptor, p1: tuple, p2: tuple) -> tuple:
    if field.kind == QUAD_CLOSED:
        return ((p1[0] + p2[0]) % 2,)
    if field.kind == REAL_CLOSED:
        return (p1[0] + p2[0],)
    par1, d1 = p1
    par2, d2 = p2
    m1 = minus_one(field).mask
    disc = d1 ^ d2 ^ (m1 if par1 and par2 else 0)
    return ((par1 + par2) % 2, disc)


def _base_neg(field: FieldDescriptor, p: tuple) -> tuple:
    if field.kind == QUAD_CLOSED:
        return p
    if field.kind == REAL_CLOSED:
        return (-p[0],)
    par, d = p
    m1 = minus_one(field).mask
    return (par, d ^ (m1 if par else 0))


def _base_scale(field: FieldDescriptor, p: tuple, mask: int) -> tuple:
    if field.kind == QUAD_CLOSED:
        return p
    if field.kind == REAL_CLOSED:
        return (-p[0],) if mask & 1 else p
    par, d = p
    return (par, d ^ (mask if par else 0))


def _base_mul(field: FieldDescriptor, p1: tuple, p2: tuple) -> tuple:
    if field.kind == QUAD_CLOSED:
        return (p1[0] * p2[0],)
    if field.kind == REAL_CLOSED:
        return (p1[0] * p2[0],)
    counts: dict[int, int] = {}
    for a in _base_rep_masks(field, p1):
        for b in _base_rep_masks(field, p2):
            m = a ^ b
            counts[m] = counts.get(m, 0) + 1
    return _base_payload(field, counts)


def _base_payload(field: FieldDescriptor, counts: dict[int, int]) -> tuple:
    """Canonical base data of a formal ZZ-combination of base classes."""
    if field.kind == QUAD_CLOSED:
        return (sum(counts.values()) % 2,)
    if field.kind == REAL_CLOSED:
        return (sum(c if m == 0 else -c for m, c in counts.items()),)
    m1 = minus_one(field).mask
    dim = 0
    det = 0
    for m, c in counts.items():
        if c < 0:
            m, c = m ^ m1, -c
        dim += c
        if c % 2:
            det ^= m
    disc = det ^ (m1 if (dim * (dim - 1) // 2) % 2 else 0)
    return (dim % 2, disc)


def _base_rep_masks(field: FieldDescriptor, p: tuple) -> list[int]:
    if field.kind == QUAD_CLOSED:
        return [0] * p[0]
    if field.kind == REAL_CLOSED:
        sig = p[0]
        return [0] * sig if sig >= 0 else [1] * (-sig)
    par, d = p
    if par:
        return [d]
    if d == 0:
        return []
    return [0, d ^ minus_one(field).mask]


def _rep_masks(w: WittClass) -> list[int]:
    if w.base is not None:
        return _base_rep_masks(w.field, w.base)
    top = w.field.top_bit
    return _rep_masks(w.unram) + [m | top for m in _rep_masks(w.ram)]


def witt_zero(field: FieldDescriptor) -> WittClass:
    if field.depth == 0:
        if field.kind == QUAD_CLOSED:
            return WittClass(field, (0,))
        if field.kind == REAL_CLOSED:
            return WittClass(field, (0,))
        return WittClass(field, (0, 0))
    sub = witt_zero(field.parent())
    return WittClass(field, unram=sub, ram=sub)


def witt_one(field: FieldDescriptor) -> WittClass:
    return witt_canonical(GwElement.unit(field))


def witt_canonical(x: GwElement) -> WittClass:
    """Springer normal form: split entries by the parity of the top
    variable's exponent and recurse, reducing to base data at depth 0."""
    field = x.field
    if field.depth == 0:
        return WittClass(field, _base_payload(field, x.terms))
    top = field.top_bit
    sub = field.parent()
    unram: dict[int, int] = {}
    ram: dict[int, int] = {}
    for m, c in x.terms.items():
        if m & top:
            ram[m ^ top] = ram.get(m ^ top, 0) + c
        else:
            unram[m] = unram.get(m, 0) + c
    return WittClass(
        field,
        unram=witt_canonical(GwElement(sub, unram)),
        ram=witt_canonical(GwElement(sub, ram)),
    )


def gw_equal(x: GwElement, y: GwElement) -> bool:
    """Equality in GW: equal dimensions and equal Witt classes."""
    if x.field != y.field:
        raise FieldMismatchError("forms over different fields")
    return x.dim == y.dim and witt_canonical(x) == witt_canonical(y)


def second_residue(q: WittClass) -> WittClass:
    """The ramified component of the Springer splitting for the top
    variable; vanishes exactly on unramified classes."""
    if q.base is not None:
        raise ValueError("second residue needs a tower of depth >= 1")
    return q.ram


def unramified_part(q: WittClass) -> WittClass:
    if q.base is not None:
        raise ValueError("unramified part needs a tower of depth >= 1")
    return q.unram


def hat_lift(q: WittClass) -> GwElement:
    """The unique dimension-0 GW element whose Witt class is q."""
    if q.dim_parity != 0:
        raise MembershipError("only even-dimensional classes lift to dimension 0")
    field = q.field
    rep = _rep_masks(q)
    terms: dict[int, int] = {}
    for m in rep:
        terms[m] = terms.get(m, 0) + 1
    x = GwElement(field, terms)
    half = len(rep) // 2
    hyp = GwElement.diag(sc_one(field), -sc_one(field)).scale(half)
    return x - hyp


def is_in_In(q: WittClass, n: int) -> bool:
    """Membership in the n-th power of the fundamental ideal, decided by the
    vanishing of the degree-m cohomological invariants for m < n."""
    from . import cohomology

    for m in range(n):
        if not cohomology._e_unchecked(q, m).is_zero:
            return False
    return True


# ---------------------------------------------------------------------------
# exterior powers


@dataclass(frozen=True)
class GwRing:
    """Coefficient adapter for series with GW coefficients."""

    field: FieldDescriptor

    @property
    def zero(self) -> GwElement:
        return GwElement.zero(self.field)

    @property
    def one(self) -> GwElement:
        return GwElement.unit(self.field)

    def from_int(self, n: int) -> GwElement:
        return GwElement.from_int(self.field, n)

    @staticmethod
    def is_zero(x: GwElement) -> bool:
        return not x.terms


def lambda_series(x: GwElement, precision: int) -> TruncSeries:
    """The exterior-power generating series of x, truncated.

    Computed through the group law: the series of a sum of generators is the
    product of the binomials 1 + <a> t, and negative multiplicities invert.
    """
    ring = GwRing(x.field)
    if precision == 0:
        return TruncSeries.one(ring, 0)
    num = TruncSeries.one(ring, precision)
    den = TruncSeries.one(ring, precision)
    for m, c in sorted(x.terms.items()):
        binomial = TruncSeries(
            ring,
            [ring.one, GwElement(x.field, {m: 1})],
            precision=precision,
        )
        if c > 0:
            num = num * binomial.pow(c)
        else:
            den = den * binomial.pow(-c)
    return num * den.mul_inverse()


def lambda_power(d: int, x: GwElement) -> GwElement:
    """The d-th exterior power; for a nonnegative diagonal form this is the
    elementary symmetric expression in the entries."""
    if d == 0:
        return GwElement.unit(x.field)
    return lambda_series(x, d).coeff(d)


def lambda_power_direct(d: int, x: GwElement) -> GwElement:
    """Combinatorial exterior power of a nonnegative diagonal form; used as
    an independent cross-check of the series route."""
    if not x.is_nonneg_diagonal():
        raise ValueError("direct exterior powers need a nonnegative diagonal form")
    if d == 0:
        return GwElement.unit(x.field)
    masks = [m for m, c in sorted(x.terms.items()) for _ in range(c)]
    terms: dict[int, int] = {}
    for combo in combinations(masks, d):
        m = 0
        for a in combo:
            m ^= a
        terms[m] = terms.get(m, 0) + 1
    return GwElement(x.field, terms)


def signed_disc(x: GwElement) -> SquareClass:
    """Signed discriminant (-1)^(m(m-1)/2) det of a nonnegative diagonal."""
    if not x.is_nonneg_diagonal():
        raise ValueError("signed discriminant needs a nonnegative diagonal form")
    det = 0
    for m, c in x.terms.items():
        if c % 2:
            det ^= m
    dim = x.dim
    if (dim * (dim - 1) // 2) % 2:
        det ^= minus_one(x.field).mask
    return SquareClass(x.field, det)


# ---------------------------------------------------------------------------
# form-expression grammar:  form := term (('+'|'-') term)*
#                           term := [int '*'] atom
#                           atom := 'diag(' sc {',' sc} ')'
#                                 | 'pf(' sc {',' sc} ')' | 'H'

_TERM_RE = re.compile(r"^(?:(\d+)\*)?(.*)$")


def parse_form(text: str, field: FieldDescriptor) -> GwElement:
    text = text.strip()
    if not text:
        raise FieldSyntaxError("empty form expression")
    out = GwElement.zero(field)
    pos = 0
    sign = 1
    if text[0] in "+-":
        sign = -1 if text[0] == "-" else 1
        pos = 1
    while pos <= len(text) - 1:
        depth = 0
        end = pos
        while end < len(text):
            ch = text[end]
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch in "+-" and depth == 0:
                break
            end += 1
        out = out + _parse_term(text[pos:end].strip(), field).scale(sign)
        if end >= len(text):
            break
        sign = -1 if text[end] == "-" else 1
        pos = end + 1
    return out


def _parse_term(text: str, field: FieldDescriptor) -> GwElement:
    m = _TERM_RE.match(text)
    if not m:
        raise FieldSyntaxError(f"bad form term {text!r}")
    coeff = int(m.group(1)) if m.group(1) else 1
    atom = m.group(2).strip()
    if atom == "H":
        return GwElement.diag(sc_one(field), -sc_one(field)).scale(coeff)
    for head, maker in (("diag(", GwElement.diag), ("pf(", None)):
        if atom.startswith(head) and atom.endswith(")"):
            inner = atom[len(head) : -1]
            classes = [parse_sc(tok, field) for tok in inner.split(",")]
            if maker is not None:
                return maker(*classes).scale(coeff)
            return pfister(classes).scale(coeff)
    raise FieldSyntaxError(f"bad form atom {atom!r}")
