"""Mod-2 cohomology of the field towers as an explicit graded F2-algebra.

Classes are F2-sets of basis monomials.  A monomial is a pair
(base exponent, variable bitmask): the base part is a power of (-1) over a
real-closed base, at most one factor (u) over a finite base, and trivial
over a quadratically closed base; the variable part is a squarefree product
of degree-1 classes of tower variables.  The grade of a monomial is the
base exponent plus the number of variables.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import (
    FINITE_ODD,
    QUAD_CLOSED,
    REAL_CLOSED,
    FieldDescriptor,
    FieldMismatchError,
    SquareClass,
    minus_one,
)
from .witt import MembershipError, WittClass, is_in_In


@dataclass(frozen=True)
class CohClass:
    """An F2-combination of cohomology basis monomials."""

    field: FieldDescriptor
    monos: frozenset  # of (base_exp: int, var_mask: int)

    @classmethod
    def zero(cls, field: FieldDescriptor) -> "CohClass":
        return cls(field, frozenset())

    @classmethod
    def one(cls, field: FieldDescriptor) -> "CohClass":
        return cls(field, frozenset({(0, 0)}))

    @property
    def is_zero(self) -> bool:
        return not self.monos

    def _check(self, other: "CohClass") -> None:
        if self.field != other.field:
            raise FieldMismatchError("cohomology classes over different fields")

    def __add__(self, other: "CohClass") -> "CohClass":
        self._check(other)
        return CohClass(self.field, self.monos ^ other.monos)

    __sub__ = __add__

    def __neg__(self) -> "CohClass":
        return self

    def __mul__(self, other: "CohClass") -> "CohClass":
        """Cup product, with the square rewrite (t).(t) = (-1).(t) and the
        base truncations applied monomial by monomial."""
        self._check(other)
        field = self.field
        acc: set = set()
        for b1, v1 in self.monos:
            for b2, v2 in other.monos:
                mono = _mono_mul(field, b1, v1, b2, v2)
                if mono is not None:
                    acc ^= {mono}
        return CohClass(field, frozenset(acc))

    def grades(self) -> dict[int, "CohClass"]:
        """Homogeneous components, keyed by grade."""
        out: dict[int, set] = {}
        for b, v in self.monos:
            out.setdefault(b + v.bit_count(), set()).add((b, v))
        return {
            g: CohClass(self.field, frozenset(s)) for g, s in sorted(out.items())
        }

    def __str__(self) -> str:
        return render_coh(self)

    def __repr__(self) -> str:
        return f"CohClass({self.field}, {sorted(self.monos)!r})"


def _mono_mul(field: FieldDescriptor, b1: int, v1: int, b2: int, v2: int):
    """Product of two basis monomials; None when the product vanishes."""
    overlap = (v1 & v2).bit_count()
    if field.kind == QUAD_CLOSED:
        # (-1) = 0, so any square among the variables kills the product.
        return None if overlap else (0, v1 | v2)
    if field.kind == REAL_CLOSED:
        return (b1 + b2 + overlap, v1 | v2)
    if field.q % 4 == 1:
        if overlap:
            return None
        b = b1 + b2
    else:
        b = b1 + b2 + overlap
    # (u) cup (u) lands in degree-2 base cohomology, which is trivial.
    return None if b >= 2 else (b, v1 | v2)


def degree1(a: SquareClass) -> CohClass:
    """The degree-1 class of a square-class monomial, expanded over the
    generators (additivity of symbols in each slot)."""
    field = a.field
    monos: set = set()
    if a.base_mask:
        monos ^= {(1, 0)}
    v = a.var_mask
    i = 0
    while v:
        if v & 1:
            monos ^= {(0, 1 << i)}
        v >>= 1
        i += 1
    if field.kind == QUAD_CLOSED and (1, 0) in monos:
        monos.discard((1, 0))
    return CohClass(field, frozenset(monos))


def symbol(classes: list[SquareClass] | tuple[SquareClass, ...]) -> CohClass:
    """Cup product of the degree-1 classes of the arguments; the empty
    product is 1."""
    if not classes:
        raise ValueError("symbol needs a field; use CohClass.one for degree 0")
    out = CohClass.one(classes[0].field)
    for a in classes:
        out = out * degree1(a)
    return out


def cup(x: CohClass, y: CohClass) -> CohClass:
    return x * y


def minus_one_class(field: FieldDescriptor) -> CohClass:
    return degree1(minus_one(field))


def minus_one_power(field: FieldDescriptor, j: int) -> CohClass:
    """(-1)^j as a cohomology class (1 for j = 0)."""
    out = CohClass.one(field)
    m1 = minus_one_class(field)
    for _ in range(j):
        out = out * m1
    return out


def coh_residue(x: CohClass) -> CohClass:
    """Residue for the top variable: delete (t) where present, kill the
    rest; lands over the one-shorter tower."""
    field = x.field
    if field.depth == 0:
        raise ValueError("residue needs a tower of depth >= 1")
    sub = field.parent()
    top = 1 << (field.depth - 1)  # top-variable bit inside the var mask
    monos = frozenset((b, v ^ top) for b, v in x.monos if v & top)
    return CohClass(sub, monos)


def embed(x: CohClass, field: FieldDescriptor) -> CohClass:
    """Push a class from a sub-tower into a taller tower (same monomials)."""
    if x.field != field.parent():
        raise FieldMismatchError("can only embed from the immediate sub-tower")
    return CohClass(field, x.monos)


def e_n(q: WittClass, n: int) -> CohClass:
    """The degree-n cohomological invariant of a class in I^n."""
    if not is_in_In(q, n):
        raise MembershipError(f"class is not in I^{n}")
    return _e_unchecked(q, n)


def _e_unchecked(q: WittClass, n: int) -> CohClass:
    """Springer recursion for e_n, assuming q is in I^n.

    With canonical data q = u + <t> r, the splitting q = a + <<t>> b has
    a = u + r and b = -r (from <t> r = r - <<t>> r), so
    e_n(q) = e_n(a) + (t) cup e_{n-1}(b).
    """
    field = q.field
    if n == 0:
        return (
            CohClass.one(field) if q.dim_parity else CohClass.zero(field)
        )
    if q.base is None:
        a = q.unram + q.ram
        b = -q.ram
        out = embed(_e_unchecked(a, n), field)
        t_class = CohClass(field, frozenset({(0, 1 << (field.depth - 1))}))
        return out + t_class * embed(_e_unchecked(b, n - 1), field)
    if field.kind == QUAD_CLOSED:
        if not q.is_zero:
            raise MembershipError("nontrivial class over a quadratically closed base")
        return CohClass.zero(field)
    if field.kind == REAL_CLOSED:
        sig = q.base[0]
        if sig % (1 << n) != 0:
            raise MembershipError(f"signature {sig} not divisible by 2^{n}")
        if (sig >> n) % 2:
            return CohClass(field, frozenset({(n, 0)}))
        return CohClass.zero(field)
    # finite base: degree 1 is the signed discriminant, degree >= 2 vanishes
    parity, disc = q.base
    if n == 1:
        if parity:
            raise MembershipError("odd-dimensional class is not in I")
        if disc:
            return CohClass(field, frozenset({(1, 0)}))
        return CohClass.zero(field)
    if not q.is_zero:
        raise MembershipError(f"nontrivial class over a finite base is not in I^{n}")
    return CohClass.zero(field)


def render_coh(x: CohClass) -> str:
    """Sorted cup-products of degree-1 symbols, e.g. '(-1)^2.(t1)'."""
    if x.is_zero:
        return "0"
    field = x.field
    rendered = []
    for b, v in sorted(x.monos, key=lambda mv: (mv[0] + mv[1].bit_count(), mv)):
        factors = []
        if b:
            gen = "u" if field.kind == FINITE_ODD else "-1"
            factors.append(f"({gen})" if b == 1 else f"({gen})^{b}")
        for i, name in enumerate(field.vars):
            if v >> i & 1:
                factors.append(f"({name})")
        rendered.append(".".join(factors) if factors else "1")
    return " + ".join(rendered)


@dataclass(frozen=True)
class CohRing:
    """Coefficient adapter for series with cohomology coefficients."""

    field: FieldDescriptor

    @property
    def zero(self) -> CohClass:
        return CohClass.zero(self.field)

    @property
    def one(self) -> CohClass:
        return CohClass.one(self.field)

    def from_int(self, n: int) -> CohClass:
        return self.one if n % 2 else self.zero

    @staticmethod
    def is_zero(x: CohClass) -> bool:
        return not x.monos
