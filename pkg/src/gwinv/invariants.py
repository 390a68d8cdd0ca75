"""Symbolic algebra of invariants of the fundamental-ideal filtration.

An invariant is a finitely supported combination of the f- or g-family
generators at a fixed level n, with coefficients in the universal scalar
ring generated by eps = {-1}: plain integers in Witt mode (eps is
identified with 2 there) and F2-polynomials in eps in cohomology mode.
The shifting, similitude, restriction and descent operators act on these
coefficient sequences by closed formulas; ``evaluate`` sends everything to
a concrete value on a Witt class.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .cohomology import minus_one_power
from .divided import (
    InvariantTarget,
    eval_f_all,
    g_transition_terms,
    int_times,
    unit_value,
    zero_value,
)
from .series import ext_binom, multinomial_C
from .witt import MembershipError, WittClass, is_in_In


class InvariantSyntaxError(ValueError):
    """An invariant literal failed to parse."""


@dataclass(frozen=True)
class F2Poly:
    """Polynomial in eps over F2, packed into the bits of an int."""

    bits: int = 0

    def __add__(self, other: "F2Poly") -> "F2Poly":
        return F2Poly(self.bits ^ other.bits)

    __sub__ = __add__

    def __neg__(self) -> "F2Poly":
        return self

    def __mul__(self, other: "F2Poly") -> "F2Poly":
        a, b, out = self.bits, other.bits, 0
        while a:
            if a & 1:
                out ^= b
            a >>= 1
            b <<= 1
        return F2Poly(out)

    @property
    def is_zero(self) -> bool:
        return self.bits == 0

    def __str__(self) -> str:
        if self.bits == 0:
            return "0"
        parts = []
        for j in range(self.bits.bit_length()):
            if self.bits >> j & 1:
                parts.append("1" if j == 0 else ("eps" if j == 1 else f"eps^{j}"))
        return "+".join(parts)


class _IntOps:
    """Universal coefficients in Witt mode: integers, with eps = 2."""

    zero = 0
    one = 1

    @staticmethod
    def from_int(c: int) -> int:
        return c

    @staticmethod
    def eps_pow(j: int) -> int:
        return 1 << j

    @staticmethod
    def is_zero(c: int) -> bool:
        return c == 0

    @staticmethod
    def render(c: int) -> str:
        return str(c)


class _F2Ops:
    """Universal coefficients in cohomology mode: F2[eps]."""

    zero = F2Poly(0)
    one = F2Poly(1)

    @staticmethod
    def from_int(c: int) -> F2Poly:
        return F2Poly(c & 1)

    @staticmethod
    def eps_pow(j: int) -> F2Poly:
        return F2Poly(1 << j)

    @staticmethod
    def is_zero(c: F2Poly) -> bool:
        return c.is_zero

    @staticmethod
    def render(c: F2Poly) -> str:
        return str(c)


def coeff_ops(mode: str):
    if mode == "W":
        return _IntOps
    if mode == "H":
        return _F2Ops
    raise ValueError("mode must be 'W' or 'H'")


class SymbolicInvariant:
    """Finitely supported coefficient sequence in the f- or g-basis."""

    __slots__ = ("n", "mode", "basis", "coeffs")

    def __init__(self, n: int, mode: str, basis: str, coeffs: dict | None = None):
        if n < 1:
            raise ValueError("the level n must be >= 1")
        if basis not in ("f", "g"):
            raise ValueError("basis must be 'f' or 'g'")
        ops = coeff_ops(mode)
        self.n = n
        self.mode = mode
        self.basis = basis
        self.coeffs = {
            d: c for d, c in (coeffs or {}).items() if not ops.is_zero(c)
        }

    @classmethod
    def generator(cls, n: int, mode: str, basis: str, d: int) -> "SymbolicInvariant":
        return cls(n, mode, basis, {d: coeff_ops(mode).one})

    @classmethod
    def zero(cls, n: int, mode: str, basis: str = "f") -> "SymbolicInvariant":
        return cls(n, mode, basis, {})

    @property
    def ops(self):
        return coeff_ops(self.mode)

    @property
    def support(self) -> list[int]:
        return sorted(self.coeffs)

    def _check(self, other: "SymbolicInvariant") -> None:
        if (self.n, self.mode) != (other.n, other.mode):
            raise ValueError("invariants at different levels or modes")

    def __add__(self, other: "SymbolicInvariant") -> "SymbolicInvariant":
        self._check(other)
        a, b = self, other
        if a.basis != b.basis:
            b = to_basis(b, a.basis)
        out = dict(a.coeffs)
        for d, c in b.coeffs.items():
            out[d] = out.get(d, a.ops.zero) + c
        return SymbolicInvariant(a.n, a.mode, a.basis, out)

    def __sub__(self, other: "SymbolicInvariant") -> "SymbolicInvariant":
        return self + (-other)

    def __neg__(self) -> "SymbolicInvariant":
        return SymbolicInvariant(
            self.n, self.mode, self.basis, {d: -c for d, c in self.coeffs.items()}
        )

    def scale(self, c) -> "SymbolicInvariant":
        return SymbolicInvariant(
            self.n, self.mode, self.basis, {d: c * v for d, v in self.coeffs.items()}
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymbolicInvariant):
            return NotImplemented
        if (self.n, self.mode) != (other.n, other.mode):
            return False
        return to_basis(self, "f").coeffs == to_basis(other, "f").coeffs

    __hash__ = None

    def __str__(self) -> str:
        return render_invariant(self)

    def __repr__(self) -> str:
        return (
            f"SymbolicInvariant(n={self.n}, mode={self.mode!r}, "
            f"basis={self.basis!r}, coeffs={self.coeffs!r})"
        )


def f_transition_terms(n: int, d: int) -> list[tuple[int, int, int]]:
    """The f-to-g rebasing of one f generator, as triples
    (integer coefficient, eps exponent, g degree)."""
    if d == 0:
        return [(1, 0, 0)]
    if d == 1:
        # f^1 and g^1 are both the fundamental invariant; the closed-form
        # coefficient for this cell is binom(-1, -1), which the Pascal
        # extension sends to 0, so the cell is pinned by hand.
        return [(1, 0, 1)]
    out = []
    for k in range(1, d + 1):
        c = ext_binom(d - (k + 1) // 2 - 1, k // 2 - 1)
        if c == 0:
            continue
        out.append((c if (d - k) % 2 == 0 else -c, n * (d - k), k))
    return out


def to_basis(alpha: SymbolicInvariant, basis: str) -> SymbolicInvariant:
    if alpha.basis == basis:
        return alpha
    ops = alpha.ops
    terms = g_transition_terms if basis == "f" else f_transition_terms
    out: dict = {}
    for d, coeff in alpha.coeffs.items():
        for c, j, k in terms(alpha.n, d):
            add = coeff * ops.from_int(c) * ops.eps_pow(j)
            out[k] = out.get(k, ops.zero) + add
    return SymbolicInvariant(alpha.n, alpha.mode, basis, out)


def change_basis(alpha: SymbolicInvariant) -> SymbolicInvariant:
    """Toggle between the f- and g-basis representations."""
    return to_basis(alpha, "g" if alpha.basis == "f" else "f")


def is_normalized(alpha: SymbolicInvariant) -> bool:
    """Normalized means vanishing at 0: no constant component."""
    return 0 not in to_basis(alpha, "g").coeffs


def phi(alpha: SymbolicInvariant, sign: int) -> SymbolicInvariant:
    """The shifting operator measuring addition (+1) or subtraction (-1)
    of an n-fold Pfister form, acting in the representation's own basis."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    ops = alpha.ops
    n = alpha.n
    out: dict = {}

    def acc(d, c):
        if not ops.is_zero(c):
            out[d] = out.get(d, ops.zero) + c

    for d, coeff in alpha.coeffs.items():
        if d == 0:
            continue
        if alpha.basis == "f":
            if sign == 1:
                acc(d - 1, coeff)
            else:
                for k in range(d):
                    c = coeff * ops.eps_pow(n * (d - k - 1))
                    acc(k, c if (d - k - 1) % 2 == 0 else -c)
        else:
            if sign == 1:
                if d % 2 == 0:
                    acc(d - 1, coeff)
                else:
                    acc(d - 1, coeff)
                    if d >= 2:
                        acc(d - 2, coeff * ops.eps_pow(n))
            else:
                if d % 2 == 1:
                    acc(d - 1, coeff)
                else:
                    acc(d - 1, coeff)
                    acc(d - 2, -(coeff * ops.eps_pow(n)))
    return SymbolicInvariant(alpha.n, alpha.mode, alpha.basis, out)


def shift(alpha: SymbolicInvariant, plus: int = 0, minus: int = 0) -> SymbolicInvariant:
    """Iterated shifting; plus and minus applications commute."""
    out = alpha
    for _ in range(plus):
        out = phi(out, 1)
    for _ in range(minus):
        out = phi(out, -1)
    return out


def coeff_at_zero(alpha: SymbolicInvariant):
    """The value of the invariant at q = 0, as a universal coefficient."""
    return alpha.coeffs.get(0, alpha.ops.zero)


def extract_coeffs(alpha: SymbolicInvariant, d_max: int) -> list:
    """Classification read-out: the g-basis coefficients recovered by
    evaluating iterated shifts at 0."""
    out = []
    for d in range(d_max + 1):
        m = d // 2
        shifted = shift(alpha, plus=m + d % 2, minus=m)
        out.append(coeff_at_zero(shifted))
    return out


def product(
    alpha: SymbolicInvariant, beta: SymbolicInvariant
) -> SymbolicInvariant:
    """Product of invariants, through the trinomial f-basis formula; the
    result is returned in the f-basis."""
    alpha._check(beta)
    a, b = to_basis(alpha, "f"), to_basis(beta, "f")
    ops = a.ops
    n = a.n
    out: dict = {}
    for s, cs in a.coeffs.items():
        for t, ct in b.coeffs.items():
            base = cs * ct
            for d in range(max(s, t), s + t + 1):
                c = multinomial_C(d, d - s, d - t)
                add = base * ops.from_int(c) * ops.eps_pow(n * (s + t - d))
                out[d] = out.get(d, ops.zero) + add
    return SymbolicInvariant(a.n, a.mode, "f", out)


def psi_tilde(alpha: SymbolicInvariant) -> SymbolicInvariant:
    """The similitude operator: the coefficient of {lambda} in the value on
    <lambda> q.  Acts diagonally on the g-basis; returned in the g-basis."""
    g = to_basis(alpha, "g")
    ops = g.ops
    delta = 1 if g.mode == "W" else 0
    out: dict = {}
    for d, coeff in g.coeffs.items():
        if d == 0:
            continue
        if d % 2 == 1:
            if delta:
                out[d] = out.get(d, ops.zero) + (-coeff)
        else:
            c = coeff * ops.eps_pow(g.n - 1)
            out[d - 1] = out.get(d - 1, ops.zero) + c
    return SymbolicInvariant(g.n, g.mode, "g", out)


def psi_tilde_closed_f(alpha: SymbolicInvariant) -> SymbolicInvariant:
    """Closed f-basis form of the similitude operator, kept as an
    independent cross-check of ``psi_tilde``."""
    f = to_basis(alpha, "f")
    ops = f.ops
    n = f.n
    delta = 1 if f.mode == "W" else 0
    out: dict = {}

    def acc(d, c):
        if not ops.is_zero(c):
            out[d] = out.get(d, ops.zero) + c

    for d, coeff in f.coeffs.items():
        if d == 0:
            continue
        for k in range(1, d):
            c = (
                coeff
                * ops.from_int(ext_binom(d - 1, k - 1))
                * ops.eps_pow(n * (d - k) - 1)
            )
            acc(k, c if d % 2 == 0 else -c)
        if d % 2 == 1 and delta:
            acc(d, -coeff)
    return SymbolicInvariant(f.n, f.mode, "f", out)


def restrict(alpha: SymbolicInvariant) -> SymbolicInvariant:
    """Re-express an invariant of level n as one of level n + 1 (its
    restriction along the inclusion of the filtration)."""
    f = to_basis(alpha, "f")
    ops = f.ops
    n = f.n
    out: dict = {}
    for d, coeff in f.coeffs.items():
        if d == 0:
            out[0] = out.get(0, ops.zero) + coeff
            continue
        if f.mode == "W":
            for k in range((d + 1) // 2, d + 1):
                c = ext_binom(k, d - k)
                if c == 0:
                    continue
                add = coeff * ops.from_int(c) * ops.eps_pow((d - k) * (n - 1))
                out[k] = out.get(k, ops.zero) + add
        else:
            if d % 2:
                continue
            m = d // 2
            add = coeff * ops.eps_pow(m * (n - 1))
            out[m] = out.get(m, ops.zero) + add
    return SymbolicInvariant(n + 1, f.mode, "f", out)


def omega_t(alpha: SymbolicInvariant, t: int) -> SymbolicInvariant:
    """Descent along a t-fold Pfister factor: level n to level n - t, with
    constants untouched."""
    if not 0 <= t < alpha.n:
        raise ValueError("need 0 <= t < n for descent")
    f = to_basis(alpha, "f")
    if t == 0:
        return f
    ops = f.ops
    out: dict = {}
    for d, coeff in f.coeffs.items():
        if d == 0:
            out[0] = out.get(0, ops.zero) + coeff
        else:
            c = coeff * ops.eps_pow(t * (d - 1))
            out[d] = out.get(d, ops.zero) + c
    return SymbolicInvariant(f.n - t, f.mode, "f", out)


def coeff_value(coeff, mode: str, field, target: InvariantTarget):
    """Image of a universal coefficient in a concrete value ring."""
    if mode == "W":
        return unit_value(field, target).int_mul(coeff)
    out = zero_value(field, target)
    for j in range(coeff.bits.bit_length()):
        if coeff.bits >> j & 1:
            out = out + minus_one_power(field, j)
    return out


def evaluate(alpha: SymbolicInvariant, q: WittClass):
    """Value of a symbolic invariant on a concrete Witt class in I^n."""
    target = InvariantTarget(alpha.mode)
    if not is_in_In(q, alpha.n):
        raise MembershipError(f"class is not in I^{alpha.n}")
    f = to_basis(alpha, "f")
    field = q.field
    if not f.coeffs:
        return zero_value(field, target)
    d_max = max(f.coeffs)
    fvals = eval_f_all(f.n, q, target, d_max)
    out = zero_value(field, target)
    for d, coeff in f.coeffs.items():
        if alpha.mode == "W":
            out = out + int_times(fvals[d], coeff, target)
        else:
            for j in range(coeff.bits.bit_length()):
                if coeff.bits >> j & 1:
                    out = out + minus_one_power(field, j) * fvals[d]
    return out


# ---------------------------------------------------------------------------
# invariant literals:  sum of '*'-separated factors, each an integer, 'eps',
# 'eps^k', 'f[n,d]' or 'g[n,d]'; mixed-basis input is normalized to one basis.

_GEN_RE = re.compile(r"^([fg])\[(\d+),(\d+)\]$")
_EPS_RE = re.compile(r"^eps(?:\^(\d+))?$")


def parse_invariant(text: str, mode: str) -> SymbolicInvariant:
    ops = coeff_ops(mode)
    terms = []
    for chunk in _split_sum(text):
        sign, body = chunk
        coeff = ops.from_int(sign)
        gens: list[tuple[str, int, int]] = []
        for factor in body.split("*"):
            factor = factor.strip()
            if not factor:
                raise InvariantSyntaxError(f"empty factor in {body!r}")
            m = _GEN_RE.match(factor)
            if m:
                gens.append((m.group(1), int(m.group(2)), int(m.group(3))))
                continue
            m = _EPS_RE.match(factor)
            if m:
                coeff = coeff * ops.eps_pow(int(m.group(1) or 1))
                continue
            try:
                coeff = coeff * ops.from_int(int(factor))
            except ValueError:
                raise InvariantSyntaxError(f"bad factor {factor!r}") from None
        terms.append((coeff, gens))
    levels = {n for _, gens in terms for _, n, _ in gens}
    if not levels:
        raise InvariantSyntaxError("an invariant needs at least one f[...] or g[...]")
    if len(levels) > 1:
        raise InvariantSyntaxError(f"mixed levels {sorted(levels)} in one invariant")
    n = levels.pop()
    bases = {b for _, gens in terms for b, _, _ in gens}
    basis = "g" if bases == {"g"} else "f"
    total = SymbolicInvariant.zero(n, mode, basis)
    for coeff, gens in terms:
        if not gens:
            term = SymbolicInvariant(n, mode, basis, {0: coeff})
        else:
            term = SymbolicInvariant.generator(n, mode, gens[0][0], gens[0][2])
            for b, _, d in gens[1:]:
                term = product(term, SymbolicInvariant.generator(n, mode, b, d))
            term = to_basis(term, basis).scale(coeff)
        total = total + term
    return total


def _split_sum(text: str) -> list[tuple[int, str]]:
    text = text.strip()
    if not text:
        raise InvariantSyntaxError("empty invariant literal")
    out = []
    sign = 1
    if text[0] in "+-":
        sign = -1 if text[0] == "-" else 1
        text = text[1:]
    pos = 0
    start = 0
    while pos <= len(text):
        if pos == len(text) or text[pos] in "+-":
            body = text[start:pos].strip()
            if not body:
                raise InvariantSyntaxError("empty term in invariant literal")
            out.append((sign, body))
            if pos < len(text):
                sign = -1 if text[pos] == "-" else 1
            start = pos + 1
        pos += 1
    return out


def render_invariant(alpha: SymbolicInvariant) -> str:
    ops = alpha.ops
    if not alpha.coeffs:
        return "0"
    parts = []
    for d in alpha.support:
        c = ops.render(alpha.coeffs[d])
        gen = f"{alpha.basis}[{alpha.n},{d}]"
        parts.append(gen if c == "1" else f"({c})*{gen}")
    return " + ".join(parts)
