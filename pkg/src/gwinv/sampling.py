"""Deterministic sample generators for the verification suites.

Everything takes an explicit ``random.Random``; no ambient randomness.
"""

from __future__ import annotations

from random import Random

from .fields import FieldDescriptor, SquareClass, enumerate_sc, parse_field
from .invariants import F2Poly, SymbolicInvariant
from .witt import GwElement, WittClass, pfister, witt_canonical, witt_zero


BASE_HEADS = ("C", "R", "F3", "F5")


def standard_fields(max_depth: int = 2, heads=BASE_HEADS) -> list[FieldDescriptor]:
    """The reference family: each base kind with towers up to max_depth."""
    out = []
    for head in heads:
        for depth in range(max_depth + 1):
            tower = "".join(f"((t{i + 1}))" for i in range(depth))
            out.append(parse_field(head + tower))
    return out


def rand_sc(rng: Random, field: FieldDescriptor) -> SquareClass:
    return SquareClass(field, rng.randrange(1 << field.num_gens))


def rand_unit_sc(rng: Random, field: FieldDescriptor) -> SquareClass:
    """A class not involving the top variable (a unit of the valuation)."""
    mask = rng.randrange(1 << field.num_gens)
    return SquareClass(field, mask & ~field.top_bit)


def rand_pfister_slots(
    rng: Random, field: FieldDescriptor, n: int, unit: bool = False
) -> tuple[SquareClass, ...]:
    pick = rand_unit_sc if unit else rand_sc
    return tuple(pick(rng, field) for _ in range(n))


def rand_in_In_data(
    rng: Random,
    field: FieldDescriptor,
    n: int,
    pos: int,
    neg: int,
    unit: bool = False,
) -> tuple[WittClass, list[tuple[int, tuple[SquareClass, ...]]]]:
    """A random class of I^n as a signed sum of n-fold Pfister classes,
    together with the summands used to build it."""
    data = []
    q = witt_zero(field)
    for _ in range(pos):
        slots = rand_pfister_slots(rng, field, n, unit)
        data.append((1, slots))
        q = q + witt_canonical(pfister(slots))
    for _ in range(neg):
        slots = rand_pfister_slots(rng, field, n, unit)
        data.append((-1, slots))
        q = q - witt_canonical(pfister(slots))
    return q, data

def rand_in_In(
    rng: Random, field: FieldDescriptor, n: int, max_terms: int = 2
) -> WittClass:
    pos = rng.randint(0, max_terms)
    neg = rng.randint(0, max_terms - pos) if pos < max_terms else 0
    return rand_in_In_data(rng, field, n, pos, neg)[0]


def rand_gw(
    rng: Random, field: FieldDescriptor, dim: int, signed: bool = True
) -> GwElement:
    terms: dict[int, int] = {}
    for _ in range(dim):
        m = rng.randrange(1 << field.num_gens)
        c = rng.choice((1, -1)) if signed else 1
        terms[m] = terms.get(m, 0) + c
    return GwElement(field, terms)


def rand_diag(rng: Random, field: FieldDescriptor, dim: int) -> GwElement:
    return GwElement.diag(*(rand_sc(rng, field) for _ in range(dim)))


def rand_coeff(rng: Random, mode: str):
    if mode == "W":
        return rng.randint(-4, 4)
    return F2Poly(rng.randrange(16))


def rand_symbolic(
    rng: Random,
    n: int,
    mode: str,
    basis: str,
    d_max: int,
    support: int,
) -> SymbolicInvariant:
    coeffs = {}
    for _ in range(support):
        coeffs[rng.randint(0, d_max)] = rand_coeff(rng, mode)
    return SymbolicInvariant(n, mode, basis, coeffs)


def small_fields_exhaustive(max_depth: int = 2) -> list[FieldDescriptor]:
    """Fields small enough for exhaustive square-class enumeration."""
    return [F for F in standard_fields(max_depth) if len(enumerate_sc(F)) <= 32]
