"""Exact multilinear polynomials over indexed binary variables.

A polynomial is a map from canonical monomials (strictly increasing tuples of
variable indices) to rational coefficients, tagged with the domain its
variables live in.  The domain fixes the exponent-reduction rule applied
during multiplication and substitution:

  spin     x in {-1, +1}   x*x = 1   (a repeated variable cancels)
  boolean  x in {0, 1}     x*x = x   (a repeated variable collapses)

All arithmetic is exact (``fractions.Fraction``); results are always
canonical, with zero coefficients removed and no variable repeated inside a
monomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence, Union

Monomial = tuple[int, ...]
Rational = Union[int, Fraction]


class Domain(Enum):
    SPIN = "spin"
    BOOLEAN = "boolean"

    @property
    def letter(self) -> str:
        return "s" if self is Domain.SPIN else "q"

    @property
    def values(self) -> tuple[int, int]:
        return (-1, 1) if self is Domain.SPIN else (0, 1)


class DomainMismatchError(ValueError):
    """Raised when combining polynomials over different domains."""


class AncillaReuseError(ValueError):
    """Raised when a pair substitution targets a variable already present."""


@dataclass(frozen=True)
class PolyStats:
    term_count: int
    degree: int
    constant: Fraction
    max_abs_coefficient: Fraction  # over non-constant terms only


def _canonical_monomial(mono: Iterable[int]) -> Monomial:
    mono = tuple(mono)
    if any(not isinstance(v, int) or v < 0 for v in mono):
        raise ValueError(f"variable indices must be non-negative integers: {mono}")
    if any(a >= b for a, b in zip(mono, mono[1:])):
        raise ValueError(f"monomial must be strictly increasing: {mono}")
    return mono


def _merge_monomials(a: Monomial, b: Monomial, domain: Domain) -> Monomial:
    # spin: x*x = 1 drops repeated variables; boolean: x*x = x keeps one copy
    if domain is Domain.SPIN:
        merged = set(a) ^ set(b)
    else:
        merged = set(a) | set(b)
    return tuple(sorted(merged))


class Polynomial:
    """Immutable multilinear polynomial with exact rational coefficients."""

    __slots__ = ("domain", "_terms")

    def __init__(self, domain: Domain, terms: Mapping[Monomial, Rational] | None = None):
        if not isinstance(domain, Domain):
            raise TypeError(f"domain must be a Domain, got {domain!r}")
        canonical: dict[Monomial, Fraction] = {}
        for mono, coeff in (terms or {}).items():
            coeff = Fraction(coeff)
            if coeff:
                canonical[_canonical_monomial(mono)] = coeff
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "_terms", canonical)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, domain: Domain) -> "Polynomial":
        return cls(domain)

    @classmethod
    def constant(cls, domain: Domain, value: Rational) -> "Polynomial":
        return cls(domain, {(): Fraction(value)})

    @classmethod
    def variable(cls, domain: Domain, index: int) -> "Polynomial":
        return cls(domain, {(index,): Fraction(1)})

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return MappingProxyType(self._terms)

    def coefficient(self, mono: Iterable[int]) -> Fraction:
        return self._terms.get(tuple(mono), Fraction(0))

    def constant_term(self) -> Fraction:
        return self._terms.get((), Fraction(0))

    def variables(self) -> tuple[int, ...]:
        return tuple(sorted({v for mono in self._terms for v in mono}))

    def degree(self) -> int:
        return max((len(mono) for mono in self._terms), default=0)

    def is_zero(self) -> bool:
        return not self._terms

    def stats(self) -> PolyStats:
        nonconst = [abs(c) for m, c in self._terms.items() if m]
        return PolyStats(
            term_count=len(self._terms),
            degree=self.degree(),
            constant=self.constant_term(),
            max_abs_coefficient=max(nonconst, default=Fraction(0)),
        )

    # -- arithmetic ---------------------------------------------------------

    def _check_domain(self, other: "Polynomial") -> None:
        if self.domain is not other.domain:
            raise DomainMismatchError(
                f"cannot combine {self.domain.value} and {other.domain.value} polynomials"
            )

    def __add__(self, other: "Polynomial | Rational") -> "Polynomial":
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.domain, other)
        self._check_domain(other)
        out = dict(self._terms)
        for mono, coeff in other._terms.items():
            new = out.get(mono, Fraction(0)) + coeff
            if new:
                out[mono] = new
            else:
                out.pop(mono, None)
        return Polynomial(self.domain, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.domain, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "Polynomial | Rational") -> "Polynomial":
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.domain, other)
        return self + (-other)

    def __mul__(self, other: "Polynomial | Rational") -> "Polynomial":
        if not isinstance(other, Polynomial):
            scalar = Fraction(other)
            return Polynomial(self.domain, {m: c * scalar for m, c in self._terms.items()})
        self._check_domain(other)
        out: dict[Monomial, Fraction] = {}
        for mono_a, coeff_a in self._terms.items():
            for mono_b, coeff_b in other._terms.items():
                mono = _merge_monomials(mono_a, mono_b, self.domain)
                new = out.get(mono, Fraction(0)) + coeff_a * coeff_b
                if new:
                    out[mono] = new
                else:
                    out.pop(mono, None)
        return Polynomial(self.domain, out)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.domain is other.domain and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.domain, frozenset(self._terms.items())))

    # -- evaluation ---------------------------------------------------------

    def evaluate(self, assignment: Mapping[int, Rational] | Sequence[Rational]) -> Fraction:
        """Evaluate exactly at a point; every variable must be assigned a
        value from the domain's value set."""
        allowed = self.domain.values
        cache: dict[int, Fraction] = {}

        def value(v: int) -> Fraction:
            if v in cache:
                return cache[v]
            try:
                raw = assignment[v]
            except (KeyError, IndexError):
                raise ValueError(f"no value assigned to variable {v}") from None
            val = Fraction(raw)
            if val not in allowed:
                raise ValueError(
                    f"value {raw!r} for variable {v} outside {self.domain.value} domain {allowed}"
                )
            cache[v] = val
            return val

        total = Fraction(0)
        for mono, coeff in self._terms.items():
            term = coeff
            for v in mono:
                term *= value(v)
            total += term
        return total

    # -- substitutions ------------------------------------------------------

    def substitute_affine(
        self,
        var: int,
        c0: Rational,
        c1: Rational,
        new_var: int,
        domain: Domain | None = None,
    ) -> "Polynomial":
        """Replace ``var`` by ``c0 + c1 * new_var``, re-expanding and reducing
        exponents in ``domain`` (defaults to the polynomial's own domain).

        The caller declares the result domain because this operation carries
        polynomials across the spin/boolean boundary.
        """
        domain = domain or self.domain
        c0, c1 = Fraction(c0), Fraction(c1)
        out: dict[Monomial, Fraction] = {}

        def accumulate(mono: Monomial, coeff: Fraction) -> None:
            new = out.get(mono, Fraction(0)) + coeff
            if new:
                out[mono] = new
            else:
                out.pop(mono, None)

        for mono, coeff in self._terms.items():
            if var not in mono:
                accumulate(mono, coeff)
                continue
            rest = tuple(v for v in mono if v != var)
            if c0:
                accumulate(rest, coeff * c0)
            if c1:
                accumulate(_merge_monomials(rest, (new_var,), domain), coeff * c1)
        return Polynomial(domain, out)

    def substitute_pair(self, vi: int, vj: int, vk: int) -> "Polynomial":
        """Replace the product ``vi*vj`` by ``vk`` in every monomial that
        contains both variables (boolean domain only)."""
        if self.domain is not Domain.BOOLEAN:
            raise DomainMismatchError("pair substitution is defined on boolean polynomials")
        if len({vi, vj, vk}) != 3:
            raise ValueError(f"substitution variables must be distinct: {vi}, {vj}, {vk}")
        if any(vk in mono for mono in self._terms):
            raise AncillaReuseError(f"ancilla q{vk} already occurs in the polynomial")
        out: dict[Monomial, Fraction] = {}
        for mono, coeff in self._terms.items():
            if vi in mono and vj in mono:
                mono = tuple(sorted((set(mono) - {vi, vj}) | {vk}))
            new = out.get(mono, Fraction(0)) + coeff
            if new:
                out[mono] = new
            else:
                out.pop(mono, None)
        return Polynomial(self.domain, out)

    # -- rendering ----------------------------------------------------------

    def render(self) -> str:
        """Deterministic text form ("2 + 2*s0*s1") for diffs and logs; terms
        are sorted by degree then variable indices."""
        if not self._terms:
            return "0"
        letter = self.domain.letter
        parts: list[str] = []
        for mono in sorted(self._terms, key=lambda m: (len(m), m)):
            coeff = self._terms[mono]
            body = "*".join(f"{letter}{v}" for v in mono)
            if not mono:
                text = str(abs(coeff))
            elif abs(coeff) == 1:
                text = body
            else:
                text = f"{abs(coeff)}*{body}"
            if not parts:
                parts.append(text if coeff > 0 else f"-{text}")
            else:
                parts.append(f"+ {text}" if coeff > 0 else f"- {text}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial({self.domain.value}, {self.render()})"
