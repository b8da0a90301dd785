"""Degree reduction pipeline: k-body spin energy down to a quadratic one.

The chain runs in four stages.  The spin energy is mapped to the boolean
domain with s = 1 - 2q, every designated variable pair q_i*q_j is replaced by
its ancilla q_k together with an AND-consistency penalty, and the resulting
quadratic is mapped back with q = (1 - s)/2.

Note on the transform pair: s = 1 - 2q and q = (1 - s)/2 are the mutually
inverse maps between {0,1} and {+1,-1} used throughout; they reproduce the
reference expansions exactly.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

from .poly import Domain, Polynomial
from .problems import HSearch, Layout, OrthoSet, ProblemSpec, build_ek_s, layout_for


class NonIntegralCoefficientError(ValueError):
    """A pipeline output came out with fractional coefficients, which signals
    a bug: the final quadratic energies are always integral."""


@dataclass(frozen=True)
class Delta:
    """Penalty weight for the AND-consistency term."""

    value: int

    def __post_init__(self):
        if self.value <= 0:
            raise ValueError(f"delta must be positive, got {self.value}")


def default_delta(spec: ProblemSpec) -> Delta:
    """Per-family default penalty weight (always user-overridable)."""
    m2 = spec.order * spec.order
    if isinstance(spec, HSearch):
        return Delta(4 * m2)
    if isinstance(spec, OrthoSet):
        return Delta(5 * m2)
    return Delta(2 * m2)


def s_to_q(p: Polynomial) -> Polynomial:
    """Map a spin polynomial to the boolean domain via s = 1 - 2q."""
    if p.domain is not Domain.SPIN:
        raise ValueError("s_to_q expects a spin-domain polynomial")
    out = Polynomial(Domain.BOOLEAN, p.terms)
    for v in p.variables():
        out = out.substitute_affine(v, 1, -2, v)
    return out


def q_to_s(p: Polynomial) -> Polynomial:
    """Map a boolean polynomial to the spin domain via q = (1 - s)/2."""
    if p.domain is not Domain.BOOLEAN:
        raise ValueError("q_to_s expects a boolean-domain polynomial")
    half = Fraction(1, 2)
    out = Polynomial(Domain.SPIN, p.terms)
    for v in p.variables():
        out = out.substitute_affine(v, half, -half, v)
    return out


def h_and(qi: int, qj: int, qk: int, delta: Delta | int) -> Polynomial:
    """AND-consistency penalty delta*(3*qk + qi*qj - 2*qi*qk - 2*qj*qk).

    Zero exactly when qk = qi AND qj; at least delta on the four
    inconsistent assignments.
    """
    if len({qi, qj, qk}) != 3:
        raise ValueError(f"penalty variables must be distinct: {qi}, {qj}, {qk}")
    d = Fraction(delta.value if isinstance(delta, Delta) else delta)
    return Polynomial(
        Domain.BOOLEAN,
        {
            (qk,): 3 * d,
            tuple(sorted((qi, qj))): d,
            tuple(sorted((qi, qk))): -2 * d,
            tuple(sorted((qj, qk))): -2 * d,
        },
    )


def boolean_reduce(p: Polynomial, layout: Layout, delta: Delta) -> Polynomial:
    """Reduce a boolean polynomial over the layout's main block to degree two.

    For every (column pair, row) ancilla in canonical order, all occurrences
    of the designated main-variable pair -- including pure quadratic ones --
    are replaced by the ancilla, and one penalty term is added per ancilla.
    """
    if p.domain is not Domain.BOOLEAN:
        raise ValueError("boolean_reduce expects a boolean-domain polynomial")
    if any(v >= layout.main_count for v in p.variables()):
        raise ValueError("polynomial uses variables outside the layout's main block")
    m2 = layout.order * layout.order
    if delta.value <= m2:
        warnings.warn(
            f"delta={delta.value} does not exceed the maximum substituted energy "
            f"M^2={m2}; ground states may not be preserved",
            UserWarning,
            stacklevel=2,
        )
    for vi, vj, vk in layout.ancilla_triples():
        p = p.substitute_pair(vi, vj, vk) + h_and(vi, vj, vk, delta)
    if p.degree() > 2:
        raise RuntimeError(
            f"degree {p.degree()} remains after all substitutions; layout is insufficient"
        )
    return p


@dataclass(frozen=True)
class PipelineResult:
    """All four stages of one reduction run."""

    ek_s: Polynomial
    ek_q: Polynomial
    e2_q: Polynomial
    e2_s: Polynomial
    layout: Layout
    delta: Delta

    def term_counts(self) -> tuple[int, int, int, int]:
        return (
            self.ek_s.stats().term_count,
            self.ek_q.stats().term_count,
            self.e2_q.stats().term_count,
            self.e2_s.stats().term_count,
        )


def run_pipeline(spec: ProblemSpec, delta: Delta | int | None = None) -> PipelineResult:
    """Build the k-body energy for ``spec`` and reduce it to a quadratic spin
    polynomial, recording every intermediate stage."""
    if delta is None:
        delta = default_delta(spec)
    elif isinstance(delta, int):
        delta = Delta(delta)
    layout = layout_for(spec)
    ek_s = build_ek_s(spec)
    ek_q = s_to_q(ek_s)
    e2_q = boolean_reduce(ek_q, layout, delta)
    e2_s = q_to_s(e2_q)
    for mono, coeff in e2_s.terms.items():
        if coeff.denominator != 1:
            raise NonIntegralCoefficientError(
                f"coefficient {coeff} of monomial {mono} in the final quadratic"
            )
    return PipelineResult(ek_s=ek_s, ek_q=ek_q, e2_q=e2_q, e2_s=e2_s, layout=layout, delta=delta)
