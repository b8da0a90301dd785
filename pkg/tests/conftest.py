"""Shared fixtures: frozen expected expansions and reference problem data."""

from __future__ import annotations

import json
import random
from fractions import Fraction
from pathlib import Path

import pytest

from hadsearch.poly import Domain, Polynomial
from hadsearch.problems import Completion

DATA = Path(__file__).parent / "data"

# An order-12 Hadamard matrix with its last column removed (columns as sign
# strings, first column all ones) and the missing column that completes it.
COMPLETION12_KNOWN = (
    "++++++++++++",
    "+-+-+++---+-",
    "+--+-+++---+",
    "++--+-+++---",
    "+-+--+-+++--",
    "+--+--+-+++-",
    "+---+--+-+++",
    "++---+--+-++",
    "++++---+--+-",
    "+++---+--+-+",
    "++-+++---+--",
)
COMPLETION12_MISSING = "+-+++---+--+"


def signs_to_column(text: str) -> tuple[int, ...]:
    return tuple(1 if c == "+" else -1 for c in text)


def completion12_spec() -> Completion:
    return Completion(12, tuple(signs_to_column(c) for c in COMPLETION12_KNOWN))


def load_expected(name: str, domain: Domain) -> Polynomial:
    """Load a frozen term-map fixture as an exact polynomial."""
    doc = json.loads((DATA / f"{name}.json").read_text())
    terms = {
        tuple(int(v) for v in key.split(",")) if key else (): Fraction(value)
        for key, value in doc["terms"].items()
    }
    return Polynomial(domain, terms)


def random_polynomial(
    rng: random.Random,
    domain: Domain,
    num_vars: int = 5,
    max_terms: int = 6,
    max_degree: int = 3,
    fractional: bool = False,
) -> Polynomial:
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        degree = rng.randint(0, max_degree)
        mono = tuple(sorted(rng.sample(range(num_vars), degree)))
        coeff = Fraction(rng.randint(-4, 4))
        if fractional and rng.random() < 0.5:
            coeff += Fraction(rng.choice([-1, 1]), rng.choice([2, 4]))
        terms[mono] = terms.get(mono, Fraction(0)) + coeff
    return Polynomial(domain, terms)


def random_assignment(rng: random.Random, domain: Domain, num_vars: int) -> dict[int, int]:
    lo, hi = domain.values
    return {v: rng.choice((lo, hi)) for v in range(num_vars)}


@pytest.fixture(scope="session")
def rng() -> random.Random:
    return random.Random(20180614)
