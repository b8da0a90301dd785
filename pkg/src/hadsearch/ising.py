"""Ising coefficient extraction, normalization and serialization.

A model stores the energy E(s) = offset + sum_i h_i s_i + sum_{i<j} J_ij
s_i s_j with exact rational coefficients.  This sampler-facing sign
convention is primary; ``to_physics_convention`` negates h and J for the
Hamiltonian form with explicit minus signs.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, replace
from fractions import Fraction
from pathlib import Path
from typing import Mapping, Sequence

from .poly import Domain, Polynomial
from .problems import (
    Completion,
    HSearch,
    Layout,
    OrthoSet,
    ProblemSpec,
    layout_for,
    problem_name,
    unknown_columns,
)

DOCUMENT_VERSION = 1


@dataclass(frozen=True)
class IsingModel:
    num_vars: int
    offset: Fraction
    h: tuple[Fraction, ...]
    j: dict[tuple[int, int], Fraction]  # keys strictly upper-triangular
    scale: Fraction = Fraction(1)
    problem: ProblemSpec | None = None

    def __post_init__(self):
        if len(self.h) != self.num_vars:
            raise ValueError(f"h has {len(self.h)} entries for {self.num_vars} variables")
        for i, jdx in self.j:
            if not (0 <= i < jdx < self.num_vars):
                raise ValueError(f"J key ({i}, {jdx}) is not upper-triangular in range")

    @property
    def layout(self) -> Layout | None:
        return layout_for(self.problem) if self.problem is not None else None

    def coefficients(self) -> list[Fraction]:
        return [c for c in self.h if c] + [c for c in self.j.values() if c]

    def energy(self, spins: Sequence[int]) -> Fraction:
        """Exact energy including the offset."""
        if len(spins) != self.num_vars:
            raise ValueError(f"expected {self.num_vars} spins, got {len(spins)}")
        if any(v not in (-1, 1) for v in spins):
            raise ValueError("spins must be +1/-1")
        total = self.offset
        for i, hi in enumerate(self.h):
            total += hi * spins[i]
        for (i, jdx), jij in self.j.items():
            total += jij * spins[i] * spins[jdx]
        return total


def extract(p: Polynomial, problem: ProblemSpec | None = None) -> IsingModel:
    """Read {offset, h, J} off a quadratic spin polynomial."""
    if p.domain is not Domain.SPIN:
        raise ValueError("extract expects a spin-domain polynomial")
    if p.degree() > 2:
        raise ValueError(f"polynomial has degree {p.degree()}, expected at most 2")
    if problem is not None:
        num_vars = layout_for(problem).total_vars
    else:
        variables = p.variables()
        num_vars = variables[-1] + 1 if variables else 0
    h = [Fraction(0)] * num_vars
    j: dict[tuple[int, int], Fraction] = {}
    offset = Fraction(0)
    for mono, coeff in p.terms.items():
        if len(mono) == 0:
            offset = coeff
        elif len(mono) == 1:
            h[mono[0]] = coeff
        else:
            j[mono] = coeff
    return IsingModel(num_vars=num_vars, offset=offset, h=tuple(h), j=j, problem=problem)


def to_polynomial(m: IsingModel) -> Polynomial:
    terms: dict[tuple[int, ...], Fraction] = {(): m.offset}
    terms.update({(i,): c for i, c in enumerate(m.h)})
    terms.update(m.j)
    return Polynomial(Domain.SPIN, terms)


def normalize(m: IsingModel) -> IsingModel:
    """Divide offset, h and J by the largest absolute coefficient so that
    max(|h| + |J|) = 1; the divisor accumulates into ``scale``.  Minimizers
    are unchanged."""
    coeffs = m.coefficients()
    if not coeffs:
        raise ValueError("cannot normalize a model with no nonzero coefficients")
    divisor = max(abs(c) for c in coeffs)
    return replace(
        m,
        offset=m.offset / divisor,
        h=tuple(c / divisor for c in m.h),
        j={k: c / divisor for k, c in m.j.items()},
        scale=m.scale * divisor,
    )


def to_physics_convention(m: IsingModel) -> IsingModel:
    """Flip the sign of h and J to the convention with explicit minus signs
    in the Hamiltonian; applying it twice is the identity."""
    return replace(m, h=tuple(-c for c in m.h), j={k: -c for k, c in m.j.items()})


def to_qubo(m: IsingModel) -> tuple[dict[tuple[int, int], Fraction], Fraction]:
    """Boolean-domain view via s = 1 - 2q: returns (Q, offset) with linear
    terms on the diagonal of Q."""
    offset = m.offset + sum(m.h) + sum(m.j.values())
    q: dict[tuple[int, int], Fraction] = {}
    for i, hi in enumerate(m.h):
        q[(i, i)] = -2 * hi
    for (i, jdx), jij in m.j.items():
        q[(i, i)] = q.get((i, i), Fraction(0)) - 2 * jij
        q[(jdx, jdx)] = q.get((jdx, jdx), Fraction(0)) - 2 * jij
        q[(i, jdx)] = 4 * jij
    return {k: c for k, c in q.items() if c}, offset


# -- documents ---------------------------------------------------------------


def _frac_str(value: Fraction) -> str:
    return str(value)


def _parse_frac(text: str) -> Fraction:
    return Fraction(text)


def _signs(col: Sequence[int]) -> str:
    return "".join("+" if v > 0 else "-" for v in col)


def _unsigns(text: str) -> tuple[int, ...]:
    if any(c not in "+-" for c in text):
        raise ValueError(f"column string must contain only '+'/'-': {text!r}")
    return tuple(1 if c == "+" else -1 for c in text)


def _problem_document(spec: ProblemSpec | None) -> dict | None:
    if spec is None:
        return None
    known = spec.known if isinstance(spec, Completion) else ()
    return {
        "problem": problem_name(spec),
        "M": spec.order,
        "N": unknown_columns(spec),
        "known_columns": [_signs(c) for c in known],
    }


def _problem_from_document(doc: dict | None) -> ProblemSpec | None:
    if doc is None:
        return None
    name = doc["problem"]
    order = int(doc["M"])
    if name == "hsearch":
        return HSearch(order)
    if name == "orthoset":
        return OrthoSet(order, int(doc["N"]))
    if name == "completion":
        return Completion(order, tuple(_unsigns(c) for c in doc["known_columns"]))
    raise ValueError(f"unknown problem kind {name!r}")


def to_document(m: IsingModel) -> dict:
    return {
        "version": DOCUMENT_VERSION,
        "domain": "spin",
        "num_vars": m.num_vars,
        "offset": _frac_str(m.offset),
        "scale": _frac_str(m.scale),
        "h": [_frac_str(c) for c in m.h],
        "J": {f"{i},{jdx}": _frac_str(c) for (i, jdx), c in sorted(m.j.items())},
        "layout": _problem_document(m.problem),
    }


def from_document(doc: Mapping) -> IsingModel:
    if doc.get("version") != DOCUMENT_VERSION:
        raise ValueError(f"unsupported document version {doc.get('version')!r}")
    if doc.get("domain") != "spin":
        raise ValueError(f"unsupported domain {doc.get('domain')!r}")
    num_vars = int(doc["num_vars"])
    h = tuple(_parse_frac(c) for c in doc["h"])
    j: dict[tuple[int, int], Fraction] = {}
    for key, value in doc["J"].items():
        parts = key.split(",")
        if len(parts) != 2:
            raise ValueError(f"malformed J key {key!r}")
        i, jdx = int(parts[0]), int(parts[1])
        if not 0 <= i < jdx < num_vars:
            raise ValueError(f"J key {key!r} is not upper-triangular in range")
        j[(i, jdx)] = _parse_frac(value)
    problem = _problem_from_document(doc.get("layout"))
    if problem is not None and layout_for(problem).total_vars != num_vars:
        raise ValueError(
            f"layout implies {layout_for(problem).total_vars} variables, document says {num_vars}"
        )
    return IsingModel(
        num_vars=num_vars,
        offset=_parse_frac(doc["offset"]),
        h=h,
        j=j,
        scale=_parse_frac(doc["scale"]),
        problem=problem,
    )


def save_model(m: IsingModel, path: str | Path) -> None:
    Path(path).write_text(json.dumps(to_document(m), indent=2) + "\n")


def load_model(path: str | Path) -> IsingModel:
    return from_document(json.loads(Path(path).read_text()))


def model_digest(m: IsingModel) -> str:
    payload = json.dumps(to_document(m), sort_keys=True).encode()
    return hashlib.sha256(payload).hexdigest()[:16]


def to_flat_text(m: IsingModel) -> str:
    """Plain text export for third-party samplers: a "c offset" header, then
    one "h i value" line per bias and one "J i j value" line per coupling."""
    lines = [f"c offset {_frac_str(m.offset)}"]
    lines += [f"h {i} {_frac_str(c)}" for i, c in enumerate(m.h) if c]
    lines += [f"J {i} {jdx} {_frac_str(c)}" for (i, jdx), c in sorted(m.j.items()) if c]
    return "\n".join(lines) + "\n"
