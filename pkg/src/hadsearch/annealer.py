"""Metropolis simulated annealing over Ising models.

Each read is an independent run: spins start at random +/-1, then ``sweeps``
full passes of single-spin Metropolis updates are made while the inverse
temperature steps along the configured schedule.  Reads draw from
deterministic substreams derived from (seed, read_index), so results are
reproducible bit-for-bit regardless of how reads are scheduled.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np
from numba import njit

from .ising import IsingModel, model_digest

SCHEDULES = ("geometric", "linear")


@dataclass(frozen=True)
class AnnealConfig:
    sweeps: int = 1000
    reads: int = 10
    beta_min: float = 0.1
    beta_max: float = 400.0
    schedule: str = "geometric"
    seed: int = 0
    random_order: bool = False  # visit spins in shuffled order instead of index order

    def __post_init__(self):
        if self.sweeps < 1:
            raise ValueError(f"sweeps must be positive, got {self.sweeps}")
        if self.reads < 1:
            raise ValueError(f"reads must be positive, got {self.reads}")
        if not 0 < self.beta_min < self.beta_max:
            raise ValueError(
                f"need 0 < beta_min < beta_max, got {self.beta_min}, {self.beta_max}"
            )
        if self.schedule not in SCHEDULES:
            raise ValueError(f"schedule must be one of {SCHEDULES}, got {self.schedule!r}")

    def betas(self) -> np.ndarray:
        if self.sweeps == 1:
            return np.array([self.beta_max])
        if self.schedule == "geometric":
            ratio = self.beta_max / self.beta_min
            return self.beta_min * ratio ** (np.arange(self.sweeps) / (self.sweeps - 1))
        return np.linspace(self.beta_min, self.beta_max, self.sweeps)


@dataclass(frozen=True)
class Sample:
    spins: tuple[int, ...]
    energy: float
    occurrences: int


@dataclass(frozen=True)
class ResultSet:
    samples: tuple[Sample, ...]
    config: AnnealConfig
    model_digest: str

    @property
    def reads(self) -> int:
        return sum(s.occurrences for s in self.samples)

    def best(self) -> Sample:
        return self.samples[0]


def _dense_arrays(m: IsingModel) -> tuple[np.ndarray, np.ndarray]:
    h = np.array([float(c) for c in m.h])
    jmat = np.zeros((m.num_vars, m.num_vars))
    for (i, jdx), c in m.j.items():
        jmat[i, jdx] = jmat[jdx, i] = float(c)
    return h, jmat


def energy(m: IsingModel, spins: Sequence[int]) -> float:
    """Offset-excluded energy sum(h_i s_i) + sum(J_ij s_i s_j)."""
    s = np.asarray(spins, dtype=np.float64)
    if s.shape != (m.num_vars,):
        raise ValueError(f"expected {m.num_vars} spins, got shape {s.shape}")
    if not np.all(np.abs(s) == 1.0):
        raise ValueError("spins must be +1/-1")
    h, jmat = _dense_arrays(m)
    return float(h @ s + 0.5 * s @ jmat @ s)


@njit(cache=True)
def _run_read(h, jmat, betas, seed, random_order):  # pragma: no cover - jitted
    np.random.seed(seed)
    n = h.shape[0]
    spins = np.empty(n, np.int8)
    for i in range(n):
        spins[i] = 1 if np.random.random() < 0.5 else -1
    # local fields f_i = h_i + sum_j J_ij s_j, updated incrementally
    field = h.copy()
    for i in range(n):
        acc = 0.0
        for j in range(n):
            acc += jmat[i, j] * spins[j]
        field[i] += acc
    order = np.arange(n)
    for t in range(betas.shape[0]):
        beta = betas[t]
        if random_order:
            order = np.random.permutation(n)
        for k in range(n):
            i = order[k]
            delta_e = -2.0 * spins[i] * field[i]
            if delta_e <= 0.0 or np.random.random() < np.exp(-beta * delta_e):
                spins[i] = -spins[i]
                si = spins[i]
                for j in range(n):
                    field[j] += 2.0 * si * jmat[j, i]
    return spins


def _read_seed(seed: int, read_index: int) -> int:
    state = np.random.SeedSequence(entropy=seed, spawn_key=(read_index,)).generate_state(1)
    return int(state[0])


def anneal(m: IsingModel, config: AnnealConfig | None = None) -> ResultSet:
    """Run ``config.reads`` independent annealing reads and aggregate the
    final states (identical spin vectors merge, occurrences add up)."""
    config = config or AnnealConfig()
    if m.num_vars == 0:
        raise ValueError("cannot anneal a model with no variables")
    h, jmat = _dense_arrays(m)
    betas = config.betas()
    counts: dict[tuple[int, ...], int] = {}
    for read in range(config.reads):
        final = _run_read(h, jmat, betas, _read_seed(config.seed, read), config.random_order)
        state = tuple(int(v) for v in final)
        counts[state] = counts.get(state, 0) + 1
    samples = [
        Sample(spins=state, energy=energy(m, state), occurrences=n)
        for state, n in counts.items()
    ]
    samples.sort(key=lambda s: (s.energy, s.spins))
    return ResultSet(samples=tuple(samples), config=config, model_digest=model_digest(m))


def histogram(result: ResultSet, decimals: int = 2) -> list[tuple[float, int]]:
    """Energy levels (rounded to ``decimals``) with total read counts,
    lowest level first."""
    buckets: dict[float, int] = {}
    for sample in result.samples:
        key = round(sample.energy, decimals)
        buckets[key] = buckets.get(key, 0) + sample.occurrences
    return sorted(buckets.items())


def histogram_csv(result: ResultSet, decimals: int = 2) -> str:
    """Two CSV tables: the energy histogram, then the per-sample occurrence
    table, separated by a blank line."""
    lines = ["energy,reads"]
    lines += [f"{e:.{decimals}f},{n}" for e, n in histogram(result, decimals)]
    lines.append("")
    lines.append("spins,energy,occurrences")
    for s in result.samples:
        signs = "".join("+" if v > 0 else "-" for v in s.spins)
        lines.append(f"{signs},{s.energy!r},{s.occurrences}")
    return "\n".join(lines) + "\n"


# -- documents ---------------------------------------------------------------


def to_document(result: ResultSet) -> dict:
    return {
        "version": 1,
        "model_digest": result.model_digest,
        "config": asdict(result.config),
        "samples": [
            {
                "spins": "".join("+" if v > 0 else "-" for v in s.spins),
                "energy": s.energy,
                "occurrences": s.occurrences,
            }
            for s in result.samples
        ],
    }


def from_document(doc: Mapping) -> ResultSet:
    if doc.get("version") != 1:
        raise ValueError(f"unsupported results version {doc.get('version')!r}")
    samples = []
    for item in doc["samples"]:
        if any(c not in "+-" for c in item["spins"]):
            raise ValueError(f"malformed spins string {item['spins']!r}")
        spins = tuple(1 if c == "+" else -1 for c in item["spins"])
        samples.append(
            Sample(spins=spins, energy=float(item["energy"]), occurrences=int(item["occurrences"]))
        )
    return ResultSet(
        samples=tuple(samples),
        config=AnnealConfig(**doc["config"]),
        model_digest=doc["model_digest"],
    )


def save_results(result: ResultSet, path: str | Path) -> None:
    Path(path).write_text(json.dumps(to_document(result), indent=2) + "\n")


def load_results(path: str | Path) -> ResultSet:
    return from_document(json.loads(Path(path).read_text()))
