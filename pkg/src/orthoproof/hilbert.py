"""Closed subspaces of C^n as a numerical model.

The lattice of closed subspaces interprets the connectives: meet and
join are the usual lattice operations, orthocomplement is the adjoint
kernel, and the sequential connective has two independent readings —
the lattice form (A v B^perp) ^ B, and the column space of [B] applied
to A.  ``verify`` sweeps seeded random instances confirming that the
two readings agree, that the fold criterion's lattice and range sides
agree, and that sequential measurement delivers the advertised
probabilities and post-states.

All tolerances are module constants; the mathematics upstream is exact,
so the thresholds here are implementation choices, recorded once and
used everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
import re

import numpy as np

__all__ = [
    "Subspace", "MeasurementTrace", "MeasurementStep", "HilbertError",
    "subspace", "zero", "full", "random_subspace", "parse_subspace",
    "projector", "ortho", "join", "meet", "leq", "same",
    "sasaki_lattice", "sasaki_closure",
    "sequential_measure", "check_fold_criterion",
    "verify", "CheckRow",
]

ORTHO_TOL = 1e-10       # Gram residual of a stored basis
RANK_TOL = 1e-9         # absolute singular-value cutoff, normalized input
CONTAIN_TOL = 1e-8      # subspace containment / agreement residual
EQ_TOL = 1e-9           # projector Frobenius distance for equality
ANNIHILATE_TOL = 1e-12  # a probability below this is zero


class HilbertError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Subspace:
    """An n x k complex array with orthonormal columns; k is the dimension."""

    basis: np.ndarray

    def __post_init__(self):
        b = np.asarray(self.basis, dtype=complex)
        if b.ndim != 2:
            raise HilbertError("basis must be a 2-d array")
        object.__setattr__(self, "basis", b)
        k = b.shape[1]
        if k:
            residual = np.abs(b.conj().T @ b - np.eye(k)).max()
            if residual > ORTHO_TOL:
                raise HilbertError(f"columns not orthonormal (residual {residual:.2e})")

    @property
    def n(self) -> int:
        return self.basis.shape[0]

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def __repr__(self):
        return f"Subspace(dim {self.dim} of C^{self.n})"


def subspace(vectors, n=None) -> Subspace:
    """Orthonormalize a spanning set (columns); rank by fixed threshold."""
    a = np.asarray(vectors, dtype=complex)
    if a.ndim == 1:
        a = a[:, None]
    if a.size == 0:
        if n is None and a.ndim == 2 and a.shape[0]:
            n = a.shape[0]
        if n is None:
            raise HilbertError("empty spanning set needs an explicit dimension")
        return Subspace(np.zeros((n, 0), dtype=complex))
    norms = np.linalg.norm(a, axis=0)
    if not np.any(norms > 0):
        return Subspace(np.zeros((a.shape[0], 0), dtype=complex))
    keep = a[:, norms > 0] / norms[norms > 0][None, :]
    u, s, _ = np.linalg.svd(keep, full_matrices=False)
    r = int(np.sum(s > RANK_TOL))
    return Subspace(u[:, :r])


def zero(n: int) -> Subspace:
    return Subspace(np.zeros((n, 0), dtype=complex))


def full(n: int) -> Subspace:
    return Subspace(np.eye(n, dtype=complex))


def random_subspace(rng, n: int, k=None) -> Subspace:
    """Column space of a standard complex Gaussian n x k matrix."""
    if k is None:
        k = int(rng.integers(0, n + 1))
    if k == 0:
        return zero(n)
    g = rng.standard_normal((n, k)) + 1j * rng.standard_normal((n, k))
    u, _, _ = np.linalg.svd(g, full_matrices=False)
    return Subspace(u[:, :k])


_ENTRY_RE = re.compile(
    r"^(?P<re>[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)"
    r"(?:(?P<im>[+-](?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)i)?$")


def parse_subspace(text: str) -> Subspace:
    """Text matrix: one row per line, rows = ambient dimension,
    whitespace-separated columns = spanning vectors, entries ``re[+im i]``."""
    rows = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        entries = []
        for tok in line.split():
            m = _ENTRY_RE.match(tok)
            if not m:
                raise HilbertError(f"bad matrix entry '{tok}'")
            entries.append(complex(float(m.group("re")),
                                   float(m.group("im") or 0.0)))
        rows.append(entries)
    if not rows:
        raise HilbertError("empty subspace description")
    if len({len(r) for r in rows}) != 1:
        raise HilbertError("ragged matrix")
    return subspace(np.array(rows, dtype=complex))


def _same_ambient(*spaces):
    dims = {s.n for s in spaces}
    if len(dims) != 1:
        raise HilbertError(f"ambient dimensions differ: {sorted(dims)}")


def projector(a: Subspace) -> np.ndarray:
    return a.basis @ a.basis.conj().T


def ortho(a: Subspace) -> Subspace:
    """Kernel basis of the projector."""
    p = projector(a)
    w, _, _ = np.linalg.svd(np.eye(a.n) - p)
    return Subspace(w[:, : a.n - a.dim])


def join(a: Subspace, b: Subspace) -> Subspace:
    _same_ambient(a, b)
    return subspace(np.hstack([a.basis, b.basis]), n=a.n)


def meet(a: Subspace, b: Subspace) -> Subspace:
    _same_ambient(a, b)
    return ortho(join(ortho(a), ortho(b)))


def leq(a: Subspace, b: Subspace) -> bool:
    """Containment a <= b, at the agreement tolerance."""
    _same_ambient(a, b)
    if a.dim == 0:
        return True
    residual = np.linalg.norm((np.eye(a.n) - projector(b)) @ a.basis)
    return bool(residual < CONTAIN_TOL)


def same(a: Subspace, b: Subspace) -> bool:
    _same_ambient(a, b)
    return bool(np.linalg.norm(projector(a) - projector(b)) < EQ_TOL)


def sasaki_lattice(a: Subspace, b: Subspace) -> Subspace:
    """(a v b^perp) ^ b, computed with the lattice operations only."""
    _same_ambient(a, b)
    return meet(join(a, ortho(b)), b)


def sasaki_closure(a: Subspace, b: Subspace) -> Subspace:
    """Column space of [b] applied to a basis of a — the projected form."""
    _same_ambient(a, b)
    return subspace(projector(b) @ a.basis, n=a.n)


@dataclass(frozen=True)
class MeasurementStep:
    source: Subspace
    probability: float        # cumulative; 0.0 exactly when annihilated
    state: object             # unit vector, or None once annihilated

    @property
    def annihilated(self) -> bool:
        return self.state is None


@dataclass(frozen=True)
class MeasurementTrace:
    initial: np.ndarray
    steps: tuple

    @property
    def survived(self) -> bool:
        return all(not s.annihilated for s in self.steps)

    @property
    def final_probability(self) -> float:
        return self.steps[-1].probability if self.steps else 1.0

    @property
    def final_state(self):
        return self.steps[-1].state if self.steps else self.initial


def sequential_measure(xi0, chain) -> MeasurementTrace:
    """Project-and-renormalize along the chain.

    The cumulative probability is tracked on the unnormalized product,
    so the reported value is literally the squared norm of the chained
    projections applied to the initial state.  A step whose probability
    falls below the annihilation threshold truncates the trace.
    """
    xi0 = np.asarray(xi0, dtype=complex).reshape(-1)
    if abs(np.linalg.norm(xi0) - 1.0) > ORTHO_TOL:
        raise HilbertError("initial state must be a unit vector")
    chain = tuple(chain)
    if chain:
        _same_ambient(*chain)
        if chain[0].n != xi0.shape[0]:
            raise HilbertError("state dimension does not match the chain")
    steps = []
    w = xi0
    for a in chain:
        w = projector(a) @ w
        p = float(np.linalg.norm(w) ** 2)
        if p < ANNIHILATE_TOL:
            steps.append(MeasurementStep(a, 0.0, None))
            break
        steps.append(MeasurementStep(a, p, w / np.sqrt(p)))
    return MeasurementTrace(xi0, tuple(steps))


def check_fold_criterion(chain, b: Subspace):
    """(lattice-side, range-side) booleans; the two are provably equal.

    Lattice side: the left-associated sequential fold of the chain lies
    below b (empty fold = the whole space).  Range side: the column
    space of the reversed projector product lies in b.
    """
    chain = tuple(chain)
    _same_ambient(*chain, b)
    fold = reduce(sasaki_lattice, chain, full(b.n))
    lattice_side = leq(fold, b)
    m = reduce(lambda acc, a: projector(a) @ acc, chain, np.eye(b.n, dtype=complex))
    residual = np.linalg.norm((np.eye(b.n) - projector(b)) @ m)
    range_side = bool(residual < CONTAIN_TOL)
    return lattice_side, range_side


# ---------------------------------------------------------------------------
# seeded verification sweeps (the CLI's hilbert-verify backend)


@dataclass(frozen=True)
class CheckRow:
    name: str
    instances: int
    failures: int
    worst: float

    @property
    def passed(self) -> bool:
        return self.failures == 0


def closure_agreement_sweep(rng, dims, trials) -> CheckRow:
    """Projected-subspace closure against the lattice form, random pairs."""
    failures, worst = 0, 0.0
    for _ in range(trials):
        n = int(rng.choice(dims))
        a, b = random_subspace(rng, n), random_subspace(rng, n)
        gap = float(np.linalg.norm(projector(sasaki_lattice(a, b))
                                   - projector(sasaki_closure(a, b))))
        worst = max(worst, gap)
        if gap >= CONTAIN_TOL:
            failures += 1
    return CheckRow("sasaki-closure-agreement", trials, failures, worst)


def fold_agreement_sweep(rng, dims, trials, max_chain=3) -> CheckRow:
    """Lattice side versus range side of the fold criterion."""
    failures, worst = 0, 0.0
    for _ in range(trials):
        n = int(rng.choice(dims))
        chain = [random_subspace(rng, n)
                 for _ in range(int(rng.integers(0, max_chain + 1)))]
        b = random_subspace(rng, n)
        lat, ran = check_fold_criterion(chain, b)
        if lat != ran:
            failures += 1
            worst = 1.0
    return CheckRow("fold-criterion-agreement", trials, failures, worst)


def measurement_sweep(rng, dims, trials, max_chain=3) -> CheckRow:
    """When the fold criterion holds, surviving traces must end inside b
    with exactly the advertised probability."""
    failures, worst = 0, 0.0
    done = 0
    while done < trials:
        n = int(rng.choice(dims))
        chain = [random_subspace(rng, n, k=int(rng.integers(1, n + 1)))
                 for _ in range(int(rng.integers(1, max_chain + 1)))]
        m = reduce(lambda acc, a: projector(a) @ acc, chain,
                   np.eye(n, dtype=complex))
        b = join(subspace(m, n=n), random_subspace(rng, n))
        if check_fold_criterion(chain, b) != (True, True):
            continue            # construction guarantees this; stay honest
        done += 1
        g = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        xi0 = g / np.linalg.norm(g)
        trace = sequential_measure(xi0, chain)
        direct = float(np.linalg.norm(m @ xi0) ** 2)
        if trace.survived:
            gap = abs(trace.final_probability - direct)
            inside = np.linalg.norm(
                (np.eye(n) - projector(b)) @ trace.final_state)
            worst = max(worst, gap, float(inside))
            if gap > 1e-12 or inside >= CONTAIN_TOL:
                failures += 1
        elif direct >= ANNIHILATE_TOL:
            failures += 1
            worst = max(worst, direct)
    return CheckRow("measurement-consistency", trials, failures, worst)


def verify(dim: int, trials: int, seed: int):
    """Run the three sweeps at one ambient dimension; rows for the CLI."""
    rng = np.random.default_rng(seed)
    return [
        closure_agreement_sweep(rng, [dim], trials),
        fold_agreement_sweep(rng, [dim], trials),
        measurement_sweep(rng, [dim], trials),
    ]
