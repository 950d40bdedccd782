"""Reference spectrum by diagonalization in a truncated oscillator basis.

The basis is the eigenbasis of ``p^2/2 + omega^2 x^2/2``. ``x^2`` and ``p^2``
are filled in from ladder-operator algebra, ``x^4`` is the square of the
truncated ``x^2`` block, and the eigenvalues come from a cyclic Jacobi
solver. Nothing here touches the variational code paths.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .model import Potential


class JacobiConvergenceError(RuntimeError):
    pass


class OracleConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class SymmetricMatrix:
    """Dense real symmetric matrix; the upper triangle is mirrored on construction."""

    entries: np.ndarray

    def __init__(self, entries):
        a = np.array(entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"need a square matrix, got shape {a.shape}")
        upper = np.triu(a)
        object.__setattr__(self, "entries", upper + np.triu(a, 1).T)

    @property
    def dimension(self) -> int:
        return self.entries.shape[0]

    def block(self, idx) -> SymmetricMatrix:
        idx = np.asarray(idx)
        return SymmetricMatrix(self.entries[np.ix_(idx, idx)])


def position_squared(basis_size: int, omega: float) -> np.ndarray:
    """<i|x^2|j> in the oscillator basis (exact entries, no truncation error)."""
    i = np.arange(basis_size)
    x2 = np.diag((2 * i + 1) / (2 * omega))
    off = np.sqrt((i[:-2] + 1) * (i[:-2] + 2)) / (2 * omega)
    x2[i[:-2], i[:-2] + 2] = off
    x2[i[:-2] + 2, i[:-2]] = off
    return x2


def momentum_squared(basis_size: int, omega: float) -> np.ndarray:
    i = np.arange(basis_size)
    p2 = np.diag(omega * (2 * i + 1) / 2)
    off = -(omega / 2) * np.sqrt((i[:-2] + 1) * (i[:-2] + 2))
    p2[i[:-2], i[:-2] + 2] = off
    p2[i[:-2] + 2, i[:-2]] = off
    return p2


def position_matrix(basis_size: int, omega: float) -> np.ndarray:
    i = np.arange(basis_size - 1)
    off = np.sqrt((i + 1) / (2 * omega))
    return np.diag(off, 1) + np.diag(off, -1)


def build_hamiltonian(pot: Potential, basis_size: int, omega: float) -> SymmetricMatrix:
    if basis_size < 8:
        raise ValueError(f"basis_size must be at least 8, got {basis_size}")
    if not omega > 0:
        raise ValueError(f"omega must be positive, got {omega}")
    x2 = position_squared(basis_size, omega)
    x4 = x2 @ x2
    h = 0.5 * momentum_squared(basis_size, omega) + 0.5 * pot.g_squared * x2 + pot.lam * x4
    return SymmetricMatrix(h)


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Pairings covering every (p, q) once per sweep, n/2 disjoint pairs per round."""
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        pairs = [(players[k], players[m - 1 - k]) for k in range(m // 2)]
        pairs = [(min(p, q), max(p, q)) for p, q in pairs if p < n and q < n]
        p = np.array([a for a, _ in pairs], dtype=int)
        q = np.array([b for _, b in pairs], dtype=int)
        rounds.append((p, q))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def eigenvalues_symmetric(m: SymmetricMatrix, tol: float = 1e-14, max_sweeps: int = 100) -> np.ndarray:
    """Ascending eigenvalues by cyclic Jacobi rotations.

    Each sweep visits every off-diagonal pair once, in a round-robin order
    whose rounds consist of disjoint pairs; the rotations of one round
    commute and are applied together. Stops when the off-diagonal Frobenius
    norm falls below ``tol * ||m||_F``.
    """
    a = m.entries.copy()
    n = a.shape[0]
    if n == 1:
        return a.diagonal().copy()
    scale = float(np.linalg.norm(a))
    if scale == 0.0:
        return np.zeros(n)
    rounds = _round_robin(n)
    for _ in range(max_sweeps):
        if _off_norm(a) < tol * scale:
            return np.sort(a.diagonal())
        for p, q in rounds:
            apq = a[p, q]
            app, aqq = a[p, p], a[q, q]
            # below rounding of both diagonal entries: annihilate without rotating
            g = 100.0 * np.abs(apq)
            negligible = (np.abs(app) + g == np.abs(app)) & (np.abs(aqq) + g == np.abs(aqq))
            a[p[negligible], q[negligible]] = 0.0
            a[q[negligible], p[negligible]] = 0.0
            active = (apq != 0.0) & ~negligible
            if not active.any():
                continue
            p, q, apq, app, aqq = p[active], q[active], apq[active], app[active], aqq[active]
            theta = (aqq - app) / (2.0 * apq)
            big = np.abs(theta) > 1e150
            safe = np.where(big, 1.0, theta)
            t = np.sign(safe) / (np.abs(safe) + np.sqrt(safe * safe + 1.0))
            t = np.where(big, 0.5 / np.where(big, theta, 1.0), t)
            t = np.where(theta == 0.0, 1.0, t)
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            rp, rq = a[p, :], a[q, :]
            a[p, :] = c[:, None] * rp - s[:, None] * rq
            a[q, :] = s[:, None] * rp + c[:, None] * rq
            cp, cq = a[:, p], a[:, q]
            a[:, p] = cp * c - cq * s
            a[:, q] = cp * s + cq * c
            a[p, q] = 0.0
            a[q, p] = 0.0
    if _off_norm(a) < tol * scale:
        return np.sort(a.diagonal())
    raise JacobiConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps (n={n})")


@dataclass(frozen=True)
class SpectrumResult:
    potential: Potential
    basis_size: int
    basis_scale: float
    eigenvalues: tuple[float, ...]
    converged: bool
    drift: float
    history: tuple[tuple[int, tuple[float, ...]], ...] = field(default=(), compare=False)


def default_basis_scale(pot: Potential) -> float:
    return max(math.sqrt(pot.g_squared), (3.0 * pot.lam) ** (1.0 / 3.0))


def spectrum(pot: Potential, basis_size: int, omega: float, jacobi_tol: float = 1e-14) -> np.ndarray:
    """All eigenvalues of the truncated Hamiltonian.

    The potential is even, so even and odd basis states never mix; the two
    parity blocks are diagonalized separately.
    """
    h = build_hamiltonian(pot, basis_size, omega)
    idx = np.arange(basis_size)
    evens = eigenvalues_symmetric(h.block(idx[0::2]), jacobi_tol)
    odds = eigenvalues_symmetric(h.block(idx[1::2]), jacobi_tol)
    return np.sort(np.concatenate([evens, odds]))


def exact_spectrum(pot: Potential, levels: int, tol: float = 1e-6, omega: float | None = None,
                   start_size: int = 60, max_size: int = 960) -> SpectrumResult:
    """Lowest ``levels`` energies, doubling the basis until they stop moving."""
    if not 1 <= levels <= 12:
        raise ValueError(f"levels must be in 1..12, got {levels}")
    omega = default_basis_scale(pot) if omega is None else float(omega)
    size = start_size
    prev = spectrum(pot, size, omega)[:levels]
    history = [(size, tuple(float(e) for e in prev))]
    drift = math.inf
    while size * 2 <= max_size:
        size *= 2
        cur = spectrum(pot, size, omega)[:levels]
        history.append((size, tuple(float(e) for e in cur)))
        drift = float(np.max(np.abs(cur - prev)))
        prev = cur
        if drift < tol:
            return SpectrumResult(pot, size, omega, tuple(float(e) for e in cur), True, drift, tuple(history))
    raise OracleConvergenceError(
        f"spectrum drift {drift:.3g} still above {tol:g} at basis size {size} (lambda={pot.lam})")
