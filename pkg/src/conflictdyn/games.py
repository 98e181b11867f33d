"""Small bimatrix games: Hawk-Dove generators, Nash equilibria, dominance.

Tables are indexed ``[row strategy, column strategy]``. ``A`` holds the row
player's payoffs and ``B`` the column player's.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

TIE_TOL = 1e-9
DEDUP_TOL = 1e-8
HAWK_DOVE = ("Hawk", "Dove")
HAWK, DOVE = 0, 1


@dataclass(frozen=True)
class BimatrixGame:
    A: np.ndarray
    B: np.ndarray
    row_labels: tuple[str, ...] = HAWK_DOVE
    col_labels: tuple[str, ...] = HAWK_DOVE

    def __post_init__(self):
        A = np.array(self.A, dtype=float)
        B = np.array(self.B, dtype=float)
        if A.ndim != 2 or A.shape != B.shape or min(A.shape) < 1:
            raise ValueError(f"payoff tables must be equal-shaped m x n, got {A.shape} and {B.shape}")
        if not (np.all(np.isfinite(A)) and np.all(np.isfinite(B))):
            raise ValueError("payoffs must be finite")
        m, n = A.shape
        if len(self.row_labels) != m or len(self.col_labels) != n:
            raise ValueError("strategy labels do not match table shape")
        A.setflags(write=False)
        B.setflags(write=False)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "row_labels", tuple(self.row_labels))
        object.__setattr__(self, "col_labels", tuple(self.col_labels))

    @property
    def shape(self) -> tuple[int, int]:
        return self.A.shape

    def payoffs(self, row, col) -> tuple[float, float]:
        row = np.asarray(row, dtype=float)
        col = np.asarray(col, dtype=float)
        return float(row @ self.A @ col), float(row @ self.B @ col)


@dataclass(frozen=True)
class Equilibrium:
    row: tuple[float, ...]
    col: tuple[float, ...]
    payoffs: tuple[float, float]
    kind: str  # "pure" or "mixed"

    @property
    def supports(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return (
            tuple(i for i, p in enumerate(self.row) if p > DEDUP_TOL),
            tuple(j for j, q in enumerate(self.col) if q > DEDUP_TOL),
        )

    def profile(self) -> tuple[int, int] | None:
        """Strategy indices for a pure equilibrium, None if mixed."""
        if self.kind != "pure":
            return None
        return self.row.index(max(self.row)), self.col.index(max(self.col))


@dataclass(frozen=True)
class DominanceFact:
    player: int  # 1 = row, 2 = column
    dominating: int
    dominated: int
    strictness: str  # "strict" or "weak"


def _check_finite(*values: float) -> None:
    for v in values:
        if not math.isfinite(v):
            raise ValueError(f"benefit and cost must be finite, got {v!r}")


def hawk_dove_symmetric(benefit: float, cost: float) -> BimatrixGame:
    _check_finite(benefit, cost)
    A = np.array([[(benefit - cost) / 2.0, benefit], [0.0, benefit / 2.0]])
    return BimatrixGame(A, A.T.copy())


def hawk_dove_first_injurer(benefit: float, cost: float) -> BimatrixGame:
    """Hawk-Dove where the row player strikes first.

    The row player's table is the usual one; the column player gets nothing
    whenever the row player plays Hawk.
    """
    _check_finite(benefit, cost)
    A = np.array([[(benefit - cost) / 2.0, benefit], [0.0, benefit / 2.0]])
    B = np.array([[0.0, 0.0], [benefit, benefit / 2.0]])
    return BimatrixGame(A, B)


GAME_VARIANTS = {
    "symmetric": hawk_dove_symmetric,
    "first-injurer": hawk_dove_first_injurer,
}


def is_equilibrium(game: BimatrixGame, row, col, tol: float = TIE_TOL) -> bool:
    """No pure deviation improves either player's payoff by more than ``tol``."""
    row = np.asarray(row, dtype=float)
    col = np.asarray(col, dtype=float)
    u_row, u_col = game.payoffs(row, col)
    return bool(np.max(game.A @ col) <= u_row + tol and np.max(row @ game.B) <= u_col + tol)


def _unit(k: int, n: int) -> tuple[float, ...]:
    return tuple(1.0 if i == k else 0.0 for i in range(n))


def pure_nash(game: BimatrixGame) -> list[Equilibrium]:
    m, n = game.shape
    A, B = game.A, game.B
    out = []
    for i in range(m):
        for j in range(n):
            if A[i, j] >= A[:, j].max() - TIE_TOL and B[i, j] >= B[i, :].max() - TIE_TOL:
                out.append(Equilibrium(_unit(i, m), _unit(j, n), (float(A[i, j]), float(B[i, j])), "pure"))
    return out


def _indifference(payoff: np.ndarray, own: tuple[int, ...], other: tuple[int, ...]):
    """Mix over ``own`` that equalises the opponent's payoff on ``other``.

    ``payoff[own][:, other]`` is the opponent's table seen from our strategies.
    Returns None when the linear system is singular.
    """
    k = len(own)
    M = np.zeros((k + 1, k + 1))
    M[:k, :k] = payoff[np.ix_(own, other)].T
    M[:k, k] = -1.0
    M[k, :k] = 1.0
    rhs = np.zeros(k + 1)
    rhs[k] = 1.0
    if np.linalg.matrix_rank(M) < k + 1:
        return None
    return np.linalg.solve(M, rhs)[:k]


def mixed_nash_support_enum(game: BimatrixGame) -> list[Equilibrium]:
    """All equilibria found by enumerating equal-size support pairs.

    Pure equilibria are included. Singular indifference systems are skipped.
    """
    m, n = game.shape
    if m > 4 or n > 4:
        raise ValueError("support enumeration is limited to 4x4 games")
    found: list[Equilibrium] = []
    for k in range(1, min(m, n) + 1):
        for I, J in itertools.product(itertools.combinations(range(m), k), itertools.combinations(range(n), k)):
            x = _indifference(game.B, I, J)
            y = _indifference(game.A.T, J, I)
            if x is None or y is None:
                continue
            if np.any(x < -TIE_TOL) or np.any(y < -TIE_TOL):
                continue
            row = np.zeros(m)
            col = np.zeros(n)
            row[list(I)] = np.clip(x, 0.0, None)
            col[list(J)] = np.clip(y, 0.0, None)
            row /= row.sum()
            col /= col.sum()
            if not is_equilibrium(game, row, col):
                continue
            if any(
                np.max(np.abs(row - e.row)) < DEDUP_TOL and np.max(np.abs(col - e.col)) < DEDUP_TOL
                for e in found
            ):
                continue
            pure = np.count_nonzero(row > DEDUP_TOL) == 1 and np.count_nonzero(col > DEDUP_TOL) == 1
            if pure:
                row = np.round(row)
                col = np.round(col)
            found.append(
                Equilibrium(tuple(row.tolist()), tuple(col.tolist()), game.payoffs(row, col), "pure" if pure else "mixed")
            )
    return found


def dominant_strategies(game: BimatrixGame) -> list[DominanceFact]:
    facts = []
    for player, table in ((1, game.A), (2, game.B.T)):
        # rows of ``table`` are this player's strategies
        for i, k in itertools.permutations(range(table.shape[0]), 2):
            diff = table[i] - table[k]
            if np.all(diff > TIE_TOL):
                facts.append(DominanceFact(player, i, k, "strict"))
            elif np.all(diff >= -TIE_TOL) and np.any(diff > TIE_TOL):
                facts.append(DominanceFact(player, i, k, "weak"))
    return facts


def behavior_label(state, threshold: float = 0.5) -> tuple[str, str]:
    """Read each coordinate as aggressive (Hawk-like) or mild (Dove-like)."""
    x, y = state
    return tuple("Hawk-like" if v >= threshold else "Dove-like" for v in (x, y))


@dataclass(frozen=True)
class CorrespondenceRow:
    location: tuple[float, float]
    labels: tuple[str, str]  # (x participant, y participant)
    profile: tuple[str, str]  # (row player strategy, column player strategy)
    nash: bool


def correspondence_report(reports, game: BimatrixGame, row_player: str = "x", threshold: float = 0.5) -> list[CorrespondenceRow]:
    """Match admissible fixed points to pure profiles of ``game``.

    ``row_player`` says which map coordinate plays the game's row role. The
    default puts participant x (the first striker) in the row seat.
    """
    if row_player not in ("x", "y"):
        raise ValueError("row_player must be 'x' or 'y'")
    if game.shape != (2, 2):
        raise ValueError("correspondence needs a 2x2 Hawk/Dove game")
    equilibria = {e.profile() for e in pure_nash(game)}
    rows = []
    for rep in reports:
        fp = getattr(rep, "fixed_point", rep)
        if not fp.admissible:
            continue
        loc = fp.location
        labels = behavior_label(loc, threshold)
        idx = tuple(HAWK if lab == "Hawk-like" else DOVE for lab in labels)
        if row_player == "y":
            idx = idx[::-1]
        profile = (game.row_labels[idx[0]], game.col_labels[idx[1]])
        rows.append(CorrespondenceRow((loc.x, loc.y), labels, profile, idx in equilibria))
    return rows
