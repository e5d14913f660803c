"""Conjugate gradients on the normal equations of a tall least-squares
problem, with the image-space stopping rule used by the recovery stage.

The target accuracy ``tol`` is an image-space bound
``||A (z - z*)||_2 <= tol``. Since the exact minimizer is unknown at run
time, iteration stops on the computable proxy
``||A*(A z - y)||_2 <= tol * sqrt(1 - 3/5)``: in the sampling regime the
matrices here come from, the smallest singular value of ``A`` stays above
``sqrt(1 - 3/5)``, under which the proxy implies the image-space bound up
to the conditioning bracket.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

__all__ = ["LsqProblem", "CgResult", "cg_normal_solve"]

_SIGMA_MIN_GUARD = math.sqrt(1.0 - 3.0 / 5.0)


@dataclass(frozen=True)
class LsqProblem:
    """Operator form of ``argmin_z ||A z - y||_2``.

    ``apply_a`` maps coefficient space to sample space; ``apply_at`` is its
    adjoint. Both must act on 1-d numpy arrays.
    """

    apply_a: Callable
    apply_at: Callable
    rhs: np.ndarray
    tol: float
    max_iter: int = 200

    def __post_init__(self):
        if self.tol <= 0.0:
            raise ValueError("tol must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be positive")

    @classmethod
    def from_matrix(cls, a, y, tol, max_iter=200):
        a = np.asarray(a, dtype=np.float64)
        return cls(lambda v: a @ v, lambda w: a.T @ w, np.asarray(y, dtype=np.float64),
                   tol, max_iter)


@dataclass(frozen=True)
class CgResult:
    z: np.ndarray
    residual_norm: float  # final normal-equation residual ||A*(Az - y)||_2
    iterations: int
    converged: bool
    residual_history: tuple = field(default_factory=tuple)


def cg_normal_solve(problem):
    """Run CG on ``A*A z = A*y`` from the zero start.

    The adjoint pair is probed on fixed pseudorandom vectors before the
    solve and a mismatch raises ``ValueError``. Hitting ``max_iter`` is
    reported through ``converged=False``, never as an exception. With the
    conditioning the sampling stage guarantees (``κ(A*A) <= 4``) the
    iteration count grows like ``log base 3`` of ``||y||/tol``.
    """
    y = np.asarray(problem.rhs, dtype=np.float64)
    r = problem.apply_at(y)
    n = r.shape[0]
    m = y.shape[0]

    probe_rng = np.random.default_rng(0x5EED5)
    v = probe_rng.standard_normal(n)
    w = probe_rng.standard_normal(m)
    av = problem.apply_a(v)
    atw = problem.apply_at(w)
    lhs = float(av @ w)
    rhs = float(v @ atw)
    scale = np.linalg.norm(av) * np.linalg.norm(w) + np.linalg.norm(v) * np.linalg.norm(atw)
    if abs(lhs - rhs) > 1e-10 * max(scale, 1e-300):
        raise ValueError("apply_a/apply_at are not adjoint to each other")

    threshold = problem.tol * _SIGMA_MIN_GUARD
    x = np.zeros(n)
    rs = float(r @ r)
    history = [math.sqrt(rs)]
    if history[0] <= threshold:
        return CgResult(x, history[0], 0, True, tuple(history))
    p = r.copy()
    iterations = 0
    converged = False
    for _ in range(problem.max_iter):
        q = problem.apply_a(p)
        qq = float(q @ q)
        if qq == 0.0:
            break
        alpha = rs / qq
        x = x + alpha * p
        r = r - alpha * problem.apply_at(q)
        rs_new = float(r @ r)
        iterations += 1
        history.append(math.sqrt(rs_new))
        if history[-1] <= threshold:
            converged = True
            break
        p = r + (rs_new / rs) * p
        rs = rs_new
    return CgResult(x, history[-1], iterations, converged, tuple(history))
