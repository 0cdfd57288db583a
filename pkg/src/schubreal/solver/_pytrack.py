"""Pure-Python (numpy) path tracker; reference for the compiled kernel."""
from __future__ import annotations

import numpy as np

OK, DIVERGED, FAILED, SINGULAR, MAXSTEPS = 0, 1, 2, 3, 4


def eval_terms(x, C, exps, maxdeg):
    """Values and Jacobian of ``F = C @ monomials(x)``.

    ``C`` is the dense (equations x terms) coefficient matrix.  Partial
    derivatives use prefix and suffix products over the variables.
    """
    x = np.asarray(x, dtype=np.complex128)
    cols = np.arange(len(x))
    pw = x[None, :] ** np.arange(maxdeg + 1)[:, None]
    P = pw[exps, cols]
    ones = np.ones((P.shape[0], 1), dtype=np.complex128)
    pre = np.cumprod(np.hstack([ones, P[:, :-1]]), axis=1)
    suf = np.cumprod(np.hstack([ones, P[:, :0:-1]]), axis=1)[:, ::-1]
    F = C @ (pre[:, -1] * P[:, -1])
    lower = pw[np.maximum(exps - 1, 0), cols]
    return F, C @ (exps * lower * pre * suf)


class PathTracker:
    """Tracks ``H(x, t) = (1 - t) gamma G(x) + t F(x)`` from ``t = 0`` to ``1``.

    ``G_i = x_i^(d_i) - 1``.  ``F`` is given as sparse terms: coefficient,
    exponent row and equation index per term.
    """

    def __init__(self, coeffs, exps, term_eq, degrees, gamma, params):
        self.coeffs = np.ascontiguousarray(coeffs, dtype=np.complex128)
        self.exps = np.ascontiguousarray(exps, dtype=np.int64)
        self.term_eq = np.ascontiguousarray(term_eq, dtype=np.int64)
        self.degrees = np.ascontiguousarray(degrees, dtype=np.int64)
        self.gamma = complex(gamma)
        (self.step_min, self.step_max, self.step_init, self.tol, self.endgame_radius,
         self.endgame_tol, self.divergence, max_newton, max_steps) = [float(v) for v in params]
        self.max_newton = int(max_newton)
        self.max_steps = int(max_steps)
        self.n = len(self.degrees)
        n, T = self.n, len(self.coeffs)
        self.C = np.zeros((n, T), dtype=np.complex128)
        self.C[self.term_eq, np.arange(T)] = self.coeffs
        self.maxdeg = int(self.exps.max()) if T and n else 0

    def eval_target(self, x):
        return eval_terms(x, self.C, self.exps, self.maxdeg)

    def _homotopy(self, x, t):
        F, J = self.eval_target(x)
        d = self.degrees
        xd1 = x ** (d - 1)
        G = xd1 * x - 1.0
        g = (1.0 - t) * self.gamma
        H = g * G + t * F
        Hx = t * J
        Hx[np.diag_indices(self.n)] += g * d * xd1
        Ht = F - self.gamma * G
        return H, Hx, Ht

    def _velocity(self, x, t):
        _, Hx, Ht = self._homotopy(x, t)
        return -np.linalg.solve(Hx, Ht)

    def _correct(self, x, t, tol):
        for _ in range(self.max_newton):
            H, Hx, _ = self._homotopy(x, t)
            dx = np.linalg.solve(Hx, H)
            x = x - dx
            if np.max(np.abs(dx)) <= tol * (1.0 + np.max(np.abs(x))):
                return x, True
        return x, False

    def track(self, x0):
        x = np.array(x0, dtype=np.complex128)
        t, h = 0.0, self.step_init
        steps = rejected = streak = 0
        while t < 1.0:
            if steps + rejected >= self.max_steps:
                return MAXSTEPS, x, t, steps, rejected
            h = min(h, 1.0 - t)
            tol = self.endgame_tol if 1.0 - t < self.endgame_radius else self.tol
            ok = False
            try:
                k1 = self._velocity(x, t)
                k2 = self._velocity(x + 0.5 * h * k1, t + 0.5 * h)
                k3 = self._velocity(x + 0.5 * h * k2, t + 0.5 * h)
                k4 = self._velocity(x + h * k3, t + h)
                xp = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
                t1 = 1.0 if 1.0 - (t + h) < 1e-15 else t + h
                xc, ok = self._correct(xp, t1, tol)
                ok = ok and bool(np.all(np.isfinite(xc)))
                # a corrector that moves far relative to the step has likely jumped paths
                if ok and np.max(np.abs(xc - xp)) > 0.1 * np.max(np.abs(xp - x)) + tol * (1.0 + np.max(np.abs(xc))):
                    ok = False
            except np.linalg.LinAlgError:
                ok = False
            if ok:
                x, t = xc, t1
                steps += 1
                streak += 1
                if streak >= 3:
                    h = min(2.0 * h, self.step_max)
                    streak = 0
                if np.max(np.abs(x)) > self.divergence:
                    return DIVERGED, x, t, steps, rejected
            else:
                rejected += 1
                streak = 0
                h *= 0.5
                if h < self.step_min:
                    if np.max(np.abs(x)) > np.sqrt(self.divergence):
                        return DIVERGED, x, t, steps, rejected
                    if 1.0 - t < self.endgame_radius:
                        return SINGULAR, x, t, steps, rejected
                    return FAILED, x, t, steps, rejected
        return OK, x, t, steps, rejected

    def refine(self, x, tol, max_iter):
        """Newton on the target system; returns ``(x, iterations, converged)``."""
        x = np.array(x, dtype=np.complex128)
        for it in range(1, max_iter + 1):
            F, J = self.eval_target(x)
            try:
                dx = np.linalg.solve(J, F)
            except np.linalg.LinAlgError:
                return x, it, False
            x = x - dx
            if not np.all(np.isfinite(x)):
                return x, it, False
            if np.max(np.abs(dx)) <= tol * (1.0 + np.max(np.abs(x))):
                return x, it, True
        return x, max_iter, False
