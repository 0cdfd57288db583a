# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled path tracker.  Same algorithm and interface as ``_pytrack``."""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt

cnp.import_array()

cdef enum:
    OK = 0
    DIVERGED = 1
    FAILED = 2
    SINGULAR = 3
    MAXSTEPS = 4


cdef inline double cmod(double complex z) nogil:
    return sqrt(z.real * z.real + z.imag * z.imag)


cdef double maxabs(double complex[::1] v) nogil:
    cdef Py_ssize_t i
    cdef double m = 0.0, a
    for i in range(v.shape[0]):
        a = cmod(v[i])
        if a > m or a != a:
            m = a
    return m


cdef class PathTracker:
    cdef double complex[::1] coeffs
    cdef long long[:, ::1] exps
    cdef long long[::1] term_eq
    cdef long long[::1] degrees
    cdef double complex gamma
    cdef public double step_min, step_max, step_init, tol, endgame_radius, endgame_tol, divergence
    cdef public int max_newton, max_steps, n, T, maxdeg
    # work space
    cdef double complex[:, ::1] pw
    cdef double complex[::1] pre, suf, F, G, H, Ht, rhs, sol
    cdef double complex[:, ::1] J, Hx, LU
    cdef double complex[::1] x, xp, xc, xs, k1, k2, k3, k4

    def __init__(self, coeffs, exps, term_eq, degrees, gamma, params):
        self.coeffs = np.ascontiguousarray(coeffs, dtype=np.complex128)
        self.exps = np.ascontiguousarray(exps, dtype=np.int64)
        self.term_eq = np.ascontiguousarray(term_eq, dtype=np.int64)
        self.degrees = np.ascontiguousarray(degrees, dtype=np.int64)
        self.gamma = complex(gamma)
        (self.step_min, self.step_max, self.step_init, self.tol, self.endgame_radius,
         self.endgame_tol, self.divergence, mn, ms) = [float(v) for v in params]
        self.max_newton = int(mn)
        self.max_steps = int(ms)
        self.n = len(degrees)
        self.T = len(coeffs)
        self.maxdeg = int(np.max(exps)) if self.T and self.n else 0
        n = self.n
        z = lambda *s: np.zeros(s, dtype=np.complex128)
        self.pw = z(self.maxdeg + 1, max(n, 1))
        self.pre, self.suf = z(n + 1), z(n + 1)
        self.F, self.G, self.H, self.Ht, self.rhs, self.sol = z(n), z(n), z(n), z(n), z(n), z(n)
        self.J, self.Hx, self.LU = z(n, n), z(n, n), z(n, n)
        self.x, self.xp, self.xc, self.xs = z(n), z(n), z(n), z(n)
        self.k1, self.k2, self.k3, self.k4 = z(n), z(n), z(n), z(n)

    cdef void _eval(self, double complex[::1] x, bint jac) nogil:
        cdef int n = self.n, v, k, e, q
        cdef Py_ssize_t t
        cdef double complex c
        for v in range(n):
            self.pw[0, v] = 1.0
            for k in range(1, self.maxdeg + 1):
                self.pw[k, v] = self.pw[k - 1, v] * x[v]
            self.F[v] = 0.0
            if jac:
                for k in range(n):
                    self.J[v, k] = 0.0
        for t in range(self.T):
            c = self.coeffs[t]
            q = <int>self.term_eq[t]
            self.pre[0] = 1.0
            for v in range(n):
                self.pre[v + 1] = self.pre[v] * self.pw[self.exps[t, v], v]
            self.F[q] = self.F[q] + c * self.pre[n]
            if jac:
                self.suf[n] = 1.0
                for v in range(n - 1, -1, -1):
                    self.suf[v] = self.suf[v + 1] * self.pw[self.exps[t, v], v]
                for v in range(n):
                    e = <int>self.exps[t, v]
                    if e:
                        self.J[q, v] = self.J[q, v] + c * e * self.pw[e - 1, v] * self.pre[v] * self.suf[v + 1]

    cdef void _homotopy(self, double complex[::1] x, double t) nogil:
        cdef int n = self.n, i, j, d
        cdef double complex g = (1.0 - t) * self.gamma, xd1
        self._eval(x, True)
        for i in range(n):
            d = <int>self.degrees[i]
            xd1 = 1.0
            for j in range(d - 1):
                xd1 = xd1 * x[i]
            self.G[i] = xd1 * x[i] - 1.0
            self.H[i] = g * self.G[i] + t * self.F[i]
            self.Ht[i] = self.F[i] - self.gamma * self.G[i]
            for j in range(n):
                self.Hx[i, j] = t * self.J[i, j]
            self.Hx[i, i] = self.Hx[i, i] + g * d * xd1

    cdef bint _solve(self, double complex[:, ::1] A, double complex[::1] b, double complex[::1] out) nogil:
        """Gaussian elimination with partial pivoting on a copy of ``A``."""
        cdef int n = self.n, i, j, k, p
        cdef double best, a
        cdef double complex f, tmp
        for i in range(n):
            for j in range(n):
                self.LU[i, j] = A[i, j]
            out[i] = b[i]
        for k in range(n):
            p = k
            best = cmod(self.LU[k, k])
            for i in range(k + 1, n):
                a = cmod(self.LU[i, k])
                if a > best:
                    best, p = a, i
            if best == 0.0 or best != best:
                return False
            if p != k:
                for j in range(n):
                    tmp = self.LU[k, j]
                    self.LU[k, j] = self.LU[p, j]
                    self.LU[p, j] = tmp
                tmp = out[k]
                out[k] = out[p]
                out[p] = tmp
            for i in range(k + 1, n):
                f = self.LU[i, k] / self.LU[k, k]
                if f != 0:
                    for j in range(k + 1, n):
                        self.LU[i, j] = self.LU[i, j] - f * self.LU[k, j]
                    out[i] = out[i] - f * out[k]
        for i in range(n - 1, -1, -1):
            tmp = out[i]
            for j in range(i + 1, n):
                tmp = tmp - self.LU[i, j] * out[j]
            out[i] = tmp / self.LU[i, i]
        return True

    cdef bint _velocity(self, double complex[::1] x, double t, double complex[::1] out) nogil:
        cdef int i
        self._homotopy(x, t)
        if not self._solve(self.Hx, self.Ht, out):
            return False
        for i in range(self.n):
            out[i] = -out[i]
        return True

    cdef bint _correct(self, double complex[::1] x, double t, double tol) nogil:
        """Newton on ``H(., t)`` in place; True on convergence."""
        cdef int it, i, n = self.n
        cdef double step, size
        for it in range(self.max_newton):
            self._homotopy(x, t)
            if not self._solve(self.Hx, self.H, self.sol):
                return False
            step = 0.0
            for i in range(n):
                x[i] = x[i] - self.sol[i]
                if cmod(self.sol[i]) > step or cmod(self.sol[i]) != cmod(self.sol[i]):
                    step = cmod(self.sol[i])
            size = maxabs(x)
            if step <= tol * (1.0 + size):
                return True
        return False

    def eval_target(self, x):
        cdef double complex[::1] xv = np.ascontiguousarray(x, dtype=np.complex128)
        self._eval(xv, True)
        return np.array(self.F, copy=True), np.array(self.J, copy=True)

    def track(self, x0):
        cdef int n = self.n, i, steps = 0, rejected = 0, streak = 0
        cdef double t = 0.0, h = self.step_init, t1, tol, err, move
        cdef bint ok
        for i in range(n):
            self.x[i] = x0[i]
        with nogil:
            while t < 1.0:
                if steps + rejected >= self.max_steps:
                    break
                if h > 1.0 - t:
                    h = 1.0 - t
                tol = self.endgame_tol if 1.0 - t < self.endgame_radius else self.tol
                ok = self._velocity(self.x, t, self.k1)
                if ok:
                    for i in range(n):
                        self.xs[i] = self.x[i] + 0.5 * h * self.k1[i]
                    ok = self._velocity(self.xs, t + 0.5 * h, self.k2)
                if ok:
                    for i in range(n):
                        self.xs[i] = self.x[i] + 0.5 * h * self.k2[i]
                    ok = self._velocity(self.xs, t + 0.5 * h, self.k3)
                if ok:
                    for i in range(n):
                        self.xs[i] = self.x[i] + h * self.k3[i]
                    ok = self._velocity(self.xs, t + h, self.k4)
                if ok:
                    for i in range(n):
                        self.xp[i] = self.x[i] + (h / 6.0) * (self.k1[i] + 2.0 * self.k2[i]
                                                              + 2.0 * self.k3[i] + self.k4[i])
                        self.xc[i] = self.xp[i]
                    t1 = 1.0 if 1.0 - (t + h) < 1e-15 else t + h
                    ok = self._correct(self.xc, t1, tol)
                if ok:
                    err = 0.0
                    move = 0.0
                    for i in range(n):
                        if cmod(self.xc[i] - self.xp[i]) > err:
                            err = cmod(self.xc[i] - self.xp[i])
                        if cmod(self.xp[i] - self.x[i]) > move:
                            move = cmod(self.xp[i] - self.x[i])
                    if maxabs(self.xc) != maxabs(self.xc):
                        ok = False
                    elif err > 0.1 * move + tol * (1.0 + maxabs(self.xc)):
                        ok = False
                if ok:
                    for i in range(n):
                        self.x[i] = self.xc[i]
                    t = t1
                    steps += 1
                    streak += 1
                    if streak >= 3:
                        h = 2.0 * h
                        if h > self.step_max:
                            h = self.step_max
                        streak = 0
                    if maxabs(self.x) > self.divergence:
                        break
                else:
                    rejected += 1
                    streak = 0
                    h *= 0.5
                    if h < self.step_min:
                        break
        x = np.array(self.x, copy=True)
        size = maxabs(self.x)
        if t >= 1.0:
            return OK, x, t, steps, rejected
        if steps + rejected >= self.max_steps:
            return MAXSTEPS, x, t, steps, rejected
        if size > self.divergence:
            return DIVERGED, x, t, steps, rejected
        if size > sqrt(self.divergence):
            return DIVERGED, x, t, steps, rejected
        if 1.0 - t < self.endgame_radius:
            return SINGULAR, x, t, steps, rejected
        return FAILED, x, t, steps, rejected

    def refine(self, x, double tol, int max_iter):
        """Newton on the target system; returns ``(x, iterations, converged)``."""
        cdef double complex[::1] xv = np.array(x, dtype=np.complex128)
        cdef int it, i, n = self.n
        cdef double step
        for it in range(1, max_iter + 1):
            self._eval(xv, True)
            if not self._solve(self.J, self.F, self.sol):
                return np.array(xv), it, False
            step = 0.0
            for i in range(n):
                xv[i] = xv[i] - self.sol[i]
                if cmod(self.sol[i]) > step:
                    step = cmod(self.sol[i])
            if maxabs(xv) != maxabs(xv):
                return np.array(xv), it, False
            if step <= tol * (1.0 + maxabs(xv)):
                return np.array(xv), it, True
        return np.array(xv), max_iter, False
