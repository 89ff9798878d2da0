"""Dense two-phase primal simplex with exact-rational and float modes.

Problems have the form::

    maximize    c @ x
    subject to  A_ub @ x <= b_ub
                A_eq @ x == b_eq
                x[j] >= 0 where nonneg[j], x[j] free otherwise

Free variables are split into a difference of two nonnegative columns.
Every row gets an identity column in the starting basis (its slack when the
row is a ``<=`` row with nonnegative right-hand side, an artificial column
otherwise), so the final tableau columns of that starting basis hold B^-1
and the duals come out as ``c_B @ B^-1`` without a separate solve.

Exact mode pivots on ``Fraction`` entries with Bland's rule throughout.
Float mode uses the largest-coefficient rule and switches to Bland's rule
after ``10 * rows`` pivots to rule out cycling on degenerate vertices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational

import numpy as np

from diamond_relay.errors import InvalidArgumentError

FLOAT_TOL = 1e-9
CERT_TOL = 1e-7

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass
class LinearProgram:
    """``maximize c@x`` over ``<=`` rows, ``==`` rows and per-variable sign restrictions.

    Coefficient arrays may hold floats or exact rationals (object dtype).
    """

    c: np.ndarray
    A_ub: np.ndarray | None = None
    b_ub: np.ndarray | None = None
    A_eq: np.ndarray | None = None
    b_eq: np.ndarray | None = None
    nonneg: np.ndarray | None = None

    def __post_init__(self):
        self.c = _as_array(self.c)
        nv = self.c.shape[0]
        self.A_ub = _as_matrix(self.A_ub, nv)
        self.A_eq = _as_matrix(self.A_eq, nv)
        self.b_ub = _as_array(self.b_ub if self.b_ub is not None else [], self.A_ub.dtype)
        self.b_eq = _as_array(self.b_eq if self.b_eq is not None else [], self.A_eq.dtype)
        if self.nonneg is None:
            self.nonneg = np.ones(nv, dtype=bool)
        self.nonneg = np.asarray(self.nonneg, dtype=bool)
        if self.A_ub.shape[1] != nv or self.A_eq.shape[1] != nv:
            raise InvalidArgumentError("constraint rows must have the same width as the objective")
        if self.b_ub.shape[0] != self.A_ub.shape[0] or self.b_eq.shape[0] != self.A_eq.shape[0]:
            raise InvalidArgumentError("right-hand side length does not match the number of rows")
        if self.nonneg.shape[0] != nv:
            raise InvalidArgumentError("sign restriction vector has the wrong length")
        for arr in (self.c, self.A_ub, self.b_ub, self.A_eq, self.b_eq):
            if arr.dtype != object:
                finite = bool(np.isfinite(arr).all())
            else:
                finite = all(math.isfinite(v) for v in arr.flat)
            if not finite:
                raise InvalidArgumentError("LP coefficients must be finite")

    @property
    def num_vars(self) -> int:
        return self.c.shape[0]

    @property
    def num_ub(self) -> int:
        return self.A_ub.shape[0]

    @property
    def num_eq(self) -> int:
        return self.A_eq.shape[0]

    @property
    def num_rows(self) -> int:
        return self.num_ub + self.num_eq


@dataclass
class LpSolution:
    """Solver output. ``dual`` lists the ``<=`` rows first, then the ``==`` rows."""

    status: str
    mode: str
    value: float | Fraction | None = None
    primal: list = field(default_factory=list)
    dual: list = field(default_factory=list)
    tight: frozenset = frozenset()
    pivots: int = 0


def _as_array(v, dtype=None) -> np.ndarray:
    arr = np.asarray(v) if dtype is None else np.asarray(v, dtype=dtype)
    if arr.dtype.kind not in "fiO" and arr.size:
        arr = arr.astype(float)
    return arr.reshape(-1)


def _as_matrix(A, nv: int) -> np.ndarray:
    if A is None:
        return np.zeros((0, nv))
    A = np.asarray(A)
    if A.size == 0:
        return np.zeros((0, nv), dtype=A.dtype if A.dtype.kind in "fO" else float)
    if A.ndim != 2:
        raise InvalidArgumentError("constraint matrix must be two-dimensional")
    return A


def solve(lp: LinearProgram, mode: str = "float") -> LpSolution:
    if mode == "float":
        return _FloatSimplex(lp).run()
    if mode == "exact":
        return _ExactSimplex(lp).run()
    raise InvalidArgumentError(f"unknown LP mode {mode!r}")


def support(sol: LpSolution, tol: float = FLOAT_TOL) -> set[int]:
    """1-based positions of the primal variables that are nonzero at the solution."""
    if sol.mode == "exact":
        return {j for j, v in enumerate(sol.primal, start=1) if v != 0}
    return {j for j, v in enumerate(sol.primal, start=1) if abs(v) > tol}


def to_fraction(v) -> Fraction:
    """Exact conversion for exact mode; rejects anything that is not a finite rational or float."""
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return Fraction(int(v))
    if isinstance(v, (float, np.floating)):
        if not math.isfinite(v):
            raise InvalidArgumentError(f"non-finite coefficient {v!r}")
        return Fraction(float(v))
    if isinstance(v, Rational):
        return Fraction(v.numerator, v.denominator)
    raise InvalidArgumentError(f"exact mode needs rational coefficients, got {type(v).__name__} {v!r}")


class _Standardized:
    """Column/row bookkeeping shared by both modes.

    Columns: split structural columns, then one slack per ``<=`` row, then
    artificials for rows that cannot start on their slack.
    """

    def __init__(self, lp: LinearProgram, rhs_sign):
        self.lp = lp
        self.col_of = []  # (original var, +1/-1) per structural column
        for j in range(lp.num_vars):
            self.col_of.append((j, 1))
            if not lp.nonneg[j]:
                self.col_of.append((j, -1))
        m_ub, m = lp.num_ub, lp.num_rows
        self.m = m
        self.sign = [-1 if neg else 1 for neg in rhs_sign]
        self.n_struct = len(self.col_of)
        self.slack0 = self.n_struct
        self.art_rows = [i for i in range(m) if i >= m_ub or self.sign[i] < 0]
        self.art0 = self.slack0 + m_ub
        self.ncols = self.art0 + len(self.art_rows)
        self.init_col = [self.slack0 + i for i in range(m_ub)] + [0] * lp.num_eq
        for k, i in enumerate(self.art_rows):
            self.init_col[i] = self.art0 + k

    def primal_from_basis(self, basis, rhs_vals, zero) -> list:
        xs = {}
        for i, b in enumerate(basis):
            xs[int(b)] = rhs_vals[i]
        x = [zero] * self.lp.num_vars
        for c, (j, sj) in enumerate(self.col_of):
            if c in xs:
                x[j] = x[j] + xs[c] * sj
        return x


def _scale_factor(big: np.ndarray, small: np.ndarray) -> np.ndarray:
    f = np.ones_like(big)
    live = big > 0
    f[live] = 1.0 / np.sqrt(big[live] * small[live])
    return f


def _equilibrate(A: np.ndarray, passes: int = 4) -> tuple[np.ndarray, np.ndarray]:
    """Power-of-two row and column scales that bring nonzero magnitudes toward 1.

    Alternating geometric-mean passes; powers of two keep the scaling itself
    free of rounding.
    """
    m, n = A.shape
    rs, cs = np.ones(m), np.ones(n)
    absA = np.abs(A)
    nz = absA > 0
    if not nz.any():
        return rs, cs
    for _ in range(passes):
        S = absA * rs[:, None] * cs[None, :]
        big = np.where(nz, S, 0.0).max(axis=1)
        small = np.where(nz, S, np.inf).min(axis=1)
        rs *= _scale_factor(big, small)
        S = absA * rs[:, None] * cs[None, :]
        big = np.where(nz, S, 0.0).max(axis=0)
        small = np.where(nz, S, np.inf).min(axis=0)
        cs *= _scale_factor(big, small)
    return np.exp2(np.round(np.log2(rs))), np.exp2(np.round(np.log2(cs)))


class _FloatSimplex:
    def __init__(self, lp: LinearProgram):
        self.lp = lp
        A = np.vstack([lp.A_ub.astype(float), lp.A_eq.astype(float)]).reshape(lp.num_rows, lp.num_vars)
        b = np.concatenate([lp.b_ub.astype(float), lp.b_eq.astype(float)])
        self.row_scale, self.col_scale = _equilibrate(A)
        A = A * self.row_scale[:, None] * self.col_scale[None, :]
        b = b * self.row_scale
        self.std = s = _Standardized(lp, b < 0)
        sign = np.array(s.sign, dtype=float)
        T = np.zeros((s.m, s.ncols))
        cols = np.array([j for j, _ in s.col_of], dtype=int)
        csign = np.array([sj for _, sj in s.col_of], dtype=float)
        T[:, : s.n_struct] = A[:, cols] * csign * sign[:, None]
        ub = np.arange(lp.num_ub)
        T[ub, s.slack0 + ub] = sign[: lp.num_ub]
        arts = np.array(s.art_rows, dtype=int)
        T[arts, s.art0 + np.arange(arts.size)] = 1.0
        self.T0 = T
        self.rhs0 = b * sign
        self.T = T.copy()
        self.rhs = self.rhs0.copy()
        self.basis = np.array(s.init_col, dtype=int)
        self.cost = np.zeros(s.ncols)
        self.cost[: s.n_struct] = (lp.c.astype(float) * self.col_scale)[cols] * csign
        self.pivots = 0
        self.tol = FLOAT_TOL

    def _reduced(self, cost):
        return cost - cost[self.basis] @ self.T

    def _reinvert(self):
        """Rebuild the tableau from the original rows through a fresh factorization of B."""
        B = self.T0[:, self.basis]
        try:
            sol = np.linalg.solve(B, np.column_stack([self.T0, self.rhs0]))
        except np.linalg.LinAlgError:
            return
        self.T = sol[:, :-1]
        self.rhs = sol[:, -1]
        self.T[np.abs(self.T) < 1e-14] = 0.0
        self.T[np.arange(self.std.m), self.basis] = 1.0

    def _pivot(self, r, j, d):
        T = self.T
        piv = T[r, j]
        prow = T[r] / piv
        rr = self.rhs[r] / piv
        col = T[:, j].copy()
        col[r] = 0.0
        nz = np.nonzero(col)[0]
        if nz.size:
            T[nz] -= np.outer(col[nz], prow)
            self.rhs[nz] -= col[nz] * rr
        T[r] = prow
        T[r, j] = 1.0
        T[nz, j] = 0.0
        self.rhs[r] = rr
        d -= d[j] * prow
        d[j] = 0.0
        self.basis[r] = j
        self.pivots += 1

    def _choose_row(self, j, bland):
        tol = self.tol
        colj = self.T[:, j]
        rows = np.nonzero(colj > tol)[0]
        if rows.size == 0:
            return None
        rhs = np.maximum(self.rhs[rows], 0.0)
        a = colj[rows]
        if bland:
            ratios = rhs / a
            best = ratios.min()
            ties = rows[ratios <= best]
            return int(ties[np.argmin(self.basis[ties])])
        # Harris two-pass test: relax the step by the feasibility tolerance,
        # then take the largest pivot element among rows within that step.
        step = ((rhs + tol) / a).min()
        within = rhs / a <= step
        return int(rows[within][np.argmax(a[within])])

    def _loop(self, cost, allowed):
        d = self._reduced(cost)
        tol = self.tol
        m = max(self.std.m, 1)
        refactor = max(50, m)
        local = 0
        rechecks = 0
        while True:
            cand = np.nonzero((d > tol) & allowed)[0]
            if cand.size == 0:
                self._reinvert()
                d = self._reduced(cost)
                cand = np.nonzero((d > tol) & allowed)[0]
                if cand.size == 0 or rechecks >= 5:
                    return OPTIMAL
                rechecks += 1
            bland = local >= 10 * m
            j = int(cand[0]) if bland else int(cand[np.argmax(d[cand])])
            r = self._choose_row(j, bland)
            if r is None:
                return UNBOUNDED
            self._pivot(r, j, d)
            local += 1
            if local % refactor == 0:
                self._reinvert()
                d = self._reduced(cost)

    def run(self) -> LpSolution:
        s = self.std
        ncols = s.ncols
        is_art = np.zeros(ncols, dtype=bool)
        is_art[s.art0:] = True
        if s.art_rows:
            c1 = np.where(is_art, -1.0, 0.0)
            self._loop(c1, np.ones(ncols, dtype=bool))
            infeas = float(np.sum(self.rhs[is_art[self.basis]]))
            if infeas > self.tol * (1.0 + float(np.abs(self.rhs0).max(initial=0.0))):
                return LpSolution(INFEASIBLE, "float", pivots=self.pivots)
            self._drive_out_artificials(is_art)
        cost = self.cost
        status = self._loop(cost, ~is_art)
        if status != OPTIMAL:
            return LpSolution(status, "float", pivots=self.pivots)
        return self._finish(cost)

    def _drive_out_artificials(self, is_art):
        d = np.zeros(self.std.ncols)
        for r in range(self.std.m):
            if not is_art[self.basis[r]]:
                continue
            row = np.where(is_art, 0.0, np.abs(self.T[r]))
            j = int(np.argmax(row))
            if row[j] > self.tol:
                self._pivot(r, j, d)
            # otherwise the row is redundant; its artificial stays basic at zero

    def _finish(self, cost) -> LpSolution:
        s, lp = self.std, self.lp
        rhs = np.where(self.rhs < 0, 0.0, self.rhs)
        x = np.array(s.primal_from_basis(self.basis, rhs, 0.0), dtype=float) * self.col_scale
        try:
            y_adj = np.linalg.solve(self.T0[:, self.basis].T, cost[self.basis])
        except np.linalg.LinAlgError:
            y_adj = cost[self.basis] @ self.T[:, s.init_col]
        y = y_adj * np.array(s.sign, dtype=float) * self.row_scale
        y[: lp.num_ub] = np.maximum(y[: lp.num_ub], 0.0)
        value = float(lp.c.astype(float) @ x)
        tight = _tight_rows(lp, x, float)
        return LpSolution(OPTIMAL, "float", value, list(x), list(y), frozenset(tight), self.pivots)


class _ExactSimplex:
    def __init__(self, lp: LinearProgram):
        self.lp = lp
        F = to_fraction
        rows = [[F(a) for a in row] for row in lp.A_ub] + [[F(a) for a in row] for row in lp.A_eq]
        b = [F(v) for v in lp.b_ub] + [F(v) for v in lp.b_eq]
        self.std = s = _Standardized(lp, [v < 0 for v in b])
        zero, one = Fraction(0), Fraction(1)
        self.T = []
        for i in range(s.m):
            sg = s.sign[i]
            row = [zero] * s.ncols
            for c, (j, sj) in enumerate(s.col_of):
                row[c] = rows[i][j] * (sg * sj)
            if i < lp.num_ub:
                row[s.slack0 + i] = Fraction(sg)
            if s.init_col[i] >= s.art0:
                row[s.init_col[i]] = one
            self.T.append(row)
        self.rhs = [b[i] * s.sign[i] for i in range(s.m)]
        self.basis = list(s.init_col)
        self.cost = [zero] * s.ncols
        for c, (j, sj) in enumerate(s.col_of):
            self.cost[c] = F(lp.c[j]) * sj
        self.pivots = 0

    def _reduced(self, cost):
        d = list(cost)
        for i, b in enumerate(self.basis):
            cb = cost[b]
            if cb:
                row = self.T[i]
                for k in range(len(d)):
                    if row[k]:
                        d[k] -= cb * row[k]
        return d

    def _pivot(self, r, j, d):
        T = self.T
        piv = T[r][j]
        prow = T[r]
        nz = [k for k, v in enumerate(prow) if v]
        for k in nz:
            prow[k] = prow[k] / piv
        self.rhs[r] = self.rhs[r] / piv
        rr = self.rhs[r]
        for i in range(len(T)):
            if i == r:
                continue
            f = T[i][j]
            if f:
                row = T[i]
                for k in nz:
                    row[k] -= f * prow[k]
                self.rhs[i] -= f * rr
        f = d[j]
        if f:
            for k in nz:
                d[k] -= f * prow[k]
        self.basis[r] = j
        self.pivots += 1

    def _loop(self, cost, allowed):
        d = self._reduced(cost)
        while True:
            j = next((k for k, v in enumerate(d) if v > 0 and allowed[k]), None)
            if j is None:
                return OPTIMAL
            best = None
            for i, row in enumerate(self.T):
                a = row[j]
                if a > 0:
                    key = (self.rhs[i] / a, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return UNBOUNDED
            self._pivot(best[1], j, d)

    def run(self) -> LpSolution:
        s = self.std
        is_art = [k >= s.art0 for k in range(s.ncols)]
        if s.art_rows:
            c1 = [Fraction(-1) if a else Fraction(0) for a in is_art]
            self._loop(c1, [True] * s.ncols)
            if any(is_art[b] and self.rhs[i] != 0 for i, b in enumerate(self.basis)):
                return LpSolution(INFEASIBLE, "exact", pivots=self.pivots)
            d = [Fraction(0)] * s.ncols
            for r in range(s.m):
                if is_art[self.basis[r]]:
                    j = next((k for k in range(s.ncols) if not is_art[k] and self.T[r][k] != 0), None)
                    if j is not None:
                        self._pivot(r, j, d)
        cost = self.cost
        status = self._loop(cost, [not a for a in is_art])
        if status != OPTIMAL:
            return LpSolution(status, "exact", pivots=self.pivots)
        x = s.primal_from_basis(self.basis, self.rhs, Fraction(0))
        y = []
        for i in range(s.m):
            col = s.init_col[i]
            yi = sum((cost[b] * self.T[r][col] for r, b in enumerate(self.basis)), Fraction(0))
            y.append(yi * s.sign[i])
        value = sum((to_fraction(cj) * xj for cj, xj in zip(self.lp.c, x)), Fraction(0))
        tight = _tight_rows(self.lp, x, to_fraction)
        return LpSolution(OPTIMAL, "exact", value, x, y, frozenset(tight), self.pivots)


def _row_activity(A, x, conv):
    if conv is float:
        return np.asarray(A, dtype=float) @ np.asarray(x, dtype=float)
    return [sum((conv(a) * xj for a, xj in zip(row, x) if a), Fraction(0)) for row in A]


def _tight_rows(lp: LinearProgram, x, conv) -> set[int]:
    tight = set()
    act = _row_activity(lp.A_ub, x, conv)
    for i in range(lp.num_ub):
        slack = conv(lp.b_ub[i]) - act[i]
        if conv is float:
            if abs(slack) <= FLOAT_TOL * (1.0 + abs(float(lp.b_ub[i]))):
                tight.add(i)
        elif slack == 0:
            tight.add(i)
    tight.update(range(lp.num_ub, lp.num_rows))
    return tight


def check_certificate(lp: LinearProgram, sol: LpSolution, tol: float = CERT_TOL) -> list[str]:
    """Verify optimality of ``sol`` from the LP data alone.

    Checks primal feasibility, dual feasibility, complementary slackness and
    equality of the primal and dual objectives. Returns the list of
    violations found; an empty list means the pair is a valid optimality
    certificate. Exact solutions are checked with zero tolerance.
    """
    if sol.status != OPTIMAL:
        return [f"solution status is {sol.status}, not optimal"]
    exact = sol.mode == "exact"
    if exact:
        return _check_exact(lp, sol)
    return _check_float(lp, sol, tol)


def _check_float(lp: LinearProgram, sol: LpSolution, tol: float) -> list[str]:
    out = []
    x = np.asarray(sol.primal, dtype=float)
    y = np.asarray(sol.dual, dtype=float)
    if x.shape[0] != lp.num_vars or y.shape[0] != lp.num_rows:
        return ["primal or dual vector has the wrong length"]
    A_ub = lp.A_ub.astype(float)
    A_eq = lp.A_eq.astype(float)
    b_ub = lp.b_ub.astype(float)
    b_eq = lp.b_eq.astype(float)
    c = lp.c.astype(float)
    y_ub, y_eq = y[: lp.num_ub], y[lp.num_ub:]

    act_ub = A_ub @ x
    scale_ub = 1.0 + np.abs(A_ub) @ np.abs(x) + np.abs(b_ub)
    for i in np.nonzero(act_ub - b_ub > tol * scale_ub)[0]:
        out.append(f"primal: inequality row {i} violated by {act_ub[i] - b_ub[i]:.3g}")
    act_eq = A_eq @ x
    scale_eq = 1.0 + np.abs(A_eq) @ np.abs(x) + np.abs(b_eq)
    for i in np.nonzero(np.abs(act_eq - b_eq) > tol * scale_eq)[0]:
        out.append(f"primal: equality row {i} off by {act_eq[i] - b_eq[i]:.3g}")
    for j in np.nonzero(lp.nonneg & (x < -tol * (1.0 + np.abs(x).max(initial=0.0))))[0]:
        out.append(f"primal: variable {j} negative ({x[j]:.3g})")

    ymax = 1.0 + np.abs(y).max(initial=0.0)
    for i in np.nonzero(y_ub < -tol * ymax)[0]:
        out.append(f"dual: multiplier of inequality row {i} negative ({y_ub[i]:.3g})")
    red = A_ub.T @ y_ub + A_eq.T @ y_eq - c
    scale_red = 1.0 + np.abs(A_ub.T) @ np.abs(y_ub) + np.abs(A_eq.T) @ np.abs(y_eq) + np.abs(c)
    for j in range(lp.num_vars):
        if lp.nonneg[j]:
            if red[j] < -tol * scale_red[j]:
                out.append(f"dual: constraint of variable {j} violated by {red[j]:.3g}")
        elif abs(red[j]) > tol * scale_red[j]:
            out.append(f"dual: free variable {j} has nonzero reduced cost {red[j]:.3g}")

    for i in range(lp.num_ub):
        gap = abs(y_ub[i] * (b_ub[i] - act_ub[i]))
        if gap > tol * (1.0 + abs(y_ub[i])) * scale_ub[i]:
            out.append(f"slackness: inequality row {i} has product {gap:.3g}")
    for j in range(lp.num_vars):
        if lp.nonneg[j]:
            gap = abs(x[j] * red[j])
            if gap > tol * (1.0 + abs(x[j])) * scale_red[j]:
                out.append(f"slackness: variable {j} has product {gap:.3g}")

    pv = c @ x
    dv = b_ub @ y_ub + b_eq @ y_eq
    if abs(pv - dv) > tol * (1.0 + abs(pv)):
        out.append(f"duality gap {pv - dv:.3g} (primal {pv!r}, dual {dv!r})")
    if sol.value is not None and abs(sol.value - pv) > tol * (1.0 + abs(pv)):
        out.append(f"reported value {sol.value!r} differs from c@x = {pv!r}")
    return out


def _check_exact(lp: LinearProgram, sol: LpSolution) -> list[str]:
    out = []
    x = [to_fraction(v) for v in sol.primal]
    y = [to_fraction(v) for v in sol.dual]
    if len(x) != lp.num_vars or len(y) != lp.num_rows:
        return ["primal or dual vector has the wrong length"]
    F = to_fraction
    A_ub = [[F(a) for a in row] for row in lp.A_ub]
    A_eq = [[F(a) for a in row] for row in lp.A_eq]
    b_ub = [F(b) for b in lp.b_ub]
    b_eq = [F(b) for b in lp.b_eq]
    c = [F(v) for v in lp.c]
    y_ub, y_eq = y[: lp.num_ub], y[lp.num_ub:]

    act_ub = [sum((a * xj for a, xj in zip(row, x) if a), Fraction(0)) for row in A_ub]
    act_eq = [sum((a * xj for a, xj in zip(row, x) if a), Fraction(0)) for row in A_eq]
    for i, (a, b) in enumerate(zip(act_ub, b_ub)):
        if a > b:
            out.append(f"primal: inequality row {i} violated by {a - b}")
    for i, (a, b) in enumerate(zip(act_eq, b_eq)):
        if a != b:
            out.append(f"primal: equality row {i} off by {a - b}")
    for j, v in enumerate(x):
        if lp.nonneg[j] and v < 0:
            out.append(f"primal: variable {j} negative ({v})")
    for i, v in enumerate(y_ub):
        if v < 0:
            out.append(f"dual: multiplier of inequality row {i} negative ({v})")
    for j in range(lp.num_vars):
        red = (sum((A_ub[i][j] * y_ub[i] for i in range(lp.num_ub)), Fraction(0))
               + sum((A_eq[i][j] * y_eq[i] for i in range(lp.num_eq)), Fraction(0)) - c[j])
        if lp.nonneg[j]:
            if red < 0:
                out.append(f"dual: constraint of variable {j} violated by {red}")
            elif red * x[j] != 0:
                out.append(f"slackness: variable {j} has product {red * x[j]}")
        elif red != 0:
            out.append(f"dual: free variable {j} has nonzero reduced cost {red}")
    for i in range(lp.num_ub):
        if y_ub[i] * (b_ub[i] - act_ub[i]) != 0:
            out.append(f"slackness: inequality row {i} is slack but priced")
    pv = sum((cj * xj for cj, xj in zip(c, x)), Fraction(0))
    dv = sum((b * v for b, v in zip(b_ub, y_ub)), Fraction(0)) + sum(
        (b * v for b, v in zip(b_eq, y_eq)), Fraction(0))
    if pv != dv:
        out.append(f"duality gap {pv - dv}")
    if sol.value is not None and to_fraction(sol.value) != pv:
        out.append(f"reported value {sol.value} differs from c@x = {pv}")
    return out
