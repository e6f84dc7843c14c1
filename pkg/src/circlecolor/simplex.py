"""Dense two-phase primal simplex.

Solves the continuous models built in lpmodels (integrality is ignored;
callers relax explicitly).  Dantzig pricing with a switch to Bland's rule
after 3*(rows+cols) degenerate pivots; a two-phase start keeps the duals
clean for the duality checks the rest of the package relies on.

Dual sign convention: for a minimization problem the returned row duals
satisfy y >= 0 on '>=' rows, y <= 0 on '<=' rows, free on '='; signs flip
for maximization.  At an optimum with no active variable upper bounds,
sum(y_r * rhs_r) equals the objective.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import NumericalFailureError
from .lpmodels import LpModel

INF = math.inf


@dataclass
class SimplexOptions:
    feas_tol: float = 1e-9
    opt_tol: float = 1e-9
    int_tol: float = 1e-6
    pivot_tol: float = 1e-9
    max_iter: int = 200000


DEFAULT_OPTIONS = SimplexOptions()


@dataclass
class LpSolution:
    status: str  # 'optimal' | 'infeasible' | 'unbounded'
    objective: float | None
    primal: dict = field(default_factory=dict)
    dual: dict = field(default_factory=dict)
    iterations: int = 0


class _Standardized:
    """Equality-free standard form: rows A x (rel) b with x >= 0 columns."""

    def __init__(self):
        self.col_source = []   # per column: (var_index, mode) with mode in {+1,-1}
        self.col_of_var = {}   # var_index -> (kind, data)
        self.rows = []         # (coeff dict col->val, rel, rhs, origin)
        self.fixed = {}        # var_index -> value


def _standardize(model: LpModel, overrides, feas_tol):
    std = _Standardized()
    shift = {}
    for k, v in enumerate(model.variables):
        lo, hi = v.lower, v.upper
        if overrides and v.name in overrides:
            olo, ohi = overrides[v.name]
            lo, hi = max(lo, olo), min(hi, ohi)
        if lo > hi + feas_tol:
            return None, None  # contradictory bounds
        if hi - lo <= feas_tol and hi < INF:
            std.fixed[k] = lo
            continue
        if lo == -INF and hi == INF:
            p = len(std.col_source)
            std.col_source.append((k, +1))
            std.col_source.append((k, -1))
            std.col_of_var[k] = ("free", p)
        elif lo > -INF:
            p = len(std.col_source)
            std.col_source.append((k, +1))
            std.col_of_var[k] = ("shift", p)
            shift[k] = lo
            if hi < INF:
                std.rows.append(({p: 1.0}, "<=", hi - lo, None))
        else:  # lo == -inf, hi finite: x = hi - x'
            p = len(std.col_source)
            std.col_source.append((k, -1))
            std.col_of_var[k] = ("mirror", p)
            shift[k] = hi
    index = model._index
    for r, con in enumerate(model.constraints):
        coeffs = {}
        rhs = con.rhs
        for name, coef in con.coeffs.items():
            k = index[name]
            if k in std.fixed:
                rhs -= coef * std.fixed[k]
                continue
            kind, p = std.col_of_var[k]
            if kind == "free":
                coeffs[p] = coeffs.get(p, 0.0) + coef
                coeffs[p + 1] = coeffs.get(p + 1, 0.0) - coef
            elif kind == "shift":
                coeffs[p] = coeffs.get(p, 0.0) + coef
                rhs -= coef * shift[k]
            else:  # mirror
                coeffs[p] = coeffs.get(p, 0.0) - coef
                rhs -= coef * shift[k]
        if not coeffs:
            ok = {
                "<=": rhs >= -feas_tol,
                ">=": rhs <= feas_tol,
                "=": abs(rhs) <= feas_tol,
            }[con.relation]
            if not ok:
                return None, None
            continue
        std.rows.append((coeffs, con.relation, rhs, r))
    return std, shift


def _pivot(T, row, col):
    T[row] /= T[row, col]
    factors = T[:, col].copy()
    factors[row] = 0.0
    T -= np.outer(factors, T[row])


def _optimize(T, basis, allowed, m, opts):
    """Pivot until the cost row (row m) has no improving allowed column.

    Returns ('optimal' | 'unbounded', iterations).
    """
    iters = 0
    degenerate = 0
    bland_after = 3 * (m + len(allowed))
    allowed_idx = np.fromiter(allowed, dtype=np.int64) if allowed else np.empty(0, dtype=np.int64)
    while True:
        cost = T[m, :-1]
        if degenerate <= bland_after:
            if allowed_idx.size == 0:
                return "optimal", iters
            rel = cost[allowed_idx]
            jpos = int(np.argmin(rel))
            if rel[jpos] >= -opts.opt_tol:
                return "optimal", iters
            j = int(allowed_idx[jpos])
        else:
            j = -1
            for cand in allowed:
                if cost[cand] < -opts.opt_tol:
                    j = cand
                    break
            if j < 0:
                return "optimal", iters
        col = T[:m, j]
        pos = np.nonzero(col > opts.pivot_tol)[0]
        if pos.size == 0:
            return "unbounded", iters
        ratios = T[pos, -1] / col[pos]
        best = np.min(ratios)
        ties = pos[ratios <= best + opts.feas_tol]
        # deterministic leaving choice; prefer lowest basis index on ties
        r = int(min(ties, key=lambda i: basis[i]))
        if best <= opts.feas_tol:
            degenerate += 1
        else:
            degenerate = 0
        _pivot(T, r, j)
        basis[r] = j
        iters += 1
        if iters > opts.max_iter:
            raise NumericalFailureError(f"simplex exceeded {opts.max_iter} pivots")


def solve_lp(model: LpModel, options: SimplexOptions | None = None,
             bound_overrides: dict | None = None) -> LpSolution:
    """Solve the continuous model; integrality markers are ignored.

    bound_overrides maps variable names to (lower, upper) pairs tightened
    on top of the model's own bounds (used by branch-and-bound).
    """
    opts = options or DEFAULT_OPTIONS
    std, shift = _standardize(model, bound_overrides, opts.feas_tol)
    if std is None:
        return LpSolution(status="infeasible", objective=None)

    sense_mul = 1.0 if model.sense == "min" else -1.0
    n_struct = len(std.col_source)
    index = model._index
    c_struct = np.zeros(n_struct)
    for name, coef in model.objective.items():
        k = index[name]
        if k in std.fixed:
            continue
        kind, p = std.col_of_var[k]
        if kind == "free":
            c_struct[p] += sense_mul * coef
            c_struct[p + 1] -= sense_mul * coef
        elif kind == "shift":
            c_struct[p] += sense_mul * coef
        else:
            c_struct[p] -= sense_mul * coef

    m = len(std.rows)
    # column layout: structural | slack/surplus | artificial
    n_slack = sum(1 for _, rel, _, _ in std.rows if rel != "=")
    rows_flipped = []
    A = np.zeros((m, n_struct + n_slack))
    b = np.zeros(m)
    art_rows = []
    slack_pos = n_struct
    slack_col_of_row = {}
    for i, (coeffs, rel, rhs, _) in enumerate(std.rows):
        flip = rhs < 0
        rows_flipped.append(flip)
        sgn = -1.0 if flip else 1.0
        for p, val in coeffs.items():
            A[i, p] = sgn * val
        b[i] = sgn * rhs
        erel = rel if not flip else {"<=": ">=", ">=": "<=", "=": "="}[rel]
        if erel == "<=":
            A[i, slack_pos] = 1.0
            slack_col_of_row[i] = slack_pos
            slack_pos += 1
        elif erel == ">=":
            A[i, slack_pos] = -1.0
            slack_col_of_row[i] = slack_pos
            slack_pos += 1
            art_rows.append(i)
        else:
            art_rows.append(i)
    n_art = len(art_rows)
    if n_art:
        art_block = np.zeros((m, n_art))
        for k, i in enumerate(art_rows):
            art_block[i, k] = 1.0
        A = np.hstack([A, art_block])
    ncols = A.shape[1]
    basis = [0] * m
    for i in range(m):
        if i in slack_col_of_row and i not in art_rows:
            basis[i] = slack_col_of_row[i]
    for k, i in enumerate(art_rows):
        basis[i] = n_struct + n_slack + k

    T = np.zeros((m + 1, ncols + 1))
    T[:m, :ncols] = A
    T[:m, -1] = b
    iterations = 0

    nonart = list(range(n_struct + n_slack))
    if n_art:
        d = np.zeros(ncols)
        d[n_struct + n_slack:] = 1.0
        T[m, :ncols] = d
        for i in art_rows:
            T[m] -= T[i]
        status, it1 = _optimize(T, basis, nonart, m, opts)
        iterations += it1
        phase1 = -T[m, -1]
        if phase1 > opts.feas_tol * max(1.0, float(np.abs(b).max(initial=0.0))):
            return LpSolution(status="infeasible", objective=None, iterations=iterations)
        # drive basic artificials out where possible; leftover rows are
        # redundant and stay inert
        for i in range(m):
            if basis[i] >= n_struct + n_slack:
                row = T[i, : n_struct + n_slack]
                j = int(np.argmax(np.abs(row)))
                if abs(row[j]) > opts.pivot_tol:
                    _pivot(T, i, j)
                    basis[i] = j
                    iterations += 1

    c_ext = np.zeros(ncols)
    c_ext[:n_struct] = c_struct
    T[m, :ncols] = c_ext
    T[m, -1] = 0.0
    for i in range(m):
        if abs(c_ext[basis[i]]) > 0.0:
            T[m] -= c_ext[basis[i]] * T[i]
    status, it2 = _optimize(T, basis, nonart, m, opts)
    iterations += it2
    if status == "unbounded":
        return LpSolution(status="unbounded", objective=None, iterations=iterations)

    x_std = np.zeros(ncols)
    for i in range(m):
        x_std[basis[i]] = T[i, -1]
    primal = {}
    for k, v in enumerate(model.variables):
        if k in std.fixed:
            primal[v.name] = float(std.fixed[k])
            continue
        kind, p = std.col_of_var[k]
        if kind == "free":
            primal[v.name] = float(x_std[p] - x_std[p + 1])
        elif kind == "shift":
            primal[v.name] = float(shift[k] + x_std[p])
        else:
            primal[v.name] = float(shift[k] - x_std[p])
    objective = sum(coef * primal[name] for name, coef in model.objective.items())

    dual = {}
    if m:
        B = A[:, basis]
        try:
            y = np.linalg.solve(B.T, c_ext[np.array(basis)])
        except np.linalg.LinAlgError:
            y = np.linalg.lstsq(B.T, c_ext[np.array(basis)], rcond=None)[0]
        row_iter = 0
        for coeffs, rel, rhs, origin in std.rows:
            if origin is not None:
                val = float(y[row_iter])
                if rows_flipped[row_iter]:
                    val = -val
                dual[model.constraints[origin].name] = sense_mul * val
            row_iter += 1
    else:
        for con in model.constraints:
            dual.setdefault(con.name, 0.0)
    for con in model.constraints:
        dual.setdefault(con.name, 0.0)

    return LpSolution(
        status="optimal",
        objective=float(objective),
        primal=primal,
        dual=dual,
        iterations=iterations,
    )
