"""Brute-force reference implementations.

Everything here is ground truth at tiny scale: enumeration and
backtracking, refusing inputs over a budget rather than running
unbounded.  Used in tests and behind the `verify` CLI subcommand.
"""

from __future__ import annotations

from dataclasses import dataclass

import networkx as nx

from .errors import OverBudgetError
from .intervals import CircleGraph, IntervalRep, max_antichain
from .lpmodels import LpModel
from .simplex import solve_lp


@dataclass(frozen=True)
class OracleBudget:
    max_vertices: int = 12
    max_independent_sets: int = 200000


DEFAULT_BUDGET = OracleBudget()


def _check_budget(n: int, budget: OracleBudget, cap=None):
    limit = budget.max_vertices if cap is None else min(budget.max_vertices, cap)
    if n > limit:
        raise OverBudgetError(f"{n} vertices exceeds the oracle budget of {limit}")


def _adjacency_masks(graph: CircleGraph) -> list:
    masks = [0] * (graph.n + 1)
    for v in graph.vertices:
        for u in graph.adj[v]:
            masks[v] |= 1 << (u - 1)
    return masks


def _is_independent(mask: int, adj_masks, n: int) -> bool:
    for v in range(1, n + 1):
        if mask & (1 << (v - 1)) and mask & adj_masks[v]:
            return False
    return True


def chromatic_exact(graph: CircleGraph, budget: OracleBudget = DEFAULT_BUDGET) -> int:
    """Exact chromatic number by backtracking with a clique lower bound."""
    _check_budget(graph.n, budget)
    if graph.n == 0:
        return 0
    lb = max_clique_exact(graph)
    order = sorted(graph.vertices, key=lambda v: -len(graph.adj[v]))

    def colorable(k: int) -> bool:
        colors = {}

        def place(idx: int) -> bool:
            if idx == len(order):
                return True
            v = order[idx]
            used = {colors[u] for u in graph.adj[v] if u in colors}
            # new colors beyond the first unused one are symmetric
            cap = min(k, (max(colors.values()) if colors else 0) + 1)
            for c in range(1, cap + 1):
                if c not in used:
                    colors[v] = c
                    if place(idx + 1):
                        return True
                    del colors[v]
            return False

        return place(0)

    k = lb
    while not colorable(k):
        k += 1
    return k


def max_clique_exact(graph: CircleGraph) -> int:
    """Exact clique number; delegates to networkx's exact search."""
    if graph.n == 0:
        return 0
    g = nx.Graph()
    g.add_nodes_from(graph.vertices)
    g.add_edges_from(graph.edges())
    clique, _ = nx.max_weight_clique(g, weight=None)
    return len(clique)


def maximal_independent_sets(graph: CircleGraph) -> list:
    """All maximal independent sets, as sorted tuples."""
    g = nx.Graph()
    g.add_nodes_from(graph.vertices)
    g.add_edges_from(graph.edges())
    comp = nx.complement(g)
    return [tuple(sorted(c)) for c in nx.find_cliques(comp)]


def all_independent_sets(graph: CircleGraph, budget: OracleBudget = DEFAULT_BUDGET) -> list:
    _check_budget(graph.n, budget)
    adj_masks = _adjacency_masks(graph)
    out = []
    for mask in range(1, 1 << graph.n):
        if _is_independent(mask, adj_masks, graph.n):
            out.append(tuple(v for v in graph.vertices if mask & (1 << (v - 1))))
        if len(out) > budget.max_independent_sets:
            raise OverBudgetError("too many independent sets to enumerate")
    return out


def _covering_lp(columns, n: int, relation: str) -> LpModel:
    model = LpModel(name="set_cover_lp", sense="min")
    for k in range(len(columns)):
        model.add_var(f"q_{k}", 0.0)
    model.objective = {f"q_{k}": 1.0 for k in range(len(columns))}
    for v in range(1, n + 1):
        coeffs = {f"q_{k}": 1.0 for k, col in enumerate(columns) if v in col}
        model.add_constraint(f"v_{v}", coeffs, relation, 1.0)
    return model


def fractional_chromatic_exact(graph: CircleGraph,
                               budget: OracleBudget = DEFAULT_BUDGET,
                               all_sets: bool = False) -> float:
    """Fractional chromatic number by the independent-set covering LP.

    By default the LP is restricted to maximal independent sets with >=
    rows (dominance makes that equivalent); all_sets=True reproduces the
    equality form over every independent set as a cross-check.
    """
    _check_budget(graph.n, budget)
    if graph.n == 0:
        return 0.0
    if all_sets:
        columns = all_independent_sets(graph, budget)
        model = _covering_lp(columns, graph.n, "=")
    else:
        columns = maximal_independent_sets(graph)
        if len(columns) > budget.max_independent_sets:
            raise OverBudgetError("too many independent sets to enumerate")
        model = _covering_lp(columns, graph.n, ">=")
    sol = solve_lp(model)
    assert sol.status == "optimal"
    return sol.objective


def mwis_exact(graph: CircleGraph, weights,
               budget: OracleBudget = DEFAULT_BUDGET) -> float:
    """Max over independent subsets of the total weight, empty set included."""
    _check_budget(graph.n, budget)
    adj_masks = _adjacency_masks(graph)
    best = 0.0
    for mask in range(1, 1 << graph.n):
        if _is_independent(mask, adj_masks, graph.n):
            total = sum(weights[v] for v in graph.vertices if mask & (1 << (v - 1)))
            best = max(best, total)
    return best


def stacks_exact(rep: IntervalRep, graph: CircleGraph, height: int,
                 budget: OracleBudget = DEFAULT_BUDGET) -> int:
    """Exact minimum number of independent sets of height <= `height`
    covering all vertices, by set-cover DP over vertex bitmasks."""
    _check_budget(rep.n, budget, cap=8)
    n = rep.n
    adj_masks = _adjacency_masks(graph)
    admissible = []
    for mask in range(1, 1 << n):
        if not _is_independent(mask, adj_masks, n):
            continue
        members = [v for v in range(1, n + 1) if mask & (1 << (v - 1))]
        if max_antichain(rep, members) <= height:
            admissible.append(mask)
    full = (1 << n) - 1
    best = {0: 0}
    frontier = {0}
    count = 0
    while full not in best:
        count += 1
        new_frontier = set()
        for mask in frontier:
            rest = full & ~mask
            low = rest & -rest
            for s in admissible:
                if s & low:
                    nxt = mask | s
                    if nxt not in best:
                        best[nxt] = count
                        new_frontier.add(nxt)
        frontier = new_frontier
        if not frontier:
            raise AssertionError("singleton stacks always give a cover")
    return best[full]


def admissible_sets(rep: IntervalRep, graph: CircleGraph, height: int,
                    budget: OracleBudget = DEFAULT_BUDGET) -> list:
    """Every nonempty independent set of height <= `height`, as tuples."""
    _check_budget(rep.n, budget, cap=8)
    adj_masks = _adjacency_masks(graph)
    out = []
    for mask in range(1, 1 << rep.n):
        if not _is_independent(mask, adj_masks, rep.n):
            continue
        members = tuple(v for v in rep.vertices if mask & (1 << (v - 1)))
        if max_antichain(rep, members) <= height:
            out.append(members)
    return out


def stacks_lp_exact(rep: IntervalRep, graph: CircleGraph, height: int,
                    budget: OracleBudget = DEFAULT_BUDGET) -> float:
    """LP relaxation of the exact stack partition (equality set-cover over
    every admissible independent set)."""
    columns = admissible_sets(rep, graph, height, budget)
    model = _covering_lp(columns, rep.n, "=")
    sol = solve_lp(model)
    assert sol.status == "optimal"
    return sol.objective
