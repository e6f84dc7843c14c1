"""Capacitated stowage stacks: layered DAG, the CG_H program, and plan
decoding.

A stack holds an independent set whose height (maximum antichain, i.e. the
deepest nesting level occupied at one point) stays within the capacity H.
Copying each vertex once per admissible nesting level turns the height cap
into arc structure: layer-h copies can only feed layer h+1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import AntichainBoundError, InvalidHeightError, LayerConditionError
from .intervals import (
    ROOT,
    CliqueMatrix,
    ContainmentDag,
    IntervalRep,
    max_antichain,
    topological_order,
)
from .lpmodels import BINARY, CONTINUOUS, INF, INTEGER, LpModel
from .mwis import decode_arborescence


def layer_var(i: int, h: int, j: int) -> str:
    return f"x_{i}.{h}_{j}"


@dataclass(frozen=True)
class LayeredDag:
    """Vertex copies (i, h) for h in 1..height plus the root (0, 0); arcs go
    from layer h to layer h+1 along strict containment."""

    n: int
    height: int
    containment_children: tuple  # containment_children[i] from the flat DAG
    branching: frozenset

    @property
    def root(self):
        return (ROOT, 0)

    def out_targets(self, i: int, h: int):
        """Vertices j with an arc from copy (i, h) to (j, h+1)."""
        if i == ROOT:
            return tuple(range(1, self.n + 1)) if h == 0 else ()
        if 1 <= h < self.height:
            return self.containment_children[i]
        return ()

    def in_sources(self, j: int, h: int):
        """Copies (i, h-1) with an arc into (j, h)."""
        if h == 1:
            return ((ROOT, 0),)
        if 2 <= h <= self.height:
            return tuple(
                (i, h - 1)
                for i in range(1, self.n + 1)
                if j in self.containment_children[i]
            )
        return ()

    def arcs(self):
        out = [((ROOT, 0), (j, 1)) for j in range(1, self.n + 1)]
        for i in sorted(self.branching):
            for h in range(1, self.height):
                for j in self.containment_children[i]:
                    out.append(((i, h), (j, h + 1)))
        return out


def nesting_depth(rep: IntervalRep) -> int:
    """Number of vertices on the longest strict-containment chain."""
    depth = {}
    for v in reversed(topological_order(rep)):
        inner = [depth[u] for u in rep.vertices if u != v and rep.contains(v, u)]
        depth[v] = 1 + max(inner, default=0)
    return max(depth.values(), default=0)


def effective_height(rep: IntervalRep, height: int) -> int:
    """Larger capacities than the deepest nesting chain cannot matter."""
    if height < 1:
        raise InvalidHeightError(f"capacity must be >= 1, got {height}")
    return min(height, nesting_depth(rep))


def build_layered_dag(rep: IntervalRep, dag: ContainmentDag, height: int) -> LayeredDag:
    if height < 1:
        raise InvalidHeightError(f"capacity must be >= 1, got {height}")
    return LayeredDag(
        n=rep.n,
        height=height,
        containment_children=dag.children,
        branching=dag.branching,
    )


def build_cgh(rep: IntervalRep, layered: LayeredDag, matrix: CliqueMatrix,
              relax: bool = False) -> LpModel:
    """min c: root children form at most c stacks, each occupied copy may
    pass one chain downward, and every vertex enters at exactly one layer."""
    model = LpModel(name="CG_H", sense="min", integral_objective=True)
    kind = CONTINUOUS if relax else BINARY
    arc_map = {}
    for (i, h), (j, _) in layered.arcs():
        name = layer_var(i, h, j)
        model.add_var(name, 0.0, 1.0, kind)
        arc_map[name] = [i, h, j]
    model.add_var("c", 0.0, INF, CONTINUOUS if relax else INTEGER)
    model.objective = {"c": 1.0}

    root_kids = list(range(1, rep.n + 1))
    for r in range(len(matrix.points)):
        coeffs = {
            layer_var(ROOT, 0, j): 1.0
            for j in root_kids
            if matrix.matrix[r, j - 1]
        }
        coeffs["c"] = -1.0
        model.add_constraint(f"root_p{matrix.points[r]}", coeffs, "<=", 0.0)
    for i in sorted(layered.branching):
        kids = layered.containment_children[i]
        for h in range(1, layered.height):
            inflow = {
                layer_var(s, hs, i): -1.0 for (s, hs) in layered.in_sources(i, h)
            }
            for r in matrix.rows_touching(kids):
                coeffs = {
                    layer_var(i, h, j): 1.0
                    for j in kids
                    if matrix.matrix[r, j - 1]
                }
                coeffs.update(inflow)
                model.add_constraint(
                    f"chain_{i}.{h}_p{matrix.points[r]}", coeffs, "<=", 0.0
                )
    for j in rep.vertices:
        coeffs = {}
        for h in range(1, layered.height + 1):
            for (i, hs) in layered.in_sources(j, h):
                coeffs[layer_var(i, hs, j)] = 1.0
        model.add_constraint(f"enter_{j}", coeffs, "=", 1.0)
    model.metadata = {
        "formulation": "CG_H",
        "relaxed": relax,
        "height": layered.height,
        "arcs": arc_map,
        "n": rep.n,
    }
    return model


@dataclass(frozen=True)
class StackPlan:
    """A partition of the vertices into stacks, each an independent set of
    height at most the capacity; stacks list vertices bottom-to-top."""

    stacks: tuple

    @property
    def num_stacks(self) -> int:
        return len(self.stacks)

    def stack_of(self) -> dict:
        out = {}
        for k, stack in enumerate(self.stacks, start=1):
            for v in stack:
                out[v] = k
        return out

    def format(self) -> str:
        return "\n".join(" ".join(str(v) for v in stack) for stack in self.stacks) + "\n"


def decode_plan(rep: IntervalRep, layered: LayeredDag, arcs, c: int) -> StackPlan:
    """Collapse a layered arc set to a flat arborescence and decode it.

    Checks D0 (one entry arc per vertex across all layers), D1 (occupied
    copies pass on chains, and only occupied copies pass anything on), and
    D2 (at most c stacks at the root).
    """
    arcs = set(arcs)
    entry_layer = {}
    flat = set()
    for (i, h), (j, hj) in arcs:
        if hj != h + 1:
            raise LayerConditionError("D0", (i, h))
        if j in entry_layer:
            raise LayerConditionError("D0", j)
        if i != ROOT and not rep.contains(i, j):
            raise LayerConditionError("D0", (i, h))
        entry_layer[j] = hj
        flat.add((i, j))
    for v in rep.vertices:
        if v not in entry_layer:
            raise LayerConditionError("D0", v)
    children_by_copy = {}
    for (i, h), (j, _) in arcs:
        children_by_copy.setdefault((i, h), []).append(j)
    for (i, h), kids in children_by_copy.items():
        if i == ROOT:
            continue
        if not rep.is_chain(kids):
            raise LayerConditionError("D1", (i, h))
        if entry_layer.get(i) != h:
            raise LayerConditionError("D1", (i, h))
    if entry_layer and max(entry_layer.values()) > layered.height:
        raise LayerConditionError("D1", max(entry_layer, key=entry_layer.get))
    root_kids = children_by_copy.get((ROOT, 0), [])
    width = max_antichain(rep, root_kids)
    if width > c:
        raise AntichainBoundError(ROOT, width, c)
    coloring = decode_arborescence(rep, flat, c)
    groups = {}
    for v in rep.vertices:
        groups.setdefault(coloring.colors[v], []).append(v)
    stacks = []
    for color in sorted(groups):
        stack = sorted(groups[color], key=lambda v: (entry_layer[v], rep.left[v]))
        height = max_antichain(rep, stack)
        assert height <= layered.height, "decoded stack exceeds the capacity"
        stacks.append(tuple(stack))
    return StackPlan(stacks=tuple(stacks))


def greedy_stack_plan(rep: IntervalRep, height: int) -> StackPlan:
    """First-fit incumbent: scan vertices left to right, drop each into the
    first stack that stays independent and within the height cap."""
    if height < 1:
        raise InvalidHeightError(f"capacity must be >= 1, got {height}")
    stacks: list[list[int]] = []
    for v in topological_order(rep):
        for stack in stacks:
            trial = stack + [v]
            independent = all(not rep.overlaps(u, v) for u in stack)
            if independent and max_antichain(rep, trial) <= height:
                stack.append(v)
                break
        else:
            stacks.append([v])
    ordered = []
    for stack in stacks:
        depth = {}
        for v in sorted(stack, key=lambda u: -(rep.right[u] - rep.left[u])):
            outer = [depth[u] for u in stack if u != v and rep.contains(u, v) and u in depth]
            depth[v] = 1 + max(outer, default=0)
        ordered.append(tuple(sorted(stack, key=lambda v: (depth[v], rep.left[v]))))
    return StackPlan(stacks=tuple(ordered))
