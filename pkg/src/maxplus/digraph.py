"""Weighted digraph of a square matrix, strongly connected components, cyclicity."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from math import gcd, lcm
from typing import Dict, FrozenSet, List, Tuple

from .core import NEG_INF, TropMatrix
from .errors import DimensionError, DomainError


@dataclass(frozen=True)
class Digraph:
    """Nodes ``0..node_count-1`` and weighted arcs ``{(i, j): weight}``."""

    node_count: int
    arcs: Dict[Tuple[int, int], object] = field(default_factory=dict)

    def successors(self) -> List[List[int]]:
        succ = [[] for _ in range(self.node_count)]
        for i, j in sorted(self.arcs):
            succ[i].append(j)
        return succ

    def has_arc(self, i: int, j: int) -> bool:
        return (i, j) in self.arcs

    def arc_set(self) -> FrozenSet[Tuple[int, int]]:
        return frozenset(self.arcs)

    def nodes_with_arcs(self) -> FrozenSet[int]:
        return frozenset(v for arc in self.arcs for v in arc)

    def subgraph(self, nodes) -> "Digraph":
        """Arcs with both ends in ``nodes``; node ids are kept."""
        nodes = set(nodes)
        return Digraph(
            self.node_count,
            {a: w for a, w in self.arcs.items() if a[0] in nodes and a[1] in nodes},
        )


@dataclass(frozen=True)
class SccDecomposition:
    component_of: Tuple[int, ...]
    components: Tuple[FrozenSet[int], ...]
    trivial: Tuple[bool, ...]

    def nontrivial(self) -> List[FrozenSet[int]]:
        return [c for c, t in zip(self.components, self.trivial) if not t]


def graph_of_matrix(a: TropMatrix) -> Digraph:
    if not a.is_square:
        raise DimensionError(f"graph of a non-square {a.shape} matrix")
    arcs = {
        (i, j): x
        for i, row in enumerate(a.entries)
        for j, x in enumerate(row)
        if x is not NEG_INF
    }
    return Digraph(a.rows, arcs)


def scc(g: Digraph) -> SccDecomposition:
    """Tarjan's algorithm, iterative to survive large graphs.

    Components come out in reverse topological order (sinks first).
    """
    succ = g.successors()
    n = g.node_count
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: List[int] = []
    comps: List[FrozenSet[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, pos = work[-1]
            if pos < len(succ[v]):
                work[-1] = (v, pos + 1)
                w = succ[v][pos]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.add(w)
                    if w == v:
                        break
                comps.append(frozenset(comp))
    component_of = [0] * n
    for cid, comp in enumerate(comps):
        for v in comp:
            component_of[v] = cid
    trivial = tuple(
        len(c) == 1 and not g.has_arc(next(iter(c)), next(iter(c))) for c in comps
    )
    return SccDecomposition(tuple(component_of), tuple(comps), trivial)


def cyclicity_scc(g: Digraph, component) -> int:
    """gcd of circuit lengths inside a non-trivial strongly connected component.

    With BFS levels from any root, every arc (u, v) inside the component
    contributes ``level(u) + 1 - level(v)``; their gcd is the cyclicity.
    """
    comp = set(component)
    if not comp:
        raise DomainError("empty component")
    if len(comp) == 1:
        (v,) = comp
        if not g.has_arc(v, v):
            raise DomainError(f"node {v} forms a trivial component (no circuit)")
        return 1
    succ = g.successors()
    root = min(comp)
    level = {root: 0}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in succ[u]:
            if v in comp and v not in level:
                level[v] = level[u] + 1
                queue.append(v)
    if len(level) != len(comp):
        raise DomainError("node set is not strongly connected")
    d = 0
    for (u, v) in g.arcs:
        if u in comp and v in comp:
            d = gcd(d, level[u] + 1 - level[v])
    return abs(d)


def is_completely_reducible(g: Digraph, decomposition: SccDecomposition = None) -> bool:
    dec = decomposition or scc(g)
    return all(dec.component_of[i] == dec.component_of[j] for i, j in g.arcs)


def cyclicity_graph(g: Digraph) -> int:
    """lcm of the cyclicities of the non-trivial components."""
    dec = scc(g)
    if not is_completely_reducible(g, dec):
        raise DomainError("graph is not completely reducible")
    result = 1
    for comp in dec.nontrivial():
        result = lcm(result, cyclicity_scc(g, comp))
    return result
