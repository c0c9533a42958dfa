"""The tripartite graph H(A) whose triangles are the solutions of a1 + a2 = 2 a3 in A."""

import logging
from dataclasses import dataclass
from typing import Iterable, List

import networkx as nx

from arithlab_toolkit.errors import ConsistencyError, DomainError
from arithlab_toolkit.fourier.behrend import is_ap3_free

logger = logging.getLogger(__name__)


@dataclass
class RothGraph:
    graph: nx.Graph
    n: int
    A: List[int]
    triangles: int
    solutions: int
    max_triangles_per_edge: int

    @property
    def edge_disjoint(self) -> bool:
        return self.max_triangles_per_edge <= 1

    def to_json(self) -> dict:
        return {"n": self.n, "A": self.A, "vertices": self.graph.number_of_nodes(),
                "edges": self.graph.number_of_edges(), "triangles": self.triangles,
                "solutions": self.solutions, "edge_disjoint": self.edge_disjoint}


def count_midpoint_solutions(A: Iterable[int]) -> int:
    """#{(a1, a2, a3) in A^3 : a1 + a2 = 2 a3}, trivial solutions included."""
    A = set(A)
    return sum(1 for a1 in A for a2 in A if (a1 + a2) % 2 == 0 and (a1 + a2) // 2 in A)


def roth_graph(A: Iterable[int], n: int) -> RothGraph:
    """Parts X = [n], Y = [2n], Z = [3n]; x~y iff y - x in A, y~z iff z - y in A,
    x~z iff z - x in 2A. Asserts #triangles = n * #{a1 + a2 = 2 a3}."""
    A = sorted(set(int(a) for a in A))
    if n < 1 or not A or A[0] < 1 or A[-1] > n:
        raise DomainError(f"A must be a non-empty subset of [1, {n}], got {A}")
    G = nx.Graph()
    G.add_nodes_from((("X", i) for i in range(1, n + 1)), part="X")
    G.add_nodes_from((("Y", j) for j in range(1, 2 * n + 1)), part="Y")
    G.add_nodes_from((("Z", k) for k in range(1, 3 * n + 1)), part="Z")
    for a in A:
        for i in range(1, n + 1):
            G.add_edge(("X", i), ("Y", i + a))
            G.add_edge(("X", i), ("Z", i + 2 * a))
        for j in range(1, 2 * n + 1):
            if j + a <= 3 * n:
                G.add_edge(("Y", j), ("Z", j + a))

    triangles = sum(nx.triangles(G).values()) // 3
    solutions = count_midpoint_solutions(A)
    per_edge = max((len(set(G[u]) & set(G[v])) for u, v in G.edges()), default=0)
    result = RothGraph(G, n, A, triangles, solutions, per_edge)
    logger.debug("Roth graph: %s", result.to_json())
    if triangles != n * solutions:
        raise ConsistencyError(f"{triangles} triangles but n * solutions = {n * solutions}")
    if is_ap3_free(A) and not (solutions == len(A) and result.edge_disjoint):
        raise ConsistencyError("3-AP-free set whose triangles are not edge-disjoint")
    return result
