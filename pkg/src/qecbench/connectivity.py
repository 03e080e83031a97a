"""Qubit connectivity graphs and routing of non-adjacent two-qubit gates.

Three topologies are supported: all-to-all, line (qubit i touches i+-1),
and square lattice with row-major numbering. Non-adjacent CNOT/CZ gates are
rewritten into adjacent-only sequences: the 4-CNOT identity at distance 2,
and swap conjugation along the shortest path beyond that. No optimality is
claimed; correctness is pinned by an exhaustive unitary-equivalence test.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .gates import Gate

ALL_TO_ALL = "all_to_all"
LINE = "line"
SQUARE = "square"
TOPOLOGIES = (ALL_TO_ALL, LINE, SQUARE)


@dataclass(frozen=True)
class ConnectivityGraph:
    topology: str
    n_qubits: int
    rows: int = 0
    cols: int = 0

    def __post_init__(self):
        if self.topology not in TOPOLOGIES:
            raise ValueError(f"unknown topology {self.topology!r}")
        if self.n_qubits < 1:
            raise ValueError("need at least one qubit")
        if self.topology == SQUARE and self.rows * self.cols != self.n_qubits:
            raise ValueError(
                f"square lattice {self.rows}x{self.cols} does not hold "
                f"{self.n_qubits} qubits"
            )

    @classmethod
    def all_to_all(cls, n_qubits: int) -> "ConnectivityGraph":
        return cls(ALL_TO_ALL, n_qubits)

    @classmethod
    def line(cls, n_qubits: int) -> "ConnectivityGraph":
        return cls(LINE, n_qubits)

    @classmethod
    def square_lattice(cls, rows: int, cols: int) -> "ConnectivityGraph":
        return cls(SQUARE, rows * cols, rows, cols)

    def _check(self, q: int) -> None:
        if not 0 <= q < self.n_qubits:
            raise ValueError(f"qubit {q} out of range for {self.n_qubits} qubits")

    def neighbors(self, q: int) -> list[int]:
        self._check(q)
        if self.topology == ALL_TO_ALL:
            return [x for x in range(self.n_qubits) if x != q]
        if self.topology == LINE:
            return [x for x in (q - 1, q + 1) if 0 <= x < self.n_qubits]
        r, c = divmod(q, self.cols)
        out = []
        for rr, cc in ((r - 1, c), (r, c - 1), (r, c + 1), (r + 1, c)):
            if 0 <= rr < self.rows and 0 <= cc < self.cols:
                out.append(rr * self.cols + cc)
        return sorted(out)


def is_adjacent(graph: ConnectivityGraph, a: int, b: int) -> bool:
    graph._check(a)
    graph._check(b)
    if a == b:
        raise ValueError("adjacency is undefined for a qubit with itself")
    return b in graph.neighbors(a)


def shortest_path(graph: ConnectivityGraph, a: int, b: int) -> list[int]:
    """Minimal-length path from a to b.

    Ties are broken toward the lexicographically smallest node sequence,
    which a BFS with sorted neighbor expansion and first-visit parents
    produces deterministically.
    """
    graph._check(a)
    graph._check(b)
    if a == b:
        raise ValueError("path endpoints must differ")
    parent = {a: None}
    queue = deque([a])
    while queue:
        node = queue.popleft()
        if node == b:
            break
        for nxt in graph.neighbors(node):
            if nxt not in parent:
                parent[nxt] = node
                queue.append(nxt)
    if b not in parent:
        raise ValueError(f"no path between {a} and {b}")
    path = [b]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return path[::-1]


def _swap_gates(a: int, b: int) -> list[Gate]:
    return [Gate("CNOT", (a, b)), Gate("CNOT", (b, a)), Gate("CNOT", (a, b))]


def _route_cnot(graph: ConnectivityGraph, control: int, target: int) -> list[Gate]:
    if graph.topology == ALL_TO_ALL or is_adjacent(graph, control, target):
        return [Gate("CNOT", (control, target))]
    path = shortest_path(graph, control, target)
    # Pull the target's state up the path until it sits two hops from the
    # control, then close the remaining distance with the 4-CNOT identity
    # CNOT(a,c) = CNOT(b,c) CNOT(a,b) CNOT(b,c) CNOT(a,b) on (a, b, c).
    swaps: list[Gate] = []
    for i in range(len(path) - 1, 2, -1):
        swaps.extend(_swap_gates(path[i], path[i - 1]))
    a, b, c = path[0], path[1], path[2]
    core = [
        Gate("CNOT", (a, b)),
        Gate("CNOT", (b, c)),
        Gate("CNOT", (a, b)),
        Gate("CNOT", (b, c)),
    ]
    return swaps + core + swaps[::-1]


def route_two_qubit(
    graph: ConnectivityGraph, kind: str, control: int, target: int
) -> list[Gate]:
    """Expand a CNOT/CZ into adjacent-only gates with the same composite
    unitary (identity on all path-interior qubits)."""
    if kind not in ("CNOT", "CZ"):
        raise ValueError(f"routing supports CNOT and CZ, not {kind!r}")
    graph._check(control)
    graph._check(target)
    if control == target:
        raise ValueError("control and target must differ")
    if kind == "CNOT":
        return _route_cnot(graph, control, target)
    if graph.topology == ALL_TO_ALL or is_adjacent(graph, control, target):
        return [Gate("CZ", (control, target))]
    # CZ = (I x H) CNOT (I x H); H is local so only the CNOT needs routing
    return (
        [Gate("H", (target,))]
        + _route_cnot(graph, control, target)
        + [Gate("H", (target,))]
    )
