"""Nearest-neighbour routing on grid coupling graphs.

Routed circuits keep the wire convention of hand-drawn NN circuits: wire
``w`` never moves and sits at physical site ``placement[w]``; a SWAP
exchanges the states held by two wires.  Logical qubit ``q`` starts on
the wire at site ``layout[q]`` and ``RoutedResult.final_layout`` records
where its state ends up.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from pathlib import Path

from .circuit import Circuit, Gate


class RoutingError(ValueError):
    pass


@dataclass(frozen=True)
class CouplingGraph:
    sites: int
    edges: frozenset
    rows: int | None = None
    cols: int | None = None

    def __post_init__(self):
        edges = frozenset(frozenset(e) for e in self.edges)
        for e in edges:
            if len(e) != 2 or any(not 0 <= s < self.sites for s in e):
                raise RoutingError(f"bad edge {sorted(e)} for {self.sites} sites")
        object.__setattr__(self, "edges", edges)

    def adjacent(self, a: int, b: int) -> bool:
        return frozenset((a, b)) in self.edges

    def neighbors(self, s: int) -> list[int]:
        return sorted(t for e in self.edges if s in e for t in e if t != s)

    def degree(self, s: int) -> int:
        return len(self.neighbors(s))

    def site(self, row: int, col: int) -> int:
        if self.cols is None:
            raise RoutingError("graph has no grid coordinates")
        if not (0 <= row < self.rows and 0 <= col < self.cols):
            raise RoutingError(f"({row}, {col}) outside {self.rows}x{self.cols} grid")
        return row * self.cols + col

    def distances_from(self, src: int) -> list[int | None]:
        dist: list[int | None] = [None] * self.sites
        dist[src] = 0
        queue = deque([src])
        while queue:
            u = queue.popleft()
            for v in self.neighbors(u):
                if dist[v] is None:
                    dist[v] = dist[u] + 1
                    queue.append(v)
        return dist

    def is_connected(self) -> bool:
        return self.sites == 0 or None not in self.distances_from(0)

    def diameter(self) -> int:
        if not self.is_connected():
            raise RoutingError("graph is disconnected")
        return max(max(self.distances_from(s)) for s in range(self.sites))

    def shortest_path(self, a: int, b: int) -> list[int]:
        """Shortest path a..b; at each step the lowest-index neighbour that
        stays on a shortest path is taken."""
        dist = self.distances_from(b)
        if dist[a] is None:
            raise RoutingError(f"sites {a} and {b} are disconnected")
        path = [a]
        while path[-1] != b:
            here = path[-1]
            path.append(min(v for v in self.neighbors(here) if dist[v] == dist[here] - 1))
        return path


def grid_graph(rows: int, cols: int) -> CouplingGraph:
    """Four-neighbour lattice; site index is ``row * cols + col``."""
    if rows < 1 or cols < 1:
        raise RoutingError(f"grid dimensions must be positive, got {rows}x{cols}")
    edges = set()
    for r in range(rows):
        for c in range(cols):
            s = r * cols + c
            if c + 1 < cols:
                edges.add((s, s + 1))
            if r + 1 < rows:
                edges.add((s, s + cols))
    return CouplingGraph(rows * cols, frozenset(edges), rows, cols)


@dataclass(frozen=True)
class Layout:
    """Logical qubit ``q`` -> physical site ``sites[q]``."""

    sites: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "sites", tuple(int(s) for s in self.sites))
        if len(set(self.sites)) != len(self.sites):
            raise RoutingError(f"layout is not injective: {self.sites}")

    @classmethod
    def trivial(cls, n: int) -> "Layout":
        return cls(tuple(range(n)))

    def __len__(self) -> int:
        return len(self.sites)

    def __getitem__(self, q: int) -> int:
        return self.sites[q]

    def validate(self, g: CouplingGraph, nqubits: int | None = None) -> None:
        if nqubits is not None and len(self.sites) < nqubits:
            raise RoutingError(f"layout covers {len(self.sites)} qubits, circuit has {nqubits}")
        for s in self.sites:
            if not 0 <= s < g.sites:
                raise RoutingError(f"site {s} not in graph with {g.sites} sites")

    def placement(self, g: CouplingGraph) -> tuple[int, ...]:
        """Wire -> site for all sites: layout sites first, free sites after."""
        free = [s for s in range(g.sites) if s not in self.sites]
        return self.sites + tuple(free)


def parse_layout(text: str) -> tuple[CouplingGraph, Layout]:
    """``grid <rows> <cols>`` then ``q<i> <row> <col>`` lines."""
    graph = None
    entries = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        try:
            if toks[0] == "grid" and len(toks) == 3:
                graph = grid_graph(int(toks[1]), int(toks[2]))
            elif toks[0].startswith("q") and len(toks) == 3:
                if graph is None:
                    raise RoutingError("qubit placement before 'grid' header")
                q = int(toks[0][1:])
                if q in entries:
                    raise RoutingError(f"q{q} placed twice")
                entries[q] = graph.site(int(toks[1]), int(toks[2]))
            else:
                raise RoutingError(f"unrecognised line {line!r}")
        except (ValueError, IndexError) as exc:
            raise RoutingError(f"layout line {lineno}: {exc}") from None
    if graph is None:
        raise RoutingError("missing 'grid' header")
    if sorted(entries) != list(range(len(entries))):
        raise RoutingError(f"qubits must be numbered 0..{len(entries) - 1}")
    return graph, Layout(tuple(entries[q] for q in range(len(entries))))


def load_layout(path) -> tuple[CouplingGraph, Layout]:
    return parse_layout(Path(path).read_text())


def format_layout(g: CouplingGraph, layout: Layout) -> str:
    lines = [f"grid {g.rows} {g.cols}"]
    for q, s in enumerate(layout.sites):
        lines.append(f"q{q} {s // g.cols} {s % g.cols}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class RoutedResult:
    circuit: Circuit
    final_layout: Layout
    swap_count: int
    placement: tuple[int, ...]


def route(c: Circuit, g: CouplingGraph, l0: Layout) -> RoutedResult:
    """Insert SWAPs so every multi-qubit gate acts on neighbouring sites.

    Gates keep their order.  For a non-adjacent pair the first operand is
    walked along a shortest path toward the second.  Swaps are not undone.
    """
    l0.validate(g, c.nqubits)
    if not g.is_connected():
        raise RoutingError("coupling graph is disconnected")
    if any(gate.kind == "CCX" for gate in c.gates):
        raise RoutingError("CCX needs three mutually adjacent sites; grids have none")
    placement = l0.placement(g)
    wire_at = {s: w for w, s in enumerate(placement)}
    loc = list(l0.sites[: c.nqubits])  # logical -> current site
    occupant = {s: q for q, s in enumerate(loc)}
    out = []
    swaps = 0

    def swap_sites(a: int, b: int) -> None:
        nonlocal swaps
        out.append(Gate("SWAP", (wire_at[a], wire_at[b])))
        qa, qb = occupant.pop(a, None), occupant.pop(b, None)
        if qa is not None:
            loc[qa] = b
            occupant[b] = qa
        if qb is not None:
            loc[qb] = a
            occupant[a] = qb
        swaps += 1

    for gate in c.gates:
        if len(gate.qubits) == 2:
            a, b = gate.qubits
            path = g.shortest_path(loc[a], loc[b])
            for nxt in path[1:-1]:
                swap_sites(loc[a], nxt)
        out.append(Gate(gate.kind, tuple(wire_at[loc[q]] for q in gate.qubits), gate.cbit))
    routed = Circuit(g.sites, c.ncbits, tuple(out))
    return RoutedResult(routed, Layout(tuple(loc)), swaps, placement)


def decompose_swaps(c: Circuit) -> Circuit:
    """Replace each SWAP(a, b) by CX(a,b) CX(b,a) CX(a,b)."""
    out = []
    for g in c.gates:
        if g.kind == "SWAP":
            a, b = g.qubits
            out += [Gate("CX", (a, b)), Gate("CX", (b, a)), Gate("CX", (a, b))]
        else:
            out.append(g)
    return c.with_gates(out)


def is_compliant(c: Circuit, g: CouplingGraph, l0: Layout) -> bool:
    """Every multi-qubit gate acts on pairwise adjacent sites.

    Wire ``w`` sits at ``l0.placement(g)[w]``; SWAPs move states, not wires,
    so the check is positional.
    """
    placement = l0.placement(g)
    if c.nqubits > len(placement):
        return False
    for gate in c.gates:
        sites = [placement[q] for q in gate.qubits]
        for i in range(len(sites)):
            for j in range(i + 1, len(sites)):
                if not g.adjacent(sites[i], sites[j]):
                    return False
    return True


def replay_layout(c: Circuit, g: CouplingGraph, l0: Layout) -> Layout:
    """Where each logical qubit's state sits after the circuit's SWAPs."""
    placement = l0.placement(g)
    holder = list(range(len(placement)))  # wire -> logical (or >= n: empty)
    for gate in c.gates:
        if gate.kind == "SWAP":
            a, b = gate.qubits
            holder[a], holder[b] = holder[b], holder[a]
    loc = [0] * len(l0)
    for w, q in enumerate(holder):
        if q < len(l0):
            loc[q] = placement[w]
    return Layout(tuple(loc))


def swap_bound(c: Circuit, g: CouplingGraph) -> int:
    two_qubit = sum(1 for gate in c.gates if len(gate.qubits) == 2)
    return two_qubit * max(g.diameter() - 1, 0)
