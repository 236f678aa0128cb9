"""Immutable small simple graphs with bitset adjacency.

Vertices are 0..n-1 with n capped at 64 so each neighbourhood fits in one
machine word. Graphs are values: every mutation returns a fresh Graph, which
keeps game-tree branching free of aliasing bugs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Sequence

MAX_VERTICES = 64


def bits(mask: int) -> Iterator[int]:
    """Indices of set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def norm_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class ComponentView:
    """Connected components of a Graph.

    Component ids are the smallest member vertex; `labels[v]` is the id of
    v's component, `members`/`masks` are aligned and sorted by id.
    """

    labels: tuple[int, ...]
    members: tuple[tuple[int, ...], ...]
    masks: tuple[int, ...]

    @property
    def ids(self) -> tuple[int, ...]:
        return tuple(ms[0] for ms in self.members)

    @property
    def sizes(self) -> dict[int, int]:
        return {ms[0]: len(ms) for ms in self.members}

    def __len__(self) -> int:
        return len(self.members)

    def mask_of(self, vertex: int) -> int:
        return self.masks[self.index_of(vertex)]

    def index_of(self, vertex: int) -> int:
        label = self.labels[vertex]
        for i, ms in enumerate(self.members):
            if ms[0] == label:
                return i
        raise KeyError(vertex)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; `adj[v]` is the neighbour bitset of v."""

    n: int
    adj: tuple[int, ...]
    m: int

    @staticmethod
    def empty(n: int) -> "Graph":
        if not 1 <= n <= MAX_VERTICES:
            raise ValueError(f"vertex count must be in 1..{MAX_VERTICES}, got {n}")
        return Graph(n, (0,) * n, 0)

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        g = Graph.empty(n)
        for u, v in edges:
            g = g.add_edge(u, v)
        return g

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} out of range 0..{self.n - 1}")

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return bool(self.adj[u] >> v & 1)

    def add_edge(self, u: int, v: int) -> "Graph":
        self._check_vertex(u)
        self._check_vertex(v)
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        if self.adj[u] >> v & 1:
            raise ValueError(f"edge {u}-{v} already present")
        adj = list(self.adj)
        adj[u] |= 1 << v
        adj[v] |= 1 << u
        return Graph(self.n, tuple(adj), self.m + 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> tuple[int, ...]:
        return tuple(a.bit_count() for a in self.adj)

    def min_degree(self) -> int:
        return min(self.degrees())

    def max_degree(self) -> int:
        return max(self.degrees())

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def absent_edges(self) -> list[tuple[int, int]]:
        return [
            (u, v)
            for u in range(self.n)
            for v in range(u + 1, self.n)
            if not self.adj[u] >> v & 1
        ]

    def isolated_vertices(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.n) if not self.adj[v])

    def components(self) -> ComponentView:
        labels = [-1] * self.n
        members: list[tuple[int, ...]] = []
        masks: list[int] = []
        unseen = (1 << self.n) - 1
        while unseen:
            start = (unseen & -unseen).bit_length() - 1
            comp = 1 << start
            frontier = comp
            while frontier:
                grow = 0
                for v in bits(frontier):
                    grow |= self.adj[v]
                frontier = grow & ~comp
                comp |= frontier
            ms = tuple(bits(comp))
            for v in ms:
                labels[v] = start
            members.append(ms)
            masks.append(comp)
            unseen &= ~comp
        return ComponentView(tuple(labels), tuple(members), tuple(masks))

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph on `vertices`, relabelled to 0..len-1 in sorted order."""
        vs = sorted(vertices)
        index = {v: i for i, v in enumerate(vs)}
        g = Graph.empty(len(vs))
        for i, v in enumerate(vs):
            for w in bits(self.adj[v]):
                if w > v and w in index:
                    g = g.add_edge(i, index[w])
        return g

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Image under the permutation old-vertex -> perm[old-vertex]."""
        adj = [0] * self.n
        for v in range(self.n):
            for w in bits(self.adj[v]):
                adj[perm[v]] |= 1 << perm[w]
        return Graph(self.n, tuple(adj), self.m)

    def is_clique_mask(self, mask: int) -> bool:
        for v in bits(mask):
            if self.adj[v] & mask != mask ^ (1 << v):
                return False
        return True

    def canonical_key(self) -> bytes:
        """Isomorphism-invariant key: equal keys iff the graphs are isomorphic."""
        return _canonical_key(self.n, self.adj)


# --- traceability -----------------------------------------------------------


def _component_mask(g: Graph, members: Sequence[int]) -> int:
    mask = 0
    for v in members:
        mask |= 1 << v
    return mask


def _is_connected_within(g: Graph, mask: int) -> bool:
    start = (mask & -mask).bit_length() - 1
    seen = 1 << start
    frontier = seen
    while frontier:
        grow = 0
        for v in bits(frontier):
            grow |= g.adj[v] & mask
        frontier = grow & ~seen
        seen |= frontier
    return seen == mask


def everywhere_traceable(g: Graph, members: Sequence[int]) -> bool:
    """True iff every vertex of the component starts a Hamiltonian path of it.

    Exact bitmask DP over subsets: in an undirected graph a vertex starts a
    Hamiltonian path iff it ends one, so one endpoint DP answers all starts.
    """

    mask = _component_mask(g, members)
    if not _is_connected_within(g, mask):
        raise ValueError("vertex set is not a connected component")
    verts = sorted(members)
    s = len(verts)
    if s <= 2:
        return True
    index = {v: i for i, v in enumerate(verts)}
    local = [0] * s
    for v in verts:
        for w in bits(g.adj[v] & mask):
            local[index[v]] |= 1 << index[w]
    full = (1 << s) - 1
    ends = [0] * (full + 1)
    for i in range(s):
        ends[1 << i] = 1 << i
    for sub in range(1, full + 1):
        endset = ends[sub]
        if not endset:
            continue
        for e in bits(endset):
            for nb in bits(local[e] & ~sub):
                ends[sub | (1 << nb)] |= 1 << nb
    return ends[full] == full


def hamiltonian_path(g: Graph, members: Sequence[int]) -> Optional[tuple[int, ...]]:
    """Lexicographically least Hamiltonian path of the component, or None.

    Ordered DFS (smallest start, then smallest next vertex) enumerates vertex
    sequences in lexicographic order, so the first complete path found is the
    least one.
    """

    verts = sorted(members)
    s = len(verts)
    mask = _component_mask(g, members)
    if s == 1:
        return (verts[0],)
    path: list[int] = []

    def extend(v: int, visited: int) -> bool:
        path.append(v)
        if len(path) == s:
            return True
        for w in bits(g.adj[v] & mask & ~visited):
            if extend(w, visited | (1 << w)):
                return True
        path.pop()
        return False

    for start in verts:
        if extend(start, 1 << start):
            return tuple(path)
    return None


# --- canonical form ---------------------------------------------------------
#
# Per-component individualisation/refinement search for the minimum adjacency
# encoding, with a shortcut for cells whose members are pairwise
# interchangeable (identical outside neighbourhoods, clique or independent
# inside): any ordering of such a cell yields the same encoding, so cliques,
# independent sets and star leaves never branch. Component encodings are
# sorted and concatenated, which is a complete invariant for the whole graph.


def _refine(adj: Sequence[int], cells: list[list[int]]) -> list[list[int]]:
    while True:
        masks = []
        for c in cells:
            cm = 0
            for v in c:
                cm |= 1 << v
            masks.append(cm)
        out: list[list[int]] = []
        changed = False
        for c in cells:
            if len(c) == 1:
                out.append(c)
                continue
            sig = {v: tuple((adj[v] & cm).bit_count() for cm in masks) for v in c}
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in c:
                groups.setdefault(sig[v], []).append(v)
            if len(groups) == 1:
                out.append(c)
            else:
                changed = True
                for key in sorted(groups):
                    out.append(groups[key])
        cells = out
        if not changed:
            return cells


def _interchangeable(adj: Sequence[int], cell: list[int]) -> bool:
    cmask = 0
    for v in cell:
        cmask |= 1 << v
    outside = adj[cell[0]] & ~cmask
    if any(adj[v] & ~cmask != outside for v in cell[1:]):
        return False
    inner = [(adj[v] & cmask).bit_count() for v in cell]
    k = len(cell)
    return all(d == 0 for d in inner) or all(d == k - 1 for d in inner)


def _encode_order(adj: Sequence[int], order: list[int]) -> int:
    code = 0
    s = len(order)
    for i in range(s):
        ai = adj[order[i]]
        for j in range(i + 1, s):
            code = (code << 1) | (ai >> order[j] & 1)
    return code


def _canon_component(adj: Sequence[int], s: int) -> bytes:
    best: Optional[int] = None

    def search(cells: list[list[int]]) -> None:
        nonlocal best
        while True:
            cells = _refine(adj, cells)
            target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
            if target is None:
                code = _encode_order(adj, [c[0] for c in cells])
                if best is None or code < best:
                    best = code
                return
            cell = cells[target]
            if _interchangeable(adj, cell):
                cells = cells[:target] + [[v] for v in cell] + cells[target + 1 :]
                continue
            for v in cell:
                rest = [u for u in cell if u != v]
                search(cells[:target] + [[v], rest] + cells[target + 1 :])
            return

    search([list(range(s))])
    assert best is not None
    nbytes = (s * (s - 1) // 2 + 7) // 8
    return best.to_bytes(nbytes, "big")


@lru_cache(maxsize=1 << 18)
def _canonical_key(n: int, adj: tuple[int, ...]) -> bytes:
    g = Graph(n, adj, sum(a.bit_count() for a in adj) // 2)
    encs: list[tuple[int, bytes]] = []
    for ms in g.components().members:
        verts = list(ms)
        index = {v: i for i, v in enumerate(verts)}
        local = [0] * len(verts)
        for v in verts:
            for w in bits(adj[v]):
                local[index[v]] |= 1 << index[w]
        encs.append((len(verts), _canon_component(local, len(verts))))
    encs.sort()
    out = bytearray([n])
    for size, enc in encs:
        out.append(size)
        out += enc
    return bytes(out)


# --- graph6 and edge-text I/O -----------------------------------------------


def to_graph6(g: Graph) -> str:
    if g.n <= 62:
        head = [g.n + 63]
    else:
        head = [126, ((g.n >> 12) & 63) + 63, ((g.n >> 6) & 63) + 63, (g.n & 63) + 63]
    chunk = 0
    nbits = 0
    body = []
    for v in range(1, g.n):
        for u in range(v):
            chunk = (chunk << 1) | (g.adj[u] >> v & 1)
            nbits += 1
            if nbits == 6:
                body.append(chunk + 63)
                chunk = 0
                nbits = 0
    if nbits:
        body.append((chunk << (6 - nbits)) + 63)
    return bytes(head + body).decode("ascii")


def from_graph6(text: str) -> Graph:
    text = text.strip()
    if text.startswith(">>graph6<<"):  # optional format header
        text = text[len(">>graph6<<"):]
    data = [b - 63 for b in text.encode("ascii")]
    if any(not 0 <= d <= 63 for d in data):
        raise ValueError("invalid graph6 character")
    if data[0] == 63:  # leading chr(126): long form
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        data = data[4:]
    else:
        n = data[0]
        data = data[1:]
    g = Graph.empty(n)
    need = n * (n - 1) // 2
    if len(data) != (need + 5) // 6:
        raise ValueError("graph6 payload has wrong length")
    idx = 0
    for v in range(1, n):
        for u in range(v):
            if data[idx // 6] >> (5 - idx % 6) & 1:
                g = g.add_edge(u, v)
            idx += 1
    return g


def to_edge_text(g: Graph) -> str:
    es = ",".join(f"{u}-{v}" for u, v in g.edges())
    return f"{g.n}; {es}" if es else f"{g.n};"


def from_edge_text(text: str) -> Graph:
    head, _, tail = text.partition(";")
    if not _:
        raise ValueError("edge text must look like 'n; u-v,u-v'")
    g = Graph.empty(int(head.strip()))
    tail = tail.strip()
    if tail:
        for part in tail.split(","):
            u, _, v = part.strip().partition("-")
            g = g.add_edge(int(u), int(v))
    return g
