"""Forbidden families and freeness / move-legality predicates.

A family is one of: all paths on k vertices are forbidden via the single
graph P_k; all trees on k vertices (equivalently: no component may reach k
vertices); a single star K_{1,s} (equivalently: max degree <= s-1); or an
explicit list of connected graphs checked by subgraph containment.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .graph import Graph, bits, from_graph6, norm_edge, to_graph6

Move = tuple[int, int]


@dataclass(frozen=True)
class PathFamily:
    k: int  # forbid the path on k vertices

    def __post_init__(self) -> None:
        if self.k < 2:
            raise ValueError("path family needs k >= 2")


@dataclass(frozen=True)
class TreeFamily:
    k: int  # forbid every tree on k vertices

    def __post_init__(self) -> None:
        if self.k < 2:
            raise ValueError("tree family needs k >= 2")


@dataclass(frozen=True)
class StarFamily:
    leaves: int  # forbid K_{1,leaves}

    def __post_init__(self) -> None:
        if self.leaves < 2:
            raise ValueError("star family needs at least 2 leaves")


@dataclass(frozen=True)
class ExplicitFamily:
    members: tuple[Graph, ...]

    def __post_init__(self) -> None:
        if not self.members:
            raise ValueError("explicit family needs at least one member")
        for h in self.members:
            if h.n < 2 or h.m < 1:
                raise ValueError("explicit family members need at least one edge")
            if len(h.components()) != 1:
                raise ValueError("explicit family members must be connected")


ForbiddenFamily = Union[PathFamily, TreeFamily, StarFamily, ExplicitFamily]


def family_name(family: ForbiddenFamily) -> str:
    if isinstance(family, PathFamily):
        return f"P{family.k}"
    if isinstance(family, TreeFamily):
        return f"Trees:{family.k}"
    if isinstance(family, StarFamily):
        return f"Star:{family.leaves}"
    return "List:" + ",".join(to_graph6(h) for h in family.members)


def parse_family(text: str) -> ForbiddenFamily:
    """Parse "P4", "Pk:7", "Trees:5", "Star:4" or "List:<graph6>,<graph6>"."""
    text = text.strip()
    head, _, tail = text.partition(":")
    if head == "Pk":
        return PathFamily(int(tail))
    if head == "Trees":
        return TreeFamily(int(tail))
    if head == "Star":
        return StarFamily(int(tail))
    if head == "List":
        return ExplicitFamily(tuple(from_graph6(p) for p in tail.split(",")))
    if text.startswith("P") and text[1:].isdigit():
        return PathFamily(int(text[1:]))
    raise ValueError(f"unrecognised family spec {text!r}")


# --- path search ------------------------------------------------------------


def _has_path_k(adj: tuple[int, ...], mask: int, k: int) -> bool:
    """True iff some simple path within `mask` visits k vertices. Exact DFS."""
    if mask.bit_count() < k:
        return False
    if k <= 1:
        return mask != 0

    def extend(v: int, visited: int, length: int) -> bool:
        if length == k:
            return True
        nb = adj[v] & mask & ~visited
        while nb:
            low = nb & -nb
            nb ^= low
            w = low.bit_length() - 1
            if extend(w, visited | low, length + 1):
                return True
        return False

    for v in bits(mask):
        if extend(v, 1 << v, 1):
            return True
    return False


def contains_subgraph(g: Graph, h: Graph) -> bool:
    """Does an injective map embed every edge of `h` into `g`?

    Backtracking over a connected expansion order of h, pruning candidates by
    degree. h must be connected and no larger than g.
    """

    if h.n > g.n:
        raise ValueError("pattern larger than host")
    if len(h.components()) != 1:
        raise ValueError("pattern must be connected")
    # order h's vertices so each (after the first) touches an earlier one
    start = max(range(h.n), key=lambda v: h.degree(v))
    order = [start]
    placed = 1 << start
    while len(order) < h.n:
        nxt = max(
            (v for v in range(h.n) if not placed >> v & 1 and h.adj[v] & placed),
            key=lambda v: (h.adj[v] & placed).bit_count(),
        )
        order.append(nxt)
        placed |= 1 << nxt
    hdeg = h.degrees()
    gdeg = g.degrees()
    pos = {v: i for i, v in enumerate(order)}
    image = [0] * h.n  # order index -> g vertex

    def assign(i: int, used: int) -> bool:
        if i == h.n:
            return True
        hv = order[i]
        # candidates must be adjacent (in g) to images of hv's placed neighbours
        cand = ~used & ((1 << g.n) - 1)
        for hw in bits(h.adj[hv]):
            j = pos[hw]
            if j < i:
                cand &= g.adj[image[j]]
        for gv in bits(cand):
            if gdeg[gv] < hdeg[hv]:
                continue
            image[i] = gv
            if assign(i + 1, used | (1 << gv)):
                return True
        return False

    return assign(0, 0)


# --- freeness and legality --------------------------------------------------


def is_free(g: Graph, family: ForbiddenFamily) -> bool:
    if isinstance(family, PathFamily):
        for mask in g.components().masks:
            if mask.bit_count() >= family.k and _has_path_k(g.adj, mask, family.k):
                return False
        return True
    if isinstance(family, TreeFamily):
        return all(mask.bit_count() < family.k for mask in g.components().masks)
    if isinstance(family, StarFamily):
        return g.max_degree() <= family.leaves - 1
    return not any(h.n <= g.n and contains_subgraph(g, h) for h in family.members)


def creates_forbidden(g: Graph, family: ForbiddenFamily, edge: Move) -> bool:
    """Would adding `edge` to the family-free graph `g` break freeness?

    Only the component touched by the edge can host a new forbidden subgraph,
    so the search is restricted to it.
    """

    u, v = edge
    if g.has_edge(u, v):
        raise ValueError(f"edge {u}-{v} already present")
    if isinstance(family, StarFamily):
        return g.degree(u) >= family.leaves - 1 or g.degree(v) >= family.leaves - 1
    cv = g.components()
    if isinstance(family, TreeFamily):
        if cv.labels[u] == cv.labels[v]:
            return False
        return cv.mask_of(u).bit_count() + cv.mask_of(v).bit_count() >= family.k
    g2 = g.add_edge(u, v)
    comp = cv.mask_of(u) | cv.mask_of(v) if cv.labels[u] != cv.labels[v] else cv.mask_of(u)
    if isinstance(family, PathFamily):
        return _has_path_k(g2.adj, comp, family.k)
    sub = g2.induced(list(bits(comp)))
    return any(h.n <= sub.n and contains_subgraph(sub, h) for h in family.members)


def legal_moves(g: Graph, family: ForbiddenFamily) -> list[Move]:
    """Absent edges whose addition keeps freeness, lexicographically ordered.

    Empty exactly when `g` is family-saturated.
    """
    return [e for e in g.absent_edges() if not creates_forbidden(g, family, e)]


def has_legal_move(g: Graph, family: ForbiddenFamily) -> bool:
    return any(not creates_forbidden(g, family, e) for e in g.absent_edges())


def is_legal(g: Graph, family: ForbiddenFamily, edge: Move) -> bool:
    u, v = edge
    if u == v or not (0 <= u < g.n and 0 <= v < g.n) or g.has_edge(u, v):
        return False
    return not creates_forbidden(g, family, norm_edge(u, v))


def max_saturated_edges(family: ForbiddenFamily, n: int) -> int:
    """Admissible upper bound on the edge count of any family-free graph on n."""
    if isinstance(family, PathFamily):
        return n * (family.k - 1) // 2
    if isinstance(family, TreeFamily):
        k = family.k
        full, rem = divmod(n, k - 1)
        return full * (k - 1) * (k - 2) // 2 + rem * (rem - 1) // 2
    if isinstance(family, StarFamily):
        return n * (family.leaves - 1) // 2
    return n * (n - 1) // 2
