"""Saturated-graph classification and enumeration, score-bound evaluators,
and per-game trace statistics.

All bound arithmetic is exact rational; verdicts never go through floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Optional, Sequence, Union

from .engine import GameRecord, Player
from .families import ForbiddenFamily, has_legal_move, is_free
from .graph import Graph
from .shapes import CLIQUE1, CLIQUE2, TRIANGLE, ComponentLabel, label_component


# --- saturated-graph classifiers ----------------------------------------------


@dataclass(frozen=True)
class SaturatedClass:
    labels: tuple[ComponentLabel, ...]

    def display(self) -> str:
        return "+".join(lab.display() for lab in self.labels)

    def to_json_dict(self) -> dict:
        return {"components": [lab.display() for lab in self.labels]}


def component_labels(g: Graph) -> tuple[ComponentLabel, ...]:
    return tuple(label_component(g, ms) for ms in g.components().members)


def classify_p4_saturated(g: Graph) -> Optional[SaturatedClass]:
    """Exact component grammar of graphs saturated for the 4-vertex path.

    Accepts triangles plus stars on >= 2 vertices with the 3-vertex path
    excluded (closing it into a triangle is always legal, so it never appears
    saturated), or triangles plus exactly one isolated vertex.
    """
    labels = component_labels(g)
    isolated = sum(1 for lab in labels if lab == CLIQUE1)
    if isolated == 0:
        ok = all(
            lab in (TRIANGLE, CLIQUE2) or (lab.kind == "star" and lab.a >= 3)
            for lab in labels
        )
        return SaturatedClass(labels) if ok else None
    if isolated == 1 and all(lab in (TRIANGLE, CLIQUE1) for lab in labels):
        return SaturatedClass(labels)
    return None


def classify_p5_saturated(g: Graph) -> Optional[SaturatedClass]:
    """Exact component grammar of graphs saturated for the 5-vertex path.

    Saturated components are K_4, K_3, pendant triangles T_j with j >= 2, and
    double stars D_{k,l} with k,l >= 2, plus at most one isolated edge.
    Shapes on exactly 4 vertices other than K_4 (the 4-path, the 3-leaf star,
    T_1) always admit a legal internal edge, as do stars and D_{1,l}, so they
    are excluded even though they are path-free. An isolated vertex coexists
    only with K_4 components.
    """
    labels = component_labels(g)
    isolated = sum(1 for lab in labels if lab == CLIQUE1)
    k2 = sum(1 for lab in labels if lab == CLIQUE2)

    def core_ok(lab: ComponentLabel) -> bool:
        if lab.kind == "clique":
            return lab.a in (3, 4)
        if lab.kind == "tpend":
            return lab.a >= 2
        if lab.kind == "dstar":
            return lab.a >= 2  # a <= b, so both sides carry >= 2 pendants
        return False

    others = [lab for lab in labels if lab not in (CLIQUE1, CLIQUE2)]
    if isolated == 0:
        if k2 <= 1 and all(core_ok(lab) for lab in others):
            return SaturatedClass(labels)
        return None
    if isolated == 1 and k2 == 0 and all(lab == ComponentLabel("clique", 4) for lab in others):
        return SaturatedClass(labels)
    return None


# --- exhaustive enumeration up to isomorphism -----------------------------------

ALL_GRAPHS_CAP = 8
SATURATED_CAP = 9


@lru_cache(maxsize=None)
def all_graphs(n: int) -> tuple[Graph, ...]:
    """Every graph on n vertices up to isomorphism (vertex augmentation with
    canonical deduplication), sorted by canonical key."""
    if n > ALL_GRAPHS_CAP:
        raise ValueError(f"all_graphs capped at n <= {ALL_GRAPHS_CAP}")
    if n == 1:
        return (Graph.empty(1),)
    seen: dict[bytes, Graph] = {}
    for g in all_graphs(n - 1):
        for subset in range(1 << (n - 1)):
            adj = [a | ((subset >> v & 1) << (n - 1)) for v, a in enumerate(g.adj)]
            adj.append(subset)
            h = Graph(n, tuple(adj), g.m + subset.bit_count())
            seen.setdefault(h.canonical_key(), h)
    return tuple(g for _, g in sorted(seen.items()))


@lru_cache(maxsize=None)
def free_graphs(n: int, family: ForbiddenFamily) -> tuple[Graph, ...]:
    """Every family-free graph on n vertices up to isomorphism.

    Deleting a vertex preserves freeness, so augmenting the free graphs on
    n-1 vertices covers everything.
    """
    if n > SATURATED_CAP:
        raise ValueError(f"free_graphs capped at n <= {SATURATED_CAP}")
    if n == 1:
        return (Graph.empty(1),)
    seen: dict[bytes, Graph] = {}
    for g in free_graphs(n - 1, family):
        for subset in range(1 << (n - 1)):
            adj = [a | ((subset >> v & 1) << (n - 1)) for v, a in enumerate(g.adj)]
            adj.append(subset)
            h = Graph(n, tuple(adj), g.m + subset.bit_count())
            key = h.canonical_key()
            if key not in seen and is_free(h, family):
                seen[key] = h
    return tuple(g for _, g in sorted(seen.items()))


def saturated_graphs(n: int, family: ForbiddenFamily) -> tuple[Graph, ...]:
    """All family-saturated graphs on n vertices up to isomorphism."""
    return tuple(
        g for g in free_graphs(n, family) if not has_legal_move(g, family)
    )


def enumerate_saturated(n: int, family: ForbiddenFamily) -> list[bytes]:
    return [g.canonical_key() for g in saturated_graphs(n, family)]


# --- score bounds ---------------------------------------------------------------


@dataclass(frozen=True)
class BoundReport:
    theorem: str
    n: int
    k: Optional[int]
    lower: Fraction
    upper: Fraction
    observed: Optional[int] = None
    exact: bool = False
    note: str = ""

    @property
    def holds(self) -> Optional[bool]:
        if self.observed is None:
            return None
        return self.lower <= self.observed <= self.upper

    def to_json_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "n": self.n,
            "k": self.k,
            "lower": str(self.lower),
            "upper": str(self.upper),
            "observed": self.observed,
            "exact": self.exact,
            "holds": self.holds,
            "note": self.note,
        }


THEOREMS = ("2.1", "2.2", "2.3", "2.4", "2.5")


def bound(
    theorem: str, n: int, k: Optional[int] = None, observed: Optional[int] = None
) -> BoundReport:
    """Score window for one of the headline results.

    2.1: pass-variant path game, [n(k-2)/4, n(k-1)/2] for n >= k.
    2.2: 4-vertex path game, [4n/5 - 8/5, 4n/5 + 1].
    2.3: 5-vertex path game, [n-1, n+2].
    2.4: all-trees game, exact unless n = 1 mod (k-1) (then a width-(k-3)
         interval, as printed; see the note on k=3).
    2.5: star game, [(kn - 2(k-1))/2, kn/2] for n >= (3k+1)(k-2).

    Out-of-domain parameters raise rather than silently extrapolate.
    """
    if theorem == "2.1":
        if k is None or k < 2:
            raise ValueError("2.1 needs k >= 2")
        if n < k:
            raise ValueError(f"2.1 needs n >= k, got n={n} k={k}")
        return BoundReport(
            theorem, n, k, Fraction(n * (k - 2), 4), Fraction(n * (k - 1), 2), observed
        )
    if theorem == "2.2":
        if n < 1:
            raise ValueError("2.2 needs n >= 1")
        return BoundReport(
            theorem, n, 4,
            Fraction(4 * n, 5) - Fraction(8, 5), Fraction(4 * n, 5) + 1, observed,
        )
    if theorem == "2.3":
        if n < 1:
            raise ValueError("2.3 needs n >= 1")
        return BoundReport(theorem, n, 5, Fraction(n - 1), Fraction(n + 2), observed)
    if theorem == "2.4":
        if k is None or k < 2:
            raise ValueError("2.4 needs k >= 2")
        value = tree_score_formula(n, k)
        if isinstance(value, int):
            return BoundReport(
                theorem, n, k, Fraction(value), Fraction(value), observed, exact=True
            )
        lower, upper = value
        note = "printed interval exceeds the k=3 game value" if k == 3 else ""
        return BoundReport(theorem, n, k, lower, upper, observed, note=note)
    if theorem == "2.5":
        if k is None or k < 2:
            raise ValueError("2.5 needs k >= 2")
        if n < (3 * k + 1) * (k - 2):
            raise ValueError(f"2.5 needs n >= (3k+1)(k-2) = {(3 * k + 1) * (k - 2)}")
        return BoundReport(
            theorem, n, k,
            Fraction(k * n - 2 * (k - 1), 2), Fraction(k * n, 2), observed,
        )
    raise ValueError(f"unknown theorem id {theorem!r}")


def tree_score_formula(n: int, k: int) -> Union[int, tuple[Fraction, Fraction]]:
    """Score of the all-trees game: exact when n is not 1 mod (k-1), else the
    printed two-sided window (exact rational endpoints)."""
    if k < 2:
        raise ValueError("need k >= 2")
    if k == 2:
        return 0
    full = n // (k - 1)
    if n % (k - 1) != 1:
        return full * comb(k - 1, 2) + comb(n - (k - 1) * full, 2)
    top = Fraction(n, k - 1) * comb(k - 1, 2)
    return (top - (k - 3), top)


def degree_sum_bound(n: int, k: int, delta: int) -> Fraction:
    """Edge-count lower bound when every two disconnected vertices have degree
    sum at least k-2 and the minimum degree is delta."""
    if not 0 <= delta <= n - 1:
        raise ValueError("delta must be in 0..n-1")
    return Fraction(max(k - 2 - 2 * delta, 0) * (n - delta - 1) + delta * n, 2)


def minimizing_delta(k: int) -> int:
    """The minimum degree that minimises degree_sum_bound."""
    return (k - 2) // 2


def f_sequence(n: int, k: int) -> list[Fraction]:
    """Excess-degree budget recurrence f_0..f_{k-1}:
    f_0 = 0, f_{i+1} = f_i + (n + 2k + 2) - 2 f_i / (k - i)."""
    if k < 2:
        raise ValueError("need k >= 2")
    out = [Fraction(0)]
    for i in range(k - 1):
        fi = out[-1]
        out.append(fi + (n + 2 * k + 2) - Fraction(2, k - i) * fi)
    return out


def f_closed(n: int, k: int, i: int) -> Fraction:
    """Closed form of f_i: i (n + 2k + 2) (k - i) / (k - 1)."""
    return Fraction(i * (n + 2 * k + 2) * (k - i), k - 1)


# --- trace statistics -------------------------------------------------------------


@dataclass(frozen=True)
class ThresholdStat:
    t: int  # first time the minimum degree reaches the threshold, right after
    g: int  # the minimising player's move; excess degree sum and count there
    lam: int


@dataclass(frozen=True)
class TraceStats:
    thresholds: tuple[Optional[ThresholdStat], ...]  # index i = degree threshold
    new_vertex_usage: tuple[int, ...]  # isolated vertices consumed per action

    def usage_pairs(self, actions: Sequence[tuple[Player, object]]) -> list[int]:
        """Total consumption of each Shortener-then-Prolonger move pair."""
        out = []
        for j in range(len(actions) - 1):
            if actions[j][0] is Player.SHORTENER and actions[j + 1][0] is Player.PROLONGER:
                out.append(self.new_vertex_usage[j] + self.new_vertex_usage[j + 1])
        return out


def trace_stats(record: GameRecord, k: int) -> TraceStats:
    """Degree-threshold times t_i, excess sums g_i and counts lambda_i for
    i = 0..k-1, plus per-move isolated-vertex consumption.

    t_0 is 0 by convention; for i >= 1, t_i is the least time with minimum
    degree >= i where the minimising player has just moved.
    """
    graphs = [s.graph for s in record.replay()]
    usage = tuple(
        len(graphs[j].isolated_vertices()) - len(graphs[j + 1].isolated_vertices())
        for j in range(len(record.actions))
    )
    thresholds: list[Optional[ThresholdStat]] = []
    for i in range(k):
        t: Optional[int] = 0 if i == 0 else None
        if i > 0:
            for j, (player, _) in enumerate(record.actions):
                if player is Player.SHORTENER and graphs[j + 1].min_degree() >= i:
                    t = j + 1
                    break
        if t is None:
            thresholds.append(None)
            continue
        degs = graphs[t].degrees()
        thresholds.append(
            ThresholdStat(
                t=t,
                g=sum(max(d - i, 0) for d in degs),
                lam=sum(1 for d in degs if d > i),
            )
        )
    return TraceStats(tuple(thresholds), usage)
