"""Bipartite matching with Hall certificates, regular decompositions, and
the directed-cycle walk used by the transversal arguments."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass


@dataclass(frozen=True)
class BipartiteMultigraph:
    """Left vertices 0..left-1, right vertices 0..right-1, edges a multiset."""

    left: int
    right: int
    edges: tuple  # ((l, r), ...) with repetitions allowed

    def __post_init__(self):
        for l, r in self.edges:
            if not (0 <= l < self.left and 0 <= r < self.right):
                raise ValueError("edge (%d, %d) out of range" % (l, r))

    def adjacency(self):
        adj = [set() for _ in range(self.left)]
        for l, r in self.edges:
            adj[l].add(r)
        return adj

    def degrees(self):
        dl = [0] * self.left
        dr = [0] * self.right
        for l, r in self.edges:
            dl[l] += 1
            dr[r] += 1
        return dl, dr


@dataclass(frozen=True)
class Matching:
    pairs: tuple  # ((l, r), ...), left-saturating, sorted by l


@dataclass(frozen=True)
class HallViolation:
    """A left set S with |N(S)| < |S|, witnessing that no matching exists."""

    left_set: tuple
    neighborhood: tuple


def _augment(adj, match_r, u, seen):
    for v in adj[u]:
        if v in seen:
            continue
        seen.add(v)
        if match_r[v] is None or _augment(adj, match_r, match_r[v], seen):
            match_r[v] = u
            return True
    return False


def hall_matching(graph: BipartiteMultigraph):
    """A left-saturating matching, or the violating set certificate.

    Kuhn augmenting paths; on failure from vertex u the left vertices
    reachable by alternating paths form the Hall violator."""
    adj = graph.adjacency()
    match_r = [None] * graph.right
    for u in range(graph.left):
        seen = set()
        if not _augment(adj, match_r, u, seen):
            # alternating tree from u: lefts matched into `seen`, plus u
            left_set = {u} | {match_r[v] for v in seen}
            nbhd = set()
            for l in left_set:
                nbhd |= adj[l]
            assert len(nbhd) < len(left_set)
            return HallViolation(tuple(sorted(left_set)), tuple(sorted(nbhd)))
    pairs = tuple(sorted((u, v) for v, u in enumerate(match_r) if u is not None))
    return Matching(pairs)


def decompose_regular(graph: BipartiteMultigraph, k: int):
    """Split a k-regular bipartite multigraph into k perfect matchings."""
    dl, dr = graph.degrees()
    for side, degs in (("left", dl), ("right", dr)):
        for v, d in enumerate(degs):
            if d != k:
                raise ValueError("%s vertex %d has degree %d, expected %d" % (side, v, d, k))
    if graph.left != graph.right:
        raise ValueError("regularity forces equal sides")
    remaining = Counter(graph.edges)
    out = []
    for _ in range(k):
        sub = BipartiteMultigraph(graph.left, graph.right, tuple(remaining.elements()))
        m = hall_matching(sub)
        if isinstance(m, HallViolation):
            raise AssertionError("regular graph lost a perfect matching: %r" % (m,))
        out.append(m)
        for e in m.pairs:
            remaining[e] -= 1
    assert sum(remaining.values()) == 0
    return out


def find_directed_cycle(successor):
    """A directed cycle in an out-degree-one digraph without self-loops.

    `successor` is a sequence with successor[i] the unique out-neighbour of
    i.  Walk from the smallest vertex; the first repeat closes the cycle."""
    n = len(successor)
    for i, s in enumerate(successor):
        if not 0 <= s < n:
            raise ValueError("successor of %d out of range" % i)
        if s == i:
            raise ValueError("self-loop at %d" % i)
    walk = [0]
    pos = {0: 0}
    while True:
        nxt = successor[walk[-1]]
        if nxt in pos:
            return tuple(walk[pos[nxt]:])
        pos[nxt] = len(walk)
        walk.append(nxt)
