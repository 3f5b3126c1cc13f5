"""Weighted multigraphs, incidence matrices and a brute-force isomorphism oracle.

Vertices are numbered ``1..n``. An edge ``(u, v, w)`` with ``u < v`` and
weight ``w`` stands for ``w`` parallel edges; at most one entry per pair.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import GuardExceeded
from .field import FieldContext

Edge = Tuple[int, int, int]

ISO_GUARD = 10


@dataclass(frozen=True)
class MultiGraph:
    n: int
    edges: Tuple[Edge, ...]
    h: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("negative vertex count")
        if self.h < 0:
            raise ValueError("negative maximum weight")
        if self.edges and self.h < 1:
            raise ValueError("graph with edges needs h >= 1")
        if self.h > max(1, self.n * (self.n - 1) // 2):
            raise ValueError("h=%d exceeds n(n-1)/2 for n=%d" % (self.h, self.n))
        seen = set()
        for u, v, w in self.edges:
            if u == v:
                raise ValueError("loop at vertex %d" % u)
            if not u < v:
                raise ValueError("edge (%d, %d) not written with u < v" % (u, v))
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise ValueError("edge (%d, %d) has a vertex outside 1..%d" % (u, v, self.n))
            if not 1 <= w <= self.h:
                raise ValueError("weight %d of edge (%d, %d) outside 1..%d" % (w, u, v, self.h))
            if (u, v) in seen:
                raise ValueError("duplicate pair (%d, %d)" % (u, v))
            seen.add((u, v))
        if list(self.edges) != sorted(self.edges):
            raise ValueError("edges not in canonical order")

    @classmethod
    def build(cls, n: int, edges, h: Optional[int] = None) -> "MultiGraph":
        """Normalize orientation and order of ``edges`` (pairs or triples)."""
        canon = []
        for e in edges:
            u, v = e[0], e[1]
            w = e[2] if len(e) > 2 else 1
            if u == v:
                raise ValueError("loop at vertex %d" % u)
            canon.append((min(u, v), max(u, v), w))
        canon.sort()
        if h is None:
            h = max((w for _, _, w in canon), default=0)
        return cls(n, tuple(canon), h)

    @property
    def weights(self) -> Dict[Tuple[int, int], int]:
        return {(u, v): w for u, v, w in self.edges}

    def degree_profile(self, v: int) -> Tuple[int, ...]:
        """Sorted weights of the edges at ``v``."""
        return tuple(sorted(w for a, b, w in self.edges if v in (a, b)))


@dataclass(frozen=True)
class VertexBijection:
    """Permutation of ``1..n``; ``images[v - 1]`` is the image of ``v``."""

    images: Tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError("not a permutation of 1..%d: %r" % (len(self.images), self.images))

    def __call__(self, v: int) -> int:
        return self.images[v - 1]

    def __len__(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> "VertexBijection":
        return cls(tuple(range(1, n + 1)))

    def inverse(self) -> "VertexBijection":
        inv = [0] * len(self.images)
        for v, img in enumerate(self.images, 1):
            inv[img - 1] = v
        return VertexBijection(tuple(inv))

    def __str__(self) -> str:
        return " ".join(map(str, self.images))


def parse(text: str, h: Optional[int] = None) -> MultiGraph:
    """Read ``n [h]`` then ``u v [w]`` lines; ``#`` starts a comment.

    An explicit ``h`` argument overrides the header.
    """
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise ValueError("empty graph description")
    head = lines[0].split()
    if len(head) not in (1, 2):
        raise ValueError("malformed header %r" % lines[0])
    try:
        n = int(head[0])
        declared = int(head[1]) if len(head) == 2 else None
    except ValueError:
        raise ValueError("malformed header %r" % lines[0]) from None
    if h is None:
        h = declared
    edges = []
    for line in lines[1:]:
        parts = line.split()
        if len(parts) not in (2, 3):
            raise ValueError("malformed edge line %r" % line)
        try:
            edges.append(tuple(int(p) for p in parts))
        except ValueError:
            raise ValueError("malformed edge line %r" % line) from None
    return MultiGraph.build(n, edges, h)


def serialize(G: MultiGraph) -> str:
    out = ["%d %d" % (G.n, G.h)]
    out.extend("%d %d %d" % e for e in G.edges)
    return "\n".join(out) + "\n"


def edge_filter(G: MultiGraph, i: int) -> List[Edge]:
    """Edges of weight at least ``i``, canonical order."""
    if not 1 <= i <= max(G.h, 1):
        raise ValueError("weight level %d outside 1..%d" % (i, G.h))
    return [e for e in G.edges if e[2] >= i]


def incidence_matrix(G: MultiGraph, F: FieldContext) -> List[List[int]]:
    """|E| x n matrix; an edge of weight w carries e^(w-1) at both endpoints."""
    if G.h >= F.order:
        raise ValueError("GF(2^%d) too small for weights up to %d" % (F.r, G.h))
    rows = []
    for u, v, w in G.edges:
        row = [0] * G.n
        row[u - 1] = row[v - 1] = F.exp(w - 1)
        rows.append(row)
    return rows


def apply_bijection(G: MultiGraph, sigma: VertexBijection) -> MultiGraph:
    if len(sigma) != G.n:
        raise ValueError("bijection on %d points applied to %d vertices" % (len(sigma), G.n))
    return MultiGraph.build(G.n, [(sigma(u), sigma(v), w) for u, v, w in G.edges], G.h)


def is_isomorphism(G1: MultiGraph, G2: MultiGraph, sigma: VertexBijection) -> bool:
    return G1.n == G2.n and len(sigma) == G1.n and apply_bijection(G1, sigma).edges == G2.edges


def brute_force_isomorphism(G1: MultiGraph, G2: MultiGraph, guard: int = ISO_GUARD) -> Optional[VertexBijection]:
    """Weight-preserving vertex bijection G1 -> G2, or None.

    Backtracking over vertices with candidates restricted to equal
    degree-weight profiles; every partial map is checked against the edges
    between already-placed vertices.
    """
    if G1.n != G2.n:
        return None
    n = G1.n
    if n > guard:
        raise GuardExceeded("isomorphism search on %d > %d vertices" % (n, guard))
    if len(G1.edges) != len(G2.edges):
        return None
    if sorted(w for *_, w in G1.edges) != sorted(w for *_, w in G2.edges):
        return None
    prof1 = [G1.degree_profile(v) for v in range(1, n + 1)]
    prof2 = [G2.degree_profile(v) for v in range(1, n + 1)]
    if Counter(prof1) != Counter(prof2):
        return None

    w1 = G1.weights
    w2 = G2.weights
    adj1: List[Dict[int, int]] = [dict() for _ in range(n + 1)]
    for (u, v), w in w1.items():
        adj1[u][v] = w
        adj1[v][u] = w

    # high-degree vertices first: they constrain the search most
    order = sorted(range(1, n + 1), key=lambda v: (-len(adj1[v]), v))
    cands = {v: [x for x in range(1, n + 1) if prof2[x - 1] == prof1[v - 1]] for v in order}
    image: Dict[int, int] = {}
    used = set()

    def consistent(v: int, x: int) -> bool:
        for u, y in image.items():
            a = w1.get((min(u, v), max(u, v)), 0)
            b = w2.get((min(x, y), max(x, y)), 0)
            if a != b:
                return False
        return True

    def search(pos: int) -> bool:
        if pos == n:
            return True
        v = order[pos]
        for x in cands[v]:
            if x in used or not consistent(v, x):
                continue
            image[v] = x
            used.add(x)
            if search(pos + 1):
                return True
            del image[v]
            used.discard(x)
        return False

    if not search(0):
        return None
    sigma = VertexBijection(tuple(image[v] for v in range(1, n + 1)))
    assert is_isomorphism(G1, G2, sigma)
    return sigma


def random_multigraph(n: int, h: int, density: float, seed) -> MultiGraph:
    """Each pair is an edge with probability ``density``, weight uniform in 1..h."""
    if not 0.0 <= density <= 1.0:
        raise ValueError("density must lie in [0, 1]")
    rng = random.Random(seed)
    edges = []
    for u in range(1, n + 1):
        for v in range(u + 1, n + 1):
            if rng.random() < density:
                edges.append((u, v, rng.randint(1, h)))
    return MultiGraph.build(n, edges, h)


def random_bijection(n: int, rng: random.Random) -> VertexBijection:
    images = list(range(1, n + 1))
    rng.shuffle(images)
    return VertexBijection(tuple(images))


def random_isomorphic_copy(G: MultiGraph, seed) -> Tuple[MultiGraph, VertexBijection]:
    sigma = random_bijection(G.n, random.Random(seed))
    return apply_bijection(G, sigma), sigma


def parse_bijection(text: str) -> VertexBijection:
    """Images of 1..n separated by whitespace or commas."""
    parts = text.replace(",", " ").split()
    try:
        return VertexBijection(tuple(int(p) for p in parts))
    except ValueError as exc:
        raise ValueError("malformed bijection %r: %s" % (text.strip(), exc)) from None
