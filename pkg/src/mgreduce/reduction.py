"""Reduction of multigraph isomorphism to additive code equivalence.

The generator G(Γ) has one row per edge. Rows are ordered by (weight, u, v)
so that, for every level i, the edges of weight >= i are the bottom rows and
each [O_i; D_i] block is literally a zero block above a diagonal block.

Column layout, left to right::

    copies x D_1  |  [O_2; D_2]  |  ...  |  [O_h; D_h]  |  A

with ``copies = h + 2`` (or ``3`` for the h = 2 reduced variant).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .codes import (
    AdditiveCode,
    EquivalenceWitness,
    apply_witness,
    format_code,
    pack_word,
    parse_code,
    unpack_word,
)
from .errors import GuardExceeded, InvalidWitness
from .field import FieldContext, choose_degree, make_field
from .multigraph import (
    Edge,
    MultiGraph,
    VertexBijection,
    edge_filter,
    incidence_matrix,
    is_isomorphism,
)

O2_GUARD = 20


@dataclass(frozen=True)
class Zone:
    """Role of one column of G(Γ).

    kind "D1": copy ``index`` (1-based) of D_1, ``edge`` the edge on its diagonal.
    kind "D": level ``index`` (>= 2) block, ``edge`` as above.
    kind "V": incidence column of vertex ``index``; ``edge`` is None.
    """

    kind: str
    index: int
    edge: Optional[Edge] = None

    def key(self) -> Tuple:
        return (self.kind, self.index, self.edge)

    def format(self) -> str:
        if self.kind == "V":
            return "V %d" % self.index
        return "%s %d %d-%d" % (self.kind, self.index, self.edge[0], self.edge[1])


@dataclass(frozen=True)
class ReductionCode:
    graph: MultiGraph
    field: FieldContext
    code: AdditiveCode
    copies: int
    row_edges: Tuple[Edge, ...]
    zones: Tuple[Zone, ...] = field(repr=False)

    @property
    def N(self) -> int:
        return self.code.n

    @property
    def degenerate(self) -> bool:
        """True for edgeless graphs: the code has no rows."""
        return not self.row_edges

    def row_weight_expected(self, w: int) -> int:
        # copies of D_1, one entry per level 2..w, two endpoints in A
        return self.copies + (w - 1) + 2

    def row_of(self, edge: Edge) -> int:
        return self.row_edges.index(edge)

    def vertex_column(self, v: int) -> int:
        return self.N - self.graph.n + (v - 1)


def compute_length(G: MultiGraph) -> int:
    """(h + 2)|E_1| + |E_2| + ... + |E_h| + |V|."""
    m = len(G.edges)
    return (G.h + 2) * m + sum(len(edge_filter(G, i)) for i in range(2, G.h + 1)) + G.n


def _field_for(G: MultiGraph) -> FieldContext:
    return make_field(choose_degree(max(G.h, 1)))


def _build(G: MultiGraph, copies: int) -> ReductionCode:
    F = _field_for(G)
    row_edges = tuple(sorted(G.edges, key=lambda e: (e[2], e[0], e[1])))
    incidence = dict(zip(G.edges, incidence_matrix(G, F)))
    m = len(row_edges)
    columns: List[List[int]] = []
    zones: List[Zone] = []
    for b in range(1, copies + 1):
        for a, e in enumerate(row_edges):
            col = [0] * m
            col[a] = F.exp(e[2] - 1)
            columns.append(col)
            zones.append(Zone("D1", b, e))
    for i in range(2, G.h + 1):
        for a, e in enumerate(row_edges):
            if e[2] < i:
                continue
            col = [0] * m
            col[a] = F.exp(e[2] - 1)
            columns.append(col)
            zones.append(Zone("D", i, e))
    for v in range(1, G.n + 1):
        columns.append([incidence[e][v - 1] for e in row_edges])
        zones.append(Zone("V", v))
    gen = tuple(tuple(col[a] for col in columns) for a in range(m))
    code = AdditiveCode(F, len(columns), gen)
    return ReductionCode(G, F, code, copies, row_edges, tuple(zones))


def build_generator(G: MultiGraph) -> ReductionCode:
    return _build(G, G.h + 2)


def build_generator_h2_reduced(G: MultiGraph) -> ReductionCode:
    """Variant with one D_1 copy deleted; only defined for h = 2."""
    if G.h != 2:
        raise ValueError("reduced construction needs h = 2, got h = %d" % G.h)
    return _build(G, 3)


# --- observations ------------------------------------------------------------

@dataclass
class Report:
    name: str
    violations: List[str] = field(default_factory=list)
    distribution: Optional[Tuple[int, ...]] = None

    @property
    def ok(self) -> bool:
        return not self.violations

    def format(self) -> str:
        lines = ["%s: %s" % (self.name, "ok" if self.ok else "%d violation(s)" % len(self.violations))]
        lines.extend("  " + v for v in self.violations)
        if self.distribution is not None:
            nz = ["%d@%d" % (c, w) for w, c in enumerate(self.distribution) if c]
            lines.append("  weight distribution: " + " ".join(nz))
        return "\n".join(lines)


def verify_O1(RC: ReductionCode) -> Report:
    """Each weight-i row has the expected weight and only e^(i-1) as nonzero symbol."""
    report = Report("O1")
    F = RC.field
    for a, (u, v, w) in enumerate(RC.row_edges):
        row = RC.code.gen[a] if a < RC.code.k else ()
        weight = sum(1 for s in row if s)
        want = RC.row_weight_expected(w)
        if weight != want:
            report.violations.append("row %d (edge %d-%d, weight %d): symbol weight %d, expected %d"
                                     % (a, u, v, w, weight, want))
        alphabet = {s for s in row if s}
        if alphabet != {F.exp(w - 1)}:
            report.violations.append("row %d (edge %d-%d): nonzero symbols %s, expected {%x}"
                                     % (a, u, v, sorted(alphabet), F.exp(w - 1)))
    return report


def verify_O2(RC: ReductionCode, guard: int = O2_GUARD) -> Report:
    """Every nonzero codeword of weight <= 2h+3 must be a generator row."""
    C = RC.code
    if C.k > guard:
        raise GuardExceeded("O2 check enumerates 2^%d codewords (guard %d)" % (C.k, guard))
    report = Report("O2")
    threshold = 2 * RC.graph.h + 3
    rows = set(C.packed)
    counts = [0] * (C.n + 1)
    for x in C.codewords(guard):
        w = C.weight(x)
        counts[w] += 1
        if x and w <= threshold and x not in rows:
            report.violations.append("codeword of weight %d <= %d is not a generator row: %s"
                                     % (w, threshold, " ".join("%x" % s for s in unpack_word(C.field.r, C.n, x))))
    report.distribution = tuple(counts)
    return report


def verify_h2_pairs(RC: ReductionCode) -> Report:
    """No sum of two weight-1 edge rows has the weight of a weight-2 edge row."""
    report = Report("h2-pairs")
    C = RC.code
    forbidden = RC.row_weight_expected(2)
    ones = [a for a, e in enumerate(RC.row_edges) if e[2] == 1]
    for i, a in enumerate(ones):
        for b in ones[i + 1:]:
            w = C.weight(C.packed[a] ^ C.packed[b])
            if w == forbidden:
                report.violations.append("rows %d + %d have weight %d" % (a, b, w))
    return report


def d_zone_multiplicities(RC: ReductionCode) -> Dict[Edge, int]:
    """How often the weight-one column supported on each edge's row occurs
    among the first N - |V| columns."""
    counts: Dict[Edge, int] = {e: 0 for e in RC.row_edges}
    n_d = RC.N - RC.graph.n
    for j in range(n_d):
        col = RC.code.column(j)
        support = [a for a, s in enumerate(col) if s]
        if len(support) == 1:
            counts[RC.row_edges[support[0]]] += 1
    return counts


# --- witnesses ----------------------------------------------------------------

def _edge_image(e: Edge, sigma: VertexBijection) -> Edge:
    u, v = sigma(e[0]), sigma(e[1])
    return (min(u, v), max(u, v), e[2])


def _zone_image(z: Zone, sigma: VertexBijection) -> Zone:
    if z.kind == "V":
        return Zone("V", sigma(z.index))
    return Zone(z.kind, z.index, _edge_image(z.edge, sigma))


def witness_from_isomorphism(G1: MultiGraph, G2: MultiGraph, sigma: VertexBijection,
                             reduced: bool = False) -> EquivalenceWitness:
    """Witness mapping the code of G1 onto the code of G2, induced by ``sigma``.

    Rows are permuted by the induced edge permutation, D-zone columns follow
    their edges, vertex columns follow ``sigma``; all symbol maps are trivial.
    """
    if not is_isomorphism(G1, G2, sigma):
        raise ValueError("bijection is not an isomorphism between the graphs")
    if G1.h != G2.h:
        raise ValueError("graphs declare different maximum weights")
    build = build_generator_h2_reduced if reduced else build_generator
    RC1, RC2 = build(G1), build(G2)
    target = {z.key(): t for t, z in enumerate(RC2.zones)}
    col_perm = tuple(target[_zone_image(z, sigma).key()] for z in RC1.zones)
    row_pos = {e: a for a, e in enumerate(RC2.row_edges)}
    rows = [0] * len(RC1.row_edges)
    for a, e in enumerate(RC1.row_edges):
        rows[row_pos[_edge_image(e, sigma)]] = 1 << a
    return EquivalenceWitness(col_perm, (None,) * RC1.N, tuple(rows))


def transformed_generator(RC: ReductionCode, W: EquivalenceWitness) -> Tuple[Tuple[int, ...], ...]:
    """Rows of S·G with columns permuted and symbol maps applied."""
    gen = RC.code.gen
    out = []
    for m in W.row_transform:
        acc = [0] * RC.N
        for l in range(len(gen)):
            if (m >> l) & 1:
                acc = [a ^ b for a, b in zip(acc, gen[l])]
        out.append(W.map_word(acc))
    return tuple(out)


def isomorphism_from_witness(RC1: ReductionCode, RC2: ReductionCode,
                             W: EquivalenceWitness) -> VertexBijection:
    """Recover a vertex isomorphism from a valid witness between reduction codes.

    The witness may send vertex columns to interchangeable D-zone columns (a
    degree-one vertex column equals a D column of its edge). Generator rows
    are mapped to generator rows, giving an edge bijection; each vertex is
    then matched to a vertex whose incident-edge set is the image of its own,
    keeping the witness's choice whenever that choice is already consistent.
    """
    G1, G2 = RC1.graph, RC2.graph
    if G1.n != G2.n or RC1.N != RC2.N:
        raise InvalidWitness("codes of different shape cannot be equivalent")
    if apply_witness(RC1.code, W) != RC2.code:
        raise InvalidWitness("witness does not map the first code onto the second")

    row_index = {pack_word(RC2.field.r, row): a for a, row in enumerate(RC2.code.gen)}
    tau = []
    for row in RC1.code.gen:
        img = pack_word(RC2.field.r, W.map_word(row))
        if img not in row_index:
            raise InvalidWitness("a generator row is not mapped onto a generator row")
        tau.append(row_index[img])

    def support(RC: ReductionCode, v: int) -> frozenset:
        col = RC.code.column(RC.vertex_column(v)) if RC.code.k else ()
        return frozenset(a for a, s in enumerate(col) if s)

    wanted = {v: frozenset(tau[a] for a in support(RC1, v)) for v in range(1, G1.n + 1)}
    have = {x: support(RC2, x) for x in range(1, G2.n + 1)}
    phi: Dict[int, int] = {}
    used = set()
    for v in range(1, G1.n + 1):
        z = RC2.zones[W.col_perm[RC1.vertex_column(v)]]
        if z.kind == "V" and z.index not in used and have[z.index] == wanted[v]:
            phi[v] = z.index
            used.add(z.index)
    for v in range(1, G1.n + 1):
        if v in phi:
            continue
        for x in range(1, G2.n + 1):
            if x not in used and have[x] == wanted[v]:
                phi[v] = x
                used.add(x)
                break
        else:
            raise InvalidWitness("vertex %d has no partner with a matching incidence column" % v)
    sigma = VertexBijection(tuple(phi[v] for v in range(1, G1.n + 1)))
    if not is_isomorphism(G1, G2, sigma):
        raise InvalidWitness("recovered vertex map is not an isomorphism")
    return sigma


# --- serialization ---------------------------------------------------------

def format_zone_map(RC: ReductionCode) -> str:
    lines = ["# zone map",
             "# graph %d %d" % (RC.graph.n, RC.graph.h),
             "# copies %d" % RC.copies]
    lines.extend("# row %d %d %d" % e for e in RC.row_edges)
    lines.extend(z.format() for z in RC.zones)
    return "\n".join(lines) + "\n"


def _parse_edge(text: str, weights: Dict[Tuple[int, int], int]) -> Edge:
    u, v = (int(t) for t in text.split("-"))
    return (u, v, weights[(u, v)])


def load_reduction(code_text: str, zone_text: str) -> ReductionCode:
    """Rebuild a ReductionCode from a code file and its zone-map sidecar.

    The code is taken as written (not rebuilt), so verification reflects the
    file contents.
    """
    code = parse_code(code_text)
    n = h = copies = None
    row_edges: List[Edge] = []
    zone_lines = []
    for raw in zone_text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if parts[:1] == ["graph"]:
                n, h = int(parts[1]), int(parts[2])
            elif parts[:1] == ["copies"]:
                copies = int(parts[1])
            elif parts[:1] == ["row"]:
                row_edges.append(tuple(int(p) for p in parts[1:4]))
            continue
        zone_lines.append(line)
    if n is None or copies is None:
        raise ValueError("zone map lacks graph/copies header")
    G = MultiGraph.build(n, row_edges, h)
    weights = G.weights
    zones = []
    for line in zone_lines:
        parts = line.split()
        if parts[0] == "V" and len(parts) == 2:
            zones.append(Zone("V", int(parts[1])))
        elif parts[0] in ("D1", "D") and len(parts) == 3:
            zones.append(Zone(parts[0], int(parts[1]), _parse_edge(parts[2], weights)))
        else:
            raise ValueError("malformed zone line %r" % line)
    if len(zones) != code.n:
        raise ValueError("zone map has %d columns, code has %d" % (len(zones), code.n))
    if code.k != len(row_edges):
        raise ValueError("code has %d rows, zone map lists %d edges" % (code.k, len(row_edges)))
    return ReductionCode(G, code.field, code, copies, tuple(row_edges), tuple(zones))


def format_reduction(RC: ReductionCode) -> Tuple[str, str]:
    return format_code(RC.code), format_zone_map(RC)
