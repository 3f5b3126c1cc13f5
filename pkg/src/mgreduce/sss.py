"""Hull-based coordinate signatures in the style of support splitting.

Binary codes use the classical pair (hull of C_i, hull of (C^perp)_i). For
additive codes a coordinate is not deleted; its column is replaced by one
spanning a chosen subspace of the column's coefficient space rho_i, and the
signature aggregates the hull weight distributions over every subspace of a
given dimension.
"""

from __future__ import annotations

import csv
import io
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .codes import (
    AdditiveCode,
    dual,
    hull,
    truncate_zero,
    weight_distribution,
)
from .linalg import BinarySubspace, enumerate_subspaces, enumerate_vectors, solve_combination
from .multigraph import MultiGraph, random_multigraph
from .reduction import build_generator, compute_length

HULL_GUARD = 20
EXPERIMENT_MAX_N = 12


@dataclass(frozen=True)
class Signature:
    coordinate: int
    kind: str  # "binary" or "additive-d<dim>"
    payload: Tuple[Tuple[int, ...], ...]
    hull_dims: Tuple[int, ...]

    def key(self) -> Tuple:
        """Everything except the coordinate; equal keys mean equal signatures."""
        return (self.kind, self.payload, self.hull_dims)

    def format(self) -> str:
        dists = "; ".join(",".join(map(str, p)) for p in self.payload)
        return "%d %s dims=%s [%s]" % (self.coordinate, self.kind,
                                        ",".join(map(str, self.hull_dims)), dists)


def rho_subspace(C: AdditiveCode, i: int) -> BinarySubspace:
    """Span in GF(2)^k of the r coefficient vectors of generator column i."""
    if not 0 <= i < C.n:
        raise IndexError("coordinate %d outside 0..%d" % (i, C.n - 1))
    vecs = []
    for j in range(C.field.r):
        v = 0
        for l, row in enumerate(C.gen):
            if (row[i] >> j) & 1:
                v |= 1 << l
        vecs.append(v)
    return BinarySubspace.span(vecs, C.k)


def column_from_basis(basis: Sequence[int], k: int, r: int) -> Tuple[int, ...]:
    """Column whose coefficient vector on alpha^j is basis[j] (zero beyond len(basis))."""
    if len(basis) > r:
        raise ValueError("subspace of dimension %d does not fit GF(2^%d)" % (len(basis), r))
    col = []
    for l in range(k):
        s = 0
        for j, b in enumerate(basis):
            if (b >> l) & 1:
                s |= 1 << j
        col.append(s)
    return tuple(col)


def column_from_subspace(pi: BinarySubspace, r: int) -> Tuple[int, ...]:
    """Column realising pi through its canonical basis on alpha^0, alpha^1, ..."""
    return column_from_basis(pi.basis, pi.ambient_dim, r)


def ordered_bases(pi: BinarySubspace) -> Iterator[Tuple[int, ...]]:
    """Every ordered basis of pi (|GL(dim pi, 2)| of them)."""
    vectors = [v for v in enumerate_vectors(pi) if v]

    def extend(prefix: Tuple[int, ...], span: BinarySubspace):
        if len(prefix) == pi.dim:
            yield prefix
            return
        for v in vectors:
            if v not in span:
                yield from extend(prefix + (v,), span + BinarySubspace.span([v], pi.ambient_dim))

    yield from extend((), BinarySubspace.zero(pi.ambient_dim))


def _replace_column(C: AdditiveCode, i: int, col: Sequence[int]) -> AdditiveCode:
    rows = []
    for row, s in zip(C.gen, col):
        new = list(row)
        new[i] = s
        rows.append(new)
    return AdditiveCode.span(C.field, C.n, rows)


def subspace_truncate(C: AdditiveCode, i: int, pi: BinarySubspace) -> AdditiveCode:
    """C_{i,pi}: generator column i replaced by the column realising pi."""
    rho = rho_subspace(C, i)
    if pi.ambient_dim != C.k or not pi.issubspace(rho):
        raise ValueError("pi is not a subspace of rho_%d" % i)
    return _replace_column(C, i, column_from_subspace(pi, C.field.r))


def _hull_data(C: AdditiveCode, guard: int) -> Tuple[Tuple[int, ...], int]:
    H = hull(C)
    return weight_distribution(H, guard), H.k


def signature_binary(C: AdditiveCode, i: int, guard: int = HULL_GUARD) -> Signature:
    if C.field.r != 1:
        raise ValueError("binary signature needs r = 1")
    a, da = _hull_data(truncate_zero(C, i), guard)
    b, db = _hull_data(truncate_zero(dual(C), i), guard)
    return Signature(i, "binary", (a, b), (da, db))


def signature_additive(C: AdditiveCode, i: int, d: int = 0, guard: int = HULL_GUARD) -> Signature:
    """Multiset of hull weight distributions of C_{i,pi} over all d-dim pi in rho_i.

    For d >= 2 the column realising pi depends on the basis chosen for pi
    (up to GL(d, 2)), and so would the hull; every ordered basis of every
    pi is therefore included, which keeps the payload independent of the
    generator matrix. For d <= 1 there is exactly one realisation per pi.
    """
    rho = rho_subspace(C, i)
    if not 0 <= d <= rho.dim:
        raise ValueError("d=%d exceeds dim rho_%d = %d" % (d, i, rho.dim))
    data = []
    for pi in enumerate_subspaces(rho, d):
        for basis in ordered_bases(pi):
            col = column_from_basis(basis, C.k, C.field.r)
            data.append(_hull_data(_replace_column(C, i, col), guard))
    payload = tuple(sorted(dist for dist, _ in data))
    dims = tuple(sorted(k for _, k in data))
    return Signature(i, "additive-d%d" % d, payload, dims)


def _effective_dim(C: AdditiveCode, i: int, d: int) -> int:
    return min(d, rho_subspace(C, i).dim)


def coordinate_signatures(C: AdditiveCode, d: int = 0, coords: Optional[Iterable[int]] = None) -> Dict[int, Signature]:
    """Additive signature of each coordinate (d clipped to dim rho_i)."""
    coords = range(C.n) if coords is None else coords
    return {i: signature_additive(C, i, _effective_dim(C, i, d)) for i in coords}


@dataclass
class CoordinateMatch:
    """Outcome of signature-based coordinate matching.

    ``groups`` pairs coordinate classes of the first code with classes of
    the second; a full permutation is available only when every class is a
    singleton. ``scope`` names the equivalence notion for which an
    "inequivalent" verdict is sound.
    """

    verdict: str  # "candidate" or "inequivalent"
    groups: List[Tuple[Tuple[int, ...], Tuple[int, ...]]] = field(default_factory=list)
    rounds: int = 0
    scope: str = ""

    @property
    def permutation(self) -> Optional[Dict[int, int]]:
        if self.verdict != "candidate" or any(len(a) != 1 for a, _ in self.groups):
            return None
        return {a[0]: b[0] for a, b in self.groups}


def _group(labels: Dict[int, Tuple]) -> Dict[Tuple, List[int]]:
    out: Dict[Tuple, List[int]] = {}
    for i in sorted(labels):
        out.setdefault(labels[i], []).append(i)
    return out


def match_coordinates(C: AdditiveCode, D: AdditiveCode, d: int = 0) -> CoordinateMatch:
    """Partition coordinates of C and D by signature and pair up the classes.

    Refinement: coordinates already matched one-to-one are zeroed in both
    codes, the rest are re-signed, and labels are extended; stops when the
    partition is stable or after n rounds.
    """
    if C.n != D.n or C.field.r != D.field.r:
        raise ValueError("codes must share length and alphabet")
    scope = "equivalence" if C.field.r == 1 else "permutation equivalence"
    lab_c = {i: s.key() for i, s in coordinate_signatures(C, d).items()}
    lab_d = {i: s.key() for i, s in coordinate_signatures(D, d).items()}
    fixed: Dict[int, int] = {}
    rounds = 0
    Cz, Dz = C, D
    while True:
        gc, gd = _group(lab_c), _group(lab_d)
        if {k: len(v) for k, v in gc.items()} != {k: len(v) for k, v in gd.items()}:
            return CoordinateMatch("inequivalent", [], rounds, scope)
        fresh = {v[0]: gd[k][0] for k, v in gc.items() if len(v) == 1 and v[0] not in fixed}
        if not fresh or rounds >= C.n:
            break
        rounds += 1
        fixed.update(fresh)
        for i, j in fresh.items():
            Cz, Dz = truncate_zero(Cz, i), truncate_zero(Dz, j)
        free_c = [i for i in range(C.n) if i not in fixed]
        free_d = [j for j in range(D.n) if j not in fixed.values()]
        new_c = coordinate_signatures(Cz, d, free_c)
        new_d = coordinate_signatures(Dz, d, free_d)
        lab_c = {i: lab_c[i] + (new_c[i].key(),) if i in new_c else lab_c[i] for i in lab_c}
        lab_d = {j: lab_d[j] + (new_d[j].key(),) if j in new_d else lab_d[j] for j in lab_d}
    gc, gd = _group(lab_c), _group(lab_d)
    groups = [(tuple(gc[k]), tuple(gd[k])) for k in sorted(gc, key=lambda k: gc[k][0])]
    return CoordinateMatch("candidate", groups, rounds, scope)


# --- truncation lemma --------------------------------------------------------

@dataclass(frozen=True)
class LemmaRow:
    coordinate: int
    u: int  # component of the unit vector in C
    v: int  # component in C^perp
    case: Tuple[int, int]  # (u_i, v_i)
    proof_vector_in_hull: bool  # v in H(C_i) or u in H((C^perp)_i), per case
    hull_dims: Tuple[int, int]  # dim H(C_i), dim H((C^perp)_i)
    unit_in_code: bool  # e_i in C or e_i in C^perp

    @property
    def holds(self) -> bool:
        return self.hull_dims[0] > 0 or self.hull_dims[1] > 0


@dataclass
class LemmaReport:
    rows: List[LemmaRow]

    @property
    def ok(self) -> bool:
        return all(row.holds for row in self.rows)

    @property
    def failures(self) -> List[LemmaRow]:
        return [row for row in self.rows if not row.holds]


def verify_truncation_lemma(C: AdditiveCode) -> LemmaReport:
    """Per-coordinate check that H(C_i) or H((C^perp)_i) is nontrivial.

    Also rebuilds the decomposition e_i = u + v (u in C, v in C^perp) and
    checks that the case vector lies in the corresponding hull. That vector
    is zero exactly when e_i itself lies in C or in C^perp, and then both
    hulls are trivial.
    """
    if C.field.r != 1:
        raise ValueError("truncation lemma applies to binary codes")
    if hull(C).k:
        raise ValueError("code has a nontrivial hull")
    Cp = dual(C)
    basis = list(C.packed) + list(Cp.packed)
    rows = []
    for i in range(C.n):
        e_i = 1 << i
        mask = solve_combination(e_i, basis)
        u = v = 0
        for t, b in enumerate(basis):
            if (mask >> t) & 1:
                if t < C.k:
                    u ^= b
                else:
                    v ^= b
        ui, vi = (u >> i) & 1, (v >> i) & 1
        Hc = hull(truncate_zero(C, i))
        Hd = hull(truncate_zero(Cp, i))
        if (ui, vi) == (1, 0):
            in_hull = v in Hc
        else:
            in_hull = u in Hd
        unit = e_i in C or e_i in Cp
        rows.append(LemmaRow(i, u, v, (ui, vi), in_hull, (Hc.k, Hd.k), unit))
    return LemmaReport(rows)


# --- hull experiment -----------------------------------------------------------

CSV_FIELDS = ("trial", "n", "h", "E", "N", "hull_dim")


def hull_row(trial: int, G: MultiGraph) -> Dict[str, int]:
    RC = build_generator(G)
    return {
        "trial": trial,
        "n": G.n,
        "h": G.h,
        "E": len(G.edges),
        "N": compute_length(G),
        "hull_dim": hull(RC.code).k,
    }


def hull_experiment(n_range: Sequence[int], h: int, trials: int, seed,
                    density: float = 0.5) -> List[Dict[str, int]]:
    """Hull dimensions of reduction codes of random multigraphs; deterministic in ``seed``."""
    lo, hi = n_range
    if not 1 <= lo <= hi <= EXPERIMENT_MAX_N:
        raise ValueError("graph sizes must lie in 1..%d" % EXPERIMENT_MAX_N)
    rng = random.Random(seed)
    rows = []
    for t in range(trials):
        n = rng.randint(lo, hi)
        sub_seed = rng.getrandbits(64)
        G = random_multigraph(n, h, density, sub_seed)
        rows.append(hull_row(t, G))
    return rows


def hull_histogram(rows: Iterable[Dict[str, int]]) -> Dict[int, int]:
    return dict(sorted(Counter(row["hull_dim"] for row in rows).items()))


def format_csv(rows: Iterable[Dict[str, int]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("trial", "n", "h", "|E|", "N", "hull_dim"))
    for row in rows:
        writer.writerow([row[k] for k in CSV_FIELDS])
    return buf.getvalue()

