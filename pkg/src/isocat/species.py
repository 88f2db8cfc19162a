"""Species scenarios, valued graphs, Cartan data and the triangular-ring center.

A scenario is the finite datum of a triangular matrix ring: division
algebras on an x-side and a y-side, plus bimodules across the sides.  The
valued graph of a scenario drives the finite-representation-type test
(positive definiteness of the symmetrized Cartan matrix) and the positive
root enumeration used to index indecomposables.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .exactalg import (
    AlgebraSpec,
    Polynomial,
    RatMatrix,
    algebra_center,
    is_irreducible,
    regular_algebra_from_min_poly,
)


class ScenarioError(ValueError):
    pass


CERTIFIED_FIELD = "certified-field"
ASSERTED_DIVISION = "asserted-division"

_SMOKE_SAMPLES = 1000
_SMOKE_SEED = 91


@dataclass(frozen=True)
class DivisionAlgebraHandle:
    """A division algebra vertex label.

    `certified-field` handles are Q or Q[t]/(m) with m verified irreducible;
    anything else is accepted as `asserted-division` after a randomized
    invertibility smoke test (division is not re-proved).
    """

    spec: AlgebraSpec
    certification: str
    minpoly: Optional[Polynomial] = None

    @property
    def dim(self) -> int:
        return self.spec.dim

    def key(self) -> tuple:
        return self.spec.key()


def rationals() -> DivisionAlgebraHandle:
    alg = AlgebraSpec([[[1]]], [1])
    return DivisionAlgebraHandle(alg, CERTIFIED_FIELD, Polynomial([-1, 1]))


def number_field(minpoly: Polynomial) -> DivisionAlgebraHandle:
    """Q[t]/(m) with basis 1, t, ..., t^(deg-1); m must be irreducible."""
    if not is_irreducible(minpoly):
        raise ScenarioError(f"{minpoly!r} is reducible over Q; not a field")
    alg = regular_algebra_from_min_poly(minpoly)
    return DivisionAlgebraHandle(alg, CERTIFIED_FIELD, minpoly.monic())


def asserted_division_algebra(spec: AlgebraSpec) -> DivisionAlgebraHandle:
    rng = random.Random(_SMOKE_SEED)
    for _ in range(_SMOKE_SAMPLES):
        coords = [Fraction(rng.randrange(-5, 6)) for _ in range(spec.dim)]
        if all(x == 0 for x in coords):
            continue
        if not spec.is_invertible(coords):
            raise ScenarioError("smoke test found a non-invertible nonzero element")
    return DivisionAlgebraHandle(spec, ASSERTED_DIVISION)


# ======================================================================
# Bimodules
# ======================================================================

class Bimodule:
    """A finite-dimensional Q-space with commuting left/right algebra actions.

    Left action matrices are a unital representation of the x-side algebra;
    right action matrices represent right multiplication (so they compose
    contravariantly).  A right basis over the y-side division algebra is
    computed greedily over the standard basis and cached; it fixes the slot
    layout of every tensor space built from this bimodule.
    """

    def __init__(self, left_alg: DivisionAlgebraHandle, right_alg: DivisionAlgebraHandle,
                 dim: int, left_action: Sequence[RatMatrix], right_action: Sequence[RatMatrix]):
        self.left_alg = left_alg
        self.right_alg = right_alg
        self.dim = dim
        self.left_action = list(left_action)
        self.right_action = list(right_action)
        self._validate()
        self._right_basis: list[int] | None = None
        self._orbit_matrix: RatMatrix | None = None
        self._left_coord_table: dict[int, list[list[list[Fraction]]]] = {}

    def _validate(self) -> None:
        A, D = self.left_alg.spec, self.right_alg.spec
        if len(self.left_action) != A.dim or len(self.right_action) != D.dim:
            raise ScenarioError("one action matrix required per algebra basis element")
        for m in self.left_action + self.right_action:
            if (m.rows, m.cols) != (self.dim, self.dim):
                raise ScenarioError("action matrix shape does not match the bimodule dimension")
        if self.dim % A.dim or self.dim % D.dim:
            raise ScenarioError("bimodule dimension not divisible by an acting algebra dimension")
        if self._combine(self.left_action, A.unit) != RatMatrix.identity(self.dim):
            raise ScenarioError("left action is not unital")
        if self._combine(self.right_action, D.unit) != RatMatrix.identity(self.dim):
            raise ScenarioError("right action is not unital")
        for i in range(A.dim):
            for j in range(A.dim):
                prod = A.multiply(A.basis_vector(i), A.basis_vector(j))
                if self.left_action[i] * self.left_action[j] != self._combine(self.left_action, prod):
                    raise ScenarioError(f"left action not multiplicative at ({i},{j})")
        for i in range(D.dim):
            for j in range(D.dim):
                prod = D.multiply(D.basis_vector(i), D.basis_vector(j))
                # right multiplication reverses composition order
                if self.right_action[j] * self.right_action[i] != self._combine(self.right_action, prod):
                    raise ScenarioError(f"right action not anti-multiplicative at ({i},{j})")
        for i in range(A.dim):
            for j in range(D.dim):
                if self.left_action[i] * self.right_action[j] != self.right_action[j] * self.left_action[i]:
                    raise ScenarioError(f"left/right actions fail to commute at ({i},{j})")

    @staticmethod
    def _combine(mats: Sequence[RatMatrix], coords: Sequence[Fraction]) -> RatMatrix:
        acc = RatMatrix.zeros(mats[0].rows, mats[0].cols)
        for m, c in zip(mats, coords):
            if c:
                acc = acc + m.scale(c)
        return acc

    def left_matrix(self, coords: Sequence[Fraction]) -> RatMatrix:
        return self._combine(self.left_action, coords)

    def right_matrix(self, coords: Sequence[Fraction]) -> RatMatrix:
        return self._combine(self.right_action, coords)

    @property
    def rank_over_right(self) -> int:
        return self.dim // self.right_alg.dim

    @property
    def rank_over_left(self) -> int:
        return self.dim // self.left_alg.dim

    def right_basis(self) -> list[int]:
        """Indices of a greedy right basis of M over the y-side algebra."""
        if self._right_basis is None:
            self._compute_right_basis()
        return self._right_basis

    def orbit_matrix(self) -> RatMatrix:
        """Columns (i, b) = (basis element m_i) * e_b; a Q-basis of M."""
        if self._orbit_matrix is None:
            self._compute_right_basis()
        return self._orbit_matrix

    def _compute_right_basis(self) -> None:
        nd = self.right_alg.dim
        picked: list[int] = []
        cols: list[RatMatrix] = []
        span: RatMatrix | None = None
        for cand in range(self.dim):
            e = RatMatrix.zeros(self.dim, 1)
            e.num[cand][0] = 1
            if span is not None and span.solve(e) is not None:
                continue
            picked.append(cand)
            for b in range(nd):
                cols.append(self.right_action[b] * e)
            span = cols[0]
            for c in cols[1:]:
                span = span.hstack(c)
            if len(picked) * nd == self.dim:
                break
        if len(picked) * nd != self.dim:
            raise ScenarioError("bimodule is not free over the right algebra")
        self._right_basis = picked
        self._orbit_matrix = span if span is not None else RatMatrix.zeros(self.dim, 0)

    def left_coords(self, a_index: int) -> list[list[list[Fraction]]]:
        """D-coordinates of e_a * m_i over the right basis.

        Entry [i][k] is the y-algebra coordinate vector d with
        e_a * m_i = sum_k m_k * d_k.
        """
        if a_index not in self._left_coord_table:
            basis = self.right_basis()
            orbit = self.orbit_matrix()
            nd = self.right_alg.dim
            table = []
            for i in basis:
                e = RatMatrix.zeros(self.dim, 1)
                e.num[i][0] = 1
                img = self.left_action[a_index] * e
                coords = orbit.solve(img)
                if coords is None:
                    raise ScenarioError("left action does not preserve the module")  # unreachable
                col = coords.column(0)
                table.append([[col[k * nd + b] for b in range(nd)] for k in range(len(basis))])
            self._left_coord_table[a_index] = table
        return self._left_coord_table[a_index]

    def key(self) -> tuple:
        return (self.dim, tuple(m.key() for m in self.left_action),
                tuple(m.key() for m in self.right_action))


def scalar_bimodule(left: DivisionAlgebraHandle, right: DivisionAlgebraHandle, dim: int) -> Bimodule:
    """Q^dim with both algebras acting by scalars (both must be Q)."""
    if left.dim != 1 or right.dim != 1:
        raise ScenarioError("scalar bimodule requires Q on both sides")
    eye = RatMatrix.identity(dim)
    return Bimodule(left, right, dim, [eye], [eye])


def right_regular_bimodule(left: DivisionAlgebraHandle, right: DivisionAlgebraHandle) -> Bimodule:
    """The y-side algebra itself; x-side must be Q and acts by scalars."""
    if left.dim != 1:
        raise ScenarioError("x-side must be Q for the right regular bimodule")
    D = right.spec
    return Bimodule(left, right, D.dim, [RatMatrix.identity(D.dim)], list(D.right_mats))


def left_regular_bimodule(left: DivisionAlgebraHandle, right: DivisionAlgebraHandle) -> Bimodule:
    """The x-side algebra itself; y-side must be Q and acts by scalars."""
    if right.dim != 1:
        raise ScenarioError("y-side must be Q for the left regular bimodule")
    A = left.spec
    return Bimodule(left, right, A.dim, list(A.left_mats), [RatMatrix.identity(A.dim)])


def tensor_bimodule(left: DivisionAlgebraHandle, right: DivisionAlgebraHandle,
                    copies: int = 1) -> Bimodule:
    """(A tensor_Q D)^copies with the outer actions."""
    A, D = left.spec, right.spec
    eye_copies = RatMatrix.identity(copies)
    eye_d = RatMatrix.identity(D.dim)
    eye_a = RatMatrix.identity(A.dim)
    lmats = [eye_copies.kron(A.left_mats[i].kron(eye_d)) for i in range(A.dim)]
    rmats = [eye_copies.kron(eye_a.kron(D.right_mats[j])) for j in range(D.dim)]
    return Bimodule(left, right, copies * A.dim * D.dim, lmats, rmats)


# ======================================================================
# Scenarios
# ======================================================================

class SpeciesScenario:
    """The full datum behind a triangular matrix ring.

    x-vertices and y-vertices carry division algebra handles; bimodules are
    keyed by (x id, y id) and absent keys mean the zero bimodule.  Edges
    only ever connect the two sides.
    """

    def __init__(self, name: str,
                 x_vertices: Sequence[tuple[str, DivisionAlgebraHandle]],
                 y_vertices: Sequence[tuple[str, DivisionAlgebraHandle]],
                 bimodules: dict[tuple[str, str], Bimodule]):
        self.name = name
        self.x_vertices = list(x_vertices)
        self.y_vertices = list(y_vertices)
        self.bimodules = dict(bimodules)
        self._validate()

    def _validate(self) -> None:
        ids = [v for v, _ in self.x_vertices] + [v for v, _ in self.y_vertices]
        if len(set(ids)) != len(ids):
            raise ScenarioError("vertex ids must be unique")
        xmap, ymap = dict(self.x_vertices), dict(self.y_vertices)
        for (x, y), bm in self.bimodules.items():
            if x not in xmap or y not in ymap:
                raise ScenarioError(f"bimodule ({x}, {y}) does not connect an x-vertex to a y-vertex")
            if bm.left_alg.key() != xmap[x].key() or bm.right_alg.key() != ymap[y].key():
                raise ScenarioError(f"bimodule ({x}, {y}) algebras do not match its endpoints")

    @property
    def x_ids(self) -> list[str]:
        return [v for v, _ in self.x_vertices]

    @property
    def y_ids(self) -> list[str]:
        return [v for v, _ in self.y_vertices]

    def algebra(self, vertex: str) -> DivisionAlgebraHandle:
        for v, h in self.x_vertices + self.y_vertices:
            if v == vertex:
                return h
        raise KeyError(vertex)

    def vertex_order(self) -> list[str]:
        return self.x_ids + self.y_ids


# ======================================================================
# Valued graphs and root data
# ======================================================================

@dataclass
class ValuedGraph:
    """Simple graph with an ordered value pair per edge.

    An edge (a, b, d_ab, d_ba) is undirected; the pair records the two
    labels relative to its endpoints.  `side` tags are carried along when
    the graph comes from a scenario (x side / y side) and may be None.
    """

    vertices: list[str]
    edges: list[tuple[str, str, int, int]]
    side: dict[str, Optional[str]] = field(default_factory=dict)

    def __post_init__(self):
        seen = set()
        for a, b, dab, dba in self.edges:
            if dab <= 0 or dba <= 0:
                raise ScenarioError("edge values must be positive")
            if a == b or frozenset((a, b)) in seen:
                raise ScenarioError("valued graph must be simple")
            seen.add(frozenset((a, b)))

    def adjacency(self) -> dict[str, list[tuple[str, int, int]]]:
        adj: dict[str, list[tuple[str, int, int]]] = {v: [] for v in self.vertices}
        for a, b, dab, dba in self.edges:
            adj[a].append((b, dab, dba))
            adj[b].append((a, dba, dab))
        return adj

    def components(self) -> list[list[str]]:
        adj = self.adjacency()
        seen: set[str] = set()
        comps = []
        for v in self.vertices:
            if v in seen:
                continue
            comp = []
            stack = [v]
            seen.add(v)
            while stack:
                u = stack.pop()
                comp.append(u)
                for w, _, _ in adj[u]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            comps.append(comp)
        return comps


@dataclass
class RootDatum:
    """Cartan matrix with symmetrizer and (optionally) enumerated roots."""

    cartan: list[list[int]]
    symmetrizer: list[Fraction]
    roots: list[tuple[int, ...]]
    vertices: list[str]

    def __post_init__(self):
        n = len(self.cartan)
        for i in range(n):
            if self.cartan[i][i] != 2:
                raise ScenarioError("Cartan diagonal must be 2")
            for j in range(n):
                if i != j and self.cartan[i][j] > 0:
                    raise ScenarioError("Cartan off-diagonal entries must be <= 0")
        if any(f <= 0 for f in self.symmetrizer):
            raise ScenarioError("symmetrizer entries must be positive")
        for i in range(n):
            for j in range(n):
                if self.symmetrizer[i] * self.cartan[i][j] != self.symmetrizer[j] * self.cartan[j][i]:
                    raise ScenarioError("symmetrizer does not symmetrize the Cartan matrix")

    @property
    def rank(self) -> int:
        return len(self.cartan)


def valued_graph(s: SpeciesScenario) -> ValuedGraph:
    """One vertex per species vertex; an edge per nonzero bimodule.

    The edge at (x, y) carries (dim of M over the x algebra, dim of M over
    the y algebra).
    """
    side = {v: "x" for v in s.x_ids}
    side.update({v: "y" for v in s.y_ids})
    edges = []
    for (x, y), bm in sorted(s.bimodules.items(), key=lambda kv: (s.x_ids.index(kv[0][0]),
                                                                  s.y_ids.index(kv[0][1]))):
        nx, ny = s.algebra(x).dim, s.algebra(y).dim
        if bm.dim % nx or bm.dim % ny:
            raise ScenarioError(f"bimodule at ({x}, {y}) has Q-dimension {bm.dim}, "
                                f"not divisible by an acting algebra dimension")
        edges.append((x, y, bm.dim // nx, bm.dim // ny))
    return ValuedGraph(s.vertex_order(), edges, side)


def cartan_matrix(g: ValuedGraph) -> RootDatum:
    """Cartan matrix of a valued forest, with its tree-propagated symmetrizer.

    For an edge (a, b, d_ab, d_ba): c_ab = -d_ab and c_ba = -d_ba.
    """
    order = {v: i for i, v in enumerate(g.vertices)}
    n = len(g.vertices)
    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for a, b, dab, dba in g.edges:
        i, j = order[a], order[b]
        c[i][j] = -dab
        c[j][i] = -dba
    for comp in g.components():
        idx = [order[v] for v in comp]
        edge_count = sum(1 for a, b, _, _ in g.edges if a in comp)
        if edge_count != len(comp) - 1:
            raise ScenarioError("valued graph contains a cycle; Cartan data needs a forest")
    sym = [Fraction(0)] * n
    adj = g.adjacency()
    for comp in g.components():
        root = comp[0]
        sym[order[root]] = Fraction(1)
        stack = [root]
        while stack:
            u = stack.pop()
            for w, duw, dwu in adj[u]:
                if sym[order[w]] == 0:
                    # f_u * c_uw = f_w * c_wu
                    sym[order[w]] = sym[order[u]] * Fraction(duw, dwu)
                    stack.append(w)
    for i in range(n):
        for j in range(n):
            if sym[i] * c[i][j] != sym[j] * c[j][i]:
                raise ScenarioError("valued graph is not symmetrizable")
    return RootDatum(c, sym, [], list(g.vertices))


def is_finite_type(r: RootDatum) -> bool:
    """Exact positive-definiteness of the symmetrized Cartan matrix."""
    n = r.rank
    if n == 0:
        return True
    sym = [[r.symmetrizer[i] * r.cartan[i][j] for j in range(n)] for i in range(n)]
    # no-swap elimination on a symmetric matrix: PD iff all pivots positive
    for k in range(n):
        piv = sym[k][k]
        if piv <= 0:
            return False
        for i in range(k + 1, n):
            f = sym[i][k] / piv
            if f:
                for j in range(k, n):
                    sym[i][j] -= f * sym[k][j]
    return True


_ROOT_ENUM_CAP = 100000


def positive_roots(r: RootDatum) -> list[tuple[int, ...]]:
    """All positive roots, as the reflection closure of the simple roots."""
    if not is_finite_type(r):
        raise ScenarioError("positive root enumeration requires finite type")
    n = r.rank
    c = r.cartan
    simples = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    seen = set(simples)
    work = list(simples)
    steps = 0
    while work:
        v = work.pop()
        for i in range(n):
            t = sum(c[i][j] * v[j] for j in range(n))
            w = list(v)
            w[i] = v[i] - t
            w = tuple(w)
            if w != v and all(x >= 0 for x in w) and w not in seen:
                seen.add(w)
                work.append(w)
        steps += 1
        if steps > _ROOT_ENUM_CAP:
            raise RuntimeError("positive root enumeration failed to terminate")
    return sorted(seen, key=lambda v: (sum(v), v))


# -- Dynkin diagram naming ---------------------------------------------

def _tree_certificate(comp: list[str], adj: dict[str, list[tuple[str, int, int]]]) -> tuple:
    if len(comp) == 1:
        return ("pt",)
    compset = set(comp)

    def encode(v: str, parent: Optional[str]) -> tuple:
        children = []
        for w, dvw, dwv in adj[v]:
            if w != parent and w in compset:
                children.append((dvw, dwv, encode(w, v)))
        return tuple(sorted(children))

    # tree center(s) by leaf peeling
    degree = {v: sum(1 for w, _, _ in adj[v] if w in compset) for v in comp}
    alive = set(comp)
    layer = [v for v in comp if degree[v] <= 1]
    while len(alive) > 2:
        nxt = []
        for v in layer:
            alive.discard(v)
            for w, _, _ in adj[v]:
                if w in alive:
                    degree[w] -= 1
                    if degree[w] == 1:
                        nxt.append(w)
        layer = nxt
    centers = sorted(alive)
    if len(centers) == 1:
        return ("c1", encode(centers[0], None))
    c1, c2 = centers
    d12 = d21 = None
    for w, dvw, dwv in adj[c1]:
        if w == c2:
            d12, d21 = dvw, dwv
    halves = [
        (d12, d21, encode(c1, c2), encode(c2, c1)),
        (d21, d12, encode(c2, c1), encode(c1, c2)),
    ]
    return ("c2",) + min(halves)


def _path_pattern(values: list[tuple[int, int]]) -> list[tuple[str, str, int, int]]:
    return [(str(i), str(i + 1), a, b) for i, (a, b) in enumerate(values)]


def _named_diagrams(n: int) -> list[tuple[str, list[tuple[str, str, int, int]]]]:
    out = []
    if n == 1:
        out.append(("A1", []))
    if n >= 2:
        out.append((f"A{n}", _path_pattern([(1, 1)] * (n - 1))))
        out.append((f"B{n}", _path_pattern([(1, 1)] * (n - 2) + [(1, 2)])))
        out.append((f"C{n}", _path_pattern([(1, 1)] * (n - 2) + [(2, 1)])))
    if n >= 4:
        edges = _path_pattern([(1, 1)] * (n - 3))
        edges.append((str(n - 3), "fork1", 1, 1))
        edges.append((str(n - 3), "fork2", 1, 1))
        out.append((f"D{n}", edges))
    if n in (6, 7, 8):
        edges = _path_pattern([(1, 1)] * (n - 2))
        edges.append(("2", "branch", 1, 1))
        out.append((f"E{n}", edges))
    if n == 4:
        out.append(("F4", _path_pattern([(1, 1), (1, 2), (1, 1)])))
    if n == 2:
        out.append(("G2", _path_pattern([(1, 3)])))
    return out


def _pattern_certificate(edges: list[tuple[str, str, int, int]], n: int) -> tuple:
    verts = sorted({v for e in edges for v in e[:2]} | ({"0"} if n == 1 else set()))
    g = ValuedGraph(verts, edges)
    comps = g.components()
    return _tree_certificate(comps[0], g.adjacency())


def _component_name(comp: list[str], g: ValuedGraph) -> Optional[str]:
    cert = _tree_certificate(comp, g.adjacency())
    matches = [name for name, edges in _named_diagrams(len(comp))
               if _pattern_certificate(edges, len(comp)) == cert]
    if not matches:
        return None
    if set(matches) == {"B2", "C2"}:
        # the two rank-2 diagrams are isomorphic as valued graphs; the side
        # tagging (x vertex = the central vertex of the diagram list)
        # distinguishes the stated orientation when available
        if len(comp) == 2 and g.side.get(comp[0]) is not None:
            a, b, dab, dba = next(e for e in g.edges if e[0] in comp)
            xfirst = g.side.get(a) == "x"
            d_from_x = dab if xfirst else dba
            return "C2" if d_from_x == 2 else "B2"
        return "C2"
    return matches[0]


def dynkin_name(g: ValuedGraph | RootDatum) -> str:
    """Name of the diagram up to valued-graph isomorphism, or "not-dynkin".

    Disjoint unions of named diagrams come back as a sorted '+'-join, e.g.
    "A1+G2".
    """
    if isinstance(g, RootDatum):
        g = _graph_from_cartan(g)
    names = []
    for comp in g.components():
        name = _component_name(comp, g)
        if name is None:
            return "not-dynkin"
        names.append(name)
    return "+".join(sorted(names))


def _graph_from_cartan(r: RootDatum) -> ValuedGraph:
    n = r.rank
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if r.cartan[i][j]:
                edges.append((r.vertices[i], r.vertices[j], -r.cartan[i][j], -r.cartan[j][i]))
    return ValuedGraph(list(r.vertices), edges)


# ======================================================================
# Center of the triangular matrix ring
# ======================================================================

@dataclass
class RingCenter:
    """The center, as a commutative algebra plus its embedding.

    `elements[k][v]` is the coordinate vector (in the vertex algebra at v)
    of the k-th basis element's component at vertex v.
    """

    algebra: AlgebraSpec
    elements: list[dict[str, list[Fraction]]]

    @property
    def dim(self) -> int:
        return self.algebra.dim


def ring_center(s: SpeciesScenario) -> RingCenter:
    """Solve the centrality constraints x*m = m*y across every bimodule.

    Unknowns range over the centers of the vertex algebras; a pair is
    central in the triangular ring iff the left action of its x-component
    equals the right action of its y-component on every bimodule.
    """
    vertex_ids = s.vertex_order()
    cbases: dict[str, list[list[Fraction]]] = {}
    offsets: dict[str, int] = {}
    total = 0
    for v in vertex_ids:
        _, basis = algebra_center(s.algebra(v).spec)
        cbases[v] = basis
        offsets[v] = total
        total += len(basis)
    rows: list[list[Fraction]] = []
    for (x, y), bm in sorted(s.bimodules.items()):
        lmats = [bm.left_matrix(b) for b in cbases[x]]
        rmats = [bm.right_matrix(b) for b in cbases[y]]
        for i in range(bm.dim):
            for j in range(bm.dim):
                row = [Fraction(0)] * total
                nonzero = False
                for k, m in enumerate(lmats):
                    e = m.entry(i, j)
                    if e:
                        row[offsets[x] + k] = e
                        nonzero = True
                for k, m in enumerate(rmats):
                    e = m.entry(i, j)
                    if e:
                        row[offsets[y] + k] -= e
                        nonzero = True
                if nonzero:
                    rows.append(row)
    if rows:
        solutions = RatMatrix.from_rows(rows).kernel_basis()
    else:
        solutions = [[Fraction(1) if i == k else Fraction(0) for i in range(total)]
                     for k in range(total)]

    def to_components(vec: Sequence[Fraction]) -> dict[str, list[Fraction]]:
        comp = {}
        for v in vertex_ids:
            basis = cbases[v]
            coords = vec[offsets[v]:offsets[v] + len(basis)]
            acc = [Fraction(0)] * s.algebra(v).dim
            for c, b in zip(coords, basis):
                if c:
                    for t in range(len(acc)):
                        acc[t] += c * b[t]
            comp[v] = acc
        return comp

    elements = [to_components(vec) for vec in solutions]
    m = len(solutions)
    if m == 0:
        return RingCenter(AlgebraSpec([], [], _skip_validation=True), [])
    sol_mat = RatMatrix.from_cols(solutions, rows=total)

    def to_center_coords(comp: dict[str, list[Fraction]]) -> list[Fraction]:
        vec = [Fraction(0)] * total
        for v in vertex_ids:
            basis = cbases[v]
            if not basis:
                continue
            bmat = RatMatrix.from_cols(basis, rows=s.algebra(v).dim)
            coords = bmat.solve(RatMatrix.from_rows([[t] for t in comp[v]]))
            if coords is None:
                raise ScenarioError("center product left the center")  # unreachable
            for k in range(len(basis)):
                vec[offsets[v] + k] = coords.entry(k, 0)
        return vec

    constants = [[None] * m for _ in range(m)]
    for i in range(m):
        for j in range(m):
            comp = {v: s.algebra(v).spec.multiply(elements[i][v], elements[j][v])
                    for v in vertex_ids}
            coords = sol_mat.solve(RatMatrix.from_rows([[t] for t in to_center_coords(comp)]))
            if coords is None:
                raise ScenarioError("center is not multiplicatively closed")  # unreachable
            constants[i][j] = coords.column(0)
    unit_comp = {v: list(s.algebra(v).spec.unit) for v in vertex_ids}
    unit_coords = sol_mat.solve(RatMatrix.from_rows([[t] for t in to_center_coords(unit_comp)]))
    if unit_coords is None:
        raise ScenarioError("triangular ring unit is not in the computed center")
    alg = AlgebraSpec(constants, unit_coords.column(0))
    if not alg.is_commutative():
        raise ScenarioError("computed center is not commutative")  # unreachable
    return RingCenter(alg, elements)
