"""Finite acyclic quivers and their representations over an exact field.

Provides the vertex-wise tensor product, Hom/Ext^1 via the standard two-term
projective complex of a hereditary algebra, Krull-Schmidt decomposition via
Fitting splittings, and indecomposable enumeration (interval modules on
type-A quivers, exhaustive search elsewhere).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field

from .linalg import Matrix


class QuiverCycleError(ValueError):
    """Raised when a quiver has an oriented cycle; carries a witness."""

    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__(f"quiver has an oriented cycle: {' -> '.join(self.cycle)}")


@dataclass(frozen=True)
class Arrow:
    src: str
    tgt: str
    label: str


class Quiver:
    def __init__(self, vertices, arrows):
        self.vertices = list(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex labels")
        self.arrows = []
        seen = set()
        for a in arrows:
            if not isinstance(a, Arrow):
                a = Arrow(*a)
            if a.label in seen:
                raise ValueError(f"duplicate arrow label {a.label!r}")
            if a.src not in self.vertices or a.tgt not in self.vertices:
                raise ValueError(f"arrow {a.label!r} references unknown vertex")
            seen.add(a.label)
            self.arrows.append(a)
        self._vindex = {v: i for i, v in enumerate(self.vertices)}
        self._by_label = {a.label: a for a in self.arrows}

    @classmethod
    def from_dict(cls, data) -> "Quiver":
        arrows = [Arrow(a["src"], a["tgt"], a["label"]) for a in data.get("arrows", [])]
        return cls(data["vertices"], arrows)

    def to_dict(self):
        return {
            "vertices": list(self.vertices),
            "arrows": [{"src": a.src, "tgt": a.tgt, "label": a.label} for a in self.arrows],
        }

    @classmethod
    def line(cls, n: int, orientation: str | None = None) -> "Quiver":
        """A_n quiver on vertices v1..vn; orientation is a string of 'r'/'l' per edge."""
        if orientation is None:
            orientation = "r" * (n - 1)
        if len(orientation) != max(0, n - 1):
            raise ValueError("orientation length must be n-1")
        vertices = [f"v{i + 1}" for i in range(n)]
        arrows = []
        for i, o in enumerate(orientation):
            label = f"a{i + 1}"
            if o == "r":
                arrows.append(Arrow(vertices[i], vertices[i + 1], label))
            elif o == "l":
                arrows.append(Arrow(vertices[i + 1], vertices[i], label))
            else:
                raise ValueError("orientation characters must be 'r' or 'l'")
        return cls(vertices, arrows)

    def arrow(self, label: str) -> Arrow:
        return self._by_label[label]

    def vertex_index(self, v: str) -> int:
        return self._vindex[v]

    def arrows_from(self, v: str):
        return [a for a in self.arrows if a.src == v]

    def topological_order(self):
        """Vertex order placing every arrow source before its target."""
        outgoing = {v: [] for v in self.vertices}
        indeg = {v: 0 for v in self.vertices}
        for a in self.arrows:
            outgoing[a.src].append(a.tgt)
            indeg[a.tgt] += 1
        queue = [v for v in self.vertices if indeg[v] == 0]
        order = []
        while queue:
            v = queue.pop(0)
            order.append(v)
            for w in outgoing[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    queue.append(w)
        if len(order) != len(self.vertices):
            raise QuiverCycleError(self._find_cycle())
        return order

    def _find_cycle(self):
        color = {v: 0 for v in self.vertices}
        parent = {}

        def dfs(v):
            color[v] = 1
            for a in self.arrows_from(v):
                w = a.tgt
                if color[w] == 1:
                    cycle = [w, v]
                    x = v
                    while x != w:
                        x = parent[x]
                        cycle.append(x)
                    cycle.reverse()
                    return cycle
                if color[w] == 0:
                    parent[w] = v
                    res = dfs(w)
                    if res:
                        return res
            color[v] = 2
            return None

        for v in self.vertices:
            if color[v] == 0:
                res = dfs(v)
                if res:
                    return res
        return []

    def is_acyclic(self) -> bool:
        try:
            self.topological_order()
            return True
        except QuiverCycleError:
            return False

    def path_order(self):
        """For a type-A underlying graph, the vertices in path order; else None."""
        n = len(self.vertices)
        if n == 0:
            return None
        if len(self.arrows) != n - 1:
            return None
        nbrs = {v: [] for v in self.vertices}
        for a in self.arrows:
            if a.src == a.tgt:
                return None
            nbrs[a.src].append(a.tgt)
            nbrs[a.tgt].append(a.src)
        if any(len(ws) > 2 for ws in nbrs.values()):
            return None
        ends = [v for v in self.vertices if len(nbrs[v]) <= 1]
        if n == 1:
            return list(self.vertices)
        if len(ends) != 2:
            return None
        start = min(ends, key=self.vertex_index)
        order = [start]
        prev = None
        cur = start
        while len(order) < n:
            nxt = [w for w in nbrs[cur] if w != prev]
            if len(nxt) != 1:
                return None
            prev, cur = cur, nxt[0]
            order.append(cur)
        if len(set(order)) != n:
            return None
        return order

    def full_subquiver(self, vertices) -> "Quiver":
        vs = [v for v in self.vertices if v in set(vertices)]
        arrows = [a for a in self.arrows if a.src in set(vs) and a.tgt in set(vs)]
        return Quiver(vs, arrows)

    def __repr__(self):
        return f"Quiver({self.vertices}, {[a.label for a in self.arrows]})"


def validate_acyclic(q: Quiver):
    """Topological order of the vertices; raises QuiverCycleError with a witness."""
    return q.topological_order()


@dataclass(frozen=True)
class Path:
    source: str
    target: str
    arrows: tuple[str, ...]  # labels in application order (first applied first)

    @property
    def length(self) -> int:
        return len(self.arrows)

    def label(self) -> str:
        if not self.arrows:
            return f"e_{self.source}"
        return "*".join(reversed(self.arrows))

    def compose(self, first: "Path") -> "Path":
        """self * first: apply `first`, then self."""
        if first.target != self.source:
            raise ValueError("paths not composable")
        return Path(first.source, self.target, first.arrows + self.arrows)


def enumerate_paths(q: Quiver):
    """All paths of an acyclic quiver, trivial paths included, in canonical order."""
    q.topological_order()
    paths = [Path(v, v, ()) for v in q.vertices]
    frontier = list(paths)
    while frontier:
        new = []
        for p in frontier:
            for a in q.arrows_from(p.target):
                new.append(Path(p.source, a.tgt, p.arrows + (a.label,)))
        paths.extend(new)
        frontier = new
    paths.sort(key=lambda p: (p.length, q.vertex_index(p.source), p.arrows))
    return paths


class Rep:
    """A representation: one exact matrix per arrow, dims per vertex."""

    def __init__(self, quiver: Quiver, field, dims, mats):
        self.quiver = quiver
        self.field = field
        self.dims = {v: int(dims.get(v, 0)) for v in quiver.vertices}
        self.mats = {}
        for a in quiver.arrows:
            m = mats.get(a.label)
            if m is None:
                m = Matrix.zeros(field, self.dims[a.tgt], self.dims[a.src])
            if m.rows != self.dims[a.tgt] or m.cols != self.dims[a.src]:
                raise ValueError(
                    f"matrix for arrow {a.label!r} must be "
                    f"{self.dims[a.tgt]}x{self.dims[a.src]}, got {m.rows}x{m.cols}"
                )
            if m.field != field:
                raise ValueError("arrow matrix over the wrong field")
            self.mats[a.label] = m

    @classmethod
    def zero(cls, quiver, field) -> "Rep":
        return cls(quiver, field, {}, {})

    def mat(self, label: str) -> Matrix:
        return self.mats[label]

    def dim_vector(self):
        return tuple(self.dims[v] for v in self.quiver.vertices)

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def is_zero(self) -> bool:
        return self.total_dim() == 0

    def __eq__(self, other):
        return (
            isinstance(other, Rep)
            and other.quiver is self.quiver
            and other.field == self.field
            and other.dims == self.dims
            and other.mats == self.mats
        )

    def __hash__(self):
        return hash((self.dim_vector(), tuple(sorted((k, m) for k, m in self.mats.items()))))

    def direct_sum(self, other: "Rep") -> "Rep":
        self._check_compatible(other)
        dims = {v: self.dims[v] + other.dims[v] for v in self.quiver.vertices}
        mats = {}
        for a in self.quiver.arrows:
            m1, m2 = self.mats[a.label], other.mats[a.label]
            blk = Matrix.block(
                self.field,
                [[m1, None], [None, m2]],
                [m1.rows, m2.rows],
                [m1.cols, m2.cols],
            )
            mats[a.label] = blk
        return Rep(self.quiver, self.field, dims, mats)

    def tensor(self, other: "Rep") -> "Rep":
        self._check_compatible(other)
        dims = {v: self.dims[v] * other.dims[v] for v in self.quiver.vertices}
        mats = {a.label: self.mats[a.label].kron(other.mats[a.label]) for a in self.quiver.arrows}
        return Rep(self.quiver, self.field, dims, mats)

    def path_matrix(self, path: Path) -> Matrix:
        m = Matrix.identity(self.field, self.dims[path.source])
        for label in path.arrows:
            m = self.mats[label].mul(m)
        return m

    def _check_compatible(self, other: "Rep"):
        if other.quiver is not self.quiver and other.quiver.to_dict() != self.quiver.to_dict():
            raise ValueError("representations over different quivers")
        if other.field != self.field:
            raise ValueError("representations over different fields")

    def __repr__(self):
        return f"Rep(dims={self.dims})"


class RepMorphism:
    """Vertex-indexed matrices intertwining the arrow actions."""

    def __init__(self, source: Rep, target: Rep, comps, check: bool = True):
        self.source = source
        self.target = target
        self.comps = {}
        for v in source.quiver.vertices:
            m = comps.get(v)
            if m is None:
                m = Matrix.zeros(source.field, target.dims[v], source.dims[v])
            if m.rows != target.dims[v] or m.cols != source.dims[v]:
                raise ValueError(f"component at {v} has the wrong shape")
            self.comps[v] = m
        if check and not self.intertwines():
            raise ValueError("components do not commute with the arrow matrices")

    def intertwines(self) -> bool:
        for a in self.source.quiver.arrows:
            lhs = self.comps[a.tgt].mul(self.source.mats[a.label])
            rhs = self.target.mats[a.label].mul(self.comps[a.src])
            if lhs != rhs:
                return False
        return True

    @classmethod
    def zero(cls, source: Rep, target: Rep) -> "RepMorphism":
        return cls(source, target, {}, check=False)

    @classmethod
    def identity(cls, rep: Rep) -> "RepMorphism":
        comps = {v: Matrix.identity(rep.field, rep.dims[v]) for v in rep.quiver.vertices}
        return cls(rep, rep, comps, check=False)

    def compose(self, first: "RepMorphism") -> "RepMorphism":
        """self o first."""
        comps = {v: self.comps[v].mul(first.comps[v]) for v in self.comps}
        return RepMorphism(first.source, self.target, comps, check=False)

    def add(self, other: "RepMorphism") -> "RepMorphism":
        comps = {v: self.comps[v].add(other.comps[v]) for v in self.comps}
        return RepMorphism(self.source, self.target, comps, check=False)

    def neg(self) -> "RepMorphism":
        return RepMorphism(
            self.source, self.target, {v: m.neg() for v, m in self.comps.items()}, check=False
        )

    def scale(self, c) -> "RepMorphism":
        return RepMorphism(
            self.source, self.target, {v: m.scale(c) for v, m in self.comps.items()}, check=False
        )

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.comps.values())

    def is_isomorphism(self) -> bool:
        return all(m.is_invertible() for m in self.comps.values())

    def __eq__(self, other):
        return isinstance(other, RepMorphism) and other.comps == self.comps

    def __repr__(self):
        return f"RepMorphism({self.source!r} -> {self.target!r})"


def standard_reps(q: Quiver, fld):
    """The tensor unit, the simples S_v, and the projectives P_v."""
    q.topological_order()
    unit = Rep(
        q,
        fld,
        {v: 1 for v in q.vertices},
        {a.label: Matrix.identity(fld, 1) for a in q.arrows},
    )
    simples = {v: Rep(q, fld, {v: 1}, {}) for v in q.vertices}
    paths = enumerate_paths(q)
    projectives = {}
    for v in q.vertices:
        from_v = [p for p in paths if p.source == v]
        index_at = {}
        for p in from_v:
            index_at.setdefault(p.target, []).append(p)
        dims = {u: len(index_at.get(u, [])) for u in q.vertices}
        mats = {}
        for a in q.arrows:
            rows = index_at.get(a.tgt, [])
            cols = index_at.get(a.src, [])
            m = Matrix.zeros(fld, len(rows), len(cols))
            for j, p in enumerate(cols):
                extended = Path(p.source, a.tgt, p.arrows + (a.label,))
                for i, r in enumerate(rows):
                    if r == extended:
                        m[i, j] = fld.one
            mats[a.label] = m
        projectives[v] = Rep(q, fld, dims, mats)
    return unit, simples, projectives


def tensor_reps(v: Rep, w: Rep) -> Rep:
    return v.tensor(w)


# ---------------------------------------------------------------------------
# Hom and Ext^1 through the two-term complex
#   sum_v Hom_k(V_v, W_v)  -->  sum_{a: v->w} Hom_k(V_v, W_w)
#   phi |-> (phi_{tgt a} V_a - W_a phi_{src a})_a
# whose kernel is Hom(V, W) and cokernel is Ext^1(V, W).


def _hom_delta_layout(v: Rep, w: Rep):
    offsets = {}
    pos = 0
    for vert in v.quiver.vertices:
        offsets[vert] = pos
        pos += w.dims[vert] * v.dims[vert]
    return offsets, pos


def hom_ext_delta(v: Rep, w: Rep) -> Matrix:
    fld = v.field
    offsets, ncols = _hom_delta_layout(v, w)
    row_chunks = []
    for a in v.quiver.arrows:
        row_chunks.append((a, w.dims[a.tgt] * v.dims[a.src]))
    nrows = sum(c for _, c in row_chunks)
    delta = Matrix.zeros(fld, nrows, ncols)
    r0 = 0
    for a, chunk in row_chunks:
        va = v.mats[a.label]
        wa = w.mats[a.label]
        dv_src, dv_tgt = v.dims[a.src], v.dims[a.tgt]
        dw_src, dw_tgt = w.dims[a.src], w.dims[a.tgt]
        for i in range(dw_tgt):
            for j in range(dv_src):
                row = r0 + i * dv_src + j
                # + phi_{tgt}[i, k] * V_a[k, j]
                for k in range(dv_tgt):
                    coef = va[k, j]
                    if not fld.is_zero(coef):
                        col = offsets[a.tgt] + i * dv_tgt + k
                        delta[row, col] = fld.add(delta[row, col], coef)
                # - W_a[i, l] * phi_{src}[l, j]
                for l in range(dw_src):
                    coef = wa[i, l]
                    if not fld.is_zero(coef):
                        col = offsets[a.src] + l * v.dims[a.src] + j
                        delta[row, col] = fld.sub(delta[row, col], coef)
        r0 += chunk
    return delta


def _unflatten_morphism(v: Rep, w: Rep, vec) -> RepMorphism:
    offsets, _ = _hom_delta_layout(v, w)
    comps = {}
    for vert in v.quiver.vertices:
        rows, cols = w.dims[vert], v.dims[vert]
        base = offsets[vert]
        comps[vert] = Matrix(v.field, rows, cols, vec[base : base + rows * cols])
    return RepMorphism(v, w, comps, check=False)


def hom_space(v: Rep, w: Rep):
    """Basis of Hom(V, W) as a list of RepMorphism."""
    delta = hom_ext_delta(v, w)
    return [_unflatten_morphism(v, w, vec) for vec in delta.kernel_basis()]


def hom_dim(v: Rep, w: Rep) -> int:
    delta = hom_ext_delta(v, w)
    return delta.cols - delta.rank()


@dataclass
class Ext1Data:
    dim: int
    # each basis element: arrow label -> Matrix (a map V_src -> W_tgt)
    basis: list


def _arrow_block_layout(v: Rep, w: Rep):
    offsets = {}
    pos = 0
    for a in v.quiver.arrows:
        offsets[a.label] = pos
        pos += w.dims[a.tgt] * v.dims[a.src]
    return offsets, pos


def ext1(v: Rep, w: Rep) -> Ext1Data:
    """Ext^1(V, W) with cocycle representatives for each basis class."""
    fld = v.field
    delta = hom_ext_delta(v, w)
    offsets, total = _arrow_block_layout(v, w)
    image_cols = []
    rank = 0
    probe = Matrix.zeros(fld, total, 0)
    # image basis by greedy rank extension over delta's columns
    for j in range(delta.cols):
        col = delta.col(j)
        cand = probe.hstack(Matrix.column(fld, col))
        if cand.rank() > rank:
            probe = cand
            rank += 1
            image_cols.append(col)
    basis = []
    for j in range(total):
        e = [fld.zero] * total
        e[j] = fld.one
        cand = probe.hstack(Matrix.column(fld, e))
        if cand.rank() > rank:
            probe = cand
            rank += 1
            basis.append(e)
    reps = []
    for vec in basis:
        fam = {}
        for a in v.quiver.arrows:
            rows, cols = w.dims[a.tgt], v.dims[a.src]
            base = offsets[a.label]
            fam[a.label] = Matrix(fld, rows, cols, vec[base : base + rows * cols])
        reps.append(fam)
    return Ext1Data(dim=len(reps), basis=reps)


def extension_rep(v: Rep, w: Rep, cocycle) -> Rep:
    """Middle term of 0 -> W -> E -> V -> 0 for an Ext^1 cocycle."""
    fld = v.field
    dims = {vert: w.dims[vert] + v.dims[vert] for vert in v.quiver.vertices}
    mats = {}
    for a in v.quiver.arrows:
        wa, va = w.mats[a.label], v.mats[a.label]
        eta = cocycle.get(a.label)
        if eta is None:
            eta = Matrix.zeros(fld, w.dims[a.tgt], v.dims[a.src])
        mats[a.label] = Matrix.block(
            fld,
            [[wa, eta], [None, va]],
            [wa.rows, va.rows],
            [wa.cols, va.cols],
        )
    return Rep(v.quiver, fld, dims, mats)


def euler_pairing(q: Quiver, alpha, beta) -> int:
    """Euler form <alpha, beta> = sum_v a_v b_v - sum_{a: v->w} a_v b_w."""
    total = sum(alpha[v] * beta[v] for v in q.vertices)
    for a in q.arrows:
        total -= alpha[a.src] * beta[a.tgt]
    return total


# ---------------------------------------------------------------------------
# subrepresentations spanned by explicit columns, and Krull-Schmidt


def _column_space_basis(m: Matrix) -> Matrix:
    cols = []
    rank = 0
    acc = Matrix.zeros(m.field, m.rows, 0)
    for j in range(m.cols):
        cand = acc.hstack(Matrix.column(m.field, m.col(j)))
        if cand.rank() > rank:
            acc = cand
            rank += 1
            cols.append(m.col(j))
    return Matrix.from_columns(m.field, cols, m.rows)


def subrep_from_columns(v: Rep, spans) -> tuple[Rep, dict]:
    """Subrepresentation spanned vertex-wise by the given column matrices.

    Requires the span to be arrow-stable.  Returns (sub, embedding matrices).
    """
    fld = v.field
    bases = {vert: _column_space_basis(spans[vert]) for vert in v.quiver.vertices}
    dims = {vert: bases[vert].cols for vert in v.quiver.vertices}
    mats = {}
    for a in v.quiver.arrows:
        image = v.mats[a.label].mul(bases[a.src])
        coords = bases[a.tgt].solve_matrix(image)
        if coords is None:
            raise ValueError("spans are not arrow-stable")
        mats[a.label] = coords
    return Rep(v.quiver, fld, dims, mats), bases


def kernel_rep(f: RepMorphism) -> tuple[Rep, dict]:
    """Vertex-wise kernel of a morphism as a subrepresentation, with embedding."""
    v = f.source
    spans = {
        vert: Matrix.from_columns(v.field, f.comps[vert].kernel_basis(), v.dims[vert])
        for vert in v.quiver.vertices
    }
    return subrep_from_columns(v, spans)


def cokernel_rep(f: RepMorphism) -> tuple[Rep, dict]:
    """Vertex-wise cokernel with per-vertex projection matrices W_v -> Q_v."""
    w = f.target
    fld = w.field
    bases = {}
    projections = {}
    for vert in w.quiver.vertices:
        image = _column_space_basis(f.comps[vert])
        cols = []
        acc = image
        rank = acc.rank()
        total = w.dims[vert]
        for j in range(total):
            e = [fld.zero] * total
            e[j] = fld.one
            cand = acc.hstack(Matrix.column(fld, e))
            if cand.rank() > rank:
                acc = cand
                rank += 1
                cols.append(e)
        lift = Matrix.from_columns(fld, cols, total)
        g = image.hstack(lift)
        ginv = g.inverse()
        if ginv is None:
            raise RuntimeError("cokernel basis construction failed")
        h = lift.cols
        proj = Matrix(fld, h, total, ginv.entries[(total - h) * total :])
        bases[vert] = lift
        projections[vert] = proj
    dims = {vert: bases[vert].cols for vert in w.quiver.vertices}
    mats = {}
    for a in w.quiver.arrows:
        mats[a.label] = projections[a.tgt].mul(w.mats[a.label]).mul(bases[a.src])
    quotient = Rep(w.quiver, fld, dims, mats)
    return quotient, projections


def endo_power(f: RepMorphism, n: int) -> RepMorphism:
    out = RepMorphism.identity(f.source)
    for _ in range(n):
        out = f.compose(out)
    return out


@dataclass
class Decomposition:
    rep: Rep
    summands: list
    embeddings: list  # per summand: vertex -> Matrix (columns in rep coordinates)
    statuses: list  # per summand: "indecomposable" | "undecided"

    @property
    def certified(self) -> bool:
        return all(s == "indecomposable" for s in self.statuses)

    def assembled_iso(self) -> RepMorphism | None:
        """The explicit isomorphism (+) summands -> rep, or None if it fails."""
        if not self.summands:
            return None if self.rep.total_dim() else RepMorphism.identity(self.rep)
        total = self.summands[0]
        for s in self.summands[1:]:
            total = total.direct_sum(s)
        comps = {}
        for vert in self.rep.quiver.vertices:
            cols = []
            for emb in self.embeddings:
                m = emb[vert]
                cols.extend(m.col(j) for j in range(m.cols))
            comps[vert] = Matrix.from_columns(self.rep.field, cols, self.rep.dims[vert])
        iso = RepMorphism(total, self.rep, comps, check=False)
        if not iso.intertwines() or not iso.is_isomorphism():
            return None
        return iso


def _identity_embedding(v: Rep):
    return {vert: Matrix.identity(v.field, v.dims[vert]) for vert in v.quiver.vertices}


def _compose_embedding(outer, inner, quiver):
    return {vert: outer[vert].mul(inner[vert]) for vert in quiver.vertices}


def _fitting_split(v: Rep, f: RepMorphism):
    """Split V = ker(f^N) + im(f^N) when both parts are proper."""
    n = v.total_dim()
    fn = endo_power(f, n)
    k_spans = {}
    i_spans = {}
    for vert in v.quiver.vertices:
        m = fn.comps[vert]
        k_spans[vert] = Matrix.from_columns(v.field, m.kernel_basis(), v.dims[vert])
        i_spans[vert] = m
    k_total = sum(k_spans[vert].cols for vert in v.quiver.vertices)
    if k_total == 0 or k_total == v.total_dim():
        return None
    ker_rep, ker_emb = subrep_from_columns(v, k_spans)
    im_rep, im_emb = subrep_from_columns(v, i_spans)
    if ker_rep.total_dim() + im_rep.total_dim() != v.total_dim():
        return None
    return (ker_rep, ker_emb), (im_rep, im_emb)


def _idempotent_split(v: Rep, e: RepMorphism):
    k_spans = {}
    i_spans = {}
    for vert in v.quiver.vertices:
        m = e.comps[vert]
        k_spans[vert] = Matrix.from_columns(v.field, m.kernel_basis(), v.dims[vert])
        i_spans[vert] = m
    ker_rep, ker_emb = subrep_from_columns(v, k_spans)
    im_rep, im_emb = subrep_from_columns(v, i_spans)
    if ker_rep.total_dim() + im_rep.total_dim() != v.total_dim():
        return None
    if ker_rep.total_dim() == 0 or im_rep.total_dim() == 0:
        return None
    return (ker_rep, ker_emb), (im_rep, im_emb)


IDEMPOTENT_ENUM_LIMIT = 4096


def decompose(v: Rep, rng=None, draw_budget: int = 64) -> Decomposition:
    """Krull-Schmidt decomposition with explicit embeddings.

    Random Fitting splittings first; for small finite endomorphism algebras an
    exhaustive idempotent sweep certifies indecomposability.  Summands that
    cannot be certified are flagged "undecided", never silently accepted.
    """
    if rng is None:
        rng = random.Random(20240601)
    if v.is_zero():
        return Decomposition(v, [], [], [])

    def rec(cur: Rep, emb):
        endos = hom_space(cur, cur)
        if len(endos) <= 1:
            return [(cur, emb, "indecomposable")]
        split = None
        candidates = list(endos)
        for f, g in itertools.combinations(endos, 2):
            candidates.append(f.add(g))
        draws = 0
        for f in candidates:
            if draws >= draw_budget:
                break
            draws += 1
            split = _fitting_split(cur, f)
            if split:
                break
        while split is None and draws < draw_budget:
            draws += 1
            f = endos[0].scale(cur.field.rand(rng))
            for h in endos[1:]:
                f = f.add(h.scale(cur.field.rand(rng)))
            split = _fitting_split(cur, f)
        if split is None:
            split = _exhaustive_idempotent(cur, endos)
            if split == "none":
                return [(cur, emb, "indecomposable")]
            if split is None:
                return [(cur, emb, "undecided")]
        (rep_a, emb_a), (rep_b, emb_b) = split
        out = []
        out.extend(rec(rep_a, _compose_embedding(emb, emb_a, cur.quiver)))
        out.extend(rec(rep_b, _compose_embedding(emb, emb_b, cur.quiver)))
        return out

    parts = rec(v, _identity_embedding(v))
    dec = Decomposition(
        rep=v,
        summands=[p[0] for p in parts],
        embeddings=[p[1] for p in parts],
        statuses=[p[2] for p in parts],
    )
    if dec.assembled_iso() is None:
        raise RuntimeError("decomposition failed to certify its isomorphism")
    return dec


def _exhaustive_idempotent(v: Rep, endos):
    """Sweep all of End(V) for a nontrivial idempotent (small finite fields only).

    Returns a split, the string "none" when certified absent, or None when the
    algebra is too large to sweep.
    """
    fld = v.field
    if not hasattr(fld, "elements"):
        return None
    elems = fld.elements()
    if len(elems) ** len(endos) > IDEMPOTENT_ENUM_LIMIT:
        return None
    ident = RepMorphism.identity(v)
    for coeffs in itertools.product(elems, repeat=len(endos)):
        e = RepMorphism.zero(v, v)
        for c, h in zip(coeffs, endos):
            if not fld.is_zero(c):
                e = e.add(h.scale(c))
        if e.is_zero() or e == ident:
            continue
        if e.compose(e) == e:
            split = _idempotent_split(v, e)
            if split:
                return split
    return "none"


def is_isomorphic(v: Rep, w: Rep, rng=None, budget: int = 64):
    """An explicit isomorphism V -> W, or None when none is found.

    Over small finite fields the search is exhaustive, so None is a
    certificate; otherwise it is a budgeted random search.
    """
    if v.dim_vector() != w.dim_vector():
        return None
    if v.total_dim() == 0:
        return RepMorphism.zero(v, w)
    if rng is None:
        rng = random.Random(20240602)
    homs = hom_space(v, w)
    if not homs:
        return None
    fld = v.field
    if hasattr(fld, "elements") and len(fld.elements()) ** len(homs) <= IDEMPOTENT_ENUM_LIMIT:
        for coeffs in itertools.product(fld.elements(), repeat=len(homs)):
            f = RepMorphism.zero(v, w)
            for c, h in zip(coeffs, homs):
                if not fld.is_zero(c):
                    f = f.add(h.scale(c))
            if f.is_isomorphism():
                return f
        return None
    for f in homs:
        if f.is_isomorphism():
            return f
    for _ in range(budget):
        f = RepMorphism.zero(v, w)
        for h in homs:
            f = f.add(h.scale(fld.rand(rng)))
        if f.is_isomorphism():
            return f
    return None


# ---------------------------------------------------------------------------
# indecomposable pools


@dataclass
class IndecomposablePool:
    reps: list
    labels: list
    complete: bool
    note: str = ""


def interval_rep(q: Quiver, fld, order, i: int, j: int) -> Rep:
    """Interval module on the path-order segment order[i..j], identities inside."""
    segment = set(order[i : j + 1])
    dims = {v: (1 if v in segment else 0) for v in q.vertices}
    mats = {}
    for a in q.arrows:
        if a.src in segment and a.tgt in segment:
            mats[a.label] = Matrix.identity(fld, 1)
    return Rep(q, fld, dims, mats)


def list_indecomposables(q: Quiver, fld, dim_bound: int | None = None) -> IndecomposablePool:
    """Indecomposable representations up to isomorphism.

    Type-A quivers get the interval modules directly (complete at every
    field); anything else falls back to exhaustive search over F_2 up to the
    dimension bound.
    """
    order = q.path_order()
    if order is not None:
        reps = []
        labels = []
        n = len(order)
        for i in range(n):
            for j in range(i, n):
                reps.append(interval_rep(q, fld, order, i, j))
                labels.append(f"[{order[i]}..{order[j]}]" if i != j else f"[{order[i]}]")
        return IndecomposablePool(reps=reps, labels=labels, complete=True, note="type-A intervals")
    if getattr(fld, "characteristic", 0) == 0 and dim_bound is None:
        raise ValueError("non-type-A quiver over the rationals needs a dimension bound")
    if dim_bound is None:
        dim_bound = 1
    return _exhaustive_indecomposables(q, fld, dim_bound)


def _exhaustive_indecomposables(q: Quiver, fld, dim_bound: int) -> IndecomposablePool:
    if not hasattr(fld, "elements"):
        raise ValueError("exhaustive search needs a finite field")
    elems = fld.elements()
    found = []
    labels = []
    dim_ranges = [range(dim_bound + 1)] * len(q.vertices)
    for dims_tuple in itertools.product(*dim_ranges):
        if sum(dims_tuple) == 0:
            continue
        dims = dict(zip(q.vertices, dims_tuple))
        shapes = [(a.label, dims[a.tgt] * dims[a.src]) for a in q.arrows]
        entry_space = [list(itertools.product(elems, repeat=sz)) for _, sz in shapes]
        for combo in itertools.product(*entry_space):
            mats = {}
            for (label, _), entries in zip(shapes, combo):
                a = q.arrow(label)
                mats[label] = Matrix(fld, dims[a.tgt], dims[a.src], list(entries))
            rep = Rep(q, fld, dims, mats)
            dec = decompose(rep)
            if len(dec.summands) != 1 or dec.statuses != ["indecomposable"]:
                continue
            if any(is_isomorphic(rep, other) for other in found):
                continue
            found.append(rep)
            labels.append(f"x{len(found)}(dims={','.join(map(str, dims_tuple))})")
    return IndecomposablePool(
        reps=found,
        labels=labels,
        complete=False,
        note=f"exhaustive search complete up to dimension bound {dim_bound}",
    )


def random_rep(q: Quiver, fld, rng, max_dim: int = 2) -> Rep:
    dims = {v: rng.randint(0, max_dim) for v in q.vertices}
    mats = {}
    for a in q.arrows:
        rows, cols = dims[a.tgt], dims[a.src]
        mats[a.label] = Matrix(fld, rows, cols, [fld.rand(rng) for _ in range(rows * cols)])
    return Rep(q, fld, dims, mats)
