"""Bounded cochain complexes over an instance category, cones, cohomology.

Degree convention is cohomological: d raises degree, shifting by [n] moves an
object from degree i+n to degree i and multiplies differentials by (-1)^n.
The cone of f: A -> B has cone^i = B^i (+) A^{i+1}.  Every constructed
complex asserts d o d = 0.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import Matrix
from .quivers import Quiver, Rep, RepMorphism


class RepCat:
    """Category hooks (sums, blocks, tensor) for quiver representations."""

    kind = "quiver-rep"
    hereditary = True

    def __init__(self, quiver: Quiver, field):
        quiver.topological_order()
        self.quiver = quiver
        self.field = field
        from .quivers import standard_reps

        self.unit, self.simples, self.projectives = standard_reps(quiver, field)

    def zero_obj(self):
        return Rep.zero(self.quiver, self.field)

    def unit_obj(self):
        return self.unit

    def is_zero_obj(self, o) -> bool:
        return o.is_zero()

    def obj_eq(self, a, b) -> bool:
        return a.dims == b.dims and a.mats == b.mats

    def obj_total_dim(self, o) -> int:
        return o.total_dim()

    def identity(self, o):
        return RepMorphism.identity(o)

    def zero_mor(self, src, tgt):
        return RepMorphism.zero(src, tgt)

    def compose(self, f, g):
        return f.compose(g)

    def add(self, f, g):
        return f.add(g)

    def neg(self, f):
        return f.neg()

    def mor_is_zero(self, f) -> bool:
        return f.is_zero()

    def mor_eq(self, f, g) -> bool:
        return f.comps == g.comps

    def sum_objs(self, objs):
        if not objs:
            return self.zero_obj()
        total = objs[0]
        for o in objs[1:]:
            total = total.direct_sum(o)
        return total

    def block_mor(self, srcs, tgts, blocks):
        """Morphism between direct sums from a {(ti, sj): mor} block dict."""
        src = self.sum_objs(srcs)
        tgt = self.sum_objs(tgts)
        comps = {}
        for v in self.quiver.vertices:
            row_sizes = [t.dims[v] for t in tgts]
            col_sizes = [s.dims[v] for s in srcs]
            grid = [[None] * len(srcs) for _ in tgts]
            for (ti, sj), mor in blocks.items():
                grid[ti][sj] = mor.comps[v]
            comps[v] = Matrix.block(self.field, grid, row_sizes, col_sizes)
        return RepMorphism(src, tgt, comps, check=False)

    def tensor_obj(self, a, b):
        return a.tensor(b)

    def tensor_mor(self, f, g):
        comps = {}
        for v in self.quiver.vertices:
            comps[v] = f.comps[v].kron(g.comps[v])
        return RepMorphism(f.source.tensor(g.source), f.target.tensor(g.target), comps, check=False)

    def scale_mor(self, f, c):
        return f.scale(c)


class BoundedComplex:
    """Finitely supported cochain complex; zero objects are normalized away."""

    def __init__(self, cat, objects, diffs, check: bool = True):
        self.cat = cat
        self.objects = {int(i): o for i, o in objects.items() if not cat.is_zero_obj(o)}
        self.diffs = {}
        for i, d in diffs.items():
            i = int(i)
            if i in self.objects and (i + 1) in self.objects and not cat.mor_is_zero(d):
                self.diffs[i] = d
        if check:
            self._validate()

    def _validate(self):
        for i, d in self.diffs.items():
            if not self.cat.obj_eq(d.source, self.objects[i]):
                raise ValueError(f"differential at degree {i} has the wrong source")
            if not self.cat.obj_eq(d.target, self.objects[i + 1]):
                raise ValueError(f"differential at degree {i} has the wrong target")
        for i in self.diffs:
            if (i + 1) in self.diffs:
                comp = self.cat.compose(self.diffs[i + 1], self.diffs[i])
                if not self.cat.mor_is_zero(comp):
                    raise ValueError(f"d o d != 0 between degrees {i} and {i + 2}")

    def degrees(self):
        return sorted(self.objects)

    def obj(self, i: int):
        return self.objects.get(i, self.cat.zero_obj())

    def diff(self, i: int):
        d = self.diffs.get(i)
        if d is None:
            return self.cat.zero_mor(self.obj(i), self.obj(i + 1))
        return d

    def is_zero_complex(self) -> bool:
        return not self.objects

    def support_range(self):
        degs = self.degrees()
        return (degs[0], degs[-1]) if degs else (0, 0)

    def total_dim(self) -> int:
        return sum(self.cat.obj_total_dim(o) for o in self.objects.values())

    def __repr__(self):
        return f"BoundedComplex(degrees={self.degrees()})"


def stalk_complex(cat, obj, degree: int = 0) -> BoundedComplex:
    return BoundedComplex(cat, {degree: obj}, {})


def shift_complex(c: BoundedComplex, n: int) -> BoundedComplex:
    objects = {i - n: o for i, o in c.objects.items()}
    diffs = {}
    for i, d in c.diffs.items():
        diffs[i - n] = d if n % 2 == 0 else c.cat.neg(d)
    return BoundedComplex(c.cat, objects, diffs, check=False)


def sum_complexes(a: BoundedComplex, b: BoundedComplex) -> BoundedComplex:
    cat = a.cat
    objects = {}
    diffs = {}
    for i in set(a.degrees()) | set(b.degrees()):
        objects[i] = cat.sum_objs([a.obj(i), b.obj(i)])
    for i in objects:
        if (i + 1) in objects:
            blocks = {(0, 0): a.diff(i), (1, 1): b.diff(i)}
            diffs[i] = cat.block_mor([a.obj(i), b.obj(i)], [a.obj(i + 1), b.obj(i + 1)], blocks)
    return BoundedComplex(cat, objects, diffs)


class ChainMap:
    def __init__(self, source: BoundedComplex, target: BoundedComplex, comps, check: bool = True):
        self.source = source
        self.target = target
        self.comps = {int(i): m for i, m in comps.items() if not source.cat.mor_is_zero(m)}
        if check:
            self._validate()

    def _validate(self):
        cat = self.source.cat
        for i, m in self.comps.items():
            if not cat.obj_eq(m.source, self.source.obj(i)) or not cat.obj_eq(
                m.target, self.target.obj(i)
            ):
                raise ValueError(f"component at degree {i} has the wrong shape")
        degs = set(self.source.degrees()) | set(self.target.degrees())
        for i in degs:
            lhs = cat.compose(self.target.diff(i), self.comp(i))
            rhs = cat.compose(self.comp(i + 1), self.source.diff(i))
            if not cat.mor_eq(lhs, rhs):
                raise ValueError(f"chain map square fails at degree {i}")

    def comp(self, i: int):
        m = self.comps.get(i)
        if m is None:
            return self.source.cat.zero_mor(self.source.obj(i), self.target.obj(i))
        return m

    @classmethod
    def zero(cls, source, target):
        return cls(source, target, {}, check=False)

    @classmethod
    def identity(cls, c: BoundedComplex):
        return cls(c, c, {i: c.cat.identity(c.obj(i)) for i in c.degrees()}, check=False)

    def is_zero(self) -> bool:
        return all(self.source.cat.mor_is_zero(m) for m in self.comps.values())

    def add(self, other: "ChainMap") -> "ChainMap":
        cat = self.source.cat
        degs = set(self.comps) | set(other.comps)
        return ChainMap(
            self.source,
            self.target,
            {i: cat.add(self.comp(i), other.comp(i)) for i in degs},
            check=False,
        )

    def neg(self) -> "ChainMap":
        cat = self.source.cat
        return ChainMap(
            self.source, self.target, {i: cat.neg(m) for i, m in self.comps.items()}, check=False
        )

    def compose(self, first: "ChainMap") -> "ChainMap":
        cat = self.source.cat
        degs = set(self.comps) | set(first.comps)
        return ChainMap(
            first.source,
            self.target,
            {i: cat.compose(self.comp(i), first.comp(i)) for i in degs},
            check=False,
        )

    def scale(self, c) -> "ChainMap":
        cat = self.source.cat
        return ChainMap(
            self.source,
            self.target,
            {i: cat.scale_mor(m, c) for i, m in self.comps.items()},
            check=False,
        )


@dataclass
class ConeData:
    complex: BoundedComplex
    include_target: ChainMap  # B -> cone
    project_source: ChainMap  # cone -> A[1]


def cone(f: ChainMap) -> ConeData:
    """Mapping cone with its two canonical maps; cone^i = B^i (+) A^{i+1}."""
    a, b = f.source, f.target
    cat = a.cat
    degrees = set(b.degrees()) | {i - 1 for i in a.degrees()}
    objects = {}
    for i in degrees:
        objects[i] = cat.sum_objs([b.obj(i), a.obj(i + 1)])
    diffs = {}
    for i in degrees:
        blocks = {
            (0, 0): b.diff(i),
            (0, 1): f.comp(i + 1),
            (1, 1): cat.neg(a.diff(i + 1)),
        }
        diffs[i] = cat.block_mor(
            [b.obj(i), a.obj(i + 1)], [b.obj(i + 1), a.obj(i + 2)], blocks
        )
    cone_cx = BoundedComplex(cat, objects, diffs)
    incl = ChainMap(
        b,
        cone_cx,
        {
            i: cat.block_mor([b.obj(i)], [b.obj(i), a.obj(i + 1)], {(0, 0): cat.identity(b.obj(i))})
            for i in b.degrees()
        },
        check=False,
    )
    shifted = shift_complex(a, 1)
    proj = ChainMap(
        cone_cx,
        shifted,
        {
            i: cat.block_mor(
                [b.obj(i), a.obj(i + 1)], [a.obj(i + 1)], {(0, 1): cat.identity(a.obj(i + 1))}
            )
            for i in cone_cx.degrees()
        },
        check=False,
    )
    return ConeData(complex=cone_cx, include_target=incl, project_source=proj)


def derived_tensor(c: BoundedComplex, d: BoundedComplex) -> BoundedComplex:
    """Total complex of the componentwise tensor bicomplex."""
    cat = c.cat
    slots = {}
    for i in c.degrees():
        for j in d.degrees():
            slots.setdefault(i + j, []).append((i, j))
    for n in slots:
        slots[n].sort()
    objects = {}
    for n, pairs in slots.items():
        objects[n] = cat.sum_objs([cat.tensor_obj(c.obj(i), d.obj(j)) for i, j in pairs])
    diffs = {}
    for n, pairs in slots.items():
        if (n + 1) not in slots:
            continue
        tgt_pairs = slots[n + 1]
        tgt_index = {p: k for k, p in enumerate(tgt_pairs)}
        blocks = {}
        for sj, (i, j) in enumerate(pairs):
            horizontal = (i + 1, j)
            if horizontal in tgt_index:
                m = cat.tensor_mor(c.diff(i), cat.identity(d.obj(j)))
                if not cat.mor_is_zero(m):
                    blocks[(tgt_index[horizontal], sj)] = m
            vertical = (i, j + 1)
            if vertical in tgt_index:
                m = cat.tensor_mor(cat.identity(c.obj(i)), d.diff(j))
                if i % 2 == 1:
                    m = cat.neg(m)
                if not cat.mor_is_zero(m):
                    blocks[(tgt_index[vertical], sj)] = m
        diffs[n] = cat.block_mor(
            [cat.tensor_obj(c.obj(i), d.obj(j)) for i, j in pairs],
            [cat.tensor_obj(c.obj(i), d.obj(j)) for i, j in tgt_pairs],
            blocks,
        )
    return BoundedComplex(cat, objects, diffs)


# ---------------------------------------------------------------------------
# cohomology of complexes of quiver representations (functorial)


def _complement_projection(field, total_dim: int, inside: Matrix):
    """Projection data for k^total / colspan(inside).

    Returns (lift, proj): lift maps quotient coordinates to ambient vectors,
    proj maps ambient coordinates (relative to a kernel: here ambient itself)
    down to the quotient.
    """
    cols = []
    rank0 = inside.rank()
    acc = inside
    rank = rank0
    for j in range(total_dim):
        e = [field.zero] * total_dim
        e[j] = field.one
        cand = acc.hstack(Matrix.column(field, e))
        if cand.rank() > rank:
            acc = cand
            rank += 1
            cols.append(e)
    h = len(cols)
    basis_cols = [inside.col(j) for j in range(inside.cols)]
    # reduce to an independent spanning set of `inside`
    indep = []
    probe = Matrix.zeros(field, total_dim, 0)
    r = 0
    for col in basis_cols:
        cand = probe.hstack(Matrix.column(field, col))
        if cand.rank() > r:
            probe = cand
            r += 1
            indep.append(col)
    g = Matrix.from_columns(field, indep + cols, total_dim)
    ginv = g.inverse()
    if ginv is None:
        raise RuntimeError("complement construction failed")
    proj = Matrix(field, h, total_dim, ginv.entries[(total_dim - h) * total_dim :])
    lift = Matrix.from_columns(field, cols, total_dim) if h else Matrix.zeros(field, total_dim, 0)
    return lift, proj


@dataclass
class RepCohomology:
    """H^* of a rep-complex with enough data to push chain maps through."""

    complex: BoundedComplex
    reps: dict  # degree -> Rep
    kernels: dict  # (degree, vertex) -> Matrix whose columns span ker d^i_v
    lifts: dict  # (degree, vertex) -> Matrix (H coords -> ambient C^i(v))
    projs: dict  # (degree, vertex) -> Matrix (kernel coords -> H coords)

    def graded_dims_at(self, v: str):
        return {i: rep.dims[v] for i, rep in self.reps.items() if rep.dims[v]}

    def project_vector(self, degree: int, v: str, vec):
        """Ambient kernel vector -> H-coordinates."""
        k = self.kernels[(degree, v)]
        coords = k.solve(vec)
        if coords is None:
            raise ValueError("vector is not a cocycle")
        return self.projs[(degree, v)].apply(coords)


def cohomology(c: BoundedComplex) -> RepCohomology:
    cat = c.cat
    if not isinstance(cat, RepCat):
        raise TypeError("rep-complex cohomology requires a quiver-representation base")
    field = cat.field
    quiver = cat.quiver
    degrees = set(c.degrees())
    reps = {}
    kernels = {}
    lifts = {}
    projs = {}
    for i in sorted(degrees):
        kernel_mats = {}
        h_dims = {}
        for v in quiver.vertices:
            d_out = c.diff(i).comps[v]
            kb = d_out.kernel_basis()
            k = Matrix.from_columns(field, kb, c.obj(i).dims[v])
            d_in = c.diff(i - 1).comps[v]
            image_in_kernel = k.solve_matrix(d_in)
            if image_in_kernel is None:
                raise RuntimeError("image does not land in the kernel (d*d != 0?)")
            lift, proj = _complement_projection(field, k.cols, image_in_kernel)
            kernel_mats[v] = (k, lift, proj)
            h_dims[v] = lift.cols
        mats = {}
        for a in quiver.arrows:
            k_src, lift_src, _ = kernel_mats[a.src]
            k_tgt, _, proj_tgt = kernel_mats[a.tgt]
            carried = c.obj(i).mats[a.label].mul(k_src.mul(lift_src))
            coords = k_tgt.solve_matrix(carried)
            if coords is None:
                raise RuntimeError("arrow action does not preserve kernels")
            mats[a.label] = proj_tgt.mul(coords)
        h_rep = Rep(quiver, field, h_dims, mats)
        if not h_rep.is_zero():
            reps[i] = h_rep
            for v in quiver.vertices:
                k, lift, proj = kernel_mats[v]
                kernels[(i, v)] = k
                lifts[(i, v)] = k.mul(lift)
                projs[(i, v)] = proj
    return RepCohomology(complex=c, reps=reps, kernels=kernels, lifts=lifts, projs=projs)


def graded_object(c: BoundedComplex):
    """H^*(C) as a degree-indexed dict of representations."""
    return cohomology(c).reps


def map_on_cohomology(f: ChainMap, hc_src: RepCohomology, hc_tgt: RepCohomology):
    """Induced maps H^i(f) as RepMorphisms, degree by degree."""
    cat = f.source.cat
    out = {}
    for i, src_rep in hc_src.reps.items():
        tgt_rep = hc_tgt.reps.get(i)
        if tgt_rep is None:
            continue
        comps = {}
        for v in cat.quiver.vertices:
            lift = hc_src.lifts[(i, v)]
            carried = f.comp(i).comps[v].mul(lift)
            k = hc_tgt.kernels[(i, v)]
            coords = k.solve_matrix(carried)
            if coords is None:
                raise RuntimeError("chain map does not preserve cocycles")
            comps[v] = hc_tgt.projs[(i, v)].mul(coords)
        out[i] = RepMorphism(src_rep, tgt_rep, comps, check=False)
    return out


def vertex_cohomology_dims(c: BoundedComplex, v: str):
    """dims of H^*(C) at one vertex without building the quotient reps."""
    out = {}
    for i in c.degrees():
        dim_here = c.obj(i).dims[v]
        rank_out = c.diff(i).comps[v].rank()
        rank_in = c.diff(i - 1).comps[v].rank()
        h = dim_here - rank_out - rank_in
        if h:
            out[i] = h
    return out


@dataclass
class NormalizedComplex:
    graded: dict  # degree -> Rep
    complex: BoundedComplex  # the zero-differential complex (+) H^i placed at degree i
    certificate: bool  # graded dims agree with vertex-wise cohomology dims


def normalize_hereditary(c: BoundedComplex) -> NormalizedComplex:
    """Split a complex over a hereditary base into its cohomology stalks."""
    cat = c.cat
    if not getattr(cat, "hereditary", False):
        raise ValueError("hereditary normalization needs a hereditary base category")
    h = cohomology(c)
    normalized = BoundedComplex(cat, dict(h.reps), {})
    cert = True
    for v in cat.quiver.vertices:
        direct = vertex_cohomology_dims(c, v)
        from_reps = {i: rep.dims[v] for i, rep in h.reps.items() if rep.dims[v]}
        if direct != from_reps:
            cert = False
    return NormalizedComplex(graded=h.reps, complex=normalized, certificate=cert)


def euler_characteristic_dims(c: BoundedComplex):
    """Signed total dimension, degree by degree (equal for C and H^*(C))."""
    return sum((-1) ** i * c.cat.obj_total_dim(o) for i, o in c.objects.items())


# -- serialization (quiver-rep complexes) ------------------------------------


def _matrix_to_rows_json(field, m: Matrix):
    from .fields import scalar_to_json

    return [[scalar_to_json(field, x) for x in m.row(i)] for i in range(m.rows)]


def _matrix_from_rows_json(field, rows, shape):
    from .fields import scalar_from_json

    if not rows:
        return Matrix.zeros(field, shape[0], shape[1])
    return Matrix.from_rows(field, [[scalar_from_json(field, x) for x in r] for r in rows])


def rep_to_dict(rep: Rep):
    return {
        "dims": {v: rep.dims[v] for v in rep.quiver.vertices},
        "mats": {
            a.label: _matrix_to_rows_json(rep.field, rep.mats[a.label])
            for a in rep.quiver.arrows
        },
    }


def complex_to_dict(c: BoundedComplex):
    data = {"degrees": {}, "diff": {}}
    for i, o in sorted(c.objects.items()):
        data["degrees"][str(i)] = rep_to_dict(o)
    for i, d in sorted(c.diffs.items()):
        data["diff"][str(i)] = {
            v: _matrix_to_rows_json(c.cat.field, d.comps[v]) for v in c.cat.quiver.vertices
        }
    return data


def rep_from_dict(cat: RepCat, data) -> Rep:
    dims = data["dims"]
    mats = {}
    for label, rows in data.get("mats", {}).items():
        arrow = cat.quiver.arrow(label)
        shape = (dims.get(arrow.tgt, 0), dims.get(arrow.src, 0))
        mats[label] = _matrix_from_rows_json(cat.field, rows, shape)
    return Rep(cat.quiver, cat.field, dims, mats)


def complex_from_dict(cat: RepCat, data) -> BoundedComplex:
    objects = {int(i): rep_from_dict(cat, o) for i, o in data.get("degrees", {}).items()}
    diffs = {}
    for i, comps in data.get("diff", {}).items():
        i = int(i)
        src = objects.get(i, cat.zero_obj())
        tgt = objects.get(i + 1, cat.zero_obj())
        mor = RepMorphism(
            src,
            tgt,
            {
                v: _matrix_from_rows_json(cat.field, rows, (tgt.dims[v], src.dims[v]))
                for v, rows in comps.items()
            },
            check=True,
        )
        diffs[i] = mor
    return BoundedComplex(cat, objects, diffs)
