"""Derived Hom spaces, thick closure over an indecomposable pool, and roofs.

For a hereditary base every object splits into shifted stalks, so morphisms
between shift classes are controlled by Hom and Ext^1 of representations;
cones of those morphisms are kernels/cokernels and extension middle terms.
Chain-level spaces (chain maps modulo homotopy) are kept alongside as the
independent route and for roof certificates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .complexes import (
    BoundedComplex,
    ChainMap,
    cone,
    normalize_hereditary,
    shift_complex,
    stalk_complex,
)
from .linalg import Matrix
from .quivers import (
    Rep,
    RepMorphism,
    cokernel_rep,
    decompose,
    ext1,
    extension_rep,
    hom_space,
    is_isomorphic,
    kernel_rep,
)

EXHAUSTIVE_COMBO_LIMIT = 4096


# ---------------------------------------------------------------------------
# chain maps modulo homotopy (quiver-representation complexes)


def _component_layout(c: BoundedComplex, d: BoundedComplex):
    """Flat coordinates for degree-wise components C^i -> D^i."""
    cat = c.cat
    layout = []
    offsets = {}
    pos = 0
    degs = sorted(set(c.degrees()) & set(d.degrees()))
    for i in degs:
        for v in cat.quiver.vertices:
            rows = d.obj(i).dims[v]
            cols = c.obj(i).dims[v]
            if rows * cols:
                offsets[(i, v)] = pos
                layout.append((i, v, rows, cols))
                pos += rows * cols
    return layout, offsets, pos


def _chainmap_from_vector(c, d, layout, offsets, vec) -> ChainMap:
    cat = c.cat
    comps = {}
    for i, v, rows, cols in layout:
        comps.setdefault(i, {})[v] = Matrix(
            cat.field, rows, cols, vec[offsets[(i, v)] : offsets[(i, v)] + rows * cols]
        )
    maps = {}
    for i, vcomps in comps.items():
        maps[i] = RepMorphism(c.obj(i), d.obj(i), vcomps, check=False)
    return ChainMap(c, d, maps, check=False)


def _flatten_chainmap(f: ChainMap, layout, offsets, total):
    cat = f.source.cat
    vec = [cat.field.zero] * total
    for i, v, rows, cols in layout:
        m = f.comp(i).comps[v]
        base = offsets[(i, v)]
        for r in range(rows):
            for col in range(cols):
                vec[base + r * cols + col] = m[r, col]
    return vec


def chain_map_space(c: BoundedComplex, d: BoundedComplex):
    """Basis of the space of chain maps C -> D (honest components, no homotopy)."""
    cat = c.cat
    fld = cat.field
    layout, offsets, total = _component_layout(c, d)
    if total == 0:
        return []
    rows = []

    def add_equation(coeffs):
        row = [fld.zero] * total
        for idx, coef in coeffs.items():
            row[idx] = fld.add(row[idx], coef)
        rows.append(row)

    # intertwiner constraints per degree
    degs = sorted({i for i, _, _, _ in layout})
    for i in degs:
        src, tgt = c.obj(i), d.obj(i)
        for a in cat.quiver.arrows:
            va, wa = src.mats[a.label], tgt.mats[a.label]
            for r in range(tgt.dims[a.tgt]):
                for col in range(src.dims[a.src]):
                    coeffs = {}
                    if (i, a.tgt) in offsets:
                        for k in range(src.dims[a.tgt]):
                            if not fld.is_zero(va[k, col]):
                                idx = offsets[(i, a.tgt)] + r * src.dims[a.tgt] + k
                                coeffs[idx] = fld.add(coeffs.get(idx, fld.zero), va[k, col])
                    if (i, a.src) in offsets:
                        for l in range(tgt.dims[a.src]):
                            if not fld.is_zero(wa[r, l]):
                                idx = offsets[(i, a.src)] + l * src.dims[a.src] + col
                                coeffs[idx] = fld.sub(coeffs.get(idx, fld.zero), wa[r, l])
                    if coeffs:
                        add_equation(coeffs)
    # chain squares: d_D o f_i - f_{i+1} o d_C = 0
    all_degs = sorted(set(c.degrees()) | set(d.degrees()))
    for i in all_degs:
        dd = d.diff(i)
        dc = c.diff(i)
        for v in cat.quiver.vertices:
            rows_n = d.obj(i + 1).dims[v]
            cols_n = c.obj(i).dims[v]
            for r in range(rows_n):
                for col in range(cols_n):
                    coeffs = {}
                    if (i, v) in offsets:
                        for k in range(d.obj(i).dims[v]):
                            coef = dd.comps[v][r, k]
                            if not fld.is_zero(coef):
                                idx = offsets[(i, v)] + k * c.obj(i).dims[v] + col
                                coeffs[idx] = fld.add(coeffs.get(idx, fld.zero), coef)
                    if (i + 1, v) in offsets:
                        for k in range(c.obj(i + 1).dims[v]):
                            coef = dc.comps[v][k, col]
                            if not fld.is_zero(coef):
                                idx = offsets[(i + 1, v)] + r * c.obj(i + 1).dims[v] + k
                                coeffs[idx] = fld.sub(coeffs.get(idx, fld.zero), coef)
                    if coeffs:
                        add_equation(coeffs)
    if rows:
        system = Matrix.from_rows(fld, rows)
        kernel = system.kernel_basis()
    else:
        kernel = [
            [fld.one if k == j else fld.zero for k in range(total)] for j in range(total)
        ]
    return [_chainmap_from_vector(c, d, layout, offsets, vec) for vec in kernel]


def homotopy_boundaries(c: BoundedComplex, d: BoundedComplex):
    """Spanning set of null-homotopic chain maps d_D h + h d_C."""
    cat = c.cat
    out = []
    for i in sorted(set(c.degrees())):
        for h in hom_space(c.obj(i), d.obj(i - 1)):
            comps = {}
            comps[i] = cat.compose(d.diff(i - 1), h)
            lower = cat.compose(h, c.diff(i - 1))
            if not cat.mor_is_zero(lower):
                comps[i - 1] = lower
            boundary = ChainMap(c, d, comps, check=False)
            if not boundary.is_zero():
                out.append(boundary)
    return out


@dataclass
class DerivedHom:
    dim: int
    classes: list  # ChainMap representatives of a basis modulo homotopy
    chain_dim: int
    boundary_dim: int


def derived_hom_basis(c: BoundedComplex, d: BoundedComplex) -> DerivedHom:
    """Hom in the derived category as chain maps modulo homotopy."""
    fld = c.cat.field
    layout, offsets, total = _component_layout(c, d)
    chain_basis = chain_map_space(c, d)
    boundaries = homotopy_boundaries(c, d)
    if total == 0:
        return DerivedHom(dim=0, classes=[], chain_dim=0, boundary_dim=0)
    acc = Matrix.zeros(fld, total, 0)
    rank = 0
    for bmap in boundaries:
        vec = _flatten_chainmap(bmap, layout, offsets, total)
        cand = acc.hstack(Matrix.column(fld, vec))
        if cand.rank() > rank:
            acc = cand
            rank += 1
    boundary_dim = rank
    classes = []
    for zmap in chain_basis:
        vec = _flatten_chainmap(zmap, layout, offsets, total)
        cand = acc.hstack(Matrix.column(fld, vec))
        if cand.rank() > rank:
            acc = cand
            rank += 1
            classes.append(zmap)
    return DerivedHom(
        dim=len(classes),
        classes=classes,
        chain_dim=len(chain_basis),
        boundary_dim=boundary_dim,
    )


# ---------------------------------------------------------------------------
# projective resolutions (hereditary: two terms suffice)


@dataclass
class ProjectiveResolution:
    rep: Rep
    p0: Rep
    p1: Rep
    differential: RepMorphism  # p1 -> p0
    augmentation: RepMorphism  # p0 -> rep (a quasi-isomorphism of complexes)

    def as_complex(self, cat) -> BoundedComplex:
        return BoundedComplex(cat, {-1: self.p1, 0: self.p0}, {-1: self.differential})


def projective_resolution(cat, m: Rep) -> ProjectiveResolution:
    """The standard resolution 0 -> (+)_{a:v->w} P_w (x) M_v -> (+)_v P_v (x) M_v -> M -> 0."""
    from .quivers import Path, enumerate_paths

    quiver = cat.quiver
    fld = cat.field
    paths = enumerate_paths(quiver)
    paths_between = {}
    for p in paths:
        paths_between.setdefault((p.source, p.target), []).append(p)

    # P0 basis at u: (v, path p: v->u, t < dim M_v)
    p0_basis = {u: [] for u in quiver.vertices}
    for u in quiver.vertices:
        for v in quiver.vertices:
            for p in paths_between.get((v, u), []):
                for t in range(m.dims[v]):
                    p0_basis[u].append((v, p, t))
    p0_index = {u: {key: i for i, key in enumerate(p0_basis[u])} for u in quiver.vertices}
    p0_dims = {u: len(p0_basis[u]) for u in quiver.vertices}
    p0_mats = {}
    for a in quiver.arrows:
        mat = Matrix.zeros(fld, p0_dims[a.tgt], p0_dims[a.src])
        for j, (v, p, t) in enumerate(p0_basis[a.src]):
            new_path = Path(p.source, a.tgt, p.arrows + (a.label,))
            mat[p0_index[a.tgt][(v, new_path, t)], j] = fld.one
        p0_mats[a.label] = mat
    p0 = Rep(quiver, fld, p0_dims, p0_mats)

    # P1 basis at u: (arrow b: v->w, path q: w->u, t < dim M_v)
    p1_basis = {u: [] for u in quiver.vertices}
    for u in quiver.vertices:
        for b in quiver.arrows:
            for q in paths_between.get((b.tgt, u), []):
                for t in range(m.dims[b.src]):
                    p1_basis[u].append((b.label, q, t))
    p1_index = {u: {key: i for i, key in enumerate(p1_basis[u])} for u in quiver.vertices}
    p1_dims = {u: len(p1_basis[u]) for u in quiver.vertices}
    p1_mats = {}
    for a in quiver.arrows:
        mat = Matrix.zeros(fld, p1_dims[a.tgt], p1_dims[a.src])
        for j, (blabel, q, t) in enumerate(p1_basis[a.src]):
            new_path = Path(q.source, a.tgt, q.arrows + (a.label,))
            mat[p1_index[a.tgt][(blabel, new_path, t)], j] = fld.one
        p1_mats[a.label] = mat
    p1 = Rep(quiver, fld, p1_dims, p1_mats)

    # psi: (b: v->w, q, t) |-> (v, q o b, t) - sum_s (w, q, s) * (M_b)[s, t]
    psi_comps = {}
    for u in quiver.vertices:
        mat = Matrix.zeros(fld, p0_dims[u], p1_dims[u])
        for j, (blabel, q, t) in enumerate(p1_basis[u]):
            b = quiver.arrow(blabel)
            lengthened = Path(b.src, q.target, (blabel,) + q.arrows)
            mat[p0_index[u][(b.src, lengthened, t)], j] = fld.add(
                mat[p0_index[u][(b.src, lengthened, t)], j], fld.one
            )
            mb = m.mats[blabel]
            for s in range(m.dims[b.tgt]):
                coef = mb[s, t]
                if not fld.is_zero(coef):
                    i = p0_index[u][(b.tgt, q, s)]
                    mat[i, j] = fld.sub(mat[i, j], coef)
        psi_comps[u] = mat
    psi = RepMorphism(p1, p0, psi_comps)

    # augmentation: (v, p, t) |-> M_p e_t
    eps_comps = {}
    for u in quiver.vertices:
        mat = Matrix.zeros(fld, m.dims[u], p0_dims[u])
        for j, (v, p, t) in enumerate(p0_basis[u]):
            col = m.path_matrix(p).col(t)
            for i, x in enumerate(col):
                mat[i, j] = x
        eps_comps[u] = mat
    eps = RepMorphism(p0, m, eps_comps)
    if not cat.mor_is_zero(eps.compose(psi)):
        raise RuntimeError("resolution differential does not augment to zero")
    return ProjectiveResolution(rep=m, p0=p0, p1=p1, differential=psi, augmentation=eps)


def projective_presentation(c: BoundedComplex) -> BoundedComplex:
    """A quasi-isomorphic bounded complex of projectives (hereditary base).

    The complex is first split into its cohomology stalks, then each stalk is
    replaced by its two-term resolution; formality of hereditary bases makes
    the result isomorphic to the input in the derived category.
    """
    cat = c.cat
    norm = normalize_hereditary(c)
    pieces = {}
    for i, rep in norm.graded.items():
        res = projective_resolution(cat, rep)
        pieces[i] = res
    objects = {}
    diffs = {}
    degrees = set()
    for i in pieces:
        degrees.add(i)
        degrees.add(i - 1)
    for d in degrees:
        parts = []
        if d in pieces:
            parts.append(pieces[d].p0)
        if (d + 1) in pieces:
            parts.append(pieces[d + 1].p1)
        objects[d] = cat.sum_objs(parts)
    for d in sorted(degrees):
        if (d + 1) not in pieces:
            continue
        srcs = []
        if d in pieces:
            srcs.append(pieces[d].p0)
        srcs.append(pieces[d + 1].p1)
        tgts = [pieces[d + 1].p0]
        if (d + 2) in pieces:
            tgts.append(pieces[d + 2].p1)
        blocks = {(0, len(srcs) - 1): pieces[d + 1].differential}
        diffs[d] = cat.block_mor(srcs, tgts, blocks)
    return BoundedComplex(cat, objects, diffs)


def derived_hom(x: BoundedComplex, y: BoundedComplex) -> DerivedHom:
    """Hom_D(x, y): chain maps out of a projective presentation, mod homotopy."""
    return derived_hom_basis(projective_presentation(x), y)


# ---------------------------------------------------------------------------
# shift-class calculus over an indecomposable pool


class PoolCalculus:
    """Hom/Ext/cone bookkeeping for shift classes of a fixed indecomposable pool."""

    def __init__(self, cat, pool, labels=None):
        self.cat = cat
        self.field = cat.field
        self.pool = list(pool)
        self.labels = list(labels) if labels else [f"m{i}" for i in range(len(pool))]
        self._by_dims = {}
        for idx, rep in enumerate(self.pool):
            self._by_dims.setdefault(rep.dim_vector(), []).append(idx)
        self._hom = {}
        self._ext = {}
        self._cone_cache = {}
        self._tensor_cache = {}
        self._class_cache = {}

    # -- identification ----------------------------------------------------

    def identify(self, rep: Rep) -> int:
        candidates = self._by_dims.get(rep.dim_vector(), [])
        for idx in candidates:
            if is_isomorphic(rep, self.pool[idx]) is not None:
                return idx
        raise LookupError(
            f"indecomposable with dims {rep.dim_vector()} is not in the pool "
            "(pool incomplete?)"
        )

    def classes_of_rep(self, rep: Rep) -> frozenset:
        if rep.is_zero():
            return frozenset()
        key = (rep.dim_vector(), tuple(sorted((k, m) for k, m in rep.mats.items())))
        cached = self._class_cache.get(key)
        if cached is not None:
            return cached
        dec = decompose(rep)
        if not dec.certified:
            raise RuntimeError("decomposition left undecided summands")
        out = frozenset(self.identify(s) for s in dec.summands)
        self._class_cache[key] = out
        return out

    def classes_of_complex(self, c: BoundedComplex) -> frozenset:
        norm = normalize_hereditary(c)
        out = set()
        for rep in norm.graded.values():
            out |= self.classes_of_rep(rep)
        return frozenset(out)

    # -- morphism spaces -----------------------------------------------------

    def hom_basis(self, i: int, j: int):
        key = (i, j)
        if key not in self._hom:
            self._hom[key] = hom_space(self.pool[i], self.pool[j])
        return self._hom[key]

    def ext_basis(self, i: int, j: int):
        key = (i, j)
        if key not in self._ext:
            self._ext[key] = ext1(self.pool[i], self.pool[j])
        return self._ext[key]

    def _nonzero_combos(self, dim: int):
        elems = getattr(self.field, "elements", None)
        if elems is None:
            raise ValueError("exhaustive morphism enumeration needs a finite field")
        elements = self.field.elements()
        if len(elements) ** dim > EXHAUSTIVE_COMBO_LIMIT:
            raise ValueError("morphism space too large for exhaustive enumeration")
        for coeffs in itertools.product(elements, repeat=dim):
            if any(not self.field.is_zero(c) for c in coeffs):
                yield coeffs

    # -- cones ----------------------------------------------------------------

    def cone_classes_hom(self, i: int, j: int, coeffs) -> frozenset:
        key = ("hom", i, j, tuple(coeffs))
        cached = self._cone_cache.get(key)
        if cached is not None:
            return cached
        basis = self.hom_basis(i, j)
        f = RepMorphism.zero(self.pool[i], self.pool[j])
        for c, h in zip(coeffs, basis):
            if not self.field.is_zero(c):
                f = f.add(h.scale(c))
        ker, _ = kernel_rep(f)
        coker, _ = cokernel_rep(f)
        out = self.classes_of_rep(ker) | self.classes_of_rep(coker)
        self._cone_cache[key] = out
        return out

    def cone_classes_ext(self, i: int, j: int, coeffs) -> frozenset:
        key = ("ext", i, j, tuple(coeffs))
        cached = self._cone_cache.get(key)
        if cached is not None:
            return cached
        data = self.ext_basis(i, j)
        cocycle = {}
        v, w = self.pool[i], self.pool[j]
        for c, fam in zip(coeffs, data.basis):
            if self.field.is_zero(c):
                continue
            for label, m in fam.items():
                scaled = m.scale(c)
                cocycle[label] = scaled if label not in cocycle else cocycle[label].add(scaled)
        middle = extension_rep(v, w, cocycle)
        out = self.classes_of_rep(middle)
        self._cone_cache[key] = out
        return out

    def tensor_classes(self, i: int, j: int) -> frozenset:
        key = (min(i, j), max(i, j))
        cached = self._tensor_cache.get(key)
        if cached is not None:
            return cached
        out = self.classes_of_rep(self.pool[i].tensor(self.pool[j]))
        self._tensor_cache[key] = out
        return out


@dataclass
class ClosureResult:
    classes: frozenset
    fixed_point: bool
    rounds: int
    shift_window: int

    @property
    def final(self) -> bool:
        return self.fixed_point


def thick_closure(generators, calc: PoolCalculus, shift_window: int = 2, rounds: int = 32):
    """Close a set of pool classes under summands, shifts, sums, and cones.

    Morphisms between shifted classes are enumerated exhaustively over the
    (small, finite) ground field.  Relative shifts outside {0, 1} carry no
    morphisms over a hereditary base; the window parameter records how far
    that vanishing was relied upon.
    """
    current = frozenset(generators)
    used = 0
    fixed = False
    rel_shifts = [r for r in range(-shift_window, shift_window + 1)]
    while used < rounds:
        used += 1
        new = set(current)
        for i in current:
            for j in current:
                for rel in rel_shifts:
                    if rel == 0:
                        dim = len(calc.hom_basis(i, j))
                        for coeffs in calc._nonzero_combos(dim):
                            new |= calc.cone_classes_hom(i, j, coeffs)
                    elif rel == 1:
                        dim = calc.ext_basis(i, j).dim
                        for coeffs in calc._nonzero_combos(dim):
                            new |= calc.cone_classes_ext(i, j, coeffs)
                    # other relative shifts: Hom vanishes (hereditary base)
        if frozenset(new) == current:
            fixed = True
            break
        current = frozenset(new)
    return ClosureResult(
        classes=current, fixed_point=fixed, rounds=used, shift_window=shift_window
    )


def tensor_ideal_closure(generators, calc: PoolCalculus, shift_window: int = 2, rounds: int = 32):
    """Smallest pool subset containing the generators that is a thick tensor ideal."""
    current = frozenset(generators)
    used = 0
    fixed = False
    while used < rounds:
        used += 1
        thick = thick_closure(current, calc, shift_window=shift_window, rounds=rounds)
        new = set(thick.classes)
        for i in thick.classes:
            for j in range(len(calc.pool)):
                new |= calc.tensor_classes(i, j)
        if frozenset(new) == current and thick.fixed_point:
            fixed = True
            break
        current = frozenset(new)
    return ClosureResult(classes=current, fixed_point=fixed, rounds=used, shift_window=shift_window)


# ---------------------------------------------------------------------------
# bounded roof calculus for Verdier-quotient homs (semi-decision, lower bounds)


@dataclass
class Roof:
    apex_label: str
    denominator: ChainMap  # s: w -> x with cone(s) inside the ideal
    numerator: ChainMap  # g: w -> y
    cone_classes: frozenset


@dataclass
class RoofSpace:
    direct_dim: int
    direct_classes: list
    extra_roofs: list
    exact: bool  # True only when the ideal is zero, where identity roofs suffice
    note: str


def quotient_hom_bounded(
    x: BoundedComplex,
    y: BoundedComplex,
    ideal_classes,
    calc: PoolCalculus,
    shift_range=(-1, 1),
    max_extra: int = 16,
) -> RoofSpace:
    """Roofs x <- w -> y with cone(denominator) in the ideal.

    Returned data is a lower bound for the quotient Hom: identity roofs give
    the image of Hom_T(x, y); additional roofs are reported with their
    certificates but absence of a roof is never treated as emptiness.
    """
    ideal = frozenset(ideal_classes)
    direct = derived_hom(x, y)
    extra = []
    cat = calc.cat
    candidates = []
    for idx, rep in enumerate(calc.pool):
        for s in range(shift_range[0], shift_range[1] + 1):
            candidates.append((f"{calc.labels[idx]}[{s}]", shift_complex(stalk_complex(cat, rep), s)))
    for label, w in candidates:
        if len(extra) >= max_extra:
            break
        denoms = derived_hom(w, x)
        for s_map in denoms.classes:
            cone_cx = cone(s_map).complex
            classes = calc.classes_of_complex(cone_cx)
            if not classes <= ideal:
                continue
            if classes == frozenset():
                # s is a quasi-isomorphism: roof equivalent to a direct hom
                continue
            numerators = derived_hom(w, y)
            for g_map in numerators.classes:
                extra.append(
                    Roof(
                        apex_label=label,
                        denominator=s_map,
                        numerator=g_map,
                        cone_classes=classes,
                    )
                )
                if len(extra) >= max_extra:
                    break
            if len(extra) >= max_extra:
                break
    exact = not ideal
    note = (
        "ideal is zero: identity roofs compute Hom exactly"
        if exact
        else "lower bound only; roofs beyond the budget may exist"
    )
    return RoofSpace(
        direct_dim=direct.dim,
        direct_classes=direct.classes,
        extra_roofs=extra,
        exact=exact,
        note=note,
    )
