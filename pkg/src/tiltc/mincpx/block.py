"""Exact realization of a block and the brute-force complex builder.

A ``.block`` file presents a finite-dimensional quiver algebra with
relations, a poset of labels, and explicit matrices for six module roles
per label: ``simple``, ``std`` (standard), ``costd`` (costandard),
``tilt`` (indecomposable tilting), ``proj`` (projective cover) and
``inj`` (injective hull).  All computations happen over exact rationals.

From the tilting modules the block yields a finitely presented additive
category (hom bases plus a composition tensor) over which bounded formal
complexes live.  ``cmin_module`` rebuilds the minimal tilting complex of
any module from first principles: take the minimal projective resolution,
coresolve each projective by tilting modules, splice the pieces together
with iterated mapping cones, and strip invertible differential entries by
Gaussian elimination.  Every step carries exact witnesses (chain-map
identities, cone acyclicity checked by vertexwise rank counting), so the
resulting graded multiplicities are independent of, and a check on, the
closed formulas in :mod:`tiltc.tilting`.

``verify_block`` runs nine invariant suites over a named block and raises
on the first violated invariant.
"""

from __future__ import annotations

import heapq
import itertools
from ast import literal_eval
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Mapping, Sequence

from ..errors import InternalInvariantError, ValidationError
from . import linalg
from .complexes import (
    CategoryPresentation,
    CoordMat,
    Coords,
    FormalComplex,
    cone,
    minimize,
)
from .quiver import (
    AlgebraPresentation,
    ModuleRep,
    VMap,
    cokernel_rep,
    direct_sum,
    ext_dims,
    flatten_vmap,
    hom_basis,
    kernel_rep,
    minimal_projective_resolution,
    projective_cover,
    vmap_compose,
    vmap_zero,
)

ROLES = ("simple", "std", "costd", "tilt", "proj", "inj")

SUITE_NAMES = (
    "presentation",
    "highest-weight axioms",
    "minimal complexes",
    "elimination uniqueness",
    "summand bounds",
    "triangle bounds",
    "no gaps",
    "homological dimensions",
    "formula agreement",
)

__all__ = [
    "BlockData",
    "TiltingCategory",
    "SUITE_NAMES",
    "cmin_module",
    "load_block",
    "parse_block_text",
    "tilting_coresolution",
    "verify_block",
]


# -- block files -------------------------------------------------------------------


@dataclass(frozen=True)
class BlockData:
    """A parsed block: algebra, label poset and the six module roles."""

    name: str
    algebra: AlgebraPresentation
    labels: tuple[str, ...]
    leq: frozenset[tuple[str, str]]
    modules: Mapping[str, ModuleRep]
    system: str | None
    words: Mapping[str, str]

    def module(self, role: str, label: str) -> ModuleRep:
        return self.modules[f"{role}_{label}"]


def _poset_closure(
    labels: Sequence[str], covers: Sequence[tuple[str, str]]
) -> frozenset[tuple[str, str]]:
    leq = {(a, a) for a in labels}
    leq |= set(covers)
    changed = True
    while changed:
        changed = False
        for a, b in list(leq):
            for c, d in list(leq):
                if b == c and (a, d) not in leq:
                    leq.add((a, d))
                    changed = True
    for a in labels:
        for b in labels:
            if a != b and (a, b) in leq and (b, a) in leq:
                raise ValidationError(f"label order has a cycle through {a} and {b}")
    return frozenset(leq)


def parse_block_text(text: str, name: str = "block") -> BlockData:
    section = None
    system: str | None = None
    words: dict[str, str] = {}
    vertices: list[str] = []
    arrows: list[tuple[str, str, str]] = []
    relations: list[str] = []
    covers: list[tuple[str, str]] = []
    module_specs: dict[str, dict] = {}
    cur: dict | None = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip().lower()
            cur = None
            if section not in ("meta", "quiver", "relations", "poset", "modules"):
                raise ValidationError(f"{name}: unknown section [{section}]")
            continue
        if section is None:
            raise ValidationError(f"{name}: content before the first section")
        if section == "meta":
            key, eq, val = line.partition("=")
            key, val = key.strip(), val.strip()
            if not eq:
                raise ValidationError(f"{name}: bad meta line {line!r}")
            if key == "system":
                system = val
            elif key.startswith("label "):
                words[key[6:].strip()] = val
            else:
                raise ValidationError(f"{name}: unknown meta key {key!r}")
        elif section == "quiver":
            key, eq, val = line.partition("=")
            key, val = key.strip(), val.strip()
            if key == "vertices":
                vertices = val.split()
            elif key.startswith("arrow "):
                src, sep, tgt = val.partition("->")
                if not sep:
                    raise ValidationError(f"{name}: bad arrow line {line!r}")
                arrows.append((key[6:].strip(), src.strip(), tgt.strip()))
            else:
                raise ValidationError(f"{name}: unknown quiver key {key!r}")
        elif section == "relations":
            relations.append(line)
        elif section == "poset":
            a, sep, b = line.partition("<")
            if not sep:
                raise ValidationError(f"{name}: bad poset line {line!r}")
            covers.append((a.strip(), b.strip()))
        elif section == "modules":
            if line.startswith("module "):
                mod_name = line[7:].strip()
                if mod_name in module_specs:
                    raise ValidationError(f"{name}: duplicate module {mod_name!r}")
                cur = {"dims": {}, "mats": {}}
                module_specs[mod_name] = cur
            else:
                if cur is None:
                    raise ValidationError(f"{name}: module data before a module line")
                key, eq, val = line.partition("=")
                key, val = key.strip(), val.strip()
                if key.startswith("dim "):
                    cur["dims"][key[4:].strip()] = int(val)
                elif key.startswith("map "):
                    data = literal_eval(val)
                    cur["mats"][key[4:].strip()] = tuple(
                        tuple(Fraction(x) for x in row) for row in data
                    )
                else:
                    raise ValidationError(f"{name}: bad module line {line!r}")
    if not vertices:
        raise ValidationError(f"{name}: no vertices declared")
    algebra = AlgebraPresentation(vertices, arrows, relations)
    labels = tuple(vertices)
    for lab in words:
        if lab not in labels:
            raise ValidationError(f"{name}: meta label {lab!r} is not a vertex")
    for a, b in covers:
        if a not in labels or b not in labels:
            raise ValidationError(f"{name}: poset uses unknown label")
    leq = _poset_closure(labels, covers)
    modules: dict[str, ModuleRep] = {}
    for mod_name, spec in module_specs.items():
        rep = ModuleRep(algebra, spec["dims"], spec["mats"])
        rep.validate()
        modules[mod_name] = rep
    for role in ROLES:
        for lab in labels:
            if f"{role}_{lab}" not in modules:
                raise ValidationError(f"{name}: missing module {role}_{lab}")
    return BlockData(
        name=name,
        algebra=algebra,
        labels=labels,
        leq=leq,
        modules=modules,
        system=system,
        words=words,
    )


def load_block(name: str) -> BlockData:
    """Load a bundled block presentation by name (e.g. ``"sl2"``)."""
    try:
        path = resources.files("tiltc.blocks").joinpath(f"{name}.block")
        text = path.read_text()
    except (FileNotFoundError, ModuleNotFoundError) as exc:
        raise ValidationError(f"no bundled block named {name!r}") from exc
    return parse_block_text(text, name=name)


# -- the additive category of tilting modules ---------------------------------------


def _vmap_lincomb(
    coeffs: Sequence[Fraction], maps: Sequence[VMap], src: ModuleRep, tgt: ModuleRep
) -> VMap:
    out: VMap = {}
    for v in src.algebra.vertices:
        rows = tgt.dims[v]
        cols = src.dims[v]
        acc = [[Fraction(0)] * cols for _ in range(rows)]
        for c, f in zip(coeffs, maps):
            if not c:
                continue
            mat = f[v]
            for i in range(rows):
                row = mat[i] if i < len(mat) else ()
                for j in range(cols):
                    if j < len(row) and row[j]:
                        acc[i][j] += c * row[j]
        out[v] = tuple(tuple(r) for r in acc)
    return out


def _vmap_equal(f: VMap, g: VMap, src: ModuleRep, tgt: ModuleRep) -> bool:
    for v in src.algebra.vertices:
        rows, cols = tgt.dims[v], src.dims[v]
        for i in range(rows):
            fr = f[v][i] if i < len(f[v]) else ()
            gr = g[v][i] if i < len(g[v]) else ()
            for j in range(cols):
                fe = fr[j] if j < len(fr) else Fraction(0)
                ge = gr[j] if j < len(gr) else Fraction(0)
                if fe != ge:
                    return False
    return True


class TiltingCategory:
    """Hom bases and the composition tensor of the tilting modules of a block."""

    def __init__(self, block: BlockData):
        self.block = block
        self.algebra = block.algebra
        self.labels = block.labels
        self.tilts = {lab: block.module("tilt", lab) for lab in self.labels}
        order = self.algebra.vertices
        self._basis: dict[tuple[str, str], list[VMap]] = {}
        self._flat: dict[tuple[str, str], list[tuple[Fraction, ...]]] = {}
        hom_dim: dict[tuple[str, str], int] = {}
        for a in self.labels:
            for b in self.labels:
                basis = hom_basis(self.tilts[a], self.tilts[b])
                self._basis[(a, b)] = basis
                self._flat[(a, b)] = [flatten_vmap(f, order) for f in basis]
                hom_dim[(a, b)] = len(basis)
        identity: dict[str, Coords] = {}
        for a in self.labels:
            rep = self.tilts[a]
            ident_map = {v: linalg.ident(rep.dims[v]) for v in order}
            coords = linalg.express_in_span(
                self._flat[(a, a)], flatten_vmap(ident_map, order)
            )
            if coords is None:
                raise InternalInvariantError(
                    f"identity of tilt_{a} is not an intertwiner"
                )
            identity[a] = tuple(coords)
        compose: dict[tuple[str, str, str], list] = {}
        for a in self.labels:
            for b in self.labels:
                for c in self.labels:
                    tensor = []
                    for f in self._basis[(a, b)]:
                        row = []
                        for g in self._basis[(b, c)]:
                            gf = vmap_compose(g, f, self.tilts[a], self.tilts[c])
                            coords = linalg.express_in_span(
                                self._flat[(a, c)], flatten_vmap(gf, order)
                            )
                            if coords is None:
                                raise InternalInvariantError(
                                    "hom spaces are not closed under composition"
                                )
                            row.append(tuple(coords))
                        tensor.append(row)
                    compose[(a, b, c)] = tensor
        self.category = CategoryPresentation(self.labels, hom_dim, compose, identity)
        self._sum_cache: dict[tuple[str, ...], tuple[ModuleRep, list[dict[str, int]]]] = {}

    # -- sums and (de)coordinatization ---------------------------------------------

    def sum_rep(
        self, labels: Sequence[str]
    ) -> tuple[ModuleRep, list[dict[str, int]]]:
        """Direct sum of tilting modules with per-summand row offsets."""
        key = tuple(labels)
        if key in self._sum_cache:
            return self._sum_cache[key]
        if not key:
            zero = ModuleRep(self.algebra, {})
            self._sum_cache[key] = (zero, [])
            return self._sum_cache[key]
        reps = [self.tilts[lab] for lab in key]
        total = direct_sum(reps)
        offsets: list[dict[str, int]] = []
        run = {v: 0 for v in self.algebra.vertices}
        for rep in reps:
            offsets.append(dict(run))
            for v in self.algebra.vertices:
                run[v] += rep.dims[v]
        self._sum_cache[key] = (total, offsets)
        return self._sum_cache[key]

    def realize(self, a: str, b: str, coords: Coords) -> VMap:
        return _vmap_lincomb(
            coords, self._basis[(a, b)], self.tilts[a], self.tilts[b]
        )

    def realize_block(
        self, srcs: Sequence[str], tgts: Sequence[str], mat: CoordMat
    ) -> VMap:
        src_rep, src_off = self.sum_rep(srcs)
        tgt_rep, tgt_off = self.sum_rep(tgts)
        out: VMap = {}
        for v in self.algebra.vertices:
            rows = tgt_rep.dims[v]
            cols = src_rep.dims[v]
            acc = [[Fraction(0)] * cols for _ in range(rows)]
            for i, tl in enumerate(tgts):
                for j, sl in enumerate(srcs):
                    blk = self.realize(sl, tl, mat[i][j])[v]
                    for r in range(self.tilts[tl].dims[v]):
                        brow = blk[r] if r < len(blk) else ()
                        for c in range(self.tilts[sl].dims[v]):
                            val = brow[c] if c < len(brow) else Fraction(0)
                            if val:
                                acc[tgt_off[i][v] + r][src_off[j][v] + c] = val
            out[v] = tuple(tuple(r) for r in acc)
        return out

    def coordinatize(self, a: str, b: str, f: VMap) -> Coords:
        coords = linalg.express_in_span(
            self._flat[(a, b)], flatten_vmap(f, self.algebra.vertices)
        )
        if coords is None:
            raise InternalInvariantError(
                f"map is not in the span of Hom(tilt_{a}, tilt_{b})"
            )
        return tuple(coords)

    def coordinatize_block(
        self, srcs: Sequence[str], tgts: Sequence[str], f: VMap
    ) -> CoordMat:
        _, src_off = self.sum_rep(srcs)
        _, tgt_off = self.sum_rep(tgts)
        rows = []
        for i, tl in enumerate(tgts):
            row = []
            for j, sl in enumerate(srcs):
                blk: VMap = {}
                for v in self.algebra.vertices:
                    r0 = tgt_off[i][v]
                    c0 = src_off[j][v]
                    blk[v] = tuple(
                        tuple(
                            f[v][r0 + r][c0 + c]
                            for c in range(self.tilts[sl].dims[v])
                        )
                        for r in range(self.tilts[tl].dims[v])
                    )
                row.append(self.coordinatize(sl, tl, blk))
            rows.append(tuple(row))
        return tuple(rows)

    def realized_diff(self, cpx: FormalComplex, n: int) -> VMap:
        return self.realize_block(cpx.term(n), cpx.term(n + 1), cpx.diff(n))


# -- tilting coresolutions of modules ------------------------------------------------


def _small_combos(k: int, bound: int):
    """Nonzero integer coefficient vectors of length k, by L1 norm."""
    combos = [
        c
        for c in itertools.product(range(-bound, bound + 1), repeat=k)
        if any(c)
    ]
    combos.sort(key=lambda c: (sum(abs(x) for x in c), c))
    return combos


def _embed_in_tilting(
    tcat: TiltingCategory,
    M: ModuleRep,
    pop_guard: int = 400,
    coeff_bound: int = 2,
    max_basis: int = 6,
):
    """Injection of M into a smallest sum of tiltings with a standard-filtered
    cokernel (checked by vanishing of first extensions against costandards)."""
    order = {lab: i for i, lab in enumerate(tcat.labels)}
    costds = [tcat.block.module("costd", lab) for lab in tcat.labels]
    heap: list[tuple[int, tuple[str, ...]]] = []
    for lab in tcat.labels:
        heapq.heappush(heap, (tcat.tilts[lab].total_dim, (lab,)))
    seen = set()
    pops = 0
    while heap and pops < pop_guard:
        pops += 1
        total, labels = heapq.heappop(heap)
        if labels in seen:
            continue
        seen.add(labels)
        for lab in tcat.labels:
            if order[lab] >= order[labels[-1]]:
                ext = labels + (lab,)
                if ext not in seen:
                    heapq.heappush(
                        heap, (total + tcat.tilts[lab].total_dim, ext)
                    )
        S, _ = tcat.sum_rep(labels)
        if any(S.dims[v] < M.dims[v] for v in tcat.algebra.vertices):
            continue
        basis = hom_basis(M, S)
        if not basis or len(basis) > max_basis:
            continue
        for combo in _small_combos(len(basis), coeff_bound):
            f = _vmap_lincomb([Fraction(c) for c in combo], basis, M, S)
            if any(
                linalg.rank(f[v]) != M.dims[v] for v in tcat.algebra.vertices
            ):
                continue
            C, proj = cokernel_rep(f, M, S)
            if not C.is_zero() and any(
                ext_dims(C, cs, 1)[1] != 0 for cs in costds
            ):
                continue
            return labels, f, C, proj
    raise InternalInvariantError(
        "could not embed the module into a sum of tilting modules"
    )


def tilting_coresolution(
    tcat: TiltingCategory, M: ModuleRep, max_steps: int = 20
) -> tuple[FormalComplex, VMap]:
    """Finite coresolution 0 -> M -> T^0 -> T^1 -> ... by sums of tiltings.

    Returns the formal complex of the T^i (degrees 0, 1, ...) and the
    augmentation M -> T^0 as an exact module map.
    """
    terms: dict[int, tuple[str, ...]] = {}
    diffs: dict[int, CoordMat] = {}
    aug: VMap | None = None
    cur = M
    prev_proj: VMap | None = None
    prev_labels: tuple[str, ...] | None = None
    for step in range(max_steps + 1):
        if cur.is_zero():
            break
        labels, f, C, proj = _embed_in_tilting(tcat, cur)
        terms[step] = labels
        if step == 0:
            aug = f
        else:
            S_prev, _ = tcat.sum_rep(prev_labels)
            S_new, _ = tcat.sum_rep(labels)
            d_mod = vmap_compose(f, prev_proj, S_prev, S_new)
            diffs[step - 1] = tcat.coordinatize_block(prev_labels, labels, d_mod)
        prev_labels, prev_proj, cur = labels, proj, C
    else:
        raise InternalInvariantError("tilting coresolution exceeded the step guard")
    if aug is None:
        zero_rep, _ = tcat.sum_rep(())
        aug = vmap_zero(M, zero_rep)
    cpx = FormalComplex(tcat.category, terms, diffs)
    cpx.validate()
    return cpx, aug


# -- minimal tilting complexes --------------------------------------------------------


def _solve_chain_lift(
    tcat: TiltingCategory,
    Rs: FormalComplex,
    Y: FormalComplex,
    n0: int,
    iota: VMap,
    eta: VMap,
    P: ModuleRep,
) -> dict[int, CoordMat]:
    """Chain map chi: Rs -> Y whose degree-n0 component realizes to a map
    with chi o iota = eta, where iota : P -> (sum of Rs^n0)."""
    cat = tcat.category
    unknown_off: dict[tuple[int, int, int], int] = {}
    nvar = 0
    degs = sorted(set(Rs.degrees()) & set(Y.degrees()))
    for k in degs:
        for i, tl in enumerate(Y.term(k)):
            for j, sl in enumerate(Rs.term(k)):
                unknown_off[(k, i, j)] = nvar
                nvar += cat.hom_dim[(sl, tl)]
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    # realized condition at degree n0
    if n0 in Rs.terms:
        src_labels = Rs.term(n0)
        _, src_off = tcat.sum_rep(src_labels)
        sumY, tgt_off = tcat.sum_rep(Y.term(n0))
        row_index: dict[tuple[str, int, int], int] = {}
        for v in tcat.algebra.vertices:
            for r in range(sumY.dims[v]):
                for c in range(P.dims[v]):
                    row_index[(v, r, c)] = len(rows)
                    rows.append([Fraction(0)] * nvar)
                    er = eta[v][r] if r < len(eta[v]) else ()
                    rhs.append(er[c] if c < len(er) else Fraction(0))
        for i, tl in enumerate(Y.term(n0)):
            for j, sl in enumerate(src_labels):
                base = unknown_off.get((n0, i, j))
                if base is None:
                    continue
                for cidx in range(cat.hom_dim[(sl, tl)]):
                    unit = tuple(
                        Fraction(1 if t == cidx else 0)
                        for t in range(cat.hom_dim[(sl, tl)])
                    )
                    B = tcat.realize(sl, tl, unit)
                    for v in tcat.algebra.vertices:
                        src_dim = tcat.tilts[sl].dims[v]
                        iota_blk = tuple(
                            iota[v][src_off[j][v] + r] if src_off[j][v] + r < len(iota[v]) else ()
                            for r in range(src_dim)
                        )
                        contrib = linalg.mul_shaped(
                            B[v], iota_blk, tcat.tilts[tl].dims[v], P.dims[v]
                        )
                        for r in range(tcat.tilts[tl].dims[v]):
                            crow = contrib[r] if r < len(contrib) else ()
                            for c in range(P.dims[v]):
                                val = crow[c] if c < len(crow) else Fraction(0)
                                if val:
                                    ridx = row_index[(v, tgt_off[i][v] + r, c)]
                                    rows[ridx][base + cidx] += val
    # coordinate chain conditions
    for k in sorted(set(Rs.degrees())):
        if not Y.term(k + 1) or not Rs.term(k):
            continue
        dY = Y.diff(k)
        dRs = Rs.diff(k)
        for t, tl in enumerate(Y.term(k + 1)):
            for s2, sl in enumerate(Rs.term(k)):
                dim_eq = cat.hom_dim[(sl, tl)]
                eq_rows = [[Fraction(0)] * nvar for _ in range(dim_eq)]
                for i, ml in enumerate(Y.term(k)):
                    base = unknown_off.get((k, i, s2))
                    if base is None:
                        continue
                    hd = cat.hom_dim[(sl, ml)]
                    for cidx in range(hd):
                        unit = tuple(
                            Fraction(1 if t2 == cidx else 0) for t2 in range(hd)
                        )
                        vec = cat.comp(sl, ml, tl, dY[t][i], unit)
                        for e, val in enumerate(vec):
                            if val:
                                eq_rows[e][base + cidx] += val
                for i2, ml in enumerate(Rs.term(k + 1)):
                    base = unknown_off.get((k + 1, t, i2))
                    if base is None:
                        continue
                    hd = cat.hom_dim[(ml, tl)]
                    for cidx in range(hd):
                        unit = tuple(
                            Fraction(1 if t2 == cidx else 0) for t2 in range(hd)
                        )
                        vec = cat.comp(sl, ml, tl, unit, dRs[i2][s2])
                        for e, val in enumerate(vec):
                            if val:
                                eq_rows[e][base + cidx] -= val
                for e in range(dim_eq):
                    if any(eq_rows[e]):
                        rows.append(eq_rows[e])
                        rhs.append(Fraction(0))
    if nvar == 0:
        sol: tuple[Fraction, ...] = ()
        if any(rhs):
            raise InternalInvariantError("chain lift has no solution")
    else:
        if rows:
            sol = linalg.solve(
                tuple(tuple(r) for r in rows), tuple(rhs)
            )
            if sol is None:
                raise InternalInvariantError("chain lift has no solution")
        else:
            sol = (Fraction(0),) * nvar
    chi: dict[int, CoordMat] = {}
    for k in degs:
        mat = []
        for i, tl in enumerate(Y.term(k)):
            row = []
            for j, sl in enumerate(Rs.term(k)):
                base = unknown_off[(k, i, j)]
                hd = cat.hom_dim[(sl, tl)]
                row.append(tuple(sol[base : base + hd]))
            mat.append(tuple(row))
        chi[k] = tuple(mat)
    return chi


def cmin_module(
    tcat: TiltingCategory,
    M: ModuleRep,
    scan: str = "forward",
    check: bool = True,
) -> tuple[FormalComplex, dict[int, VMap]]:
    """Minimal complex of tilting modules quasi-isomorphic to the module M.

    Returns the formal complex together with the verified comparison chain
    map from the minimal projective resolution of M (one exact module map
    per degree).
    """
    res_terms, res_diffs, aug = minimal_projective_resolution(M)
    projs = [P for P, _ in res_terms]
    Y, aug0 = tilting_coresolution(tcat, projs[0])
    kappa: dict[int, VMap] = {0: aug0}
    for j in range(1, len(projs)):
        P_j = projs[j]
        d_j = res_diffs[j - 1]
        R, iota = tilting_coresolution(tcat, P_j)
        Rs = R.shift(j - 1)
        sumY_prev, _ = tcat.sum_rep(Y.term(1 - j))
        if (1 - j) in kappa:
            eta = vmap_compose(kappa[1 - j], d_j, P_j, sumY_prev)
        else:
            eta = vmap_zero(P_j, sumY_prev)
        chi = _solve_chain_lift(tcat, Rs, Y, 1 - j, iota, eta, P_j)
        # realized witness: chi at degree 1 - j composed with the
        # coresolution augmentation must equal eta
        if Rs.term(1 - j):
            chi_mod = tcat.realize_block(
                Rs.term(1 - j), Y.term(1 - j), _chi_at(tcat, chi, Rs, Y, 1 - j)
            )
            composed = vmap_compose(chi_mod, iota, P_j, sumY_prev)
            if not _vmap_equal(composed, eta, P_j, sumY_prev):
                raise InternalInvariantError(
                    "chain lift witness fails at the augmentation"
                )
        C = cone(chi, Rs, Y)
        C_min, pi = minimize(C, scan=scan)
        kappa_new: dict[int, VMap] = {}
        for n in range(-j, 1):
            xs = Rs.term(n + 1)
            ys = Y.term(n)
            both = xs + ys
            if not both:
                continue
            P_i = projs[-n]
            S_cone, offs = tcat.sum_rep(both)
            kap: VMap = {}
            for v in tcat.algebra.vertices:
                rows_v: list[tuple[Fraction, ...]] = []
                x_rep, _ = tcat.sum_rep(xs)
                if n == -j and xs:
                    for r in range(x_rep.dims[v]):
                        rows_v.append(
                            tuple(iota[v][r]) if r < len(iota[v]) else (Fraction(0),) * P_i.dims[v]
                        )
                else:
                    for r in range(x_rep.dims[v]):
                        rows_v.append((Fraction(0),) * P_i.dims[v])
                prev = kappa.get(n)
                y_rep, _ = tcat.sum_rep(ys)
                for r in range(y_rep.dims[v]):
                    if prev is not None and r < len(prev[v]):
                        rows_v.append(tuple(prev[v][r]))
                    else:
                        rows_v.append((Fraction(0),) * P_i.dims[v])
                kap[v] = tuple(rows_v)
            if n in pi:
                big = tcat.realize_block(C.term(n), C_min.term(n), pi[n])
                S_min, _ = tcat.sum_rep(C_min.term(n))
                kappa_new[n] = vmap_compose(big, kap, P_i, S_min)
        kappa = kappa_new
        Y = C_min
    if len(projs) == 1:
        # no cone stage ran, so strip any split summands of the coresolution
        C_min, pi = minimize(Y, scan=scan)
        kappa_new = {}
        for n, kap in kappa.items():
            if n in pi:
                big = tcat.realize_block(Y.term(n), C_min.term(n), pi[n])
                S_min, _ = tcat.sum_rep(C_min.term(n))
                kappa_new[n] = vmap_compose(big, kap, projs[-n], S_min)
        kappa = kappa_new
        Y = C_min
    if check:
        _verify_cmin(tcat, projs, res_diffs, Y, kappa)
    return Y, kappa


def _chi_at(
    tcat: TiltingCategory,
    chi: Mapping[int, CoordMat],
    Rs: FormalComplex,
    Y: FormalComplex,
    n: int,
) -> CoordMat:
    if n in chi:
        return chi[n]
    return tuple(
        tuple(tcat.category.zero(sl, tl) for sl in Rs.term(n))
        for tl in Y.term(n)
    )


def _verify_cmin(
    tcat: TiltingCategory,
    projs: Sequence[ModuleRep],
    res_diffs: Sequence[VMap],
    Y: FormalComplex,
    kappa: Mapping[int, VMap],
) -> None:
    """Exact witnesses: the comparison map is a chain map and its cone is
    acyclic (vertexwise rank count), so Y is quasi-isomorphic to M."""
    Y.validate()
    if not Y.is_minimal():
        raise InternalInvariantError("complex is not minimal")
    m = len(projs) - 1
    alg = tcat.algebra
    # chain-map identities, module level
    for i in range(1, m + 1):
        n = -i
        lhs_src = projs[i]
        sum_next, _ = tcat.sum_rep(Y.term(n + 1))
        kap_next = kappa.get(n + 1)
        d_i = res_diffs[i - 1]
        if kap_next is not None:
            lhs = vmap_compose(kap_next, d_i, lhs_src, sum_next)
        else:
            lhs = vmap_zero(lhs_src, sum_next)
        kap_n = kappa.get(n)
        if kap_n is not None:
            dY = tcat.realized_diff(Y, n)
            sum_n, _ = tcat.sum_rep(Y.term(n))
            rhs = vmap_compose(dY, kap_n, lhs_src, sum_next)
        else:
            rhs = vmap_zero(lhs_src, sum_next)
        if not _vmap_equal(lhs, rhs, lhs_src, sum_next):
            raise InternalInvariantError(
                f"comparison map fails the chain identity at degree {n}"
            )
    # acyclicity of the cone, vertex by vertex
    y_degs = Y.degrees()
    lo = min([-m - 1] + y_degs)
    hi = max([0] + y_degs) + 1

    def p_at(n: int) -> ModuleRep | None:
        i = -n
        if 0 <= i <= m:
            return projs[i]
        return None

    for v in alg.vertices:
        dims: dict[int, int] = {}
        mats: dict[int, linalg.Mat] = {}
        for n in range(lo, hi + 1):
            pz = p_at(n + 1)
            sy, _ = tcat.sum_rep(Y.term(n))
            dims[n] = (pz.dims[v] if pz else 0) + sy.dims[v]
        for n in range(lo, hi):
            rows = dims[n + 1]
            cols = dims[n]
            acc = [[Fraction(0)] * cols for _ in range(rows)]
            p_src = p_at(n + 1)
            p_tgt = p_at(n + 2)
            sy_src, _ = tcat.sum_rep(Y.term(n))
            sy_tgt, _ = tcat.sum_rep(Y.term(n + 1))
            if p_src and p_tgt:
                d_p = res_diffs[-(n + 1) - 1]
                for r in range(p_tgt.dims[v]):
                    drow = d_p[v][r] if r < len(d_p[v]) else ()
                    for c in range(p_src.dims[v]):
                        if c < len(drow) and drow[c]:
                            acc[r][c] = -drow[c]
            kap = kappa.get(n + 1)
            if p_src and kap is not None:
                for r in range(sy_tgt.dims[v]):
                    krow = kap[v][r] if r < len(kap[v]) else ()
                    for c in range(p_src.dims[v]):
                        if c < len(krow) and krow[c]:
                            acc[(p_tgt.dims[v] if p_tgt else 0) + r][c] = krow[c]
            if sy_src.dims[v] and sy_tgt.dims[v]:
                dY = tcat.realized_diff(Y, n)
                for r in range(sy_tgt.dims[v]):
                    drow = dY[v][r] if r < len(dY[v]) else ()
                    for c in range(sy_src.dims[v]):
                        if c < len(drow) and drow[c]:
                            acc[(p_tgt.dims[v] if p_tgt else 0) + r][
                                (p_src.dims[v] if p_src else 0) + c
                            ] = drow[c]
            mats[n] = tuple(tuple(r) for r in acc)
        # differential squares to zero and the complex is exact
        for n in range(lo, hi - 1):
            sq = linalg.mul_shaped(
                mats[n + 1], mats[n], dims[n + 2], dims[n]
            )
            if not linalg.is_zero(sq):
                raise InternalInvariantError(
                    "cone differential does not square to zero"
                )
        ranks = {n: linalg.rank(mats[n]) for n in range(lo, hi)}
        for n in range(lo, hi + 1):
            r_in = ranks.get(n - 1, 0)
            r_out = ranks.get(n, 0)
            if r_in + r_out != dims[n]:
                raise InternalInvariantError(
                    f"comparison cone is not exact at degree {n} (vertex {v})"
                )


# -- invariant suites ------------------------------------------------------------------


def _hom_dim_modules(M: ModuleRep, N: ModuleRep) -> int:
    return len(hom_basis(M, N))


def _rad_std(block: BlockData, lab: str) -> tuple[ModuleRep, bool]:
    """Kernel of the projection of the standard module onto its simple top."""
    std = block.module("std", lab)
    simple = block.module("simple", lab)
    basis = hom_basis(std, simple)
    if len(basis) != 1:
        raise InternalInvariantError(
            f"Hom(std_{lab}, simple_{lab}) is not one dimensional"
        )
    f = basis[0]
    if any(
        linalg.rank(f[v]) != simple.dims[v] for v in block.algebra.vertices
    ):
        raise InternalInvariantError(
            f"basis map std_{lab} -> simple_{lab} is not surjective"
        )
    K, _ = kernel_rep(f, std, simple)
    return K, not K.is_zero()


def verify_block(block: BlockData, ext_bound: int = 4) -> list[tuple[str, str]]:
    """Run the nine invariant suites over a block.

    Returns ``(suite name, detail)`` pairs in order; raises
    InternalInvariantError (or ValidationError) at the first violation.
    """
    results: list[tuple[str, str]] = []
    labels = block.labels
    alg = block.algebra

    # 1: presentation -- algebra, modules and category are all well formed
    tcat = TiltingCategory(block)
    tcat.category.validate()
    results.append(
        (
            SUITE_NAMES[0],
            f"algebra dim {alg.dimension}, {len(labels)} labels, "
            f"{sum(len(b) for b in tcat._basis.values())} hom basis maps",
        )
    )

    # 2: highest-weight axioms
    def leq(a: str, b: str) -> bool:
        return (a, b) in block.leq

    for a in labels:
        std_a = block.module("std", a)
        costd_a = block.module("costd", a)
        if _hom_dim_modules(std_a, std_a) != 1:
            raise InternalInvariantError(f"End(std_{a}) is not one dimensional")
        if _hom_dim_modules(costd_a, costd_a) != 1:
            raise InternalInvariantError(f"End(costd_{a}) is not one dimensional")
    ext_witness = 0
    for a in labels:
        std_a = block.module("std", a)
        for b in labels:
            std_b = block.module("std", b)
            costd_b = block.module("costd", b)
            simple_b = block.module("simple", b)
            tilt_b = block.module("tilt", b)
            if _hom_dim_modules(std_a, std_b) and not leq(a, b):
                raise InternalInvariantError(
                    f"Hom(std_{a}, std_{b}) nonzero without {a} <= {b}"
                )
            e_std = ext_dims(std_a, std_b, 1)
            if e_std[1] and not (leq(a, b) and a != b):
                raise InternalInvariantError(
                    f"Ext^1(std_{a}, std_{b}) nonzero without {a} < {b}"
                )
            e = ext_dims(std_a, costd_b, ext_bound)
            if e[0] != (1 if a == b else 0):
                raise InternalInvariantError(
                    f"Hom(std_{a}, costd_{b}) has dimension {e[0]}"
                )
            if any(e[1:]):
                raise InternalInvariantError(
                    f"Ext^i(std_{a}, costd_{b}) does not vanish for i >= 1"
                )
            if _hom_dim_modules(std_a, simple_b) != (1 if a == b else 0):
                raise InternalInvariantError(
                    f"Hom(std_{a}, simple_{b}) is not delta_(a,b)"
                )
            if ext_dims(std_a, tilt_b, 1)[1]:
                raise InternalInvariantError(
                    f"Ext^1(std_{a}, tilt_{b}) nonzero: tilt_{b} not costandard-filtered"
                )
            if ext_dims(tilt_b, costd_a, 1)[1]:
                raise InternalInvariantError(
                    f"Ext^1(tilt_{b}, costd_{a}) nonzero: tilt_{b} not standard-filtered"
                )
            if ext_dims(block.module("proj", b), costd_a, 1)[1]:
                raise InternalInvariantError(
                    f"Ext^1(proj_{b}, costd_{a}) nonzero"
                )
            if ext_dims(block.module("simple", a), block.module("inj", b), 1)[1]:
                raise InternalInvariantError(
                    f"Ext^1(simple_{a}, inj_{b}) nonzero"
                )
            if a != b and ext_dims(
                block.module("simple", a), costd_b, 1
            )[1]:
                ext_witness += 1
    for a in labels:
        P, cover_labels, _ = projective_cover(block.module("simple", a))
        if cover_labels != [a]:
            raise InternalInvariantError(
                f"projective cover of simple_{a} has top {cover_labels}"
            )
        proj_a = block.module("proj", a)
        if P.dims != proj_a.dims:
            raise InternalInvariantError(
                f"declared proj_{a} does not match the computed cover"
            )
        if _hom_dim_modules(proj_a, P) == 0:
            raise InternalInvariantError(
                f"declared proj_{a} has no map to the computed cover"
            )
    results.append(
        (
            SUITE_NAMES[1],
            f"axioms hold for {len(labels)} labels; "
            f"{ext_witness} nonsplit simple/costandard extension pairs",
        )
    )

    # 3: minimal complexes with exact witnesses
    complexes: dict[str, FormalComplex] = {}
    for role in ("std", "simple"):
        for a in labels:
            cpx, _ = cmin_module(tcat, block.module(role, a))
            complexes[f"{role}_{a}"] = cpx
    results.append(
        (
            SUITE_NAMES[2],
            "; ".join(
                f"{k}: {complexes[k].summary()}" for k in sorted(complexes)
            ),
        )
    )

    # 4: elimination order does not change the answer
    for role in ("std", "simple"):
        for a in labels:
            cpx_b, _ = cmin_module(tcat, block.module(role, a), scan="backward")
            if cpx_b.label_counts() != complexes[f"{role}_{a}"].label_counts():
                raise InternalInvariantError(
                    f"scan orders disagree on {role}_{a}"
                )
    results.append((SUITE_NAMES[3], "forward and backward scans agree"))

    # 5: the object indexes itself once, in degree zero only
    for role in ("std", "simple"):
        for a in labels:
            counts = complexes[f"{role}_{a}"].label_counts()
            if counts.get(0, {}).get(a, 0) != 1:
                raise InternalInvariantError(
                    f"tilt_{a} does not appear exactly once in degree 0 of "
                    f"the complex of {role}_{a}"
                )
            for n, c in counts.items():
                if n != 0 and a in c:
                    raise InternalInvariantError(
                        f"tilt_{a} appears in degree {n} of the complex of {role}_{a}"
                    )
    results.append((SUITE_NAMES[4], "diagonal summand appears once, in degree 0"))

    # 6: cone bounds along the radical triangle rad -> std -> simple
    rad_checked = 0
    for a in labels:
        rad, nonzero = _rad_std(block, a)
        if not nonzero:
            continue
        rad_checked += 1
        c_rad, _ = cmin_module(tcat, rad)
        complexes[f"rad_std_{a}"] = c_rad
        c_std = complexes[f"std_{a}"].label_counts()
        c_simple = complexes[f"simple_{a}"].label_counts()
        c_r = c_rad.label_counts()

        def count(table, n, lab):
            return table.get(n, {}).get(lab, 0)

        degs = set(c_std) | set(c_simple) | set(c_r) | {0}
        pad = range(min(degs) - 2, max(degs) + 3)
        for n in pad:
            for lab in labels:
                if count(c_std, n, lab) > count(c_r, n, lab) + count(
                    c_simple, n, lab
                ):
                    raise InternalInvariantError(
                        f"triangle bound fails for std_{a} at degree {n}"
                    )
                if count(c_simple, n, lab) > count(c_std, n, lab) + count(
                    c_r, n + 1, lab
                ):
                    raise InternalInvariantError(
                        f"triangle bound fails for simple_{a} at degree {n}"
                    )
                if count(c_r, n, lab) > count(c_std, n, lab) + count(
                    c_simple, n - 1, lab
                ):
                    raise InternalInvariantError(
                        f"triangle bound fails for rad std_{a} at degree {n}"
                    )
    results.append(
        (SUITE_NAMES[5], f"cone bounds hold around {rad_checked} radical triangles")
    )

    # 7: support degrees form an interval
    for key, cpx in complexes.items():
        degs = cpx.degrees()
        if degs and degs != list(range(degs[0], degs[-1] + 1)):
            raise InternalInvariantError(f"complex of {key} has a degree gap")
    results.append((SUITE_NAMES[6], f"no gaps across {len(complexes)} complexes"))

    # 8: support endpoints match extension vanishing bounds
    for key, cpx in complexes.items():
        role, _, lab = key.rpartition("_")
        if role.startswith("rad_"):
            mod = _rad_std(block, lab)[0]
        else:
            mod = block.module(role, lab)
        span = cpx.support_interval()
        if span is None:
            continue
        lo, hi = span
        bound = max(hi, -lo) + 2
        max_above = -1
        for b in labels:
            e = ext_dims(block.module("std", b), mod, bound)
            nz = [i for i, d in enumerate(e) if d]
            if nz:
                max_above = max(max_above, nz[-1])
        max_below = -1
        for b in labels:
            e = ext_dims(mod, block.module("costd", b), bound)
            nz = [i for i, d in enumerate(e) if d]
            if nz:
                max_below = max(max_below, nz[-1])
        if hi != max_above:
            raise InternalInvariantError(
                f"top degree of {key} is {hi}, extension bound gives {max_above}"
            )
        if lo != -max_below:
            raise InternalInvariantError(
                f"bottom degree of {key} is {lo}, extension bound gives {-max_below}"
            )
    results.append(
        (SUITE_NAMES[7], "support endpoints equal homological dimensions")
    )

    # 9: agreement with the closed formulas
    if block.system is None:
        raise ValidationError(f"block {block.name} declares no ambient type")
    from ..coxeter import CoxeterSystem, parse_word
    from ..hecke import HeckeContext
    from ..tilting import CategoryO

    system = CoxeterSystem.from_type(block.system)
    setting = CategoryO(HeckeContext(system), I=(), J=())
    word_of = {lab: parse_word(block.words[lab]) for lab in labels}
    label_of = {word_of[lab]: lab for lab in labels}
    checked = 0
    for role, method in (("std", "standard_table"), ("simple", "simple_table")):
        for a in labels:
            table = getattr(setting, method)(word_of[a])
            counts = complexes[f"{role}_{a}"].label_counts()
            seen: dict[int, dict[str, int]] = {}
            for y_word, poly in table.entries:
                if poly.is_zero():
                    continue
                if y_word not in label_of:
                    raise InternalInvariantError(
                        f"formula indexes a word outside the block at {role}_{a}"
                    )
                y_lab = label_of[y_word]
                lo_d = poly.min_degree()
                hi_d = poly.max_degree()
                for i in range(lo_d, hi_d + 1):
                    c = poly.coeff(i)
                    if c:
                        if int(c) != c or c < 0:
                            raise InternalInvariantError(
                                f"formula coefficient at {role}_{a} is not a "
                                f"nonnegative integer"
                            )
                        seen.setdefault(i, {})[y_lab] = int(c)
            if seen != counts:
                raise InternalInvariantError(
                    f"oracle and formula disagree on {role}_{a}: "
                    f"{counts} != {seen}"
                )
            nabla, delta = table.dims()
            span = complexes[f"{role}_{a}"].support_interval()
            lo_c, hi_c = span if span else (0, 0)
            if (hi_c, -lo_c) != (nabla, delta):
                raise InternalInvariantError(
                    f"filtration dimensions disagree on {role}_{a}"
                )
            checked += 1
    results.append(
        (SUITE_NAMES[8], f"label counts match the closed formulas on {checked} objects")
    )
    return results
