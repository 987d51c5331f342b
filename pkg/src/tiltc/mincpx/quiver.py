"""Finite-dimensional quiver algebras and their representation theory.

Paths are written diagrammatically: in the path (a, b) the arrow a acts
first, so the path is valid when tgt(a) == src(b) and it realizes on a
representation as the matrix product M_b @ M_a.  Relations must be
homogeneous: every term of one relation has the same length and the same
endpoints, which keeps the path-class bases graded by length.

A representation assigns a space to each vertex and a matrix of shape
(dim tgt, dim src) to each arrow; all maps act on column vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from ..errors import InternalInvariantError, ValidationError
from . import linalg
from .linalg import Mat

Path = tuple[str, ...]
Relation = tuple[tuple[Fraction, Path], ...]
VMap = dict[str, Mat]  # one matrix per vertex

_PATH_GUARD = 200000
_LENGTH_GUARD = 60


class AlgebraPresentation:
    """Path algebra of a quiver modulo homogeneous relations."""

    def __init__(
        self,
        vertices: Sequence[str],
        arrows: Sequence[tuple[str, str, str]],
        relations: Sequence[Relation | str],
    ):
        self.vertices = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValidationError("duplicate vertex names")
        self.arrows: dict[str, tuple[str, str]] = {}
        for name, src, tgt in arrows:
            if name in self.arrows or name in self.vertices:
                raise ValidationError(f"duplicate or clashing arrow name {name!r}")
            if src not in self.vertices or tgt not in self.vertices:
                raise ValidationError(f"arrow {name!r} uses unknown vertices")
            self.arrows[name] = (src, tgt)
        self.relations = tuple(
            self._parse_relation(r) if isinstance(r, str) else tuple(r)
            for r in relations
        )
        for rel in self.relations:
            self._check_relation(rel)
        self._build_path_classes()

    # -- paths -------------------------------------------------------------------

    def path_endpoints(self, path: Path) -> tuple[str, str]:
        if not path:
            raise ValidationError("a trivial path needs an explicit vertex")
        src = self.arrows[path[0]][0]
        cur = src
        for a in path:
            s, t = self.arrows[a]
            if s != cur:
                raise ValidationError(f"path {path} breaks at {a!r}")
            cur = t
        return src, cur

    def _parse_relation(self, text: str) -> Relation:
        """Parse 'beta alpha' or '2 a b - c d' into (coeff, path) terms."""
        terms: list[tuple[Fraction, Path]] = []
        chunk = ""
        sign = 1
        pieces: list[tuple[int, str]] = []
        for token in text.replace("-", " - ").replace("+", " + ").split():
            if token == "-":
                if chunk.strip():
                    pieces.append((sign, chunk))
                chunk, sign = "", -1
            elif token == "+":
                if chunk.strip():
                    pieces.append((sign, chunk))
                chunk, sign = "", 1
            else:
                chunk += " " + token
        if chunk.strip():
            pieces.append((sign, chunk))
        for sgn, piece in pieces:
            words = piece.split()
            coeff = Fraction(sgn)
            if words and words[0].lstrip("-").isdigit():
                coeff *= Fraction(words[0])
                words = words[1:]
            if not words:
                raise ValidationError(f"empty term in relation {text!r}")
            terms.append((coeff, tuple(words)))
        if not terms:
            raise ValidationError(f"empty relation {text!r}")
        return tuple(terms)

    def _check_relation(self, rel: Relation) -> None:
        ends = set()
        lengths = set()
        for coeff, path in rel:
            for a in path:
                if a not in self.arrows:
                    raise ValidationError(f"relation uses unknown arrow {a!r}")
            ends.add(self.path_endpoints(path))
            lengths.add(len(path))
        if len(ends) != 1 or len(lengths) != 1:
            raise ValidationError(
                "relations must be homogeneous in endpoints and length"
            )

    # -- path classes modulo the relation ideal ----------------------------------

    def _build_path_classes(self) -> None:
        """Graded bases of all path classes; fails if the algebra is infinite."""
        by_len: list[list[Path]] = [[]]  # trivial paths handled separately
        arrows_from: dict[str, list[str]] = {v: [] for v in self.vertices}
        for a, (s, _) in self.arrows.items():
            arrows_from[s].append(a)
        by_len.append([(a,) for a in sorted(self.arrows)])
        # reduction tables: (src, tgt, length) -> (paths, projection, free columns)
        self._classes: dict[
            tuple[str, str, int], tuple[list[Path], Mat, list[int]]
        ] = {}
        self.dimension = len(self.vertices)
        total_paths = len(self.arrows)
        length = 1
        while True:
            if length >= _LENGTH_GUARD or total_paths > _PATH_GUARD:
                raise ValidationError(
                    "the algebra presentation is not visibly finite dimensional"
                )
            survivors = 0
            for src in self.vertices:
                for tgt in self.vertices:
                    paths = [
                        p
                        for p in by_len[length]
                        if self.path_endpoints(p) == (src, tgt)
                    ]
                    if not paths:
                        continue
                    index = {p: k for k, p in enumerate(paths)}
                    ideal_vectors = []
                    for rel in self.relations:
                        lr = len(rel[0][1])
                        if lr > length:
                            continue
                        a, b = self.path_endpoints(rel[0][1])
                        for i in range(length - lr + 1):
                            lefts = (
                                [p for p in by_len[i] if self.path_endpoints(p) == (src, a)]
                                if i
                                else ([()] if src == a else [])
                            )
                            j = length - lr - i
                            rights = (
                                [p for p in by_len[j] if self.path_endpoints(p) == (b, tgt)]
                                if j
                                else ([()] if b == tgt else [])
                            )
                            for left in lefts:
                                for right in rights:
                                    vec = [Fraction(0)] * len(paths)
                                    for coeff, mid in rel:
                                        vec[index[left + mid + right]] += coeff
                                    if any(vec):
                                        ideal_vectors.append(tuple(vec))
                    basis, proj = linalg.column_space_projector(
                        ideal_vectors, len(paths)
                    )
                    free = [
                        next(i for i, x in enumerate(b) if x == 1) for b in basis
                    ]
                    self._classes[(src, tgt, length)] = (paths, proj, free)
                    survivors += len(basis)
            self.dimension += survivors
            if survivors == 0:
                self.max_path_length = length - 1
                break
            nxt = []
            for p in by_len[length]:
                _, t = self.path_endpoints(p)
                for a in arrows_from[t]:
                    nxt.append(p + (a,))
            total_paths += len(nxt)
            by_len.append(nxt)
            length += 1

    def class_basis(self, src: str, tgt: str, length: int) -> list[Path]:
        """Surviving path classes, as their representative paths."""
        entry = self._classes.get((src, tgt, length))
        if entry is None:
            return []
        paths, _, free = entry
        return [paths[f] for f in free]

    def reduce_path(self, path: Path) -> list[tuple[Fraction, Path]]:
        """Class of a path as a combination of basis representatives."""
        src, tgt = self.path_endpoints(path)
        entry = self._classes.get((src, tgt, len(path)))
        if entry is None:
            return []
        paths, proj, free = entry
        vec = tuple(Fraction(1 if p == path else 0) for p in paths)
        coords = linalg.apply(proj, vec)
        return [(c, paths[f]) for c, f in zip(coords, free) if c]

    # -- distinguished modules ----------------------------------------------------

    def projective(self, v: str) -> tuple["ModuleRep", list[tuple[str, int, Path]]]:
        """Projective cover of the simple at v, with its path-class basis.

        The basis at vertex u consists of classes of paths v -> u (the trivial
        path when u == v); arrows act by appending and reducing.
        """
        if v not in self.vertices:
            raise ValidationError(f"unknown vertex {v!r}")
        basis: list[tuple[str, int, Path]] = [(v, 0, ())]
        for length in range(1, self.max_path_length + 1):
            for u in self.vertices:
                for p in self.class_basis(v, u, length):
                    basis.append((u, length, p))
        per_vertex: dict[str, list[tuple[int, Path]]] = {u: [] for u in self.vertices}
        for u, length, p in basis:
            per_vertex[u].append((length, p))
        dims = {u: len(per_vertex[u]) for u in self.vertices}
        mats: dict[str, Mat] = {}
        for a, (s, t) in self.arrows.items():
            rows = [[Fraction(0)] * dims[s] for _ in range(dims[t])]
            for col, (length, p) in enumerate(per_vertex[s]):
                if length == 0 and s != v:
                    raise InternalInvariantError("trivial path at wrong vertex")
                appended = p + (a,)
                for coeff, b in self.reduce_path(appended):
                    row = per_vertex[t].index((length + 1, b))
                    rows[row][col] += coeff
            mats[a] = tuple(tuple(r) for r in rows)
        rep = ModuleRep(self, dims, mats)
        rep.validate()
        return rep, basis

    def simple(self, v: str) -> "ModuleRep":
        dims = {u: (1 if u == v else 0) for u in self.vertices}
        return ModuleRep(self, dims, {})


class ModuleRep:
    """A representation: spaces over vertices, matrices over arrows."""

    def __init__(
        self,
        algebra: AlgebraPresentation,
        dims: Mapping[str, int],
        mats: Mapping[str, Mat] | None = None,
    ):
        self.algebra = algebra
        self.dims = {v: int(dims.get(v, 0)) for v in algebra.vertices}
        self.mats: dict[str, Mat] = {}
        mats = mats or {}
        for a, (s, t) in algebra.arrows.items():
            m = mats.get(a)
            if m is None:
                m = linalg.zeros(self.dims[t], self.dims[s])
            else:
                m = linalg.mat(m)
            self.mats[a] = m

    def validate(self) -> None:
        for a, (s, t) in self.algebra.arrows.items():
            want = (self.dims[t], self.dims[s])
            got = linalg.shape(self.mats[a])
            # a zero-row matrix is stored as () and forgets its column count
            if got != want and not (want[0] == 0 and got == (0, 0)):
                raise ValidationError(
                    f"matrix for arrow {a!r} has shape {got}, expected {want}"
                )
        for rel in self.algebra.relations:
            src, tgt = self.algebra.path_endpoints(rel[0][1])
            acc = linalg.zeros(self.dims[tgt], self.dims[src])
            for coeff, path in rel:
                acc = linalg.add(acc, linalg.scal(coeff, self.path_matrix(path)))
            if not linalg.is_zero(acc):
                raise ValidationError(f"relation {rel} fails on the representation")

    def path_matrix(self, path: Path) -> Mat:
        src, _ = self.algebra.path_endpoints(path)
        acc = linalg.ident(self.dims[src])
        for a in path:
            _, t = self.algebra.arrows[a]
            acc = linalg.mul_shaped(
                self.mats[a], acc, self.dims[t], self.dims[src]
            )
        return acc

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def __repr__(self) -> str:
        return f"ModuleRep({self.dims})"


def direct_sum(reps: Sequence[ModuleRep]) -> ModuleRep:
    if not reps:
        raise ValidationError("empty direct sum needs an algebra")
    alg = reps[0].algebra
    dims = {v: sum(r.dims[v] for r in reps) for v in alg.vertices}
    mats = {}
    for a, (s, t) in alg.arrows.items():
        rows: list[list[Fraction]] = [[Fraction(0)] * dims[s] for _ in range(dims[t])]
        roff = coff = 0
        for r in reps:
            m = r.mats[a]
            for i in range(r.dims[t]):
                for j in range(r.dims[s]):
                    rows[roff + i][coff + j] = m[i][j]
            roff += r.dims[t]
            coff += r.dims[s]
        mats[a] = tuple(tuple(row) for row in rows)
    return ModuleRep(alg, dims, mats)


def vmap_compose(f: VMap, g: VMap, src: ModuleRep, tgt: ModuleRep) -> VMap:
    """f after g, vertexwise; src and tgt pin shapes through zero-dim spaces."""
    return {
        v: linalg.mul_shaped(f[v], g[v], tgt.dims[v], src.dims[v])
        for v in src.algebra.vertices
    }


def vmap_sub(f: VMap, g: VMap) -> VMap:
    return {v: linalg.sub(f[v], g[v]) for v in f}


def vmap_zero(src: ModuleRep, tgt: ModuleRep) -> VMap:
    return {
        v: linalg.zeros(tgt.dims[v], src.dims[v]) for v in src.algebra.vertices
    }


def vmap_is_zero(f: VMap) -> bool:
    return all(linalg.is_zero(m) for m in f.values())


def flatten_vmap(f: VMap, order: Sequence[str]) -> tuple[Fraction, ...]:
    out: list[Fraction] = []
    for v in order:
        for row in f[v]:
            out.extend(row)
    return tuple(out)


def hom_basis(M: ModuleRep, N: ModuleRep) -> list[VMap]:
    """Basis of intertwiners M -> N, by solving the commutation equations."""
    alg = M.algebra
    offsets = {}
    pos = 0
    for v in alg.vertices:
        offsets[v] = pos
        pos += N.dims[v] * M.dims[v]
    nvars = pos
    rows: list[tuple[Fraction, ...]] = []
    for a, (s, t) in alg.arrows.items():
        # f_t @ M_a == N_a @ f_s, one equation per (i, j)
        for i in range(N.dims[t]):
            for j in range(M.dims[s]):
                row = [Fraction(0)] * nvars
                for k in range(M.dims[t]):
                    row[offsets[t] + i * M.dims[t] + k] += M.mats[a][k][j]
                for k in range(N.dims[s]):
                    row[offsets[s] + k * M.dims[s] + j] -= N.mats[a][i][k]
                if any(row):
                    rows.append(tuple(row))
    basis = []
    for vec in linalg.nullspace(tuple(rows)) if rows else _full_space(nvars):
        f: VMap = {}
        for v in alg.vertices:
            entries = vec[offsets[v] : offsets[v] + N.dims[v] * M.dims[v]]
            f[v] = tuple(
                tuple(entries[i * M.dims[v] + j] for j in range(M.dims[v]))
                for i in range(N.dims[v])
            )
        basis.append(f)
    return basis


def _full_space(n: int):
    return [
        tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n)
    ]


def top_generators(M: ModuleRep) -> list[tuple[str, tuple[Fraction, ...]]]:
    """Vectors projecting to a basis of M / rad M, as (vertex, vector)."""
    out = []
    for v in M.algebra.vertices:
        rad_vectors = []
        for a, (s, t) in M.algebra.arrows.items():
            if t != v:
                continue
            for col in linalg.transpose(M.mats[a]):
                if any(col):
                    rad_vectors.append(col)
        basis, _ = linalg.column_space_projector(rad_vectors, M.dims[v])
        for vec in basis:
            out.append((v, vec))
    return out


def projective_cover(M: ModuleRep) -> tuple[ModuleRep, list[str], VMap]:
    """(P, vertex labels of its summands, surjection P -> M)."""
    alg = M.algebra
    gens = top_generators(M)
    if not gens:
        zero = ModuleRep(alg, {})
        return zero, [], vmap_zero(zero, M)
    labels = [v for v, _ in gens]
    summands = []
    bases = []
    for v, _ in gens:
        P_v, basis = alg.projective(v)
        summands.append(P_v)
        bases.append(basis)
    P = direct_sum(summands)
    # build columns vertex by vertex, summand by summand, in sum order
    col_entries: dict[str, list[tuple[Fraction, ...]]] = {u: [] for u in alg.vertices}
    for (v, gen), basis in zip(gens, bases):
        per_vertex: dict[str, list[Path]] = {u: [] for u in alg.vertices}
        for u, _, p in basis:
            per_vertex[u].append(p)
        for u in alg.vertices:
            for p in per_vertex[u]:
                image = (
                    tuple(gen)
                    if not p
                    else linalg.apply(M.path_matrix(p), gen)
                )
                col_entries[u].append(image)
    cover: VMap = {}
    for u in alg.vertices:
        cols_u = col_entries[u]
        cover[u] = tuple(
            tuple(col[i] for col in cols_u) for i in range(M.dims[u])
        )
    if any(
        linalg.rank(cover[u]) != M.dims[u] for u in alg.vertices
    ):
        raise InternalInvariantError("projective cover fails to surject")
    return P, labels, cover


def kernel_rep(f: VMap, M: ModuleRep, N: ModuleRep) -> tuple[ModuleRep, VMap]:
    """(K, inclusion K -> M) of the vertexwise kernel, with induced arrows."""
    alg = M.algebra
    incl: VMap = {}
    kdims = {}
    for v in alg.vertices:
        if M.dims[v] == 0:
            basis = []
        elif N.dims[v] == 0:
            basis = _full_space(M.dims[v])
        else:
            basis = linalg.nullspace(f[v])
        kdims[v] = len(basis)
        incl[v] = (
            linalg.transpose(tuple(basis))
            if basis
            else linalg.zeros(M.dims[v], 0)
        )
    mats = {}
    for a, (s, t) in alg.arrows.items():
        rhs = linalg.mul_shaped(M.mats[a], incl[s], M.dims[t], kdims[s])
        if M.dims[t] == 0:
            mats[a] = linalg.zeros(kdims[t], kdims[s])
        else:
            sol = linalg.solve_matrix(incl[t], rhs)
            if sol is None:
                raise InternalInvariantError("kernel is not arrow-stable")
            mats[a] = sol
    K = ModuleRep(alg, kdims, mats)
    K.validate()
    return K, incl


def cokernel_rep(f: VMap, M: ModuleRep, N: ModuleRep) -> tuple[ModuleRep, VMap]:
    """(C, projection N -> C) of the vertexwise cokernel."""
    alg = M.algebra
    proj: VMap = {}
    sections = {}
    cdims = {}
    for v in alg.vertices:
        image_cols = [col for col in linalg.transpose(f[v]) if any(col)]
        qbasis, p = linalg.column_space_projector(image_cols, N.dims[v])
        cdims[v] = len(qbasis)
        proj[v] = p
        sections[v] = (
            linalg.transpose(tuple(qbasis))
            if qbasis
            else linalg.zeros(N.dims[v], 0)
        )
    mats = {}
    for a, (s, t) in alg.arrows.items():
        step = linalg.mul_shaped(N.mats[a], sections[s], N.dims[t], cdims[s])
        mats[a] = linalg.mul_shaped(proj[t], step, cdims[t], cdims[s])
    C = ModuleRep(alg, cdims, mats)
    C.validate()
    return C, proj


def minimal_projective_resolution(
    M: ModuleRep, max_len: int = 20
) -> tuple[list[tuple[ModuleRep, list[str]]], list[VMap], VMap]:
    """([(P_i, labels_i)], [d_i: P_i -> P_{i-1} for i >= 1], P_0 -> M)."""
    P0, labels0, aug = projective_cover(M)
    terms = [(P0, labels0)]
    diffs: list[VMap] = []
    K, incl = kernel_rep(aug, P0, M)
    while not K.is_zero():
        if len(terms) > max_len:
            raise InternalInvariantError("projective resolution exceeds guard")
        P, labels, cov = projective_cover(K)
        diffs.append(vmap_compose(incl, cov, P, terms[-1][0]))
        terms.append((P, labels))
        K, incl = kernel_rep(cov, P, K)
    return terms, diffs, aug


def ext_dims(M: ModuleRep, N: ModuleRep, up_to: int) -> list[int]:
    """[dim Ext^i(M, N) for i in 0..up_to], by the minimal resolution."""
    terms, diffs, _ = minimal_projective_resolution(M)
    order = M.algebra.vertices
    hom_bases = [hom_basis(P, N) for P, _ in terms]
    d_mats: list[Mat] = []
    for i, d in enumerate(diffs, start=1):
        src_basis = hom_bases[i - 1]
        tgt_basis = hom_bases[i]
        flat_tgt = [flatten_vmap(g, order) for g in tgt_basis]
        cols = []
        for f in src_basis:
            g = vmap_compose(f, d, terms[i][0], N)
            coords = linalg.express_in_span(flat_tgt, flatten_vmap(g, order))
            if coords is None:
                raise InternalInvariantError("composite leaves the hom space")
            cols.append(coords)
        if cols and flat_tgt:
            d_mats.append(linalg.transpose(tuple(cols)))
        else:
            # keep the column count even when a hom space is zero, so kernel
            # dimensions come out right
            d_mats.append(linalg.zeros(len(tgt_basis) or 1, len(src_basis)))
    out = []
    for i in range(up_to + 1):
        if i >= len(hom_bases):
            out.append(0)
            continue
        cycles = (
            len(hom_bases[i])
            if i >= len(d_mats)
            else len(linalg.nullspace(d_mats[i]))
            if len(hom_bases[i])
            else 0
        )
        boundaries = linalg.rank(d_mats[i - 1]) if i >= 1 and i - 1 < len(d_mats) else 0
        out.append(cycles - boundaries)
    return out
