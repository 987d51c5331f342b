"""Coxeter systems of finite and untwisted affine Weyl type.

Groups are presented by a generalized Cartan matrix and realized faithfully
on simple-root coordinates: generator s_i acts by the reflection matrix that
is the identity except in row i, where (M_i)[i][j] = delta_ij - C[i][j].
Every element is stored as its ShortLex-least reduced word (obtained by
greedily peeling the smallest left descent) together with its matrix and
inverse matrix, so equality, length, descent sets and Bruhat order are all
exact and cheap at the ranks used here.

Generator names are 1-based for finite types (A3 has S = {1,2,3}); affine
types prepend the affine node as generator 0.

>>> W = CoxeterSystem.from_type("A2")
>>> W.element([2, 1, 2]).word      # ShortLex normal form
(1, 2, 1)
>>> W.longest_element().length
3
"""

from __future__ import annotations

import re
import threading
from typing import Iterable, Sequence

__all__ = [
    "CoxeterSystem",
    "CoxeterElement",
    "finite_cartan",
    "roots_and_coroots",
    "parse_word",
    "format_word",
]

Matrix = tuple[tuple[int, ...], ...]

_TYPE_RE = re.compile(r"^(aff)?([A-G])(\d+)(d?)$")

_ASCEND_GUARD = 100_000  # iteration cap for longest-element ascent


def _ident(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum(ra[k] * cb[k] for k in range(n)) for cb in bt) for ra in a
    )


def finite_cartan(family: str, rank: int) -> Matrix:
    """Cartan matrix of a finite Weyl type, Bourbaki numbering.

    Convention: C[i][j] = <alpha_j, alpha_i^vee>, 0-based positions.
    """
    fam = family.upper()
    if fam == "A":
        ok = rank >= 1
    elif fam in ("B", "C"):
        ok = rank >= 2
    elif fam == "D":
        ok = rank >= 3
    elif fam == "E":
        ok = rank in (6, 7, 8)
    elif fam == "F":
        ok = rank == 4
    elif fam == "G":
        ok = rank == 2
    else:
        ok = False
    if not ok:
        raise ValueError(f"unsupported type {family}{rank}")

    def chain(n):
        return [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)] for i in range(n)]

    c = chain(rank)
    if fam == "B":
        # alpha_rank short: <alpha_{n-1}, alpha_n^vee> = -2
        c[rank - 1][rank - 2] = -2
    elif fam == "C":
        c[rank - 2][rank - 1] = -2
    elif fam == "D":
        for i in range(rank):
            for j in range(rank):
                if i != j:
                    c[i][j] = 0
        for i in range(rank - 2):
            c[i][i + 1] = c[i + 1][i] = -1
        c[rank - 3][rank - 1] = c[rank - 1][rank - 3] = -1
    elif fam == "E":
        # Bourbaki: node 2 hangs off node 4 of the A-chain 1-3-4-5-6(-7-8)
        chain_nodes = [1, 3, 4, 5, 6, 7, 8][: rank - 1]
        pairs = list(zip(chain_nodes, chain_nodes[1:])) + [(2, 4)]
        for i in range(rank):
            for j in range(rank):
                if i != j:
                    c[i][j] = 0
        for a, b in pairs:
            c[a - 1][b - 1] = c[b - 1][a - 1] = -1
    elif fam == "F":
        c[2][1] = -2  # <alpha_2, alpha_3^vee> = -2 (alpha_3 short)
    elif fam == "G":
        # alpha_1 short, alpha_2 long: <alpha_2, alpha_1^vee> = -3
        c[0][1] = -3
    return tuple(tuple(row) for row in c)


def roots_and_coroots(cartan: Matrix) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All positive roots of a finite Cartan matrix as (root, coroot) pairs.

    Coordinates are in the simple-root / simple-coroot bases.  Closure under
    simple reflections; the coroot side uses the transposed matrix.
    """
    n = len(cartan)
    simples = [
        (
            tuple(1 if k == i else 0 for k in range(n)),
            tuple(1 if k == i else 0 for k in range(n)),
        )
        for i in range(n)
    ]
    seen = set(simples)
    frontier = list(simples)
    guard = 0
    while frontier:
        guard += 1
        if guard > 10_000:
            raise ValueError("root closure did not terminate; matrix is not of finite type")
        nxt = []
        for root, coroot in frontier:
            for i in range(n):
                pr = sum(cartan[i][j] * root[j] for j in range(n))
                pc = sum(cartan[j][i] * coroot[j] for j in range(n))
                r2 = list(root)
                r2[i] -= pr
                c2 = list(coroot)
                c2[i] -= pc
                if all(x >= 0 for x in r2) and any(x > 0 for x in r2):
                    pair = (tuple(r2), tuple(c2))
                    if pair not in seen:
                        seen.add(pair)
                        nxt.append(pair)
        frontier = nxt
    return sorted(seen, key=lambda p: (sum(p[0]), p[0]))


def _coxeter_order(prod: int) -> int:
    """Edge label m(s,t) from C[s][t]*C[t][s]; 0 encodes infinity."""
    return {0: 2, 1: 3, 2: 4, 3: 6}.get(prod, 0)


class CoxeterElement:
    """Group element: canonical reduced word plus action matrices."""

    __slots__ = ("system", "word", "matrix", "inv_matrix", "_hash")

    def __init__(self, system: "CoxeterSystem", word: tuple[int, ...], matrix: Matrix, inv_matrix: Matrix):
        self.system = system
        self.word = word
        self.matrix = matrix
        self.inv_matrix = inv_matrix
        self._hash = hash((system.tag, word))

    @property
    def length(self) -> int:
        return len(self.word)

    def is_identity(self) -> bool:
        return not self.word

    def __mul__(self, other: "CoxeterElement") -> "CoxeterElement":
        if not isinstance(other, CoxeterElement):
            return NotImplemented
        if other.system is not self.system:
            raise ValueError("elements of different systems")
        return self.system._from_matrices(
            _matmul(self.matrix, other.matrix), _matmul(other.inv_matrix, self.inv_matrix)
        )

    def inverse(self) -> "CoxeterElement":
        return self.system._from_matrices(self.inv_matrix, self.matrix)

    def times_gen(self, s: int, side: str = "right") -> "CoxeterElement":
        return self.system._times_gen(self, s, side)

    def root_image(self, s: int) -> tuple[int, ...]:
        """Coordinates of w(alpha_s) in the simple-root basis."""
        j = self.system._idx[s]
        return tuple(row[j] for row in self.matrix)

    def right_descents(self) -> frozenset[int]:
        sys = self.system
        out = []
        for s in sys.names:
            j = sys._idx[s]
            if all(row[j] <= 0 for row in self.matrix):
                out.append(s)
        return frozenset(out)

    def left_descents(self) -> frozenset[int]:
        sys = self.system
        out = []
        for s in sys.names:
            j = sys._idx[s]
            if all(row[j] <= 0 for row in self.inv_matrix):
                out.append(s)
        return frozenset(out)

    def has_right_descent(self, s: int) -> bool:
        j = self.system._idx[s]
        return all(row[j] <= 0 for row in self.matrix)

    def has_left_descent(self, s: int) -> bool:
        j = self.system._idx[s]
        return all(row[j] <= 0 for row in self.inv_matrix)

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (len(self.word), self.word)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CoxeterElement):
            return NotImplemented
        return self.system.tag == other.system.tag and self.word == other.word

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "CoxeterElement") -> bool:
        return self.sort_key() < other.sort_key()

    def __repr__(self) -> str:
        return f"<{self.system.tag}:{format_word(self.word) or 'e'}>"


class CoxeterSystem:
    """A Coxeter system with named generators and exact matrix realization.

    Construct with from_type ("A3", "B2", "affA1", ...) or from_cartan for a
    custom generalized Cartan matrix (used by the root-of-unity linkage data).
    """

    def __init__(self, tag: str, names: Sequence[int], cartan: Matrix, finite: bool):
        n = len(names)
        if len(cartan) != n or any(len(r) != n for r in cartan):
            raise ValueError("Cartan matrix shape mismatch")
        for i in range(n):
            if cartan[i][i] != 2:
                raise ValueError("diagonal of a generalized Cartan matrix must be 2")
            for j in range(n):
                if i != j and cartan[i][j] > 0:
                    raise ValueError("off-diagonal entries must be <= 0")
                if i != j and (cartan[i][j] == 0) != (cartan[j][i] == 0):
                    raise ValueError("zero pattern must be symmetric")
        self.tag = tag
        self.names: tuple[int, ...] = tuple(names)
        self.cartan: Matrix = tuple(tuple(row) for row in cartan)
        self.is_finite = finite
        self.rank = n
        self._idx = {s: i for i, s in enumerate(self.names)}
        self._lock = threading.RLock()

        self._gen_mats: dict[int, Matrix] = {}
        for s, i in self._idx.items():
            rows = [list(r) for r in _ident(n)]
            for j in range(n):
                rows[i][j] = (1 if i == j else 0) - self.cartan[i][j]
            self._gen_mats[s] = tuple(tuple(r) for r in rows)

        self.coxeter_matrix: dict[tuple[int, int], int] = {}
        for s in self.names:
            for t in self.names:
                if s == t:
                    self.coxeter_matrix[(s, t)] = 1
                else:
                    prod = self.cartan[self._idx[s]][self._idx[t]] * self.cartan[self._idx[t]][self._idx[s]]
                    self.coxeter_matrix[(s, t)] = _coxeter_order(prod)

        self._elements: dict[Matrix, CoxeterElement] = {}
        self._gen_step: dict[tuple[tuple[int, ...], int, str], CoxeterElement] = {}
        self._bruhat: dict[tuple[tuple[int, ...], tuple[int, ...]], bool] = {}
        ident = _ident(n)
        self.identity = CoxeterElement(self, (), ident, ident)
        self._elements[ident] = self.identity
        self.generators: dict[int, CoxeterElement] = {
            s: self._from_matrices(self._gen_mats[s], self._gen_mats[s]) for s in self.names
        }

    # -- construction --------------------------------------------------------

    @classmethod
    def from_type(cls, tag: str) -> "CoxeterSystem":
        m = _TYPE_RE.match(tag)
        if m is None or m.group(4):
            raise ValueError(f"unrecognized type tag {tag!r}")
        aff, family, rank_s = m.group(1), m.group(2), m.group(3)
        rank = int(rank_s)
        fin = finite_cartan(family, rank)
        if not aff:
            return cls(tag, range(1, rank + 1), fin, finite=True)
        pairs = roots_and_coroots(fin)
        highest = max(pairs, key=lambda p: sum(p[0]))
        return cls(tag, range(0, rank + 1), affinize_cartan(fin, highest), finite=False)

    @classmethod
    def from_cartan(cls, tag: str, cartan: Matrix, names: Sequence[int], finite: bool) -> "CoxeterSystem":
        return cls(tag, names, cartan, finite)

    # -- element plumbing ----------------------------------------------------

    def _normal_word(self, inv: Matrix) -> tuple[int, ...]:
        """ShortLex-least reduced word from the inverse matrix."""
        word: list[int] = []
        m_inv = inv
        guard = 0
        while True:
            guard += 1
            if guard > _ASCEND_GUARD:
                raise RuntimeError("normal form did not terminate")
            pick = None
            for s in self.names:  # names are sorted; first hit is ShortLex choice
                j = self._idx[s]
                col = tuple(row[j] for row in m_inv)
                if all(x <= 0 for x in col):
                    pick = s
                    break
            if pick is None:
                return tuple(word)
            word.append(pick)
            m_inv = _matmul(m_inv, self._gen_mats[pick])

    def _from_matrices(self, mat: Matrix, inv: Matrix) -> CoxeterElement:
        with self._lock:
            el = self._elements.get(mat)
            if el is None:
                el = CoxeterElement(self, self._normal_word(inv), mat, inv)
                self._elements[mat] = el
            return el

    def _times_gen(self, x: CoxeterElement, s: int, side: str) -> CoxeterElement:
        key = (x.word, s, side)
        with self._lock:
            el = self._gen_step.get(key)
        if el is None:
            g = self._gen_mats[s]
            if side == "right":
                el = self._from_matrices(_matmul(x.matrix, g), _matmul(g, x.inv_matrix))
            elif side == "left":
                el = self._from_matrices(_matmul(g, x.matrix), _matmul(x.inv_matrix, g))
            else:
                raise ValueError("side must be 'left' or 'right'")
            with self._lock:
                self._gen_step[key] = el
        return el

    def element(self, word: Iterable[int]) -> CoxeterElement:
        """Element of the group from any word in the generators."""
        el = self.identity
        for s in word:
            if s not in self._idx:
                raise ValueError(f"unknown generator {s!r} for system {self.tag}")
            el = self._times_gen(el, s, "right")
        return el

    def check_names(self, subset: Iterable[int]) -> tuple[int, ...]:
        out = tuple(sorted(set(subset)))
        for s in out:
            if s not in self._idx:
                raise ValueError(f"unknown generator {s!r} for system {self.tag}")
        return out

    # -- Bruhat order ---------------------------------------------------------

    def bruhat_leq(self, x: CoxeterElement, y: CoxeterElement) -> bool:
        """Bruhat order via the lifting property, memoized."""
        if x.system is not self or y.system is not self:
            raise ValueError("elements of a different system")
        key = (x.word, y.word)
        with self._lock:
            cached = self._bruhat.get(key)
        if cached is not None:
            return cached
        if x.is_identity():
            res = True
        elif x.length > y.length:
            res = False
        elif x.length == y.length:
            res = x.word == y.word
        else:
            s = min(y.right_descents())
            ys = self._times_gen(y, s, "right")
            if x.has_right_descent(s):
                res = self.bruhat_leq(self._times_gen(x, s, "right"), ys)
            else:
                res = self.bruhat_leq(x, ys)
        with self._lock:
            self._bruhat[key] = res
        return res

    def enumerate_below(self, y: CoxeterElement) -> list[CoxeterElement]:
        """All z <= y, via the subword property of any reduced word of y."""
        below = {self.identity}
        for s in y.word:
            below |= {self._times_gen(z, s, "right") for z in below}
        return sorted(below, key=CoxeterElement.sort_key)

    def bruhat_interval(self, x: CoxeterElement, y: CoxeterElement) -> list[CoxeterElement]:
        """[x, y] in Bruhat order, sorted by (length, word)."""
        return [z for z in self.enumerate_below(y) if self.bruhat_leq(x, z)]

    # -- quotients and cosets --------------------------------------------------

    def project(self, x: CoxeterElement, I: Iterable[int], side: str) -> CoxeterElement:
        """Minimal-length representative of W_I x (side='left') or x W_I (side='right')."""
        I = self.check_names(I)
        moved = True
        while moved:
            moved = False
            for s in I:
                if side == "left" and x.has_left_descent(s):
                    x = self._times_gen(x, s, "left")
                    moved = True
                elif side == "right" and x.has_right_descent(s):
                    x = self._times_gen(x, s, "right")
                    moved = True
        return x

    def is_minimal(self, x: CoxeterElement, I: Iterable[int], side: str) -> bool:
        I = self.check_names(I)
        if side == "left":
            return not any(x.has_left_descent(s) for s in I)
        if side == "right":
            return not any(x.has_right_descent(s) for s in I)
        raise ValueError("side must be 'left' or 'right'")

    def quotient_reps(
        self, I: Iterable[int], side: str = "left", max_len: int | None = None
    ) -> tuple[list[CoxeterElement], bool]:
        """Minimal coset representatives (W_I\\W for side='left', W/W_I for 'right').

        Returns (representatives sorted by (length, word), truncated flag).
        max_len bounds the search; it is required for infinite systems.
        """
        I = self.check_names(I)
        if max_len is None:
            if not self.is_finite:
                raise ValueError("max_len is required for an infinite system")
            max_len = 1 << 30
        found = {self.identity}
        frontier = [self.identity]
        truncated = False
        length = 0
        while frontier:
            if length >= max_len:
                # anything on the frontier extends further: report truncation
                for x in frontier:
                    for s in self.names:
                        grow = (
                            not x.has_right_descent(s)
                            if side == "left"
                            else not x.has_left_descent(s)
                        )
                        if grow:
                            y = self._times_gen(x, s, "right" if side == "left" else "left")
                            if self.is_minimal(y, I, side):
                                truncated = True
                break
            nxt = set()
            for x in frontier:
                for s in self.names:
                    # extend on the side away from I so minimality can persist
                    if side == "left":
                        if x.has_right_descent(s):
                            continue
                        y = self._times_gen(x, s, "right")
                    else:
                        if x.has_left_descent(s):
                            continue
                        y = self._times_gen(x, s, "left")
                    if y not in found and self.is_minimal(y, I, side):
                        nxt.add(y)
            found |= nxt
            frontier = sorted(nxt, key=CoxeterElement.sort_key)
            length += 1
        return sorted(found, key=CoxeterElement.sort_key), truncated

    def longest_element(self, I: Iterable[int] | None = None) -> CoxeterElement:
        """Longest element of W_I (of the whole group when I is None)."""
        I = self.check_names(I if I is not None else self.names)
        if not self.is_finite and len(I) == self.rank:
            raise ValueError(f"system {self.tag} is infinite; it has no longest element")
        w = self.identity
        for _ in range(_ASCEND_GUARD):
            s = next((t for t in I if not w.has_right_descent(t)), None)
            if s is None:
                return w
            w = self._times_gen(w, s, "right")
        raise RuntimeError("longest-element ascent did not terminate")

    def is_regular_coset_rep(self, w: CoxeterElement, J: Iterable[int], I: Iterable[int]) -> bool:
        """True when w I w^{-1} maps no simple reflection of I into W_J.

        Test: w(alpha_t) is not +-alpha_u for t in I, u in J.
        """
        J = self.check_names(J)
        I = self.check_names(I)
        units = set()
        for u in J:
            e_u = tuple(1 if self._idx[u] == k else 0 for k in range(self.rank))
            units.add(e_u)
            units.add(tuple(-c for c in e_u))
        return all(w.root_image(t) not in units for t in I)

    def regular_double_coset_reps(
        self, J: Iterable[int], I: Iterable[int], max_len: int | None = None
    ) -> tuple[list[CoxeterElement], bool]:
        """Minimal representatives of W_J\\W/W_I whose I-conjugate avoids W_J.

        Minimal double-coset representatives are exactly the elements minimal
        on both sides; the regularity filter drops w with J meeting w I w^{-1}.
        """
        J = self.check_names(J)
        I = self.check_names(I)
        reps, truncated = self.quotient_reps(J, side="left", max_len=max_len)
        out = [
            w
            for w in reps
            if self.is_minimal(w, I, "right") and self.is_regular_coset_rep(w, J, I)
        ]
        return out, truncated


def affinize_cartan(
    fin: Matrix, beta: tuple[tuple[int, ...], tuple[int, ...]]
) -> Matrix:
    """Extend a finite Cartan matrix by an affine node for the root beta.

    beta is a (root-coords, coroot-coords) pair; the new node is attached by
    the pairings -<alpha_j, beta^vee> and -<beta, alpha_j^vee>.
    """
    n = len(fin)
    m, c = beta
    row0 = [2] + [-sum(c[i] * fin[i][j] for i in range(n)) for j in range(n)]
    rows = [tuple(row0)]
    for j in range(n):
        col0 = -sum(m[i] * fin[j][i] for i in range(n))
        rows.append(tuple([col0] + list(fin[j])))
    return tuple(rows)


def parse_word(text: str) -> tuple[int, ...]:
    """Parse a generator word like '2 1 3 2' (commas allowed); '' is identity."""
    s = text.replace(",", " ").strip()
    if not s:
        return ()
    try:
        return tuple(int(t) for t in s.split())
    except ValueError as exc:
        raise ValueError(f"bad generator word {text!r}") from exc


def format_word(word: Sequence[int]) -> str:
    return " ".join(str(s) for s in word)
