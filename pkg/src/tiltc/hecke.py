"""Hecke algebras, parabolic modules, and self-dual bases.

Normalization: the standard basis {H_x} satisfies, for a simple reflection s,

    H_x H_s = H_{xs}                      if len(xs) > len(x),
    H_x H_s = H_{xs} + (v^-1 - v) H_x     otherwise,

so H_s^2 = H_e + (v^-1 - v) H_s and H_s^{-1} = H_s + (v - v^-1) H_e.  The bar
involution fixes each H_s and sends v to v^-1.  The self-dual basis element
C_y = sum_x h_{x,y} H_x has h_{y,y} = 1 and h_{x,y} in v*Z[v] for x < y;
C_s = H_s + v H_e.

Parabolic quotient modules over a subset I of the generators come in two
flavors, distinguished by the scalar a generator acts by on a basis vector
that leaves the minimal-coset index set: 'spherical' (v^-1, so C_s acts by
v + v^-1) and 'antispherical' (-v, so C_s kills the vector).  Their self-dual
bases give the families m^I and n^I; the inverse families are defined by
signed unitriangular inversion of the direct ones and are re-verified against
the inversion identity every time a column is produced.

Family keys: ("h", ()) ordinary, ("m", I) / ("n", I) parabolic, and the
corresponding inverse families ("h_inv", ()), ("m_inv", I), ("n_inv", I).
"""

from __future__ import annotations

import hashlib
import json
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Mapping

from .coxeter import CoxeterElement, CoxeterSystem, format_word, parse_word
from .errors import CacheError, InternalInvariantError, ValidationError
from .laurent import ONE, V, ZERO, LaurentPoly

__all__ = [
    "HeckeContext",
    "HeckeVector",
    "PolyStore",
    "family_id",
    "DIRECT_FAMILIES",
    "INVERSE_FAMILIES",
]

Coords = dict[CoxeterElement, LaurentPoly]

V_INV = LaurentPoly.v(-1)
V_MINUS_VINV = V - V_INV  # v - v^-1
VINV_MINUS_V = V_INV - V

DIRECT_FAMILIES = ("h", "m", "n")
INVERSE_FAMILIES = ("h_inv", "m_inv", "n_inv")


def family_id(fam: str, I: tuple[int, ...]) -> str:
    """Canonical string id of a polynomial family, e.g. 'n[1,2]' or 'h'."""
    if fam in ("h", "h_inv"):
        return fam
    return f"{fam}[{','.join(str(s) for s in I)}]"


@dataclass(frozen=True)
class HeckeVector:
    """Element of the Hecke algebra or of a parabolic quotient module.

    kind is ("std", ()) for the algebra itself, or (flavor, I) with flavor in
    {"spherical", "antispherical"} for the module over the subset I.
    """

    system: CoxeterSystem
    kind: tuple[str, tuple[int, ...]]
    coords: tuple[tuple[CoxeterElement, LaurentPoly], ...]

    @staticmethod
    def make(system: CoxeterSystem, kind, coords: Mapping[CoxeterElement, LaurentPoly]) -> "HeckeVector":
        items = tuple(
            (x, p) for x, p in sorted(coords.items(), key=lambda t: t[0].sort_key()) if p
        )
        return HeckeVector(system, (kind[0], tuple(kind[1])), items)

    def as_dict(self) -> Coords:
        return dict(self.coords)


def _add_into(acc: Coords, x: CoxeterElement, p: LaurentPoly) -> None:
    q = acc.get(x)
    acc[x] = p if q is None else q + p


def _clean(acc: Coords) -> Coords:
    return {x: p for x, p in acc.items() if p}


class PolyStore:
    """Persistent column store for the polynomial families of one system.

    File format: one JSON header line {"format", "system", "generators",
    "records", "checksum"}, then one JSON line per stored column.  The
    checksum is the sha256 of the record lines and is verified on load.
    """

    FORMAT = 1

    def __init__(self, system_tag: str, generators: int):
        self.system_tag = system_tag
        self.generators = generators
        # family id -> upper word -> {lower word -> poly}
        self.columns: dict[str, dict[tuple[int, ...], dict[tuple[int, ...], LaurentPoly]]] = {}
        self.dirty = False

    def get_column(self, fam_id: str, upper: tuple[int, ...]):
        return self.columns.get(fam_id, {}).get(upper)

    def put_column(self, fam_id: str, upper: tuple[int, ...], col: dict[tuple[int, ...], LaurentPoly]) -> None:
        fam = self.columns.setdefault(fam_id, {})
        if upper not in fam:
            fam[upper] = dict(col)
            self.dirty = True

    def record_count(self) -> int:
        return sum(len(f) for f in self.columns.values())

    def save(self, path: str | Path) -> None:
        path = Path(path)
        lines = []
        for fam_id in sorted(self.columns):
            for upper in sorted(self.columns[fam_id], key=lambda w: (len(w), w)):
                col = self.columns[fam_id][upper]
                rec = {
                    "family": fam_id,
                    "upper": format_word(upper),
                    "entries": {
                        format_word(low): col[low].to_json_obj()
                        for low in sorted(col, key=lambda w: (len(w), w))
                    },
                }
                lines.append(json.dumps(rec, separators=(",", ":"), sort_keys=True))
        body = "\n".join(lines)
        header = json.dumps(
            {
                "format": self.FORMAT,
                "system": self.system_tag,
                "generators": self.generators,
                "records": len(lines),
                "checksum": hashlib.sha256(body.encode()).hexdigest(),
            },
            separators=(",", ":"),
            sort_keys=True,
        )
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(path.suffix + ".tmp")
        tmp.write_text(header + "\n" + body + ("\n" if body else ""))
        tmp.replace(path)
        self.dirty = False

    @classmethod
    def load(cls, path: str | Path, system_tag: str, generators: int) -> "PolyStore":
        path = Path(path)
        text = path.read_text()
        head, _, body = text.partition("\n")
        body = body.rstrip("\n")
        try:
            header = json.loads(head)
        except json.JSONDecodeError as exc:
            raise CacheError(f"cache header unreadable: {exc}") from exc
        if header.get("format") != cls.FORMAT:
            raise CacheError(f"cache format version mismatch: {header.get('format')!r}")
        if header.get("system") != system_tag or header.get("generators") != generators:
            raise CacheError(
                f"cache is for system {header.get('system')!r}, not {system_tag!r}"
            )
        if hashlib.sha256(body.encode()).hexdigest() != header.get("checksum"):
            raise CacheError("cache checksum failure")
        store = cls(system_tag, generators)
        if not body:
            return store
        for line in body.split("\n"):
            try:
                rec = json.loads(line)
                fam_id = rec["family"]
                upper = parse_word(rec["upper"])
                col = {
                    parse_word(k): LaurentPoly.from_json_obj(v)
                    for k, v in rec["entries"].items()
                }
            except (KeyError, ValueError, json.JSONDecodeError) as exc:
                raise CacheError(f"cache key parse failure: {exc}") from exc
            store.columns.setdefault(fam_id, {})[upper] = col
        store.dirty = False
        return store


class HeckeContext:
    """All polynomial families attached to one Coxeter system, memoized.

    An optional PolyStore provides persistence; computed columns are written
    back to it (serialize with store.save).  All public results are columns:
    maps {lower element -> polynomial} attached to an upper element.
    """

    def __init__(self, system: CoxeterSystem, store: PolyStore | None = None):
        self.system = system
        if store is not None and (
            store.system_tag != system.tag or store.generators != system.rank
        ):
            raise CacheError("store does not match the system")
        self.store = store
        self._columns: dict[tuple[str, tuple[int, ...]], Coords] = {}
        self._bar_std: dict[CoxeterElement, Coords] = {}
        self._bar_par: dict[tuple, Coords] = {}
        self._lock = threading.RLock()

    # -- standard basis multiplication ---------------------------------------

    def rmul_gen_std(self, coords: Coords, s: int) -> Coords:
        out: Coords = {}
        for x, p in coords.items():
            xs = x.times_gen(s, "right")
            if xs.length > x.length:
                _add_into(out, xs, p)
            else:
                _add_into(out, xs, p)
                _add_into(out, x, p * VINV_MINUS_V)
        return _clean(out)

    def lmul_gen_std(self, coords: Coords, s: int) -> Coords:
        out: Coords = {}
        for x, p in coords.items():
            sx = x.times_gen(s, "left")
            if sx.length > x.length:
                _add_into(out, sx, p)
            else:
                _add_into(out, sx, p)
                _add_into(out, x, p * VINV_MINUS_V)
        return _clean(out)

    def mult_word_std(self, coords: Coords, word: Iterable[int]) -> Coords:
        for s in word:
            coords = self.rmul_gen_std(coords, s)
        return coords

    # -- parabolic module multiplication ---------------------------------------

    def _in_quotient(self, x: CoxeterElement, I: tuple[int, ...]) -> bool:
        return not any(x.has_left_descent(t) for t in I)

    def rmul_gen_par(self, coords: Coords, s: int, I: tuple[int, ...], flavor: str) -> Coords:
        if flavor == "spherical":
            scalar = V_INV
        elif flavor == "antispherical":
            scalar = -V
        else:
            raise ValidationError(f"unknown flavor {flavor!r}")
        out: Coords = {}
        for x, p in coords.items():
            xs = x.times_gen(s, "right")
            if self._in_quotient(xs, I):
                if xs.length > x.length:
                    _add_into(out, xs, p)
                else:
                    _add_into(out, xs, p)
                    _add_into(out, x, p * VINV_MINUS_V)
            else:
                _add_into(out, x, p * scalar)
        return _clean(out)

    # -- self-dual basis columns -----------------------------------------------

    def _get_cached(self, fam_id: str, upper: CoxeterElement) -> Coords | None:
        with self._lock:
            col = self._columns.get((fam_id, upper.word))
            if col is not None:
                return col
            if self.store is not None:
                raw = self.store.get_column(fam_id, upper.word)
                if raw is not None:
                    col = {self.system.element(w): p for w, p in raw.items()}
                    self._columns[(fam_id, upper.word)] = col
                    return col
        return None

    def _put_cached(self, fam_id: str, upper: CoxeterElement, col: Coords) -> None:
        with self._lock:
            self._columns[(fam_id, upper.word)] = col
            if self.store is not None:
                self.store.put_column(
                    fam_id, upper.word, {x.word: p for x, p in col.items()}
                )

    def kl_column(self, y: CoxeterElement) -> Coords:
        """Coordinates {x: h_{x,y}} of the self-dual basis element C_y."""
        fam = family_id("h", ())
        cached = self._get_cached(fam, y)
        if cached is not None:
            return cached
        if y.is_identity():
            col: Coords = {self.system.identity: ONE}
            self._put_cached(fam, y, col)
            return col
        s = min(y.left_descents())
        sy = y.times_gen(s, "left")
        base = self.kl_column(sy)
        # C_s * C_{sy} = (H_s + v) * C_{sy}
        acc = self.lmul_gen_std(base, s)
        for x, p in base.items():
            _add_into(acc, x, p * V)
        acc = _clean(acc)
        # remove the self-dual disturbance: mu(z, sy) C_z for z with sz < z
        for z in sorted(base, key=CoxeterElement.sort_key, reverse=True):
            if z == sy:
                continue
            mu = base[z].coeff(1)
            if mu and z.has_left_descent(s):
                for u, q in self.kl_column(z).items():
                    _add_into(acc, u, q * (-mu))
        col = _clean(acc)
        self._check_unitriangular(col, y, fam)
        self._put_cached(fam, y, col)
        return col

    def parabolic_column(
        self, fam: str, I: tuple[int, ...], y: CoxeterElement
    ) -> Coords:
        """Self-dual basis column of the parabolic module ('m' or 'n')."""
        I = self.system.check_names(I)
        if fam == "m":
            flavor = "spherical"
        elif fam == "n":
            flavor = "antispherical"
        else:
            raise ValidationError(f"unknown parabolic family {fam!r}")
        if not self._in_quotient(y, I):
            raise ValidationError(
                f"{format_word(y.word) or 'e'} is not a minimal coset representative for I={list(I)}"
            )
        fid = family_id(fam, I)
        cached = self._get_cached(fid, y)
        if cached is not None:
            return cached
        if y.is_identity():
            col: Coords = {self.system.identity: ONE}
            self._put_cached(fid, y, col)
            return col
        s = min(y.right_descents())
        ys = y.times_gen(s, "right")
        base = self.parabolic_column(fam, I, ys)
        # column * C_s = column * (H_s + v)
        acc = self.rmul_gen_par(base, s, I, flavor)
        for x, p in base.items():
            _add_into(acc, x, p * V)
        acc = _clean(acc)
        # greedy self-dual correction, largest length first: subtract the
        # bar-invariant completion of each coordinate not yet in v*Z[v]
        if acc:
            max_len = max(u.length for u in acc)
            for length in range(max_len, -1, -1):
                layer = sorted(
                    (u for u in list(acc) if u.length == length and u != y),
                    key=CoxeterElement.sort_key,
                )
                for u in layer:
                    p = acc.get(u)
                    if p is None or not p:
                        continue
                    down = {e: c for e, c in p if e <= 0}
                    if not down:
                        continue
                    # symmetric completion: c_0 + sum_{k>0} c_{-k} (v^k + v^-k)
                    comp: dict[int, int] = {0: down.get(0, 0)}
                    for e, c in down.items():
                        if e < 0:
                            comp[e] = comp.get(e, 0) + c
                            comp[-e] = comp.get(-e, 0) + c
                    q = LaurentPoly(comp)
                    for z, r in self.parabolic_column(fam, I, u).items():
                        _add_into(acc, z, r * (-q))
        col = _clean(acc)
        self._check_unitriangular(col, y, fid)
        self._put_cached(fid, y, col)
        return col

    def _check_unitriangular(self, col: Coords, y: CoxeterElement, fid: str) -> None:
        for x, p in col.items():
            if x == y:
                if p != ONE:
                    raise InternalInvariantError(
                        f"{fid}: diagonal entry at {y!r} is {p!r}, not 1"
                    )
            else:
                if x.length >= y.length or (p and p.min_degree() < 1):
                    raise InternalInvariantError(
                        f"{fid}: coordinate at {x!r} of column {y!r} is {p!r}, "
                        "violating strict v*Z[v] unitriangularity"
                    )

    def column(self, fam: str, I: tuple[int, ...], upper: CoxeterElement) -> Coords:
        """Uniform access to any direct or inverse family column."""
        if fam == "h":
            return self.kl_column(upper)
        if fam in ("m", "n"):
            return self.parabolic_column(fam, I, upper)
        if fam in INVERSE_FAMILIES:
            return self.inverse_column(fam[: -len("_inv")], I, upper)
        raise ValidationError(f"unknown family {fam!r}")

    def poly(self, fam: str, I: tuple[int, ...], lower: CoxeterElement, upper: CoxeterElement) -> LaurentPoly:
        """Single polynomial; absent column entries are zero."""
        return self.column(fam, I, upper).get(lower, ZERO)

    def mu(self, x: CoxeterElement, y: CoxeterElement) -> int:
        """Coefficient of v in h_{x,y}."""
        return self.kl_column(y).get(x, ZERO).coeff(1)

    def kl_basis(self, y: CoxeterElement) -> HeckeVector:
        return HeckeVector.make(self.system, ("std", ()), self.kl_column(y))

    # -- inverse families --------------------------------------------------------

    def _index_filter(self, fam: str, I: tuple[int, ...]) -> Callable[[CoxeterElement], bool]:
        if fam == "h":
            return lambda z: True
        return lambda z: self._in_quotient(z, I)

    def inverse_column(
        self,
        fam: str,
        I: tuple[int, ...],
        x: CoxeterElement,
        length_bound: int | None = None,
    ) -> Coords:
        """Inverse-family column {y: fam^{x,y}} by signed unitriangular inversion.

        All data is restricted to the (finite) Bruhat interval below x,
        intersected with the module's index set.  The inversion identity is
        re-verified before the column is returned.
        """
        if fam not in DIRECT_FAMILIES:
            raise ValidationError(f"unknown family {fam!r}")
        I = self.system.check_names(I)
        if length_bound is not None and length_bound < x.length:
            raise ValidationError("length_bound smaller than the length of x")
        fid = family_id(fam + "_inv", I)
        cached = self._get_cached(fid, x)
        if cached is not None:
            return cached
        keep = self._index_filter(fam, I)
        if not keep(x):
            raise ValidationError(
                f"{format_word(x.word) or 'e'} is not in the index set of {family_id(fam, I)}"
            )
        below = [z for z in self.system.enumerate_below(x) if keep(z)]
        inv: Coords = {x: ONE}
        for u in sorted(below, key=CoxeterElement.sort_key, reverse=True):
            if u == x:
                continue
            total = ZERO
            for z in below:
                if z == u or z.length <= u.length or z not in inv:
                    continue
                if not self.system.bruhat_leq(u, z):
                    continue
                p_uz = self.poly(fam, I, u, z)
                if p_uz:
                    sign = -1 if (u.length + z.length) % 2 else 1
                    total = total + p_uz * inv[z] * sign
            inv[u] = -total
        inv = _clean(inv)
        # re-verify the inversion identity on the whole interval
        for u in below:
            total = ZERO
            for z in below:
                if z in inv and self.system.bruhat_leq(u, z):
                    p_uz = self.poly(fam, I, u, z)
                    if p_uz:
                        sign = -1 if (u.length + z.length) % 2 else 1
                        total = total + p_uz * inv[z] * sign
            expected = ONE if u == x else ZERO
            if total != expected:
                raise InternalInvariantError(
                    f"{fid}: inversion identity fails at {u!r} below {x!r}"
                )
        self._put_cached(fid, x, inv)
        return inv

    # -- bar involution expansion (verification route) ----------------------------

    def bar_std_basis(self, x: CoxeterElement) -> Coords:
        """Coordinates of bar(H_x) in the standard basis."""
        with self._lock:
            cached = self._bar_std.get(x)
        if cached is not None:
            return cached
        if x.is_identity():
            out: Coords = {self.system.identity: ONE}
        else:
            s = x.word[0]
            rest = self.bar_std_basis(x.times_gen(s, "left"))
            out = self.lmul_gen_std(rest, s)
            for z, p in rest.items():
                _add_into(out, z, p * V_MINUS_VINV)
            out = _clean(out)
        with self._lock:
            self._bar_std[x] = out
        return out

    def bar_par_basis(self, fam: str, I: tuple[int, ...], x: CoxeterElement) -> Coords:
        """Coordinates of bar(basis vector at x) in a parabolic module."""
        flavor = "spherical" if fam == "m" else "antispherical"
        key = (fam, I, x.word)
        with self._lock:
            cached = self._bar_par.get(key)
        if cached is not None:
            return cached
        if x.is_identity():
            out: Coords = {self.system.identity: ONE}
        else:
            s = x.word[-1]
            rest = self.bar_par_basis(fam, I, x.times_gen(s, "right"))
            out = self.rmul_gen_par(rest, s, I, flavor)
            for z, p in rest.items():
                _add_into(out, z, p * V_MINUS_VINV)
            out = _clean(out)
        with self._lock:
            self._bar_par[key] = out
        return out

    def bar_expand(self, fam: str, I: tuple[int, ...], coords: Coords) -> Coords:
        """Expand bar(sum p_x B_x) in the same standard/module basis."""
        out: Coords = {}
        for x, p in coords.items():
            basis = (
                self.bar_std_basis(x) if fam == "h" else self.bar_par_basis(fam, I, x)
            )
            pb = p.bar()
            for z, q in basis.items():
                _add_into(out, z, q * pb)
        return _clean(out)

    def is_selfdual(self, fam: str, I: tuple[int, ...], coords: Coords) -> bool:
        """Check bar-invariance by direct expansion in the standard basis."""
        return self.bar_expand(fam, I, coords) == _clean(dict(coords))
