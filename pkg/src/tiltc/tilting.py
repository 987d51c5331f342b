"""Graded tilting multiplicities in minimal complexes of standards and simples.

Each setting (category O of a semisimple Lie algebra, affine Kac-Moody
category O at negative or positive level, quantum groups at a root of unity)
indexes its regular-linkage objects by twisted cosets x in w_J * (J-and-I
minimal, I-regular) representatives of one Coxeter system, and the graded
multiplicity of the tilting object T_y in the minimal complex C_min of a
standard object Delta_x or simple object L_x is a single inverse parabolic
Kazhdan-Lusztig polynomial, or a convolution of a direct family against an
inverse family:

  standard:  one inverse-family entry at indices twisted by the relevant
             longest elements;
  simple:    sum over z between y and x of bar(direct) * inverse, which is
             exactly the convolution pairing below.

All tables enforce: unit diagonal, support bounded by the Bruhat order
(reversed at positive level), exponent parity len(x) + len(y) mod 2, and
nonnegative coefficients.  Violations raise InternalInvariantError since they
would falsify the theory, not the input.

The positive-level simple-object formula defaults to the summand-dependent
index form, which satisfies all invariants; literal_text=True evaluates a
z-independent variant instead (historically printed form), with enforcement
disabled and the result flagged "literal-positive-text".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .coxeter import CoxeterElement, format_word
from .errors import InternalInvariantError, ValidationError
from .hecke import HeckeContext, PolyStore
from .laurent import ONE, ZERO, LaurentPoly
from .rootdata import LinkageDatum, format_weight

__all__ = [
    "MultiplicityTable",
    "CategoryO",
    "KacMoody",
    "Quantum",
    "convolution",
    "filtration_dims",
]


@dataclass(frozen=True)
class MultiplicityTable:
    """Graded multiplicities of tilting objects in one minimal complex.

    entries map the canonical word of y to the multiplicity polynomial of
    T_y; zero entries are kept only for explicitly requested y.  weights maps
    y words to weight-coordinate echoes when the setting has weights.
    """

    setting: str
    system: str
    I: tuple[int, ...]
    J: tuple[int, ...]
    x: tuple[int, ...]
    entries: tuple[tuple[tuple[int, ...], LaurentPoly], ...]
    weights: Mapping[tuple[int, ...], str] | None = None
    flags: tuple[str, ...] = ()
    truncated_at: int | None = None
    extra: Mapping[str, object] = field(default_factory=dict)

    def entry(self, y_word: tuple[int, ...]) -> LaurentPoly:
        for w, p in self.entries:
            if w == y_word:
                return p
        return ZERO

    def dims(self) -> tuple[int, int]:
        return filtration_dims(dict(self.entries))

    def to_json_obj(self) -> dict:
        nabla, delta = self.dims()
        obj: dict = {
            "setting": self.setting,
            "system": self.system,
            "I": list(self.I),
            "J": list(self.J),
            "x": format_word(self.x),
            "entries": [
                {
                    "y": format_word(w),
                    **(
                        {"weight": self.weights[w]}
                        if self.weights is not None and w in self.weights
                        else {}
                    ),
                    "poly": p.to_json_obj(),
                }
                for w, p in self.entries
            ],
            "dims": {"nabla": nabla, "delta": delta},
        }
        if self.flags:
            obj["flags"] = list(self.flags)
        if self.truncated_at is not None:
            obj["truncated_at"] = self.truncated_at
        obj.update(self.extra)
        return obj


def filtration_dims(entries: Mapping[tuple[int, ...], LaurentPoly]) -> tuple[int, int]:
    """(nabla, delta) filtration dimensions read off a multiplicity table.

    nabla is the largest exponent appearing, delta the negative of the
    smallest; a table concentrated in degree 0 has dims (0, 0) and delta = 0
    signals a complex concentrated in nonnegative degrees.
    """
    nabla = 0
    delta = 0
    for p in entries.values():
        if p:
            nabla = max(nabla, p.max_degree())
            delta = max(delta, -p.min_degree())
    return nabla, delta


def convolution(
    p: Mapping[object, LaurentPoly],
    p_prime: Mapping[object, LaurentPoly],
    length_of: Mapping[object, int],
    len_first: int,
    len_second: int,
) -> tuple[LaurentPoly, bool]:
    """Pairing sum_z bar(p_z) * p'_z with a parity certificate.

    When every p_z has parity len_first - len(z) and every p'_z parity
    len_second - len(z), no cancellation can occur between the terms of a
    fixed tilting multiplicity and the result is exact; otherwise the result
    is only an upper bound and exact=False is returned.
    """
    exact = True
    total = ZERO
    for z, pz in p.items():
        lz = length_of[z]
        if not pz.has_parity(len_first - lz):
            exact = False
        q = p_prime.get(z, ZERO)
        if q and not q.has_parity(len_second - lz):
            exact = False
        if pz and q:
            total = total + pz.bar() * q
    return total, exact


class _Setting:
    """Shared index-set plumbing for all four settings."""

    setting_name = "?"

    def __init__(self, hecke: HeckeContext, I: Iterable[int], J: Iterable[int]):
        self.hecke = hecke
        self.system = hecke.system
        self.I = self.system.check_names(I)
        self.J = self.system.check_names(J)
        if not self._parabolic_is_finite(self.J):
            raise ValidationError("the subset J must generate a finite parabolic")
        self.wJ = self.system.longest_element(self.J)
        # the longest element of W_I exists only for a finite parabolic; the
        # settings that twist by it validate that before use
        self.wI = (
            self.system.longest_element(self.I)
            if self._parabolic_is_finite(self.I)
            else None
        )

    def _parabolic_is_finite(self, subset: tuple[int, ...]) -> bool:
        return self.system.is_finite or len(subset) < self.system.rank

    # coset part u of an index element; setting-specific
    def _coset_part(self, x: CoxeterElement) -> CoxeterElement:
        return self.wJ * x

    def _element(self, word: Sequence[int], name: str) -> CoxeterElement:
        try:
            return self.system.element(word)
        except ValueError as exc:
            raise ValidationError(f"{name}: {exc}") from exc

    def _require_member(self, x: CoxeterElement, name: str) -> CoxeterElement:
        """Validate membership in the index set; returns the coset part u."""
        u = self._coset_part(x)
        if not (
            self.system.is_minimal(u, self.J, "left")
            and self.system.is_minimal(u, self.I, "right")
            and self.system.is_regular_coset_rep(u, self.J, self.I)
        ):
            raise ValidationError(
                f"{name} = {format_word(x.word) or 'e'} is not a dominant regular "
                f"representative for I={list(self.I)}, J={list(self.J)}"
            )
        return u

    def _enumerate_u_below(self, u_top: CoxeterElement) -> list[CoxeterElement]:
        """Index-set coset parts u below u_top (all settings: finite sets)."""
        out = []
        for u in self.system.enumerate_below(u_top):
            if (
                self.system.is_minimal(u, self.J, "left")
                and self.system.is_minimal(u, self.I, "right")
                and self.system.is_regular_coset_rep(u, self.J, self.I)
            ):
                out.append(u)
        return out

    # -- table assembly with invariant enforcement ------------------------------

    def _finalize(
        self,
        x: CoxeterElement,
        rows: dict[CoxeterElement, LaurentPoly],
        explicit_y: CoxeterElement | None,
        weights: Mapping[tuple[int, ...], str] | None = None,
        flags: tuple[str, ...] = (),
        truncated_at: int | None = None,
        extra: Mapping[str, object] | None = None,
        enforce: bool = True,
    ) -> MultiplicityTable:
        if enforce:
            for y, p in rows.items():
                if y == x:
                    if p != ONE:
                        raise InternalInvariantError(
                            f"diagonal multiplicity at x = {x!r} is {p!r}, not 1"
                        )
                if p and not p.has_parity(x.length + y.length):
                    raise InternalInvariantError(
                        f"multiplicity at y = {y!r} violates exponent parity"
                    )
                if not p.is_nonneg():
                    raise InternalInvariantError(
                        f"multiplicity at y = {y!r} has a negative coefficient"
                    )
        items = {
            y.word: p
            for y, p in rows.items()
            if p or (explicit_y is not None and y == explicit_y)
        }
        entries = tuple(sorted(items.items(), key=lambda t: (len(t[0]), t[0])))
        used_weights = None
        if weights is not None:
            used_weights = {w: weights[w] for w, _ in entries if w in weights}
        return MultiplicityTable(
            setting=self.setting_name,
            system=self.system.tag,
            I=self.I,
            J=self.J,
            x=x.word,
            entries=entries,
            weights=used_weights,
            flags=flags,
            truncated_at=truncated_at,
            extra=dict(extra or {}),
        )


class _NegativeLike(_Setting):
    """Common formulas for category O and negative-level Kac-Moody.

    Index elements are x = w_J u with u minimal in W_J\\W/W_I and I-regular.
    The standard multiplicity is the inverse spherical entry at the inverted
    coset parts; the simple multiplicity convolves the bar of the direct
    antispherical family against the inverse spherical family.
    """

    cross_check = False

    def standard_table(
        self, x_word: Sequence[int], y_word: Sequence[int] | None = None, max_len: int | None = None
    ) -> MultiplicityTable:
        x = self._element(x_word, "x")
        u_x = self._require_member(x, "x")
        col = self.hecke.inverse_column("m", self.I, u_x.inverse())
        if y_word is not None:
            y = self._element(y_word, "y")
            targets = [(y, self._require_member(y, "y"))]
            explicit = y
        else:
            targets = [(self.wJ * u, u) for u in self._enumerate_u_below(u_x)]
            explicit = None
        rows: dict[CoxeterElement, LaurentPoly] = {}
        for y, u_y in targets:
            p = col.get(u_y.inverse(), ZERO)
            if p and self.cross_check:
                self._check_antispherical_form(x, y, p)
            rows[y] = p
        return self._finalize(x, rows, explicit)

    def _check_antispherical_form(self, x, y, expected) -> None:
        """Finite-type cross-check of the standard formula.

        The same multiplicity must equal the direct antispherical polynomial
        at indices twisted by w_I on the left and w_J w_0 on the right.
        """
        w0 = self.system.longest_element()
        a = self.wI * x.inverse() * self.wJ * w0
        b = self.wI * y.inverse() * self.wJ * w0
        try:
            got = self.hecke.parabolic_column("n", self.I, b).get(a, ZERO)
        except ValidationError as exc:
            raise InternalInvariantError(
                f"antispherical twin index left the module at x={x!r}, y={y!r}: {exc}"
            ) from exc
        if got != expected:
            raise InternalInvariantError(
                "standard multiplicity disagrees with its antispherical twin "
                f"at x={x!r}, y={y!r}: {expected!r} vs {got!r}"
            )

    def simple_table(
        self, x_word: Sequence[int], y_word: Sequence[int] | None = None, max_len: int | None = None
    ) -> MultiplicityTable:
        x = self._element(x_word, "x")
        u_x = self._require_member(x, "x")
        n_col = self.hecke.parabolic_column("n", self.I, x.inverse())
        us = self._enumerate_u_below(u_x)
        zs = [self.wJ * u for u in us]
        direct = {z: n_col.get(z.inverse(), ZERO) for z in zs}
        inv_cols = {
            z: self.hecke.inverse_column("m", self.I, u.inverse())
            for z, u in zip(zs, us)
        }
        if y_word is not None:
            y = self._element(y_word, "y")
            targets = [(y, self._require_member(y, "y"))]
            explicit = y
        else:
            targets = [(z, u) for z, u in zip(zs, us)]
            explicit = None
        rows: dict[CoxeterElement, LaurentPoly] = {}
        for y, u_y in targets:
            inv = {z: inv_cols[z].get(u_y.inverse(), ZERO) for z in zs}
            total, exact = convolution(
                direct,
                inv,
                {z: z.length for z in zs},
                x.length,
                y.length,
            )
            if not exact:
                raise InternalInvariantError(
                    f"parity certificate failed in the simple-object formula at y={y!r}"
                )
            rows[y] = total
        return self._finalize(x, rows, explicit)


class CategoryO(_NegativeLike):
    """Regular-block category O of a finite Weyl type."""

    setting_name = "O"
    cross_check = True

    def __init__(self, hecke: HeckeContext, I: Iterable[int], J: Iterable[int]):
        super().__init__(hecke, I, J)
        if not self.system.is_finite:
            raise ValidationError("category O tables need a finite Weyl type")


class KacMoody(_NegativeLike):
    """Affine Kac-Moody category O at negative or positive level."""

    def __init__(
        self, hecke: HeckeContext, I: Iterable[int], J: Iterable[int], level: str
    ):
        if level not in ("neg", "pos"):
            raise ValidationError(f"level must be 'neg' or 'pos', not {level!r}")
        self.level = level
        super().__init__(hecke, I, J)
        if self.system.is_finite:
            raise ValidationError("Kac-Moody tables need an affine type")
        if level == "pos" and self.wI is None:
            raise ValidationError(
                "the subset I must generate a finite parabolic at positive level"
            )

    @property
    def setting_name(self) -> str:  # type: ignore[override]
        return "KM-" if self.level == "neg" else "KM+"

    # positive level: index elements are x = u w_I with the same u conditions
    def _coset_part(self, x: CoxeterElement) -> CoxeterElement:
        if self.level == "neg":
            return self.wJ * x
        return x * self.wI

    def standard_table(self, x_word, y_word=None, max_len: int | None = None):
        if self.level == "neg":
            return super().standard_table(x_word, y_word)
        x = self._element(x_word, "x")
        u_x = self._require_member(x, "x")
        a = u_x.inverse() * self.wJ
        if y_word is not None:
            y = self._element(y_word, "y")
            targets = [(y, self._require_member(y, "y"))]
            explicit, truncated = y, None
        else:
            targets, truncated = self._targets_above(u_x, max_len)
            explicit = None
        rows = {}
        for y, u_y in targets:
            col = self.hecke.parabolic_column("n", self.I, u_y.inverse() * self.wJ)
            rows[y] = col.get(a, ZERO)
        return self._finalize(x, rows, explicit, truncated_at=truncated)

    def _targets_above(self, u_x: CoxeterElement, max_len: int | None):
        """Positive level tables run up the order; enumeration must truncate."""
        if max_len is None:
            raise ValidationError(
                "positive-level tables over all y need max_len (support is upward)"
            )
        reps, truncated = self.system.regular_double_coset_reps(
            self.J, self.I, max_len=max(0, max_len - self.wI.length)
        )
        out = [
            (u * self.wI, u)
            for u in reps
            if self.system.bruhat_leq(u_x, u)
        ]
        return out, (max_len if truncated else None)

    def simple_table(self, x_word, y_word=None, max_len: int | None = None, literal_text: bool = False):
        if self.level == "neg":
            if literal_text:
                raise ValidationError("literal_text applies to positive level only")
            return super().simple_table(x_word, y_word)
        x = self._element(x_word, "x")
        u_x = self._require_member(x, "x")
        if y_word is not None:
            y = self._element(y_word, "y")
            targets = [(y, self._require_member(y, "y"))]
            explicit, truncated = y, None
        else:
            targets, truncated = self._targets_above(u_x, max_len)
            explicit = None
        flags: tuple[str, ...] = ()
        rows = {}
        if literal_text:
            # z-independent second factor, as printed; needs its own cutoff
            if max_len is None:
                raise ValidationError("literal_text needs max_len for its z-sum")
            reps, _ = self.system.regular_double_coset_reps(
                self.J, self.I, max_len=max_len
            )
            z_parts = [u for u in reps if self.system.bruhat_leq(u_x, u)]
            flags = ("literal-positive-text",)
            truncated = max_len
            for y, u_y in targets:
                n_fixed = self.hecke.parabolic_column(
                    "n", self.I, u_y.inverse() * self.wJ
                ).get(u_x.inverse() * self.wJ, ZERO)
                total = ZERO
                for u_z in z_parts:
                    m = self.hecke.inverse_column("m", self.I, u_z.inverse()).get(
                        u_x.inverse(), ZERO
                    )
                    if m and n_fixed:
                        total = total + m.bar() * n_fixed
                rows[y] = total
        else:
            for y, u_y in targets:
                zs_u = [
                    u
                    for u in self._enumerate_u_below(u_y)
                    if self.system.bruhat_leq(u_x, u)
                ]
                zs = [u * self.wI for u in zs_u]
                direct = {}
                col_y = self.hecke.parabolic_column(
                    "n", self.I, u_y.inverse() * self.wJ
                )
                for z, u_z in zip(zs, zs_u):
                    direct[z] = col_y.get(u_z.inverse() * self.wJ, ZERO)
                inv = {}
                for z, u_z in zip(zs, zs_u):
                    inv[z] = self.hecke.inverse_column(
                        "m", self.I, u_z.inverse()
                    ).get(u_x.inverse(), ZERO)
                # pairing with the roles mirrored: bar acts on the inverse factor
                total = ZERO
                for z in zs:
                    if inv[z] and direct[z]:
                        total = total + inv[z].bar() * direct[z]
                    if inv[z] and not inv[z].has_parity(x.length + z.length):
                        raise InternalInvariantError("parity certificate failed")
                    if direct[z] and not direct[z].has_parity(y.length + z.length):
                        raise InternalInvariantError("parity certificate failed")
                rows[y] = total
        return self._finalize(
            x,
            rows,
            explicit,
            flags=flags,
            truncated_at=truncated,
            enforce=not literal_text,
        )


class Quantum(_Setting):
    """Quantum group at a root of unity: tilting modules over one linkage class.

    Constructed from a finite type and the order l of the root of unity; the
    Coxeter system is the (possibly dual) affinization from the linkage datum.
    Queries take either an index word x or a dominant weight.
    """

    setting_name = "quantum"

    def __init__(
        self,
        datum: LinkageDatum,
        I: Iterable[int],
        store: PolyStore | None = None,
        hecke: HeckeContext | None = None,
    ):
        self.datum = datum
        self.finite_names = tuple(range(1, datum.roots.rank + 1))
        hk = hecke if hecke is not None else HeckeContext(datum.coxeter, store)
        super().__init__(hk, I, self.finite_names)
        self.wS = self.wJ
        self.lam0: tuple[int, ...] | None = None

    @classmethod
    def from_weight(
        cls, type_tag: str, ell: int, weight: Sequence[int], store: PolyStore | None = None
    ) -> tuple["Quantum", CoxeterElement]:
        """Build the setting of a dominant weight; returns it and the index x."""
        datum = LinkageDatum(type_tag, ell)
        if not datum.is_dominant(weight):
            raise ValidationError(
                f"weight {format_weight(weight)} is not dominant"
            )
        x, lam0, I = datum.alcove_normalize(weight)
        setting = cls(datum, I, store=store)
        setting.lam0 = tuple(lam0)
        try:
            setting._require_member(x, "x")
        except ValidationError as exc:
            raise ValidationError(
                f"weight {format_weight(weight)} is not in a regular linkage "
                f"position: {exc}"
            ) from exc
        return setting, x

    def _coset_part(self, x: CoxeterElement) -> CoxeterElement:
        return x

    def _weight_echo(self, words: Iterable[tuple[int, ...]]):
        if self.lam0 is None:
            return None
        return {
            w: format_weight(self.datum.dot_word(w, self.lam0)) for w in words
        }

    def _lambda_extra(self, x: CoxeterElement) -> dict:
        if self.lam0 is None:
            return {}
        return {
            "lambda": format_weight(self.datum.dot_word(x.word, self.lam0)),
            "lambda0": format_weight(self.lam0),
            "stabilizer": list(self.I),
        }

    def standard_table(self, x_word, y_word=None, max_len: int | None = None):
        x = self._element(x_word, "x")
        self._require_member(x, "x")
        col = self.hecke.inverse_column("m", self.I, x.inverse())
        if y_word is not None:
            y = self._element(y_word, "y")
            self._require_member(y, "y")
            targets = [y]
            explicit = y
        else:
            targets = self._enumerate_u_below(x)
            explicit = None
        rows = {y: col.get(y.inverse(), ZERO) for y in targets}
        return self._finalize(
            x,
            rows,
            explicit,
            weights=self._weight_echo([y.word for y in targets]),
            extra=self._lambda_extra(x),
        )

    def simple_table(self, x_word, y_word=None, max_len: int | None = None):
        x = self._element(x_word, "x")
        self._require_member(x, "x")
        n_col = self.hecke.parabolic_column("n", self.I, x.inverse() * self.wS)
        zs = self._enumerate_u_below(x)
        direct = {z: n_col.get(z.inverse() * self.wS, ZERO) for z in zs}
        if y_word is not None:
            y = self._element(y_word, "y")
            self._require_member(y, "y")
            targets = [y]
            explicit = y
        else:
            targets = zs
            explicit = None
        rows = {}
        for y in targets:
            inv = {
                z: self.hecke.inverse_column("m", self.I, z.inverse()).get(
                    y.inverse(), ZERO
                )
                for z in zs
            }
            total, exact = convolution(
                direct, inv, {z: z.length for z in zs}, x.length, y.length
            )
            if not exact:
                raise InternalInvariantError(
                    f"parity certificate failed in the simple-object formula at y={y!r}"
                )
            rows[y] = total
        return self._finalize(
            x,
            rows,
            explicit,
            weights=self._weight_echo([y.word for y in targets]),
            extra=self._lambda_extra(x),
        )
