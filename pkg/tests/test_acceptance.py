"""Acceptance gate: nine criteria, one test (and one pass/fail line) each.

Every criterion re-states its property independently of the library's
internal self-checks wherever a second route exists, and is timed against
a pinned wall-clock bound.  Run with ``pytest -v tests/test_acceptance.py``
to see one line per criterion.
"""

import json
import time
from contextlib import contextmanager
from itertools import combinations

import pytest

from tiltc.cli import main as cli_main
from tiltc.coxeter import CoxeterElement, CoxeterSystem
from tiltc.errors import ValidationError
from tiltc.hecke import HeckeContext
from tiltc.laurent import ONE, ZERO, LaurentPoly
from tiltc.mincpx import (
    SUITE_NAMES,
    TiltingCategory,
    cmin_module,
    load_block,
    verify_block,
)
from tiltc.mincpx.quiver import ext_dims, hom_basis
from tiltc.tilting import CategoryO, KacMoody, Quantum


@contextmanager
def criterion(n: int, description: str, bound_s: float):
    t0 = time.perf_counter()
    yield
    dt = time.perf_counter() - t0
    assert dt < bound_s, f"criterion {n} exceeded its {bound_s}s bound: {dt:.2f}s"
    print(f"criterion {n} ({description}): pass in {dt:.2f}s < {bound_s:.0f}s")


def ball(system: CoxeterSystem, max_len: int) -> list[CoxeterElement]:
    """All elements of length <= max_len, sorted by (length, word)."""
    gens = {s: system.element((s,)) for s in system.names}
    seen = {system.element(())}
    frontier = list(seen)
    for _ in range(max_len):
        new = []
        for w in frontier:
            for s in system.names:
                z = w * gens[s]
                if z.length > w.length and z not in seen:
                    seen.add(z)
                    new.append(z)
        frontier = new
    return sorted(seen, key=CoxeterElement.sort_key)


def minimal_reps(system, elements, I):
    return [w for w in elements if not any(w.has_left_descent(t) for t in I)]


def test_criterion_1_base_change_and_self_duality():
    """Ordinary columns: exhaustive small-rank values and bar self-duality."""
    with criterion(1, "ordinary columns and bar involution", 5.0):
        a2 = HeckeContext(CoxeterSystem.from_type("A2"))
        w0 = a2.system.longest_element()
        group = a2.system.enumerate_below(w0)
        assert len(group) == 6
        for y in group:
            col = a2.kl_column(y)
            for x in group:
                if a2.system.bruhat_leq(x, y):
                    # every interval in rank 2 is trivial: one monomial
                    assert col.get(x) == LaurentPoly.v(y.length - x.length)
                else:
                    assert col.get(x, ZERO) == ZERO
        a3 = HeckeContext(CoxeterSystem.from_type("A3"))
        x = a3.system.element((2,))
        y = a3.system.element((2, 1, 3, 2))
        assert a3.poly("h", (), x, y) == LaurentPoly.v(1) + LaurentPoly.v(3)
        # self-dual basis columns: bar fixes every C_y, checked through the
        # independent bar-expansion route
        for y in a3.system.enumerate_below(a3.system.longest_element()):
            assert a3.is_selfdual("h", (), a3.kl_column(y))


def _check_inversion(hecke, fam, I, x):
    """Independent restatement of the signed inversion identity below x."""
    keep = (lambda z: True) if fam == "h" else (
        lambda z: not any(z.has_left_descent(t) for t in I)
    )
    below = [z for z in hecke.system.enumerate_below(x) if keep(z)]
    inv = hecke.inverse_column(fam, I, x)
    for u in below:
        total = ZERO
        for z in below:
            if z in inv and hecke.system.bruhat_leq(u, z):
                p = hecke.poly(fam, I, u, z)
                if p:
                    sign = -1 if (u.length + z.length) % 2 else 1
                    total = total + p * inv[z] * sign
        assert total == (ONE if u == x else ZERO), (fam, I, x.word, u.word)


def test_criterion_2_inversion_identities():
    """Signed inverses against direct columns, ordinary and parabolic."""
    with criterion(2, "inversion identities", 30.0):
        a3 = HeckeContext(CoxeterSystem.from_type("A3"))
        for x in a3.system.enumerate_below(a3.system.longest_element()):
            _check_inversion(a3, "h", (), x)
        aff1 = HeckeContext(CoxeterSystem.from_type("affA1"))
        for x in ball(aff1.system, 8):
            _check_inversion(aff1, "h", (), x)
        for tag, max_len in (("affA1", 6), ("affA2", 6)):
            hecke = HeckeContext(CoxeterSystem.from_type(tag))
            elements = ball(hecke.system, max_len)
            for I in [(s,) for s in hecke.system.names]:
                for fam in ("m", "n"):
                    for x in minimal_reps(hecke.system, elements, I):
                        _check_inversion(hecke, fam, I, x)


def test_criterion_3_longest_element_twist():
    """Inverse ordinary entries match direct entries at w0-twisted indices."""
    with criterion(3, "inverse equals w0-twisted direct", 10.0):
        for tag in ("A2", "A3", "B2"):
            hecke = HeckeContext(CoxeterSystem.from_type(tag))
            w0 = hecke.system.longest_element()
            for x in hecke.system.enumerate_below(w0):
                inv = hecke.inverse_column("h", (), x)
                for y, p in inv.items():
                    assert p == hecke.poly("h", (), w0 * x, w0 * y)


def test_criterion_4_antispherical_comparisons():
    """Inverse ordinary = inverse antispherical on minimal reps, and the
    finite twisted spherical/antispherical identity behind the tables."""
    with criterion(4, "antispherical comparison identities", 60.0):
        # (a) affine: restricted to the antispherical index set the inverse
        # ordinary and inverse antispherical columns coincide
        for tag in ("affA1", "affA2"):
            hecke = HeckeContext(CoxeterSystem.from_type(tag))
            I = tuple(s for s in hecke.system.names if s != 0)
            elements = ball(hecke.system, 6)
            reps = minimal_reps(hecke.system, elements, I)
            for x in reps:
                hcol = hecke.inverse_column("h", (), x)
                ncol = hecke.inverse_column("n", I, x)
                for y in set(hcol) | set(ncol):
                    if any(y.has_left_descent(t) for t in I):
                        continue
                    assert hcol.get(y, ZERO) == ncol.get(y, ZERO), (tag, x.word, y.word)
        # (b) finite: every standard table entry is cross-checked internally
        # against the twisted direct antispherical polynomial; building the
        # full grid with the check active exercises the identity everywhere
        system = CoxeterSystem.from_type("A3")
        hecke = HeckeContext(system)
        subsets = [()] + [(s,) for s in system.names]
        elements = system.enumerate_below(system.longest_element())
        checked = 0
        for I in subsets:
            for J in subsets:
                setting = CategoryO(hecke, I, J)
                assert setting.cross_check
                for x in elements:
                    try:
                        table = setting.standard_table(x.word)
                    except ValidationError:
                        continue
                    checked += len(table.entries)
        assert checked > 400


def test_criterion_5_positivity_and_parity_grid():
    """Multiplicity tables across the small grid: unit diagonal, nonnegative
    integer coefficients, exponent parity."""
    with criterion(5, "positivity and parity grid", 120.0):
        cases = [
            ("A2", False, 99),
            ("A3", False, 99),
            ("B2", False, 99),
            ("affA1", True, 6),
            ("affA2", True, 6),
        ]
        total = 0
        for tag, affine, max_len in cases:
            system = CoxeterSystem.from_type(tag)
            hecke = HeckeContext(system)
            elements = ball(system, min(max_len, 24))
            subsets = [()] + [(s,) for s in system.names]
            for I in subsets:
                for J in subsets:
                    try:
                        setting = (
                            KacMoody(hecke, I, J, "neg")
                            if affine
                            else CategoryO(hecke, I, J)
                        )
                    except ValidationError:
                        continue
                    for x in elements:
                        for maker in (setting.standard_table, setting.simple_table):
                            try:
                                table = maker(x.word)
                            except ValidationError:
                                continue
                            assert table.entry(x.word) == ONE
                            for y_word, p in table.entries:
                                assert p.is_nonneg()
                                assert p.has_parity(len(x.word) + len(y_word))
                                total += 1
        assert total > 5000


def test_criterion_6_oracle_matches_formulas():
    """Brute-force minimal complexes agree with the closed formulas entry by
    entry for every standard and simple object of the realized block."""
    with criterion(6, "homological oracle equals formulas", 10.0):
        block = load_block("sl2")
        tcat = TiltingCategory(block)
        setting = CategoryO(
            HeckeContext(CoxeterSystem.from_type(block.system)), I=(), J=()
        )
        from tiltc.coxeter import parse_word

        word_of = {lab: parse_word(block.words[lab]) for lab in block.labels}
        label_of = {w: lab for lab, w in word_of.items()}
        for role, maker in (
            ("std", setting.standard_table),
            ("simple", setting.simple_table),
        ):
            for lab in block.labels:
                cpx, _ = cmin_module(tcat, block.module(role, lab))
                counts = cpx.label_counts()
                table = maker(word_of[lab])
                from_formula: dict[int, dict[str, int]] = {}
                for y_word, p in table.entries:
                    for k, c in p.terms:
                        assert c > 0
                        from_formula.setdefault(k, {})[label_of[y_word]] = c
                assert from_formula == counts, (role, lab)


def test_criterion_7_cone_lemma_suite():
    """Structural lemmas about the minimal complexes: diagonal summand,
    triangle bounds, gapless support, scan-order uniqueness, support equal
    to homological dimensions."""
    with criterion(7, "cone lemma suite", 10.0):
        results = verify_block(load_block("sl2"))
        names = [name for name, _ in results]
        assert names == list(SUITE_NAMES)
        for want in (
            "elimination uniqueness",
            "summand bounds",
            "triangle bounds",
            "no gaps",
            "homological dimensions",
        ):
            assert want in names


def test_criterion_8_highest_weight_axioms():
    """Exact-rational checks of the highest-weight axioms with extension
    vanishing up to degree four."""
    with criterion(8, "highest-weight axioms", 5.0):
        block = load_block("sl2")
        labels = block.labels
        for a in labels:
            std_a = block.module("std", a)
            assert len(hom_basis(std_a, std_a)) == 1
            for b in labels:
                costd_b = block.module("costd", b)
                e = ext_dims(std_a, costd_b, 4)
                assert e[0] == (1 if a == b else 0)
                assert e[1:] == [0, 0, 0, 0]
                assert ext_dims(std_a, block.module("tilt", b), 1)[1] == 0
                assert ext_dims(block.module("tilt", b), costd_b, 1)[1] == 0
        # one honest nonsplit extension must exist in the block
        assert ext_dims(
            block.module("simple", "s"), block.module("simple", "e"), 1
        )[1] == 1


def test_criterion_9_byte_deterministic_cli(tmp_path, capsys, monkeypatch):
    """Cold-cache, warm-cache and cache-free runs print identical bytes."""
    monkeypatch.delenv("TILTC_CACHE", raising=False)
    with criterion(9, "byte-deterministic command line", 60.0):
        cache = str(tmp_path / "store")
        commands = [
            ("kl", "--type", "A3", "--y", "2 1 3 2"),
            ("kl", "--type", "A3", "--x", "2", "--y", "2 1 3 2"),
            ("kl", "--type", "affA1", "--x", "0 1 0", "--inverse", "--format", "json"),
            ("tilt", "O", "--type", "A1", "--x", "1", "--simple", "--format", "json"),
            ("tilt", "km", "--type", "affA1", "--x", "0 1", "--simple"),
            (
                "tilt", "quantum", "--type", "A1", "--ell", "5",
                "--weight", "7", "--simple", "--format", "json",
            ),
        ]
        for args in commands:
            runs = []
            for extra in (
                ("--cache-path", cache),  # cold
                ("--cache-path", cache),  # warm
                ("--no-cache",),
            ):
                rc = cli_main([*args, *extra])
                out, err = capsys.readouterr()
                assert rc == 0 and err == ""
                runs.append(out)
            assert runs[0] == runs[1] == runs[2], args
            if args[-1] == "json":
                json.loads(runs[0])
