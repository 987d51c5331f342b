"""End-to-end tests of the command line interface: pinned outputs, exit
codes, formats, cache behavior, and byte determinism."""

import json

import pytest

from tiltc.cli import main


@pytest.fixture(autouse=True)
def no_ambient_cache(monkeypatch):
    monkeypatch.delenv("TILTC_CACHE", raising=False)


def run(capsys, *args):
    rc = main(list(args))
    out, err = capsys.readouterr()
    return rc, out, err


class TestKl:
    def test_pinned_single_polynomial(self, capsys):
        rc, out, err = run(capsys, "kl", "--type", "A3", "--x", "2", "--y", "2 1 3 2")
        assert rc == 0 and err == ""
        assert out == "v + v^3\n"

    def test_full_column_text(self, capsys):
        rc, out, _ = run(capsys, "kl", "--type", "A2", "--y", "1 2 1")
        assert rc == 0
        assert out.splitlines() == [
            "e\t1 2 1\tv^3",
            "1\t1 2 1\tv^2",
            "2\t1 2 1\tv^2",
            "1 2\t1 2 1\tv",
            "2 1\t1 2 1\tv",
            "1 2 1\t1 2 1\t1",
        ]

    def test_inverse_column(self, capsys):
        rc, out, _ = run(
            capsys, "kl", "--type", "A2", "--x", "1 2 1", "--inverse", "--format", "tsv"
        )
        assert rc == 0
        lines = out.splitlines()
        assert lines[0] == "1 2 1\te\tv^3"
        assert lines[-1] == "1 2 1\t1 2 1\t1"
        assert len(lines) == 6

    def test_parabolic_antispherical(self, capsys):
        rc, out, _ = run(
            capsys, "kl", "--type", "affA1",
            "--parabolic", "1", "--flavor", "antispherical", "--y", "0 1 0",
        )
        assert rc == 0
        assert out.splitlines() == ["0 1\t0 1 0\tv", "0 1 0\t0 1 0\t1"]

    def test_json_format(self, capsys):
        rc, out, _ = run(
            capsys, "kl", "--type", "A1", "--x", "e", "--y", "1", "--format", "json"
        )
        assert rc == 0
        obj = json.loads(out)
        assert obj["system"] == "A1"
        assert obj["family"] == "h"
        assert obj["records"] == [{"x": "", "y": "1", "poly": {"1": 1}}]

    def test_zero_polynomial_when_not_below(self, capsys):
        rc, out, _ = run(capsys, "kl", "--type", "A2", "--x", "1 2", "--y", "1")
        assert rc == 0
        assert out == "0\n"

    def test_jobs_match_serial(self, capsys):
        rc1, out1, _ = run(capsys, "kl", "--type", "A2", "--y", "1 2", "--y", "2 1")
        rc4, out4, _ = run(
            capsys, "kl", "--type", "A2", "--y", "1 2", "--y", "2 1", "--jobs", "4"
        )
        assert rc1 == rc4 == 0
        assert out1 == out4

    def test_usage_errors(self, capsys):
        rc, _, err = run(capsys, "kl", "--type", "A2")
        assert rc == 1 and err.startswith("error: usage:")
        rc, _, err = run(capsys, "kl", "--type", "A2", "--parabolic", "1", "--y", "1")
        assert rc == 1 and "--flavor" in err
        rc, _, err = run(capsys, "kl", "--type", "A2", "--y", "1", "--jobs", "0")
        assert rc == 1

    def test_invalid_input(self, capsys):
        rc, _, err = run(capsys, "kl", "--type", "Q9", "--y", "1")
        assert rc == 2 and err.startswith("error: invalid-input:")
        rc, _, err = run(capsys, "kl", "--type", "A2", "--y", "7")
        assert rc == 2


class TestTilt:
    def test_o_simple_json_pinned(self, capsys):
        rc, out, _ = run(
            capsys, "tilt", "O", "--type", "A1", "--x", "1", "--simple",
            "--format", "json",
        )
        assert rc == 0
        obj = json.loads(out)
        assert obj["setting"] == "O"
        assert obj["dims"] == {"nabla": 1, "delta": 1}
        assert obj["entries"] == [
            {"y": "", "poly": {"-1": 1, "1": 1}},
            {"y": "1", "poly": {"0": 1}},
        ]

    def test_o_standard_text(self, capsys):
        rc, out, _ = run(capsys, "tilt", "O", "--type", "A1", "--x", "1")
        assert rc == 0
        assert out.splitlines() == ["e\tv", "1\t1", "# dims\tnabla=1\tdelta=0"]

    def test_o_identity_index(self, capsys):
        rc, out, _ = run(capsys, "tilt", "O", "--type", "A2", "--x", "e")
        assert rc == 0
        assert out.splitlines()[0] == "e\t1"

    def test_km_negative_pinned(self, capsys):
        rc, out, _ = run(
            capsys, "tilt", "km", "--type", "affA1", "--x", "0 1", "--simple"
        )
        assert rc == 0
        assert out.splitlines() == [
            "e\tv^-2 + 2 + v^2",
            "0\tv^-1 + v",
            "1\tv^-1 + v",
            "0 1\t1",
            "# dims\tnabla=2\tdelta=2",
        ]

    def test_km_positive_pinned(self, capsys):
        rc, out, _ = run(
            capsys, "tilt", "km", "--type", "affA1", "--I", "1",
            "--level", "pos", "--x", "1", "--max-length", "3",
        )
        assert rc == 0
        lines = out.splitlines()
        assert "1\t1" in lines and "0 1\tv" in lines

    def test_km_rejects_finite_type(self, capsys):
        rc, _, err = run(capsys, "tilt", "km", "--type", "A2", "--x", "1")
        assert rc == 2 and "affine" in err

    def test_quantum_from_weight(self, capsys):
        rc, out, _ = run(
            capsys, "tilt", "quantum", "--type", "A1", "--ell", "5",
            "--weight", "7", "--simple",
        )
        assert rc == 0
        assert out.splitlines() == [
            "e\tv^-1 + v\t1",
            "0\t1\t7",
            "# dims\tnabla=1\tdelta=1",
        ]

    def test_quantum_wall_weight(self, capsys):
        rc, out, _ = run(
            capsys, "tilt", "quantum", "--type", "A1", "--ell", "5", "--weight", "4"
        )
        assert rc == 0
        assert out.splitlines()[0] == "e\t1\t4"

    def test_quantum_usage(self, capsys):
        rc, _, err = run(capsys, "tilt", "quantum", "--type", "A1", "--ell", "5")
        assert rc == 1
        rc, _, err = run(
            capsys, "tilt", "quantum", "--type", "A1", "--ell", "5",
            "--weight", "7", "--x", "0",
        )
        assert rc == 1

    def test_quantum_non_dominant_weight(self, capsys):
        rc, _, err = run(
            capsys, "tilt", "quantum", "--type", "A1", "--ell", "5", "--weight", "-3"
        )
        assert rc == 2 and "dominant" in err


class TestOracle:
    def test_verify_all_suites(self, capsys):
        rc, out, err = run(capsys, "oracle", "verify", "--block", "sl2")
        assert rc == 0 and err == ""
        lines = out.splitlines()
        assert len([ln for ln in lines if ln.startswith("ok ")]) == 9
        assert lines[-1] == "all 9 invariant suites pass"

    def test_unknown_block(self, capsys):
        rc, _, err = run(capsys, "oracle", "verify", "--block", "nope")
        assert rc == 2 and "no bundled block" in err

    def test_internal_failure_maps_to_exit_3(self, capsys, monkeypatch):
        import tiltc.mincpx as mincpx
        from tiltc.errors import InternalInvariantError

        def boom(block):
            raise InternalInvariantError("synthetic violation")

        monkeypatch.setattr(mincpx, "verify_block", boom)
        rc, _, err = run(capsys, "oracle", "verify", "--block", "sl2")
        assert rc == 3
        assert err.startswith("error: internal-check:")


class TestCache:
    def test_roundtrip_and_byte_determinism(self, capsys, tmp_path):
        cache = str(tmp_path / "store")
        args = ("kl", "--type", "A3", "--y", "2 1 3 2")
        rc, cold, _ = run(capsys, *args, "--cache-path", cache)
        assert rc == 0
        rc, warm, _ = run(capsys, *args, "--cache-path", cache)
        assert rc == 0
        rc, bare, _ = run(capsys, *args, "--no-cache")
        assert rc == 0
        assert cold == warm == bare
        assert (tmp_path / "store" / "A3.jsonl").exists()

    def test_env_variable_location(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("TILTC_CACHE", str(tmp_path))
        rc, _, _ = run(capsys, "kl", "--type", "A1", "--y", "1")
        assert rc == 0
        assert (tmp_path / "A1.jsonl").exists()
        rc, out, _ = run(capsys, "cache", "info")
        assert rc == 0 and "A1.jsonl" in out

    def test_info_and_clear(self, capsys, tmp_path):
        cache = str(tmp_path)
        run(capsys, "kl", "--type", "A1", "--y", "1", "--cache-path", cache)
        rc, out, _ = run(capsys, "cache", "info", "--path", cache)
        assert rc == 0 and "A1.jsonl" in out
        rc, out, _ = run(capsys, "cache", "clear", "--path", cache)
        assert rc == 0 and out == "removed 1 cache file(s)\n"
        rc, out, _ = run(capsys, "cache", "info", "--path", cache)
        assert "(no column files)" in out

    def test_info_disabled_without_location(self, capsys):
        rc, out, _ = run(capsys, "cache", "info")
        assert rc == 0 and "disabled" in out
        rc, _, err = run(capsys, "cache", "clear")
        assert rc == 1

    def test_corrupted_checksum_rejected(self, capsys, tmp_path):
        cache = str(tmp_path)
        run(capsys, "kl", "--type", "A1", "--y", "1", "--cache-path", cache)
        f = tmp_path / "A1.jsonl"
        head, _, body = f.read_text().partition("\n")
        obj = json.loads(head)
        obj["checksum"] = "0" * 64
        f.write_text(json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n" + body)
        rc, _, err = run(capsys, "kl", "--type", "A1", "--y", "1", "--cache-path", cache)
        assert rc == 2 and err.startswith("error: cache:")

    def test_wrong_system_rejected(self, capsys, tmp_path):
        cache = str(tmp_path)
        run(capsys, "kl", "--type", "A1", "--y", "1", "--cache-path", cache)
        (tmp_path / "A2.jsonl").write_text((tmp_path / "A1.jsonl").read_text())
        rc, _, err = run(capsys, "kl", "--type", "A2", "--y", "1", "--cache-path", cache)
        assert rc == 2 and err.startswith("error: cache:")


class TestHelp:
    def test_help_exits_zero(self, capsys):
        rc, out, _ = run(capsys, "--help")
        assert rc == 0
        for name in ("kl", "tilt", "oracle", "cache"):
            assert name in out

    def test_subcommand_help(self, capsys):
        rc, out, _ = run(capsys, "tilt", "--help")
        assert rc == 0
        for name in ("O", "km", "quantum"):
            assert name in out
