"""CLI subcommands: payload shapes, exit codes, and byte-determinism."""

from __future__ import annotations

import json

from flagcx.cli import main


def _run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def _payload(out):
    report = json.loads(out)
    assert report["tool"] == "flagcx" and report["schema"] == 1
    return report["payload"]


def test_classify_b2(capsys):
    code, out, _ = _run(capsys, ["classify", "--type", "B", "--rank", "2"])
    assert code == 0
    payload = _payload(out)
    assert payload["admits_gacs"] and payload["gm2"]
    assert payload["is_maximal"] and not payload["is_trivial"]
    assert sorted(c["size"] for c in payload["classes"]) == [2, 2]
    assert payload["complement_dimension"] == 4


def test_classify_trivial_and_partial(capsys):
    code, out, _ = _run(capsys, ["classify", "--type", "B", "--rank", "2", "--theta", "all"])
    assert code == 0
    payload = _payload(out)
    assert payload["is_trivial"] and not payload["admits_gacs"]

    code, out, _ = _run(
        capsys, ["classify", "--type", "B", "--rank", "3", "--theta", "1,2"]
    )
    assert code == 0
    payload = _payload(out)
    assert payload["admits_gacs"] and not payload["gm2"]


def test_certify_all_combinations_b2(capsys):
    code, out, _ = _run(
        capsys,
        ["certify", "--type", "B", "--rank", "2", "--all-combinations", "--samples", "2", "--seed", "1"],
    )
    assert code == 0
    payload = _payload(out)
    assert not payload["exploratory"]
    assert payload["theorem_claim"]
    assert payload["combinations"] == 4
    assert payload["summary"] == {"total": 8, "not_integrable": 8, "integrable": 0}
    for verdict in payload["verdicts"]:
        assert not verdict["integrable"]
        assert verdict["witness"]["nijenhuis"] != {"re": "0", "im": "0"}


def test_certify_exploratory_flags(capsys):
    for family, rank in [("D", "4"), ("C", "4")]:
        code, out, _ = _run(
            capsys,
            ["certify", "--type", family, "--rank", rank, "--random", "--samples", "1"],
        )
        assert code == 0
        payload = _payload(out)
        assert payload["exploratory"]
        assert payload["theorem_claim"] is None


def test_certify_error_exit_codes(capsys):
    # Non-maximal flag: unsupported (exit 2).
    code, _, err = _run(
        capsys, ["certify", "--type", "B", "--rank", "3", "--theta", "1,2", "--random"]
    )
    assert code == 2 and "maximal" in err

    # Flag admitting no structure: unsupported (exit 2).
    code, _, err = _run(capsys, ["certify", "--type", "A", "--rank", "2", "--random"])
    assert code == 2

    # Missing mode and malformed combination: usage errors (exit 1).
    code, _, _ = _run(capsys, ["certify", "--type", "B", "--rank", "2"])
    assert code == 1
    code, _, err = _run(
        capsys, ["certify", "--type", "B", "--rank", "2", "--combination", "c,zz"]
    )
    assert code == 1 and "zz" in err
    code, _, _ = _run(capsys, ["certify", "--type", "B", "--rank", "2", "--combination", "c"])
    assert code == 1  # needs one token per 2-element class


def test_moduli_example(capsys):
    code, out, _ = _run(
        capsys,
        ["moduli", "--type", "B", "--rank", "2", "--blocks", "sym:1,sym:2"],
    )
    assert code == 0
    charts = _payload(out)["charts"]
    assert [c["kind"] for c in charts] == ["symplectic", "symplectic"]
    assert [c["x"] for c in charts] == ["1", "2"]

    code, out, _ = _run(
        capsys,
        ["moduli", "--type", "B", "--rank", "2", "--blocks", "c:1/2:3,nc:0:1"],
    )
    assert code == 0
    charts = _payload(out)["charts"]
    assert charts[0] == {"class": charts[0]["class"], "kind": "complex", "c": "3", "b": "1/2"}
    assert charts[1]["kind"] == "symplectic" and charts[1]["x"] == "1"


def test_spinor_all_complex_b2(capsys):
    code, out, _ = _run(
        capsys,
        ["spinor", "--type", "B", "--rank", "2", "--blocks", "c:0:1,c:0:1"],
    )
    assert code == 0
    terms = _payload(out)["terms"]
    assert len(terms) == 4
    assert all(len(t["roots"]) == 2 for t in terms)


def test_hermitian_valid_and_invalid(capsys):
    base = ["hermitian", "--type", "B", "--rank", "2", "--blocks", "c:1:2,c:1:2"]
    code, out, _ = _run(capsys, base + ["--blocks2", "sym:2,sym:2"])
    assert code == 0
    payload = _payload(out)
    assert payload["valid"]
    assert "normal_form" in payload and len(payload["normal_form"]["riemannian"]) == 2

    code, out, _ = _run(capsys, base + ["--blocks2", "sym:-1,sym:-1"])
    assert code == 0
    payload = _payload(out)
    assert not payload["valid"] and payload["commute"] and not payload["positive"]
    assert "c*x > 0" in payload["reason"]
    assert "normal_form" not in payload


def test_block_parse_errors(capsys):
    code, _, err = _run(
        capsys, ["moduli", "--type", "B", "--rank", "2", "--blocks", "sym:1"]
    )
    assert code == 1 and "expected 2" in err
    code, _, _ = _run(
        capsys, ["moduli", "--type", "B", "--rank", "2", "--blocks", "sym:0,sym:1"]
    )
    assert code == 1
    code, _, _ = _run(
        capsys, ["moduli", "--type", "B", "--rank", "2", "--blocks", "zz:1,sym:1"]
    )
    assert code == 1


def test_reports_are_byte_deterministic(capsys, monkeypatch):
    argv = [
        "certify", "--type", "G", "--rank", "2",
        "--all-combinations", "--samples", "3", "--seed", "7",
    ]
    _, first, _ = _run(capsys, argv)
    _, second, _ = _run(capsys, argv)
    assert first == second
    monkeypatch.setenv("FLAGCX_THREADS", "4")
    _, threaded, _ = _run(capsys, argv)
    assert threaded == first


def test_out_writes_file(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = _run(
        capsys, ["classify", "--type", "G", "--rank", "2", "--out", str(target)]
    )
    assert code == 0 and out == ""
    payload = json.loads(target.read_text())["payload"]
    assert payload["admits_gacs"]
