from __future__ import annotations

import json
from pathlib import Path

import pytest

from higherext import __version__, cli, config
from higherext.cli import main
from higherext.dsl import parse_cube
from higherext.errors import AgreementFailure
from higherext.library import library_group
from higherext.structure import is_isomorphic

SAMPLES = Path(__file__).resolve().parent.parent / "samples"
D4 = str(SAMPLES / "d4-square.json")
KLEIN = str(SAMPLES / "klein-square.json")
DIAGONAL = str(SAMPLES / "diagonal-square.json")


@pytest.fixture(autouse=True)
def restore_order_cap(monkeypatch):
    monkeypatch.setattr(config, "ORDER_CAP", config.ORDER_CAP)


def run(capsys, *argv) -> tuple[int, str, str]:
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_extension(capsys):
    assert run(capsys, "check-extension", D4) == (0, "true\n", "")
    assert run(capsys, "check-extension", DIAGONAL)[:2] == (0, "false\n")
    code, out, _ = run(capsys, "check-extension", KLEIN, "--dim-report")
    report = json.loads(out)
    assert code == 0 and report["by_direction"] == [True, True] and report["extension"]
    assert report["version"] == __version__ and report["seed"] == 0


def test_check_central(capsys):
    code, out, _ = run(capsys, "check-central", D4)
    report = json.loads(out)
    assert code == 0 and report["central"] is False
    assert report["bracket"]["agree"] and report["bracket"]["explicit"]["order"] == 2
    assert json.loads(run(capsys, "check-central", KLEIN)[1])["central"] is True
    report = json.loads(run(capsys, "check-central", D4, "--datum", "ab-mod:2")[1])
    assert report["datum"] == "AB_MOD(2)" and report["bracket"]["explicit"] is None


def test_bracket_routes(capsys):
    for route in ("explicit", "categorical", "both"):
        code, out, _ = run(capsys, "bracket", D4, "--route", route)
        report = json.loads(out)
        assert code == 0 and report["route"] == route
    report = json.loads(out)
    assert report["explicit"]["generators"] == ["(0 2)(1 3)"] and report["agree"]


def test_hopf(capsys):
    report = json.loads(run(capsys, "hopf", D4)[1])
    assert report["numerator"]["order"] == 2 and report["quotient_order"] == 1
    assert report["presentation_conditions_met"] is False


def test_homology(capsys):
    report = json.loads(run(capsys, "homology", "Z2 x Z2", "--degree", "2")[1])
    assert report["divisors"] == [2] and report["free_rank"] == 0
    report = json.loads(run(capsys, "homology", "perm 3: (0 1 2), (0 1)", "--degree", "1")[1])
    assert report["divisors"] == [2] and report["group_order"] == 6


def test_centralize_writes_a_cube(capsys, tmp_path):
    target = tmp_path / "out.json"
    code, out, _ = run(capsys, "centralize", D4, "-o", str(target))
    assert code == 0 and json.loads(out)["top_order"] == 4
    C = parse_cube(target.read_text())
    assert is_isomorphic(C.top, library_group("Klein"))
    code, out, _ = run(capsys, "centralize", KLEIN)
    assert parse_cube(out).top.order == 4


def test_outputs_are_byte_identical(capsys):
    for argv in (["hopf", D4], ["bracket", D4], ["verify", "--suite", "schur", "--seed", "3", "--budget", "5"]):
        assert run(capsys, *argv) == run(capsys, *argv)


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "schur", "--suite", "homology-h1", "--budget", "5")
    report = json.loads(out)
    assert code == 0 and report["all_passed"]
    assert [r["property_id"] for r in report["reports"]] == ["schur", "homology-h1"]


def test_exit_codes(capsys, tmp_path):
    code, _, err = run(capsys, "check-extension", str(tmp_path / "missing.json"))
    assert code == 1 and err.startswith("error:")
    assert run(capsys, "homology", "Z2 x", "--degree", "1")[0] == 1
    assert run(capsys, "homology", "Z2", "--degree", "4")[0] == 3
    assert run(capsys, "verify", "--suite", "no-such-suite")[0] == 1
    assert run(capsys, "bracket", DIAGONAL)[0] == 1
    assert run(capsys, "--order-cap", "4", "check-extension", D4)[0] == 3


def test_agreement_failure_exit_code(capsys, monkeypatch):
    def disagree(*_args, **_kwargs):
        raise AgreementFailure("routes disagree")
    monkeypatch.setattr(cli, "bracket_report", disagree)
    assert run(capsys, "bracket", D4)[0] == 2
