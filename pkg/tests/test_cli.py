import json

import pytest
from conftest import data_path

from soficmaps.cli import build_parser, load_config, main


def run(capsys, *argv):
    code = main(list(argv))
    return code, json.loads(capsys.readouterr().out)


def test_entropy(capsys):
    code, report = run(capsys, "entropy", data_path("gm"))
    assert code == 0
    assert report["entropy_nats"] == pytest.approx(0.481211825)
    assert report["schema_version"] == "1"


def test_info(capsys):
    code, report = run(capsys, "info", data_path("even"))
    assert code == 0
    assert report["transitive"]
    assert report["aperiodic"]
    assert not report["finite"]


def test_periodic_condition(capsys):
    code, report = run(capsys, "periodic", data_path("gm"), data_path("ne3"), "--bound", "3")
    assert code == 0
    assert report["least_periods"] == [1, 2, 3]
    assert report["periodic_point_condition"] is False
    assert report["obstruction"] == 1


def test_sync_word(capsys):
    _, report = run(capsys, "sync", data_path("even"), "--word", "1")
    assert report == {"word": "1", "synchronizing": False, "schema_version": "1"}


def test_psi(capsys):
    code, report = run(capsys, "psi", data_path("gm"), "--word", "0101010")
    assert code == 0
    assert report["length_preserved"]
    assert len(report["output"]) == 7


def test_decompose(capsys):
    _, report = run(
        capsys, "decompose", data_path("gm"), "--left", "0", "--middle", "1", "--right", "0"
    )
    assert report["t"] == 0
    assert report["triple"] == {"a_minus": "0", "c": "1", "a_plus": "0"}


def test_decide_hom_obstruction(capsys):
    code, report = run(capsys, "decide-hom", data_path("gm"), data_path("ne3"))
    assert code == 0
    assert report["answer"] == "no"
    assert report["certificate"] == "period-1 obstruction"


def test_oracle(capsys):
    code, report = run(
        capsys, "oracle", data_path("gm"), data_path("gm"), "--window", "0", "--want", "surjective"
    )
    assert code == 0
    assert report["exhausted"]
    assert len(report["found"]) == 1


def test_schema(capsys):
    code, report = run(capsys, "--schema")
    assert code == 0
    assert report["schema_version"] == "1"
    assert "verdict" in report["definitions"]


def test_missing_file(capsys):
    code, report = run(capsys, "entropy", data_path("nope"))
    assert code == 1
    assert report["error"] == "malformed presentation"


@pytest.mark.parametrize("argv", [[], ["transmogrify"], ["psi", data_path("gm")]])
def test_usage_errors(capsys, argv):
    code, report = run(capsys, *argv)
    assert code == 1
    assert report["error"] == "usage"


def test_bad_cap_is_a_config_error(capsys):
    code, report = run(capsys, "decide-hom", data_path("gm"), data_path("ne3"), "--n-cap", "0")
    assert code == 1
    assert report["error"] == "config"


def test_cross_check_can_be_switched_off(monkeypatch):
    monkeypatch.delenv("SOFIC_ORACLE_CROSS_CHECK", raising=False)
    monkeypatch.delenv("SOFIC_CONFIG", raising=False)
    pair = [data_path("gm"), data_path("full2")]
    assert load_config(build_parser().parse_args(["decide-hom", *pair])).oracle_cross_check
    args = build_parser().parse_args(["decide-hom", *pair, "--no-cross-check"])
    assert load_config(args).oracle_cross_check is False
