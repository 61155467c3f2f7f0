import json

import pytest

from bagwhisker import __version__, config
from bagwhisker.data.models import DepthMode
from bagwhisker.errors import BadDirectionCount, InputError
from bagwhisker.main import build_parser, config_from_args, main, parse_depth_mode

from .conftest import MEDIAN_ON_HULL


def error_record(capsys):
    return json.loads(capsys.readouterr().err.strip().splitlines()[-1])


def test_svg_to_stdout(toy_csv, capsys):
    assert main(["--input", str(toy_csv)]) == 0
    out = capsys.readouterr().out
    assert out.startswith("<?xml")
    assert out.count('class="outlier"') == 1


def test_json_to_stdout(toy_csv, capsys):
    assert main(["--input", str(toy_csv), "--x", "x", "--y", "y", "--format", "json",
                 "--method", "pfer"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["method"] == "pfer"
    assert doc["t_adj"] == 0.0625
    assert doc["outliers"] == [7]


def test_classic_method(toy_csv, capsys):
    assert main(["--input", str(toy_csv), "--method", "classic", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["outliers"] == [4, 5, 6, 7]


def test_both_formats(toy_csv, tmp_path):
    target = tmp_path / "figure"
    assert main(["--input", str(toy_csv), "--format", "both", "--output", str(target)]) == 0
    svg = (tmp_path / "figure.svg").read_text(encoding="utf-8")
    doc = json.loads((tmp_path / "figure.json").read_text(encoding="utf-8"))
    assert doc["outliers"] == [7]
    assert svg.endswith("</svg>\n")


def test_both_formats_need_output(toy_csv, capsys):
    assert main(["--input", str(toy_csv), "--format", "both"]) == 2
    assert error_record(capsys)["error"] == "InputError"


def test_compare(toy_csv, tmp_path):
    target = tmp_path / "compare.json"
    assert main(["--input", str(toy_csv), "--compare", "--format", "json",
                 "--output", str(target)]) == 0
    doc = json.loads(target.read_text(encoding="utf-8"))
    assert [p["method"] for p in doc["panels"]] == ["classic", "fwer", "fdr", "pfer"]


def test_compare_svg(toy_csv, capsys):
    assert main(["--input", str(toy_csv), "--compare"]) == 0
    assert capsys.readouterr().out.count("<svg") == 5


def test_missing_file(tmp_path, capsys):
    assert main(["--input", str(tmp_path / "absent.csv")]) == 2
    record = error_record(capsys)
    assert record["error"] == "InputError"
    assert record["module"] == "cli"


def test_non_numeric_cell(tmp_path, capsys):
    path = tmp_path / "bad.csv"
    path.write_text("x,y\n1,2\n3,abc\n4,5\n6,7\n", encoding="utf-8")
    assert main(["--input", str(path)]) == 2
    assert error_record(capsys)["error"] == "NonNumericCell"


def test_missing_column(toy_csv, capsys):
    assert main(["--input", str(toy_csv), "--x", "weight"]) == 2
    assert error_record(capsys)["error"] == "MissingColumn"


def test_numeric_failure_exit_code(tmp_path, capsys):
    path = tmp_path / "same.csv"
    path.write_text("x,y\n1,1\n1,1\n1,1\n1,1\n", encoding="utf-8")
    assert main(["--input", str(path)]) == 3
    assert error_record(capsys)["error"] == "DegenerateBag"


def test_bad_level(toy_csv, capsys):
    assert main(["--input", str(toy_csv), "--level", "1.5"]) == 2
    assert error_record(capsys)["error"] == "BadLevel"


def test_version(capsys):
    with pytest.raises(SystemExit) as info:
        main(["--version"])
    assert info.value.code == 0
    assert __version__ in capsys.readouterr().out


def test_input_is_required(capsys):
    with pytest.raises(SystemExit) as info:
        main([])
    assert info.value.code == 2


class TestSeed:
    def _args(self, *extra):
        return config_from_args(build_parser().parse_args(["--input", "data.csv", *extra]))

    def test_default(self, monkeypatch):
        monkeypatch.delenv(config.SEED_ENV_VAR, raising=False)
        assert self._args().seed == config.DEFAULT_SEED

    def test_command_line(self, monkeypatch):
        monkeypatch.delenv(config.SEED_ENV_VAR, raising=False)
        assert self._args("--seed", "42").seed == 42

    def test_environment_wins(self, monkeypatch):
        monkeypatch.setenv(config.SEED_ENV_VAR, "7")
        assert self._args("--seed", "42").seed == 7

    def test_bad_environment_value(self, monkeypatch):
        monkeypatch.setenv(config.SEED_ENV_VAR, "seven")
        with pytest.raises(InputError):
            self._args()


class TestDepthMode:
    def test_auto(self):
        assert parse_depth_mode("auto", 360, 100) == DepthMode.exact()
        assert parse_depth_mode("auto", 360, 6000) == DepthMode.approx(360)

    def test_explicit(self):
        assert parse_depth_mode("exact", 360, 10) == DepthMode.exact()
        assert parse_depth_mode("approx", 90, 10) == DepthMode.approx(90)
        assert parse_depth_mode("approx:720", 360, 10) == DepthMode.approx(720)

    @pytest.mark.parametrize("text", ["approx:1", "approx:many"])
    def test_bad_direction_count(self, text):
        with pytest.raises(BadDirectionCount):
            parse_depth_mode(text, 360, 10)

    def test_unknown(self):
        with pytest.raises(InputError):
            parse_depth_mode("fast", 360, 10)

    def test_cli_exit_code(self, toy_csv, capsys):
        assert main(["--input", str(toy_csv), "--depth-mode", "approx:1"]) == 2
        assert error_record(capsys)["error"] == "BadDirectionCount"


def test_median_on_depth_hull_runs_cleanly(tmp_path, capsys):
    path = tmp_path / "small.csv"
    path.write_text("".join(f"{x},{y}\n" for x, y in MEDIAN_ON_HULL), encoding="utf-8")
    assert main(["--input", str(path), "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["bag"]["widened_to"] is not None


def test_compare_warns_about_method_and_level(toy_csv, capsys, caplog):
    assert main(["--input", str(toy_csv), "--compare", "--method", "pfer", "--level", "0.2",
                 "--format", "json"]) == 0
    assert "ignored" in caplog.text
    doc = json.loads(capsys.readouterr().out)
    assert [p["method"] for p in doc["panels"]] == ["classic", "fwer", "fdr", "pfer"]


def test_method_defaults_to_fwer():
    args = build_parser().parse_args(["--input", "data.csv"])
    assert args.method is None
    assert config_from_args(args).method == "fwer"
