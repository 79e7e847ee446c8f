import json
import math

import pytest

from cyclorad.cli import (
    JobSpec,
    dumps,
    exit_code,
    format_text,
    job_from_dict,
    main,
    parse_input,
    parse_sides,
    parse_signs,
    run,
    run_safe,
)
from cyclorad.errors import ParseError


def test_parse_inline():
    job = parse_input(["radius", "1", "2", "4", "5", "5"])
    assert job.command == "radius" and job.sides == [1, 2, 4, 5, 5]
    assert parse_input(["radius", "1,2,4,5,5"]).sides == [1, 2, 4, 5, 5]


def test_parse_repetition():
    job = parse_input(["radius", "1x4", "3x7", "4", "6"])
    assert job.sides == [1] * 4 + [3] * 7 + [4, 6]


@pytest.mark.parametrize("bad", ["abc", "1x", "x3", "2x0", "nan", "1x2x3"])
def test_parse_errors_name_token(bad):
    with pytest.raises(ParseError) as info:
        parse_sides([bad])
    assert bad in str(info.value)


def test_parse_signs():
    assert parse_signs("-1,1,1,1,1") == [-1, 1, 1, 1, 1]
    assert parse_signs("-++++") == [-1, 1, 1, 1, 1]
    with pytest.raises(ParseError):
        parse_signs("+?+")


def test_input_file(tmp_path):
    path = tmp_path / "job.json"
    path.write_text(json.dumps({"sides": [29, 30, 31, 32, 33], "signs": [-1, 1, 1, 1, 1], "winding": 1}))
    job = parse_input(["roots", "--input", str(path)])
    sig = job.signature()
    assert sig.signs == (-1, 1, 1, 1, 1) and sig.winding == 1


def test_jobspec_requirements():
    with pytest.raises(ParseError):
        JobSpec("regular", n=5)
    with pytest.raises(ParseError):
        JobSpec("radius")
    with pytest.raises(ParseError):
        JobSpec("frobnicate", sides=[1, 1, 1])


def test_radius_report():
    rep = run(parse_input(["radius", "29", "30", "31", "32", "33"]))
    assert rep["radius"] == 26.38467157819376
    assert "26.38467157819376" in format_text(rep)


def test_area_report_text():
    rep = run(parse_input(["area", "1x4", "3x7", "4", "6"]))
    assert rep["area_sum"] == pytest.approx(93.8769, abs=1e-4)
    assert rep["area_integral"] == pytest.approx(rep["area_sum"], rel=1e-9)
    text = format_text(rep)
    assert "1.11364 vs 5.16955" in text and "PCI" in text


def test_regular_report():
    rep = run(parse_input(["regular", "--n", "200", "--l", "1"]))
    assert rep["radius"] == pytest.approx(31.832297653000282, abs=1e-12)
    assert "2πr − P = 0.008" in format_text(rep)


def test_roots_report():
    rep = run(parse_input(["roots", "1x7"]))
    radii = sorted((x["r"] for x in rep["roots"]), reverse=True)
    expected = [1 / (2 * math.sin(math.pi * q / 7)) for q in (1, 2, 3)]
    assert radii == pytest.approx(expected, rel=1e-14)
    assert sorted(x["winding"] for x in rep["roots"]) == [1, 2, 3]


def test_verify_report():
    rep = run(parse_input(["verify", "1", "2", "4", "5", "5"]))
    assert rep["closure_error"] <= 1e-9 * rep["radius"]


def test_poly_report():
    rep = run(parse_input(["poly", "3", "4", "5"]))
    assert rep["polynomial"]["variable"] == "r2"
    assert rep["polynomial"]["coefficients"] == ["25", "-4"]


def test_render_to_file(tmp_path):
    out = tmp_path / "sq.svg"
    assert main(["render", "1", "1", "1", "1", "--out", str(out)]) == 0
    assert out.read_text().lstrip().startswith("<?xml")


@pytest.mark.parametrize(
    "argv, code",
    [
        (["radius", "1", "2", "4", "5", "5"], 0),
        (["radius", "1", "2", "3"], 2),
        (["radius", "1", "-2", "2"], 2),
        (["radius", "bogus"], 2),
        (["roots", "1x4", "--signs=++++", "--winding", "5"], 3),
        (["regular", "--n", "6", "--l", "1", "--q", "2"], 2),
    ],
)
def test_exit_codes(argv, code, capsys):
    assert main(argv) == code


def test_json_round_trip_and_determinism(capsys):
    for argv in (["area", "2", "2", "3.5"], ["classify", "1", "2", "4", "5", "5"], ["roots", "29", "30", "31", "32", "33"]):
        main(argv + ["--json"])
        first = capsys.readouterr().out
        main(argv + ["--json"])
        assert capsys.readouterr().out == first
        rep = json.loads(first)
        assert json.loads(dumps(rep)) == rep
        assert dumps(rep) == first.strip()


def test_error_report_shape():
    rep = run_safe(JobSpec("radius", sides=[1, 2, 3]))
    assert rep["status"] == "error" and rep["error"]["type"] == "DegeneratePolygon"
    assert exit_code(rep) == 2


def test_env_tolerance(monkeypatch):
    monkeypatch.setenv("CYCLORAD_TOL", "1e-6")
    rep = run(JobSpec("radius", sides=[3, 4, 5, 6]))
    assert rep["status"] == "ok"
    monkeypatch.setenv("CYCLORAD_TOL", "banana")
    with pytest.raises(ParseError):
        run(JobSpec("radius", sides=[3, 4, 5, 6]))


def test_batch_order_and_isolation(tmp_path, capsys):
    path = tmp_path / "jobs.jsonl"
    path.write_text(
        "\n".join(
            [
                json.dumps({"command": "radius", "sides": [3, 4, 5]}),
                json.dumps({"command": "radius", "sides": [1, 2, 3]}),
                "{not json",
                json.dumps({"command": "regular", "n": 200, "l": 1}),
            ]
        )
    )
    code = main(["--batch", str(path)])
    lines = capsys.readouterr().out.strip().splitlines()
    reps = [json.loads(x) for x in lines]
    assert [r["status"] for r in reps] == ["ok", "error", "error", "ok"]
    assert reps[0]["radius"] == 2.5
    assert math.isclose(reps[3]["radius"], 31.832297653000282, rel_tol=1e-15)
    assert code == 2


def test_job_from_dict_command_override():
    job = job_from_dict({"sides": "1 1 1 1"}, command="verify")
    assert job.command == "verify" and job.sides == [1, 1, 1, 1]
