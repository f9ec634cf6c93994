import io
import json
import math

import pytest

from graph_uncertainty.cli import build_parser, main, run


def _run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_bounds_complete(capsys):
    code, out, err = _run(["bounds", "--complete", "8"], capsys)
    assert code == 0 and err == ""
    res = json.loads(out)
    assert res["lower"] == pytest.approx(8 - math.sqrt(8), abs=1e-9)
    assert res["upper"] == pytest.approx(16, abs=1e-9)


def test_bounds_too_small_graph(capsys):
    code, out, err = _run(["bounds", "--path", "1"], capsys)
    assert code == 2 and out == ""
    assert err.count("\n") == 1


def test_duc_csv(capsys):
    code, out, _ = _run(["duc", "--complete", "8", "--points", "200", "--csv"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "alpha,x,y,m,mult,h_minus,h_plus"
    assert len(lines) == 201
    x, y = (float(v) for v in lines[50].split(",")[1:3])
    from graph_uncertainty.complete import kn_omega
    assert y == pytest.approx(kn_omega(8, x), abs=1e-6)


def test_duc_json_upper(capsys):
    code, out, _ = _run(["duc", "--cycle", "6", "--points", "5", "--upper"], capsys)
    res = json.loads(out)
    assert code == 0 and res["side"] == "upper" and "method" in res
    assert len(res["samples"]) == 5


def test_frame_bounds_domain_error(capsys):
    code, out, err = _run(["frame-bounds", "--cycle", "5", "-d", "9"], capsys)
    assert code == 1 and out == "" and err.startswith("error:")


def test_disconnected_input(tmp_path, capsys):
    p = tmp_path / "g.txt"
    p.write_text("0 1\n2 3\n")
    code, _, err = _run(["spectra", "--input", str(p)], capsys)
    assert code == 1 and "connected" in err


def test_parse_error_has_line(tmp_path, capsys):
    p = tmp_path / "g.txt"
    p.write_text("0 1\n1 2 x\n")
    code, _, err = _run(["spectra", "-i", str(p)], capsys)
    assert code == 2 and "line 2" in err


def test_missing_file(capsys):
    code, _, _ = _run(["spectra", "-i", "/nonexistent/graph.txt"], capsys)
    assert code == 2


def test_source_required_and_exclusive(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["bounds"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit):
        main(["bounds", "--cycle", "4", "--path", "4"])
    with pytest.raises(SystemExit):
        main(["duc", "--cycle", "4", "--mult-tol", "0"])
    capsys.readouterr()


def test_spectra(capsys):
    code, out, _ = _run(["spectra", "--path", "3"], capsys)
    res = json.loads(out)
    assert res["laplacian"] == pytest.approx([0, 1, 3], abs=1e-12)
    assert len(res["modified"]) == 3


def test_region_csv_kinds(capsys):
    code, out, _ = _run(["region", "--cycle", "5", "--points", "6", "--samples", "50", "--csv"], capsys)
    lines = out.splitlines()
    assert lines[0] == "alpha,x,y,m,mult,h_minus,h_plus,kind"
    kinds = [l.rsplit(",", 1)[1] for l in lines[1:]]
    assert set(kinds) == {"lower", "upper", "witness", "anchor"}
    assert kinds.count("witness") == 50 and kinds.count("anchor") == 2


def test_region_two_vertex(capsys):
    code, out, _ = _run(["region", "--path", "2", "--samples", "10", "--csv"], capsys)
    kinds = [l.rsplit(",", 1)[1] for l in out.splitlines()[1:]]
    assert kinds.count("lower") + kinds.count("upper") == 64


def test_deterministic_output(capsys):
    argv = ["region", "--complete", "5", "--points", "6", "--samples", "40", "--seed", "3"]
    _, a, _ = _run(argv, capsys)
    _, b, _ = _run(argv, capsys)
    assert a == b
    _, c, _ = _run(argv[:-1] + ["4"], capsys)
    assert c != a


def test_json_round_trip(capsys):
    _, out, _ = _run(["duc", "--path", "5", "--points", "7"], capsys)
    res = json.loads(out)
    assert json.dumps(res) == out.strip()
    for s in res["samples"]:
        assert float(repr(s["y"])) == s["y"]


def test_kn_commands(capsys):
    _, out, _ = _run(["kn", "--n", "8", "bounds", "-d", "3"], capsys)
    assert json.loads(out)["frame_lower"] == {"3": 48.0 - 16.0}
    _, out, _ = _run(["kn", "eigen", "--n", "8", "--alpha", "0.5"], capsys)
    res = json.loads(out)
    assert res["middle_eigenvalue"] == 4.0 and res["middle_multiplicity"] == 6
    code, _, _ = _run(["kn", "eigen", "--n", "8", "--alpha", "0"], capsys)
    assert code == 1
    _, out, _ = _run(["kn", "duc", "--n", "8", "--points", "10"], capsys)
    assert len(json.loads(out)["points"]) == 10
    _, out, _ = _run(["kn", "duc", "--n", "8", "--alpha", "0"], capsys)
    assert json.loads(out)["x"] == pytest.approx(7.0)
    code, _, _ = _run(["kn", "bounds", "--n", "2"], capsys)
    assert code == 1


def test_transform(tmp_path, capsys):
    p = tmp_path / "s.txt"
    p.write_text("1\n2\n3\n")
    code, out, _ = _run(["transform", "--path", "3", "--signal", str(p)], capsys)
    res = json.loads(out)
    assert code == 0
    assert res["difference"] == [-1.0, -1.0]
    assert sum(v * v for v in res["gft"]) == pytest.approx(14.0)
    p.write_text("1\n2\n")
    code, _, _ = _run(["transform", "--path", "3", "--signal", str(p)], capsys)
    assert code == 2


def test_run_writes_to_sink():
    args = build_parser().parse_args(["bounds", "--cycle", "4"])
    buf = io.StringIO()
    assert run(args, buf) == 0
    assert json.loads(buf.getvalue())["upper"] > 0


def test_threads_env(monkeypatch, capsys):
    argv = ["duc", "--cycle", "7", "--points", "9", "--csv"]
    _, a, _ = _run(argv, capsys)
    monkeypatch.setenv("UNC_THREADS", "4")
    _, b, _ = _run(argv, capsys)
    assert a == b
