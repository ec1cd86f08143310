import io
import json
import xml.etree.ElementTree as ET

import pytest

from laman_enum import cli
from laman_enum.instances import SIX_POINT_CONSTRAINTS, SIX_POINT_COORDS


def write(tmp_path, coords, edges=(), name="inst.txt"):
    lines = ["# test instance", str(len(coords))] + [f"{x} {y}" for x, y in coords]
    lines += [str(len(edges))] + [f"{u} {v}" for u, v in edges]
    p = tmp_path / name
    p.write_text("\n".join(lines) + "\n")
    return p


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(cli.build_parser().parse_args([str(a) for a in argv]), out, err)
    return code, out.getvalue(), err.getvalue()


CONVEX4 = [(0, 0), (4, 0), (5, 3), (1, 4)]


def test_count_only(tmp_path):
    assert run(write(tmp_path, [(0, 0), (1, 0), (0, 1)]), "--count-only")[:2] == (0, "1\n")
    assert run(write(tmp_path, CONVEX4), "--count-only")[:2] == (0, "2\n")


def test_six_point_file(tmp_path):
    p = write(tmp_path, SIX_POINT_COORDS, SIX_POINT_CONSTRAINTS)
    code, out, _ = run(p)
    lines = out.splitlines()
    assert code == 0 and len(lines) == 20
    assert lines[0].startswith("L 1: (")
    assert all(f"({u},{v})" in ln for ln in lines for u, v in SIX_POINT_CONSTRAINTS)


def test_decimal_coordinates_parse(tmp_path):
    p = write(tmp_path, [("0.5", "0"), ("1.25", "0.1"), ("0", "1e1")])
    assert run(p, "--count-only")[:2] == (0, "1\n")


def test_json_records(tmp_path):
    code, out, _ = run(write(tmp_path, CONVEX4), "--json", "--meta")
    recs = [json.loads(ln) for ln in out.splitlines()]
    assert code == 0 and [r["index"] for r in recs] == [1, 2]
    assert recs[0]["depth"] == 0 and recs[0]["swap"] is None
    assert recs[1]["depth"] == 1 and len(recs[1]["swap"]) == 2
    for r in recs:
        assert r["edges"] == sorted(r["edges"]) and len(r["edges"]) == 5


def test_deterministic_and_slow_mode_identical(tmp_path):
    p = write(tmp_path, SIX_POINT_COORDS, SIX_POINT_CONSTRAINTS[:2])
    a = run(p, "--meta")[1]
    assert a == run(p, "--meta")[1]
    assert a == run(p, "--meta", "--slow-parent-check")[1]


def test_root_only_and_max_outputs(tmp_path):
    p = write(tmp_path, CONVEX4)
    code, out, _ = run(p, "--root-only")
    assert code == 0 and out.splitlines() == run(p)[1].splitlines()[:1]
    assert len(run(p, "--max-outputs", 1)[1].splitlines()) == 1
    assert run(p, "--max-outputs", 0)[0] == cli.EXIT_PARSE


def test_svg_output(tmp_path):
    p = write(tmp_path, SIX_POINT_COORDS, SIX_POINT_CONSTRAINTS)
    d = tmp_path / "svg"
    assert run(p, "--svg-dir", d, "--max-outputs", 5)[0] == 0
    files = sorted(d.glob("*.svg"))
    assert [f.name for f in files] == [f"framework_{k:06d}.svg" for k in range(1, 6)]
    ns = {"s": "http://www.w3.org/2000/svg"}
    for f in files:
        root = ET.parse(f).getroot()
        solid = root.findall("s:line[@class='edge']", ns)
        assert len(solid) == 2 * 6 - 3
        thick = [ln for ln in solid if ln.get("stroke-width") == "3.5"]
        assert len(thick) == len(SIX_POINT_CONSTRAINTS)
        assert all(ln.get("stroke-dasharray") for ln in root.findall("s:line[@class='fill']", ns))


def test_verify(tmp_path):
    code, out, _ = run(write(tmp_path, SIX_POINT_COORDS, SIX_POINT_CONSTRAINTS), "--verify")
    assert code == 0 and "OK" in out


def test_verify_guard(tmp_path):
    coords = [(k, k * k) for k in range(9)]  # on a parabola: no three collinear
    code, _, err = run(write(tmp_path, coords), "--verify")
    assert code == cli.EXIT_PARSE and "oracle" in err


def test_verify_mismatch_exit_code(tmp_path, monkeypatch):
    p = write(tmp_path, CONVEX4)
    from laman_enum.oracle import OracleReport

    # an oracle that knows no frameworks forces a mismatch
    monkeypatch.setattr(cli, "brute_frameworks", lambda ps, F: OracleReport())
    assert run(p, "--verify")[0] == cli.EXIT_MISMATCH


@pytest.mark.parametrize(
    "coords,edges,code",
    [
        ([(0, 0), (1, 1), (2, 2), (0, 5)], (), cli.EXIT_GENERICITY),
        (CONVEX4, [(1, 3), (2, 4)], cli.EXIT_CONSTRAINTS),
        (CONVEX4, [(1, 5)], cli.EXIT_CONSTRAINTS),
        (CONVEX4, [(1, 2), (1, 2)], cli.EXIT_CONSTRAINTS),
        ([(0, 0), (10, 0), (0, 10), (2, 2)], [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)], cli.EXIT_CONSTRAINTS),
    ],
)
def test_input_errors(tmp_path, coords, edges, code):
    assert run(write(tmp_path, coords, edges))[0] == code


def test_parse_errors(tmp_path):
    bad = tmp_path / "bad.txt"
    for text in ["3\n0 0\n1 0\n", "3\n0 0\n1 x\n0 1\n", "2\n0 0\n1 0\n", "3\n0 0\n1 0\n0 1\n0\nextra\n"]:
        bad.write_text(text)
        assert run(bad)[0] == cli.EXIT_PARSE
    assert run(tmp_path / "missing.txt")[0] == cli.EXIT_PARSE


def test_flag_conflicts(tmp_path):
    p = write(tmp_path, CONVEX4)
    with pytest.raises(SystemExit):
        cli.build_parser().parse_args([str(p), "--count-only", "--verify"])
    assert run(p, "--verify", "--max-outputs", 1)[0] == cli.EXIT_PARSE


def test_main_entry(tmp_path, capsys):
    assert cli.main([str(write(tmp_path, CONVEX4)), "--count-only"]) == 0
    assert capsys.readouterr().out == "2\n"
