from __future__ import annotations

import json
import subprocess
import sys

from conftest import KISHINO, TREFOIL, VIRTUAL_TREFOIL
from kupweb.cli import main

SEVEN_GON = "1,2,3,1,4,3,5,4,6,5,7,6,2,7"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def test_parse_reports_normal_form(capsys):
    data = run_json(capsys, "parse", "O1+,U2+,U1+,O2+")
    assert data["level"] == "virtual"
    assert data["circles"] == [["O1+", "U2+", "U1+", "O2+"]]
    assert data["odd_chords"] == [1, 2]


def test_parse_error_has_a_location(capsys):
    code, _, err = run(capsys, "parse", "O1+,X2")
    assert code == 1
    assert "at character 4" in err


def test_usage_errors_exit_2(capsys):
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "invariant", "nope", "1,1")[0] == 2
    assert run(capsys, "--threads", "many", "parse", "")[0] == 2


def test_sl3_invariant_includes_odd_writhe(capsys):
    data = run_json(capsys, "invariant", "sl3", "O1+,U2+,U1+,O2+")
    assert data["odd_writhe"] == 2
    assert data["bracket"]["terms"][0]["poly"] == [[-30, 1], [-24, 1], [-18, 1]]


def test_sl3_both_orientations(capsys):
    data = run_json(capsys, "invariant", "sl3", "--both-orientations", TREFOIL)
    assert "reversed" in json.dumps(data)


def test_sl3_at_a_on_free_input(capsys):
    data = run_json(capsys, "invariant", "sl3", "--at-A", "-1", SEVEN_GON)
    assert data["bracket"]["terms"]


def test_parity_modes(capsys):
    for mode in ("virtual", "flat", "free"):
        data = run_json(capsys, "invariant", "parity", "--mode", mode, KISHINO)
        assert data["bracket"]["terms"]


def test_odd_writhe(capsys):
    assert run_json(capsys, "invariant", "odd-writhe", VIRTUAL_TREFOIL)["value"] == 2


def test_text_output(capsys):
    code, out, _ = run(capsys, "--text", "invariant", "odd-writhe", VIRTUAL_TREFOIL)
    assert code == 0 and out.strip() == "2"


def test_penrose_from_inline_rotation(capsys):
    theta = json.dumps({"rotation": {"0": ["1", "2", "3"], "1": ["0", "3", "2"],
                                     "2": ["0", "1", "3"], "3": ["0", "2", "1"]}})
    data = run_json(capsys, "invariant", "penrose", theta)
    count = run_json(capsys, "colorings", "count", theta)
    assert count["edge_3_colorings"] == 6
    assert abs(data["value"]) == 6


def test_certify_seven_gon(capsys):
    data = run_json(capsys, "certify", "sl3-minimal", SEVEN_GON)
    assert data["certificates"] == ["kus-irreducible", "no-bad-polygons"]


def test_certify_all_interlaced_code_gets_no_certificate(capsys):
    data = run_json(capsys, "certify", "sl3-minimal", "1,2,3,4,5,6,7,1,2,3,4,5,6,7")
    assert data["certificates"] == []


def test_certify_parity_odd(capsys):
    data = run_json(capsys, "certify", "parity-odd", "1,2,3,4,5,6,7,1,2,3,4,5,6,7")
    assert data["free_mod2_bracket"] == ["circle"]


def test_certify_g2_without_survival(capsys):
    data = run_json(capsys, "certify", "g2-minimal", "--no-survival", "1,2,1,2")
    assert data["certificates"] == []


def test_compare(capsys):
    data = run_json(capsys, "compare", TREFOIL, "O1-,U2-,O3-,U1-,O2-,U3-")
    assert isinstance(data, dict)


def test_braid_trace(capsys):
    data = run_json(capsys, "braid", "trace", "--strands", "2", "s1")
    assert data["closure"] == "O1+,U1+"
    assert data["trace"]["terms"][0]["poly"] == [[2, 1], [8, 1], [14, 1]]
    assert run(capsys, "braid", "trace", "--strands", "2", "s2")[0] == 1


def test_fuzz_reports_stability_and_seed(capsys):
    code, out, _ = run(capsys, "--text", "fuzz", "--trials", "5", "--moves", "4", "--seed", "11", TREFOIL)
    assert code == 0
    assert out.startswith("INVARIANT STABLE (seed 11")


def test_fuzz_rejects_unsigned_input_for_sl3(capsys):
    assert run(capsys, "fuzz", "1,2,1,2")[0] == 1


def test_export(capsys):
    code, out, _ = run(capsys, "export", "dot", TREFOIL)
    assert code == 0 and out.lstrip().startswith(("graph", "digraph"))
    assert run_json(capsys, "export", "json", TREFOIL)["level"] == "virtual"


def test_output_is_byte_identical_across_thread_caps():
    argv = ["invariant", "parity", KISHINO]
    outs = set()
    for threads in ("1", "3"):
        res = subprocess.run([sys.executable, "-m", "kupweb", "--threads", threads, *argv],
                             capture_output=True, check=True)
        outs.add(res.stdout)
    assert len(outs) == 1


def test_env_var_sets_the_thread_cap(monkeypatch, capsys):
    monkeypatch.setenv("KUPWEB_THREADS", "2")
    assert run(capsys, "parse", "1,1")[0] == 0
    monkeypatch.setenv("KUPWEB_THREADS", "zero")
    assert run(capsys, "parse", "1,1")[0] == 2
