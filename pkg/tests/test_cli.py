import json

import pytest

from algdual.algebra import FiniteAlgebra, builtin
from algdual.cli import main
from algdual.documents import dumps_document, loads_document, check_document
from algdual.systems import plonka_decompose


@pytest.fixture
def wk_file(tmp_path):
    path = tmp_path / "wk.json"
    path.write_text(dumps_document(builtin("wk"), "ibsl"), encoding="utf-8")
    return str(path)


@pytest.fixture
def three_file(tmp_path):
    path = tmp_path / "three.json"
    path.write_text(dumps_document(builtin("three"), "bsl"), encoding="utf-8")
    return str(path)


@pytest.fixture
def broken_ibsl_file(tmp_path):
    broken = FiniteAlgebra(
        2, {"join": [[0, 1], [1, 1]], "meet": [[0, 0], [0, 1]]},
        {"neg": [0, 1]}, {"zero": 0}, names=("0", "1"))
    path = tmp_path / "broken.json"
    path.write_text(dumps_document(broken, "ibsl"), encoding="utf-8")
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_check_wk_passes(capsys, wk_file):
    code, out, err = run(capsys, "check", wk_file)
    assert code == 0
    for i in range(1, 9):
        assert f"[PASS] I{i}" in out
    assert "# elapsed" in err


def test_check_kind_assertion(capsys, wk_file):
    code, _, err = run(capsys, "check", wk_file, "--kind", "gr")
    assert code == 1
    assert "kind mismatch" in err


def test_check_broken_ibsl_witness(capsys, broken_ibsl_file):
    code, out, _ = run(capsys, "check", broken_ibsl_file)
    assert code == 1
    assert "[FAIL] I6" in out
    assert "witness (x=1, y=0)" in out


def test_check_json_format(capsys, wk_file):
    code, out, _ = run(capsys, "check", wk_file, "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["ok"] is True
    assert {c["name"] for c in data["checks"]} >= {f"I{i}"
                                                   for i in range(1, 9)}


def test_check_parse_error_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "ibsl",\n  broken', encoding="utf-8")
    code, _, err = run(capsys, "check", str(bad))
    assert code == 2
    assert "line 2" in err


def test_check_system_triple_witness(capsys, tmp_path):
    two = builtin("two")
    fiber = dumps_document(two, "ba").strip()
    text = f'''{{
      "kind": "direct-system",
      "index": {{"kind": "sl", "size": 3,
                "ops": {{"join": [[0,1,2],[1,1,2],[2,2,2]], "bottom": 0}}}},
      "fibers": {{"0": {fiber}, "1": {fiber}, "2": {fiber}}},
      "transitions": {{"0->1": [1, 0], "1->2": [1, 0], "0->2": [1, 0]}}
    }}'''
    path = tmp_path / "sys.json"
    path.write_text(text, encoding="utf-8")
    code, out, _ = run(capsys, "check", str(path))
    assert code == 1
    assert "[FAIL] arrows-transitive  witness (0, 1, 2)" in out


def test_hom_count_golden(capsys, three_file):
    code, out, _ = run(capsys, "hom", three_file, three_file,
                       "--kind", "bsl", "--count")
    assert code == 0
    assert out == "6\n"


def test_hom_list(capsys, three_file):
    code, out, _ = run(capsys, "hom", three_file, three_file,
                       "--kind", "bsl", "--list")
    assert code == 0
    assert out.splitlines()[0] == "0 0 0"
    assert len(out.splitlines()) == 6


def test_iso_found_and_absent(capsys, wk_file, three_file, tmp_path):
    code, out, _ = run(capsys, "iso", wk_file, wk_file, "--kind", "ibsl")
    assert code == 0
    assert out == "0 1 2\n"
    s2_file = tmp_path / "s2.json"
    s2_file.write_text(dumps_document(builtin("s2"), "ibsl"),
                       encoding="utf-8")
    code, _, err = run(capsys, "iso", wk_file, str(s2_file),
                       "--kind", "ibsl")
    assert code == 1
    assert "no isomorphism" in err


def test_roundtrip_wk(capsys, wk_file):
    code, out, _ = run(capsys, "roundtrip", wk_file)
    assert code == 0
    assert "[PASS] plonka-roundtrip" in out
    assert "[PASS] double-dual-iso" in out


def test_roundtrip_all_kinds(capsys, tmp_path):
    from algdual.duality import dual_of_ibsl
    from algdual.lattices import FinitePoset

    cases = [
        (dumps_document(builtin("two"), "ba"), "stone-double-dual"),
        (dumps_document(builtin("three"), "bsl"), "plonka-roundtrip"),
        (dumps_document(FinitePoset(2, ((True, True), (False, True)))),
         "downset-double-dual"),
        (dumps_document(dual_of_ibsl(builtin("wk"))), "double-dual-iso"),
    ]
    for k, (text, check_name) in enumerate(cases):
        path = tmp_path / f"case{k}.json"
        path.write_text(text, encoding="utf-8")
        code, out, _ = run(capsys, "roundtrip", str(path))
        assert code == 0
        assert f"[PASS] {check_name}" in out


def test_dual_command_emits_valid_documents(capsys, wk_file, three_file,
                                            tmp_path):
    for src in (wk_file, three_file):
        code, out, _ = run(capsys, "dual", src)
        assert code == 0
        doc = loads_document(out)
        assert doc.kind == "gr"
        assert check_document(doc).ok


def test_dual_of_dual_recovers_kind(capsys, wk_file, tmp_path):
    code, out, _ = run(capsys, "dual", wk_file)
    dual_path = tmp_path / "dual.json"
    dual_path.write_text(out, encoding="utf-8")
    code, out, _ = run(capsys, "dual", str(dual_path))
    assert code == 0
    assert loads_document(out).kind == "ibsl"


def test_plonka_commands(capsys, wk_file, tmp_path):
    code, out, _ = run(capsys, "plonka", "decompose", wk_file)
    assert code == 0
    doc = loads_document(out)
    assert doc.kind == "direct-system"
    sys_path = tmp_path / "sys.json"
    sys_path.write_text(out, encoding="utf-8")
    code, out, _ = run(capsys, "plonka", "sum", str(sys_path))
    assert code == 0
    assert loads_document(out).kind == "ibsl"


def test_plonka_kind_mismatch_exit_1(capsys, three_file):
    code, _, err = run(capsys, "plonka", "sum", three_file)
    assert code == 1
    assert "error" in err


def test_hasse_meet_order_golden(capsys, three_file):
    code, out, _ = run(capsys, "hasse", three_file, "--order", "meet")
    assert code == 0
    assert out == (
        "digraph hasse {\n"
        "  rankdir=BT;\n"
        '  n0 [label="0"];\n'
        '  n1 [label="1"];\n'
        '  n2 [label="α"];\n'
        "  n0 -> n1;\n"
        "  n2 -> n0;\n"
        "}\n")


def test_hasse_join_order(capsys, three_file):
    code, out, _ = run(capsys, "hasse", three_file, "--order", "join")
    assert code == 0
    assert "  n0 -> n1;\n  n1 -> n2;" in out


def test_hasse_box_requires_gr(capsys, three_file):
    code, _, err = run(capsys, "hasse", three_file, "--order", "box")
    assert code == 1


def test_gen_deterministic(capsys):
    code, out1, _ = run(capsys, "gen", "--seed", "5")
    assert code == 0
    code, out2, _ = run(capsys, "gen", "--seed", "5")
    assert out1 == out2
    code, out3, _ = run(capsys, "gen", "--seed", "6")
    assert out3 != out1
    doc = loads_document(out1)
    assert doc.kind == "ibsl"
    assert check_document(doc).ok


def test_gen_respects_size_and_fibers(capsys):
    code, out, _ = run(capsys, "gen", "--seed", "1", "--size", "6",
                       "--fibers", "2")
    doc = loads_document(out)
    assert doc.payload.size <= 6


def test_emitted_documents_reparse(capsys, wk_file, tmp_path):
    # self-consistency: every emitted document re-parses and re-validates
    for argv in (("dual", wk_file), ("plonka", "decompose", wk_file),
                 ("gen", "--seed", "3")):
        code, out, _ = run(capsys, *argv)
        assert code == 0
        assert check_document(loads_document(out)).ok


def test_output_to_file(capsys, wk_file, tmp_path):
    out_path = tmp_path / "out.dot"
    code, out, _ = run(capsys, "hasse", wk_file, "--order", "meet",
                       "-o", str(out_path))
    assert code == 0
    assert out == ""
    assert out_path.read_text(encoding="utf-8").startswith("digraph")


def test_dual_of_system_documents(capsys, wk_file, tmp_path):
    # direct-system -> inverse-system -> direct-system through the CLI
    code, out, _ = run(capsys, "plonka", "decompose", wk_file)
    sys_path = tmp_path / "sys.json"
    sys_path.write_text(out, encoding="utf-8")
    code, out, _ = run(capsys, "dual", str(sys_path))
    assert code == 0
    doc = loads_document(out)
    assert doc.kind == "inverse-system"
    assert check_document(doc).ok
    inv_path = tmp_path / "inv.json"
    inv_path.write_text(out, encoding="utf-8")
    code, out, _ = run(capsys, "dual", str(inv_path))
    assert code == 0
    assert loads_document(out).kind == "direct-system"


def test_hom_between_gr_documents(capsys, wk_file, tmp_path):
    code, out, _ = run(capsys, "dual", wk_file)
    gr_path = tmp_path / "gr.json"
    gr_path.write_text(out, encoding="utf-8")
    code, out, _ = run(capsys, "hom", str(gr_path), str(gr_path),
                       "--kind", "igr", "--count")
    assert code == 0
    assert out == "1\n"  # only the identity, matching |Hom_ibsl(wk, wk)|


def test_meetless_ibsl_document(capsys, tmp_path):
    # meet and one are derivable and may be omitted from documents
    text = ('{"kind": "ibsl", "size": 3, "names": ["0", "1", "a"],'
            ' "ops": {"join": [[0,1,2],[1,1,2],[2,2,2]],'
            ' "neg": [1,0,2], "zero": 0}}')
    path = tmp_path / "meetless.json"
    path.write_text(text, encoding="utf-8")
    code, out, _ = run(capsys, "check", str(path))
    assert code == 0
    code, out, _ = run(capsys, "roundtrip", str(path))
    assert code == 0


def test_color_env(capsys, wk_file, monkeypatch):
    monkeypatch.setenv("ALGCTL_COLOR", "1")
    code, out, _ = run(capsys, "check", wk_file)
    assert "\x1b[32mPASS\x1b[0m" in out
    monkeypatch.setenv("ALGCTL_COLOR", "0")
    code, out, _ = run(capsys, "check", wk_file)
    assert "\x1b[" not in out
