"""The command-line surface: exit codes, documents, determinism."""

import json
import pathlib

import pytest

from sigmacat import io as sio
from sigmacat.cli import run
from sigmacat.errors import ParseError, ValidationError
from sigmacat.fincat import arrow_category
from sigmacat.fixtures import arrow_2cat, diagram_pick0, pseudo_swap
from sigmacat.transforms import CatDiagram

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


def test_every_fixture_parses_and_validates(capsys):
    for path in sorted(FIXTURES.glob("*.json")):
        code, out = invoke(capsys, "validate", str(path))
        assert code == 0, path.name
        doc = json.loads(out)
        assert doc["verdict"] == "valid"


def test_round_trip_is_semantically_stable():
    for path in sorted(FIXTURES.glob("*.json")):
        text = path.read_text()
        value = sio.parse_document(text)
        if isinstance(value, CatDiagram):
            again = sio.parse_document(sio.dumps(sio.diagram_to_doc(value)))
            assert again.on_obj == value.on_obj
            assert again.on_1 == value.on_1
            assert again.kind == value.kind


def test_reports_are_byte_identical(capsys):
    commands = [
        ("validate", str(FIXTURES / "arrow_category.json")),
        ("flat", str(FIXTURES / "representable_0.json")),
        ("elements", str(FIXTURES / "diagram_pick0.json")),
        ("filtered", str(FIXTURES / "arrow_2cat_marked.json")),
        ("colimit", str(FIXTURES / "diagram_pick0.json"), "--sigma", "f"),
    ]
    for argv in commands:
        _, first = invoke(capsys, *argv)
        _, second = invoke(capsys, *argv)
        assert first == second and first


def test_flat_command_verdicts(capsys):
    code, out = invoke(capsys, "flat", str(FIXTURES / "representable_0.json"))
    assert code == 0
    assert json.loads(out)["verdict"] == "flat"
    code, out = invoke(capsys, "flat", str(FIXTURES / "const_discrete_pair.json"))
    assert code == 0
    assert json.loads(out)["verdict"] == "not-flat"
    code, out = invoke(capsys, "flat", str(FIXTURES / "pseudo_swap.json"))
    assert code == 0
    doc = json.loads(out)
    assert doc["verdict"] == "flat"
    assert "strictified" in doc["route"]


def test_undecided_colimit_exits_three(capsys):
    code, out = invoke(capsys, "colimit",
                       str(FIXTURES / "const_terminal_parallel.json"),
                       "--sigma", "u,v", "--cap", "8")
    assert code == 3
    assert json.loads(out)["status"] == "undecided-at-cap"


def test_small_cap_is_honest(capsys):
    code, out = invoke(capsys, "colimit",
                       str(FIXTURES / "const_terminal_parallel.json"),
                       "--sigma", "u,v", "--cap", "2")
    assert code == 3


def test_broken_document_exits_two(tmp_path, capsys):
    bad = tmp_path / "broken.json"
    bad.write_text('{"objects": ["x"]}')
    code, out = invoke(capsys, "validate", str(bad))
    assert code == 2
    assert json.loads(out)["error"] == "invalid-input"
    worse = tmp_path / "worse.json"
    worse.write_text("{not json")
    code, _ = invoke(capsys, "validate", str(worse))
    assert code == 2


def test_semantically_broken_category_exits_two(tmp_path, capsys):
    c = arrow_category()
    doc = sio.fincat_to_doc(c)
    doc["compose"] = [e for e in doc["compose"]
                      if not (e["g"] == "f" and e["f"] == "id_0")]
    bad = tmp_path / "bad_cat.json"
    bad.write_text(sio.dumps(doc))
    code, out = invoke(capsys, "validate", str(bad))
    assert code == 2


def test_unknown_keys_rejected(tmp_path, capsys):
    doc = sio.fincat_to_doc(arrow_category())
    doc["extra"] = 1
    p = tmp_path / "extra.json"
    p.write_text(sio.dumps(doc))
    code, _ = invoke(capsys, "validate", str(p))
    assert code == 2


def test_whitespace_identifier_rejected():
    doc = sio.fincat_to_doc(arrow_category())
    doc["objects"] = ["0", "bad name"]
    with pytest.raises(ParseError):
        sio.fincat_from_doc(doc)


def test_hom_and_limit_commands(capsys):
    code, out = invoke(capsys, "hom", str(FIXTURES / "const_terminal.json"),
                       str(FIXTURES / "diagram_pick0.json"), "--flavor", "lax")
    assert code == 0
    assert json.loads(out)["objects"] == 2
    code, out = invoke(capsys, "limit", str(FIXTURES / "const_terminal.json"),
                       str(FIXTURES / "diagram_pick0.json"), "--flavor", "lax")
    assert code == 0


def test_elements_command_with_sigma(capsys):
    code, out = invoke(capsys, "elements", str(FIXTURES / "diagram_pick0.json"),
                       "--sigma", "f")
    assert code == 0
    doc = json.loads(out)
    assert set(doc["cart_sigma"]) <= set(doc["cart"])
    code, out = invoke(capsys, "elements", str(FIXTURES / "pseudo_z2.json"),
                       "--pseudo")
    assert code == 0


def test_filtered_and_cofinal_commands(capsys, tmp_path):
    code, out = invoke(capsys, "filtered",
                       str(FIXTURES / "arrow_2cat_marked.json"))
    assert code == 0 and json.loads(out)["verdict"] is True
    code, out = invoke(capsys, "filtered",
                       str(FIXTURES / "arrow_2cat_marked.json"), "--co")
    assert code == 0
    # a cofinal inclusion document
    from sigmacat.transforms import TwoFunctor
    from sigmacat.two_cat import terminal_2cat
    a = arrow_2cat()
    t2 = terminal_2cat()
    T = TwoFunctor(t2, a, {"*": "1"}, {"id_*": "id_1"}, {"i2_id_*": "i2_id_1"})
    p = tmp_path / "incl.json"
    p.write_text(sio.dumps(sio.twofunctor_to_doc(T)))
    code, out = invoke(capsys, "cofinal", str(p), "--sigma", "",
                       "--sigma-prime", "f")
    assert code == 0 and json.loads(out)["verdict"] is True


def test_exact_command(capsys):
    code, out = invoke(capsys, "exact",
                       str(FIXTURES / "repr_diamond_a.json"))
    assert code == 0
    doc = json.loads(out)
    assert doc["verdict"] is True and len(doc["per_shape"]) > 0


def test_bilimit_command(capsys, tmp_path):
    code, out = invoke(capsys, "bilimit", "--shape", "biproduct",
                       str(FIXTURES / "arrow_category.json"),
                       str(FIXTURES / "iso_pair.json"))
    assert code == 0
    doc = json.loads(out)
    assert len(doc["category"]["objects"]) == 4
    # biinserter of the identity against the collapse-to-1 endofunctor
    from sigmacat.fincat import Functor, identity_functor
    two = arrow_category()
    const1 = Functor(two, two, {"0": "1", "1": "1"},
                     {a: "id_1" for a in two.arrows})
    f1 = tmp_path / "idf.json"
    f2 = tmp_path / "const1.json"
    f1.write_text(sio.dumps(sio.functor_to_doc(identity_functor(two))))
    f2.write_text(sio.dumps(sio.functor_to_doc(const1)))
    code, out = invoke(capsys, "bilimit", "--shape", "biinserter",
                       str(f1), str(f2))
    assert code == 0
    assert len(json.loads(out)["category"]["objects"]) == 2


def test_strictify_command(capsys, tmp_path):
    out_path = tmp_path / "strict.json"
    code, _ = invoke(capsys, "strictify", str(FIXTURES / "pseudo_z2.json"),
                     "-o", str(out_path))
    assert code == 0
    code, out = invoke(capsys, "validate", str(out_path))
    assert code == 0


def test_yoneda_command(capsys):
    code, out = invoke(capsys, "yoneda", str(FIXTURES / "arrow_2cat.json"),
                       "--object", "0", "--against",
                       str(FIXTURES / "representable_0.json"))
    assert code == 0 and json.loads(out)["verdict"] is True


def test_budget_flag_limits_work(capsys):
    code, out = invoke(capsys, "--budget", "5", "hom",
                       str(FIXTURES / "const_terminal.json"),
                       str(FIXTURES / "diagram_pick0.json"), "--flavor", "lax")
    assert code == 2
    assert json.loads(out)["error"] == "invalid-input"


def test_budget_env_var(capsys, monkeypatch):
    monkeypatch.setenv("SIGMACAT_BUDGET", "5")
    code, out = invoke(capsys, "hom", str(FIXTURES / "const_terminal.json"),
                       str(FIXTURES / "diagram_pick0.json"), "--flavor", "lax")
    assert code == 2
