import json

import jsonschema
import pytest

from suspkit import corpus
from suspkit.cli import main, run

SCHEMA = json.loads(corpus.read("schema.json"))


def call(*argv):
    code, out = run(list(argv))
    jsonschema.validate(out, SCHEMA)
    return code, out


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


# -- documented examples ------------------------------------------------------

def test_h1_fib_suspension():
    code, out = call("h1", "bundled:fib-suspension.grp")
    assert code == 0
    assert out["witness"] == {"invariant_factors": [], "free_rank": 1}


def test_toroidal_search_fib():
    code, out = call("toroidal-search", "bundled:fib.aut", "--max-len", "4", "--max-pow", "2")
    assert code == 0
    assert out["witness"] == {"word": "a b a^-1 b^-1", "k": 2}


def test_orbit_decide_parity():
    code, out = call("orbit-decide", "--splitting", "bundled:parity.gog",
                     "--centralizers", "bundled:parity.cent", "--family", "bundled:parity.fam")
    assert code == 1 and out["verdict"] == "no"
    assert out["witness"]["failing_index"] == 0
    assert out["witness"]["system"]["A"] == [[2]] and out["witness"]["system"]["b"] == [1]


# -- every command ------------------------------------------------------------

def test_h1_of_splitting():
    code, out = call("h1", "bundled:klein.gog")
    assert code == 0 and out["witness"] == {"invariant_factors": [2], "free_rank": 1}


def test_delta_and_ncount():
    code, out = call("delta", "bundled:hnn_z.gog", "--word", "a e")
    assert code == 0 and out["witness"] == {"delta": 1}
    code, out = call("delta", "bundled:parity.gog", "--element", "{a^-2} e {} e {}")
    assert out["witness"] == {"delta": -2}
    code, out = call("delta", "bundled:fib-suspension.grp", "--word", "t a t")
    assert out["witness"] == {"delta": 2}
    code, out = call("ncount", "bundled:theta.gog", "--element", "{} e {} fbar {}")
    assert code == 0 and out["witness"]["counts"] == {"e": 1, "f": -1}


def test_twist_apply(tmp_path):
    tw = write(tmp_path, "t.tw", "twist e : a\n")
    code, out = call("twist-apply", "bundled:hnn_z.gog", "--twists", tw, "--element", "{} e {}")
    assert code == 0
    assert out["witness"]["result"] == "{} e {a}"
    assert out["witness"]["transvections"] == [[[1, 0], [1, 1]]]


def test_twist_apply_invalid(tmp_path):
    tw = write(tmp_path, "t.tw", "twist e : a\n")
    code, out = call("twist-apply", "bundled:klein.gog", "--twists", tw, "--element", "{a}")
    assert code == 2 and out["verdict"] == "parse-error"


def test_validate(tmp_path):
    assert call("validate", "bundled:theta.gog")[0] == 0
    bad = corpus.read("hnn_z.gog").replace("z -> a\n\n[inject ebar]", "z -> a a^-1\n\n[inject ebar]")
    code, out = call("validate", write(tmp_path, "bad.gog", bad))
    assert code == 1 and out["verdict"] == "invalid" and out["diagnostics"]
    tw = write(tmp_path, "t.tw", "twist e : a\ninert v : a\n")
    assert call("validate", "bundled:hnn_z.gog", "--twists", tw)[0] == 0


def test_collapse():
    code, out = call("collapse", "bundled:collapsible.gog", "--edge", "e")
    assert code == 0 and out["diagnostics"] == []
    assert out["witness"]["h1_before"] == out["witness"]["h1_after"]
    code, out = call("collapse", "bundled:hnn_z.gog", "--edge", "e")
    assert code == 2 and out["verdict"] == "error"


def test_suspend():
    code, out = call("suspend", "bundled:klein.aut")
    assert code == 0
    assert out["witness"]["h1"] == {"invariant_factors": [2], "free_rank": 1}


def test_check_iso_and_extract():
    args = ("bundled:fib.aut", "bundled:fib_ad.aut", "bundled:fib_ad.iso")
    code, out = call("check-iso", *args)
    assert code == 0 and out["witness"]["transverse_degree"] == 1
    code, out = call("extract-conj", *args)
    assert code == 0 and out["witness"]["certificate"].startswith("f0 : a b^-1\n")
    code, out = call("check-iso", "bundled:id1.aut", "bundled:id1.aut", "bundled:id1_reverse.iso")
    assert code == 1 and out["witness"]["transverse_degree"] == -1


def test_check_iso_invalid_certificate(tmp_path):
    iso = write(tmp_path, "bad.iso", "[map]\na -> b\nb -> a\nt -> t\n[inverse]\na -> b\nb -> a\nt -> t\n")
    code, out = call("check-iso", "bundled:fib.aut", "bundled:fib.aut", iso)
    assert code == 1 and out["verdict"] == "invalid-certificate"


def test_verify_conj(tmp_path):
    code, out = call("verify-conj", "bundled:fib.aut", "bundled:fib_ad.aut", "bundled:fib_ad.conj")
    assert code == 0 and out["verdict"] == "verified"
    wrong = write(tmp_path, "w.conj", "f0 : a\n[psi]\na -> a\nb -> b\n")
    code, out = call("verify-conj", "bundled:fib.aut", "bundled:fib_ad.aut", wrong)
    assert code == 1 and out["verdict"] == "fails"


def test_toroidal_bounded_negative():
    code, out = call("toroidal-search", "bundled:fib.aut", "--max-len", "3", "--max-pow", "2")
    assert code == 1 and out["verdict"] == "no-witness-within-bounds"


def test_pipeline_exit_codes():
    code, out = call("pipeline", "bundled:fib.aut", "bundled:fib_ad.aut", "--iso", "bundled:fib_ad.iso")
    assert code == 0 and "f0 : a b^-1" in out["witness"]["certificate"]
    code, out = call("pipeline", "bundled:fib.aut", "bundled:fib_ad.aut")
    assert code == 3
    code, out = call("pipeline", "bundled:id1.aut", "bundled:id1.aut", "--iso", "bundled:id1_reverse.iso")
    assert code == 1


def test_pipeline_with_splitting(tmp_path):
    iso = write(tmp_path, "shear.iso", "[map]\na -> a t\nt -> t\n[inverse]\na -> a t^-1\nt -> t\n")
    code, out = call("pipeline", "bundled:id1.aut", "bundled:id1.aut", "--iso", iso,
                     "--splitting", "bundled:parity.gog", "--centralizers", "bundled:parity.cent")
    assert code == 0


# -- errors -------------------------------------------------------------------

def test_parse_error_has_position(tmp_path):
    bad = write(tmp_path, "bad.aut", "a -> b\nb -> a c\n")
    code, out = call("suspend", bad)
    assert code == 2 and out["verdict"] == "parse-error"
    assert out["error"]["line"] == 2 and out["error"]["column"] == 8


def test_usage_errors():
    assert call("bogus")[0] == 2
    assert call("orbit-decide", "--splitting", "bundled:parity.gog")[0] == 2
    code, out = call("h1", "bundled:no-such-file.grp")
    assert code == 2 and out["verdict"] == "error"


def test_main_prints_json(capsys):
    assert main(["h1", "bundled:hnn-z.grp"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["witness"]["free_rank"] == 2


def test_main_human(capsys):
    assert main(["--human", "toroidal-search", "bundled:fib.aut"]) == 0
    text = capsys.readouterr().out
    assert "toroidal-search: witness" in text and "k: 2" in text


@pytest.mark.parametrize("name", [n for n in corpus.bundled_names() if n.endswith(".gog")])
def test_h1_every_bundled_splitting(name):
    code, out = call("h1", "bundled:" + name)
    assert code == 0 and out["witness"]["free_rank"] >= 1
