import json
import os
from pathlib import Path

import pytest

import ptlsep

DATA = Path(os.environ.get("PTLSEP_DATA", Path(__file__).resolve().parents[2] / "data"))

DYCK = "S -> a S b |\n"
NEAR_DYCK = "S -> A | B\nA -> a A | a T\nB -> B b | T b\nT -> a T b |\n"
AB_STAR = {
    "alphabet": ["a", "b"],
    "states": 2,
    "initial": [0],
    "final": [0],
    "transitions": [[0, "a", 1], [1, "b", 0]],
}


def test_flagship_inseparable():
    i = ptlsep.Language.from_grammar(DYCK)
    e = ptlsep.Language.from_grammar(NEAR_DYCK)
    out = ptlsep.separate(i, e)
    assert out["verdict"] == "inseparable"
    assert out["pattern"] == {"u": [[], [], []], "B": [["a"], ["b"]]}
    assert ptlsep.validate(out, i, e)
    bad = json.loads(json.dumps(out))
    bad["pattern"]["B"][0] = ["b"]
    assert not ptlsep.validate(bad, i, e)


def test_separable_mixed_instance():
    i = ptlsep.Language.load(str(DATA / "dyck1-plus.cfg"))
    e = ptlsep.Language.load(str(DATA / "ab-ab-plus.nfa"))
    out = ptlsep.separate(i, e)
    assert out["verdict"] == "separable"
    assert out["level"] <= 2
    assert ptlsep.validate(out, i, e)


def test_budget_and_resume():
    i = ptlsep.Language.from_grammar(DYCK)
    e = ptlsep.Language.from_grammar(NEAR_DYCK)
    first = ptlsep.separate(i, e, budget=2)
    assert first["verdict"] == "undecided"
    rest = ptlsep.separate(i, e, resume=first["resume"])
    assert rest == ptlsep.separate(i, e)
    assert ptlsep.separate(i, e, parallel=True)["verdict"] == "inseparable"


def test_languages():
    d = ptlsep.Language.from_grammar(DYCK)
    assert not d.is_regular
    assert d.alphabet == ["a", "b"]
    assert d.accepts("aabb") and not d.accepts("abab")
    assert d.accepts(["a", "b"])
    m = ptlsep.Language.from_nfa(AB_STAR)
    assert m.is_regular
    assert ptlsep.Language.from_nfa(m.to_nfa()).accepts("abab")
    assert m.complement().accepts("ba")


def test_decision_procedures():
    d = ptlsep.Language.from_grammar(DYCK)
    assert ptlsep.diagonal(d)
    assert ptlsep.diagonal_via_sup(d)
    assert ptlsep.sup(d, ["a", "b"])
    assert ptlsep.sup_via_separability(d, ["a", "b"])
    closure = ptlsep.downward_closure(d)
    assert closure.is_regular and closure.accepts("aab") and not closure.accepts("ba")
    assert ptlsep.ideals(closure) == [{"atoms": [{"block": ["a"]}, {"block": ["b"]}]}]
    assert ptlsep.contains_pattern(d, {"u": [[], [], []], "B": [["a"], ["b"]]})
    assert ptlsep.simon_equiv("aabb", "aabbb", 2)
    assert not ptlsep.simon_equiv("ab", "ba", 2)


def test_is_ptl():
    assert ptlsep.is_ptl(ptlsep.Language.load(str(DATA / "contains-a.nfa")))["verdict"] == "separable"
    assert ptlsep.is_ptl(ptlsep.Language.from_nfa(AB_STAR))["verdict"] == "inseparable"


def test_errors():
    with pytest.raises(ptlsep.Error) as info:
        ptlsep.Language.from_grammar("S -> a $1\n")
    assert info.value.kind == "reserved-symbol"
    with pytest.raises(ptlsep.Error) as info:
        ptlsep.sup(ptlsep.Language.from_grammar(DYCK), ["b", "a"])
    assert info.value.kind == "ill-formed-instance"
    with pytest.raises(ptlsep.Error) as info:
        ptlsep.Language.from_grammar("S -> a\nnonsense\n")
    assert info.value.kind == "parse" and "line 2" in str(info.value)
    assert isinstance(info.value, ValueError)
