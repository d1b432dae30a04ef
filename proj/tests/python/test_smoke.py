import json

import pytest

import christol


def test_expand_elliptic():
    got = christol.expand(p=5, curve="(1-4*x^3)*T^2-1", a0=1, precision=8)
    assert got == [1, 0, 0, 2, 0, 0, 1, 0]


def test_kernel_size_thue_morse():
    assert christol.kernel_size(p=2, curve="(1+x)^3*T^2 + (1+x)^2*T + x", a0=0) == 2


def test_automaton_json_and_eval():
    text = christol.automaton_json(p=7, curve="(1-2*x)*T-1", a0=1)
    d = json.loads(text)
    assert d["q"] == 7
    assert d["convention"] == "reverse"
    assert d["n_states"] == 3
    # a(3) = 2^3 = 1 mod 7
    assert christol.eval_automaton_json(text, 3) == 1
    fwd = json.loads(christol.automaton_json(p=7, curve="(1-2*x)*T-1", a0=1,
                                             convention="forward"))
    assert fwd["convention"] == "forward"
    assert fwd["n_states"] == 3


def test_degree_one_curves_need_no_seed():
    got = christol.expand(p=3, curve="(1-2*x)*T-1", precision=6)
    assert got == [1, 2, 1, 2, 1, 2]


def test_complexity_json():
    rep = json.loads(christol.complexity_json(p=5, curve="(1-4*x^3)*T^2-1", a0=1, genus=1))
    assert rep["n_rev"] == 9
    main = rep["bounds"][0]
    assert main["name"] == "main"
    assert main["value"] == "3125"
    assert main["verdict"] == "PASS"


def test_algebraize_text():
    rel = christol.algebraize_text(p=7, curve="(1-2*x)*T-1", a0=1, precision=128)
    assert "T" in rel


def test_sweep_json():
    s = json.loads(christol.sweep_json("1/(1-2*x)", [3, 5, 7]))
    assert s["verdict"] == "Unbounded"
    assert [r["n_p"] for r in s["rows"]] == [2, 4, 3]


def test_error_mapping():
    with pytest.raises(christol.UserError):
        christol.expand(p=6, curve="T-x")  # 6 is not prime
    with pytest.raises(christol.UserError):
        christol.expand(p=5, curve="(1-4*x)*T^2-1")  # missing a0 on degree 2
