import json
import os
import pathlib
import subprocess
import sys

import jsonschema
import pytest

import recurshift

ROOT = pathlib.Path(__file__).resolve().parents[2]
SCHEMA = json.loads((ROOT / "docs" / "report_schema.json").read_text())


def omega(n):
    w = "1"
    for k in range(1, n):
        w = w + "0" * k + w
    return w


def test_words():
    assert recurshift.omega_word(3) == "10100101"
    assert recurshift.omega_word(9) == omega(9)
    assert recurshift.xi_segment(-3, 7) == "000" + omega(3)
    assert recurshift.xi_at(11) == 1
    assert recurshift.xi_at(-5) == 0


def test_big_lengths_are_python_ints():
    length = 1
    for n in range(1, 100):
        length = 2 * length + n
    assert recurshift.omega_length(100) == length
    assert recurshift.xi_at(recurshift.omega_length(90)) == 0
    assert recurshift.point_at("rxi:0", -(10**30)) == recurshift.xi_at(10**30)


def test_language():
    words, horizon = recurshift.factors(3)
    assert words == ["000", "001", "010", "100", "101"]
    assert horizon >= 5
    assert recurshift.factor_complexity(2) == 3
    occ = recurshift.occurrences("101", 0, 50)
    assert occ["positions"][:3] == [0, 5, 11]


def test_points_and_metric():
    assert recurshift.reflect("xi:4") == "rxi:-4"
    assert recurshift.distance("xi:0", "xi:0+flip{-3}") == ("1/8", True)
    assert recurshift.distance("zero", "xi:0") == ("1", True)
    with pytest.raises(ValueError):
        recurshift.distance("xi:0", "nonsense")


def test_find_m():
    m = recurshift.find_m(3, recurshift.omega_length(5))
    assert recurshift.xi_segment(m, m + 3) == "0001"


def test_verify_and_classify():
    report = recurshift.verify("2a", n_max=80)
    assert report["status"] == "pass"
    jsonschema.validate(report, SCHEMA)
    c = recurshift.classify("rxi:0", 4, recurshift.omega_length(20))
    assert c["verdict"] == "negatively-recurrent-evidence"
    assert c["negative_returns"][0] == -23


def test_exit_codes_and_schema():
    code, report = recurshift.command("probe", "--kind", "hyperbolic", "--lambda", "1/4")
    assert code == 1
    assert report["status"] == "fail"
    jsonschema.validate(report, SCHEMA)
    code, report = recurshift.command("classify", "--point", "xi:0", "--horizon-n", "3")
    assert code == 2
    jsonschema.validate(report, SCHEMA)
    with pytest.raises(ValueError):
        recurshift.command("gen", "--bogus")


def test_large_integers_are_strings_in_json():
    code, report = recurshift.command("query", "--omega-length", "100")
    assert code == 0
    assert report["witnesses"][0]["length"] == str(recurshift.omega_length(100))
    jsonschema.validate(report, SCHEMA)


def test_probe_is_deterministic():
    a = recurshift.probe("expansivity", seed=5, samples=30)
    b = recurshift.probe("expansivity", seed=5, samples=30)
    assert a == b
    assert a["seed"] == 5
    jsonschema.validate(a, SCHEMA)


def test_materialize_cap_from_environment():
    script = (
        "import recurshift\n"
        "print(recurshift.materialize_cap())\n"
        "try:\n"
        "    recurshift.xi_segment(0, 200)\n"
        "    print('ok')\n"
        "except recurshift.CapExceeded:\n"
        "    print('cap')\n"
    )
    env = dict(os.environ, RECURSHIFT_MAX_MATERIALIZE="100")
    out = subprocess.run([sys.executable, "-c", script], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["100", "cap"]
    env.pop("RECURSHIFT_MAX_MATERIALIZE")
    out = subprocess.run([sys.executable, "-c", script], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split()[1] == "ok"
