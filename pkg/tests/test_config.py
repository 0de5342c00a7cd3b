import json

import pytest

from gkdv.config import DEFAULTS, KINDS, ConfigError, load_config, merge, parse_assignment, validate


@pytest.mark.parametrize("kind", KINDS)
def test_defaults_validate(kind):
    assert load_config(kind) == DEFAULTS[kind]


def test_merge_is_deep_and_pure():
    base = {"a": {"b": 1, "c": 2}, "d": 3}
    out = merge(base, {"a": {"b": 5}})
    assert out == {"a": {"b": 5, "c": 2}, "d": 3} and base["a"]["b"] == 1


@pytest.mark.parametrize("override, path", [({"flow": {"dtt": 1}}, "flow.dtt"), ({"zzz": 1}, "zzz"),
                                            ({"flow": 3}, "flow")])
def test_merge_reports_key_path(override, path):
    with pytest.raises(ConfigError) as exc:
        merge(DEFAULTS["evolve"], override)
    assert exc.value.path == path


@pytest.mark.parametrize("kind, item, path", [
    ("evolve", "flow.dt=-1", "flow.dt"),
    ("evolve", "flow.integrator=\"RK2\"", "flow.integrator"),
    ("evolve", "data.N=0", "data.N"),
    ("evolve", "flow.adaptive=1", "flow.adaptive"),
    ("smoothing", "flow.courant=0", "flow.courant"),
    ("sample", "M=true", "M"),
    ("smoothing", "Ns=[32, 16]", "Ns"),
    ("cauchy", "flow.max_dt=0", "flow.max_dt"),
    ("resonance", "sizes=[8, 8, 8, 8, 6]", "sizes"),
    ("xsb", "linear.window=\"tri\"", "linear.window"),
])
def test_validation_paths(kind, item, path):
    with pytest.raises(ConfigError) as exc:
        load_config(kind, overrides=[item])
    assert exc.value.path == path and path in str(exc.value)


def test_missing_leaf():
    cfg = json.loads(json.dumps(DEFAULTS["conserve"]))
    del cfg["flow"]["T"]
    with pytest.raises(ConfigError, match="flow.T: missing"):
        validate("conserve", cfg)


def test_assignment_parsing():
    assert parse_assignment("flow.dt=5e-4") == (["flow", "dt"], 5e-4)
    assert parse_assignment("data.kind=gibbs") == (["data", "kind"], "gibbs")
    assert parse_assignment("Ns=[1, 2]") == (["Ns"], [1, 2])
    assert parse_assignment("x=a=b") == (["x"], "a=b")
    with pytest.raises(ConfigError):
        parse_assignment("flow.dt")


def test_file_then_overrides(tmp_path):
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"kind": "evolve", "flow": {"dt": 2e-3, "T": 0.5}}))
    cfg = load_config("evolve", p, ["flow.T=0.25"])
    assert cfg["flow"]["dt"] == 2e-3 and cfg["flow"]["T"] == 0.25


@pytest.mark.parametrize("content, fragment", [(None, "not found"), ("{", "invalid JSON"), ("[1]", "top level")])
def test_file_errors(tmp_path, content, fragment):
    p = tmp_path / "c.json"
    if content is not None:
        p.write_text(content)
    with pytest.raises(ConfigError, match=fragment) as exc:
        load_config("sample", p)
    assert exc.value.path == "config"


def test_infinite_temperature_allowed():
    assert load_config("sample", overrides=["B=Infinity"])["B"] == float("inf")
