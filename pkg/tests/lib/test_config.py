"""Tests for the lib.config-module

"""

# Standard library imports
import json

# Third party imports
import pytest

# Eddyscan imports
from eddyscan.lib import exceptions
from eddyscan.lib.config import (
    OwParams,
    RunConfig,
    SearchParams,
    TrackParams,
    VerifyParams,
    WaParams,
    parameter_names,
    parse_value,
)


def test_defaults():
    """The defaults are the values tuned for a 4 km grid"""
    config = RunConfig()
    assert (config.search.re, config.search.rv, config.search.rc, config.search.rs) == (7, 21, 5, 3)
    assert config.search.smooth == 3
    assert (config.verify.sv, config.verify.sa, config.verify.sae) == (3.0, 108.0, 18.0)
    assert (config.verify.san, config.verify.sd, config.verify.sy) == (2, 24.0, 120.0)
    assert config.ow.k == 0.2
    assert config.method == "hybrid"
    assert config.workers == 1


@pytest.mark.parametrize(
    "params, values",
    [
        (SearchParams, dict(re=6)),
        (SearchParams, dict(rv=1)),
        (SearchParams, dict(rs=2.0)),
        (SearchParams, dict(smooth=0)),
        (SearchParams, dict(smooth=4)),
        (VerifyParams, dict(sv=0.5)),
        (VerifyParams, dict(sae=120.0)),
        (VerifyParams, dict(sa=200.0)),
        (VerifyParams, dict(san=-1)),
        (VerifyParams, dict(sd=90.0)),
        (VerifyParams, dict(sy=180.0)),
        (OwParams, dict(k=0.0)),
        (OwParams, dict(connectivity=6)),
        (WaParams, dict(step=0.0)),
        (WaParams, dict(max_steps=4)),
        (TrackParams, dict(max_displacement=-1.0)),
        (TrackParams, dict(max_missed_frames=-1)),
    ],
)
def test_invalid_parameters(params, values):
    with pytest.raises(exceptions.ConfigError):
        params(**values)


def test_invalid_workers():
    with pytest.raises(exceptions.ConfigError):
        RunConfig(workers=0)


def test_from_dict():
    config = RunConfig.from_dict(dict(method="ow", search=dict(re=9), ow=dict(k=0.5, connectivity=8)))
    assert config.method == "ow"
    assert config.search.re == 9
    assert config.search.rv == 21
    assert config.ow == OwParams(k=0.5, connectivity=8)


@pytest.mark.parametrize(
    "config",
    [dict(colour="red"), dict(search=dict(radius=3)), dict(verify=[1, 2]), dict(verify=dict(sv=0.1))],
)
def test_from_dict_invalid(config):
    with pytest.raises(exceptions.ConfigError):
        RunConfig.from_dict(config)


def test_from_file(tmpdir):
    file_path = tmpdir.join("config.json")
    file_path.write(json.dumps(dict(workers=4, verify=dict(san=0))))
    config = RunConfig.from_file(str(file_path))
    assert config.workers == 4
    assert config.verify.san == 0


def test_from_file_not_json(tmpdir):
    file_path = tmpdir.join("config.json")
    file_path.write("workers = 4")
    with pytest.raises(exceptions.ConfigError):
        RunConfig.from_file(str(file_path))


def test_from_file_missing(tmpdir):
    with pytest.raises(exceptions.FrameIOError):
        RunConfig.from_file(str(tmpdir.join("missing.json")))


def test_with_overrides():
    config = RunConfig().with_overrides(sv=2.5, ow_k=0.4, wa_step=0.25, max_displacement=4.0, workers=3, re=None)
    assert config.verify.sv == 2.5
    assert config.verify.sa == 108.0
    assert config.ow.k == 0.4
    assert config.wa.step == 0.25
    assert config.track.max_displacement == 4.0
    assert config.workers == 3
    assert config.search.re == 7


def test_with_overrides_validates():
    with pytest.raises(exceptions.ConfigError):
        RunConfig().with_overrides(sv=0.5)


def test_with_overrides_unknown():
    with pytest.raises(exceptions.ConfigError):
        RunConfig().with_overrides(search=SearchParams())


def test_parameter_names():
    names = parameter_names()
    assert names["re"] == ("search", "re")
    assert names["smooth"] == ("search", "smooth")
    assert names["san"] == ("verify", "san")
    assert names["ow_k"] == ("ow", "k")
    assert names["wa_closure_distance"] == ("wa", "closure_distance")
    assert names["polarity_must_match"] == ("track", "polarity_must_match")


@pytest.mark.parametrize(
    "name, text, expected",
    [("re", "9", 9), ("sv", "2.5", 2.5), ("ow_k", "1", 1.0), ("polarity_must_match", "False", False)],
)
def test_parse_value(name, text, expected):
    value = parse_value(name, text)
    assert value == expected
    assert type(value) is type(expected)


@pytest.mark.parametrize("name, text", [("re", "seven"), ("polarity_must_match", "maybe"), ("radius", "3")])
def test_parse_value_invalid(name, text):
    with pytest.raises(exceptions.ConfigError):
        parse_value(name, text)


def test_as_dict_round_trip():
    config = RunConfig(method="wa", workers=2).with_overrides(san=1)
    items = config.as_dict()
    items.pop("report")
    items.pop("rings")
    assert RunConfig.from_dict(items) == config
