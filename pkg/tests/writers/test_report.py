"""Tests for the writers.json and writers.csv modules

"""

# Standard library imports
import io
import json

# Third party imports
import pandas as pd
import pytest

# Eddyscan imports
from eddyscan import writers
from eddyscan.data import DetectionReport


#
# JSON
#
def test_json_report(write_and_read, report):
    document = json.loads(write_and_read("json", report))

    assert document == report.as_dict()
    assert document["method"] == "hybrid"
    assert document["frame_index"] == 4
    assert document["candidates_total"] == 5
    assert document["accepted"] == 2
    assert document["rejections_by_criterion"] == dict(
        C1=0, C2=0, C2a=0, C3=2, C4=0, masked_ring=0, duplicate=1
    )
    assert list(document["timing"]) == ["centers", "verify"]


def test_json_eddy_layers(write_and_read, report):
    first, second = json.loads(write_and_read("json", report))["eddies"]

    assert first["id"] == 1
    assert first["polarity"] == "cyclonic"
    assert [(layer["x"], layer["y"], layer["radius"]) for layer in first["layers"]] == [
        (50, 60, 11), (51, 60, 10),
    ]
    assert first["layers"][0]["profiles"]["temperature"] == dict(mean=20.5, min=19.0, max=22.0, count=13)
    assert first["layers"][1]["profiles"]["temperature"] is None
    assert second["polarity"] == "anticyclonic"
    assert "profiles" not in second["layers"][0]


def test_json_empty_report(write_and_read):
    document = json.loads(write_and_read("json", DetectionReport(method="ow")))
    assert document["eddies"] == []
    assert document["accepted"] == 0


def test_json_to_stdout(write_to_stdout, report, capsys):
    write_to_stdout("json", report)
    assert json.loads(capsys.readouterr().out)["accepted"] == 2


#
# CSV
#
def test_csv_report(write_and_read, report):
    text = write_and_read("csv", report)
    header = text.splitlines()[0]
    assert header.startswith("frame_index,id,polarity,layer,x,y,radius,temperature_mean,temperature_min")
    assert header.endswith("speed_mean,speed_min,speed_max")

    table = pd.read_csv(io.StringIO(text))
    assert len(table) == 3
    assert table.id.tolist() == [1, 1, 2]
    assert table.layer.tolist() == [0, 1, 0]
    assert table.polarity.tolist() == ["cyclonic", "cyclonic", "anticyclonic"]
    assert table.temperature_mean[0] == pytest.approx(20.5)
    assert table.temperature_mean[1:].isna().all()
    assert table.salinity_max.isna().all()


def test_csv_empty_report(write_and_read):
    text = write_and_read("csv", DetectionReport())
    assert len(text.splitlines()) == 1


def test_csv_table(write_and_read):
    table = pd.DataFrame(dict(sv=[1.5, 3.0], accepted=[2, 3]))
    assert write_and_read("csv", table).splitlines() == ["sv,accepted", "1.5,2", "3.0,3"]


def test_writers_available():
    assert writers.names() == ("csv", "json", "raw")
    assert not writers.exists("proj")
