import json
import math

import numpy as np

from pumpsteer import figures
from pumpsteer.scan import sweep
from pumpsteer.serialize import csv_text, dumps_json, grid_csv, grid_json, grid_ppm, read_csv, read_ppm


def test_csv_formatting():
    text = csv_text([(1, 0.1, True, "x,y")], ["i", "f", "b", "s"], {"z": 1, "a": "two"})
    assert text == '# a=two\n# z=1\ni,f,b,s\n1,0.1,true,"x,y"\n'
    meta, header, rows = read_csv(text)
    assert meta == {"a": "two", "z": "1"}
    assert rows == [["1", "0.1", "true", "x,y"]]


def test_floats_round_trip_bit_exact():
    vals = [math.pi, 1 / 3, 1e-300, 2.0**-1074, -0.0, 12345.678901234567]
    _, _, rows = read_csv(csv_text([[v] for v in vals], ["v"]))
    assert [float(r[0]) for r in rows] == vals


def test_json_sorted_and_terminated():
    text = dumps_json({"b": 1, "a": [0.5]})
    assert text.endswith("}\n")
    assert text.index('"a"') < text.index('"b"')


def test_grid_writers_agree():
    grid = sweep(figures.fig2("b", 6))
    payload = json.loads(dumps_json(grid_json(grid)))
    assert np.array_equal(np.array(payload["codes"]), grid.codes)
    _, header, rows = read_csv(grid_csv(grid))
    assert [int(r[2]) for r in rows] == grid.codes.ravel().tolist()
    img = read_ppm(grid_ppm(grid))
    color = {int(k): v["color"] for k, v in payload["legend"].items()}
    assert img[-1, 0].tolist() == color[int(grid.codes[0, 0])]
    assert img[0, -1].tolist() == color[int(grid.codes[-1, -1])]


def test_nan_values_become_null():
    grid = sweep(figures.fig2("b", 3))
    grid.values[0, 0, 0] = np.nan
    assert grid_json(grid)["values"][0][0][0] is None
