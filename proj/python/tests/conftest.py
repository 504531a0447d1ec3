import json
import os
import shutil

import pytest


UNIT_SQUARE = [["0", "0"], ["1", "0"], ["1", "1"], ["0", "1"]]


def square_instance(colors):
    return json.dumps({
        "masses": [
            {"color": i, "polygons": [{"weight": "1", "outer": poly, "holes": []}]}
            for i, poly in enumerate(colors)
        ]
    })


@pytest.fixture
def two_colors():
    half = [["0", "0"], ["1/2", "0"], ["1/2", "1"], ["0", "1"]]
    return square_instance([UNIT_SQUARE, half])


@pytest.fixture
def ch_two_agents():
    return json.dumps({
        "agents": [
            {"blocks": [["0", "1/2", "2"]]},
            {"blocks": [["1/4", "3/4", "1"], ["3/4", "1", "2"]]},
        ]
    })


@pytest.fixture
def cli():
    path = os.environ.get("PIZZA_CLI") or shutil.which("pizza")
    if not path:
        pytest.skip("command-line tool not available")
    return path
