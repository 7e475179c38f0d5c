import json

import pytest
from conftest import data_path

from soficmaps.core.errors import EmptyLanguageError, PresentationError, UnknownSymbolError
from soficmaps.presentation import (
    LabeledPresentation,
    load_presentation,
    parse_presentation,
    presentation_from_dict,
)


def test_golden_mean_file_loads_as_two_vertices():
    pres = load_presentation(data_path("gm"))
    assert pres.alphabet == ("0", "1")
    assert pres.n_vertices == 2
    assert pres.is_right_resolving()


def test_full_shift_file_loads_as_one_vertex():
    pres = load_presentation(data_path("full2"))
    assert pres.n_vertices == 1
    assert len(pres.edges) == 2


def test_dead_end_graph_has_empty_language():
    with pytest.raises(EmptyLanguageError):
        load_presentation(data_path("dead_end"))


def test_essentialize_drops_transient_vertices():
    raw = LabeledPresentation.build(["0"], 3, [(0, 0, "0"), (1, 0, "0"), (0, 2, "0")])
    core = raw.essentialize()
    assert core.n_vertices == 1
    assert core.edges == ((0, 0, "0"),)


def test_unknown_label_is_rejected():
    data = {"alphabet": ["0"], "vertices": 1, "edges": [{"from": 0, "to": 0, "label": "x"}]}
    with pytest.raises(UnknownSymbolError):
        presentation_from_dict(data)


@pytest.mark.parametrize(
    "data",
    [
        {"vertices": 1, "edges": []},
        {"alphabet": [], "vertices": 1, "edges": []},
        {"alphabet": ["0"], "vertices": -1, "edges": []},
        {"alphabet": ["0"], "vertices": 1, "edges": [{"from": 0, "label": "0"}]},
        {"alphabet": ["0"], "vertices": 1, "edges": [{"from": 0, "to": 3, "label": "0"}]},
    ],
)
def test_malformed_objects_are_rejected(data):
    with pytest.raises(PresentationError):
        presentation_from_dict(data)


def test_invalid_json_is_a_presentation_error():
    with pytest.raises(PresentationError):
        parse_presentation("{not json")


def test_json_dict_round_trip_preserves_edges():
    pres = load_presentation(data_path("ne3"))
    again = parse_presentation(json.dumps(pres.to_json_dict()))
    assert again == pres


def test_duplicate_alphabet_symbols_are_rejected():
    with pytest.raises(PresentationError):
        LabeledPresentation.build(["0", "0"], 1, [])
