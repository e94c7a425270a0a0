import json
import math
import os
import pathlib

import pytest

import tonnetz

FIXTURES = pathlib.Path(os.environ.get("TONNETZ_FIXTURES_DIR", pathlib.Path(__file__).parents[1] / "fixtures"))


def test_structure():
    t = tonnetz.build_tonnetz()
    assert (len(t["vertices"]), len(t["edges"]), len(t["triangles"])) == (12, 36, 24)
    assert [0, 4, 7] in t["triangles"]
    assert tonnetz.connected_components([0, 1, 2]) == 3
    sub = tonnetz.induced_subcomplex([0, 4, 7])
    assert (len(sub["edges"]), len(sub["triangles"])) == (3, 1)


def test_torus_diagrams():
    d = tonnetz.diagrams([0.0] * 12)
    assert d[0].essential == [0.0]
    assert d[1].essential == [0.0, 0.0]
    assert d[2].essential == [0.0]


def test_cluster_profile_matches_oracle():
    p = [1.0, 1.0, 1.0] + [10.0] * 9
    d0 = tonnetz.diagrams(p, degrees={0})[0]
    assert d0.essential == [1.0]
    assert [(q.birth, q.death) for q in d0.proper] == [(1.0, 10.0), (1.0, 10.0)]
    assert tonnetz.h0_oracle(p) == d0
    f = tonnetz.diagram_features(d0)
    assert (f.proper_count, f.max_persistence) == (2, 9.0)


def test_deform_order():
    entries = tonnetz.deform([8.0, 0, 0, 0, 8.0, 0, 0, 8.0, 0, 0, 0, 0])
    assert len(entries) == 72
    values = [e[2] for e in entries]
    assert values == sorted(values)


def test_bottleneck():
    assert tonnetz.point_distance((1, 5), (2, 5)) == 1.0
    a = tonnetz.PersistenceDiagram(0, proper=[(0.0, 2.0)])
    assert tonnetz.bottleneck_distance(a, tonnetz.PersistenceDiagram(0)) == 1.0
    rows = tonnetz.distance_matrix([a, a, tonnetz.PersistenceDiagram(0)], threads=2)
    assert rows == [[0, 0, 1], [0, 0, 1], [1, 1, 0]]
    with pytest.raises(ValueError):
        tonnetz.bottleneck_distance(a, tonnetz.PersistenceDiagram(1))


def test_ingest():
    assert tonnetz.freq_to_pitch(440.0) == 69.0
    assert tonnetz.pitch_class(61.4) == 1
    notes = [tonnetz.Note(60, 0, 8), tonnetz.Note(64, 0, 8), tonnetz.Note(67, 0, 8)]
    p = tonnetz.profile(notes)
    assert [p[i] for i in (0, 4, 7)] == [8.0, 8.0, 8.0]
    assert tonnetz.profile(notes, (0, 4))[0] == 4.0
    assert tonnetz.transpose(notes, 12)[0].pitch == 72
    r = tonnetz.randomize(notes, 42)
    assert [n.pitch for n in r] == [67, 21, 63]
    assert tonnetz.segment(notes, 2, 5)[0].duration == 3.0
    with pytest.raises(ValueError):
        tonnetz.Note(60, 0, 0)


def test_transposition_distance_zero():
    p = [3.0, 0.0, 1.5, 0.0, 2.0, 4.0, 0.0, 6.0, 0.0, 1.0, 0.0, 0.5]
    for k in range(12):
        rotated = p[-k:] + p[:-k] if k else p
        for deg in (0, 1, 2):
            assert tonnetz.bottleneck_distance(tonnetz.diagrams(p)[deg], tonnetz.diagrams(rotated)[deg]) == 0.0


def test_clustering():
    tree = tonnetz.hierarchical_cluster([[0, 1, 5], [1, 0, 5], [5, 5, 0]], ["A", "B", "C"])
    assert tree.to_newick() == "((A:1,B:1):4,C:5);"
    assert [(m.first, m.second, m.height, m.size) for m in tree.merges] == [(0, 1, 1.0, 2), (3, 2, 5.0, 3)]
    text = tree.to_json()
    assert tonnetz.Dendrogram.from_json(text).to_json() == text
    assert tree.cophenetic_height(0, 2) == 5.0


def test_midi():
    data = (FIXTURES / "format0_tempo_change.mid").read_bytes()
    parsed = tonnetz.parse_midi(data)
    assert parsed["format"] == 0
    (note,) = parsed["notes"]
    assert note.pitch == 60 and math.isclose(note.duration, 0.375, abs_tol=1e-9)

    expected = json.loads((FIXTURES / "format1_multitrack.notes.json").read_text())
    got = tonnetz.parse_midi((FIXTURES / "format1_multitrack.mid").read_bytes())["notes"]
    assert [(n.pitch, n.onset) for n in got] == pytest.approx([(e["pitch"], e["onset"]) for e in expected])

    with pytest.raises(tonnetz.MidiError):
        tonnetz.parse_midi(b"MThd\x00\x00\x00\x06\x00\x02\x00\x01\x00\x60")
    assert issubclass(tonnetz.MidiError, ValueError)
