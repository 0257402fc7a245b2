import io

import pytest

from hjcube import Hypergraph, read_hypergraph, write_hypergraph


def test_validation():
    h = Hypergraph(4, [(0, 1), (1, 2, 3)])
    assert h.edge_count == 2
    with pytest.raises(ValueError):
        Hypergraph(4, [(1, 0)])  # not increasing
    with pytest.raises(ValueError):
        Hypergraph(4, [(0, 0)])  # duplicate vertex
    with pytest.raises(ValueError):
        Hypergraph(4, [(0, 4)])  # out of range
    with pytest.raises(ValueError):
        Hypergraph(4, [(0, 1), (0, 1)])  # duplicate edge
    with pytest.raises(ValueError):
        Hypergraph(4, [()])  # empty edge
    with pytest.raises(ValueError):
        Hypergraph(0, [])


def test_round_trip(tmp_path):
    h = Hypergraph(5, [(0, 1, 2), (2, 3), (0, 4)])
    path = tmp_path / "h.txt"
    write_hypergraph(h, path)
    assert read_hypergraph(path) == h
    # exact wire format
    assert path.read_text() == "5 3\n3 0 1 2\n2 2 3\n2 0 4\n"


def test_read_from_file_object():
    text = "3 1\n3 0 1 2\n"
    h = read_hypergraph(io.StringIO(text))
    assert h == Hypergraph(3, [(0, 1, 2)])
    buf = io.StringIO()
    write_hypergraph(h, buf)
    assert buf.getvalue() == text


def test_malformed_files():
    with pytest.raises(ValueError):
        read_hypergraph(io.StringIO(""))
    with pytest.raises(ValueError):
        read_hypergraph(io.StringIO("3\n"))
    with pytest.raises(ValueError):
        read_hypergraph(io.StringIO("3 2\n2 0 1\n"))  # missing an edge line
    with pytest.raises(ValueError):
        read_hypergraph(io.StringIO("3 1\n2 0 1 2\n"))  # wrong edge size
