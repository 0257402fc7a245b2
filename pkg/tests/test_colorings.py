import io
from itertools import product

import pytest

from hjcube import (
    Coloring,
    CubeShape,
    anti_latin_grid,
    anti_latin_square,
    c33_base,
    class_sizes,
    halving_coloring,
    lift_coloring,
    rank,
    read_coloring,
    write_coloring,
)

import oracles


def test_coloring_validation():
    Coloring(k=2, colors=[0, 1, 0])
    with pytest.raises(ValueError):
        Coloring(k=2, colors=[0, 0, 0])  # color 1 unused
    with pytest.raises(ValueError):
        Coloring(k=2, colors=[0, 2])  # out of range
    with pytest.raises(ValueError):
        Coloring(k=2, colors=[0, 1], shape=CubeShape(2, 2))  # wrong length


def test_halving_small_tables():
    assert list(halving_coloring(CubeShape(6, 1)).colors) == [0, 0, 1, 1, 2, 2]
    assert list(halving_coloring(CubeShape(4, 1)).colors) == [0, 0, 1, 1]
    c62 = halving_coloring(CubeShape(6, 2))
    rows = [list(c62.colors[i * 6:(i + 1) * 6]) for i in range(6)]
    assert rows == [
        [0, 0, 3, 3, 6, 6],
        [0, 0, 3, 3, 6, 6],
        [1, 1, 4, 4, 7, 7],
        [1, 1, 4, 4, 7, 7],
        [2, 2, 5, 5, 8, 8],
        [2, 2, 5, 5, 8, 8],
    ]
    assert c62.colors[rank((2, 4), c62.shape)] == 7
    assert c62.colors[0] == 0


def test_halving_rejects_bad_t():
    with pytest.raises(ValueError):
        halving_coloring(CubeShape(5, 2))
    with pytest.raises(ValueError):
        halving_coloring(CubeShape(3, 1))
    with pytest.raises(ValueError):
        halving_coloring(CubeShape(2, 3))
    degenerate = halving_coloring(CubeShape(2, 3), allow_degenerate=True)
    assert degenerate.k == 1
    assert set(degenerate.colors) == {0}


@pytest.mark.parametrize("t,ns", [(4, range(1, 5)), (6, range(1, 4)), (8, range(1, 3))])
def test_halving_matches_both_formulas(t, ns):
    for n in ns:
        s = CubeShape(t, n)
        c = halving_coloring(s)
        for p in product(range(t), repeat=n):
            expected = oracles.halving_closed_form(p, t)
            assert c.colors[rank(p, s)] == expected
            assert oracles.halving_recursive(p, t) == expected


@pytest.mark.parametrize("t", [4, 6, 8])
def test_halving_class_sizes(t):
    n = 1
    while t**n <= 10**6:
        c = halving_coloring(CubeShape(t, n))
        assert c.k == (t // 2) ** n
        sizes = set(class_sizes(c).values())
        assert sizes == {2**n}
        n += 1


def test_halving_restriction_is_lower_dimension_plus_offset():
    # fixing the last digit to j reproduces dimension n-1 shifted by a block
    for t, n in [(4, 2), (4, 3), (6, 2), (6, 3), (8, 2)]:
        c = halving_coloring(CubeShape(t, n))
        lower = halving_coloring(CubeShape(t, n - 1)) if n > 1 else None
        if lower is None:
            continue
        half = t // 2
        for j in range(t):
            offset = half ** (n - 1) * (j // 2)
            restricted = [c.colors[r] for r in range(j, t**n, t)]
            assert restricted == [x + offset for x in lower.colors]


def test_c33_base_exact_classes():
    c = c33_base()
    s = c.shape
    listed = {
        0: ["000", "002", "020", "200", "220", "022", "202", "222", "001"],
        1: ["011", "021", "101", "201", "111", "221", "010", "210", "012"],
        2: ["100", "110", "120", "121", "211", "102", "112", "122", "212"],
    }
    for color, words in listed.items():
        for w in words:
            p = tuple(int(ch) for ch in w)
            assert c.colors[rank(p, s)] == color
    assert class_sizes(c) == {0: 9, 1: 9, 2: 9}


def test_anti_latin_base_and_growth():
    assert anti_latin_grid(4) == [
        [0, 0, 2, 2],
        [0, 0, 2, 2],
        [1, 1, 3, 3],
        [1, 1, 3, 3],
    ]
    for t in range(4, 13):
        grid = anti_latin_grid(t)
        flat = [x for row in grid for x in row]
        assert all(flat.count(sym) == t for sym in range(t))
        groups = list(grid)
        groups += [[grid[i][j] for i in range(t)] for j in range(t)]
        groups.append([grid[i][i] for i in range(t)])
        groups.append([grid[i][t - 1 - i] for i in range(t)])
        assert all(len(set(g)) <= t - 1 for g in groups)
    with pytest.raises(ValueError):
        anti_latin_grid(3)


def test_anti_latin_square_coloring():
    c = anti_latin_square(5)
    assert c.k == 5
    assert set(class_sizes(c).values()) == {5}
    with pytest.raises(ValueError):
        anti_latin_square(3)


def test_lift_examples():
    c34 = lift_coloring(CubeShape(3, 4))
    assert set(class_sizes(c34).values()) == {27}
    c43 = lift_coloring(CubeShape(4, 3))
    assert c43.colors[rank((2, 3, 1), c43.shape)] == 3
    assert lift_coloring(CubeShape(3, 3)).colors == c33_base().colors
    for t, n in [(3, 2), (2, 2), (2, 5), (3, 1)]:
        with pytest.raises(ValueError):
            lift_coloring(CubeShape(t, n))


def test_lift_prefix_structure():
    # color depends only on the first three digits (t=3) or two (t>=4)
    c = lift_coloring(CubeShape(3, 4))
    base = c33_base()
    s, bs = c.shape, base.shape
    for p in product(range(3), repeat=4):
        assert c.colors[rank(p, s)] == base.colors[rank(p[:3], bs)]
    c = lift_coloring(CubeShape(5, 3))
    base = anti_latin_square(5)
    s, bs = c.shape, base.shape
    for p in product(range(5), repeat=3):
        assert c.colors[rank(p, s)] == base.colors[rank(p[:2], bs)]


def test_write_read_round_trip(tmp_path):
    for c in [c33_base(), halving_coloring(CubeShape(6, 2)),
              Coloring(k=2, colors=[0, 1, 1, 0])]:
        path = tmp_path / "c.txt"
        write_coloring(c, path)
        assert read_coloring(path) == c


def test_coloring_file_layout():
    buf = io.StringIO()
    write_coloring(halving_coloring(CubeShape(6, 2)), buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "6 2 9"
    assert lines[1] == "0 0 3 3 6 6"  # rows follow the leading digit
    assert len(lines) == 7
    buf = io.StringIO()
    write_coloring(Coloring(k=2, colors=[0, 1, 0]), buf)
    assert buf.getvalue() == "3 0 2\n0 1 0\n"


def test_read_errors():
    with pytest.raises(ValueError):
        read_coloring(io.StringIO("3 2 3\n0 0 0 1 1 1 2 2\n"))  # 8 entries, need 9
    with pytest.raises(ValueError):
        read_coloring(io.StringIO("3 2 3\n0 0 0 1 1 1 2 2 5\n"))  # entry out of range
    with pytest.raises(ValueError):
        read_coloring(io.StringIO("3 2 3\n0 0 0 1 1 1 0 1 0\n"))  # color 2 unused
    with pytest.raises(ValueError):
        read_coloring(io.StringIO("3 2\n"))  # malformed header
    with pytest.raises(ValueError):
        read_coloring(io.StringIO(""))
