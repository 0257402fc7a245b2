import json
import random

import pytest

from hjcube import (
    Coloring,
    CubeShape,
    Hypergraph,
    anti_latin_square,
    c33_base,
    class_sizes,
    count_rainbow_edges,
    count_rainbow_lines,
    find_monochromatic_line,
    find_rainbow_edge,
    find_rainbow_line,
    halving_coloring,
    is_anti_latin,
    is_balanced,
    is_rainbow_free,
    geometric_line_count,
    verify_report,
)

import oracles


def identity_coloring(t, n):
    s = CubeShape(t, n)
    return Coloring(k=s.cardinality, colors=list(range(s.cardinality)), shape=s)


def test_class_sizes_examples():
    assert class_sizes(c33_base()) == {0: 9, 1: 9, 2: 9}
    assert set(class_sizes(halving_coloring(CubeShape(6, 2))).values()) == {4}
    allzero = Coloring(k=1, colors=[0] * 9, shape=CubeShape(3, 2))
    assert class_sizes(allzero) == {0: 9}


def test_is_balanced_examples():
    assert is_balanced(c33_base())
    assert not is_balanced(
        Coloring(k=3, colors=[0, 0, 0, 0, 1, 1, 1, 2, 2], shape=CubeShape(3, 2)))
    assert is_balanced(halving_coloring(CubeShape(4, 3)))


def test_find_rainbow_line_examples():
    assert find_rainbow_line(c33_base(), "geometric") is None
    ident = identity_coloring(3, 2)
    first = find_rainbow_line(ident, "geometric")
    assert first is not None and first.code() == "=0,F"
    assert find_rainbow_line(halving_coloring(CubeShape(4, 2)), "geometric") is None


def test_rainbow_counts():
    assert count_rainbow_lines(c33_base(), "geometric") == 0
    assert is_rainbow_free(c33_base(), "geometric")
    ident = identity_coloring(3, 2)
    assert count_rainbow_lines(ident, "geometric") == geometric_line_count(ident.shape) == 8
    assert not is_rainbow_free(ident, "geometric")
    # k < t makes rainbow lines impossible without scanning
    two = Coloring(k=2, colors=[0, 1] + [0] * 7, shape=CubeShape(3, 2))
    assert count_rainbow_lines(two, "geometric") == 0
    assert is_rainbow_free(two, "geometric")


def test_scan_count_consistency():
    rng = random.Random(7)
    s = CubeShape(3, 2)
    for _ in range(30):
        colors = [rng.randrange(3) for _ in range(9)]
        if len(set(colors)) < 3:
            continue
        c = Coloring(k=3, colors=colors, shape=s)
        for kind in ("geometric", "combinatorial"):
            assert (find_rainbow_line(c, kind) is None) == (count_rainbow_lines(c, kind) == 0)


def test_find_monochromatic_line():
    allzero = Coloring(k=1, colors=[0] * 9, shape=CubeShape(3, 2))
    assert find_monochromatic_line(allzero, "geometric") is not None
    assert find_monochromatic_line(identity_coloring(3, 2), "geometric") is None
    assert find_monochromatic_line(halving_coloring(CubeShape(4, 1)), "geometric") is None


def test_geometric_rainbow_free_implies_combinatorial():
    for c in [c33_base(), halving_coloring(CubeShape(4, 2)),
              halving_coloring(CubeShape(6, 2)), anti_latin_square(5)]:
        assert is_rainbow_free(c, "geometric")
        assert is_rainbow_free(c, "combinatorial")


def test_is_anti_latin():
    assert is_anti_latin(anti_latin_square(4))
    assert is_anti_latin(anti_latin_square(7))
    # a Latin square has every row rainbow
    t = 4
    latin = [[(i + j) % t for j in range(t)] for i in range(t)]
    c = Coloring(k=t, colors=[x for row in latin for x in row], shape=CubeShape(t, 2))
    assert not is_anti_latin(c)
    with pytest.raises(ValueError):
        is_anti_latin(c33_base())  # n != 2


@pytest.mark.parametrize("t", range(4, 10))
def test_anti_latin_equivalence_on_random_arrays(t):
    # balanced + geometric rainbow-free over C_t^2 is exactly the anti-Latin property
    rng = random.Random(100 + t)
    s = CubeShape(t, 2)
    cases = [anti_latin_square(t)]
    for _ in range(40):
        colors = [i % t for i in range(t * t)]
        rng.shuffle(colors)
        cases.append(Coloring(k=t, colors=colors, shape=s))
    for c in cases:
        expected = is_balanced(c) and is_rainbow_free(c, "geometric")
        assert is_anti_latin(c) == expected


def test_edge_level_checks():
    h = Hypergraph(4, [(0, 1), (1, 2, 3)])
    c = Coloring(k=3, colors=[0, 0, 1, 2])
    assert find_rainbow_edge(c, h) == (1, 2, 3)
    assert count_rainbow_edges(c, h) == 1
    flat = Coloring(k=1, colors=[0, 0, 0, 0])
    assert find_rainbow_edge(flat, h) is None
    assert count_rainbow_edges(flat, h) == 0
    mismatch = Coloring(k=2, colors=[0, 1])
    with pytest.raises(ValueError):
        find_rainbow_edge(mismatch, h)


def test_verify_report_contents():
    rep = verify_report(c33_base(), "geometric")
    assert rep.balanced
    assert rep.k == 3
    assert rep.line_count == 49
    assert rep.rainbow_line_count == 0
    assert rep.first_rainbow_witness is None
    d = rep.to_dict()
    assert set(d) == {"t", "n", "vertices", "kind", "k", "class_sizes",
                      "balanced", "lines", "rainbow_count", "mono_count", "witness"}
    assert d["class_sizes"] == {"0": 9, "1": 9, "2": 9}
    parsed = json.loads(rep.to_json())
    assert parsed == d

    ident = identity_coloring(3, 2)
    rep = verify_report(ident, "geometric")
    assert rep.balanced  # all classes size 1
    assert rep.rainbow_line_count == 8
    assert rep.monochromatic_line_count == 0

    rep = verify_report(halving_coloring(CubeShape(6, 2)), "geometric")
    assert rep.balanced and rep.rainbow_line_count == 0
    assert set(rep.class_sizes.values()) == {4}


def test_parallel_scan_matches_sequential():
    rng = random.Random(11)
    s = CubeShape(4, 2)
    for _ in range(10):
        colors = [i % 4 for i in range(16)]
        rng.shuffle(colors)
        c = Coloring(k=4, colors=colors, shape=s)
        base = verify_report(c, "geometric", threads=1)
        for threads in (2, 4, 8):
            rep = verify_report(c, "geometric", threads=threads)
            assert rep == base
            assert rep.to_json() == base.to_json()


def test_witness_deterministic_across_runs():
    ident = identity_coloring(3, 3)
    first = find_rainbow_line(ident, "geometric")
    for _ in range(3):
        assert find_rainbow_line(ident, "geometric") == first
    reps = {verify_report(ident, "geometric", threads=k).to_json() for k in (1, 4, 8)}
    assert len(reps) == 1
