from math import comb

import pytest

from motivec.spaces import (
    POINT,
    Cell,
    Cellular,
    DisjointUnion,
    EquidimensionalityViolation,
    grassmannian,
    normalize,
    projective_space,
    quadric,
)


def test_point_dim():
    assert POINT.dim() == 0


def test_projective_space_structure():
    p1 = projective_space(1)
    assert p1.cells == (Cell(POINT, 1, 0), Cell(POINT, 0, 1))
    p0 = projective_space(0)
    assert p0.cells == (Cell(POINT, 0, 0),)
    for n in range(0, 9):
        assert projective_space(n).dim() == n


def test_quadric_dims():
    for d in range(0, 9):
        assert quadric(d).dim() == 2 * d


def test_quadric_structure():
    q1 = quadric(1)
    assert q1.cells == (Cell(projective_space(1), 1, 0), Cell(projective_space(1), 0, 1))
    assert quadric(3).dim() == 6
    q0 = quadric(0)
    assert q0 == DisjointUnion(POINT, POINT)


def test_grassmannian_extremes():
    assert grassmannian(2, 2) == POINT
    assert grassmannian(0, 5) == POINT


def test_grassmannian_line_case_matches_projective_space():
    for n in range(1, 8):
        assert normalize(grassmannian(1, n)) == normalize(projective_space(n - 1))


def test_grassmannian_2_4_cells():
    g = grassmannian(2, 4)
    bases = [c.base for c in g.cells]
    assert bases == [grassmannian(1, 3), grassmannian(1, 2), grassmannian(1, 1)]
    assert [c.rank for c in g.cells] == [2, 1, 0]
    assert [c.codim for c in g.cells] == [0, 2, 4]
    assert g.dim() == 4


def test_grassmannian_dimension_formula():
    for n in range(0, 9):
        for d in range(0, n + 1):
            assert grassmannian(d, n).dim() == d * (n - d)


def test_grassmannian_rejects_bad_arguments():
    with pytest.raises(ValueError):
        grassmannian(3, 2)
    with pytest.raises(ValueError):
        grassmannian(-1, 2)


def test_cell_validation():
    with pytest.raises(ValueError):
        Cell(POINT, -1, 0)
    with pytest.raises(ValueError):
        Cell(POINT, 0, -2)


def test_cellular_needs_cells_and_ordered_codims():
    with pytest.raises(ValueError):
        Cellular([])
    with pytest.raises(ValueError):
        Cellular([Cell(POINT, 0, 1)])  # first codim must be 0
    with pytest.raises(ValueError):
        Cellular([Cell(POINT, 1, 0), Cell(POINT, 1, 0)])  # not strictly increasing


def test_equidimensionality_violation():
    bad = Cellular([Cell(POINT, 2, 0), Cell(POINT, 0, 1)])
    with pytest.raises(EquidimensionalityViolation):
        bad.dim()
    mixed = DisjointUnion(POINT, projective_space(1))
    with pytest.raises(EquidimensionalityViolation):
        mixed.dim()


def test_structural_equality_ignores_names():
    a = Cellular([Cell(POINT, 1, 0), Cell(POINT, 0, 1)], name="one")
    b = Cellular([Cell(POINT, 1, 0), Cell(POINT, 0, 1)], name="two")
    assert a == b
    assert a == projective_space(1)


def test_flag_count_matches_binomial():
    def leaves(space):
        if space is POINT or isinstance(space, type(POINT)):
            return 1
        if isinstance(space, DisjointUnion):
            return leaves(space.left) + leaves(space.right)
        return sum(leaves(c.base) for c in space.cells)

    for n in range(0, 9):
        for d in range(0, n + 1):
            assert leaves(grassmannian(d, n)) == comb(n, d)
