"""Smoke test for the toricdeg extension.

Build and install first:
    pip install --no-build-isolation crates/py
then run:
    python crates/py/python/smoke_test.py
"""

from fractions import Fraction

import toricdeg


def check_slide():
    rect = toricdeg.Polytope.from_vertices([[0, 0], [1, 0], [1, 3], [0, 3]])
    pts = rect.lattice_points()
    image = toricdeg.slide(pts, 0, 1, 2)
    assert image == [[0, b] for b in range(6)] + [[1, 0], [1, 1]], image
    assert toricdeg.valuation_image(pts, 0, 1, 2) == image

    trapezoid = toricdeg.Polytope.from_vertices(image)
    assert ([4, 1], Fraction(5)) in trapezoid.inequalities()
    s = toricdeg.Semigroup(rect, 3, k=0, l=1, c=2)
    assert s.level(1) == image
    assert s.cone_condition(trapezoid)["holds"]


def check_saturation():
    square = toricdeg.Polytope.cuboid([0, 0], [2, 2])
    sat = toricdeg.Semigroup(square, 4, c=2).saturation()
    assert not sat["saturated"]
    assert sat["witness"] == {"level": 1, "point": [1, 1], "multiple": 2}, sat


def check_gromov():
    assert toricdeg.gw_formula("A", 2, [5, 3, 0]) == 2
    assert toricdeg.gw_formula("A", 2, ["5/2", "3/2", 0]) == 1
    square = toricdeg.Polytope.cuboid([0, 0], [1, 1])
    assert toricdeg.best_simplex_lb(square, 1)["a"] == "1"
    assert Fraction(toricdeg.heuristic_simplex_lb(square, seed=3)["a"]) <= 1


def check_bott():
    h0 = toricdeg.BottData.hirzebruch(0, 1, 3)
    h4 = toricdeg.BottData.hirzebruch(4, 1, 5)
    assert h0.shift(0, 1, 2) == h4
    assert h4.lam == [Fraction(1), Fraction(5)]
    assert toricdeg.decide_symplectomorphic(h0, h4)["verdict"] == "Yes"
    assert toricdeg.hirzebruch_classify(h0, h4)
    report = toricdeg.verify_degeneration_move(h0, 0, 1, target_entry=4, max_level=3)
    assert report["passed"] and report["levels"] == [True, True, True]

    b = toricdeg.BottData([[0, -2, 1], [0, 0, -1], [0, 0, 0]], ["1", "5/2", Fraction(3)])
    assert b.is_q_trivial() and b.is_hypercube()
    assert b.standard_form()["partition"] == [3]
    assert toricdeg.BottData.from_json(b.to_json()) == b

    try:
        toricdeg.BottData([[0, 1, 1], [0, 0, 1], [0, 0, 0]], [1, 5, 20]).standard_form()
    except toricdeg.ToricDegError:
        pass
    else:
        raise AssertionError("expected ToricDegError")


if __name__ == "__main__":
    check_slide()
    check_saturation()
    check_gromov()
    check_bott()
    print("smoke test passed")
