from math import comb

import pytest

from f4gkm.hilbert.macaulay import eliminate_mod_p, free_series, regular_check_fp, truncated_hilbert_fp
from f4gkm.hilbert.presentation import (
    GradedPresentation,
    erased_relations_vanish,
    flag_relations,
    main_presentation,
    odd_presentation,
    reduced_presentation,
    specialize_main_to_flag,
)
from f4gkm.hilbert.series import (
    SeriesTruncation,
    closed_form_series,
    flag_factor_series,
    inverse_one_minus,
    simplified_target_series,
    target_series,
)
from f4gkm.polyring import RingSpec, elem_sym

TARGET_16 = [1, 0, 8, 0, 35, 0, 112, 0, 294, 0, 672, 0, 1385, 0, 2632, 0, 4683]


def test_series_basics():
    assert list(inverse_one_minus(2, 4)) == [1, 0, 1, 0, 1]
    assert closed_form_series([2], [2], 4).coefficients == (1, 0, 0, 0, 0)
    assert closed_form_series([2, 2], [4], 4).coefficients == (1, 0, 2, 0, 2)
    s = SeriesTruncation([1, 0, 1, 0, 0])
    assert s.even() == [1, 1, 0]
    assert s.first_difference(SeriesTruncation([1, 0, 1, 0, 1])) == 4
    assert s.first_difference(s) is None


def test_target_series():
    assert list(target_series(16).coefficients) == TARGET_16
    assert target_series(16) == simplified_target_series(16)
    assert target_series(30) == simplified_target_series(30)


def test_flag_factor():
    f = flag_factor_series(16)
    assert f[4] == 9
    assert f.even() == [1, 4, 9, 16, 25, 36, 48, 60, 71]


def test_free_ring_counts_binomials():
    R = RingSpec(("a", "b", "c"), (2, 2, 2))
    s = free_series(R, 10)
    assert [s[2 * k] for k in range(6)] == [comb(k + 2, 2) for k in range(6)]
    empty = GradedPresentation(R, (), "free")
    assert truncated_hilbert_fp(empty, 2, 10) == s


def test_regular_elementary_symmetric():
    R = RingSpec(("x", "y"), (2, 2))
    x, y = R.gens()
    pres = GradedPresentation(R, (("e1", elem_sym(1, [x, y], R)), ("e2", elem_sym(2, [x, y], R))), "sym")
    res = regular_check_fp(pres, ["e1", "e2"], 2, 8)
    assert res.regular and res.matches_closed_form
    assert res.quotient.even() == [1, 1, 0, 0, 0]


def test_non_regular_sequence_reports_failure():
    R = RingSpec(("x", "y"), (2, 2))
    x, y = R.gens()
    pres = GradedPresentation(R, (("a", x * x), ("b", x * x * y)), "bad")
    res = regular_check_fp(pres, ["a", "b"], 3, 10)
    assert not res.regular
    step = res.first_failure
    assert step.relation == "b" and step.failing_degree == 6


def test_presentation_validation():
    R = RingSpec(("x", "y"), (2, 4))
    x, y = R.gens()
    with pytest.raises(ValueError):
        GradedPresentation(R, (("mixed", x + y),), "bad")


def test_elimination_removes_linear_variables():
    red = eliminate_mod_p(main_presentation(), 2, 16)
    names = {v for v, _ in red.eliminated}
    assert {"t4", "omega"} <= names
    assert all(v not in red.ring.names for v in names)
    red3 = eliminate_mod_p(main_presentation(), 3, 16)
    assert len(red3.eliminated) == 5


def test_presentation_relations_are_homogeneous():
    for pres in (main_presentation(), reduced_presentation(), odd_presentation()):
        for name, r in pres.relations:
            assert r.is_homogeneous() and r.degree % 2 == 0, (pres.name, name)


def test_presentation_consistency():
    assert erased_relations_vanish()
    spec = specialize_main_to_flag()
    for name, r in flag_relations().items():
        assert spec[name] == r


@pytest.mark.parametrize("p", [2, 3])
def test_main_presentation_low_degrees(p):
    assert truncated_hilbert_fp(main_presentation(), p, 8).coefficients == tuple(TARGET_16[:9])
