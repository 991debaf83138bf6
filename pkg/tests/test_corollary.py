import pytest

from f4gkm.hilbert.corollary import congruences, solve_cofactors, verify_corollary
from f4gkm.hilbert.presentation import TW
from f4gkm.polyring import RingSpec


def test_cofactors_are_integral_and_exact():
    cons, _ = congruences()
    for c in cons:
        assert c.verified and c.residual().is_zero(), c.name
    by_name = {c.name.split(" ")[0]: c for c in cons}
    g1, omega = TW.var("g1"), TW.var("omega")
    assert by_name["Q4"].cofactors == [2 * g1]
    assert by_name["q6"].cofactors == [-(g1**2)]
    assert by_name["q8"].cofactors == [-4 * g1**2, -3 * g1 * omega, -3 * g1**4]


def test_solve_cofactors_examples():
    R = RingSpec(("x", "y"), (2, 2))
    x, y = R.gens()
    assert solve_cofactors(x * x * y + 3 * y**3, [x * x + 3 * y * y]) == [y]
    assert solve_cofactors(x**3, [y]) is None
    with pytest.raises(ValueError):
        solve_cofactors(x, [2 * x])


def test_corollary_passes_and_fault_fails():
    assert all(c.passed for c in verify_corollary(16, (2, 3)))
    assert not all(c.passed for c in verify_corollary(16, (2,), fault="corollary"))
