import os
import subprocess
from fractions import Fraction

import pytest
import zariski as z


def cusp():
    c = z.Cluster()
    p0 = c.add_origin()
    p1 = c.add_free_point(p0, 0)
    c.add_satellite_point(p1, p0)
    return c


def test_cluster_matrices():
    c = cusp()
    assert len(c) == 3
    assert c.proximity_matrix() == [[1, 0, 0], [-1, 1, 0], [-1, -1, 1]]
    m = c.intersection_matrix()
    assert [m[i][i] for i in range(3)] == [-3, -2, -1]
    assert z.is_negative_definite(m)
    assert c.point(2)["kind"] == "satellite"
    assert c.point(0)["kind"] == "origin"
    with pytest.raises(z.StructuralError):
        c.add_free_point(0, 0)


def test_divisor_arithmetic_is_exact():
    c = cusp()
    e2 = z.Divisor(c, [0, 0, 1])
    assert e2.nef_envelope().coefficients == [Fraction(1, 3), Fraction(1, 2), 1]
    assert -e2.nef_envelope().intersect(e2.nef_envelope()) == Fraction(1, 6)
    ideal = e2.unload()
    assert ideal.divisor.coefficients == [1, 1, 2]
    assert ideal.degrees == [1, 0, 0]
    assert ideal.multiplicity == 1
    half = e2 * Fraction(1, 2)
    assert half[2] == Fraction(1, 2)
    assert z.Divisor(c, ["1/3", 0, 0])[0] == Fraction(1, 3)


def test_values_of_a_curve():
    m, v = z.value_vector(cusp(), "y^2 - x^3")
    assert m == [2, 1, 1]
    assert v == [2, 3, 6]


def test_exceptions_share_a_base():
    with pytest.raises(z.Error):
        z.parse_polynomial("x +")
    with pytest.raises(z.DomainError):
        z.Filtration.qdivisorial(z.Divisor(cusp(), [-1, 0, 0]))


def test_star_family_limits():
    star = z.Filtration.star()
    assert star.kind == "star"
    r = z.multiplicity_sequence(star, 10)
    assert r.closed_form == 4
    assert r.sequence[9] == Fraction(451, 100)
    c = z.commutation_report(star, "x", 10)
    assert not c.commute
    assert c.lim_of_sums.closed_form == 2
    assert c.sum_of_lims == 1
    assert z.multiplicity_sequence(star, 8, parallel=True).sequence == z.multiplicity_sequence(star, 8).sequence


def test_run_scenario_matches_cli():
    text = open(os.path.join(os.path.dirname(__file__), "..", "..", "scenarios", "cusp.scn")).read()
    status, out, log = z.run_scenario(text, "csv")
    assert status == 0 and log == ""
    assert "closed_form,0,0,1/6" in out.splitlines()
    cli = os.environ.get("ZARISKI_CLI")
    if cli:
        proc = subprocess.run([cli, "example42", "--nmax", "6"], capture_output=True, text=True, check=True)
        assert proc.stdout == z.star_family_output(6)
    with pytest.raises(z.ScenarioError):
        z.run_scenario("[widget w]\n")


def test_self_check_is_clean():
    for name, checked, failed in z.self_check(3, 50):
        assert checked > 0, name
        assert failed == 0, name
