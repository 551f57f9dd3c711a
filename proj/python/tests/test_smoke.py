import json

import pytest

import cartan_fibers as cf


def test_build_and_json_round_trip():
    fiber = cf.build_fiber("ns", 29)
    assert len(fiber) == 11
    assert fiber.multiplicities["A"] == 28
    assert fiber.intersection("A", "A") == -3
    assert fiber.intersection("A", "D_1") == 1
    assert cf.Fiber.from_json(fiber.to_json()) == fiber
    assert json.loads(fiber.to_json())["family"] == "NsCoarse"


def test_fine_family():
    assert len(cf.build_fiber("ns", 7, s_p=2)) == 7


def test_contract_and_group():
    final, steps = cf.contract(cf.build_fiber("ns", 17))
    assert steps == ["D_1", "A", "B", "D_0"]
    assert cf.component_group(final)["invariant_factors"] == [3, 72]
    ncd, _ = cf.contract(cf.build_fiber("s", 17), "ncd")
    basis, matrix = ncd.intersection_matrix()
    assert sorted(basis) == ["A", "B", "D_0", "E", "F"]
    assert cf.smith_normal_form(matrix)["divisors"] == [1, 1, 1, 12, 0]


def test_big_integers_survive():
    big = 10**40
    result = cf.smith_normal_form([[2 * big, 0], [0, 3 * big]], transforms=True)
    assert result["divisors"] == [big, 6 * big]
    assert "left" in result


def test_expected_groups_and_verify():
    assert cf.expected_component_group("NsCoarse", 29)["notation"] == "Z/5 x Z/120 x Z/840"
    assert cf.expected_component_group("ns", 7)["notation"] == "Z/2"
    passed, checks = cf.verify("ns+", 41)
    assert passed
    assert checks[0]["check"] == "build"


def test_errors():
    with pytest.raises(ValueError):
        cf.build_fiber("ns", 4)
    with pytest.raises(ValueError):
        cf.build_fiber("bogus", 7)
    with pytest.raises(ValueError):
        cf.smith_normal_form([[1, 2], [3]])
