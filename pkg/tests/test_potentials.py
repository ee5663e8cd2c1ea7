"""Potential families, tabulated input, and grid sampling."""
import numpy as np
import pytest

from zs_spectrum import (
    DomainMap,
    NumericError,
    custom,
    evaluate,
    load_table,
    make_basis,
    modulated_sech,
    sample,
    satsuma_yajima,
    sech,
    semiclassical,
    solitonic,
    tabulated,
)


def test_sech_is_overflow_safe():
    assert sech(0.0) == 1.0
    assert np.isclose(sech(30.0), 2.0 * np.exp(-30.0), rtol=1e-12)
    big = sech(800.0)
    assert np.isfinite(big) and big == 0.0
    assert np.all(np.isfinite(sech(np.array([-1e4, 0.0, 1e4]))))


def test_satsuma_yajima_profile():
    spec = satsuma_yajima(1.8)
    assert evaluate(spec, 0.0) == 1.8 + 0j
    x = np.linspace(-5, 5, 21)
    q = evaluate(spec, x)
    assert np.allclose(q, q[::-1], atol=1e-15)
    assert np.allclose(q.imag, 0.0)
    assert spec.default_a == 0.15
    with pytest.raises(ValueError):
        satsuma_yajima(0.0)


def test_semiclassical_profile():
    spec = semiclassical(0.2)
    assert np.isclose(evaluate(spec, 0.0), np.exp(5j), atol=1e-15)
    x = np.linspace(-3, 3, 11)
    assert np.allclose(np.abs(evaluate(spec, x)), sech(0.4 * x), atol=1e-14)
    with pytest.raises(ValueError):
        semiclassical(-0.1)


def test_solitonic_profile():
    spec = solitonic()
    assert evaluate(spec, 0.0) == 1.0 + 0j
    x = np.linspace(-4, 4, 17)
    assert np.allclose(np.abs(evaluate(spec, x)), sech(x), atol=1e-14)
    assert spec.default_a == 0.1


def test_modulated_sech_profile():
    spec = modulated_sech()
    assert np.isclose(evaluate(spec, 0.0), np.exp(10j), atol=1e-14)
    assert np.isclose(np.abs(evaluate(spec, 5.0)), sech(1.0), atol=1e-14)
    assert spec.default_a == 0.02
    with pytest.raises(ValueError):
        modulated_sech(width=0.0)


def test_custom_requires_limits():
    with pytest.raises(ValueError):
        custom(lambda x: np.zeros_like(x))
    spec = custom(lambda x: np.exp(1j * x), limit_neg=0.5j, limit_pos=-1.0)
    assert spec.limit_neg == 0.5j and spec.limit_pos == -1.0 + 0j


def test_sample_endpoints_take_declared_limits():
    spec = custom(lambda x: np.zeros(x.shape, complex),
                  limit_neg=0.25 - 1j, limit_pos=0.75j)
    basis = make_basis(16)
    dmap = DomainMap(0.4)
    pot = sample(spec, basis, dmap)
    assert pot.values[0] == 0.25 - 1j
    assert pot.values[-1] == 0.75j
    assert np.array_equal(pot.values[1:-1], np.zeros(14, complex))
    assert np.array_equal(pot.conjugate_values, np.conj(pot.values))
    assert pot.n == 16 and pot.a == 0.4


def test_sample_interior_matches_direct_evaluation():
    spec = satsuma_yajima(1.2)
    basis = make_basis(24)
    dmap = DomainMap(0.3)
    pot = sample(spec, basis, dmap)
    from zs_spectrum import inverse

    x = inverse(dmap, basis.nodes)
    assert np.array_equal(pot.values[1:-1], evaluate(spec, x[1:-1]))


def test_sample_reports_non_finite_node():
    bad = custom(lambda x: np.where(np.abs(x) < 1.0, np.nan, 1.0) + 0j,
                 limit_neg=0j, limit_pos=0j)
    basis = make_basis(16)
    with pytest.raises(NumericError, match="node"):
        sample(bad, basis, DomainMap(0.5))


def test_tabulated_interpolates_and_uses_limits_outside():
    x = np.linspace(-3, 3, 25)
    q = np.sin(x) + 1j * np.cos(x)
    spec = tabulated(x, q, limit_neg=0.7 + 0j, limit_pos=-0.2j)
    assert np.allclose(evaluate(spec, x), q, atol=1e-12)
    assert evaluate(spec, -10.0) == 0.7 + 0j
    assert evaluate(spec, 10.0) == -0.2j


def test_tabulated_sorts_input():
    x = np.array([2.0, -1.0, 0.5, -3.0])
    q = x + 1j * x**2
    shuffled = tabulated(x, q)
    ordered = tabulated(np.sort(x), np.sort(x) + 1j * np.sort(x) ** 2)
    probe = np.linspace(-3, 2, 11)
    assert np.allclose(evaluate(shuffled, probe), evaluate(ordered, probe),
                       atol=1e-14)


def test_tabulated_input_validation():
    with pytest.raises(ValueError):
        tabulated(np.array([1.0]), np.array([1.0]))
    with pytest.raises(ValueError):
        tabulated(np.array([0.0, 1.0, 1.0]), np.array([1.0, 2.0, 3.0]))
    with pytest.raises(ValueError):
        tabulated(np.array([0.0, 1.0]), np.array([1.0, 2.0, 3.0]))


def test_load_table_three_columns(tmp_path):
    path = tmp_path / "pot.tsv"
    path.write_text(
        "# x  re  im\n"
        "-2.0  0.1  -0.3\n"
        " 0.0  1.0   0.5\n"
        " 2.0  0.1   0.3\n"
    )
    spec = load_table(path)
    assert np.isclose(evaluate(spec, 0.0), 1.0 + 0.5j, atol=1e-14)
    assert spec.descriptor.startswith("file:")


def test_load_table_two_columns_is_real(tmp_path):
    path = tmp_path / "pot.dat"
    path.write_text("-1 0.5\n0 2.0\n1 0.5\n")
    spec = load_table(path)
    q = evaluate(spec, np.array([-1.0, 0.0, 1.0]))
    assert np.allclose(q, [0.5, 2.0, 0.5], atol=1e-14)
    assert np.allclose(q.imag, 0.0)


@pytest.mark.filterwarnings("ignore:loadtxt")
def test_load_table_rejects_bad_files(tmp_path):
    short = tmp_path / "short.dat"
    short.write_text("0.0 1.0\n")
    with pytest.raises(ValueError):
        load_table(short)
    empty = tmp_path / "empty.dat"
    empty.write_text("# only a comment\n")
    with pytest.raises(ValueError):
        load_table(empty)
    wide = tmp_path / "wide.dat"
    wide.write_text("0 1 2 3\n1 1 2 3\n")
    with pytest.raises(ValueError):
        load_table(wide)
