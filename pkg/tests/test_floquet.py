import json
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qgraphgaps import floquet as fq
from qgraphgaps import lattice as lt
from qgraphgaps.errors import InputError


def random_st(rng, n, r, scale_invariant=False):
    S = np.zeros((r, r), dtype=complex)
    if not scale_invariant:
        X = rng.normal(size=(r, r)) + 1j * rng.normal(size=(r, r))
        S = X + X.conj().T
    T = rng.normal(size=(r, n - r)) + 1j * rng.normal(size=(r, n - r))
    return fq.VertexCoupling(n, r, S, T)


def _residual(U):
    return np.abs(U.conj().T @ U - np.eye(U.shape[0])).max()


# -- couplings ----------------------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 3, 4, 6])
@pytest.mark.parametrize("alpha", [-7.0, 0.0, 2.5])
def test_delta_scattering_closed_form(n, alpha):
    for k in (0.1, 1.0, 10.0):
        expected = 2 / (n + 1j * alpha / k) * np.ones((n, n)) - np.eye(n)
        np.testing.assert_allclose(fq.vertex_scattering(fq.delta_coupling(n, alpha), k),
                                   expected, atol=1e-13)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6), st.data(), st.integers(0, 2 ** 32 - 1))
def test_random_st_unitary(n, data, seed):
    r = data.draw(st.integers(0, n))
    c = random_st(np.random.default_rng(seed), n, r)
    for k in (0.1, 1.0, 10.0, 100.0):
        assert _residual(fq.vertex_scattering(c, k)) <= 1e-10


def test_scale_invariant_is_k_independent():
    c = random_st(np.random.default_rng(3), 5, 2, scale_invariant=True)
    s0 = fq.vertex_scattering(c, 0.1)
    for k in (1.0, 10.0, 1e4):
        assert np.abs(fq.vertex_scattering(c, k) - s0).max() <= 1e-12
    # and a Robin part makes it move
    c2 = random_st(np.random.default_rng(3), 5, 2)
    assert np.abs(fq.vertex_scattering(c2, 1.0) - fq.vertex_scattering(c2, 2.0)).max() > 1e-3


def test_high_energy_limit_is_first_order():
    c = random_st(np.random.default_rng(11), 4, 3)
    s0 = fq.vertex_scattering(fq.associated_scale_invariant(c), 1.0)
    ks = np.logspace(1, 4, 13)
    errs = [np.abs(fq.vertex_scattering(c, k) - s0).max() for k in ks]
    slope = -np.polyfit(np.log(ks), np.log(errs), 1)[0]
    assert slope >= 0.99


def test_coupling_validation():
    with pytest.raises(InputError, match="Hermitian"):
        fq.VertexCoupling(2, 1, [[1j]], [[1.0]])
    with pytest.raises(InputError):
        fq.VertexCoupling(2, 3, [], [])
    with pytest.raises(InputError):
        fq.vertex_scattering(fq.kirchhoff(2), 0.0)
    c = fq.delta_coupling(3, 1.0)
    assert c == fq.st_coupling([[1.0]], [[1.0, 1.0]])
    assert hash(c) == hash(fq.st_coupling([[1.0]], [[1.0, 1.0]]))
    with pytest.raises(ValueError):
        c.S[0, 0] = 2.0


def test_dirichlet_coupling_reflects():
    c = fq.VertexCoupling(3, 0, [], [])
    np.testing.assert_allclose(fq.vertex_scattering(c, 2.0), -np.eye(3))


def test_conditions_block_form():
    A, B = fq.delta_coupling(3, 2.0).conditions()
    np.testing.assert_allclose(A, [[1, 1, 1], [0, 0, 0], [0, 0, 0]])
    np.testing.assert_allclose(B, [[2, 0, 0], [-1, 1, 0], [-1, 0, 1]])


# -- bond matrices and the secular function -----------------------------

def test_kirchhoff_loop_bond_matrix_is_identity():
    g = fq.loop_graph(Fraction(1))
    np.testing.assert_allclose(fq.bond_scattering(g, 1.7), np.eye(2), atol=1e-14)


@pytest.mark.parametrize("k,theta", [(0.3, 0.2), (2.0, -1.1), (7.7, 3.0)])
def test_loop_secular_closed_form(k, theta):
    g = fq.loop_graph(Fraction(2))
    expected = (1 - np.exp(1j * (theta + 2 * k))) * (1 - np.exp(1j * (-theta + 2 * k)))
    assert fq.secular(g, k, [theta]) == pytest.approx(expected, abs=1e-13)


def test_bond_matrix_unitary_for_lattice():
    g = fq.rectangular_lattice(1.0, 0.6, -3.0)
    for k in (0.5, 3.0, 40.0):
        assert _residual(fq.bond_scattering(g, k)) <= 1e-12


def test_secular_is_conjugate_symmetric_in_theta():
    # reversing every bond maps theta -> -theta for a real symmetric coupling
    g = fq.rectangular_lattice(1.0, 0.6, 4.0)
    th = np.array([[0.3, -1.2], [2.0, 0.5]])
    f1 = fq.secular_grid(g, 2.2, th)
    f2 = fq.secular_grid(g, 2.2, -th)
    np.testing.assert_allclose(np.abs(f1), np.abs(f2), rtol=1e-10)


def test_kirchhoff_square_momentum_periodic():
    g = fq.rectangular_lattice(Fraction(1), Fraction(1), 0.0)
    rng = np.random.default_rng(0)
    th = rng.uniform(-math.pi, math.pi, size=(64, 2))
    for k in rng.uniform(0.1, 20, 10):
        f = fq.secular_grid(g, k, th)
        f2 = fq.secular_grid(g, k + 2 * math.pi, th)
        assert np.all(np.abs(f - f2) <= 1e-9 * (1 + np.abs(f)))
    assert fq.momentum_period(g) == pytest.approx(2 * math.pi)


def test_momentum_period_rules():
    g = fq.rectangular_lattice(Fraction(1, 2), Fraction(3, 4), 0.0)
    assert fq.momentum_base_length(g) == Fraction(1, 4)
    assert fq.momentum_period(fq.rectangular_lattice(1.0, 1.0, 0.0)) is None
    assert fq.momentum_period(fq.rectangular_lattice(Fraction(1), Fraction(1), 2.0)) is None


# -- spectrum -----------------------------------------------------------

@pytest.mark.parametrize("a,b,alpha", [(1.0, 1.0, 10.0), (1.0, 0.618, -4.0), (1.3, 0.7, -8.0),
                                       (0.9, 1.6, 6.0)])
def test_in_spectrum_matches_gap_condition(a, b, alpha):
    g = fq.rectangular_lattice(a, b, alpha)
    p = lt.LatticeParams(a, b, alpha)
    for k in np.linspace(0.37, 25.0, 60):
        gap, m = lt.gap_condition(k, p)
        if abs(m) < 1e-3:
            continue
        assert fq.in_spectrum(g, k) == (not gap)


def test_scan_bands_matches_closed_form_edges():
    g = fq.rectangular_lattice(1.0, 1.0, 10.0)
    found = [x for x in fq.scan_bands(g, 0.5, 10.0, 0.05) if x.certified]
    ref = lt.scan_gaps(lt.LatticeParams(1.0, 1.0, 10.0), 10.0)
    assert len(found) == len(ref)
    for x, y in zip(found, ref):
        assert x.k_lo == pytest.approx(y.k_lo, abs=1e-6)
        assert x.k_hi == pytest.approx(y.k_hi, abs=1e-6)


def test_kirchhoff_has_no_gaps():
    g = fq.rectangular_lattice(Fraction(1), Fraction(1), 0.0)
    assert fq.scan_bands(g, 0.05, 12.0, 0.05) == []


def test_min_abs_secular_vanishes_in_band():
    g = fq.rectangular_lattice(1.0, 1.0, 10.0)
    assert fq.min_abs_secular(g, 2.5) < 1e-9
    assert fq.min_abs_secular(g, 3.6) > 1e-3


def test_dirichlet_shift_keeps_phases():
    g = fq.rectangular_lattice(Fraction(1), Fraction(1618, 1000), 0.0)
    k = 2.3
    k2 = fq.dirichlet_shift(g, k, 100.0, 200)
    assert k2 > 100.0
    for e in g.edges:
        d = (k2 - k) * float(e.length) / (2 * math.pi)
        assert abs(d - round(d)) <= 0.5


# -- documents ----------------------------------------------------------

DOC = {
    "nu": 2,
    "vertices": [{"id": "v", "coupling": {"type": "delta", "alpha": 10}}],
    "edges": [{"id": "a", "from": "v", "to": "v", "length": "1", "z": [1, 0]},
              {"id": "b", "from": "v", "to": "v", "length": "1/2", "z": [0, 1]}],
}


def test_parse_graph_and_round_trip():
    g = fq.parse_graph(DOC)
    assert g.edges[1].length == Fraction(1, 2)
    assert g.coupling("v") == fq.delta_coupling(4, 10.0)
    g2 = fq.parse_graph(json.loads(json.dumps(fq.graph_to_document(g))))
    assert g2.coupling("v") == g.coupling("v")
    assert g2.edges == g.edges


@pytest.mark.parametrize("mutate,path", [
    (lambda d: d.pop("nu"), "nu"),
    (lambda d: d["edges"][0].update({"to": "w"}), "edges[0].to"),
    (lambda d: d["edges"][1].update({"length": "-1"}), "edges[1].length"),
    (lambda d: d["edges"][0].update({"z": [1]}), "edges[0].z"),
    (lambda d: d["vertices"][0]["coupling"].update({"type": "magic"}), "vertices[0].coupling.type"),
    (lambda d: d["vertices"][0].update({"coupling": {"type": "st", "r": 1, "S": [[[0, 1]]],
                                                      "T": [[[1, 0], [1, 0], [1, 0]]]}}),
     "vertices[0].coupling"),
])
def test_schema_errors_name_the_field(mutate, path):
    doc = json.loads(json.dumps(DOC))
    mutate(doc)
    with pytest.raises(fq.SchemaError) as exc:
        fq.parse_graph(doc)
    assert exc.value.path == path
