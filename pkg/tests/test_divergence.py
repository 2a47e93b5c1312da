import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cvm2d.analytic import analytic_config_vars
from cvm2d.configvars import ConfigVars, count_config_vars
from cvm2d.divergence import DivergenceOptions, cvm_divergence, cvm_divergence_terms, kl_divergence
from cvm2d.errors import DomainError, InputError
from cvm2d.grid import Lattice, random_equiprobable, stripe_fixture
from oracles import divergence_term_by_term
from strategies import lattices

STRIPE = count_config_vars(stripe_fixture(16, 16))
STRICT = DivergenceOptions("strict_error")


def test_kl_examples():
    assert kl_divergence((0.5, 0.5), (0.5, 0.5)) == 0.0
    assert kl_divergence((0.5, 0.5), (0.25, 0.75)) == pytest.approx(0.14384103622589042, abs=1e-15)
    assert kl_divergence((1.0, 0.0), (0.5, 0.5)) == pytest.approx(math.log(2), abs=1e-15)


def test_kl_errors():
    with pytest.raises(InputError):
        kl_divergence((0.5, 0.5), (1.0,))
    with pytest.raises(InputError):
        kl_divergence((0.5, 0.6), (0.5, 0.5))
    with pytest.raises(DomainError):
        kl_divergence((0.5, 0.5), (1.0, 0.0), STRICT)
    assert kl_divergence((0.5, 0.5), (1.0, 0.0)) == pytest.approx(0.5 * math.log(0.5) + 0.5 * math.log(0.5 / 1e-9), rel=1e-12)


def test_options_validation():
    with pytest.raises(InputError):
        DivergenceOptions("nope")
    with pytest.raises(InputError):
        DivergenceOptions("epsilon_floor", 0.0)


def test_analytic_pair_regression():
    q, p = analytic_config_vars(1.3), analytic_config_vars(1.0)
    d = cvm_divergence(q, p)
    assert d == pytest.approx(-0.017967655826385757, abs=1e-14)
    assert d == pytest.approx(divergence_term_by_term(q.as_dict(), p.as_dict()), abs=1e-14)


def test_stripe_against_random_statistics():
    p = analytic_config_vars(1.0)
    d = cvm_divergence(STRIPE, p)
    assert math.isfinite(d)
    assert d == pytest.approx(-math.log(2), abs=1e-14)
    assert d == pytest.approx(divergence_term_by_term(STRIPE.as_dict(), p.as_dict()), abs=1e-14)


def test_terms_sum_to_total():
    q, p = analytic_config_vars(1.7), analytic_config_vars(1.2)
    t = cvm_divergence_terms(q, p)
    assert t.total == cvm_divergence(q, p)
    assert t.x == 0.0  # equal singles on both sides


@given(lattices(min_rows=4, max_rows=16, min_cols=4, max_cols=16, equiprobable=True))
def test_self_divergence_zero(lat):
    q = count_config_vars(lat)
    assert cvm_divergence(q, q) == 0.0


@given(lattices(min_rows=4, max_rows=12, min_cols=4, max_cols=12, equiprobable=True), st.floats(0.4, 2.9))
def test_x_block_vanishes_at_equiprobable(lat, h):
    q, p = count_config_vars(lat), analytic_config_vars(h)
    assert kl_divergence(q.x, p.x) == 0.0
    assert cvm_divergence_terms(q, p).x == 0.0


@given(lattices(min_rows=4, max_rows=8, min_cols=4, max_cols=8), lattices(min_rows=4, max_rows=8, min_cols=4, max_cols=8))
def test_floor_keeps_output_finite(a, b):
    d = cvm_divergence(count_config_vars(a), count_config_vars(b))
    assert math.isfinite(d)


@given(lattices(min_rows=4, max_rows=8, min_cols=4, max_cols=8, equiprobable=True), st.floats(0.4, 2.9))
def test_matches_oracle(lat, h):
    q, p = count_config_vars(lat), analytic_config_vars(h)
    assert cvm_divergence(q, p) == pytest.approx(divergence_term_by_term(q.as_dict(), p.as_dict()), abs=1e-12)


def test_strict_raises_on_zero_model():
    q = count_config_vars(random_equiprobable(8, 8, 0))
    with pytest.raises(DomainError):
        cvm_divergence(q, STRIPE, STRICT)
    assert math.isfinite(cvm_divergence(q, STRIPE))


def test_rejects_unnormalized():
    q = analytic_config_vars(1.0)
    with pytest.raises(InputError):
        cvm_divergence(q.perturbed(y1=0.1), q)
