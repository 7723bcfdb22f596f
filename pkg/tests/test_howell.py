"""Modular lattice engine: membership, solve, canonical reduction, factors."""

from __future__ import annotations

import itertools
import random

import numpy as np
import pytest
from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_form

from groupflow.howell import HowellForm, _divisor_chain, lattice_normal_form


def test_identity_matrix_spans_everything():
    form = lattice_normal_form([[1, 0], [0, 1]], 6)
    for v in itertools.product(range(6), repeat=2):
        assert form.contains(list(v))
        sol = form.solve(list(v))
        assert sol is not None and tuple(sol % 6) == v


def test_zero_matrix_spans_nothing():
    form = lattice_normal_form([[0, 0], [0, 0]], 4)
    assert form.contains([0, 0])
    assert not form.contains([1, 0])
    assert not form.contains([0, 2])


def test_two_by_two_example():
    form = lattice_normal_form([[2, 0], [0, 2]], 4)
    assert not form.contains([1, 0])
    assert form.contains([2, 2])
    assert list(form.solve([2, 2])) == [1, 1]


def test_membership_matches_exhaustive_span():
    rng = random.Random(3)
    for _ in range(120):
        m = rng.choice([2, 3, 4, 6, 8, 12])
        k = rng.randint(1, 3)
        nrows = rng.randint(0, 4)
        rows = [[rng.randrange(m) for _ in range(k)] for _ in range(nrows)]
        form = lattice_normal_form(rows, m, ncols=k)
        span = set()
        for coeffs in itertools.product(range(m), repeat=nrows):
            span.add(tuple(sum(c * r[i] for c, r in zip(coeffs, rows)) % m
                           for i in range(k)))
        for v in itertools.product(range(m), repeat=k):
            assert form.contains(list(v)) == (v in span)


def test_solve_reproduces_vector():
    rng = random.Random(5)
    for _ in range(60):
        m = rng.choice([4, 6, 12])
        k = rng.randint(1, 4)
        nrows = rng.randint(1, 5)
        rows = [[rng.randrange(m) for _ in range(k)] for _ in range(nrows)]
        form = lattice_normal_form(rows, m, ncols=k)
        coeffs = [rng.randrange(m) for _ in range(nrows)]
        v = [sum(c * r[i] for c, r in zip(coeffs, rows)) % m for i in range(k)]
        sol = form.solve(v)
        assert sol is not None
        rebuilt = [sum(int(c) * r[i] for c, r in zip(sol, rows)) % m for i in range(k)]
        assert rebuilt == v


def test_reduce_is_constant_on_cosets():
    """Members of the same coset share a canonical representative; the
    representative map is linear on the span (v, w in span => v+w in span)."""
    rng = random.Random(7)
    for _ in range(40):
        m = rng.choice([4, 6, 8])
        k = rng.randint(1, 3)
        rows = [[rng.randrange(m) for _ in range(k)] for _ in range(rng.randint(1, 3))]
        form = lattice_normal_form(rows, m, ncols=k)
        members = [v for v in itertools.product(range(m), repeat=k)
                   if form.contains(list(v))]
        for v, w in itertools.islice(itertools.product(members, repeat=2), 60):
            s = [(a + b) % m for a, b in zip(v, w)]
            assert form.contains(s)
        for v in itertools.islice(itertools.product(range(m), repeat=k), 30):
            for s in members[:5]:
                shifted = [(a + b) % m for a, b in zip(v, s)]
                assert np.array_equal(form.reduce(list(v)), form.reduce(shifted))


def test_quaternion_delta_lattice_factors():
    """Relation lattice of the three C4 subgroups glued along the centre."""
    rows = [(4, 0, 0), (0, 4, 0), (0, 0, 4), (2, -2, 0), (2, 0, -2)]
    form = lattice_normal_form(rows, 4, ncols=3)
    snf = smith_normal_form(Matrix([list(r) for r in rows]))
    expected = _divisor_chain([int(snf[i, i]) for i in range(3) if int(snf[i, i]) > 1])
    assert expected == [2, 2, 4]          # confirm the oracle first
    assert form.invariant_factors() == [2, 2, 4]


def test_invariant_factors_vs_sympy_snf():
    rng = random.Random(11)
    for _ in range(60):
        m = rng.choice([2, 4, 6, 12, 60])
        k = rng.randint(1, 4)
        rows = [[rng.randrange(-6, 7) for _ in range(k)] for _ in range(rng.randint(1, 5))]
        full = rows + [[m if i == j else 0 for i in range(k)] for j in range(k)]
        form = HowellForm(k, m)
        for r in full:
            form.add_row(r)
        snf = smith_normal_form(Matrix(full))
        expected = _divisor_chain([int(snf[i, i]) for i in range(k) if int(snf[i, i]) > 1])
        assert form.invariant_factors() == expected


def test_modulus_one_degenerates():
    form = HowellForm(3, 1)
    form.add_row([0, 0, 0])
    assert form.contains([0, 0, 0])
    assert form.invariant_factors() == []


def test_row_width_checked():
    form = HowellForm(3, 4)
    with pytest.raises(ValueError):
        form.add_row([1, 2])
