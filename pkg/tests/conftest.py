"""Shared fixtures: cached propagations for parameter points reused in tests."""

import functools

import pytest

from rabigeo import ModelParams, aa_phases, propagate


@functools.lru_cache(maxsize=128)
def cached_propagation(delta, epsilon, amplitude, omega=1.0):
    return propagate(ModelParams(delta, epsilon, amplitude, omega))


@functools.lru_cache(maxsize=128)
def cached_geometry(delta, epsilon, amplitude, omega=1.0):
    r = cached_propagation(delta, epsilon, amplitude, omega)
    return aa_phases(r)


@pytest.fixture
def propagation():
    return cached_propagation


@pytest.fixture
def geometry():
    return cached_geometry
