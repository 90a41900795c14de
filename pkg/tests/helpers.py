"""Shared test-state batteries."""

import math

import numpy as np

import puresep as ps

MIXED_DIMS = [
    (2, 2), (2, 3), (3, 2), (3, 3), (4, 4), (2, 4),
    (2, 2, 2), (2, 3, 2), (3, 3, 3), (2, 2, 3), (4, 2, 3),
    (2, 2, 2, 2), (2, 3, 2, 2), (4, 4, 4), (2, 4, 2, 3),
]


def basis_pair(dims):
    """``(|0...0> + |1...1>)/sqrt(2)`` on arbitrary dims (every d_k >= 2)."""
    amps = np.zeros(math.prod(dims), dtype=complex)
    amps[0] = amps[ps.flat_index(dims, (1,) * len(dims))] = 1 / math.sqrt(2)
    return ps.PureState(dims, amps)


def product_battery(count, dims_pool=MIXED_DIMS, seed0=0):
    return [ps.random_product_state(dims_pool[i % len(dims_pool)], seed0 + i)
            for i in range(count)]


def mixed_battery(size=500, seed=2024):
    """Product, cat, W, generic random and perturbed-product states."""
    rng = np.random.default_rng(seed)
    states = []
    states += [ps.cat_state(n) for n in range(2, 7)]
    states += [ps.cat_state(n, levels=3) for n in range(2, 5)]
    states += [ps.w_state(n) for n in range(2, 7)]
    states += product_battery(150, seed0=1000)
    states += [ps.random_state(MIXED_DIMS[i % len(MIXED_DIMS)], 5000 + i) for i in range(150)]
    i = 0
    while len(states) < size:
        dims = MIXED_DIMS[i % len(MIXED_DIMS)]
        base = ps.random_product_state(dims, 9000 + i)
        direction = basis_pair(dims) if i % 2 else ps.random_state(dims, 7000 + i)
        eps = 10 ** rng.uniform(-13, -2)
        states.append(ps.perturb(base, direction, eps))
        i += 1
    return states


def fraction_det(rows):
    """Exact determinant of a square matrix of Fractions by elimination."""
    from fractions import Fraction

    a = [[Fraction(x) for x in row] for row in rows]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


def exact_gram_large_minus_identity(dims, squared_support, k):
    """Exact ``M M^T - E`` for a real state given as {multi: amplitude**2 as Fraction}.

    Only valid when every nonzero amplitude equals the same positive value,
    so products of two amplitudes are the rational ``amplitude**2``.
    """
    from fractions import Fraction
    import itertools

    rest = [range(x) for j, x in enumerate(dims) if j != k]
    comps = list(itertools.product(*rest))
    r = len(comps)
    mat = [[Fraction(0)] * r for _ in range(r)]
    for i, ci in enumerate(comps):
        for j, cj in enumerate(comps):
            total = Fraction(0)
            for c in range(dims[k]):
                a = ci[:k] + (c,) + ci[k:]
                b = cj[:k] + (c,) + cj[k:]
                if a in squared_support and b in squared_support:
                    total += squared_support[a]
            mat[i][j] = total - (1 if i == j else 0)
    return mat
