"""Independent brute-force oracles shared by the tests.

Nothing here calls the LCM or division methods of the semigroups: ideals are
materialised by multiplying over a finite universe.
"""
import itertools


def left_ideal(D, x, universe):
    """Px ∩ universe, built from products s·x with s in the universe."""
    U = set(universe)
    return {w for w in (D.multiply(s, x) for s in universe) if w in U}


def right_ideal(D, x, universe):
    U = set(universe)
    return {w for w in (D.multiply(x, s) for s in universe) if w in U}


def brute_lcm(D, x, y, universe, side="left", cache=None):
    """Generator of the intersection of two principal ideals, found by search.

    ``cache`` is an optional dict reused across calls with the same universe.
    """
    build = left_ideal if side == "left" else right_ideal
    cache = {} if cache is None else cache

    def ideal(w):
        key = (side, w)
        if key not in cache:
            cache[key] = build(D, w, universe)
        return cache[key]

    inter = ideal(x) & ideal(y)
    if not inter:
        return None
    for z in sorted(inter, key=lambda w: (len(str(w)), str(w))):
        if inter <= ideal(z):
            return z
    raise AssertionError("no generator inside the universe; enlarge it")


def brute_membership(D, r, y, universe, side="left"):
    """s with r = s·y (side left) or r = y·s (side right) by exhaustive search."""
    for s in universe:
        if (D.multiply(s, y) if side == "left" else D.multiply(y, s)) == r:
            return s
    return None


def brute_order(m, n):
    t, x = 1, m % n
    while x != 1:
        x = x * m % n
        t += 1
    return t


def all_pairs(xs):
    return itertools.product(xs, repeat=2)
