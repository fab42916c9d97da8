import random
from fractions import Fraction as F

import pytest

from kohmoto.errors import PreconditionError
from kohmoto.sets import (
    EnclosedSet,
    hausdorff_exact,
    hausdorff_spectra,
    intersect,
    lebesgue,
    measure,
    normalize,
)
from kohmoto.spectra import defect_spectrum, spectrum_periodic


def test_normalize_and_intersect():
    xs = normalize([(F(3), F(4)), (F(0), F(1)), (F(1), F(2))])
    assert xs == ((F(0), F(2)), (F(3), F(4)))
    ys = intersect(xs, ((F(1), F(7, 2)),))
    assert ys == ((F(1), F(2)), (F(3), F(7, 2)))
    assert measure(ys) == F(3, 2)


def test_hausdorff_hand_examples():
    assert hausdorff_exact([(F(-2), F(2))], [(F(3), F(7))]) == 5
    assert hausdorff_exact([(F(0), F(1))], [(F(0), F(1)), (F(2), F(2))]) == 1
    a = [(F(0), F(1)), (F(5), F(6))]
    assert hausdorff_exact(a, a) == 0
    with pytest.raises(PreconditionError):
        hausdorff_exact([], [(F(0), F(1))])


def test_hausdorff_grid_oracle_with_spots():
    rng = random.Random(3)

    def rand_set():
        n = rng.randint(1, 4)
        iv = []
        x = F(rng.randint(-20, 0), 7)
        for _ in range(n):
            w = F(rng.randint(1, 30), 13)
            iv.append((x, x + w))
            x = x + w + F(rng.randint(1, 25), 11)
        spots = [(x + F(1, 3), x + F(1, 3))] if rng.random() < 0.6 else []
        es = EnclosedSet(normalize(iv), normalize(iv + spots), tuple(spots))
        return es, normalize(iv + spots)

    def grid_dh(a, b, step=1 / 512):
        def pts(iv):
            out = []
            for lo, hi in iv:
                lo, hi = float(lo), float(hi)
                k = 0
                while lo + k * step < hi:
                    out.append(lo + k * step)
                    k += 1
                out.append(hi)
            return out

        pa, pb = pts(a), pts(b)
        da = max(min(abs(x - y) for y in pb) for x in pa)
        db = max(min(abs(x - y) for y in pa) for x in pb)
        return max(da, db)

    for _ in range(40):
        (ea, ta), (eb, tb) = rand_set(), rand_set()
        lo, hi = ea.hausdorff(eb)
        exact = hausdorff_exact(ta, tb)
        assert lo <= exact <= hi
        assert abs(grid_dh(ta, tb) - float(exact)) <= 1 / 128


def test_enclosure_widens_with_sloppy_spots():
    # an uncertain isolated point must still give a two-sided bound
    a = EnclosedSet.from_intervals([(F(0), F(1))])
    spot = (F(2), F(2) + F(1, 1000))
    b = EnclosedSet(((F(0), F(1)),), ((F(0), F(1)), spot), (spot,))
    lo, hi = a.hausdorff(b)
    assert lo <= 1 <= hi
    assert hi - lo <= F(1, 500)


def test_intersection_measure_enclosure():
    a = EnclosedSet(((F(0), F(1)),), ((F(-1, 100), F(101, 100)),))
    b = EnclosedSet(((F(1, 2), F(2)),), ((F(49, 100), F(2)),))
    c = a.intersection(b)
    mlo, mhi = c.measure()
    assert mlo == F(1, 2) and mhi == F(52, 100)


def test_spectra_level_helpers():
    V, tol = F(5), F(1, 10**9)
    s0 = spectrum_periodic(F(0), V, tol)
    s1 = spectrum_periodic(F(1), V, tol)
    lo, hi = hausdorff_spectra(s0, s1)
    assert lo <= 5 <= hi and hi - lo < F(1, 10**7)
    assert lebesgue(s0) == (F(4), F(4))
    d0 = defect_spectrum(F(0), "plus", V, tol)
    assert lebesgue(d0) == lebesgue(s0)
    # adding the defect point moves the spectrum by less than a band width
    dlo, dhi = hausdorff_spectra(s0, d0)
    assert dlo > 3 and dhi < 4  # the impurity eigenvalue sits sqrt(29)-2 away


def test_covers_at_resolution():
    big = EnclosedSet.from_intervals([(F(0), F(10))])
    small = EnclosedSet.from_intervals([(F(1), F(2)), (F(5), F(6))])
    assert big.covers_at_resolution(small)
    assert not small.covers_at_resolution(big)
