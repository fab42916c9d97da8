import random
from fractions import Fraction as F

import pytest

from kohmoto.analysis import (
    butterfly,
    lipschitz_sweep,
    measure_experiments,
    optimality_certificate,
    point_spectrum,
)
from kohmoto.errors import PreconditionError, UnsupportedRegimeError
from kohmoto.farey import FareyPoint as P

V5 = F(5)
TOL = F(1, 10**9)


def test_lipschitz_endpoint_pair():
    max_ratio, rows = lipschitz_sweep([(P.exact(F(0)), P.exact(F(1)))], V5, TOL)
    assert rows[0].d_farey == 1
    assert abs(max_ratio - 5) < F(1, 10**6)
    with pytest.raises(PreconditionError):
        lipschitz_sweep([(P.exact(F(1, 2)), P.exact(F(1, 2)))], V5, TOL)


def test_lipschitz_random_pairs_stable():
    rng = random.Random(19)
    pairs = []
    while len(pairs) < 100:
        q1, q2 = rng.randint(1, 25), rng.randint(1, 25)
        x, y = F(rng.randint(0, q1), q1), F(rng.randint(0, q2), q2)
        if x != y:
            pairs.append((P.exact(x), P.exact(y)))
    pairs += [
        (P.plus(F(0)), P.exact(F(1, 5))),
        (P.minus(F(1, 2)), P.exact(F(1, 3))),
        (P.plus(F(2, 3)), P.minus(F(3, 4))),
    ]
    m1, rows1 = lipschitz_sweep(pairs, V5, TOL)
    m2, rows2 = lipschitz_sweep(pairs, V5, TOL)
    assert m1 == m2 and rows1 == rows2
    assert all(row.ratio_upper > 0 for row in rows1)
    assert m1 < 100  # finite, sane scale for the Lipschitz constant at V = 5


def test_lipschitz_diophantine_column():
    # |1/3 - 2/7| = 1/21 < 1/49? no; use alpha = 13/21 vs 5/8: |.| = 1/168 < 1/64 yes
    _, rows = lipschitz_sweep([(P.exact(F(13, 21)), P.exact(F(5, 8)))], V5, TOL)
    assert rows[0].scaled_qd is not None
    _, rows = lipschitz_sweep([(P.exact(F(0)), P.exact(F(1)))], V5, TOL)
    assert rows[0].scaled_qd is None


def test_point_spectrum_dispatch():
    spec = point_spectrum(P.plus(F(0)), V5, TOL)
    assert len(spec.points) == 1
    with pytest.raises(PreconditionError):
        point_spectrum(P.parse("cf:[0,0]per[1]"), V5, TOL)


def test_optimality_certificate_zero_plus():
    rep = optimality_certificate(F(0), "plus", V5, 10, TOL)
    assert rep.C1 == F(1, 2)
    assert rep.mu == (F(4), F(4))
    assert rep.subsequence and min(rep.subsequence) >= 2
    assert rep.step4_all_certified
    assert all(row.step3_certified for row in rep.rows)
    for row in rep.rows:
        assert row.d_farey == F(1, row.k)  # d_F(0+, 1/k) = 1/k
        if row.k in rep.subsequence:
            assert rep.C1 * row.d_farey <= row.overlap_defect[1]
            assert row.overlap_defect[0] <= row.d_hausdorff[1]
            assert row.d_hausdorff[0] <= rep.C2_observed * row.d_farey


def test_hausdorff_column_decays_like_the_farey_distance():
    rep = optimality_certificate(F(0), "plus", V5, 12, TOL)
    hs = [row.d_hausdorff[1] for row in rep.rows]
    assert hs[-1] < hs[1] and hs[-1] < F(1, 3)
    # consistent with the Lipschitz estimate: d_H / d_F stays bounded
    assert all(
        row.d_hausdorff[1] / row.d_farey < 30 for row in rep.rows if row.k >= 2
    )


def test_optimality_guards():
    with pytest.raises(UnsupportedRegimeError):
        optimality_certificate(F(1, 2), "plus", F(2), 10, TOL)
    with pytest.raises(PreconditionError):
        optimality_certificate(F(0), "plus", V5, 3, TOL)


def test_measure_experiments_zero():
    rep = measure_experiments(F(0), V5, 6)
    assert len(rep.rows) == 6
    assert rep.pair_inequality_certified
    assert rep.mu == (F(4), F(4))
    overlaps = [row.overlap[1] for row in rep.rows]
    assert overlaps[0] == 0  # sigma_1 misses [-2,2] entirely at V=5
    assert all(o <= F(4) for o in overlaps)
    assert all(row.sub_half for row in rep.rows)
    empty = measure_experiments(F(2, 3), V5, 0)
    assert empty.rows == ()


def test_measure_experiments_interior_rational():
    rep = measure_experiments(F(2, 3), V5, 5)
    assert rep.pair_inequality_certified
    assert all(row.overlap[1] <= rep.mu[1] for row in rep.rows)
    assert any(row.sub_half for row in rep.rows)
    assert [row.r_k.denominator for row in rep.rows] == [3 * k + 1 for k in range(1, 6)]


def test_butterfly_certified_small():
    ds = butterfly(1, V5, "certified", True, F(1, 10**6))
    assert [(r.q, r.p) for r in ds.rows] == [(1, 0), (1, 1)]
    row0, row1 = ds.rows
    assert len(row0.bands) == 1 and len(row0.defects_plus) == 1 and not row0.defects_minus
    assert len(row1.bands) == 1 and len(row1.defects_minus) == 1 and not row1.defects_plus
    assert row0.error is None and row1.error is None
    lo, hi = (F(x) for x in row0.bands[0])
    assert lo <= -2 and hi >= 2
    ds3 = butterfly(3, V5, "certified", True, F(1, 10**6))
    row23 = next(r for r in ds3.rows if (r.q, r.p) == (3, 2))
    assert len(row23.bands) == 3
    assert len(row23.defects_plus) == 3 and len(row23.defects_minus) == 3


def test_butterfly_fast_deterministic_and_schema():
    ds1 = butterfly(8, V5, "fast", True)
    ds2 = butterfly(8, V5, "fast", True, threads=4)
    assert ds1.to_csv() == ds2.to_csv()
    assert ds1.to_svg() == ds2.to_svg()
    lines = ds1.to_csv().splitlines()
    assert lines[0] == "q,p,kind,lo,hi"
    kinds = {line.split(",")[2] for line in lines[1:]}
    assert kinds <= {"band", "defect_plus", "defect_minus"}
    assert all("~" in line for line in lines[1:])  # fast values are tagged
    obj = ds1.to_json_obj()
    assert obj["backend"] == "fast" and obj["Q"] == 8
    # every row keeps its bands even if a defect estimate failed
    assert all(row.bands for row in ds1.rows)


def test_butterfly_fast_matches_certified_bands():
    ds = butterfly(4, V5, "fast", False)
    from kohmoto.spectra import spectrum_periodic

    for row in ds.rows:
        spec = spectrum_periodic(F(row.p, row.q), V5, F(1, 10**9))
        assert len(row.bands) == len(spec.bands)
        for (flo, fhi), (clo, chi) in zip(row.bands, spec.bands):
            assert abs(float(flo[1:]) - float(clo.mid)) < 1e-6
            assert abs(float(fhi[1:]) - float(chi.mid)) < 1e-6


def test_butterfly_guards():
    with pytest.raises(PreconditionError):
        butterfly(0, V5)
    with pytest.raises(PreconditionError):
        butterfly(2, V5, backend="quick")
