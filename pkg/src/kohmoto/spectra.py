"""Certified spectra of the two-sided discrete Schrodinger operators with
mechanical-word potentials.

The spectrum of a q-periodic operator is the preimage of [-2,2] under the
trace of the transfer-matrix cocycle over one period; its q bands are
isolated with Sturm counts over exact integers and refined by bisection.
One-sided limit spectra add exactly q isolated eigenvalues, enclosed by the
nested escaping bands of continued-fraction approximants.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

import numpy as np

from .errors import DegeneracyError, PreconditionError, PrecisionError
from .farey import as_fraction, cf_forms, check_rotation, format_rational
from .polyring import RP, ring_elements
from .rootfind import RootEnclosure, compare_roots, isolate_roots, separate
from .words import Configuration, period_word, sk_words

_MEMO_LOCK = threading.Lock()
_WORD_TRACE_MEMO: dict = {}
_CF_TRACE_MEMO: dict = {}
_SPECTRUM_MEMO: dict = {}


def clear_memos() -> None:
    with _MEMO_LOCK:
        _WORD_TRACE_MEMO.clear()
        _CF_TRACE_MEMO.clear()
        _SPECTRUM_MEMO.clear()


# ---------------------------------------------------------------------------
# Transfer-matrix traces


def _site_matrix(letter: str, E, Vc, const):
    # A(a) = [[E - V*a, -1], [1, 0]]
    if letter == "0":
        return [[E, const(-1)], [const(1), const(0)]]
    return [[E - Vc, const(-1)], [const(1), const(0)]]


def trace_poly(word: str, V) -> RP:
    """Trace of the ordered transfer product A(w_q)...A(w_1), as an exact
    polynomial in the energy; the product determinant is checked to be 1."""
    if not word:
        raise PreconditionError("transfer product needs a non-empty word")
    if set(word) - {"0", "1"}:
        raise PreconditionError(f"word {word!r} is not over {{0,1}}")
    V = as_fraction(V)
    key = (word, V)
    with _MEMO_LOCK:
        if key in _WORD_TRACE_MEMO:
            return _WORD_TRACE_MEMO[key]
    E, Vc, const = ring_elements(V)
    m = _site_matrix(word[0], E, Vc, const)
    for letter in word[1:]:
        a = _site_matrix(letter, E, Vc, const)
        m = [
            [a[0][0] * m[0][0] + a[0][1] * m[1][0], a[0][0] * m[0][1] + a[0][1] * m[1][1]],
            [a[1][0] * m[0][0] + a[1][1] * m[1][0], a[1][0] * m[0][1] + a[1][1] * m[1][1]],
        ]
    det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if det != const(1):
        raise AssertionError("transfer product determinant is not 1")
    t = m[0][0] + m[1][1]
    with _MEMO_LOCK:
        _WORD_TRACE_MEMO[key] = t
    return t


def _power_trace(A, B, C, e: int, const):
    """tr(P M^e) from A = tr P, B = tr M, C = tr(P M), for e >= 0."""
    lo, hi = const(-1), const(0)
    for _ in range(e):
        lo, hi = hi, B * hi - lo
    return hi * C - lo * A


def trace_triples(digits, V) -> list[tuple]:
    """Trace triples (prev, current, one-step-extension) along the prefixes
    of a continued-fraction string; V = None runs with symbolic coupling."""
    digits = tuple(int(d) for d in digits)
    if len(digits) < 2 or digits[0] != 0 or digits[1] != 0 or any(d < 1 for d in digits[2:]):
        raise PreconditionError(
            f"trace chain needs a continued fraction of a value in [0,1], got {digits}"
        )
    E, Vc, const = ring_elements(V)
    A, B, C = E - Vc, E, E * E - Vc * E - const(2)
    out = [(A, B, C)]
    for i, d in enumerate(digits[2:]):
        e = d - 1 if i == 0 else d
        nb = _power_trace(A, B, C, e, const)
        nc = _power_trace(A, B, C, e + 1, const)
        A, B, C = B, nb, nc
        out.append((A, B, C))
    return out


def trace_poly_cf(digits, V) -> RP:
    """Trace polynomial of the word generated by a continued-fraction
    string; the bare string [0] is the constant 2 (spectrum = all of R)."""
    digits = tuple(int(d) for d in digits)
    V = as_fraction(V)
    if digits == (0,):
        return RP.const(2)
    key = (digits, V)
    with _MEMO_LOCK:
        if key in _CF_TRACE_MEMO:
            return _CF_TRACE_MEMO[key]
    t = trace_triples(digits, V)[-1][1]
    with _MEMO_LOCK:
        _CF_TRACE_MEMO[key] = t
    return t


def extension_traces(digits, V) -> Iterator[tuple[int, RP]]:
    """Yields (k, trace polynomial of digits ++ [k]) for k = 1, 2, ...

    Incremental in k; extending the bare string for the value 0 uses the
    first-digit exponent convention."""
    digits = tuple(int(d) for d in digits)
    V = as_fraction(V)
    E, Vc, const = ring_elements(V)
    A, B, C = trace_triples(digits, V)[-1]
    first_slot = len(digits) == 2
    # exponent for appended digit k is k-1 in the first slot, else k
    lo, hi = const(-1), const(0)  # (S_{e-2}, S_{e-1}) at e = 0
    e = 0
    k = 0
    while True:
        k += 1
        target = k - 1 if first_slot else k
        while e < target:
            lo, hi = hi, B * hi - lo
            e += 1
        yield k, hi * C - lo * A


# ---------------------------------------------------------------------------
# Spectra


@dataclass(frozen=True)
class Spectrum:
    """Ordered certified band/point data: bands are pairs of root
    enclosures, points are plain rational enclosures."""

    bands: tuple
    points: tuple
    tol: Fraction

    def band_intervals(self, outer: bool = True) -> list[tuple[Fraction, Fraction]]:
        if outer:
            return [(lo.lo, hi.hi) for lo, hi in self.bands]
        return [(lo.hi, hi.lo) for lo, hi in self.bands]

    def point_intervals(self) -> list[tuple[Fraction, Fraction]]:
        return [(lo, hi) for lo, hi in self.points]

    def to_json_obj(self) -> dict:
        return {
            "bands": [
                [
                    format_rational(lo.lo),
                    format_rational(lo.hi),
                    format_rational(hi.lo),
                    format_rational(hi.hi),
                ]
                for lo, hi in self.bands
            ],
            "points": [
                [format_rational(lo), format_rational(hi)] for lo, hi in self.points
            ],
            "tol": format_rational(self.tol),
        }


def _check_tol(tol) -> Fraction:
    tol = as_fraction(tol)
    if tol <= 0:
        raise PreconditionError("tolerance must be positive")
    return tol


def floquet_edges(word: str, V, anti: bool) -> list[float]:
    """Floating band-edge estimates: eigenvalues of the one-period operator
    with periodic (trace = +2) or antiperiodic (trace = -2) closure.  Used
    only to seed certified isolation and the rendering backend."""
    q = len(word)
    v = float(as_fraction(V))
    s = -1.0 if anti else 1.0
    m = np.zeros((q, q))
    for i, ch in enumerate(word):
        m[i, i] = v * int(ch)
    for i in range(q - 1):
        m[i, i + 1] = m[i + 1, i] = 1.0
    if q == 1:
        m[0, 0] += 2 * s
    else:
        m[0, q - 1] += s
        m[q - 1, 0] += s
    return [float(x) for x in np.linalg.eigvalsh(m)]


def floquet_zeros(word: str, V) -> list[float]:
    """Floating estimates of the trace zeros (one per band): eigenvalues of
    the quarter-phase Bloch matrix."""
    q = len(word)
    v = float(as_fraction(V))
    m = np.zeros((q, q), dtype=complex)
    for i, ch in enumerate(word):
        m[i, i] = v * int(ch)
    for i in range(q - 1):
        m[i, i + 1] = m[i + 1, i] = 1.0
    if q > 1:
        m[0, q - 1] += 1j
        m[q - 1, 0] += -1j
    return [float(x) for x in np.linalg.eigvalsh(m)]


def spectrum_from_trace(t: RP, tol, word: Optional[str] = None, V=None) -> Spectrum:
    """Band decomposition {|t| <= 2} of a degree-q trace polynomial: exactly
    q certified-disjoint closed bands, edges enclosed to width <= tol.  The
    generating word and coupling, when supplied, seed the isolation with
    eigenvalue estimates (certified by Sturm counts either way)."""
    tol = _check_tol(tol)
    q = t.degree()
    if q < 1:
        raise PreconditionError("trace polynomial must have positive degree")
    if t.num[-1] != t.den:
        raise AssertionError("trace polynomial must be monic")
    guide_upper = guide_lower = None
    if word is not None and V is not None:
        if len(word) != q:
            raise PreconditionError("word length must match the trace degree")
        guide_upper = floquet_edges(word, V, anti=False)
        guide_lower = floquet_edges(word, V, anti=True)
    try:
        upper = (t - 2).int_poly()
        lower = (t + 2).int_poly()
        roots_upper = isolate_roots(upper, guide=guide_upper)
        roots_lower = isolate_roots(lower, guide=guide_lower)
    except DegeneracyError as exc:
        raise DegeneracyError(
            f"degenerate band structure (touching bands, e.g. coupling 0): {exc}"
        ) from exc
    if len(roots_upper) != q or len(roots_lower) != q:
        raise DegeneracyError(
            f"expected {q} simple edges per side, found "
            f"{len(roots_upper)}/{len(roots_lower)}"
        )
    edges = separate(roots_upper + roots_lower)
    edges = [e.refined(tol) for e in edges]
    edges = separate(edges)
    bands = []
    for i in range(0, 2 * q, 2):
        lo, hi = edges[i], edges[i + 1]
        mid = (lo.hi + hi.lo) / 2
        if abs(t.eval(mid)) > 2:
            raise AssertionError("band midpoint escaped the trace window")
        bands.append((lo, hi))
    return Spectrum(tuple(bands), (), tol)


def spectrum_periodic(r, V, tol) -> Spectrum:
    """Certified spectrum of the periodic operator at rational rotation r:
    exactly q disjoint closed bands."""
    r = check_rotation(as_fraction(r))
    V = as_fraction(V)
    tol = _check_tol(tol)
    key = (r, V, tol)
    with _MEMO_LOCK:
        if key in _SPECTRUM_MEMO:
            return _SPECTRUM_MEMO[key]
    t = trace_poly_cf(cf_forms(r)[0], V)
    spec = spectrum_from_trace(t, tol, word=period_word(r), V=V)
    if len(spec.bands) != r.denominator:
        raise DegeneracyError(
            f"expected {r.denominator} bands at {format_rational(r)}, got {len(spec.bands)}"
        )
    with _MEMO_LOCK:
        _SPECTRUM_MEMO[key] = spec
    return spec


def membership(E, r, V) -> bool:
    """Exact test |t(E)| <= 2 for rational energy E."""
    t = trace_poly_cf(cf_forms(as_fraction(r))[0], as_fraction(V))
    return abs(t.eval(as_fraction(E))) <= 2


# ---------------------------------------------------------------------------
# Band classification and defect spectra


def _cheap_cmp(a: RootEnclosure, b: RootEnclosure) -> Optional[int]:
    if a.hi < b.lo:
        return -1
    if b.hi < a.lo:
        return 1
    return None


def _cmp(a: RootEnclosure, b: RootEnclosure) -> int:
    return _cheap_cmp(a, b) or compare_roots(a, b)


def _band_relation(band, base_bands) -> str:
    """Exact relation of a band to a sorted disjoint band family: "inside"
    (contained in one member), "outside" (disjoint from all), "partial"."""
    a, b = band
    for c, d in base_bands:
        if b.hi < c.lo:  # strictly below this and every later band
            return "outside"
        if a.lo > d.hi:  # strictly above this band
            continue
        if _cmp(b, c) < 0:
            return "outside"
        if _cmp(a, d) > 0:
            continue
        if _cmp(a, c) >= 0 and _cmp(b, d) <= 0:
            return "inside"
        return "partial"
    return "outside"


def band_classify(r, k: int, V, tol, form: str = "short"):
    """Split the bands of the k-th continued-fraction approximant into those
    certified inside the base spectrum (type A) and those certified not
    contained (type B); reports whether every type-B band has already
    detached from the base spectrum."""
    r = check_rotation(as_fraction(r))
    V = as_fraction(V)
    tol = _check_tol(tol)
    if k < 1:
        raise PreconditionError("approximant index k must be >= 1")
    if form not in ("short", "long"):
        raise PreconditionError("form must be short or long")
    if V == 0:
        raise PreconditionError("band classification requires a non-zero coupling")
    digits = cf_forms(r)[0 if form == "short" else 1]
    base = spectrum_periodic(r, V, tol)
    for kk, t in extension_traces(digits, V):
        if kk == k:
            approx = spectrum_from_trace(t, tol, word=sk_words(digits + (k,))[-1], V=V)
            break
    type_a, type_b, rels = [], [], []
    for band in approx.bands:
        rel = _band_relation(band, base.bands)
        if rel == "inside":
            type_a.append(band)
        else:
            type_b.append(band)
            rels.append(rel)
    if len(type_b) != r.denominator:
        raise AssertionError(
            f"expected {r.denominator} escaping bands, found {len(type_b)}"
        )
    k0_reached = all(rel == "outside" for rel in rels)
    return type_a, type_b, k0_reached


def approach_digits(r, side: str) -> tuple[int, ...]:
    """Continued-fraction string whose k-extensions converge to the chosen
    one-sided limit of r."""
    r = check_rotation(as_fraction(r))
    if side not in ("plus", "minus"):
        raise PreconditionError(f"side must be plus or minus, got {side!r}")
    if r == 0:
        if side == "minus":
            raise PreconditionError("0- is not a point of the completion")
        return (0, 0)
    if r == 1:
        if side == "plus":
            raise PreconditionError("1+ is not a point of the completion")
        return (0, 0, 1)
    short, long = cf_forms(r)
    n = len(short) - 2
    return short if (side == "plus") == (n % 2 == 0) else long


def defect_spectrum(r, side: str, V, tol, kcap: int = 64) -> Spectrum:
    """Spectrum of the one-sided limit operator: the periodic bands plus
    exactly q isolated eigenvalues, one in each bounded spectral gap and one
    in an unbounded gap (above the bands for the upper limit, below for the
    lower), each enclosed to width <= tol by nested escaping bands."""
    r = check_rotation(as_fraction(r))
    V = as_fraction(V)
    tol = _check_tol(tol)
    if V == 0:
        raise PreconditionError("defect spectra require a non-zero coupling")
    key = (r, side, V, tol, kcap)
    with _MEMO_LOCK:
        if key in _SPECTRUM_MEMO:
            return _SPECTRUM_MEMO[key]
    digits = approach_digits(r, side)
    q = r.denominator
    base = spectrum_periodic(r, V, tol)
    root_tol = tol / 4
    best_k, widths = None, []
    gen = extension_traces(digits, V)
    k_next = 1
    type_b = []
    for k, t in gen:
        if k != k_next:
            continue
        approx = spectrum_from_trace(
            t, root_tol, word=sk_words(digits + (k,))[-1], V=V
        )
        type_b, rels = [], []
        for band in approx.bands:
            rel = _band_relation(band, base.bands)
            if rel != "inside":
                type_b.append(band)
                rels.append(rel)
        if len(type_b) != q:
            raise AssertionError(f"expected {q} escaping bands, found {len(type_b)}")
        widths = [b.hi - a.lo for a, b in type_b]
        if all(w <= tol for w in widths) and all(rel == "outside" for rel in rels):
            best_k = k
            break
        if 2 * k_next > kcap:
            break
        k_next = 2 * k_next
    if best_k is None:
        raise PrecisionError(
            f"defect certification at {format_rational(r)}{'+' if side == 'plus' else '-'} "
            f"did not converge by k = {k_next} (cap {kcap}); "
            f"widths {[float(w) for w in widths]}"
        )
    points = tuple((a.lo, b.hi) for a, b in type_b)
    _check_point_placement(base, points, above=(side == "plus") == (V > 0))
    spec = Spectrum(base.bands, points, tol)
    with _MEMO_LOCK:
        _SPECTRUM_MEMO[key] = spec
    return spec


def _check_point_placement(base: Spectrum, points, above: bool) -> None:
    """For positive coupling, upper limits put one eigenvalue in the gap
    above each band (the last one above the spectrum) and lower limits
    mirror this below each band; negative coupling reflects the picture
    (conjugation by (-1)^n sends H(V) to -H(-V))."""
    bands = base.bands
    q = len(bands)
    assert len(points) == q
    for j, (plo, phi) in enumerate(points):
        if above:
            assert plo > bands[j][1].hi, "defect point is not above its band"
            if j + 1 < q:
                assert phi < bands[j + 1][0].lo, "defect point escaped its gap"
        else:
            assert phi < bands[j][0].lo, "defect point is not below its band"
            if j >= 1:
                assert plo > bands[j - 1][1].hi, "defect point escaped its gap"


# ---------------------------------------------------------------------------
# Floating-point finite-section oracle (never part of the certified path)


def finite_section_eigs(config: Configuration, V, N: int) -> list[float]:
    """Eigenvalues of the N x N truncation centered at the origin."""
    from scipy.linalg import eigh_tridiagonal

    if N < 3 or N % 2 == 0:
        raise PreconditionError("finite section size must be odd and >= 3")
    half = (N - 1) // 2
    v = float(as_fraction(V))
    diag = np.array([v * int(config.at(n)) for n in range(-half, half + 1)])
    off = np.ones(N - 1)
    return list(eigh_tridiagonal(diag, off, eigvals_only=True))


def finite_section_modes(config: Configuration, V, N: int, edge_frac: float = 0.05):
    """Eigenvalues with the probability mass each eigenvector carries in the
    outer edge_frac of the truncation window (to filter boundary modes)."""
    from scipy.linalg import eigh_tridiagonal

    if N < 3 or N % 2 == 0:
        raise PreconditionError("finite section size must be odd and >= 3")
    half = (N - 1) // 2
    v = float(as_fraction(V))
    diag = np.array([v * int(config.at(n)) for n in range(-half, half + 1)])
    off = np.ones(N - 1)
    vals, vecs = eigh_tridiagonal(diag, off)
    m = max(1, int(edge_frac * N))
    mass = (vecs[:m] ** 2).sum(axis=0) + (vecs[-m:] ** 2).sum(axis=0)
    return list(vals), list(mass)
