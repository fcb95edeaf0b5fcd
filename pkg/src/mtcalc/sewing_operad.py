"""Sphere sewing combinatorics: elements, closed-formula sewing, oracle.

An arity-n element is a sphere with n positively oriented punctures carrying
scaling-type local coordinates (the last puncture sits at 0) and one
negatively oriented puncture at infinity whose coordinate is determined by a
single translation parameter.  Sewing is implemented twice: by the closed
formula, and by an independent Moebius-composition oracle that glues the
charts through w -> -1/w and re-solves the canonical normalization.

All arithmetic is generic over the scalar type: complex floats, or exact
Gaussian rationals (`GaussRat`) for the tolerance-free mode.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .report import Report

__all__ = [
    "GaussRat",
    "PuncturedSphere",
    "SewingError",
    "identity_sphere",
    "vacuum_sphere",
    "rescaling_sphere",
    "sew",
    "geometric_sew_oracle",
    "is_sewable",
    "permute",
    "insertion_permutation",
    "verify_operad_axioms",
    "random_sphere",
]

SEW_MARGIN = 1e-6


class SewingError(ValueError):
    """Unsewable configuration, bad index, or degenerate normalization."""


# ---------------------------------------------------------------------------
# exact scalars


@dataclass(frozen=True)
class GaussRat:
    """Gaussian rational: exact complex number with Fraction parts."""

    re: Fraction
    im: Fraction = Fraction(0)

    @classmethod
    def of(cls, re, im=0):
        return cls(Fraction(re), Fraction(im))

    def __add__(self, o):
        o = _coerce(o)
        return GaussRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __sub__(self, o):
        return self + (-_coerce(o))

    def __rsub__(self, o):
        return _coerce(o) + (-self)

    def __mul__(self, o):
        o = _coerce(o)
        return GaussRat(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = _coerce(o)
        n = o.abs2()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussRat(
            (self.re * o.re + self.im * o.im) / n,
            (self.im * o.re - self.re * o.im) / n,
        )

    def __rtruediv__(self, o):
        return _coerce(o) / self

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, o):
        try:
            o = _coerce(o)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussRat({self.re!r}, {self.im!r})"


def _coerce(x):
    if isinstance(x, GaussRat):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussRat(Fraction(x))
    if isinstance(x, complex):
        raise TypeError("cannot mix floats into exact arithmetic")
    raise TypeError(f"cannot coerce {type(x).__name__} to GaussRat")


def _abs2(x):
    if isinstance(x, GaussRat):
        return x.abs2()
    x = complex(x)
    return x.real * x.real + x.imag * x.imag


def _zero_like(x):
    return GaussRat(Fraction(0)) if isinstance(x, GaussRat) else 0j


def _is_exact(x) -> bool:
    return isinstance(x, GaussRat)


# ---------------------------------------------------------------------------
# elements


@dataclass(frozen=True)
class PuncturedSphere:
    """Arity-n sewing element.

    ``z`` holds the first n-1 puncture positions (the n-th is at 0), ``a``
    the translation parameter of the coordinate at infinity, ``scales`` the
    n local scaling factors.
    """

    z: tuple
    a: object
    scales: tuple

    def __post_init__(self):
        object.__setattr__(self, "z", tuple(self.z))
        object.__setattr__(self, "scales", tuple(self.scales))
        n = self.arity
        if len(self.z) != max(n - 1, 0):
            raise SewingError("puncture list does not match the arity")
        if n == 0 and self.a != _zero_like(self.a):
            raise SewingError("the arity-0 element has zero infinity parameter")
        pos = self.positions()
        for i, p in enumerate(pos[:-1] if n else ()):
            if not p:
                raise SewingError("punctures must be nonzero")
        for i in range(len(pos)):
            for j in range(i + 1, len(pos)):
                if pos[i] == pos[j]:
                    raise SewingError("punctures must be pairwise distinct")
        for s in self.scales:
            if not s:
                raise SewingError("scalings must be nonzero")

    @property
    def arity(self) -> int:
        return len(self.scales)

    def positions(self) -> tuple:
        """All finite puncture positions, the implicit last one included."""
        if self.arity == 0:
            return ()
        return self.z + (_zero_like(self.a),)

    def is_exact(self) -> bool:
        return _is_exact(self.a)

    def approx(self) -> "PuncturedSphere":
        """Floating-point image of the element."""
        return PuncturedSphere(
            tuple(complex(v) for v in self.z),
            complex(self.a),
            tuple(complex(v) for v in self.scales),
        )

    def distance(self, other: "PuncturedSphere") -> float:
        if self.arity != other.arity:
            return float("inf")
        vals = [complex(self.a) - complex(other.a)]
        vals += [complex(x) - complex(y) for x, y in zip(self.z, other.z)]
        vals += [complex(x) - complex(y) for x, y in zip(self.scales, other.scales)]
        return max(abs(v) for v in vals)

    def to_literal(self) -> dict:
        pair = lambda v: [complex(v).real, complex(v).imag]
        return {
            "z": [pair(v) for v in self.z],
            "a": pair(self.a),
            "a0": [pair(v) for v in self.scales],
        }

    @classmethod
    def from_literal(cls, doc: dict) -> "PuncturedSphere":
        z = tuple(complex(re, im) for re, im in doc["z"])
        a = complex(doc["a"][0], doc["a"][1])
        scales = tuple(complex(re, im) for re, im in doc["a0"])
        return cls(z, a, scales)


def vacuum_sphere(exact: bool = False) -> PuncturedSphere:
    zero = GaussRat.of(0) if exact else 0j
    return PuncturedSphere((), zero, ())


def identity_sphere(exact: bool = False) -> PuncturedSphere:
    zero = GaussRat.of(0) if exact else 0j
    one = GaussRat.of(1) if exact else 1 + 0j
    return PuncturedSphere((), zero, (one,))


def rescaling_sphere(c, exact: bool = False) -> PuncturedSphere:
    zero = GaussRat.of(0) if exact else 0j
    return PuncturedSphere((), zero, (c,))


# ---------------------------------------------------------------------------
# sewability


def _sew_bounds(P: PuncturedSphere, i: int, Q: PuncturedSphere):
    """(inner, outer): the chart-radius window for sewing slot i of P."""
    b = Q.a
    inner = max((_abs2(xi - b) for xi in Q.positions()), default=Fraction(0))
    s2 = _abs2(P.scales[i - 1])
    zi = P.positions()[i - 1]
    outer = None
    for j, p in enumerate(P.positions()):
        if j == i - 1:
            continue
        cand = s2 * _abs2(p - zi)
        outer = cand if outer is None else min(outer, cand)
    return inner, outer  # squared radii


def is_sewable(P: PuncturedSphere, i: int, Q: PuncturedSphere) -> bool:
    """Disk-disjointness test for sewing the i-th slot of P with Q."""
    if not 1 <= i <= P.arity:
        raise SewingError(f"slot {i} out of range for arity {P.arity}")
    inner, outer = _sew_bounds(P, i, Q)
    if outer is None:
        return True
    if P.is_exact() and Q.is_exact():
        return inner < outer
    inner, outer = float(inner), float(outer)
    if inner == 0.0:
        return outer > 0.0
    # scan a log-spaced grid of candidate radii with a safety margin
    lo, hi = np.sqrt(inner), np.sqrt(outer)
    if not hi > lo * (1.0 + SEW_MARGIN):
        return False
    for r in np.geomspace(lo * (1.0 + SEW_MARGIN), hi / (1.0 + SEW_MARGIN), 9):
        if inner < r * r * (1.0 - SEW_MARGIN) and r * r * (1.0 + SEW_MARGIN) < outer:
            return True
    return False


# ---------------------------------------------------------------------------
# the closed sewing formula


def _canonical(positions, a, scales) -> PuncturedSphere:
    """Translate so the last puncture is at 0; the arity-0 case resets a."""
    if not scales:
        return PuncturedSphere((), _zero_like(a), ())
    t = positions[-1]
    z = tuple(p - t for p in positions[:-1])
    return PuncturedSphere(z, a - t, tuple(scales))


def sew(P: PuncturedSphere, i: int, Q: PuncturedSphere,
        check: bool = True) -> PuncturedSphere:
    """Sew Q into the i-th slot of P (slots are 1-based).

    The inserted punctures are the Q punctures translated by the parameter
    of Q's infinity coordinate and rescaled by the slot scaling; scalings
    multiply, and the whole configuration is re-translated into canonical
    form (a no-op unless the last slot is sewn).
    """
    if not 1 <= i <= P.arity:
        raise SewingError(f"slot {i} out of range for arity {P.arity}")
    if check and not is_sewable(P, i, Q):
        raise SewingError(f"slot {i} of the outer element cannot be sewn")
    s = P.scales[i - 1]
    zi = P.positions()[i - 1]
    b = Q.a
    inserted = tuple((xi - b) / s + zi for xi in Q.positions())
    ppos = P.positions()
    positions = ppos[:i - 1] + inserted + ppos[i:]
    scales = (
        P.scales[:i - 1]
        + tuple(s * t for t in Q.scales)
        + P.scales[i:]
    )
    for x in range(len(positions)):
        for y in range(x + 1, len(positions)):
            if positions[x] == positions[y]:
                raise SewingError("sewing produced coincident punctures")
    return _canonical(positions, P.a, scales)


# ---------------------------------------------------------------------------
# the geometric oracle


class _Moebius:
    """w -> (p*w + q) / (r*w + s), generic over the scalar type."""

    __slots__ = ("p", "q", "r", "s")

    def __init__(self, p, q, r, s):
        self.p, self.q, self.r, self.s = p, q, r, s

    def __matmul__(self, o: "_Moebius") -> "_Moebius":
        return _Moebius(
            self.p * o.p + self.q * o.r,
            self.p * o.q + self.q * o.s,
            self.r * o.p + self.s * o.r,
            self.r * o.q + self.s * o.s,
        )

    def inverse(self) -> "_Moebius":
        return _Moebius(self.s, -1 * self.q, -1 * self.r, self.p)

    def apply(self, x):
        den = self.r * x + self.s
        if not den:
            raise SewingError("Moebius map sends a puncture to infinity")
        return (self.p * x + self.q) / den

    def derivative(self, x):
        den = self.r * x + self.s
        return (self.p * self.s - self.q * self.r) / (den * den)


def _affine(c, p):
    """The local chart x -> c*(x - p)."""
    return _Moebius(c, -1 * c * p, _zero_like(c), c / c)


def _chart_infinity(a):
    one = a / a if a else (GaussRat.of(1) if _is_exact(a) else 1 + 0j)
    return _Moebius(_zero_like(a), -1 * one, one, -1 * a)


def geometric_sew_oracle(P: PuncturedSphere, i: int, Q: PuncturedSphere,
                         check: bool = True) -> PuncturedSphere:
    """Sewing by explicit chart gluing and canonical re-normalization.

    Models every local coordinate as a Moebius map, glues through
    w -> -1/w, then solves for the unique affine change of coordinate that
    restores the canonical form, and reads the data back off the charts.
    """
    if not 1 <= i <= P.arity:
        raise SewingError(f"slot {i} out of range for arity {P.arity}")
    if check and not is_sewable(P, i, Q):
        raise SewingError(f"slot {i} of the outer element cannot be sewn")
    exact = P.is_exact()
    one = GaussRat.of(1) if exact else 1 + 0j
    zero = _zero_like(one)

    ppos = P.positions()
    phi_i = _affine(P.scales[i - 1], ppos[i - 1])
    psi_0 = _chart_infinity(Q.a)
    jmap = _Moebius(zero, -1 * one, one, zero)  # w -> -1/w
    glue = psi_0.inverse() @ jmap @ phi_i       # P-side x to Q-side y
    glue_inv = glue.inverse()

    punctures = []  # (position, chart) on the glued sphere, P coordinates
    for j, p in enumerate(ppos):
        if j != i - 1:
            punctures.append((p, _affine(P.scales[j], p)))
    qpos = Q.positions()
    inserted = []
    for k, xi in enumerate(qpos):
        chart = _affine(Q.scales[k], xi) @ glue
        inserted.append((glue_inv.apply(xi), chart))
    head = punctures[: i - 1]
    tail = punctures[i - 1:]
    ordered = head + inserted + tail
    inf_chart = _chart_infinity(P.a)

    if not ordered:
        return vacuum_sphere(exact)

    # canonical normalization x = N(x'): translate the last puncture to 0,
    # then solve the leading coefficient of the infinity chart
    t = ordered[-1][0]
    translate = _Moebius(one, t, zero, one)
    shifted = inf_chart @ translate
    if shifted.p != zero and abs(complex(shifted.p)) > 1e-12 * abs(complex(shifted.r)):
        raise SewingError("degenerate normalization: infinity chart moved")
    alpha = -1 * shifted.q / shifted.r
    norm = translate @ _Moebius(alpha, zero, zero, one)
    norm_inv = norm.inverse()

    final_inf = inf_chart @ norm
    a_new = -1 * final_inf.s / final_inf.r
    positions, scales = [], []
    for p, chart in ordered:
        moved = chart @ norm
        pos = norm_inv.apply(p)
        positions.append(pos)
        scales.append(moved.derivative(pos))
    return PuncturedSphere(tuple(positions[:-1]), a_new, tuple(scales))


# ---------------------------------------------------------------------------
# permutations


def permute(P: PuncturedSphere, sigma) -> PuncturedSphere:
    """Relabel punctures: slot j of the result is slot sigma^{-1}(j) of P.

    ``sigma`` is a tuple with sigma[j-1] = image of slot j, 1-based.  Moving
    the last slot re-normalizes through the canonical translation.
    """
    n = P.arity
    if sorted(sigma) != list(range(1, n + 1)):
        raise SewingError("not a permutation of the puncture slots")
    inv = [0] * n
    for j, img in enumerate(sigma):
        inv[img - 1] = j
    pos = P.positions()
    order = [pos[inv[j]] for j in range(n)]
    scales = tuple(P.scales[inv[j]] for j in range(n))
    return _canonical(tuple(order), P.a, scales)


def insertion_permutation(sigma, i: int, inner_arity: int) -> tuple:
    """The permutation induced on the sewn element by relabeling the outer.

    With P of arity m and Q of arity n, permute(P, sigma) sewn at slot i
    equals sew(P, sigma^{-1}(i), Q) relabeled by the returned permutation of
    m+n-1 slots.
    """
    m = len(sigma)
    n = inner_arity
    inv = [0] * m
    for j, img in enumerate(sigma):
        inv[img - 1] = j + 1  # 1-based inverse
    k = inv[i - 1]

    def outer_slot_after(t):
        # slot of P's t-th puncture inside sew(P, k, Q)
        return t if t < k else t + n - 1

    rho_inv = []
    for j in range(1, i):
        rho_inv.append(outer_slot_after(inv[j - 1]))
    for j in range(n):
        rho_inv.append(k + j)
    for j in range(i + 1, m + 1):
        rho_inv.append(outer_slot_after(inv[j - 1]))
    rho = [0] * (m + n - 1)
    for j, img in enumerate(rho_inv):
        rho[img - 1] = j + 1
    return tuple(rho)


# ---------------------------------------------------------------------------
# randomized verification suite


def random_sphere(rng, arity: int, exact: bool = False,
                  spread: float = 4.0) -> PuncturedSphere:
    """Random element with well-separated punctures."""
    while True:
        if exact:
            def num():
                return GaussRat.of(
                    Fraction(int(rng.integers(-8, 9)), int(rng.integers(1, 5))),
                    Fraction(int(rng.integers(-8, 9)), int(rng.integers(1, 5))),
                )
            z = tuple(num() for _ in range(max(arity - 1, 0)))
            a = num()
            scales = tuple(num() for _ in range(arity))
            if any(not s for s in scales) or any(not p for p in z):
                continue
        else:
            def num():
                return complex(rng.normal(0, spread), rng.normal(0, spread))
            z = tuple(num() for _ in range(max(arity - 1, 0)))
            a = complex(rng.normal(0, 1), rng.normal(0, 1))
            scales = tuple(num() + 0.3 for _ in range(arity))
        if arity == 0:
            return vacuum_sphere(exact)
        try:
            return PuncturedSphere(z, a, scales)
        except SewingError:
            continue


def _sample_sewable(rng, exact, max_tries=500):
    for _ in range(max_tries):
        P = random_sphere(rng, int(rng.integers(1, 4)), exact)
        Q = random_sphere(rng, int(rng.integers(0, 4)), exact)
        i = int(rng.integers(1, P.arity + 1))
        if is_sewable(P, i, Q):
            return P, i, Q
    raise SewingError("failed to sample a sewable pair")


def verify_operad_axioms(trials: int = 100, seed: int = 42,
                         tol: float = 1e-10, exact: bool = False) -> Report:
    """Randomized identity, oracle-agreement, associativity, equivariance.

    Per-trial seeds are split off the master seed, so records depend only on
    (trials, seed, exact).
    """
    t0 = time.perf_counter()
    report = Report(suite="operad-check", tol=tol)
    seeds = np.random.SeedSequence(seed).spawn(trials)
    ident = identity_sphere(exact)
    for tr in range(trials):
        rng = np.random.default_rng(seeds[tr])
        P, i, Q = _sample_sewable(rng, exact)

        left = sew(ident, 1, P)
        right = sew(P, i, ident)
        if exact:
            report.add("identity_left", (tr,), 0.0 if left == P else 1.0)
            report.add("identity_right", (tr,), 0.0 if right == P else 1.0)
        else:
            report.add("identity_left", (tr,), left.distance(P))
            report.add("identity_right", (tr,), right.distance(P))

        got = sew(P, i, Q)
        oracle = geometric_sew_oracle(P, i, Q)
        report.add("formula_vs_oracle", (tr, i), got.distance(oracle))

        if Q.arity == 0:
            kept = [j for j in range(1, P.arity + 1) if j != i]
            want = _canonical(
                tuple(P.positions()[j - 1] for j in kept),
                P.a,
                tuple(P.scales[j - 1] for j in kept),
            )
            report.add("vacuum_removal", (tr, i), got.distance(want))

        # nested associativity on its own sewable triple, resampled until
        # both composition orders exist
        for _ in range(500):
            Pa, ia, Qa = _sample_sewable(rng, exact)
            if Qa.arity == 0:
                continue
            Ra = random_sphere(rng, int(rng.integers(0, 3)), exact)
            j = ia + int(rng.integers(0, Qa.arity))
            k = j - ia + 1
            try:
                lhs = sew(sew(Pa, ia, Qa), j, Ra)
                rhs = sew(Pa, ia, sew(Qa, k, Ra))
            except SewingError:
                continue
            report.add("associativity", (tr, ia, j), lhs.distance(rhs))
            break
        else:
            report.add("associativity", (tr,), float("inf"))

        # equivariance of sewing under relabeling of the outer element
        for _ in range(500):
            Pe, ie, Qe = _sample_sewable(rng, exact)
            sigma = tuple(int(v) + 1 for v in rng.permutation(Pe.arity))
            try:
                lhs = sew(permute(Pe, sigma), ie, Qe)
                rhs = permute(
                    sew(Pe, sigma.index(ie) + 1, Qe),
                    insertion_permutation(sigma, ie, Qe.arity),
                )
            except SewingError:
                continue
            report.add("equivariance", (tr,), lhs.distance(rhs))
            break
        else:
            report.add("equivariance", (tr,), float("inf"))

        # permutation group action
        sig = tuple(int(v) + 1 for v in rng.permutation(P.arity))
        tau = tuple(int(v) + 1 for v in rng.permutation(P.arity))
        comp = tuple(sig[tau[j] - 1] for j in range(P.arity))
        one_step = permute(P, comp)
        two_step = permute(permute(P, tau), sig)
        report.add("permutation_action", (tr,), one_step.distance(two_step))

        # the one-slot rescalings compose multiplicatively
        c1, c2 = P.scales[0], (Q.scales[0] if Q.arity else P.scales[-1])
        g = sew(rescaling_sphere(c1, exact), 1, rescaling_sphere(c2, exact))
        want = rescaling_sphere(c1 * c2, exact)
        if exact:
            report.add("rescaling_group", (tr,), 0.0 if g == want else 1.0)
        else:
            report.add("rescaling_group", (tr,), g.distance(want))
    report.wall_time = time.perf_counter() - t0
    return report
