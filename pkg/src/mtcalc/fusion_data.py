"""Skeletal modular-tensor-category data: fusion ring, F/R-symbols, twists.

Conventions used throughout the package (all blocks are complex matrices over
deterministically enumerated bases; internal labels ascending, multiplicity
indices ascending):

* ``F[a, b, c, d]`` is the block relating the two ways of fusing the word
  ``(a, b, c)`` into ``d``.  Rows are indexed by right-tree triples
  ``(x, i, j)`` with ``j`` a vertex ``b (x) c -> x`` and ``i`` a vertex
  ``a (x) x -> d``; columns by left-tree triples ``(y, k, l)`` with ``l`` a
  vertex ``a (x) b -> y`` and ``k`` a vertex ``y (x) c -> d``.  The right-tree
  composite equals ``sum_(y,k,l) F[(x,i,j),(y,k,l)] *`` left-tree composite.
* ``R[a, b, c]`` is the block of the positive braiding ``a (x) b -> b (x) a``
  on fusion channel ``c``; rows index ``(b, a -> c)`` vertices, columns
  ``(a, b -> c)`` vertices.  The negative braiding is the inverse block of the
  arguments swapped.
* F-symbols with a unit label in any of the first three slots are fixed to 1
  (unit gauge), so the unit vertices carry identity coefficients.
"""

from __future__ import annotations

import cmath
import json
import math
import time
from dataclasses import dataclass, field

import numpy as np

from .report import Report

__all__ = [
    "Label",
    "FusionRing",
    "CategoryData",
    "CategoryDataError",
    "BUILTIN_NAMES",
    "builtin_category",
    "load_category",
    "loads_category",
    "emit_category",
    "quantum_dimension",
    "verify_coherence",
    "pentagon_residuals",
    "hexagon_residuals",
]

DEFAULT_TOL = 1e-9


class CategoryDataError(ValueError):
    """Structurally invalid category data (schema, unit, dual or ring errors)."""


@dataclass(frozen=True)
class Label:
    """A simple object: contiguous integer id plus display name."""

    id: int
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class FusionRing:
    """Fusion multiplicities of a finite set of labels with unit and duals."""

    labels: tuple[Label, ...]
    unit: int
    dual: tuple[int, ...]
    N: dict = field(hash=False)  # (a, b, c) -> positive int; absent means 0

    def __post_init__(self):
        self._validate()

    @property
    def size(self) -> int:
        return len(self.labels)

    def n(self, a: int, b: int, c: int) -> int:
        return self.N.get((a, b, c), 0)

    def outcomes(self, a: int, b: int):
        """Channels c with N_{ab}^c > 0, ascending."""
        return [c for c in range(self.size) if self.n(a, b, c) > 0]

    def fusion_matrix(self, a: int) -> np.ndarray:
        """(N_a)_{bc} = N_{ab}^c as an integer matrix."""
        n = self.size
        return np.array(
            [[self.n(a, b, c) for c in range(n)] for b in range(n)], dtype=int
        )

    def _validate(self):
        n = self.size
        e = self.unit
        if sorted(l.id for l in self.labels) != list(range(n)):
            raise CategoryDataError("label ids must form the range 0..len-1")
        if not 0 <= e < n:
            raise CategoryDataError("unit index out of range")
        if len(self.dual) != n or any(not 0 <= d < n for d in self.dual):
            raise CategoryDataError("dual map out of range")
        for a in range(n):
            if self.dual[self.dual[a]] != a:
                raise CategoryDataError("dual map is not an involution")
        if self.dual[e] != e:
            raise CategoryDataError("dual of the unit must be the unit")
        for (a, b, c), v in self.N.items():
            if v < 0 or not all(0 <= x < n for x in (a, b, c)):
                raise CategoryDataError(f"bad fusion entry {(a, b, c)} -> {v}")
        for a in range(n):
            for b in range(n):
                if self.n(e, a, b) != (1 if a == b else 0):
                    raise CategoryDataError(f"unit constraint N[e,{a}]^{b} violated")
                if self.n(a, e, b) != (1 if a == b else 0):
                    raise CategoryDataError(f"unit constraint N[{a},e]^{b} violated")
                want = 1 if b == self.dual[a] else 0
                if self.n(a, b, e) != want:
                    raise CategoryDataError(
                        f"duality channel N[{a},{b}]^e must be {want}"
                    )
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    for d in range(n):
                        lhs = sum(self.n(a, b, x) * self.n(x, c, d) for x in range(n))
                        rhs = sum(self.n(b, c, y) * self.n(a, y, d) for y in range(n))
                        if lhs != rhs:
                            raise CategoryDataError(
                                f"fusion ring not associative at {(a, b, c, d)}"
                            )


class CategoryData:
    """Skeletal category: ring plus F/R-symbols, twists and quantum dims.

    Immutable after construction; all methods are pure, so instances are safe
    to share across threads.
    """

    def __init__(self, ring: FusionRing, F: dict, R: dict, twist: list):
        self.ring = ring
        # F: (a,b,c,d,x,y,i,j,k,l) -> complex, R: (a,b,c,i,j) -> complex
        self.F = dict(F)
        self.R = dict(R)
        self.twist = tuple(complex(t) for t in twist)
        self._validate_tables()
        self.h = tuple((cmath.phase(t) / (2 * math.pi)) % 1.0 for t in self.twist)
        self.qdim = tuple(
            quantum_dimension(self, a) for a in range(ring.size)
        )
        self._fcache: dict = {}
        self._ficache: dict = {}
        self._rcache: dict = {}

    # -- label helpers -------------------------------------------------

    @property
    def size(self) -> int:
        return self.ring.size

    @property
    def unit(self) -> int:
        return self.ring.unit

    def dual(self, a: int) -> int:
        return self.ring.dual[a]

    def n(self, a: int, b: int, c: int) -> int:
        return self.ring.n(a, b, c)

    def label_name(self, a: int) -> str:
        return self.ring.labels[a].name

    # -- block assembly ------------------------------------------------

    def f_right_basis(self, a, b, c, d):
        """Right-tree triples (x, i, j) of the word (a,b,c) -> d."""
        out = []
        for x in range(self.size):
            for i in range(self.n(a, x, d)):
                for j in range(self.n(b, c, x)):
                    out.append((x, i, j))
        return out

    def f_left_basis(self, a, b, c, d):
        """Left-tree triples (y, k, l) of the word (a,b,c) -> d."""
        out = []
        for y in range(self.size):
            for k in range(self.n(y, c, d)):
                for l in range(self.n(a, b, y)):
                    out.append((y, k, l))
        return out

    def f_block(self, a, b, c, d) -> np.ndarray:
        """F-block as a (right x left) matrix; raises on missing entries."""
        key = (a, b, c, d)
        if key in self._fcache:
            return self._fcache[key]
        right = self.f_right_basis(a, b, c, d)
        left = self.f_left_basis(a, b, c, d)
        mat = np.zeros((len(right), len(left)), dtype=complex)
        for ri, (x, i, j) in enumerate(right):
            for li, (y, k, l) in enumerate(left):
                fkey = (a, b, c, d, x, y, i, j, k, l)
                if fkey not in self.F:
                    raise CategoryDataError(f"missing F entry {fkey}")
                mat[ri, li] = self.F[fkey]
        mat.setflags(write=False)
        self._fcache[key] = mat
        return mat

    def f_block_inv(self, a, b, c, d) -> np.ndarray:
        """Inverse F-block, (left x right); exact inverse, computed once."""
        key = (a, b, c, d)
        if key not in self._ficache:
            mat = self.f_block(a, b, c, d)
            if mat.size == 0:
                inv = mat.T.copy()
            else:
                inv = np.linalg.inv(mat)
            inv.setflags(write=False)
            self._ficache[key] = inv
        return self._ficache[key]

    def r_block(self, a, b, c) -> np.ndarray:
        """Positive-braiding block on channel c, shape N_{ba}^c x N_{ab}^c."""
        key = (a, b, c)
        if key in self._rcache:
            return self._rcache[key]
        rows, cols = self.n(b, a, c), self.n(a, b, c)
        mat = np.zeros((rows, cols), dtype=complex)
        for i in range(rows):
            for j in range(cols):
                rkey = (a, b, c, i, j)
                if rkey not in self.R:
                    raise CategoryDataError(f"missing R entry {rkey}")
                mat[i, j] = self.R[rkey]
        mat.setflags(write=False)
        self._rcache[key] = mat
        return mat

    def r_block_inv(self, a, b, c) -> np.ndarray:
        """Negative-braiding block of a (x) b -> b (x) a on channel c."""
        mat = self.r_block(b, a, c)
        if mat.size == 0:
            return mat.T.copy()
        return np.linalg.inv(mat)

    # -- validation ----------------------------------------------------

    def _validate_tables(self):
        ring = self.ring
        n = ring.size
        if len(self.twist) != n:
            raise CategoryDataError("twist table size mismatch")
        for a, t in enumerate(self.twist):
            if abs(abs(t) - 1.0) > 1e-12:
                raise CategoryDataError(f"twist of label {a} is not unimodular")
        for key in self.F:
            if len(key) != 10:
                raise CategoryDataError(f"malformed F key {key}")
            a, b, c, d, x, y, i, j, k, l = key
            if (
                i >= ring.n(a, x, d)
                or j >= ring.n(b, c, x)
                or k >= ring.n(y, c, d)
                or l >= ring.n(a, b, y)
            ):
                raise CategoryDataError(f"F entry {key} outside multiplicity range")
        for key in self.R:
            a, b, c, i, j = key
            if i >= ring.n(b, a, c) or j >= ring.n(a, b, c):
                raise CategoryDataError(f"R entry {key} outside multiplicity range")
        # completeness of coverage for every admissible block
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    for i in range(ring.n(b, a, c)):
                        for j in range(ring.n(a, b, c)):
                            if (a, b, c, i, j) not in self.R:
                                raise CategoryDataError(
                                    f"missing R entry for channel {(a, b, c)}"
                                )
                    for d in range(n):
                        for (x, i, j) in self.f_right_basis(a, b, c, d):
                            for (y, k, l) in self.f_left_basis(a, b, c, d):
                                if (a, b, c, d, x, y, i, j, k, l) not in self.F:
                                    raise CategoryDataError(
                                        f"missing F entry for block {(a, b, c, d)}"
                                    )


# ---------------------------------------------------------------------------
# quantum dimensions


def quantum_dimension(data: CategoryData, a: int) -> float:
    """Perron-Frobenius eigenvalue of the fusion matrix N_a."""
    mat = data.ring.fusion_matrix(a)
    eig = np.linalg.eigvals(mat.astype(float))
    return float(np.max(eig.real))


# ---------------------------------------------------------------------------
# coherence: pentagon / hexagon / twist compatibility


def pentagon_residuals(data: CategoryData):
    """Yield ((a,b,c,d,total), residual) over all pentagon instances.

    Both routes from the fully right-nested to the fully left-nested fusion
    of a four-letter word are expanded through F-blocks and compared.
    """
    n = data.size
    rng5 = range(n)
    for a in rng5:
        for b in rng5:
            for c in rng5:
                for d in rng5:
                    for tot in rng5:
                        res = _pentagon_instance(data, a, b, c, d, tot)
                        if res is not None:
                            yield (a, b, c, d, tot), res


def _pentagon_instance(data, a, b, c, d, tot):
    n = data.size
    rn = []  # right-nested source basis: (x, k, y, j, i)
    for x in range(n):
        for k in range(data.n(c, d, x)):
            for y in range(n):
                for j in range(data.n(b, x, y)):
                    for i in range(data.n(a, y, tot)):
                        rn.append((x, k, y, j, i))
    ln = []  # left-nested target basis: (u, q, v, s, r)
    for u in range(n):
        for q in range(data.n(a, b, u)):
            for v in range(n):
                for s in range(data.n(u, c, v)):
                    for r in range(data.n(v, d, tot)):
                        ln.append((u, q, v, s, r))
    if not rn or not ln:
        return None
    p1 = np.zeros((len(rn), len(ln)), dtype=complex)
    p2 = np.zeros_like(p1)
    for si, (x, k, y, j, i) in enumerate(rn):
        for ti, (u, q, v, s, r) in enumerate(ln):
            acc1 = 0j
            for p in range(data.n(u, x, tot)):
                f1 = data.F.get((a, b, x, tot, y, u, i, j, p, q), 0)
                f2 = data.F.get((u, c, d, tot, x, v, p, k, r, s), 0)
                acc1 += f1 * f2
            p1[si, ti] = acc1
            acc2 = 0j
            for w in range(n):
                for t in range(data.n(w, d, y)):
                    for z in range(data.n(b, c, w)):
                        f3 = data.F.get((b, c, d, y, x, w, j, k, t, z), 0)
                        if f3 == 0:
                            continue
                        for g in range(data.n(a, w, v)):
                            f4 = data.F.get((a, w, d, tot, y, v, i, t, r, g), 0)
                            f5 = data.F.get((a, b, c, v, w, u, g, z, s, q), 0)
                            acc2 += f3 * f4 * f5
            p2[si, ti] = acc2
    return float(np.max(np.abs(p1 - p2))) if p1.size else None


def hexagon_residuals(data: CategoryData):
    """Yield ((sense, a, b, c, total), residual) over all hexagon instances.

    Braiding a past the fused pair (b, c) must equal braiding past b and c
    one at a time, for both braiding senses.
    """
    n = data.size
    for a in range(n):
        for b in range(n):
            for c in range(n):
                for tot in range(n):
                    for sense in (+1, -1):
                        res = _hexagon_instance(data, a, b, c, tot, sense)
                        if res is not None:
                            yield (("+" if sense > 0 else "-"), a, b, c, tot), res


def _tree_basis3(data, w1, w2, w3, tot):
    out = []
    for y in range(data.size):
        for l in range(data.n(w1, w2, y)):
            for m in range(data.n(y, w3, tot)):
                out.append((y, l, m))
    return out


def _hexagon_instance(data, a, b, c, tot, sense):
    src = _tree_basis3(data, a, b, c, tot)
    mid = _tree_basis3(data, b, a, c, tot)
    dst = _tree_basis3(data, b, c, a, tot)
    if not src or not dst:
        return None

    def rmat(p, q, ch):
        return data.r_block(p, q, ch) if sense > 0 else data.r_block_inv(p, q, ch)

    # one-at-a-time route: braid (1,2) then (2,3)
    b12 = np.zeros((len(mid), len(src)), dtype=complex)
    for si, (y, l, m) in enumerate(src):
        rm = rmat(a, b, y)
        for mi, (y2, l2, m2) in enumerate(mid):
            if y2 == y and m2 == m:
                b12[mi, si] = rm[l2, l]
    b23 = np.zeros((len(dst), len(mid)), dtype=complex)
    f_mid = data.f_block(b, a, c, tot)
    midr = data.f_right_basis(b, a, c, tot)
    f_dst_inv = data.f_block_inv(b, c, a, tot)
    dstr = data.f_right_basis(b, c, a, tot)
    for mi in range(len(mid)):
        for ri, (z, i2, j2) in enumerate(midr):
            fm = f_mid[ri, mi]
            if fm == 0:
                continue
            rz = rmat(a, c, z)  # braid (a, c) inside the fused cluster z
            for ri2, (z2, i3, j3) in enumerate(dstr):
                if z2 != z or i3 != i2:
                    continue
                b23[:, mi] += f_dst_inv[:, ri2] * rz[j3, j2] * fm
    route = b23 @ b12

    # cluster route: braid a past the fused pair (b, c) in one move
    cluster = np.zeros((len(dst), len(src)), dtype=complex)
    fabc = data.f_block(a, b, c, tot)
    fr = data.f_right_basis(a, b, c, tot)
    for di, (x, beta, app) in enumerate(dst):
        rx = rmat(a, x, tot)
        for ri, (x2, alpha, beta2) in enumerate(fr):
            if x2 != x or beta2 != beta:
                continue
            cluster[di, :] += rx[app, alpha] * fabc[ri, :]
    return float(np.max(np.abs(cluster - route)))


def verify_coherence(data: CategoryData, tol: float = DEFAULT_TOL) -> Report:
    """Pentagon, hexagon, twist/dual and quantum-dimension consistency.

    Failures are reported with their residuals, never raised.
    """
    t0 = time.perf_counter()
    report = Report(suite="verify-category", tol=tol)
    for inst, res in pentagon_residuals(data):
        report.add("pentagon", inst, res)
    for inst, res in hexagon_residuals(data):
        report.add("hexagon", inst, res)
    for a in range(data.size):
        for b in range(data.size):
            for c in range(data.size):
                for d in range(data.size):
                    fmat = data.f_block(a, b, c, d)
                    if fmat.size == 0 or fmat.shape[0] != fmat.shape[1]:
                        continue
                    try:
                        inv = np.linalg.inv(fmat)
                        res = float(
                            np.max(np.abs(fmat @ inv - np.eye(len(fmat))))
                        )
                    except np.linalg.LinAlgError:
                        res = 1.0
                    report.add("f_invertible", (a, b, c, d), res)
                    gram = fmat @ fmat.conj().T - np.eye(fmat.shape[0])
                    report.add(
                        "f_unitary", (a, b, c, d), float(np.max(np.abs(gram)))
                    )
                unitary = data.r_block(a, b, c)
                if unitary.size:
                    gram = unitary @ unitary.conj().T - np.eye(unitary.shape[0])
                    report.add(
                        "r_unitary", (a, b, c), float(np.max(np.abs(gram)))
                    )
    for a in range(data.size):
        report.add(
            "twist_dual",
            (a, data.dual(a)),
            abs(data.twist[a] - data.twist[data.dual(a)]),
        )
    report.add("twist_unit", (data.unit,), abs(data.twist[data.unit] - 1.0))
    for a in range(data.size):
        pf = quantum_dimension(data, a)
        report.add("qdim_pf", (a,), abs(data.qdim[a] - pf))
        report.add("qdim_dual", (a,), abs(data.qdim[a] - data.qdim[data.dual(a)]))
    # ring homomorphism property of the Perron-Frobenius dimensions
    for a in range(data.size):
        for b in range(data.size):
            lhs = data.qdim[a] * data.qdim[b]
            rhs = sum(
                data.n(a, b, c) * data.qdim[c] for c in range(data.size)
            )
            report.add("qdim_ring_hom", (a, b), abs(lhs - rhs))
    report.wall_time = time.perf_counter() - t0
    return report


# ---------------------------------------------------------------------------
# built-in categories

_PHI = (1.0 + math.sqrt(5.0)) / 2.0

BUILTIN_NAMES = ("trivial", "z2_semion", "fibonacci", "ising")


def _ring(names, unit, dual, channels):
    labels = tuple(Label(i, s) for i, s in enumerate(names))
    N = {tuple(k): 1 for k in channels}
    return FusionRing(labels, unit, tuple(dual), N)


def _complete_unit_tables(ring, F, R):
    """Fill in all unit-gauge entries (value 1) the tables leave implicit."""
    n = ring.size
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if ring.n(a, b, c) and (a, b, c, 0, 0) not in R:
                    raise CategoryDataError(f"builtin table missing R{(a, b, c)}")
                for d in range(n):
                    # multiplicity-free builtins: one entry per (x, y) pair
                    for x in range(n):
                        if not (ring.n(b, c, x) and ring.n(a, x, d)):
                            continue
                        for y in range(n):
                            if not (ring.n(a, b, y) and ring.n(y, c, d)):
                                continue
                            key = (a, b, c, d, x, y, 0, 0, 0, 0)
                            if key in F:
                                continue
                            if ring.unit in (a, b, c):
                                F[key] = 1.0 + 0j
                            else:
                                raise CategoryDataError(
                                    f"builtin table missing F block {(a, b, c, d)}"
                                )
    return F, R


def _make_builtin(names, unit, dual, channels, fvals, rvals, twist):
    ring = _ring(names, unit, dual, channels)
    F = {(a, b, c, d, x, y, 0, 0, 0, 0): complex(v) for (a, b, c, d, x, y), v in fvals.items()}
    R = {(a, b, c, 0, 0): complex(v) for (a, b, c), v in rvals.items()}
    for a in range(ring.size):
        for b in range(ring.size):
            for c in range(ring.size):
                if ring.n(a, b, c) and (a, b, c, 0, 0) not in R:
                    if unit in (a, b):
                        R[(a, b, c, 0, 0)] = 1.0 + 0j
    F, R = _complete_unit_tables(ring, F, R)
    return CategoryData(ring, F, R, twist)


def _builtin_trivial():
    return _make_builtin(["1"], 0, [0], [(0, 0, 0)], {}, {}, [1.0])


def _builtin_z2_semion():
    # Frozen from the pentagon/hexagon solver over the Z2 ring, selecting the
    # solution with twist i on the semion (tests/solver regeneration).
    channels = [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)]
    fvals = {(1, 1, 1, 1, 0, 0): -1.0}
    rvals = {(1, 1, 0): -1j}
    return _make_builtin(["1", "s"], 0, [0, 1], channels, fvals, rvals, [1.0, 1j])


def _builtin_fibonacci():
    # Frozen from the solver over the 2-label ring; twist exp(4 pi i / 5).
    channels = [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0), (1, 1, 1)]
    s = 1.0 / math.sqrt(_PHI)
    fvals = {
        (1, 1, 1, 0, 1, 1): 1.0,
        (1, 1, 1, 1, 0, 0): 1.0 / _PHI,
        (1, 1, 1, 1, 0, 1): s,
        (1, 1, 1, 1, 1, 0): s,
        (1, 1, 1, 1, 1, 1): -1.0 / _PHI,
    }
    rvals = {
        (1, 1, 0): cmath.exp(-4j * math.pi / 5),
        (1, 1, 1): cmath.exp(3j * math.pi / 5),
    }
    twist = [1.0, cmath.exp(4j * math.pi / 5)]
    return _make_builtin(["1", "t"], 0, [0, 1], channels, fvals, rvals, twist)


def _builtin_ising():
    # Frozen from the solver over the Ising ring; twists (1, exp(i pi/8), -1).
    channels = [
        (0, 0, 0), (0, 1, 1), (0, 2, 2), (1, 0, 1), (2, 0, 2),
        (1, 1, 0), (1, 1, 2), (1, 2, 1), (2, 1, 1), (2, 2, 0),
    ]
    s = 1.0 / math.sqrt(2.0)
    fvals = {
        # (sigma, sigma, sigma) -> sigma, rows x in {1, psi}, cols y in {1, psi}
        (1, 1, 1, 1, 0, 0): s,
        (1, 1, 1, 1, 0, 2): s,
        (1, 1, 1, 1, 2, 0): s,
        (1, 1, 1, 1, 2, 2): -s,
        # one-dimensional blocks without a unit label
        (1, 1, 2, 0, 1, 2): 1.0,
        (1, 1, 2, 2, 1, 0): 1.0,
        (1, 2, 1, 0, 1, 1): 1.0,
        (1, 2, 1, 2, 1, 1): -1.0,
        (2, 1, 1, 0, 2, 1): 1.0,
        (2, 1, 1, 2, 0, 1): 1.0,
        (1, 2, 2, 1, 0, 1): 1.0,
        (2, 2, 1, 1, 1, 0): 1.0,
        (2, 1, 2, 1, 1, 1): -1.0,
        (2, 2, 2, 2, 0, 0): 1.0,
    }
    rvals = {
        (1, 1, 0): cmath.exp(-1j * math.pi / 8),
        (1, 1, 2): cmath.exp(3j * math.pi / 8),
        (1, 2, 1): -1j,
        (2, 1, 1): -1j,
        (2, 2, 0): -1.0,
    }
    twist = [1.0, cmath.exp(1j * math.pi / 8), -1.0]
    return _make_builtin(
        ["1", "sigma", "psi"], 0, [0, 1, 2], channels, fvals, rvals, twist
    )


_BUILTINS = {
    "trivial": _builtin_trivial,
    "z2_semion": _builtin_z2_semion,
    "fibonacci": _builtin_fibonacci,
    "ising": _builtin_ising,
}


def builtin_category(name: str) -> CategoryData:
    """Hard-coded example categories passing coherence at 1e-9."""
    try:
        factory = _BUILTINS[name]
    except KeyError:
        raise CategoryDataError(
            f"unknown builtin {name!r}; expected one of {BUILTIN_NAMES}"
        ) from None
    return factory()


# ---------------------------------------------------------------------------
# JSON category files


def _c2pair(z: complex) -> list:
    return [z.real, z.imag]


def emit_category(data: CategoryData) -> str:
    """Serialize to the category file format (stable key order)."""
    ring = data.ring
    doc = {
        "labels": [l.name for l in ring.labels],
        "unit": ring.unit,
        "dual": list(ring.dual),
        "fusion": sorted([a, b, c, v] for (a, b, c), v in ring.N.items()),
        "F": [
            {
                "labels": [a, b, c, d, x, y],
                "mult": [i, j, k, l],
                "value": _c2pair(complex(v)),
            }
            for (a, b, c, d, x, y, i, j, k, l), v in sorted(data.F.items())
        ],
        "R": [
            {"labels": [a, b, c], "mult": [i, j], "value": _c2pair(complex(v))}
            for (a, b, c, i, j), v in sorted(data.R.items())
        ],
        "twist": [_c2pair(t) for t in data.twist],
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def loads_category(text: str) -> CategoryData:
    """Parse a category file; structural invariants checked, coherence not."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CategoryDataError(f"not valid JSON: {exc}") from exc
    try:
        names = list(doc["labels"])
        unit = int(doc["unit"])
        dual = [int(x) for x in doc["dual"]]
        fusion = [tuple(int(v) for v in row) for row in doc["fusion"]]
        f_entries = doc["F"]
        r_entries = doc["R"]
        twist = [complex(re, im) for re, im in doc["twist"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise CategoryDataError(f"malformed category document: {exc}") from exc
    labels = tuple(Label(i, str(s)) for i, s in enumerate(names))
    N = {}
    for a, b, c, v in fusion:
        if v:
            N[(a, b, c)] = v
    ring = FusionRing(labels, unit, tuple(dual), N)
    F = {}
    for ent in f_entries:
        a, b, c, d, x, y = (int(v) for v in ent["labels"])
        i, j, k, l = (int(v) for v in ent["mult"])
        re, im = ent["value"]
        F[(a, b, c, d, x, y, i, j, k, l)] = complex(re, im)
    R = {}
    for ent in r_entries:
        a, b, c = (int(v) for v in ent["labels"])
        i, j = (int(v) for v in ent["mult"])
        re, im = ent["value"]
        R[(a, b, c, i, j)] = complex(re, im)
    return CategoryData(ring, F, R, twist)


def load_category(path) -> CategoryData:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_category(fh.read())
