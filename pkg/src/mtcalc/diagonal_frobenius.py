"""The diagonal algebra in the double: multiplication pairing, form, axioms.

The underlying object is the sum of all (a, dual a) pairs.  Its
multiplication tensor is computed from a closed two-covertex diagram with a
single crossing.  The negative crossing is the frozen convention: it is the
unique reading for which the whole suite, including the invariance of the
form, passes on every built-in.  The opposite reading still yields a
commutative associative algebra (the mirror one) but fails the form
identities; the negative-control tests pin this down.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass

import numpy as np

from .fusion_data import CategoryData, DEFAULT_TOL, loads_category, emit_category
from .report import Report
from . import graphcalc as gc
from .deligne_double import (
    DoubleObject,
    DoubleMorphism,
    assignments,
    double_braid_layer,
    pair_layer,
    _factor_words,
)

__all__ = [
    "FullFieldAlgebraData",
    "PAIRING_SENSE",
    "pairing_coefficient",
    "pairing_coefficient_general",
    "build_diagonal_algebra",
    "verify_algebra_axioms",
    "verify_frobenius",
    "verify_invariant_form",
    "emit_algebra",
    "loads_algebra",
]

PAIRING_SENSE = "-"


# ---------------------------------------------------------------------------
# the pairing diagram


def pairing_coefficient_general(data: CategoryData, fl: gc.CovertexVector,
                                fr: gc.CovertexVector, sense: str = None) -> complex:
    """Closed-diagram pairing of two splitting covertices.

    The two covertices hang off a dual pair of strands created from the
    unit; matching legs are closed off pairwise, with one crossing between
    the inner pair, and the value is divided by the loop value of the
    common source label.
    """
    if sense is None:
        sense = PAIRING_SENSE
    a1, a2, a3 = fl.a1, fl.a2, fl.a3
    b1, b2, b3 = fr.a1, fr.a2, fr.a3
    if (b1, b2, b3) != (data.dual(a1), data.dual(a2), data.dual(a3)):
        raise ValueError("paired covertices must carry dual labels")
    dim3 = gc.categorical_dim(data, a3)
    a1p, a2p, a3p = data.dual(a1), data.dual(a2), data.dual(a3)
    m = dim3 * gc.cup_morphism(data, (), 0, a3, a3p)
    m = _covertex_vec(data, (a3, a3p), 0, fl) @ m
    m = _covertex_vec(data, (a1, a2, a3p), 2, fr) @ m
    m = gc.braid_morphism(data, (a1, a2, a1p, a2p), 1, sense) @ m
    m = gc.cap_morphism(data, (a1, a1p, a2, a2p), 0, a1, a1p) @ m
    m = gc.cap_morphism(data, (a2, a2p), 0, a2, a2p) @ m
    return m.scalar() / dim3


def _covertex_vec(data, word, k, f: gc.CovertexVector) -> gc.Morphism:
    cod = word[:k] + (f.a1, f.a2) + word[k + 1:]
    out = gc.Morphism.zero(data, word, cod)
    for mu, coef in enumerate(f.vec):
        if coef != 0:
            out = out + complex(coef) * gc.covertex_morphism(
                data, word, k, f.a1, f.a2, f.a3, mu
            )
    return out


def pairing_coefficient(data: CategoryData, a1, a2, a3, i=0, j=0,
                        sense: str = None) -> complex:
    """Pairing of the basis covertices (a1 a2 <- a3; i) and its dual-label twin."""
    if i >= data.n(a1, a2, a3) or j >= data.n(
        data.dual(a1), data.dual(a2), data.dual(a3)
    ):
        raise ValueError("multiplicity index out of range")
    fl = gc.CovertexVector.basis(data, a1, a2, a3, i)
    fr = gc.CovertexVector.basis(
        data, data.dual(a1), data.dual(a2), data.dual(a3), j
    )
    return pairing_coefficient_general(data, fl, fr, sense)


# ---------------------------------------------------------------------------
# algebra data


@dataclass
class FullFieldAlgebraData:
    """Diagonal algebra: object, multiplication tensor, unit, form, coalgebra."""

    data: CategoryData
    object: DoubleObject
    mult: dict      # (a1, a2, a3) -> ndarray over (left mult, right mult)
    phi: dict       # summand label a -> nonzero complex form coefficient

    @property
    def summand_index(self) -> dict:
        return {l: i for i, (l, _) in enumerate(self.object.summands)}

    def mult_entry(self, a1, a2, a3, i=0, j=0) -> complex:
        block = self.mult.get((a1, a2, a3))
        return complex(block[i, j]) if block is not None else 0.0

    def unit_morphism(self) -> "DoubleMorphism":
        """Inclusion of the unit pair as a morphism from the empty word."""
        return unit_layer(self, (), 0)

    def counit_morphism(self) -> "DoubleMorphism":
        return counit_layer(self, (self.object,), 0)

    def coproduct_morphism(self) -> "DoubleMorphism":
        return comult_layer(self, (self.object,), 0)

    def mult_morphism(self) -> "DoubleMorphism":
        return mult_layer(self, (self.object, self.object), 0)


def build_diagonal_algebra(data: CategoryData,
                           pairing=pairing_coefficient_general) -> FullFieldAlgebraData:
    """Assemble the diagonal algebra; requires coherent category data.

    ``pairing`` may be swapped for a transformed-basis variant when testing
    basis independence.
    """
    for a in range(data.size):
        if abs(gc.categorical_dim(data, a)) < 1e-12:
            raise ValueError(f"degenerate loop value for label {a}")
    obj = DoubleObject(tuple((a, data.dual(a)) for a in range(data.size)))
    mult = {}
    for a1 in range(data.size):
        for a2 in range(data.size):
            for a3 in range(data.size):
                n = data.n(a1, a2, a3)
                if not n:
                    continue
                block = np.zeros((n, n), dtype=complex)
                for i in range(n):
                    fl = gc.CovertexVector.basis(data, a1, a2, a3, i)
                    for j in range(n):
                        fr = gc.CovertexVector.basis(
                            data, data.dual(a1), data.dual(a2), data.dual(a3), j
                        )
                        block[i, j] = pairing(data, fl, fr)
                mult[(a1, a2, a3)] = block
    phi = {
        a: data.twist[a].conjugate() / gc.categorical_dim(data, a)
        for a in range(data.size)
    }
    return FullFieldAlgebraData(data, obj, mult, phi)


# ---------------------------------------------------------------------------
# doubled layers generated by the algebra


def mult_layer(alg, word, k) -> DoubleMorphism:
    """Multiplication applied at letters (k, k+1) of a doubled word."""
    data = alg.data
    word = tuple(word)
    cod = word[:k] + (alg.object,) + word[k + 2:]
    out = DoubleMorphism.zero(data, word, cod)
    sidx = alg.summand_index
    for assign in assignments(word):
        left, right = _factor_words(word, assign)
        a1, a1p = word[k].summands[assign[k]]
        a2, a2p = word[k + 1].summands[assign[k + 1]]
        for (b1, b2, a3), block in alg.mult.items():
            if (b1, b2) != (a1, a2):
                continue
            a3p = data.dual(a3)
            dst = assign[:k] + (sidx[a3],) + assign[k + 2:]
            for i in range(block.shape[0]):
                for j in range(block.shape[1]):
                    if block[i, j] == 0:
                        continue
                    lm = gc.vertex_morphism(data, left, k, a1, a2, a3, i)
                    rm = gc.vertex_morphism(data, right, k, a1p, a2p, a3p, j)
                    pair_layer(data, word, assign, dst, lm, rm, out,
                               coeff=block[i, j])
    return out


def ev_layer(alg, word, k) -> DoubleMorphism:
    """Pair the dual-object letter k against the algebra letter k+1."""
    data = alg.data
    word = tuple(word)
    cod = word[:k] + word[k + 2:]
    out = DoubleMorphism.zero(data, word, cod)
    for assign in assignments(word):
        b = word[k].summands[assign[k]][0]
        a = word[k + 1].summands[assign[k + 1]][0]
        if b != data.dual(a):
            continue
        left, right = _factor_words(word, assign)
        dst = assign[:k] + assign[k + 2:]
        lm = gc.cap_morphism(data, left, k, b, a)
        rm = gc.cap_morphism(data, right, k, data.dual(b), data.dual(a))
        pair_layer(data, word, assign, dst, lm, rm, out)
    return out


def comult_layer(alg, word, k) -> DoubleMorphism:
    """Coproduct at letter k: the form-conjugated dual of the product.

    Built as phi, then the categorical dual of the multiplication through
    nested dual pairs, then the inverse form coefficient on both outputs.
    """
    word = tuple(word)
    m = phi_layer(alg, word, k, +1)
    m = coev_layer(alg, word, k + 1) @ m               # outer dual pair
    m = coev_layer(alg, m.cod, k + 2) @ m              # inner dual pair
    m = mult_layer(alg, m.cod, k + 1) @ m              # multiply into the pairs
    m = ev_layer(alg, m.cod, k) @ m                    # close against the input
    cod = m.cod
    m = phi_layer(alg, cod, k, -1) @ m
    m = phi_layer(alg, cod, k + 1, -1) @ m
    return m


def comult_tensor(alg) -> dict:
    """Coproduct coefficients (a1, a2, a3) -> block over dual-vertex pairs."""
    data = alg.data
    delta = comult_layer(alg, _fword(alg, 1), 0)
    sidx = alg.summand_index
    out = {}
    for (a1, a2, a3), block in alg.mult.items():
        n = block.shape[0]
        key = ((sidx[a3],), (sidx[a1], sidx[a2]), a3, data.dual(a3))
        mat = delta.blocks.get(key)
        if mat is not None:
            out[(a1, a2, a3)] = mat.reshape(n, n).copy()
    return out


def _unit_insert_single(data, word, k) -> gc.Morphism:
    """Insert the unit letter at position k of a single-category word."""
    word = tuple(word)
    e = data.unit
    cod = word[:k] + (e,) + word[k:]
    out = gc.Morphism.zero(data, word, cod)
    for d in range(data.size):
        dt = gc.trees(data, word, d)
        ct = gc.trees(data, cod, d)
        mat = out.blocks[d]
        for si, s in enumerate(ct):
            for ti, t in enumerate(dt):
                if k == 0:
                    if not word:
                        ok = d == e and not s
                    elif len(word) == 1:
                        ok = s == ((word[0], 0),) and d == word[0]
                    else:
                        ok = s[0] == (word[0], 0) and s[1:] == t
                else:
                    p = gc._chain(word, t)[k - 1]
                    ok = s == t[:k - 1] + ((p, 0),) + t[k - 1:]
                if ok:
                    mat[si, ti] = 1.0
    return out


def unit_layer(alg, word, k) -> DoubleMorphism:
    """Inclusion of the unit summand as a new letter at position k."""
    data = alg.data
    word = tuple(word)
    cod = word[:k] + (alg.object,) + word[k:]
    out = DoubleMorphism.zero(data, word, cod)
    eidx = alg.summand_index[data.unit]
    for assign in assignments(word):
        left, right = _factor_words(word, assign)
        dst = assign[:k] + (eidx,) + assign[k:]
        lm = _unit_insert_single(data, left, k)
        rm = _unit_insert_single(data, right, k)
        pair_layer(data, word, assign, dst, lm, rm, out)
    return out


def counit_layer(alg, word, k) -> DoubleMorphism:
    """Projection of letter k onto the unit summand (counit normalization 1)."""
    data = alg.data
    word = tuple(word)
    cod = word[:k] + word[k + 1:]
    out = DoubleMorphism.zero(data, word, cod)
    eidx = alg.summand_index[data.unit]
    for assign in assignments(word):
        if assign[k] != eidx:
            continue
        left, right = _factor_words(word, assign)
        dst = assign[:k] + assign[k + 1:]
        dl, dr = _factor_words(cod, dst)
        lm = _transpose_single(data, _unit_insert_single(data, dl, k))
        rm = _transpose_single(data, _unit_insert_single(data, dr, k))
        pair_layer(data, word, assign, dst, lm, rm, out)
    return out


def _transpose_single(data, m: gc.Morphism) -> gc.Morphism:
    blocks = {d: mat.T.copy() for d, mat in m.blocks.items()}
    return gc.Morphism(data, m.cod, m.dom, blocks)


def phi_layer(alg, word, k, power: int = 1) -> DoubleMorphism:
    """Diagonal action of the form coefficient on letter k."""
    data = alg.data
    out = DoubleMorphism.identity(data, tuple(word))
    for key in list(out.blocks):
        sa = key[0]
        a = word[k].summands[sa[k]][0]
        out.blocks[key] = (alg.phi[a] ** power) * out.blocks[key]
    return out


def coev_layer(alg, word, k) -> DoubleMorphism:
    """Insert a dual pair of algebra letters created from the unit at k."""
    data = alg.data
    word = tuple(word)
    cod = word[:k] + (alg.object, alg.object) + word[k:]
    out = DoubleMorphism.zero(data, word, cod)
    sidx = alg.summand_index
    for assign in assignments(word):
        left, right = _factor_words(word, assign)
        for a in range(data.size):
            ap = data.dual(a)
            dim = gc.categorical_dim(data, a)
            dst = assign[:k] + (sidx[a], sidx[ap]) + assign[k:]
            lm = dim * gc.cup_morphism(data, left, k, a, ap)
            rm = dim * gc.cup_morphism(data, right, k, ap, a)
            pair_layer(data, word, assign, dst, lm, rm, out)
    return out


# ---------------------------------------------------------------------------
# verification suites


def _fword(alg, n):
    return (alg.object,) * n


def verify_algebra_axioms(alg: FullFieldAlgebraData, tol: float = DEFAULT_TOL) -> Report:
    """Unit, associativity, commutativity and triviality of the twist."""
    t0 = time.perf_counter()
    data = alg.data
    report = Report(suite="algebra-axioms", tol=tol)
    f1, f2, f3 = _fword(alg, 1), _fword(alg, 2), _fword(alg, 3)
    ident = DoubleMorphism.identity(data, f1)

    lu = mult_layer(alg, f2, 0) @ unit_layer(alg, f1, 0)
    report.add("unit_left", (), lu.distance(ident))
    ru = mult_layer(alg, f2, 0) @ unit_layer(alg, f1, 1)
    report.add("unit_right", (), ru.distance(ident))

    m23 = mult_layer(alg, f2, 0) @ mult_layer(alg, f3, 1)
    m12 = mult_layer(alg, f2, 0) @ mult_layer(alg, f3, 0)
    report.add("associativity", (), m23.distance(m12))

    braided = mult_layer(alg, f2, 0) @ double_braid_layer(data, f2, 0, "+-")
    plain = mult_layer(alg, f2, 0)
    res_braid = braided.distance(plain)
    report.add("commutativity", (), res_braid)

    # the same residual through the braid action on the tensor itself
    res_omega = 0.0
    for (a1, a2, a3), block in alg.mult.items():
        other = alg.mult.get((a2, a1, a3))
        if other is None:
            res_omega = max(res_omega, float(np.max(np.abs(block))))
            continue
        rl = data.r_block(a1, a2, a3)
        rr = data.r_block_inv(data.dual(a1), data.dual(a2), data.dual(a3))
        got = rl.T @ other @ rr
        res_omega = max(res_omega, float(np.max(np.abs(got - block))))
    report.add("commutativity_skew_route", (), res_omega)
    report.add("commutativity_routes_agree", (), abs(res_braid - res_omega))

    for a, ap in alg.object.summands:
        report.add(
            "twist_trivial", (a,), abs(data.twist[a] / data.twist[ap] - 1.0)
        )
    report.wall_time = time.perf_counter() - t0
    return report


def verify_frobenius(alg: FullFieldAlgebraData, tol: float = DEFAULT_TOL) -> Report:
    """Coassociativity, counit laws and both Frobenius compatibilities."""
    t0 = time.perf_counter()
    data = alg.data
    report = Report(suite="frobenius", tol=tol)
    f1, f2, f3 = _fword(alg, 1), _fword(alg, 2), _fword(alg, 3)
    ident = DoubleMorphism.identity(data, f1)

    d1 = comult_layer(alg, f2, 0) @ comult_layer(alg, f1, 0)
    d2 = comult_layer(alg, f2, 1) @ comult_layer(alg, f1, 0)
    report.add("coassociativity", (), d1.distance(d2))

    cl = counit_layer(alg, f2, 0) @ comult_layer(alg, f1, 0)
    report.add("counit_left", (), cl.distance(ident))
    cr = counit_layer(alg, f2, 1) @ comult_layer(alg, f1, 0)
    report.add("counit_right", (), cr.distance(ident))

    ident2 = DoubleMorphism.identity(data, f2)
    mid = comult_layer(alg, f1, 0) @ mult_layer(alg, f2, 0)
    lhs = mult_layer(alg, f3, 1) @ comult_layer(alg, f2, 0)
    rhs = mult_layer(alg, f3, 0) @ comult_layer(alg, f2, 1)
    report.add("frobenius_left", (), lhs.distance(mid))
    report.add("frobenius_right", (), rhs.distance(mid))
    report.add("pairing_nondegenerate", (), _pairing_degeneracy(alg))
    report.wall_time = time.perf_counter() - t0
    return report


def _pairing_degeneracy(alg) -> float:
    """0.0 iff every duality-channel pairing block is invertible."""
    worst = 1.0
    for a, ap in alg.object.summands:
        block = alg.mult.get((a, ap, alg.data.unit))
        if block is None or abs(np.linalg.det(block)) < 1e-12:
            return 1.0
        worst = min(worst, abs(np.linalg.det(block)))
    return 0.0 if worst > 1e-12 else 1.0


def verify_invariant_form(alg: FullFieldAlgebraData, tol: float = DEFAULT_TOL) -> Report:
    """Invariance of the form, symmetry of the induced pairing, and the
    reconstruction roundtrip of the form from the Frobenius data."""
    t0 = time.perf_counter()
    data = alg.data
    report = Report(suite="invariant-form", tol=tol)

    # (1) the bending identity: the multiplication tensor is fixed by
    # bending both factors and conjugating by the form coefficients
    res = 0.0
    for (a1, a2, a3), block in alg.mult.items():
        n = block.shape[0]
        b0 = np.zeros((n, n), complex)
        b1 = np.zeros((n, n), complex)
        for i in range(n):
            v = gc.VertexVector.basis(data, a1, a2, a3, i)
            b0[:, i] = gc.bend_vertex(data, v, "+").array
            vp = gc.VertexVector.basis(
                data, data.dual(a1), data.dual(a2), data.dual(a3), i
            )
            b1[:, i] = gc.bend_vertex(data, vp, "-").array
        target_key = (a1, data.dual(a3), data.dual(a2))
        target = alg.mult.get(target_key)
        scale = alg.phi[a3] / alg.phi[data.dual(a2)]
        got = scale * (b0 @ block @ b1.T)
        if target is None:
            res = max(res, float(np.max(np.abs(got))))
        else:
            res = max(res, float(np.max(np.abs(got - target))))
    report.add("form_invariance", (), res)

    # (2) symmetry of the induced pairing under the doubled braiding
    f2 = _fword(alg, 2)
    pairing = counit_layer(alg, _fword(alg, 1), 0) @ mult_layer(alg, f2, 0)
    braided = pairing @ double_braid_layer(data, f2, 0, "+-")
    report.add("pairing_symmetry", (), pairing.distance(braided))

    # (3) reconstruction of the form from the Frobenius data
    f1 = _fword(alg, 1)
    phi_recon = _phi_from_frobenius(alg)
    phi_direct = phi_layer(alg, f1, 0, power=1)
    report.add("form_roundtrip", (), phi_recon.distance(phi_direct))
    report.wall_time = time.perf_counter() - t0
    return report


def _phi_from_frobenius(alg) -> DoubleMorphism:
    """The canonical iso onto the dual object built from counit, product
    and the doubled dual pair; should reproduce the form coefficients."""
    f1 = _fword(alg, 1)
    step = coev_layer(alg, f1, 1)                       # (F) -> (F, F, F)
    pair3 = mult_layer(alg, _fword(alg, 3), 0)          # multiply first two
    step = pair3 @ step                                 # (F, F)
    step = counit_layer(alg, _fword(alg, 2), 0) @ step  # (F)
    # the output letter carries the dual-summand labels; relabel back
    return _relabel_dual_letter(alg, step)


def _relabel_dual_letter(alg, m: DoubleMorphism) -> DoubleMorphism:
    """Identify the dual-object letter with the algebra letter.

    The summand (a', a) of the dual of the diagonal object is the summand
    a' of the object itself, so only the block bookkeeping changes.
    """
    return DoubleMorphism(alg.data, m.dom, m.cod, dict(m.blocks))


# ---------------------------------------------------------------------------
# serialization (build-ffa / verify-ffa wire format)


def emit_algebra(alg: FullFieldAlgebraData) -> str:
    doc = {
        "category": json.loads(emit_category(alg.data)),
        "summands": [list(p) for p in alg.object.summands],
        "mult": sorted(
            [a1, a2, a3, i, j, block[i, j].real, block[i, j].imag]
            for (a1, a2, a3), block in alg.mult.items()
            for i in range(block.shape[0])
            for j in range(block.shape[1])
        ),
        "phi": [[a, alg.phi[a].real, alg.phi[a].imag] for a in sorted(alg.phi)],
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def loads_algebra(text: str) -> FullFieldAlgebraData:
    doc = json.loads(text)
    data = loads_category(json.dumps(doc["category"]))
    obj = DoubleObject(tuple(tuple(p) for p in doc["summands"]))
    mult = {}
    for a1, a2, a3, i, j, re, im in doc["mult"]:
        a1, a2, a3, i, j = int(a1), int(a2), int(a3), int(i), int(j)
        n = data.n(a1, a2, a3)
        block = mult.setdefault((a1, a2, a3), np.zeros((n, n), complex))
        block[i, j] = complex(re, im)
    phi = {int(a): complex(re, im) for a, re, im in doc["phi"]}
    return FullFieldAlgebraData(data, obj, mult, phi)
