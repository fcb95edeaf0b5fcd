"""Fusion-tree hom spaces, diagram evaluation and the bending calculus.

Words are left-parenthesized tuples of label ids; rebracketing is implicit
and performed through F-block insertions.  A morphism between words is stored
block-wise per total charge: the block entry ``M[s, t]`` is the coefficient of
the source tree ``t`` in the composite of the target tree ``s`` with the
morphism, so blocks compose by plain matrix multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fusion_data import CategoryData, DEFAULT_TOL
from .report import Report

__all__ = [
    "HomSpace",
    "Morphism",
    "Diagram",
    "Gen",
    "VertexVector",
    "CovertexVector",
    "DualityMaps",
    "hom_space",
    "trees",
    "f_move",
    "FusingMove",
    "r_move",
    "duality_maps",
    "duality_fusing_scalar",
    "categorical_dim",
    "evaluate_diagram",
    "identity_morphism",
    "vertex_morphism",
    "covertex_morphism",
    "swap_vertex",
    "bend_vertex",
    "unbend_vertex",
    "bend_covertex",
    "rotate_vertex",
    "rotate_vertex_inv",
    "completeness_defect",
    "verify_rigidity",
    "verify_fusing_symmetries",
]


# ---------------------------------------------------------------------------
# fusion trees


def trees(data: CategoryData, word: tuple, target: int) -> tuple:
    """Deterministic fusion-tree basis of hom(word, target).

    A tree is a tuple of ``(internal_label, mult)`` pairs, one per letter
    after the first; internal labels ascend first, multiplicities second.
    """
    word = tuple(word)
    cache = getattr(data, "_tree_cache", None)
    if cache is None:
        cache = data._tree_cache = {}
    key = (word, target)
    if key in cache:
        return cache[key]
    n = len(word)
    if n == 0:
        out = ((),) if target == data.unit else ()
    elif n == 1:
        out = ((),) if word[0] == target else ()
    else:
        partial = [((), word[0])]
        for t in range(1, n):
            nxt = []
            for prefix, state in partial:
                for x in range(data.size):
                    mult = data.n(state, word[t], x)
                    if t == n - 1 and x != target:
                        continue
                    for mu in range(mult):
                        nxt.append((prefix + ((x, mu),), x))
            partial = nxt
        out = tuple(prefix for prefix, _ in partial)
    cache[key] = out
    return out


def _chain(word, tree):
    """States of the left fusion chain: chain[i] fuses word[0..i]."""
    states = [word[0]] if word else []
    for x, _ in tree:
        states.append(x)
    return states


@dataclass(frozen=True)
class HomSpace:
    """hom(word, target) with its enumerated fusion-tree basis."""

    source: tuple
    target: int
    basis: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)


def hom_space(data: CategoryData, word, target: int) -> HomSpace:
    word = tuple(word)
    return HomSpace(word, target, trees(data, word, target))


# ---------------------------------------------------------------------------
# morphisms between words


class Morphism:
    """Block matrix between the fusion-tree bases of two words."""

    def __init__(self, data: CategoryData, dom: tuple, cod: tuple, blocks: dict):
        self.data = data
        self.dom = tuple(dom)
        self.cod = tuple(cod)
        self.blocks = blocks  # charge -> ndarray (codtrees x domtrees)

    @classmethod
    def zero(cls, data, dom, cod):
        blocks = {
            d: np.zeros((len(trees(data, cod, d)), len(trees(data, dom, d))), complex)
            for d in range(data.size)
        }
        return cls(data, dom, cod, blocks)

    @classmethod
    def identity(cls, data, word):
        blocks = {
            d: np.eye(len(trees(data, word, d)), dtype=complex)
            for d in range(data.size)
        }
        return cls(data, word, word, blocks)

    def __matmul__(self, other: "Morphism") -> "Morphism":
        if other.cod != self.dom:
            raise ValueError(f"cannot compose {other.cod} -> {self.dom}")
        blocks = {d: self.blocks[d] @ other.blocks[d] for d in self.blocks}
        return Morphism(self.data, other.dom, self.cod, blocks)

    def __mul__(self, scalar: complex) -> "Morphism":
        return Morphism(
            self.data, self.dom, self.cod,
            {d: scalar * m for d, m in self.blocks.items()},
        )

    __rmul__ = __mul__

    def __add__(self, other: "Morphism") -> "Morphism":
        if (other.dom, other.cod) != (self.dom, self.cod):
            raise ValueError("shape mismatch")
        return Morphism(
            self.data, self.dom, self.cod,
            {d: self.blocks[d] + other.blocks[d] for d in self.blocks},
        )

    def __sub__(self, other: "Morphism") -> "Morphism":
        return self + (-1.0) * other

    def norm(self) -> float:
        return max(
            (float(np.max(np.abs(m))) for m in self.blocks.values() if m.size),
            default=0.0,
        )

    def distance(self, other: "Morphism") -> float:
        return (self - other).norm()

    def scalar(self) -> complex:
        """Value of a closed diagram (empty boundary words)."""
        if self.dom or self.cod:
            raise ValueError("scalar() requires empty boundary words")
        return complex(self.blocks[self.data.unit][0, 0])


def identity_morphism(data, word) -> Morphism:
    return Morphism.identity(data, tuple(word))


# ---------------------------------------------------------------------------
# elementary word operations (the layer primitives)


def vertex_morphism(data, word, k, a, b, c, mu) -> Morphism:
    """Apply the fusion vertex (a, b) -> c at letters (k, k+1)."""
    word = tuple(word)
    if word[k] != a or word[k + 1] != b:
        raise ValueError("vertex labels do not match the word")
    cod = word[:k] + (c,) + word[k + 2:]
    out = Morphism.zero(data, word, cod)
    for d in range(data.size):
        dt = trees(data, word, d)
        ct = trees(data, cod, d)
        mat = out.blocks[d]
        for si, s in enumerate(ct):
            for ti, t in enumerate(dt):
                if k == 0:
                    # source tree must fuse (a, b) -> c with index mu first
                    if t[0] != (c, mu):
                        continue
                    if len(cod) == 1:
                        ok = d == c and not s
                    else:
                        ok = s == t[1:]
                    if ok:
                        mat[si, ti] = 1.0
                else:
                    sch, tch = _chain(cod, s), _chain(word, t)
                    p, q = tch[k - 1], tch[k + 1]
                    if sch[k - 1] != p or sch[k] != q:
                        continue
                    if s[:k - 1] != t[:k - 1] or s[k:] != t[k + 1:]:
                        continue
                    y, delta = t[k - 1]
                    _, gamma = t[k]
                    nu = s[k - 1][1]
                    mat[si, ti] = data.F.get(
                        (p, a, b, q, c, y, nu, mu, gamma, delta), 0.0
                    )
    return out


def covertex_morphism(data, word, k, a, b, c, mu) -> Morphism:
    """Apply the splitting covertex c -> (a, b) at letter k."""
    word = tuple(word)
    if word[k] != c:
        raise ValueError("covertex label does not match the word")
    cod = word[:k] + (a, b) + word[k + 1:]
    out = Morphism.zero(data, word, cod)
    for d in range(data.size):
        dt = trees(data, word, d)
        ct = trees(data, cod, d)
        mat = out.blocks[d]
        for si, s in enumerate(ct):
            for ti, t in enumerate(dt):
                if k == 0:
                    if s[0] != (c, mu):
                        continue
                    if len(word) == 1:
                        ok = d == c and not t
                    else:
                        ok = s[1:] == t
                    if ok:
                        mat[si, ti] = 1.0
                else:
                    sch, tch = _chain(cod, s), _chain(word, t)
                    p, q = tch[k - 1], tch[k]
                    if sch[k - 1] != p or sch[k + 1] != q:
                        continue
                    if s[:k - 1] != t[:k - 1] or s[k + 1:] != t[k:]:
                        continue
                    y, delta = s[k - 1]
                    _, gamma = s[k]
                    nu = t[k - 1][1]
                    finv = data.f_block_inv(p, a, b, q)
                    li = data.f_left_basis(p, a, b, q).index((y, gamma, delta))
                    ri = data.f_right_basis(p, a, b, q).index((c, nu, mu))
                    mat[si, ti] = finv[li, ri]
    return out


def braid_morphism(data, word, k, sense: str) -> Morphism:
    """Braid letters (k, k+1); sense '+' is the positive crossing."""
    word = tuple(word)
    a, b = word[k], word[k + 1]
    cod = word[:k] + (b, a) + word[k + 2:]
    out = Morphism.zero(data, word, cod)

    def rblk(p, q, ch):
        return data.r_block(p, q, ch) if sense == "+" else data.r_block_inv(p, q, ch)

    for d in range(data.size):
        dt = trees(data, word, d)
        ct = trees(data, cod, d)
        mat = out.blocks[d]
        for si, s in enumerate(ct):
            for ti, t in enumerate(dt):
                if k == 0:
                    if s[0][0] != t[0][0] or s[1:] != t[1:]:
                        continue
                    x = t[0][0]
                    mat[si, ti] = rblk(a, b, x)[s[0][1], t[0][1]]
                else:
                    tch = _chain(word, t)
                    sch = _chain(cod, s)
                    p, q = tch[k - 1], tch[k + 1]
                    if sch[k - 1] != p or sch[k + 1] != q:
                        continue
                    if s[:k - 1] != t[:k - 1] or s[k + 1:] != t[k + 1:]:
                        continue
                    fmat = data.f_block(p, a, b, q)
                    finv_sw = data.f_block_inv(p, b, a, q)
                    right = data.f_right_basis(p, a, b, q)
                    right_sw = data.f_right_basis(p, b, a, q)
                    li = data.f_left_basis(p, a, b, q).index(
                        (t[k - 1][0], t[k][1], t[k - 1][1])
                    )
                    li_sw = data.f_left_basis(p, b, a, q).index(
                        (s[k - 1][0], s[k][1], s[k - 1][1])
                    )
                    acc = 0j
                    for ri, (x, i, j) in enumerate(right):
                        fv = fmat[ri, li]
                        if fv == 0:
                            continue
                        rx = rblk(a, b, x)
                        for ri2, (x2, i2, j2) in enumerate(right_sw):
                            if x2 != x or i2 != i:
                                continue
                            acc += finv_sw[li_sw, ri2] * rx[j2, j] * fv
                    mat[si, ti] = acc
    return out


def cup_morphism(data, word, k, a, b) -> Morphism:
    """Insert the letters (a, b), b = dual(a), created from the unit at k."""
    word = tuple(word)
    if b != data.dual(a):
        raise ValueError("cup letters must be dual")
    cod = word[:k] + (a, b) + word[k:]
    out = Morphism.zero(data, word, cod)
    e = data.unit
    for d in range(data.size):
        dt = trees(data, word, d)
        ct = trees(data, cod, d)
        mat = out.blocks[d]
        for si, s in enumerate(ct):
            for ti, t in enumerate(dt):
                if k == 0:
                    if s[0] != (e, 0):
                        continue
                    if not word:
                        ok = d == e and len(s) == 1
                    elif len(word) == 1:
                        ok = len(s) == 2 and s[1] == (word[0], 0) and d == word[0]
                    else:
                        ok = s[1][0] == word[0] and s[1][1] == 0 and s[2:] == t
                    if ok:
                        mat[si, ti] = 1.0
                else:
                    sch = _chain(cod, s)
                    tch = _chain(word, t)
                    p = tch[k - 1]
                    if sch[k - 1] != p or sch[k + 1] != p:
                        continue
                    if s[:k - 1] != t[:k - 1] or s[k + 1:] != t[k - 1:]:
                        continue
                    y, delta = s[k - 1]
                    _, gamma = s[k]
                    finv = data.f_block_inv(p, a, b, p)
                    li = data.f_left_basis(p, a, b, p).index((y, gamma, delta))
                    ri = data.f_right_basis(p, a, b, p).index((e, 0, 0))
                    mat[si, ti] = finv[li, ri]
    return out


def cap_morphism(data, word, k, a, b) -> Morphism:
    """Annihilate the adjacent letters (a, b), b = dual(a), at (k, k+1)."""
    word = tuple(word)
    if word[k] != a or word[k + 1] != b or b != data.dual(a):
        raise ValueError("cap letters must be dual and match the word")
    cod = word[:k] + word[k + 2:]
    out = Morphism.zero(data, word, cod)
    e = data.unit
    for d in range(data.size):
        dt = trees(data, word, d)
        ct = trees(data, cod, d)
        mat = out.blocks[d]
        for si, s in enumerate(ct):
            for ti, t in enumerate(dt):
                if k == 0:
                    if t[0] != (e, 0):
                        continue
                    if not cod:
                        ok = d == e and len(t) == 1
                    elif len(cod) == 1:
                        ok = len(t) == 2 and t[1] == (cod[0], 0) and d == cod[0]
                    else:
                        ok = t[1][0] == cod[0] and t[1][1] == 0 and t[2:] == s
                    if ok:
                        mat[si, ti] = 1.0
                else:
                    sch = _chain(cod, s)
                    tch = _chain(word, t)
                    p = tch[k - 1]
                    if tch[k + 1] != p or sch[k - 1] != p:
                        continue
                    if s[:k - 1] != t[:k - 1] or s[k - 1:] != t[k + 1:]:
                        continue
                    y, delta = t[k - 1]
                    _, gamma = t[k]
                    mat[si, ti] = data.F.get(
                        (p, a, b, p, e, y, 0, 0, gamma, delta), 0.0
                    )
    return out


def twist_morphism(data, word, k, sense: str) -> Morphism:
    theta = data.twist[word[k]]
    if sense == "-":
        theta = 1.0 / theta
    return theta * Morphism.identity(data, tuple(word))


# ---------------------------------------------------------------------------
# diagrams


@dataclass(frozen=True)
class Gen:
    """One diagram generator; ``labels``/``mult`` depend on the kind."""

    kind: str
    labels: tuple = ()
    mult: int = 0

    def arity(self, data) -> tuple:
        a = self.labels
        table = {
            "id": ((a[0],), (a[0],)) if a else ((), ()),
            "vertex": ((a[0], a[1]), (a[2],)) if len(a) == 3 else None,
            "covertex": ((a[2],), (a[0], a[1])) if len(a) == 3 else None,
            "braid+": ((a[0], a[1]), (a[1], a[0])) if len(a) == 2 else None,
            "braid-": ((a[0], a[1]), (a[1], a[0])) if len(a) == 2 else None,
            "twist+": ((a[0],), (a[0],)),
            "twist-": ((a[0],), (a[0],)),
            "cup_r": ((), (a[0], data.dual(a[0]))),
            "cup_l": ((), (data.dual(a[0]), a[0])),
            "cap_r": ((data.dual(a[0]), a[0]), ()),
            "cap_l": ((a[0], data.dual(a[0])), ()),
        }
        got = table.get(self.kind)
        if got is None:
            raise ValueError(f"unknown generator {self.kind}")
        return got


@dataclass(frozen=True)
class Diagram:
    """Layers of horizontally juxtaposed generators, composed bottom-up."""

    layers: tuple

    @classmethod
    def from_lists(cls, layers):
        return cls(tuple(tuple(layer) for layer in layers))


def _apply_gen(data, word, pos, gen: Gen) -> tuple:
    """Apply one generator at letter position ``pos``; returns (word, Morphism)."""
    kind, a = gen.kind, gen.labels
    if kind == "id":
        return word, Morphism.identity(data, word)
    if kind == "vertex":
        m = vertex_morphism(data, word, pos, a[0], a[1], a[2], gen.mult)
    elif kind == "covertex":
        m = covertex_morphism(data, word, pos, a[0], a[1], a[2], gen.mult)
    elif kind in ("braid+", "braid-"):
        m = braid_morphism(data, word, pos, kind[-1])
    elif kind in ("twist+", "twist-"):
        m = twist_morphism(data, word, pos, kind[-1])
    elif kind == "cup_r":
        m = categorical_dim(data, a[0]) * cup_morphism(
            data, word, pos, a[0], data.dual(a[0])
        )
    elif kind == "cup_l":
        m = categorical_dim(data, a[0]) * cup_morphism(
            data, word, pos, data.dual(a[0]), a[0]
        )
    elif kind == "cap_r":
        m = cap_morphism(data, word, pos, data.dual(a[0]), a[0])
    elif kind == "cap_l":
        m = cap_morphism(data, word, pos, a[0], data.dual(a[0]))
    else:
        raise ValueError(f"unknown generator {kind}")
    return m.cod, m


def evaluate_diagram(data: CategoryData, diagram: Diagram, dom=None) -> Morphism:
    """Contract a diagram layer by layer; raises on boundary-word mismatch."""
    if dom is None:
        dom = ()
        if diagram.layers:
            dom = tuple(
                l for gen in diagram.layers[0] for l in gen.arity(data)[0]
            )
    word = tuple(dom)
    total = Morphism.identity(data, word)
    for layer in diagram.layers:
        expected = tuple(l for gen in layer for l in gen.arity(data)[0])
        if expected != word:
            raise ValueError(f"layer expects boundary {expected}, found {word}")
        pos = 0
        for gen in layer:
            ins, outs = gen.arity(data)
            word, m = _apply_gen(data, word, pos, gen)
            total = m @ total
            pos += len(outs)
    return total


# ---------------------------------------------------------------------------
# duality data


def duality_fusing_scalar(data: CategoryData, a: int) -> complex:
    """The fusing-matrix entry whose reciprocal is the loop value of ``a``."""
    ap = data.dual(a)
    e = data.unit
    return complex(data.F[(a, ap, a, a, e, e, 0, 0, 0, 0)])


def categorical_dim(data: CategoryData, a: int) -> complex:
    """Loop value of ``a``: reciprocal of the duality fusing entry.

    Coincides with the Perron-Frobenius dimension up to a sign that is an
    invariant of the data (negative for pseudo-real self-dual labels).
    """
    return 1.0 / duality_fusing_scalar(data, a)


@dataclass(frozen=True)
class DualityMaps:
    """Cup/cap quadrupel (i_a, e_a, i'_a, e'_a) for one label."""

    coev_right: Morphism  # unit -> (a, a')
    ev_right: Morphism    # (a', a) -> unit
    coev_left: Morphism   # unit -> (a', a)
    ev_left: Morphism     # (a, a') -> unit


def duality_maps(data: CategoryData, a: int) -> DualityMaps:
    ap = data.dual(a)
    if data.n(a, ap, data.unit) != 1:
        raise ValueError(f"label {a} has no unique duality channel")
    dim = categorical_dim(data, a)
    return DualityMaps(
        coev_right=dim * cup_morphism(data, (), 0, a, ap),
        ev_right=cap_morphism(data, (ap, a), 0, ap, a),
        coev_left=dim * cup_morphism(data, (), 0, ap, a),
        ev_left=cap_morphism(data, (a, ap), 0, a, ap),
    )


# ---------------------------------------------------------------------------
# fusing and braiding moves on hom spaces


@dataclass(frozen=True)
class FusingMove:
    """Change of basis from (a(bc)) -> d trees to ((ab)c) -> d trees."""

    labels: tuple
    right_basis: tuple
    left_basis: tuple
    matrix: np.ndarray  # (left x right) coordinate transform

    def inverse(self) -> "FusingMove":
        return FusingMove(
            self.labels, self.left_basis, self.right_basis,
            np.linalg.inv(self.matrix),
        )


def f_move(data: CategoryData, a, b, c, d) -> FusingMove:
    right = tuple(data.f_right_basis(a, b, c, d))
    left = tuple(data.f_left_basis(a, b, c, d))
    return FusingMove((a, b, c, d), right, left, data.f_block(a, b, c, d).T.copy())


def r_move(data: CategoryData, a, b, sense: str) -> Morphism:
    """Braiding (a, b) -> (b, a); '+' positive sense, '-' its inverse."""
    return braid_morphism(data, (a, b), 0, sense)


# ---------------------------------------------------------------------------
# vertex vectors and the bending operators


@dataclass(frozen=True)
class VertexVector:
    """Element of hom(a1 (x) a2, a3) in the fusion-vertex basis."""

    a1: int
    a2: int
    a3: int
    vec: tuple

    @classmethod
    def basis(cls, data, a1, a2, a3, mu=0):
        dim = data.n(a1, a2, a3)
        if mu >= dim:
            raise ValueError("multiplicity index out of range")
        v = np.zeros(dim, complex)
        v[mu] = 1.0
        return cls(a1, a2, a3, tuple(v))

    @property
    def array(self):
        return np.array(self.vec, dtype=complex)

    def morphism(self, data) -> Morphism:
        out = Morphism.zero(data, (self.a1, self.a2), (self.a3,))
        out.blocks[self.a3][0, :] = self.array
        return out


@dataclass(frozen=True)
class CovertexVector:
    """Element of hom(a3, a1 (x) a2) in the dual (splitting) basis."""

    a1: int
    a2: int
    a3: int
    vec: tuple

    @classmethod
    def basis(cls, data, a1, a2, a3, mu=0):
        dim = data.n(a1, a2, a3)
        if mu >= dim:
            raise ValueError("multiplicity index out of range")
        v = np.zeros(dim, complex)
        v[mu] = 1.0
        return cls(a1, a2, a3, tuple(v))

    @property
    def array(self):
        return np.array(self.vec, dtype=complex)

    def morphism(self, data) -> Morphism:
        out = Morphism.zero(data, (self.a3,), (self.a1, self.a2))
        out.blocks[self.a3][:, 0] = self.array
        return out


def _as_vertex_vector(data, m: Morphism) -> VertexVector:
    if len(m.dom) != 2 or len(m.cod) != 1:
        raise ValueError("not a vertex-shaped morphism")
    c = m.cod[0]
    return VertexVector(m.dom[0], m.dom[1], c, tuple(m.blocks[c][0, :]))


def _as_covertex_vector(data, m: Morphism) -> CovertexVector:
    if len(m.dom) != 1 or len(m.cod) != 2:
        raise ValueError("not a covertex-shaped morphism")
    c = m.dom[0]
    return CovertexVector(m.cod[0], m.cod[1], c, tuple(m.blocks[c][:, 0]))


def swap_vertex(data, v: VertexVector, sense: str) -> VertexVector:
    """Compose a vertex with the braiding: '+' positive, '-' negative sense."""
    m = v.morphism(data) @ braid_morphism(data, (v.a2, v.a1), 0, sense)
    return _as_vertex_vector(data, m)


# The bent leg threads through a cap, so it carries a ribbon twist whose
# sense matches the crossing sense.  Both choices below are pinned a
# posteriori by the phase identities relating bent unit vertices to duality
# vertices and by bend/unbend invertibility (see the fusing-symmetry suite).
_TWIST_OF_SENSE = {"+": "+", "-": "-"}
_OPP = {"+": "-", "-": "+"}


def bend_vertex(data, v: VertexVector, sense: str) -> VertexVector:
    """Bend hom(a1 a2, a3) into hom(a1 a3', a2').

    The second input leg is bent around through a crossing of the given
    sense; the closed-off output leg carries the matching ribbon twist.
    """
    a1, a2, a3 = v.a1, v.a2, v.a3
    a2p, a3p = data.dual(a2), data.dual(a3)
    word = (a1, a3p)
    m = cup_morphism(data, word, 2, a2, a2p) * categorical_dim(data, a2)
    m = braid_morphism(data, m.cod, 1, sense) @ m
    vert = sum(
        (
            complex(v.vec[mu])
            * vertex_morphism(data, (a1, a2, a3p, a2p), 0, a1, a2, a3, mu)
            for mu in range(len(v.vec))
        ),
        Morphism.zero(data, (a1, a2, a3p, a2p), (a3, a3p, a2p)),
    )
    m = vert @ m
    m = twist_morphism(data, (a3, a3p, a2p), 0, _TWIST_OF_SENSE[sense]) @ m
    m = cap_morphism(data, (a3, a3p, a2p), 0, a3, a3p) @ m
    return _as_vertex_vector(data, m)


def unbend_vertex(data, v: VertexVector, sense: str) -> VertexVector:
    """Inverse bending: unbend_vertex(bend_vertex(v, s), s) == v."""
    a1, a2, a3 = v.a1, v.a2, v.a3
    a2p, a3p = data.dual(a2), data.dual(a3)
    word = (a1, a3p)
    m = cup_morphism(data, word, 1, a2, a2p) * categorical_dim(data, a2)
    vert = sum(
        (
            complex(v.vec[mu])
            * vertex_morphism(data, (a1, a2, a2p, a3p), 0, a1, a2, a3, mu)
            for mu in range(len(v.vec))
        ),
        Morphism.zero(data, (a1, a2, a2p, a3p), (a3, a2p, a3p)),
    )
    m = vert @ m
    # the bent leg here is the second input strand; its ribbon twist is a
    # scalar of the opposite sense
    theta = data.twist[a2]
    m = (theta if sense == "-" else 1.0 / theta) * m
    m = braid_morphism(data, (a3, a2p, a3p), 1, sense) @ m
    m = cap_morphism(data, (a3, a3p, a2p), 0, a3, a3p) @ m
    return _as_vertex_vector(data, m)


def bend_covertex(data, f: CovertexVector, sense: str) -> CovertexVector:
    """Bend a splitting covertex, dual to ``unbend_vertex``.

    Maps hom(a3, a1 a2) to hom(a2', a1 a3') scaled by dim(a2)/dim(a3); the
    images pair to delta against bend_vertex images of the dual bases.
    """
    a1, a2, a3 = f.a1, f.a2, f.a3
    a2p, a3p = data.dual(a2), data.dual(a3)
    word = (a2p,)
    m = cup_morphism(data, word, 0, a3, a3p) * categorical_dim(data, a3)
    m = twist_morphism(data, (a3, a3p, a2p), 0, _OPP[_TWIST_OF_SENSE[sense]]) @ m
    cov = sum(
        (
            complex(f.vec[mu])
            * covertex_morphism(data, (a3, a3p, a2p), 0, a1, a2, a3, mu)
            for mu in range(len(f.vec))
        ),
        Morphism.zero(data, (a3, a3p, a2p), (a1, a2, a3p, a2p)),
    )
    m = cov @ m
    m = braid_morphism(data, (a1, a2, a3p, a2p), 1, _OPP[sense]) @ m
    m = cap_morphism(data, (a1, a3p, a2, a2p), 2, a2, a2p) @ m
    scale = categorical_dim(data, a2) / categorical_dim(data, a3)
    m = scale * m
    return _as_covertex_vector(data, m)


def rotate_vertex(data, v: VertexVector) -> VertexVector:
    """Cyclic rotation hom(a1 a2, a3) -> hom(a3' a1, a2'); order three."""
    return swap_vertex(data, bend_vertex(data, v, "+"), "+")


def rotate_vertex_inv(data, v: VertexVector) -> VertexVector:
    """Inverse rotation: unbend after the negative-sense swap."""
    return unbend_vertex(data, swap_vertex(data, v, "-"), "+")


# ---------------------------------------------------------------------------
# verification suites


def completeness_defect(data, a, b) -> float:
    """Residual of sum_c,i covertex(c;i) . vertex(c;i) = identity on (a, b)."""
    total = Morphism.zero(data, (a, b), (a, b))
    for c in range(data.size):
        for mu in range(data.n(a, b, c)):
            down = vertex_morphism(data, (a, b), 0, a, b, c, mu)
            up = covertex_morphism(data, (c,), 0, a, b, c, mu)
            total = total + (up @ down)
    return total.distance(Morphism.identity(data, (a, b)))


def _zigzag_diagrams(data, a):
    ap = data.dual(a)
    return {
        "zigzag_right_1": Diagram.from_lists([
            [Gen("cup_r", (a,)), Gen("id", (a,))],
            [Gen("id", (a,)), Gen("cap_r", (a,))],
        ]),
        "zigzag_right_2": Diagram.from_lists([
            [Gen("id", (ap,)), Gen("cup_r", (a,))],
            [Gen("cap_r", (a,)), Gen("id", (ap,))],
        ]),
        "zigzag_left_1": Diagram.from_lists([
            [Gen("id", (a,)), Gen("cup_l", (a,))],
            [Gen("cap_l", (a,)), Gen("id", (a,))],
        ]),
        "zigzag_left_2": Diagram.from_lists([
            [Gen("cup_l", (a,)), Gen("id", (ap,))],
            [Gen("id", (ap,)), Gen("cap_l", (a,))],
        ]),
    }


def _zigzag_fusing_route(data, a):
    """The four zigzag values from the fusing-entry expansion."""
    ap = data.dual(a)
    e = data.unit
    fa = duality_fusing_scalar(data, a)

    def fentry(a1, a2, a3, d):
        right = data.f_right_basis(a1, a2, a3, d).index((e, 0, 0))
        left = data.f_left_basis(a1, a2, a3, d).index((e, 0, 0))
        return data.f_block(a1, a2, a3, d)[right, left]

    def fentry_inv(a1, a2, a3, d):
        right = data.f_right_basis(a1, a2, a3, d).index((e, 0, 0))
        left = data.f_left_basis(a1, a2, a3, d).index((e, 0, 0))
        return data.f_block_inv(a1, a2, a3, d)[left, right]

    return {
        "zigzag_right_1": fentry(a, ap, a, a) / fa,
        "zigzag_right_2": fentry_inv(ap, a, ap, ap) / fa,
        "zigzag_left_1": fentry_inv(a, ap, a, a) / fa,
        "zigzag_left_2": fentry(ap, a, ap, ap) / fa,
    }


def verify_rigidity(data: CategoryData, tol: float = DEFAULT_TOL) -> Report:
    """All four zigzag identities, by diagram evaluation and by fusing entries.

    Reports the deviation of either route from the identity and the mutual
    agreement of the two routes.
    """
    import time as _time

    t0 = _time.perf_counter()
    report = Report(suite="rigidity", tol=tol)
    for a in range(data.size):
        diagrams = _zigzag_diagrams(data, a)
        scalars = _zigzag_fusing_route(data, a)
        for name, diag in diagrams.items():
            strand = (a,) if name.endswith(("right_1", "left_1")) else (data.dual(a),)
            got = evaluate_diagram(data, diag, strand)
            ident = Morphism.identity(data, strand)
            report.add(f"{name}_diagram", (a,), got.distance(ident))
            report.add(f"{name}_fusing", (a,), abs(scalars[name] - 1.0))
            report.add(
                f"{name}_routes_agree", (a,),
                got.distance(complex(scalars[name]) * ident),
            )
    for a in range(data.size):
        for b in range(data.size):
            report.add("completeness", (a, b), completeness_defect(data, a, b))
    report.wall_time = _time.perf_counter() - t0
    return report


def _fusing_matrix_in_bases(data, word, d, outer_right, inner_right,
                            outer_left, inner_left):
    """Fusing matrix of (word) -> d expressed in the given vertex families.

    ``outer_right[x]`` is a list of VertexVector in hom(w0 x, d), etc.
    Returns (right_index_list, left_index_list, matrix).
    """
    w0, w1, w2 = word
    tre = trees(data, word, d)
    if not tre:
        return [], [], np.zeros((0, 0))
    rights, rvecs = [], []
    for x in sorted(outer_right):
        for io, yo in enumerate(outer_right[x]):
            for ii, yi in enumerate(inner_right[x]):
                rights.append((x, io, ii))
                comp = _embed_pair(data, (w0, x), 0, yo) @ _embed_pair(
                    data, word, 1, yi
                )
                rvecs.append(comp.blocks[d][0, :])
    lefts, lvecs = [], []
    for y in sorted(outer_left):
        for io, yo in enumerate(outer_left[y]):
            for ii, yi in enumerate(inner_left[y]):
                lefts.append((y, io, ii))
                comp = _embed_pair(data, (y, w2), 0, yo) @ _embed_pair(
                    data, word, 0, yi
                )
                lvecs.append(comp.blocks[d][0, :])
    U = np.array(rvecs).reshape(len(rights), len(tre))
    V = np.array(lvecs).reshape(len(lefts), len(tre))
    return rights, lefts, U @ np.linalg.inv(V)


def _embed_pair(data, word, k, v: VertexVector) -> Morphism:
    """Vertex vector applied at letters (k, k+1) of a word."""
    target = word[:k] + (v.a3,) + word[k + 2:]
    out = Morphism.zero(data, word, target)
    for mu in range(len(v.vec)):
        coef = complex(v.vec[mu])
        if coef != 0:
            out = out + coef * vertex_morphism(
                data, word, k, v.a1, v.a2, v.a3, mu
            )
    return out


def verify_fusing_symmetries(data: CategoryData, tol: float = DEFAULT_TOL) -> Report:
    """Conjugation symmetries of the fusing matrices and the phase identities.

    Checks, entrywise over all label tuples: the braid-conjugation symmetry
    (stored F equals the inverse fusing matrix in braid-transformed bases),
    the bend/braid symmetry, equality of the dual pair of duality fusing
    scalars, and the phase identities tying duality vertices to twists.
    """
    import time as _time

    t0 = _time.perf_counter()
    report = Report(suite="fusing-symmetries", tol=tol)
    e = data.unit

    for a in range(data.size):
        ap = data.dual(a)
        fa = duality_fusing_scalar(data, a)
        fap = duality_fusing_scalar(data, ap)
        report.add("dual_scalar_equal", (a,), abs(fa - fap))
        # inverse-route expressions of the same scalar
        ri = data.f_right_basis(a, ap, a, a).index((e, 0, 0))
        li = data.f_left_basis(a, ap, a, a).index((e, 0, 0))
        inv1 = data.f_block_inv(a, ap, a, a)[li, ri]
        ri2 = data.f_right_basis(ap, a, ap, ap).index((e, 0, 0))
        li2 = data.f_left_basis(ap, a, ap, ap).index((e, 0, 0))
        inv2 = data.f_block_inv(ap, a, ap, ap)[li2, ri2]
        report.add("dual_scalar_inverse_route", (a,), abs(inv1 - fa))
        report.add("dual_scalar_inverse_route_dual", (a,), abs(inv2 - fa))

        # duality vertex vs twist: stored braiding entry on the unit channel
        theta = data.twist[a]
        r_pos = data.r_block(a, ap, e)[0, 0]
        r_neg = data.r_block_inv(a, ap, e)[0, 0]
        report.add("duality_vertex_phase_pos", (a,), abs(r_pos - theta.conjugate()))
        report.add("duality_vertex_phase_neg", (a,), abs(r_neg - theta))

        # bent unit vertices reproduce duality vertices with the twist phase
        v_ea = VertexVector.basis(data, e, ap, ap)   # unit-left vertex of a'
        got = bend_vertex(data, v_ea, "+")
        want = VertexVector.basis(data, e, a, a)
        report.add(
            "bend_unit_left", (a,),
            float(np.max(np.abs(got.array - want.array))),
        )
        v_ae = VertexVector.basis(data, ap, e, ap)   # unit-right vertex of a'
        got = bend_vertex(data, v_ae, "+")
        want = VertexVector.basis(data, ap, a, e)
        report.add(
            "bend_unit_right", (a,),
            float(np.max(np.abs(got.array - theta * want.array))),
        )

    # braid-conjugation symmetry of the fusing matrices
    for key in _nonempty_fusing_words(data):
        a1, a2, a3, a4 = key
        res = _braid_conjugation_defect(data, a1, a2, a3, a4)
        report.add("fusing_braid_conjugation", key, res)
        res = _bend_conjugation_defect(data, a1, a2, a3, a4)
        report.add("fusing_bend_conjugation", key, res)
    report.wall_time = _time.perf_counter() - t0
    return report


def _nonempty_fusing_words(data):
    out = []
    for a1 in range(data.size):
        for a2 in range(data.size):
            for a3 in range(data.size):
                for a4 in range(data.size):
                    if data.f_right_basis(a1, a2, a3, a4) and data.f_left_basis(
                        a1, a2, a3, a4
                    ):
                        out.append((a1, a2, a3, a4))
    return out


def _braid_conjugation_defect(data, a1, a2, a3, a4) -> float:
    """Stored F equals the inverse fusing matrix in swap-transformed bases."""
    word = (a3, a2, a1)
    outer_right, inner_right = {}, {}
    outer_left, inner_left = {}, {}
    for x in range(data.size):
        if data.n(a2, a3, x) and data.n(a1, x, a4):
            outer_left[x] = [
                swap_vertex(data, VertexVector.basis(data, a1, x, a4, i), "+")
                for i in range(data.n(a1, x, a4))
            ]
            inner_left[x] = [
                swap_vertex(data, VertexVector.basis(data, a2, a3, x, j), "+")
                for j in range(data.n(a2, a3, x))
            ]
    for y in range(data.size):
        if data.n(a1, a2, y) and data.n(y, a3, a4):
            outer_right[y] = [
                swap_vertex(data, VertexVector.basis(data, y, a3, a4, k), "+")
                for k in range(data.n(y, a3, a4))
            ]
            inner_right[y] = [
                swap_vertex(data, VertexVector.basis(data, a1, a2, y, l), "+")
                for l in range(data.n(a1, a2, y))
            ]
    rights, lefts, mat = _fusing_matrix_in_bases(
        data, word, a4, outer_right, inner_right, outer_left, inner_left
    )
    if not rights:
        return 0.0
    inv = np.linalg.inv(mat)
    stored = data.f_block(a1, a2, a3, a4)
    sr = data.f_right_basis(a1, a2, a3, a4)
    sl = data.f_left_basis(a1, a2, a3, a4)
    res = 0.0
    for xi, (x, i, j) in enumerate(sr):
        for yi, (y, k, l) in enumerate(sl):
            got = inv[lefts.index((x, i, j)), rights.index((y, k, l))]
            res = max(res, abs(stored[xi, yi] - got))
    return res


def _bend_conjugation_defect(data, a1, a2, a3, a4) -> float:
    """Stored F equals the fusing matrix in bent/swapped bases."""
    a3p, a4p = data.dual(a3), data.dual(a4)
    word = (a2, a1, a4p)
    outer_right, inner_right = {}, {}
    outer_left, inner_left = {}, {}
    for x in range(data.size):
        if data.n(a2, a3, x) and data.n(a1, x, a4):
            xp = data.dual(x)
            outer_right[xp] = [
                bend_vertex(data, VertexVector.basis(data, a2, a3, x, j), "+")
                for j in range(data.n(a2, a3, x))
            ]
            inner_right[xp] = [
                bend_vertex(data, VertexVector.basis(data, a1, x, a4, i), "+")
                for i in range(data.n(a1, x, a4))
            ]
    for y in range(data.size):
        if data.n(a1, a2, y) and data.n(y, a3, a4):
            outer_left[y] = [
                bend_vertex(data, VertexVector.basis(data, y, a3, a4, k), "+")
                for k in range(data.n(y, a3, a4))
            ]
            inner_left[y] = [
                swap_vertex(data, VertexVector.basis(data, a1, a2, y, l), "-")
                for l in range(data.n(a1, a2, y))
            ]
    rights, lefts, mat = _fusing_matrix_in_bases(
        data, word, a3p, outer_right, inner_right, outer_left, inner_left
    )
    if not rights:
        return 0.0
    stored = data.f_block(a1, a2, a3, a4)
    sr = data.f_right_basis(a1, a2, a3, a4)
    sl = data.f_left_basis(a1, a2, a3, a4)
    res = 0.0
    for xi, (x, i, j) in enumerate(sr):
        for yi, (y, k, l) in enumerate(sl):
            got = mat[rights.index((data.dual(x), j, i)), lefts.index((y, k, l))]
            res = max(res, abs(stored[xi, yi] - got))
    return res
