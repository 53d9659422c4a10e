"""Affine Weyl groups in the semidirect-product model.

An element ``AffWeylElt(t, w)`` is the map ``lam -> t + w(lam)`` on weight
space, with ``t`` in the coroot lattice and ``w`` in the finite Weyl group.
The same element names the alcove ``x A+``.  Lengths come from counting
hyperplanes between the fundamental alcove and ``x A+``.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .roots import (
    AffineRoot,
    FiniteRootSystem,
    as_vec,
    build_root_system,
    is_integral,
    vadd,
    vscale,
    vsub,
)


class BallTooSmall(Exception):
    """A query needs elements outside the length ball it was given."""


class FiniteWeylGroup:
    """The finite Weyl group as a table of integer matrices."""

    def __init__(self, rs: FiniteRootSystem):
        self.rs = rs
        r = rs.rank
        gens = []
        for i in range(r):
            cols = [rs.simple_reflection(i, rs.simple_roots[j]) for j in range(r)]
            gens.append(tuple(tuple(int(cols[j][k]) for j in range(r)) for k in range(r)))
        ident = tuple(tuple(int(i == j) for j in range(r)) for i in range(r))
        mats = [ident]
        index = {ident: 0}
        words = [()]
        queue = deque([0])
        while queue:
            a = queue.popleft()
            for i, g in enumerate(gens):
                m = _imatmul(mats[a], g)
                if m not in index:
                    index[m] = len(mats)
                    mats.append(m)
                    words.append(words[a] + (i + 1,))
                    queue.append(index[m])
        self.mats = mats
        self.index = index
        self.words = words  # BFS words are reduced; letters are affine indices 1..r
        n = len(mats)
        self.order = n
        self.mult = [[index[_imatmul(mats[a], mats[b])] for b in range(n)] for a in range(n)]
        self.inv = [next(b for b in range(n) if self.mult[a][b] == 0) for a in range(n)]
        self.gens = [index[g] for g in gens]
        self.reflection_root: dict[int, tuple] = {}
        for beta in rs.positive_roots:
            m = self.reflection_matrix(beta)
            self.reflection_root[index[m]] = beta

    def reflection_matrix(self, beta: Sequence) -> tuple:
        rs = self.rs
        cols = [rs.reflect_finite(beta, e) for e in rs.simple_roots]
        return tuple(tuple(int(cols[j][k]) for j in range(rs.rank)) for k in range(rs.rank))

    def apply(self, w: int, v: Sequence) -> tuple:
        m = self.mats[w]
        return tuple(sum((a * b for a, b in zip(row, v)), 0 * v[0]) for row in m)


def _imatmul(a, b):
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


@dataclass(frozen=True)
class AffWeylElt:
    """``T_t w``; acts by ``lam -> t + w(lam)`` and names the alcove ``x A+``."""

    t: tuple
    w: int
    group: "AffineWeylGroup" = field(compare=False, repr=False)

    def __mul__(self, other: "AffWeylElt") -> "AffWeylElt":
        W = self.group.finite
        t = tuple(a + b for a, b in zip(self.t, W.apply(self.w, other.t)))
        return AffWeylElt(t, W.mult[self.w][other.w], self.group)

    def inverse(self) -> "AffWeylElt":
        W = self.group.finite
        wi = W.inv[self.w]
        return AffWeylElt(tuple(-x for x in W.apply(wi, self.t)), wi, self.group)

    def apply(self, lam: Sequence) -> tuple:
        lam = as_vec(lam)
        return vadd(self.t, self.group.finite.apply(self.w, lam))

    def act_on_root(self, r: AffineRoot) -> AffineRoot:
        """Image of an affine root under the linear action on affine roots."""
        rs = self.group.rs
        wb = self.group.finite.apply(self.w, r.finite)
        wb = tuple(Fraction(x) for x in wb)
        return AffineRoot(wb, int(r.level - rs.form(self.t, wb)))

    @cached_property
    def centroid(self) -> tuple:
        return self.apply(self.group.rs.alcove_centroid)

    @cached_property
    def length(self) -> int:
        rs = self.group.rs
        c = self.centroid
        return sum(abs(math.floor(rs.form(c, a))) for a in rs.positive_roots)

    def __len__(self) -> int:  # pragma: no cover - convenience
        return self.length

    def is_identity(self) -> bool:
        return self.w == 0 and not any(self.t)

    def is_right_descent(self, i: int) -> bool:
        return not self.act_on_root(self.group.rs.affine_simple_roots[i]).is_positive()

    def is_left_descent(self, i: int) -> bool:
        return self.inverse().is_right_descent(i)

    def right_descents(self) -> list[int]:
        return [i for i in range(self.group.rank + 1) if self.is_right_descent(i)]

    def left_descents(self) -> list[int]:
        inv = self.inverse()
        return [i for i in range(self.group.rank + 1) if inv.is_right_descent(i)]

    @cached_property
    def reduced_word(self) -> tuple:
        word = []
        x = self
        while not x.is_identity():
            i = x.right_descents()[0]
            word.append(i)
            x = x * x.group.s[i]
        return tuple(reversed(word))

    @property
    def finite_word(self) -> tuple:
        return self.group.finite.words[self.w]

    def is_dominant(self) -> bool:
        """Whether the alcove lies in the fundamental chamber."""
        rs = self.group.rs
        c = self.centroid
        return all(rs.form(c, a) > 0 for a in rs.simple_roots)

    def is_translation(self) -> bool:
        return self.w == 0

    def reflection_root(self) -> AffineRoot | None:
        """The positive affine root ``r`` with ``self = s_r``, or None."""
        beta = self.group.finite.reflection_root.get(self.w)
        if beta is None:
            return None
        rs = self.group.rs
        cw = rs.coroot_weight(beta)
        k = _multiple(self.t, cw)
        if k is None:
            return None
        return rs.positive_affine_root(AffineRoot(beta, -k))

    def coroot_action(self) -> tuple:
        """Matrix of the linear action on the affine coroot lattice.

        Basis: simple coroots then ``c``.  A coroot ``v + a c`` goes to
        ``w(v) + (a - (t, w(v))) c``.
        """
        rs = self.group.rs
        r = rs.rank
        cols = []
        for j in range(r + 1):
            e = [Fraction(0)] * (r + 1)
            e[j] = Fraction(1)
            cols.append(self.act_on_coroot(e))
        return tuple(tuple(cols[j][i] for j in range(r + 1)) for i in range(r + 1))

    def act_on_coroot(self, v: Sequence) -> tuple:
        rs = self.group.rs
        v = as_vec(v)
        weight = rs.coroot_to_weight(v[:-1])
        wv = tuple(Fraction(x) for x in self.group.finite.apply(self.w, weight))
        a = v[-1] - rs.form(self.t, wv)
        return tuple(rs.coroot_coords_of_weight(wv)) + (a,)

    def word_string(self) -> str:
        w = self.reduced_word
        return ".".join(f"s{i}" for i in w) if w else "e"

    def __repr__(self) -> str:
        return f"<{self.word_string()}>"


def _multiple(v: Sequence, base: Sequence) -> int | None:
    """Integer ``k`` with ``v = k * base``, or None."""
    k = None
    for a, b in zip(v, base):
        if b == 0:
            if a != 0:
                return None
            continue
        q = Fraction(a) / b
        if k is None:
            k = q
        elif q != k:
            return None
    if k is None:
        return 0
    if k.denominator != 1:
        return None
    return int(k)


@dataclass(frozen=True)
class ExtendedElt:
    """``T_omega * body`` with ``omega`` a fixed representative of a class in X/Q."""

    omega: tuple
    body: AffWeylElt

    def apply(self, lam: Sequence) -> tuple:
        return vadd(self.omega, self.body.apply(lam))


class AffineWeylGroup:
    """Affine Weyl group of an untwisted affine root system of type A1 or A2."""

    def __init__(self, rs: FiniteRootSystem | str):
        if isinstance(rs, str):
            rs = build_root_system(rs)
        self.rs = rs
        self.rank = rs.rank
        self.finite = FiniteWeylGroup(rs)
        zero = (0,) * rs.rank
        self.identity = AffWeylElt(zero, 0, self)
        self.s = [self.reflection(r) for r in rs.affine_simple_roots]

    def __repr__(self) -> str:
        return f"AffineWeylGroup({self.rs.type!r})"

    @property
    def type(self) -> str:
        return self.rs.type

    # -- construction ----------------------------------------------------
    def element(self, t: Sequence, w: int = 0) -> AffWeylElt:
        t = tuple(Fraction(x) for x in t)
        if not is_integral(t) or not self.rs.in_coroot_lattice(t):
            raise ValueError(f"{t} is not in the coroot lattice")
        return AffWeylElt(tuple(int(x) for x in t), w, self)

    def translation(self, lam: Sequence) -> AffWeylElt:
        return self.element(lam, 0)

    def reflection(self, r: AffineRoot) -> AffWeylElt:
        """``s_{alpha + n delta} = T_{-n coroot(alpha)} s_alpha``."""
        rs = self.rs
        w = self.finite.index[self.finite.reflection_matrix(r.finite)]
        t = vscale(-r.level, rs.coroot_weight(r.finite))
        return self.element(t, w)

    def from_word(self, word: Iterable[int]) -> AffWeylElt:
        x = self.identity
        for i in word:
            x = x * self.s[i]
        return x

    def parse_word(self, text: str) -> AffWeylElt:
        text = text.strip()
        if text in ("", "e", "1"):
            return self.identity
        letters = []
        for tok in text.replace("*", ".").split("."):
            tok = tok.strip()
            if not tok.startswith("s") or not tok[1:].isdigit():
                raise ValueError(f"bad word letter {tok!r}")
            i = int(tok[1:])
            if i > self.rank:
                raise ValueError(f"no simple reflection s{i} in type {self.type}")
            letters.append(i)
        return self.from_word(letters)

    def finite_element(self, w: int) -> AffWeylElt:
        return AffWeylElt((0,) * self.rank, w, self)

    def reflections_up_to(self, level: int) -> list[AffWeylElt]:
        out = []
        for n in range(0, level + 1):
            for beta in self.rs.positive_roots:
                out.append(self.reflection(AffineRoot(beta, n)))
                if n > 0:
                    out.append(self.reflection(AffineRoot(vscale(-1, beta), n)))
        return out

    # -- balls and ideals -------------------------------------------------
    def ball(self, radius: int) -> list[AffWeylElt]:
        seen = {self.identity}
        layer = [self.identity]
        out = [self.identity]
        for _ in range(radius):
            nxt = []
            for x in layer:
                for s in self.s:
                    y = x * s
                    if y not in seen and y.length == x.length + 1:
                        seen.add(y)
                        nxt.append(y)
            out.extend(nxt)
            layer = nxt
        return out

    def lower_ideal(self, y: AffWeylElt) -> set[AffWeylElt]:
        """``{z : z <= y}`` via the subword property along a reduced word."""
        ideal = {self.identity}
        for i in y.reduced_word:
            s = self.s[i]
            ideal |= {z * s for z in ideal}
        return ideal

    def bruhat_leq(self, x: AffWeylElt, y: AffWeylElt) -> bool:
        """Bruhat comparison by descending along right descents of ``y``.

        If ``ys < y`` then ``x <= y`` iff ``xs <= ys`` (when ``xs < x``) or
        ``x <= ys`` (when ``xs > x``).
        """
        while True:
            lx, ly = x.length, y.length
            if lx >= ly:
                return x == y
            if lx == 0:
                return True
            i = y.right_descents()[0]
            s = self.s[i]
            if x.is_right_descent(i):
                x = x * s
            y = y * s

    def bruhat_interval(self, x: AffWeylElt, y: AffWeylElt) -> list[AffWeylElt]:
        return sorted(
            (z for z in self.lower_ideal(y) if self.bruhat_leq(x, z)), key=sort_key
        )

    # -- parabolic data ---------------------------------------------------
    def parabolic_subgroup(self, J: Iterable[int]) -> list[AffWeylElt]:
        J = sorted(set(J))
        if not self.is_finitary(J):
            raise ValueError(f"J = {J} does not generate a finite subgroup")
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for j in J:
                    y = x * self.s[j]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return sorted(seen, key=sort_key)

    def is_finitary(self, J: Iterable[int]) -> bool:
        return len(set(J)) <= self.rank

    def min_coset_rep(self, x: AffWeylElt, J: Iterable[int]) -> AffWeylElt:
        J = sorted(set(J))
        if not self.is_finitary(J):
            raise ValueError(f"J = {J} does not generate a finite subgroup")
        changed = True
        while changed:
            changed = False
            for j in J:
                if x.is_right_descent(j):
                    x = x * self.s[j]
                    changed = True
        return x

    def is_min_coset_rep(self, x: AffWeylElt, J: Iterable[int]) -> bool:
        return not any(x.is_right_descent(j) for j in J)

    @property
    def finite_indices(self) -> tuple:
        return tuple(range(1, self.rank + 1))

    # -- alcoves ----------------------------------------------------------
    def alcove_of_point(self, p: Sequence) -> AffWeylElt:
        """The element ``x`` whose alcove ``x A+`` has centroid ``p``."""
        p = as_vec(p)
        c = self.rs.alcove_centroid
        for w in range(self.finite.order):
            t = vsub(p, tuple(Fraction(x) for x in self.finite.apply(w, c)))
            if is_integral(t) and self.rs.in_coroot_lattice(t):
                return AffWeylElt(tuple(int(x) for x in t), w, self)
        raise ValueError(f"{p} is not the centroid of an alcove")

    def translate_alcove(self, x: AffWeylElt, mu: Sequence) -> AffWeylElt:
        """The element naming the alcove ``x A+ + mu``."""
        mu = as_vec(mu)
        if not self.rs.in_coweight_lattice(mu):
            raise ValueError(f"{mu} is not an integral coweight")
        return self.alcove_of_point(vadd(x.centroid, mu))

    @cached_property
    def omega_representatives(self) -> tuple:
        """Fixed representatives of the classes of coweights modulo coroots."""
        reps = [(Fraction(0),) * self.rank]
        for w in self.rs.fundamental_coweights:
            if not any(self.rs.in_coroot_lattice(vsub(w, r)) for r in reps):
                reps.append(w)
        return tuple(reps)

    def decompose_coweight(self, mu: Sequence) -> tuple:
        """``mu = omega + gamma`` with ``omega`` a fixed representative and ``gamma`` a coroot."""
        mu = as_vec(mu)
        if not self.rs.in_coweight_lattice(mu):
            raise ValueError(f"{mu} is not an integral coweight")
        for rep in self.omega_representatives:
            gamma = vsub(mu, rep)
            if self.rs.in_coroot_lattice(gamma):
                return rep, gamma
        raise AssertionError("coweight classes exhausted")  # pragma: no cover

    def extended_translation(self, mu: Sequence) -> ExtendedElt:
        rep, gamma = self.decompose_coweight(mu)
        return ExtendedElt(rep, self.translation(gamma))

    def sigma_mu(self, mu: Sequence, x: AffWeylElt | None = None) -> tuple:
        """Wall-numbering permutation induced by translating alcoves by ``mu``.

        Entry ``i`` is the type of the wall of ``x A+ + mu`` that the
        ``s_i``-wall of ``x A+`` is moved to.
        """
        if x is None:
            x = self.identity
        y = self.translate_alcove(x, mu)
        mu = as_vec(mu)
        verts = self.rs.alcove_vertices
        images = [y.apply(v) for v in verts]
        perm = []
        for v in verts:
            moved = vadd(x.apply(v), mu)
            perm.append(images.index(moved))
        return tuple(perm)

    def sigma_matrix(self, mu: Sequence) -> tuple:
        """The automorphism of the affine coroot lattice permuting simple coroots by ``sigma_mu``."""
        perm = self.sigma_mu(mu)
        rs = self.rs
        r = rs.rank
        simple = [rs.affine_coroot(a).as_tuple() for a in rs.affine_simple_roots]
        cols = []
        for j in range(1, r + 1):
            cols.append(simple[perm[j]])
        theta = rs.theta_coefficients
        img_c = simple[perm[0]]
        for i in range(r):
            img_c = vadd(img_c, vscale(theta[i], simple[perm[i + 1]]))
        cols.append(img_c)
        return tuple(tuple(cols[j][i] for j in range(r + 1)) for i in range(r + 1))

    # -- generic order ----------------------------------------------------
    def height(self, x: AffWeylElt) -> Fraction:
        """``sum over positive roots of (centroid, alpha)``; strictly increases along the generic order."""
        rs = self.rs
        c = x.centroid
        return sum((rs.form(c, a) for a in rs.positive_roots), Fraction(0))

    def crosses_up(self, x: AffWeylElt, i: int) -> bool:
        """Whether crossing the ``s_i``-wall of ``x A+`` moves to the positive side."""
        return self.height(x * self.s[i]) > self.height(x)

    def generic_order(self, ball_radius: int) -> "GenericOrder":
        key = ball_radius
        cache = self.__dict__.setdefault("_generic_cache", {})
        if key not in cache:
            cache[key] = GenericOrder(self, ball_radius)
        return cache[key]

    def generic_leq(self, A: AffWeylElt, B: AffWeylElt, ball_radius: int) -> bool:
        """``A`` below ``B`` in the generic order, closed inside the length ball.

        Raises :class:`BallTooSmall` when an endpoint lies outside the ball;
        ``False`` means incomparable relative to this ball only.
        """
        return self.generic_order(ball_radius).leq(A, B)

    def generic_path(self, A: AffWeylElt, B: AffWeylElt, ball_radius: int) -> list | None:
        return self.generic_order(ball_radius).path(A, B)

    def generic_interval(self, A: AffWeylElt, B: AffWeylElt, ball_radius: int) -> list[AffWeylElt]:
        return self.generic_order(ball_radius).interval(A, B)


class GenericOrder:
    """Generic order on the alcoves of a length ball.

    Generated by ``A < s_H A`` whenever ``A`` lies on the negative side of
    the hyperplane ``H``; the closure only uses chains inside the ball, so
    it can only grow with the radius.
    """

    def __init__(self, W: AffineWeylGroup, radius: int):
        self.W = W
        self.radius = radius
        elems = sorted(W.ball(radius), key=lambda x: (W.height(x), sort_key(x)))
        self.elements = elems
        self.index = {x: i for i, x in enumerate(elems)}
        heights = [W.height(x) for x in elems]
        refl = W.reflections_up_to(radius + 2)
        self.succ: list[list[int]] = [[] for _ in elems]
        for i, x in enumerate(elems):
            for t in refl:
                y = t * x
                j = self.index.get(y)
                if j is not None and heights[j] > heights[i]:
                    self.succ[i].append(j)
            self.succ[i].sort()
        up = [0] * len(elems)
        for i in range(len(elems) - 1, -1, -1):
            b = 1 << i
            for j in self.succ[i]:
                b |= up[j]
            up[i] = b
        self.up = up

    def _idx(self, x: AffWeylElt) -> int:
        i = self.index.get(x)
        if i is None:
            raise BallTooSmall(f"{x} lies outside the ball of radius {self.radius}")
        return i

    def contains(self, x: AffWeylElt) -> bool:
        return x in self.index

    def leq(self, A: AffWeylElt, B: AffWeylElt) -> bool:
        return bool(self.up[self._idx(A)] >> self._idx(B) & 1)

    def upper_set(self, A: AffWeylElt) -> list[AffWeylElt]:
        b = self.up[self._idx(A)]
        return [x for i, x in enumerate(self.elements) if b >> i & 1]

    def interval(self, A: AffWeylElt, B: AffWeylElt) -> list[AffWeylElt]:
        ia, ib = self._idx(A), self._idx(B)
        ua = self.up[ia]
        return sorted(
            (x for i, x in enumerate(self.elements) if ua >> i & 1 and self.up[i] >> ib & 1),
            key=sort_key,
        )

    def path(self, A: AffWeylElt, B: AffWeylElt) -> list | None:
        """A chain of generating relations from ``A`` to ``B``, or None."""
        ia, ib = self._idx(A), self._idx(B)
        if not self.up[ia] >> ib & 1:
            return None
        chain = [ia]
        while chain[-1] != ib:
            cur = chain[-1]
            chain.append(next(j for j in self.succ[cur] if self.up[j] >> ib & 1))
        return [self.elements[i] for i in chain]


def sort_key(x: AffWeylElt):
    return (x.length, x.reduced_word)


_GROUPS: dict[str, AffineWeylGroup] = {}


def affine_weyl_group(cartan_type: str) -> AffineWeylGroup:
    if cartan_type not in _GROUPS:
        _GROUPS[cartan_type] = AffineWeylGroup(build_root_system(cartan_type))
    return _GROUPS[cartan_type]


def compose(x: AffWeylElt, y: AffWeylElt) -> AffWeylElt:
    return x * y


def length(x: AffWeylElt) -> int:
    return x.length


def bruhat_leq(x: AffWeylElt, y: AffWeylElt) -> bool:
    return x.group.bruhat_leq(x, y)


def generic_leq(A: AffWeylElt, B: AffWeylElt, ball_radius: int) -> bool:
    return A.group.generic_leq(A, B, ball_radius)


def translate_alcove(A: AffWeylElt, mu: Sequence) -> AffWeylElt:
    return A.group.translate_alcove(A, mu)


def sigma_mu(mu: Sequence, rs: FiniteRootSystem) -> tuple:
    return affine_weyl_group(rs.type).sigma_mu(mu)


def min_coset_rep(x: AffWeylElt, J: Iterable[int]) -> AffWeylElt:
    return x.group.min_coset_rep(x, J)
