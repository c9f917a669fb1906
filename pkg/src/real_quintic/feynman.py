"""Feynman diagrams of the extended anomaly equation.

A diagram has vertices labelled ``(g_v, h_v)``, three kinds of inner edges
(``e0``: weight ``-2S`` on two m-slots, ``e1``: weight ``-S^z``, directed
from an n-slot to an m-slot, ``e2``: weight ``-S^zz`` on two n-slots) and two
kinds of legs (``l0``: ``Delta`` on an m-slot, ``l1``: ``Delta^z`` on an
n-slot).  Diagrams are enumerated up to isomorphism by brute-force canonical
labelling over vertex permutations.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from . import geometry as geo
from .ring import RingElement, propagators_and_terminators, ring_sum

BASE_SET = frozenset({(0, 0), (1, 0), (0, 1), (0, 2)})


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class VertexFactorKey:
    g: int
    h: int
    n: int
    m: int

    def __post_init__(self):
        if min(self.g, self.h, self.n, self.m) < 0:
            raise GraphError("vertex factor indices must be non-negative")


@dataclass(frozen=True, order=True)
class FeynmanGraph:
    vertices: tuple  # ((g_v, h_v), ...)
    e0: tuple = ()  # sorted (i, j) with i <= j
    e1: tuple = ()  # sorted (i, j) ordered: i gives an n-slot, j an m-slot
    e2: tuple = ()  # sorted (i, j) with i <= j
    l0: tuple = ()  # sorted vertex indices
    l1: tuple = ()

    # -- slot counting ----------------------------------------------------

    def slots(self):
        """``[(n_v, m_v)]`` per vertex."""
        n = [0] * len(self.vertices)
        m = [0] * len(self.vertices)
        for i, j in self.e2:
            n[i] += 1
            n[j] += 1
        for i, j in self.e0:
            m[i] += 1
            m[j] += 1
        for i, j in self.e1:
            n[i] += 1
            m[j] += 1
        for i in self.l1:
            n[i] += 1
        for i in self.l0:
            m[i] += 1
        return list(zip(n, m))

    def n_inner(self):
        return len(self.e0) + len(self.e1) + len(self.e2)

    def n_outer(self):
        return len(self.l0) + len(self.l1)

    def genus_and_boundaries(self):
        g = sum(v[0] for v in self.vertices) + self.n_inner() - len(self.vertices) + 1
        h = sum(v[1] for v in self.vertices) + self.n_outer()
        return g, h

    def is_connected(self):
        nv = len(self.vertices)
        adj = {i: set() for i in range(nv)}
        for i, j in self.e0 + self.e1 + self.e2:
            adj[i].add(j)
            adj[j].add(i)
        seen, stack = {0}, [0]
        while stack:
            for k in adj[stack.pop()]:
                if k not in seen:
                    seen.add(k)
                    stack.append(k)
        return len(seen) == nv

    def self_loops(self):
        return sum(1 for i, j in self.e0 + self.e2 if i == j)

    def validate(self, g, h):
        """Conditions (connected, nonvanishing vertex factors, (g, h), valence)."""
        if not self.is_connected():
            return False
        if self.genus_and_boundaries() != (g, h):
            return False
        for (gv, hv), (n, m) in zip(self.vertices, self.slots()):
            if n + m == 0 or not vertex_factor_nonzero(gv, hv, n, m):
                return False
        return True

    # -- isomorphism ------------------------------------------------------

    def relabel(self, perm) -> "FeynmanGraph":
        """Vertex ``i`` becomes ``perm[i]``."""
        inv = [0] * len(perm)
        for i, p in enumerate(perm):
            inv[p] = i
        verts = tuple(self.vertices[inv[k]] for k in range(len(perm)))

        def und(edges):
            return tuple(sorted(tuple(sorted((perm[i], perm[j]))) for i, j in edges))

        return FeynmanGraph(
            verts,
            und(self.e0),
            tuple(sorted((perm[i], perm[j]) for i, j in self.e1)),
            und(self.e2),
            tuple(sorted(perm[i] for i in self.l0)),
            tuple(sorted(perm[i] for i in self.l1)),
        )

    def _label_preserving_perms(self):
        nv = len(self.vertices)
        for perm in itertools.permutations(range(nv)):
            if all(self.vertices[i] == self.vertices[perm[i]] for i in range(nv)):
                yield perm

    def canonical(self) -> "FeynmanGraph":
        """Minimal relabelling; vertices are kept sorted by label."""
        order = sorted(range(len(self.vertices)), key=lambda i: self.vertices[i])
        perm = [0] * len(order)
        for new, old in enumerate(order):
            perm[old] = new
        base = self.relabel(perm)
        return min(base.relabel(p) for p in base._label_preserving_perms())

    def vertex_automorphisms(self) -> int:
        return sum(1 for p in self._label_preserving_perms() if self.relabel(p) == self)

    def dump(self) -> str:
        verts = "[" + ",".join(f"({a},{b})" for a, b in self.vertices) + "]"
        parts = [verts]
        for name, edges in (("S", self.e0), ("Sz", self.e1), ("Szz", self.e2)):
            parts.append(name + ":" + " ".join(f"{i}-{j}" for i, j in edges))
        for name, legs in (("D", self.l0), ("Dz", self.l1)):
            parts.append(name + ":" + " ".join(str(i) for i in legs))
        parts.append(f"#A={aut_order(self)}")
        return " ".join(parts)


def vertex_factor_nonzero(g: int, h: int, n: int, m: int) -> bool:
    if (g, h) == (0, 0):
        return n >= 3
    if (g, h) == (0, 1):
        return n >= 2
    if (g, h) == (0, 2):
        return n >= 1 or m >= 1
    if (g, h) == (1, 0):
        return n >= 1 or m >= 1
    return True


def aut_order(G: FeynmanGraph) -> int:
    """``#A_G = 2^(#self loops of e0, e2) * |Aut G|``.

    ``Aut G`` is generated by label-preserving vertex permutations together
    with permutations of parallel edges and legs of the same kind.
    """
    mult = 1
    for coll in (G.e0, G.e1, G.e2, G.l0, G.l1):
        for c in Counter(coll).values():
            mult *= factorial(c)
    return (2 ** G.self_loops()) * G.vertex_automorphisms() * mult


# -- enumeration -------------------------------------------------------------


def _vertex_label_sets(g, h, nv):
    labels = [(a, b) for a in range(g + 1) for b in range(h + 1)]
    for combo in itertools.combinations_with_replacement(labels, nv):
        if sum(a for a, _ in combo) > g or sum(b for _, b in combo) > h:
            continue
        yield combo


def _required(label):
    """(minimal excess 2g-2+h+val, minimal n) a vertex must reach."""
    gv, hv = label
    need_n = {(0, 0): 3, (0, 1): 2}.get(label, 0)
    return need_n


@lru_cache(maxsize=None)
def enumerate_graphs(g: int, h: int) -> tuple:
    """One canonical representative per isomorphism class of diagrams."""
    if g < 0 or h < 0:
        raise GraphError("g and h must be non-negative")
    if (g, h) in BASE_SET:
        raise GraphError(f"(g,h)=({g},{h}) is in the excluded base set {sorted(BASE_SET)}")
    chi = 2 * g - 2 + h
    found = set()
    for nv in range(1, chi + 1):
        for labels in _vertex_label_sets(g, h, nv):
            n_in = g - sum(a for a, _ in labels) + nv - 1
            n_out = h - sum(b for _, b in labels)
            if n_in < nv - 1 or n_out < 0:
                continue
            found.update(_enumerate_fixed(labels, n_in, n_out))
    return tuple(sorted(found))


def _enumerate_fixed(labels, n_in, n_out):
    nv = len(labels)
    inner_slots = []
    for i in range(nv):
        for j in range(i, nv):
            inner_slots.append(("e0", i, j))
            inner_slots.append(("e2", i, j))
    for i in range(nv):
        for j in range(nv):
            inner_slots.append(("e1", i, j))
    outer_slots = [("l0", i) for i in range(nv)] + [("l1", i) for i in range(nv)]
    excess0 = [2 * a - 2 + b for a, b in labels]
    need_n = [_required(lab) for lab in labels]
    out = set()

    def deficit(exc, nn):
        return sum(max(0, 1 - e) for e in exc), sum(max(0, r - x) for r, x in zip(need_n, nn))

    def fill_outer(idx, rem, exc, nn, chosen_in, chosen_out):
        d_exc, d_n = deficit(exc, nn)
        if d_exc > rem or d_n > rem:
            return
        if rem == 0:
            groups = {"e0": [], "e1": [], "e2": [], "l0": [], "l1": []}
            for kind, i, j in chosen_in:
                groups[kind].append((i, j))
            for kind, i in chosen_out:
                groups[kind].append(i)
            G = FeynmanGraph(
                tuple(labels),
                tuple(sorted(groups["e0"])),
                tuple(sorted(groups["e1"])),
                tuple(sorted(groups["e2"])),
                tuple(sorted(groups["l0"])),
                tuple(sorted(groups["l1"])),
            )
            if G.validate(*_target):
                out.add(G.canonical())
            return
        if idx >= len(outer_slots):
            return
        kind, i = outer_slots[idx]
        for c in range(rem, -1, -1):
            exc2 = list(exc)
            exc2[i] += c
            nn2 = list(nn)
            if kind == "l1":
                nn2[i] += c
            fill_outer(idx + 1, rem - c, exc2, nn2, chosen_in, chosen_out + [(kind, i)] * c)

    def fill_inner(idx, rem, exc, nn, chosen):
        d_exc, d_n = deficit(exc, nn)
        if d_exc > 2 * rem + n_out or d_n > 2 * rem + n_out:
            return
        if rem == 0:
            fill_outer(0, n_out, exc, nn, chosen, [])
            return
        if idx >= len(inner_slots):
            return
        kind, i, j = inner_slots[idx]
        for c in range(rem, -1, -1):
            exc2 = list(exc)
            exc2[i] += c
            exc2[j] += c
            nn2 = list(nn)
            if kind == "e2":
                nn2[i] += c
                nn2[j] += c
            elif kind == "e1":
                nn2[i] += c
            fill_inner(idx + 1, rem - c, exc2, nn2, chosen + [(kind, i, j)] * c)

    g = sum(a for a, _ in labels) + n_in - nv + 1
    h = sum(b for _, b in labels) + n_out
    _target = (g, h)
    fill_inner(0, n_in, excess0, [0] * nv, [])
    return out


def count_graphs(g: int, h: int) -> int:
    return len(enumerate_graphs(g, h))


def symmetry_sum(g: int, h: int) -> Fraction:
    return sum((Fraction(1, aut_order(G)) for G in enumerate_graphs(g, h)), Fraction(0))


# -- amplitudes ------------------------------------------------------------------


def vertex_factor(key: VertexFactorKey, store) -> RingElement:
    """``C~^{(g,h)}_{n:m}``; ``store.amplitude(g, h, n)`` supplies ``F^{(g,h)}_n``."""
    g, h, n, m = key.g, key.h, key.n, key.m
    basis = store.basis
    chi = 2 * g - 2 + h
    if not vertex_factor_nonzero(g, h, n, m):
        return RingElement.zero(basis, (n, chi))
    if chi + n >= 1:
        base = store.amplitude(g, h, n)
        start = 0
    elif (g, h) == (0, 2) and n == 0:
        base = RingElement.from_field(basis, Fraction(-geo.CONSTANTS.n_branes, 2), (0, 0))
        start = 1
    elif (g, h) == (1, 0) and n == 0:
        base = RingElement.from_field(basis, Fraction(geo.CONSTANTS.chi, 24) - 1, (0, 0))
        start = 1
    else:  # pragma: no cover - excluded by vertex_factor_nonzero
        raise GraphError(f"no vertex factor for {key}")
    factor = Fraction(1)
    for j in range(start, m):
        factor *= chi + n + j
    if factor == 0:
        return RingElement.zero(basis, (n, chi))
    return base * factor if factor != 1 else base


def graph_amplitude(G: FeynmanGraph, store) -> RingElement:
    """``F_G`` (product of vertex factors, edge and leg weights)."""
    prop = propagators_and_terminators(store.basis)
    out = None
    for (gv, hv), (n, m) in zip(G.vertices, G.slots()):
        vf = vertex_factor(VertexFactorKey(gv, hv, n, m), store)
        out = vf if out is None else out * vf
    weights = (
        (G.e0, prop["S"] * (-2)),
        (G.e1, -prop["Sz"]),
        (G.e2, -prop["Szz"]),
        (G.l0, prop["D"]),
        (G.l1, prop["Dz"]),
    )
    for coll, wt in weights:
        if coll:
            out = out * wt ** len(coll)
    return out


def sum_feynman(g: int, h: int, store) -> RingElement:
    """``F_FD = - sum_G F_G / #A_G`` with section weights ``(0, 2g-2+h)``."""
    terms = []
    for G in enumerate_graphs(g, h):
        amp = graph_amplitude(G, store)
        if amp.weights != (0, 2 * g - 2 + h):
            raise GraphError(f"diagram {G.dump()} has weights {amp.weights}")
        terms.append(amp * Fraction(-1, aut_order(G)))
    return ring_sum(terms, basis=store.basis, weights=(0, 2 * g - 2 + h))
