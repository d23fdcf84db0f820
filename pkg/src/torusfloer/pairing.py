"""Box tensor products and idempotent truncation.

``box_AD`` pairs a type A module with a type D structure into an F2 chain
complex; ``box_A_DD`` pairs a type A module with a DD bimodule into a type
D structure.  ``dual_module`` turns a type D structure into an honest
differential module over the algebra whose reduction is the corresponding
reduced A-infinity module; this is how the bundled type A models are
produced from curve-derived type D structures.
"""

from __future__ import annotations

from collections import defaultdict

from .algebra import is_idempotent, left_idem, right_idem, mul_basis, mul_word, BASIS
from .f2 import ChainComplex
from .structures import (DDBimodule, NonTerminating, TypeA, TypeD,
                         reduce_typeA, typeA_violations, typeD_violations)
from .f2 import StructureError


def _check_idempotent_cycles(arrows_iter, label_of):
    """Detect a directed cycle all of whose labels are idempotents."""
    edges = defaultdict(list)
    for arrow in arrows_iter:
        s, t, lab = label_of(arrow)
        if is_idempotent(lab):
            edges[s].append(t)
    color = {}

    def dfs(v):
        color[v] = 1
        for w in edges.get(v, ()):
            if color.get(w) == 1:
                return True
            if color.get(w, 0) == 0 and dfs(w):
                return True
        color[v] = 2
        return False

    return any(color.get(v, 0) == 0 and dfs(v) for v in list(edges))


def _chord_paths(out, start, maxlen):
    """Directed paths from start with chord labels only, length <= maxlen."""
    paths = []
    stack = [(start, ())]
    while stack:
        node, word = stack.pop()
        if len(word) >= maxlen:
            continue
        for a, t in out.get(node, ()):
            if is_idempotent(a):
                continue
            paths.append((word + (a,), t))
            stack.append((t, word + (a,)))
    return paths


def box_AD(m, d):
    """Box tensor product: type A module x type D structure -> complex.

    Generators are pairs with matching idempotents; the differential sums,
    over directed label paths of the type D side, the operations of the
    type A side applied to the path word.  Idempotent-labeled arrows act
    through strict unitality (single steps only).
    """
    if _check_idempotent_cycles(d.arrows, lambda arr: (arr[0], arr[2], arr[1])):
        raise NonTerminating("type D side has an idempotent-labeled cycle")
    idem_m, idem_d = m.idem, d.idem
    gens = [(x, p) for x, ix in m.generators for p, ip in d.generators
            if ix == ip]
    names = {(x, p): "%s*%s" % (x, p) for x, p in gens}
    out = d.outgoing()
    maxlen = m.maxlen
    diff = {}
    grading = {}
    for x, p in gens:
        terms = set()
        for a, q in out.get(p, ()):
            if is_idempotent(a) and a == idem_m[x]:
                terms ^= {names[x, q]}
        for word, q in _chord_paths(out, p, maxlen):
            for y in m.action(x, word):
                terms ^= {names[y, q]}
        diff[names[x, p]] = frozenset(terms)
        if x in m.grading and p in d.grading:
            grading[names[x, p]] = m.grading[x] + d.grading[p]
    cx = ChainComplex(tuple(sorted(names.values())), diff, {}, grading)
    return cx.check()


def truncate(m, i):
    """Complex of generators in one idempotent with zero differential.

    Equals ``box_AD(m, cap(i))`` since an elementary cap contributes no
    differential.
    """
    gens = tuple(sorted(m.by_idempotent(i)))
    grading = {g: m.grading[g] for g in gens if g in m.grading}
    return ChainComplex(gens, {g: frozenset() for g in gens}, {}, grading)


def box_A_DD(m, p, consumed="right"):
    """Pair a type A module with a DD bimodule into a type D structure.

    The module consumes the labels on one side of the bimodule (``right``
    by default); the other side's labels multiply to give the output
    arrow label.  Zero products are dropped.
    """
    if consumed not in ("left", "right"):
        raise ValueError("consumed side must be 'left' or 'right'")

    def split(arrow):
        s, a, b, t = arrow
        if consumed == "right":
            return s, t, a, b          # emitted, consumed
        return s, t, b, a

    if _check_idempotent_cycles(
            p.arrows, lambda arr: (arr[0], arr[3],
                                   arr[2] if consumed == "right" else arr[1])):
        raise NonTerminating("DD bimodule has an idempotent-consumed cycle")

    idem_m = m.idem
    idem_p = p.idem

    def consumed_idem(g):
        li, ri = idem_p[g]
        return ri if consumed == "right" else li

    def emitted_idem(g):
        li, ri = idem_p[g]
        return li if consumed == "right" else ri

    gens = [(x, g) for x, ix in m.generators for g, _, _ in p.generators
            if ix == consumed_idem(g)]
    names = {(x, g): "%s*%s" % (x, g) for x, g in gens}
    out = defaultdict(list)
    for arrow in p.arrows:
        s, t, em, co = split(arrow)
        out[s].append((em, co, t))
    maxlen = m.maxlen
    arrows = set()
    for x, g in gens:
        for em, co, h in out.get(g, ()):
            if is_idempotent(co) and co == idem_m[x]:
                arrows ^= {(names[x, g], em, names[x, h])}
        # chord-consumed paths feeding a genuine operation
        stack = [(g, (), ())]
        while stack:
            node, cword, eword = stack.pop()
            if len(cword) >= maxlen:
                continue
            for em, co, h in out.get(node, ()):
                if is_idempotent(co):
                    continue
                nc, ne = cword + (co,), eword + (em,)
                for y in m.action(x, nc):
                    lab = mul_word(ne)
                    if lab is not None:
                        arrows ^= {(names[x, g], lab, names[y, h])}
                stack.append((h, nc, ne))
    gen_list = tuple(sorted((names[x, g], emitted_idem(g)) for x, g in gens))
    d = TypeD("%s(x)%s" % (m.name, p.name), gen_list, frozenset(arrows))
    bad = typeD_violations(d)
    if bad:
        raise StructureError("pairing produced an invalid type D: %r" % bad[:3])
    return d


def box_AA_DD(m_left, p, m_right):
    """Triple pairing: two type A modules across a DD bimodule.

    Each arrow of the bimodule fires when both of its labels act, either
    through strict unitality (idempotent label) or through a genuine
    single-input operation; longer paths fire when both sides carry
    chord words matching operations of the respective modules.
    """
    idem_l, idem_r = m_left.idem, m_right.idem
    idem_p = p.idem
    gens = [(x, g, y)
            for g, li, ri in p.generators
            for x, ix in m_left.generators if ix == li
            for y, iy in m_right.generators if iy == ri]
    names = {t: "%s*%s*%s" % t for t in gens}
    out = p.outgoing()
    maxlen = max(m_left.maxlen, m_right.maxlen)
    diff = {}
    for x, g, y in gens:
        terms = set()
        for a, b, h in out.get(g, ()):
            left_hits = ([x] if (is_idempotent(a) and a == idem_l[x])
                         else list(m_left.action(x, (a,))))
            right_hits = ([y] if (is_idempotent(b) and b == idem_r[y])
                          else list(m_right.action(y, (b,))))
            for x2 in left_hits:
                for y2 in right_hits:
                    terms ^= {names[x2, h, y2]}
        # longer paths: both sides must fire genuine operations
        stack = [(g, (), ())]
        while stack:
            node, aw, bw = stack.pop()
            if len(aw) >= maxlen:
                continue
            for a, b, h in out.get(node, ()):
                na, nb = aw + (a,), bw + (b,)
                if len(na) >= 2 and not any(is_idempotent(c) for c in na + nb):
                    for x2 in m_left.action(x, na):
                        for y2 in m_right.action(y, nb):
                            terms ^= {names[x2, h, y2]}
                stack.append((h, na, nb))
        diff[names[x, g, y]] = frozenset(terms)
    cx = ChainComplex(tuple(sorted(names.values())), diff)
    return cx.check()


def dual_module(d, name=None):
    """The dual differential module of a type D structure.

    Generators are pairs (v, a) of a type D generator and an algebra basis
    element with matching idempotent; arrows of the type D structure give
    the differential by left multiplication and the algebra acts freely on
    the right.  Reducing this module yields the reduced A-infinity module
    dual to ``d``.
    """
    idem_d = d.idem
    gens = []
    for v, iv in d.generators:
        for a in BASIS:
            if left_idem(a) == iv:
                gens.append((v, a))
    names = {(v, a): "%s.%s" % (v, a) for v, a in gens}
    incoming = defaultdict(list)
    for s, c, t in d.arrows:
        incoming[t].append((s, c))
    ops = set()
    grading = {}
    for v, a in gens:
        for w, c in incoming.get(v, ()):
            ca = mul_basis(c, a)
            if ca is not None:
                ops ^= {(names[v, a], (), names[w, ca])}
        for b in BASIS:
            if is_idempotent(b):
                continue
            ab = mul_basis(a, b)
            if ab is not None:
                ops ^= {(names[v, a], (b,), names[v, ab])}
        if is_idempotent(a) and v in d.grading:
            grading[names[v, a]] = d.grading[v]
    gen_list = tuple(sorted((names[v, a], right_idem(a)) for v, a in gens))
    return TypeA(name or ("dual(%s)" % d.name), gen_list, frozenset(ops),
                 grading)


def cfa_from_cfd(d, name=None):
    """Reduced A-infinity module dual to a type D structure."""
    m = reduce_typeA(dual_module(d, name=name))
    bad = typeA_violations(m)
    if bad:
        raise StructureError("dualization produced an invalid module: %r"
                             % bad[:3])
    return m
