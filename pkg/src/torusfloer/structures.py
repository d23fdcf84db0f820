"""Type D structures, A-infinity modules and DD bimodules over the torus
algebra, presented as labeled directed graphs.

A type D structure is a list of generators with idempotents together with
arrows labeled by algebra basis elements; the structure equation says the
labels of composable arrow pairs multiply to zero in total.  A type A
module is an operation table m(x, a_1, ..., a_k) = y; entries with an
empty input word encode an internal differential and are only allowed on
intermediate (unreduced) modules.  A DD bimodule carries two labels per
arrow, one for each boundary action.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from .algebra import (BASIS, CHORDS, DegenerateInput, SWAP, chains,
                      is_idempotent, left_idem, mul_basis, regroup,
                      right_idem)
from .f2 import StructureError, PreconditionError


class NonBoundedModule(ValueError):
    """A graph whose path expansion would generate infinitely many ops."""


class NonTerminating(ValueError):
    """Pairing against a structure with an idempotent-labeled cycle."""


# nonzero products of chord pairs, used to split a relation input letter
_CHORD_FACTORIZATIONS = defaultdict(list)
for _a in CHORDS:
    for _b in CHORDS:
        _c = mul_basis(_a, _b)
        if _c is not None:
            _CHORD_FACTORIZATIONS[_c].append((_a, _b))


@dataclass(frozen=True)
class TypeD:
    name: str
    generators: tuple          # ((id, idempotent), ...)
    arrows: frozenset          # {(source, label, target), ...}
    grading: dict = field(default_factory=dict, compare=False)

    @property
    def idem(self):
        return dict(self.generators)

    def outgoing(self):
        out = defaultdict(list)
        for s, a, t in self.arrows:
            out[s].append((a, t))
        return out

    def by_idempotent(self, i):
        return [g for g, idem in self.generators if idem == i]


@dataclass(frozen=True)
class TypeA:
    name: str
    generators: tuple
    ops: frozenset             # {(source, (a_1, ..., a_k), target), ...}
    grading: dict = field(default_factory=dict, compare=False)

    @property
    def idem(self):
        return dict(self.generators)

    @property
    def maxlen(self):
        return max((len(w) for _, w, _ in self.ops), default=0)

    def action(self, x, word):
        """m(x, word) as an F2 set of generators."""
        word = tuple(word)
        return frozenset(t for s, w, t in self.ops if s == x and w == word)

    def by_idempotent(self, i):
        return [g for g, idem in self.generators if idem == i]

    def is_reduced(self):
        return all(len(w) > 0 for _, w, _ in self.ops)


@dataclass(frozen=True)
class GraphTypeA:
    name: str
    generators: tuple
    edges: frozenset           # {(source, (labels...), target), ...}


@dataclass(frozen=True)
class DDBimodule:
    name: str
    generators: tuple          # ((id, left idempotent, right idempotent), ...)
    arrows: frozenset          # {(source, left label, right label, target), ...}

    @property
    def idem(self):
        return {g: (li, ri) for g, li, ri in self.generators}

    def outgoing(self):
        out = defaultdict(list)
        for s, a, b, t in self.arrows:
            out[s].append((a, b, t))
        return out


# ---------------------------------------------------------------------------
# validation

def typeD_violations(d):
    problems = []
    idem = d.idem
    for s, a, t in d.arrows:
        if idem[s] != left_idem(a) or idem[t] != right_idem(a):
            problems.append(("label", s, a, t))
    # the structure equation: contributions of 2-paths cancel over F2
    two_paths = defaultdict(int)
    out = d.outgoing()
    for s, a, t in d.arrows:
        for b, u in out.get(t, ()):
            c = mul_basis(a, b)
            if c is not None:
                two_paths[s, c, u] += 1
    for key, count in sorted(two_paths.items()):
        if count % 2:
            problems.append(("two-path", *key))
    return problems


def validate_typeD(d):
    """True iff label compatibility and the structure equation hold."""
    return not typeD_violations(d)


def typeA_violations(m):
    problems = []
    idem = m.idem
    for s, w, t in m.ops:
        if any(is_idempotent(a) for a in w):
            problems.append(("idempotent-input", s, w, t))
            continue
        if w and (idem[s] != left_idem(w[0]) or not chains(w)
                  or idem[t] != right_idem(w[-1])):
            problems.append(("label", s, w, t))
        if not w and idem[s] != idem[t]:
            problems.append(("label", s, w, t))
    # group every potentially nonzero relation term by (source, word, target)
    terms = defaultdict(int)
    by_source = defaultdict(list)
    for s, w, t in m.ops:
        by_source[s].append((w, t))
    for s, u, y in m.ops:
        for v, z in by_source.get(y, ()):
            terms[s, u + v, z] += 1
    for s, u, z in m.ops:
        for j, c in enumerate(u):
            for a, b in _CHORD_FACTORIZATIONS.get(c, ()):
                terms[s, u[:j] + (a, b) + u[j + 1:], z] += 1
    for key, count in sorted(terms.items()):
        if count % 2:
            problems.append(("relation", *key))
    return problems


def validate_typeA(m):
    """True iff the A-infinity relations hold for the operation table."""
    return not typeA_violations(m)


def DD_violations(p):
    problems = []
    idem = p.idem
    for s, a, b, t in p.arrows:
        li_s, ri_s = idem[s]
        li_t, ri_t = idem[t]
        if li_s != left_idem(a) or li_t != right_idem(a):
            problems.append(("left-label", s, a, b, t))
        if ri_s != left_idem(b) or ri_t != right_idem(b):
            problems.append(("right-label", s, a, b, t))
    two_paths = defaultdict(int)
    out = p.outgoing()
    for s, a1, b1, t in p.arrows:
        for a2, b2, u in out.get(t, ()):
            ca = mul_basis(a1, a2)
            cb = mul_basis(b1, b2)
            if ca is not None and cb is not None:
                two_paths[s, ca, cb, u] += 1
    for key, count in sorted(two_paths.items()):
        if count % 2:
            problems.append(("two-path", *key))
    return problems


def validate_DD(p):
    """True iff the DD structure equation holds."""
    return not DD_violations(p)


# ---------------------------------------------------------------------------
# graph expansion

def _live_cycle(g):
    """Find a directed cycle whose label word survives regrouping."""
    edges = defaultdict(list)
    for s, w, t in g.edges:
        edges[s].append((tuple(w), t))

    def survives(word):
        try:
            regroup([word * 3])
        except DegenerateInput:
            return False
        return True

    # enumerate simple cycles by DFS
    gens = [gid for gid, _ in g.generators]
    for start in gens:
        stack = [(start, ())]
        seen_paths = set()
        while stack:
            node, word = stack.pop()
            if len(word) > 3 * len(g.edges) + 9:
                continue
            for w, t in edges.get(node, ()):
                if t == start:
                    if survives(word + w):
                        return start, word + w
                key = (t, len(word) + len(w))
                if key in seen_paths:
                    continue
                seen_paths.add(key)
                if len(word) + len(w) <= 3 * len(g.edges) + 9:
                    stack.append((t, word + w))
    return None


def expand_graph(g):
    """Expand a labeled graph into a type A operation table.

    Every directed path contributes the operation whose input word is the
    regrouped concatenation of its edge labels; paths whose labels cannot
    chain contribute nothing.  Raises NonBoundedModule when a cycle's label
    survives regrouping indefinitely, since expansion would never finish.
    """
    cyc = _live_cycle(g)
    if cyc is not None:
        raise NonBoundedModule("cycle at %r expands forever" % (cyc[0],))
    edges = defaultdict(list)
    for s, w, t in g.edges:
        edges[s].append((tuple(w), t))
    ops = set()
    cap = 20000
    for gid, _ in g.generators:
        stack = [(gid, ())]
        while stack:
            node, word = stack.pop()
            for w, t in edges.get(node, ()):
                try:
                    new = tuple(regroup([word, w]))
                except DegenerateInput:
                    continue
                ops ^= {(gid, new, t)}
                if len(ops) > cap:
                    raise NonBoundedModule("expansion exceeded %d ops" % cap)
                stack.append((t, new))
    m = TypeA(g.name, g.generators, frozenset(ops))
    return m


# ---------------------------------------------------------------------------
# reduction

def reduce_typeD(d, protect=frozenset()):
    """Cancel idempotent-labeled arrows (Gaussian elimination).

    Generators named in ``protect`` are never part of a canceled pair, so
    preferred generators survive to the reduced structure.  Cancellation
    order is lexicographic for reproducibility.
    """
    if typeD_violations(d):
        raise StructureError("cannot reduce an invalid type D structure")
    gens = dict(d.generators)
    arrows = set(d.arrows)
    grading = dict(d.grading)
    while True:
        candidates = sorted(
            (s, a, t) for (s, a, t) in arrows
            if is_idempotent(a) and s != t
            and s not in protect and t not in protect)
        if not candidates:
            break
        x, _, y = candidates[0]
        into_y = [(w, a) for (w, a, t) in arrows if t == y and w != x]
        from_x = [(b, z) for (s, b, z) in arrows if s == x and z != y]
        arrows = {(s, a, t) for (s, a, t) in arrows
                  if s not in (x, y) and t not in (x, y)}
        for w, a in into_y:
            if w in (x, y):
                continue
            for b, z in from_x:
                if z in (x, y):
                    continue
                c = mul_basis(a, b)
                if c is not None:
                    arrows ^= {(w, c, z)}
        del gens[x], gens[y]
        grading.pop(x, None)
        grading.pop(y, None)
    out = TypeD(d.name, tuple(sorted(gens.items())), frozenset(arrows),
                grading)
    if typeD_violations(out):
        raise StructureError("reduction produced an invalid structure")
    return out


def reduce_typeA(m, max_ops=400000):
    """Eliminate differential entries from an operation table.

    Repeatedly cancels an op with empty input word, composing operations
    through the canceled pair (inputs concatenate).  The result has no
    differential and the same homotopy type.
    """
    gens = dict(m.generators)
    ops = set(m.ops)
    grading = dict(m.grading)
    while True:
        diff = sorted((s, t) for (s, w, t) in ops if not w and s != t)
        if not diff:
            break
        x, y = diff[0]
        into_y = [(w, u) for (w, u, t) in ops if t == y and w not in (x, y)]
        from_x = [(v, z) for (s, v, z) in ops if s == x and z not in (x, y)]
        ops = {(s, w, t) for (s, w, t) in ops
               if s not in (x, y) and t not in (x, y)}
        for w, u in into_y:
            for v, z in from_x:
                ops ^= {(w, u + v, z)}
                if len(ops) > max_ops:
                    raise NonBoundedModule(
                        "type A reduction exceeded %d ops" % max_ops)
        del gens[x], gens[y]
        grading.pop(x, None)
        grading.pop(y, None)
    out = TypeA(m.name, tuple(sorted(gens.items())), frozenset(ops), grading)
    return out


def swap_typeA(m, name=None):
    """Reparametrize a type A module by exchanging the two boundary arcs.

    Exchanges the idempotents, applies the chord swap r1 <-> r3 and
    reverses operation words; this is the module of the same manifold with
    the roles of the two parametrizing curves interchanged.
    """
    gens = tuple((g, SWAP[i]) for g, i in m.generators)
    ops = frozenset(
        (t, tuple(SWAP[a] for a in reversed(w)), s) for s, w, t in m.ops)
    return TypeA(name or (m.name + ":swap"), gens, ops, dict(m.grading))
