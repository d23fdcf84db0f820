"""F2 linear algebra and chain complexes.

Vectors over F2 are frozensets of basis-element identifiers (members have
coefficient 1).  A chain complex carries an ordered generator list, a
differential, optional named cycles (for contact classes) and an optional
integer grading.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class StructureError(ValueError):
    """A structure equation fails (d^2 != 0 or similar)."""


class PreconditionError(ValueError):
    """An operation's precondition is not met."""


class UnknownGenerator(KeyError):
    """A vector mentions a generator the complex does not have."""


def add(u, v):
    """Sum over F2: symmetric difference of supports."""
    return frozenset(u) ^ frozenset(v)


def rank(rows):
    """F2 row rank by Gaussian elimination on frozenset rows."""
    basis = []
    for row in rows:
        row = frozenset(row)
        for b in basis:
            pivot = next(iter(b))
            if pivot in row:
                row = row ^ b
        while row:
            # reduce against basis rows sharing our chosen pivot
            pivot = min(row, key=repr)
            clashing = [b for b in basis if pivot in b]
            if not clashing:
                basis.append(row)
                break
            row = row ^ clashing[0]
    return len(basis)


def in_span(rows, v):
    """True if v lies in the F2 span of rows."""
    v = frozenset(v)
    if not v:
        return True
    return rank(list(rows) + [v]) == rank(rows)


@dataclass(frozen=True)
class ChainComplex:
    """Finite F2 chain complex with named cycles."""

    generators: tuple
    diff: dict          # generator -> frozenset (its boundary)
    cycles: dict = field(default_factory=dict)    # name -> frozenset
    grading: dict = field(default_factory=dict)   # generator -> int

    def boundary(self, v):
        out = frozenset()
        gens = set(self.generators)
        for g in v:
            if g not in gens:
                raise UnknownGenerator(g)
            out = out ^ self.diff.get(g, frozenset())
        return out

    def check(self):
        gens = set(self.generators)
        for g in self.generators:
            dg = self.diff.get(g, frozenset())
            if not dg <= gens:
                raise StructureError("differential leaves the basis at %r" % (g,))
            if self.boundary(dg):
                raise StructureError("d^2 != 0 at %r" % (g,))
        for name, z in self.cycles.items():
            if not frozenset(z) <= gens:
                raise StructureError("cycle %r off basis" % (name,))
        return self


def homology_rank(cx):
    """dim ker d - dim im d (total homology over F2)."""
    cx.check()
    image_rows = [cx.diff.get(g, frozenset()) for g in cx.generators]
    im = rank(image_rows)
    ker = len(cx.generators) - im
    return ker - im


def is_nonvanishing_cycle(cx, z):
    """True iff z is a cycle not in the image of the differential."""
    z = frozenset(z)
    if cx.boundary(z):
        return False
    if not z:
        return False
    image_rows = [cx.diff.get(g, frozenset()) for g in cx.generators]
    return not in_span(image_rows, z)


def cancel(cx, x, y):
    """Cancel a pair with <dx, y> = 1 by Gaussian elimination.

    The result lives on the remaining generators; named cycles are pushed
    forward along the homotopy equivalence (y is rewritten as dx - y).
    """
    if x not in cx.diff or y not in cx.diff.get(x, frozenset()):
        raise PreconditionError("<d%s, %s> = 0; cannot cancel" % (x, y))
    dx_rest = cx.diff[x] - {y}
    keep = tuple(g for g in cx.generators if g not in (x, y))
    new_diff = {}
    for g in keep:
        dg = cx.diff.get(g, frozenset())
        if y in dg:
            dg = (dg - {y}) ^ dx_rest
        dg = dg - {x, y}
        new_diff[g] = dg
    new_cycles = {}
    for name, z in cx.cycles.items():
        z = frozenset(z)
        if y in z:
            z = (z - {y}) ^ dx_rest
        z = z - {x, y}
        new_cycles[name] = z
    grading = {g: h for g, h in cx.grading.items() if g in set(keep)}
    return ChainComplex(keep, new_diff, new_cycles, grading).check()


def reduce_complex(cx):
    """Cancel pairs until the differential vanishes."""
    cx = cx.check()
    while True:
        pair = None
        for x in cx.generators:
            dx = cx.diff.get(x, frozenset())
            if dx:
                pair = (x, min(dx, key=repr))
                break
        if pair is None:
            return cx
        cx = cancel(cx, *pair)
