"""The eight-dimensional torus algebra over F2.

Basis: two idempotents ``i0``, ``i1`` and six chords ``r1 r2 r3 r12 r23
r123``.  A chord ``r{a..b}`` is the interval [a, b] in {1, 2, 3}; the
product of two chords is their concatenation when the intervals are
consecutive and zero otherwise (in particular r2*r1 = r3*r2 = 0).
Idempotents act as one-sided units according to the chord endpoints:
r1 = i0*r1*i1, r2 = i1*r2*i0, r3 = i0*r3*i1.
"""

from __future__ import annotations

from itertools import product

IDEMPOTENTS = ("i0", "i1")
CHORDS = ("r1", "r2", "r3", "r12", "r23", "r123")
BASIS = IDEMPOTENTS + CHORDS

_INTERVAL = {"r1": (1, 1), "r2": (2, 2), "r3": (3, 3),
             "r12": (1, 2), "r23": (2, 3), "r123": (1, 3)}
_BY_INTERVAL = {v: k for k, v in _INTERVAL.items()}


class DegenerateInput(ValueError):
    """A string of algebra elements whose idempotents cannot chain."""


def is_idempotent(a):
    return a in IDEMPOTENTS


def left_idem(a):
    """Left idempotent: the unique i with i*a = a."""
    if a in IDEMPOTENTS:
        return a
    start = _INTERVAL[a][0]
    return "i0" if (start - 1) % 2 == 0 else "i1"


def right_idem(a):
    """Right idempotent: the unique i with a*i = a."""
    if a in IDEMPOTENTS:
        return a
    end = _INTERVAL[a][1]
    return "i0" if end % 2 == 0 else "i1"


def idempotents(a):
    """The pair (left, right) with left*a*right = a."""
    return left_idem(a), right_idem(a)


def _mul_basis(a, b):
    # returns a basis element or None (= zero product)
    if a in IDEMPOTENTS:
        return b if left_idem(b) == a else None
    if b in IDEMPOTENTS:
        return a if right_idem(a) == b else None
    (a0, a1), (b0, b1) = _INTERVAL[a], _INTERVAL[b]
    if b0 == a1 + 1:
        return _BY_INTERVAL[(a0, b1)]
    return None


MUL_TABLE = {(a, b): _mul_basis(a, b) for a, b in product(BASIS, BASIS)}


def mul_basis(a, b):
    """Product of two basis elements: a basis element or None for zero."""
    return MUL_TABLE[a, b]


def mul(x, y):
    """Bilinear product of F2 combinations (frozensets of basis names)."""
    out = set()
    for a in x:
        for b in y:
            c = MUL_TABLE[a, b]
            if c is not None:
                out ^= {c}
    return frozenset(out)


def mul_word(word):
    """Product of a sequence of basis elements; None if it vanishes."""
    acc = None
    for a in word:
        if acc is None:
            acc = a
        else:
            acc = MUL_TABLE[acc, a]
            if acc is None:
                return None
    return acc


def chains(word):
    """True if consecutive idempotents match along the word."""
    for a, b in zip(word, word[1:]):
        if right_idem(a) != left_idem(b):
            return False
    return True


def regroup(strings):
    """Concatenate strings of basis elements and merge greedily.

    Adjacent entries are multiplied left to right whenever the product is
    nonzero, so ``[r2, r1], [r2, r3]`` regroups to ``[r2, r123]``.  Raises
    DegenerateInput when consecutive entries cannot chain (the path label
    is impossible as an operation input).
    """
    flat = [a for s in strings for a in s]
    if not flat:
        return []
    out = [flat[0]]
    for b in flat[1:]:
        if right_idem(out[-1]) != left_idem(b):
            raise DegenerateInput(
                "idempotent mismatch in string: %s | %s" % (out[-1], b))
        c = MUL_TABLE[out[-1], b]
        if c is not None:
            out[-1] = c
        else:
            out.append(b)
    return out


# the parametrization swap i0 <-> i1, r1 <-> r3; an anti-automorphism
SWAP = {"i0": "i1", "i1": "i0", "r1": "r3", "r3": "r1", "r2": "r2",
        "r12": "r23", "r23": "r12", "r123": "r123"}
