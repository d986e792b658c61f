"""Problem instances: two equal-length strings, B a permutation of A.

Letters are arbitrary interned tokens; "char" instances are just the special
case where every token is a single character.  All positions in the public
API are 1-based.
"""

import sys
from collections import Counter
from dataclasses import dataclass, field

from .errors import ParseError


@dataclass(frozen=True)
class Duo:
    """Ordered pair of consecutive letters at `position`, `position`+1."""

    side: str  # "A" or "B"
    position: int  # 1-based, position + 1 <= n
    content: tuple


@dataclass(frozen=True)
class Violation:
    kind: str  # "permutation" or "occurrence"
    letter: str
    count_a: int
    count_b: int
    limit: int | None = None

    def __str__(self):
        if self.kind == "permutation":
            return (
                f"letter {self.letter!r} occurs {self.count_a} times in A "
                f"but {self.count_b} times in B"
            )
        return (
            f"letter {self.letter!r} occurs {max(self.count_a, self.count_b)}"
            f" > {self.limit} times"
        )


@dataclass(frozen=True)
class Instance:
    a: tuple
    b: tuple
    k: int = 2

    @property
    def n(self):
        return len(self.a)

    def letter_a(self, pos):
        """Letter of A at 1-based position `pos`."""
        return self.a[pos - 1]

    def letter_b(self, pos):
        return self.b[pos - 1]


def _tokenize(line, mode):
    if mode == "char":
        return [sys.intern(c) for c in line]
    if mode == "token":
        return [sys.intern(t) for t in line.split()]
    raise ValueError(f"unknown mode {mode!r}")


def parse_instance(text, mode="char", k=2):
    """Parse a two-line instance document.

    Blank lines and lines starting with '#' are skipped.  The permutation and
    occurrence-bound constraints are *not* enforced here; see `validate`.
    """
    lines = [
        ln.strip() for ln in text.splitlines()
        if ln.strip() and not ln.lstrip().startswith("#")
    ]
    if len(lines) != 2:
        raise ParseError(f"expected exactly 2 content lines, found {len(lines)}")
    a = _tokenize(lines[0], mode)
    b = _tokenize(lines[1], mode)
    if not a or not b:
        raise ParseError("empty string line")
    if len(a) != len(b):
        raise ParseError(f"unequal lengths: |A|={len(a)}, |B|={len(b)}")
    return Instance(tuple(a), tuple(b), k)


def format_instance(inst, mode="char"):
    """Inverse of `parse_instance`: render the two content lines."""
    sep = "" if mode == "char" else " "
    return sep.join(inst.a) + "\n" + sep.join(inst.b) + "\n"


def validate(inst, k):
    """Return the list of constraint violations (empty list means ok)."""
    ca = Counter(inst.a)
    cb = Counter(inst.b)
    violations = []
    for letter in sorted(set(ca) | set(cb)):
        na, nb = ca.get(letter, 0), cb.get(letter, 0)
        if na != nb:
            violations.append(Violation("permutation", letter, na, nb))
        if max(na, nb) > k:
            violations.append(Violation("occurrence", letter, na, nb, limit=k))
    return violations


def duos(inst, side):
    """All n-1 duos of one string, in position order."""
    if side not in ("A", "B"):
        raise ValueError(f"side must be 'A' or 'B', got {side!r}")
    s = inst.a if side == "A" else inst.b
    return [
        Duo(side, i, (s[i - 1], s[i])) for i in range(1, len(s))
    ]
