"""Positive braid words, named families, closure statistics, and a verified
rewriting engine (commutations, braid relations, deletions).

Words are immutable and positive-only: every letter is a generator index in
1..n-1.  The rewriting engine validates each move at its application point,
and traces replay from scratch, so any derivation produced here is
machine-checked twice.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable


class BraidError(ValueError):
    pass


class MoveError(BraidError):
    pass


@dataclass(frozen=True)
class BraidWord:
    """A positive braid word: strand count and a sequence of generator
    indices, each in 1..strands-1.  The empty word is allowed."""

    strands: int
    letters: tuple[int, ...]

    def __post_init__(self):
        if self.strands < 1:
            raise BraidError("strand count must be positive")
        for k, a in enumerate(self.letters):
            if not 1 <= a <= self.strands - 1:
                raise BraidError(
                    f"letter a{a} at position {k} out of range 1..{self.strands - 1}")

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if self.strands != other.strands:
            raise BraidError("cannot concatenate words on different strand counts")
        return BraidWord(self.strands, self.letters + other.letters)

    def __pow__(self, k: int) -> "BraidWord":
        if k < 0:
            raise BraidError("negative powers are not positive braids")
        return BraidWord(self.strands, self.letters * k)

    def permutation(self) -> tuple[int, ...]:
        """Underlying permutation of {0..n-1}, strands composed bottom-up."""
        perm = list(range(self.strands))
        for a in self.letters:
            perm[a - 1], perm[a] = perm[a], perm[a - 1]
        return tuple(perm)

    @property
    def is_nonsplit(self) -> bool:
        """Every generator index 1..n-1 occurs at least once."""
        return len(set(self.letters)) == self.strands - 1

    def to_text(self) -> str:
        """Canonical text form ``n=<strands>; a<i>[^k] ...``."""
        parts = []
        i = 0
        letters = self.letters
        while i < len(letters):
            j = i
            while j < len(letters) and letters[j] == letters[i]:
                j += 1
            run = j - i
            parts.append(f"a{letters[i]}" + (f"^{run}" if run > 1 else ""))
            i = j
        body = " ".join(parts)
        return f"n={self.strands};" + (f" {body}" if body else "")


def parse(text: str, strands: int) -> BraidWord:
    """Parse a whitespace-separated positive word.

    Tokens are ``a<k>`` or bare integers ``k``, optionally with a ``^m``
    repetition suffix.  Round-trips with :meth:`BraidWord.to_text`.
    """
    letters: list[int] = []
    for tok in text.split():
        base, caret, exp = tok.partition("^")
        if base.startswith("a"):
            base = base[1:]
        try:
            idx = int(base)
        except ValueError:
            raise BraidError(f"malformed token {tok!r}") from None
        if caret:
            try:
                m = int(exp)
            except ValueError:
                raise BraidError(f"malformed exponent in {tok!r}") from None
            if m <= 0:
                raise BraidError(f"non-positive exponent in {tok!r}")
        else:
            m = 1
        letters.extend([idx] * m)
    return BraidWord(strands, tuple(letters))


def parse_canonical(text: str) -> BraidWord:
    """Parse the canonical ``n=<strands>; ...`` form."""
    head, sep, body = text.partition(";")
    head = head.strip()
    if not sep or not head.startswith("n="):
        raise BraidError("expected 'n=<strands>; <letters>'")
    try:
        strands = int(head[2:])
    except ValueError:
        raise BraidError(f"bad strand count in {head!r}") from None
    return parse(body, strands)


# ---------------------------------------------------------------------------
# closure statistics


@dataclass(frozen=True)
class ClosureStats:
    components: int
    betti: int | None
    genus: int | None
    nonsplit: bool


def closure_stats(w: BraidWord) -> ClosureStats:
    """Component count, first Betti number and genus of the canonical
    surface of the closure.  Split words report ``nonsplit=False`` and
    withhold betti/genus."""
    perm = w.permutation()
    seen = [False] * w.strands
    components = 0
    for s in range(w.strands):
        if not seen[s]:
            components += 1
            t = s
            while not seen[t]:
                seen[t] = True
                t = perm[t]
    if not w.is_nonsplit:
        return ClosureStats(components, None, None, False)
    c, n = len(w), w.strands
    betti = c - n + 1
    genus = (2 - components - (n - c)) // 2
    return ClosureStats(components, betti, genus, True)


# ---------------------------------------------------------------------------
# named families


def torus(p: int, q: int) -> BraidWord:
    """(a1 ... a_{p-1})^q on p strands."""
    if p < 2 or q < 1:
        raise BraidError("torus braid needs p >= 2, q >= 1")
    return BraidWord(p, tuple(range(1, p)) * q)


def half_twist(n: int) -> BraidWord:
    """(a1...a_{n-1})(a1...a_{n-2})...(a1a2)(a1) on n strands."""
    if n < 2:
        raise BraidError("half twist needs n >= 2")
    return BraidWord(n, _half_twist_letters(n))


def _half_twist_letters(n: int) -> tuple[int, ...]:
    out: list[int] = []
    for top in range(n - 1, 0, -1):
        out.extend(range(1, top + 1))
    return tuple(out)


def omega(l: int) -> BraidWord:
    """a1...a_{l-2} a_{l-1}^2 a_{l-2}...a1 on l strands."""
    if l < 2:
        raise BraidError("omega needs l >= 2")
    return BraidWord(l, _omega_letters(l))


def _omega_letters(l: int) -> tuple[int, ...]:
    up = list(range(1, l - 1))
    return tuple(up + [l - 1, l - 1] + up[::-1])


def gamma(j: int) -> BraidWord:
    """a1...a_{j-2} a_{j-1} a_{j-2}...a1 on j strands."""
    if j < 2:
        raise BraidError("gamma needs j >= 2")
    return BraidWord(j, _gamma_letters(j))


def _gamma_letters(j: int) -> tuple[int, ...]:
    up = list(range(1, j - 1))
    return tuple(up + [j - 1] + up[::-1])


def l_n(n: int) -> BraidWord:
    """The (3n+1)-strand chain of n X-tree blocks hanging off a1.

    Block k < n reads a_{3k-2} a_{3k} a_{3k-1}^2 a_{3k+1} a_{3k-2} a_{3k}
    a_{3k-1}^2; the final block omits the a_{3k+1} bridge letter.
    """
    if n < 1:
        raise BraidError("l_n needs n >= 1")
    letters = [1]
    for k in range(1, n + 1):
        i, j, m = 3 * k - 2, 3 * k - 1, 3 * k
        block = [i, m, j, j]
        if k < n:
            block.append(3 * k + 1)
        block += [i, m, j, j]
        letters.extend(block)
    return BraidWord(3 * n + 1, tuple(letters))


def w_omega() -> BraidWord:
    """a1a2a3a4 on 5 strands."""
    return BraidWord(5, (1, 2, 3, 4))


def w_omega_rev() -> BraidWord:
    """a4a3a2a1 on 5 strands."""
    return BraidWord(5, (4, 3, 2, 1))


_FAMILIES = {
    "torus": torus,
    "half_twist": half_twist,
    "omega": omega,
    "gamma": gamma,
    "l_n": l_n,
    "w_omega": w_omega,
    "w_omega_rev": w_omega_rev,
}


def family(name: str, *params: int) -> BraidWord:
    try:
        fn = _FAMILIES[name]
    except KeyError:
        raise BraidError(f"unknown family {name!r}") from None
    return fn(*params)


# ---------------------------------------------------------------------------
# moves and traces


COMMUTE = "commute"
RELATION = "relation"
DELETE = "delete"

_MOVE_CODES = {COMMUTE: "C", RELATION: "R", DELETE: "D"}
_CODE_MOVES = {v: k for k, v in _MOVE_CODES.items()}


@dataclass(frozen=True)
class Move:
    """One elementary rewriting step at a word position.

    commute:  swap letters at pos, pos+1 (index distance >= 2 required)
    relation: rewrite the window a_k a_j a_k -> a_j a_k a_j at pos (|k-j| = 1)
    delete:   remove the letter at pos
    """

    kind: str
    pos: int

    def __post_init__(self):
        if self.kind not in _MOVE_CODES:
            raise MoveError(f"unknown move kind {self.kind!r}")
        if self.pos < 0:
            raise MoveError("move position must be non-negative")

    def to_line(self) -> str:
        return f"{_MOVE_CODES[self.kind]} {self.pos}"

    @classmethod
    def from_line(cls, line: str) -> "Move":
        code, _, pos = line.strip().partition(" ")
        if code not in _CODE_MOVES:
            raise MoveError(f"unknown move record {line!r}")
        return cls(_CODE_MOVES[code], int(pos))


def apply_move(w: BraidWord, m: Move) -> BraidWord:
    """Apply one verified move; raises MoveError naming the position when
    the window does not match."""
    letters = list(w.letters)
    p = m.pos
    if m.kind == COMMUTE:
        if p + 1 >= len(letters):
            raise MoveError(f"commute window out of range at position {p}")
        a, b = letters[p], letters[p + 1]
        if abs(a - b) < 2:
            raise MoveError(
                f"letters a{a} a{b} at position {p} do not commute")
        letters[p], letters[p + 1] = b, a
    elif m.kind == RELATION:
        if p + 2 >= len(letters):
            raise MoveError(f"relation window out of range at position {p}")
        a, b, c = letters[p:p + 3]
        if a != c or abs(a - b) != 1:
            raise MoveError(
                f"no braid relation matches a{a} a{b} a{c} at position {p}")
        letters[p:p + 3] = [b, a, b]
    elif m.kind == DELETE:
        if p >= len(letters):
            raise MoveError(f"delete position {p} out of range")
        del letters[p]
    return BraidWord(w.strands, tuple(letters))


@dataclass(frozen=True)
class MoveTrace:
    """An initial word, an ordered move list, and the resulting word.

    ``annotations`` label half-open move-index ranges with the macro step
    they implement; they carry no semantics for replay.
    """

    initial: BraidWord
    moves: tuple[Move, ...]
    final: BraidWord
    annotations: tuple[tuple[int, int, str], ...] = field(default=())

    def replay(self) -> BraidWord:
        """Re-run every move from the initial word; raises MoveError if any
        move is illegal, and BraidError if the result differs from final."""
        w = self.initial
        for mv in self.moves:
            w = apply_move(w, mv)
        if w != self.final:
            raise BraidError("trace replay does not reproduce the final word")
        return w

    def to_lines(self) -> list[str]:
        lines = [f"# initial {self.initial.to_text()}"]
        ann = {a: f"# {label}" for a, _, label in self.annotations}
        for i, mv in enumerate(self.moves):
            if i in ann:
                lines.append(ann[i])
            lines.append(mv.to_line())
        lines.append(f"# final {self.final.to_text()}")
        return lines


class _TraceBuilder:
    def __init__(self, w: BraidWord):
        self.initial = w
        self.word = list(w.letters)
        self.strands = w.strands
        self.moves: list[Move] = []
        self.annotations: list[tuple[int, int, str]] = []
        self._mark = 0

    def do(self, kind: str, pos: int):
        w = apply_move(BraidWord(self.strands, tuple(self.word)),
                       Move(kind, pos))
        self.word = list(w.letters)
        self.moves.append(Move(kind, pos))

    def annotate(self, label: str):
        self.annotations.append((self._mark, len(self.moves), label))
        self._mark = len(self.moves)

    def finish(self) -> MoveTrace:
        return MoveTrace(self.initial, tuple(self.moves),
                         BraidWord(self.strands, tuple(self.word)),
                         tuple(self.annotations))


# ---------------------------------------------------------------------------
# the half-twist splitting procedure


def _macro_shift(b: _TraceBuilder, pos: int, i: int, j: int):
    """Rewrite the window (a_i..a_j) Gamma_i (a_i..a_j) at ``pos`` into
    Gamma_{i+1} (a_{i+1}..a_j) (a_i..a_{j-1}), by commutations and braid
    relations only.  Recursive on j."""
    glen = 2 * i - 3
    if j == i:
        # a_i Gamma_i a_i: walk both a_i inward, one relation at the apex
        for t in range(i - 2):
            b.do(COMMUTE, pos + t)
        for t in range(i - 2):
            b.do(COMMUTE, pos + 2 + glen - 2 - t - 1 + 1)
        b.do(RELATION, pos + i - 2)
        return
    # move the middle a_j right across Gamma_i and the second run's tail
    start = pos + (j - i)
    for t in range(glen + (j - 1 - i)):
        b.do(COMMUTE, start + t)
    b.do(RELATION, start + glen + (j - 1 - i))
    _macro_shift(b, pos, i, j - 1)
    # word now: Gamma_{i+1} (a_{i+1}..a_{j-1}) (a_i..a_{j-2}) a_j a_{j-1};
    # walk a_j left across a_i..a_{j-2}
    back = pos + (2 * i - 1) + (j - 1 - i) + (j - 1 - i)
    for t in range(j - 1 - i):
        b.do(COMMUTE, back - 1 - t)


def subsurface_split(n: int, l: int) -> tuple[MoveTrace, BraidWord, BraidWord]:
    """Transform the half twist on n strands into a split word whose closure
    is the disjoint union of Gamma_2..Gamma_l Omega_l^{n-2l+1} Gamma_l..Gamma_2
    and the half twist on n-2l+1 strands.

    Every macro substitution is expanded into verified elementary moves;
    requires n >= 2l >= 4.
    """
    if l < 2 or n < 2 * l:
        raise BraidError("subsurface split needs n >= 2l >= 4")
    b = _TraceBuilder(half_twist(n))

    def expected_level(i: int) -> list[int]:
        # Gamma_2..Gamma_{i-1} Middle_i Gamma_{i-1}..Gamma_2 with
        # Middle_i = Gamma_i (a_i..a_{n-i+1}) Gamma_i ... Gamma_i (a_i) Gamma_i
        pre = [x for jj in range(2, i) for x in _gamma_letters(jj)]
        mid = list(_gamma_letters(i))
        for top in range(n - i + 1, i - 1, -1):
            mid.extend(range(i, top + 1))
            mid.extend(_gamma_letters(i))
        return pre + mid + pre[::-1]

    assert b.word == expected_level(2)
    for i in range(2, l + 1):
        pre_len = sum(2 * jj - 3 for jj in range(2, i))
        glen = 2 * i - 3
        # delete the single occurrence of a_{n-i+1}
        dpos = pre_len + glen + (n - 2 * i + 1)
        assert b.word[dpos] == n - i + 1
        b.do(DELETE, dpos)
        b.annotate(f"level {i}: delete a{n - i + 1}")
        # successive window rewrites, left to right
        cursor = pre_len + glen
        for j in range(n - i, i - 1, -1):
            _macro_shift(b, cursor, i, j)
            b.annotate(f"level {i}: (a{i}..a{j}) G{i} (a{i}..a{j}) "
                       f"-> G{i + 1} (a{i + 1}..a{j}) (a{i}..a{j - 1})")
            cursor += (2 * i - 1) + (j - i)
        assert b.word == expected_level(i + 1), f"level {i} structure"

    # final phase: delete every apex a_l of the Gamma_{l+1} blocks
    positions = [p for p, a in enumerate(b.word) if a == l]
    for p in reversed(positions):
        b.do(DELETE, p)
    b.annotate(f"delete all occurrences of a{l}")

    low = [a for a in b.word if a < l]
    high = [a - l for a in b.word if a > l]
    part1 = BraidWord(l, tuple(low))
    part2 = BraidWord(n - 2 * l + 1, tuple(high))
    expected1 = ([x for jj in range(2, l + 1) for x in _gamma_letters(jj)]
                 + list(_omega_letters(l)) * (n - 2 * l + 1)
                 + [x for jj in range(l, 1, -1) for x in _gamma_letters(jj)])
    assert part1.letters == tuple(expected1), "low summand structure"
    if n - 2 * l + 1 >= 2:
        assert part2.letters == _half_twist_letters(n - 2 * l + 1), \
            "high summand structure"
    trace = b.finish()
    trace.replay()
    return trace, part1, part2
