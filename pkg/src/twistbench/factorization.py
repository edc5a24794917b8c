"""Factorizations into conjugated twists and their elementary moves.

A letter is a conjugate ``(core^sign)_w = w^{-1} T_core^sign w`` of a
single twist, stored as (core, sign, conjugator word); conjugators are
kept freely reduced.  A factorization is a sequence of letters whose
product is read left to right with the rightmost letter acting first,
matching twist-word composition.

The two elementary moves swap adjacent letters without changing the
product:

    right at i:  (a, b) -> (b, (a)_b)
    left  at i:  (a, b) -> ((b)_{a^{-1}}, a)

The calculus is generic over the core type: homology contexts use curve
ids, braid contexts use generator indices.  Nothing here touches a
homology model except ``product_matrix`` and ``letter_matrix``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .homology import HomologyModel, MappingClassMatrix, twist_word_matrix
from .intlin import mat_mul

__all__ = [
    "MoveError",
    "TwistLetter",
    "Factorization",
    "bare",
    "free_reduce",
    "invert_plain_word",
    "hurwitz_move",
    "inverse_op",
    "invert_script",
    "apply_script",
    "letter_matrix",
    "product_matrix",
    "rotate_to_front",
    "strip_to_front",
    "AurouxStep",
    "AurouxCertificate",
    "auroux_certificate",
    "replay_certificate",
    "fiber_sum",
    "twisted_fiber_sum",
    "hurwitz_search",
    "greedy_match_script",
]

Word = tuple  # of (core, ±1) pairs
MoveOp = tuple  # ("right"|"left", index)


class MoveError(ValueError):
    """A move script step that cannot be applied; carries the step index."""

    def __init__(self, step: int, message: str):
        self.step = step
        super().__init__(f"script step {step}: {message}")


def free_reduce(word: Iterable) -> Word:
    out: list = []
    for core, sign in word:
        if out and out[-1][0] == core and out[-1][1] == -sign:
            out.pop()
        else:
            out.append((core, sign))
    return tuple(out)


def invert_plain_word(word: Iterable) -> Word:
    return tuple((c, -s) for c, s in reversed(tuple(word)))


@dataclass(frozen=True)
class TwistLetter:
    core: object
    sign: int
    conjugator: Word = ()

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("letter sign must be +1 or -1")
        object.__setattr__(self, "conjugator", free_reduce(self.conjugator))

    @property
    def is_bare(self) -> bool:
        return not self.conjugator

    def expansion(self) -> Word:
        """Plain twist word: inverse conjugator, core, conjugator."""
        return (
            invert_plain_word(self.conjugator)
            + ((self.core, self.sign),)
            + self.conjugator
        )

    def inverse(self) -> "TwistLetter":
        return TwistLetter(self.core, -self.sign, self.conjugator)

    def conjugated(self, by: Iterable) -> "TwistLetter":
        return TwistLetter(self.core, self.sign, self.conjugator + tuple(by))


def bare(core, sign: int = 1) -> TwistLetter:
    return TwistLetter(core, sign)


@dataclass(frozen=True)
class Factorization:
    letters: tuple[TwistLetter, ...]

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __getitem__(self, i) -> TwistLetter:
        return self.letters[i]

    def word(self) -> Word:
        out: list = []
        for letter in self.letters:
            out.extend(letter.expansion())
        return tuple(out)

    def cores(self) -> tuple:
        return tuple(t.core for t in self.letters)


def hurwitz_move(fact: Factorization, index: int, direction: str = "right") -> Factorization:
    """Swap letters at ``index`` and ``index+1``; the product is unchanged."""
    if not 0 <= index < len(fact) - 1:
        raise IndexError(f"move index {index} out of range for {len(fact)} letters")
    a, b = fact.letters[index], fact.letters[index + 1]
    if direction == "right":
        pair = (b, a.conjugated(b.expansion()))
    elif direction == "left":
        pair = (b.conjugated(invert_plain_word(a.expansion())), a)
    else:
        raise ValueError(f"unknown move direction {direction!r}")
    letters = fact.letters[:index] + pair + fact.letters[index + 2:]
    return Factorization(letters)


def inverse_op(op: MoveOp) -> MoveOp:
    direction, index = op
    return ("left" if direction == "right" else "right", index)


def invert_script(script: Sequence) -> tuple:
    return tuple(inverse_op(op) for op in reversed(tuple(script)))


def apply_script(fact: Factorization, script: Sequence) -> Factorization:
    for step, op in enumerate(tuple(script)):
        try:
            direction, index = op
            fact = hurwitz_move(fact, index, direction)
        except (IndexError, ValueError, TypeError) as exc:
            raise MoveError(step, str(exc)) from exc
    return fact


_letter_matrix_cache: dict = {}


def letter_matrix(model: HomologyModel, letter: TwistLetter):
    key = (model.fingerprint, letter)
    hit = _letter_matrix_cache.get(key)
    if hit is None:
        hit = twist_word_matrix(model, letter.expansion()).matrix
        _letter_matrix_cache[key] = hit
    return hit


def product_matrix(model: HomologyModel, fact: Factorization) -> MappingClassMatrix:
    # reduce the concatenated expansions first: moves leave the reduced
    # word small even when individual conjugators have grown large
    word = free_reduce(fact.word())
    return twist_word_matrix(model, word)


def rotate_to_front(fact: Factorization, index: int) -> tuple[Factorization, tuple]:
    """Bubble the letter at ``index`` to position 0 unchanged, using right
    moves; everything it passes is conjugated by it."""
    if not 0 <= index < len(fact):
        raise IndexError(f"letter index {index} out of range")
    script = tuple(("right", i) for i in range(index - 1, -1, -1))
    return apply_script(fact, script), script


def strip_to_front(fact: Factorization, index: int) -> tuple[Factorization, tuple]:
    """Bubble the letter at ``index`` to the front, using a left move
    whenever it strictly shortens the letter's conjugator and a right move
    otherwise.  Returns the transformed factorization and the script."""
    if not 0 <= index < len(fact):
        raise IndexError(f"letter index {index} out of range")
    script: list = []
    while index > 0:
        target = fact.letters[index]
        neighbour = fact.letters[index - 1]
        stripped = target.conjugated(invert_plain_word(neighbour.expansion()))
        if len(stripped.conjugator) < len(target.conjugator):
            op = ("left", index - 1)
        else:
            op = ("right", index - 1)
        fact = hurwitz_move(fact, index - 1, op[0])
        script.append(op)
        index -= 1
    return fact, tuple(script)


@dataclass(frozen=True)
class AurouxStep:
    core: object
    sign: int
    source_index: int
    script: tuple
    front_letter: TwistLetter
    stripped_bare: bool


@dataclass(frozen=True)
class AurouxCertificate:
    base_cores: tuple
    steps: tuple[AurouxStep, ...]

    @property
    def all_bare(self) -> bool:
        return all(s.stripped_bare for s in self.steps)


def auroux_certificate(fact: Factorization, targets: Sequence) -> AurouxCertificate:
    """For each target core, pick a positive letter of the factorization
    with that core (shortest conjugator first) and record a script moving
    it to the front, stripping its conjugator along the way.

    Each step starts again from the original factorization; the
    certificate witnesses one core at a time.
    """
    steps = []
    for core in targets:
        candidates = [
            (len(t.conjugator), i)
            for i, t in enumerate(fact.letters)
            if t.core == core and t.sign == +1
        ]
        if not candidates:
            raise ValueError(f"no positive letter with core {core!r}")
        _, index = min(candidates)
        moved, script = strip_to_front(fact, index)
        front = moved.letters[0]
        steps.append(
            AurouxStep(
                core=core,
                sign=+1,
                source_index=index,
                script=script,
                front_letter=front,
                stripped_bare=front.is_bare and front.core == core and front.sign == +1,
            )
        )
    return AurouxCertificate(base_cores=fact.cores(), steps=tuple(steps))


def replay_certificate(fact: Factorization, certificate: AurouxCertificate) -> list:
    """Re-run every step's script on the original factorization and check
    the recorded front letter is reproduced.  Raises MoveError with the
    first failing step; returns the recomputed front letters."""
    if fact.cores() != certificate.base_cores:
        raise MoveError(0, "certificate was issued for a different factorization")
    fronts = []
    for k, step in enumerate(certificate.steps):
        moved = apply_script(fact, step.script)
        front = moved.letters[0]
        if front != step.front_letter:
            raise MoveError(k, f"replayed front letter differs for core {step.core!r}")
        fronts.append(front)
    return fronts


def fiber_sum(left: Factorization, right: Factorization) -> Factorization:
    return Factorization(left.letters + right.letters)


def twisted_fiber_sum(left: Factorization, right: Factorization, word: Iterable) -> Factorization:
    """Concatenate after conjugating every letter of ``right`` by the word."""
    word = tuple(word)
    return Factorization(left.letters + tuple(t.conjugated(word) for t in right.letters))


def _neighbours(fact: Factorization):
    for i in range(len(fact) - 1):
        for direction in ("right", "left"):
            yield (direction, i), hurwitz_move(fact, i, direction)


def hurwitz_search(
    start: Factorization,
    goal: Factorization,
    letter_key: Callable[[TwistLetter], object],
    *,
    max_depth: int = 6,
    budget: int = 20000,
) -> tuple | None:
    """Bidirectional breadth-first search for a move script carrying
    ``start`` to ``goal``, where letters are identified by ``letter_key``.
    Returns a script, or None when the search is inconclusive (depth or
    budget exhausted).
    """
    if len(start) != len(goal):
        return None

    key_cache: dict = {}

    def state_key(fact: Factorization):
        out = []
        for letter in fact.letters:
            k = key_cache.get(letter)
            if k is None:
                k = letter_key(letter)
                key_cache[letter] = k
            out.append(k)
        return tuple(out)

    start_key, goal_key = state_key(start), state_key(goal)
    if start_key == goal_key:
        return ()

    # forward scripts carry start -> state, backward scripts goal -> state;
    # on a meet the combined script is forward + inverse(backward)
    forward_seen = {start_key: ()}
    backward_seen = {goal_key: ()}
    forward_frontier = [(start, ())]
    backward_frontier = [(goal, ())]
    spent = 0
    depth_used = 0
    while forward_frontier and backward_frontier and depth_used < max_depth:
        expand_forward = len(forward_frontier) <= len(backward_frontier)
        frontier = forward_frontier if expand_forward else backward_frontier
        seen = forward_seen if expand_forward else backward_seen
        other_seen = backward_seen if expand_forward else forward_seen
        new_frontier = []
        for fact, script in frontier:
            for op, moved in _neighbours(fact):
                spent += 1
                if spent > budget:
                    return None
                k = state_key(moved)
                if k in seen:
                    continue
                moved_script = script + (op,)
                if k in other_seen:
                    if expand_forward:
                        return moved_script + invert_script(other_seen[k])
                    return other_seen[k] + invert_script(moved_script)
                seen[k] = moved_script
                new_frontier.append((moved, moved_script))
        if expand_forward:
            forward_frontier = new_frontier
        else:
            backward_frontier = new_frontier
        depth_used += 1
    return None


def greedy_match_script(
    start: Factorization,
    goal: Factorization,
    letter_key: Callable[[TwistLetter], object],
) -> tuple | None:
    """Deterministic normalization towards ``goal``: for each position in
    turn, bubble some later letter to it with right moves so that its key
    matches the goal letter's key, trying candidates left to right.  The
    moving letter is never modified by right moves, while the letters it
    passes get conjugated by it — which is exactly what unwinds nested
    conjugators.  Returns the combined script (verified: applying it to
    ``start`` yields a letterwise key match with ``goal``), or None when
    some position has no candidate.  Unlike :func:`hurwitz_search` this
    is not bounded-complete: None means this strategy failed, not that no
    script exists."""
    if len(start) != len(goal):
        return None
    goal_keys = [letter_key(letter) for letter in goal.letters]
    fact = start
    script: list = []
    for position, want in enumerate(goal_keys):
        for candidate in range(position, len(fact)):
            trial_script = tuple(
                ("right", i) for i in range(candidate - 1, position - 1, -1)
            )
            trial = apply_script(fact, trial_script)
            if letter_key(trial[position]) == want:
                fact = trial
                script.extend(trial_script)
                break
        else:
            return None
    return tuple(script)
