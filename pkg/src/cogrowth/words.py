"""Free-group word kernel.

Words are tuples of nonzero ints: generator ``g`` is ``+g`` and its inverse
is ``-g``, so inversion of a letter is negation.  Every function here keeps
words freely reduced (no adjacent ``x, -x`` pair).

This module is the readable reference implementation of the two walk moves;
the hot loop in :mod:`cogrowth.kernel` re-implements them on flat buffers and
is cross-checked against this one in the test suite.
"""

from __future__ import annotations

from typing import Optional, Sequence

Word = tuple[int, ...]


def free_reduce(letters: Sequence[int]) -> Word:
    """Return the freely reduced form of a letter sequence.

    Reduction is confluent, so a single left-to-right stack pass gives the
    unique reduced form regardless of cancellation order.
    """
    out: list[int] = []
    for x in letters:
        if x == 0:
            raise ValueError("0 is not a letter")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def inverse(word: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(word))


def is_reduced(word: Sequence[int]) -> bool:
    return all(word[i] != -word[i + 1] for i in range(len(word) - 1))


def is_cyclically_reduced(word: Sequence[int]) -> bool:
    return is_reduced(word) and not (len(word) >= 2 and word[0] == -word[-1])


def cyclic_reduce(word: Sequence[int]) -> Word:
    """Freely reduce, then strip cancelling first/last pairs."""
    w = list(free_reduce(word))
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def conjugate(w: Sequence[int], x: int) -> Word:
    """The conjugation move: ``free_reduce(x . w . x^-1)``.

    The result length is ``|w| - 2``, ``|w|`` or ``|w| + 2``.
    """
    return free_reduce((x,) + tuple(w) + (-x,))


def left_insert(w: Sequence[int], r: Sequence[int], pos: int) -> Optional[Word]:
    """The relator-insertion move, or ``None`` when the move is rejected.

    Splits ``w = u . v`` at ``pos`` and inserts ``r`` between the parts,
    cancelling only across the ``u | r`` boundary (letter by letter, stopping
    at the first non-cancelling pair or when either side runs out).  If the
    resulting word is not freely reduced at the remaining junction the move
    is rejected so that every accepted insertion can be undone by inserting
    ``r^-1``; that reversibility is what detailed balance rests on.  A fully
    consumed relator is legal and deletes a copy of ``r^-1`` from ``u`` --
    these deletion moves are exactly the reverses of cancellation-free
    insertions.
    """
    w = tuple(w)
    r = tuple(r)
    if not 0 <= pos <= len(w):
        raise ValueError(f"insert position {pos} out of range for |w|={len(w)}")
    u, v = w[:pos], w[pos:]
    k = 0
    while k < len(r) and k < len(u) and u[len(u) - 1 - k] == -r[k]:
        k += 1
    head = u[: len(u) - k]
    tail = r[k:]
    if tail:
        if v and v[0] == -tail[-1]:
            return None
    else:
        if head and v and v[0] == -head[-1]:
            return None
    return head + tail + v
