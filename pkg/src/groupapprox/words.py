"""Freely reduced words over a signed alphabet.

A word is a tuple of nonzero ints: +i is the i-th symbol (1-based), -i
its inverse.  The empty tuple is the identity word, written "1" in text.
Text words are whitespace-separated tokens ``name`` or ``name^k`` for an
integer k, e.g. "a b^-1 a^2".
"""

from __future__ import annotations

from .errors import ParseError
from .perm import Permutation, identity

Word = tuple


def reduce_word(symbols) -> Word:
    out = []
    for s in symbols:
        if s == 0:
            raise ValueError("0 is not a word symbol")
        if out and out[-1] == -s:
            out.pop()
        else:
            out.append(s)
    return tuple(out)


def invert_word(word) -> Word:
    return tuple(-s for s in reversed(word))


def concat(*parts) -> Word:
    merged = []
    for p in parts:
        merged.extend(p)
    return reduce_word(merged)


def conjugate_word(w, by) -> Word:
    return concat(invert_word(by), w, by)


def evaluate_word(word, images, degree: int) -> Permutation:
    """Image of a word under symbol i -> images[i-1] (right-action product)."""
    result = identity(degree)
    for s in word:
        i = abs(s) - 1
        if i >= len(images):
            raise ValueError(f"word uses symbol {abs(s)} but only {len(images)} images given")
        g = images[i]
        if len(g) != degree:
            raise ValueError(f"image degree {len(g)} does not match carrier degree {degree}")
        result = result * (g if s > 0 else g.inverse())
    return result


def max_symbol(word) -> int:
    return max((abs(s) for s in word), default=0)


def parse_word(text: str, names, line=None, source=None) -> Word:
    """Parse a text word over the given symbol names; "1" is the identity."""
    index = {name: i + 1 for i, name in enumerate(names)}
    text = text.strip()
    if text == "1" or not text:
        return ()
    symbols = []
    for col, tok in _tokens(text):
        name, _, exp_text = tok.partition("^")
        if name not in index:
            raise ParseError(f"unknown symbol {name!r}", line=line, column=col, source=source)
        if exp_text:
            try:
                exp = int(exp_text)
            except ValueError:
                raise ParseError(
                    f"bad exponent {exp_text!r} on {name!r}", line=line, column=col, source=source
                )
        else:
            exp = 1
        s = index[name]
        symbols.extend([s if exp > 0 else -s] * abs(exp))
    return reduce_word(symbols)


def _tokens(text):
    col = 0
    for raw in text.split(" "):
        if raw:
            yield col + 1, raw
        col += len(raw) + 1


def word_str(word, names) -> str:
    if not word:
        return "1"
    parts = []
    for s in word:
        name = names[abs(s) - 1]
        parts.append(name if s > 0 else f"{name}^-1")
    return " ".join(parts)
