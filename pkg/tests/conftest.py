"""Shared brute-force oracles, deliberately independent of the library's
class-level machinery: everything here works element by element."""

from __future__ import annotations


def brute_letters(G, X):
    """All conjugates of members of X or their inverses, by double loop."""
    letters = set()
    els = G.elements()
    for x in X:
        for g in els:
            gi = g.inverse()
            letters.add((gi * x) * g)
            letters.add((gi * x.inverse()) * g)
    return letters


def brute_consequences(G, X, n):
    """Exact-depth product set of the letter alphabet, element-level."""
    if not X:
        return frozenset()
    letters = brute_letters(G, X)
    current = set(letters)
    for _ in range(n - 1):
        current = {a * b for a in current for b in letters}
    return frozenset(current)


def brute_min_depth(G, X, y, max_n):
    """Least depth whose brute-force layer contains y, scanning to max_n."""
    if not X:
        return None
    letters = brute_letters(G, X)
    current = set(letters)
    for depth in range(1, max_n + 1):
        if y in current:
            return depth
        current = {a * b for a in current for b in letters}
    return None


def brute_cayley_distances(G, X):
    """Word lengths over the conjugate alphabet by element-level BFS."""
    letters = brute_letters(G, X)
    start = G.identity()
    dist = {start: 0}
    frontier = [start]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for h in frontier:
            for a in letters:
                t = h * a
                if t not in dist:
                    dist[t] = d
                    nxt.append(t)
        frontier = nxt
    return dist
