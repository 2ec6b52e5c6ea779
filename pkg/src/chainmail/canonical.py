"""Canonical labeling of finite posets by partition refinement plus backtracking.

The code produced is a complete isomorphism invariant: two posets (optionally
carrying an element coloring) get byte-identical codes iff they are isomorphic
(respecting colors).  Self-contained on purpose: no external canonical-labeling
tool, so the whole artifact stays dependency-free.

Conventions: the order relation arrives as bit rows, ``above[i]`` = mask of
``{j : i <= j}`` including ``i`` itself.  The returned permutation maps old
index -> canonical position.
"""

from itertools import combinations


def iter_bits(mask):
    """Yield the set bit positions of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def transpose(n, above):
    below = [0] * n
    for i in range(n):
        row = above[i]
        while row:
            low = row & -row
            below[low.bit_length() - 1] |= 1 << i
            row ^= low
    return below


def refine_colors(n, above, below, colors=None):
    """Stable coloring refined from ``colors`` by strict up/down neighborhoods.

    Color values are ranks of isomorphism-invariant keys, so corresponding
    elements of isomorphic structures always receive equal colors.
    """
    sbl = [list(iter_bits(below[i] & ~(1 << i))) for i in range(n)]
    sab = [list(iter_bits(above[i] & ~(1 << i))) for i in range(n)]
    cur = list(colors) if colors is not None else [0] * n
    ncls = len(set(cur))
    while True:
        keys = [
            (
                cur[i],
                tuple(sorted(cur[j] for j in sbl[i])),
                tuple(sorted(cur[j] for j in sab[i])),
            )
            for i in range(n)
        ]
        rank = {k: r for r, k in enumerate(sorted(set(keys)))}
        cur = [rank[k] for k in keys]
        if len(rank) == ncls:
            return cur
        ncls = len(rank)


def _swap_masks(n, above, below):
    """swap[x] = mask of y such that transposing x,y is an automorphism."""
    swap = [0] * n
    for x, y in combinations(range(n), 2):
        if (above[x] >> y) & 1 or (above[y] >> x) & 1:
            continue  # comparable pair can never swap
        keep = ~((1 << x) | (1 << y))
        if above[x] & keep == above[y] & keep and below[x] & keep == below[y] & keep:
            swap[x] |= 1 << y
            swap[y] |= 1 << x
    return swap


def canonical_labeling(n, above, colors=None):
    """Return ``(code, perm)`` canonicalizing the poset given by ``above``.

    ``colors``, when given, is a per-element tuple of small ints that the
    labeling must respect (and that enters the code).  ``perm[old]`` is the
    canonical position of element ``old``; the code is the relation matrix
    of the relabeled poset, minimized over all labelings compatible with
    the refined partition.
    """
    if n == 0:
        return b"\x00\x00", ()
    below = transpose(n, above)
    refined = refine_colors(n, above, below, colors)
    swap = _swap_masks(n, above, below)

    by_color = {}
    for i in range(n):
        by_color.setdefault(refined[i], []).append(i)
    pos_color = sorted(refined)

    chunks = [0] * n
    lab = [0] * n
    best = None
    best_lab = None

    # Invariant: `eq` iff best exists and chunks[:k] == best[:k]; whenever a
    # subtree finds a strictly smaller prefix, the stale best is dropped and
    # the subtree recomputes its own minimum unpruned.
    def descend(k, used, eq):
        nonlocal best, best_lab
        if k == n:
            if not eq:
                best = chunks[:]
                best_lab = lab[:]
            return
        tried = 0
        for x in by_color[pos_color[k]]:
            bx = 1 << x
            if used & bx or swap[x] & tried:
                continue
            tried |= bx
            lo = 0
            hi = 0
            bel = below[x]
            abv = above[x]
            for j in range(k):
                e = lab[j]
                lo |= ((bel >> e) & 1) << j
                hi |= ((abv >> e) & 1) << j
            chunk = (lo << k) | hi
            if eq:
                b = best[k]
                if chunk > b:
                    continue
                if chunk < b:
                    best = None
                    child_eq = False
                else:
                    child_eq = True
            else:
                child_eq = False
            chunks[k] = chunk
            lab[k] = x
            descend(k + 1, used | bx, child_eq)
            eq = True  # a best now exists and extends chunks[:k]

    descend(0, 0, False)

    width = (2 * n + 7) // 8
    parts = [bytes([n, 1 if colors is not None else 0])]
    if colors is not None:
        parts.append(bytes(colors[e] & 0xFF for e in best_lab))
    for c in best:
        parts.append(c.to_bytes(width, "little"))
    perm = [0] * n
    for pos, e in enumerate(best_lab):
        perm[e] = pos
    return b"".join(parts), tuple(perm)


def canonical_maximal_position(n, above, perm):
    """Largest canonical position holding a maximal element.

    Determined by the canonical code alone, so the element sitting there is
    well-defined up to automorphism.
    """
    pos = -1
    for e in range(n):
        if above[e] == 1 << e and perm[e] > pos:
            pos = perm[e]
    return pos
