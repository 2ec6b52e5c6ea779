"""Independent reference implementations used to cross-check the package.

Everything in this module is written directly from the definitions, with
no imports from the package under test, and with deliberately different
algorithms: relations are generated by brute force, canonical codes are
minima over all permutations, connectivity is decided by growing sets.
Slow and obviously correct is the point.
"""

from itertools import combinations, permutations


# -- labeled and unlabeled posets ---------------------------------------------

def labeled_posets(n):
    """Yield every partial order on 0..n-1 as a tuple of leq bitmask rows.

    Each unordered pair independently gets one of three states (up, down,
    incomparable) and the transitive candidates are kept.  Sizes handled
    in practice: n <= 5 (3^10 candidates).
    """
    if n == 0:
        yield ()
        return
    pairs = list(combinations(range(n), 2))
    rows = [1 << i for i in range(n)]

    def emit(k):
        if k == len(pairs):
            if _is_transitive(n, rows):
                yield tuple(rows)
            return
        i, j = pairs[k]
        yield from emit(k + 1)
        rows[i] |= 1 << j
        yield from emit(k + 1)
        rows[i] &= ~(1 << j)
        rows[j] |= 1 << i
        yield from emit(k + 1)
        rows[j] &= ~(1 << i)

    yield from emit(0)


def _is_transitive(n, rows):
    for i in range(n):
        r = rows[i]
        m = r
        while m:
            j = (m & -m).bit_length() - 1
            m &= m - 1
            if rows[j] & ~r:
                return False
    return True


def min_perm_code(n, rows):
    """Canonical integer: the minimum relation encoding over all n! relabelings."""
    best = None
    for perm in permutations(range(n)):
        code = 0
        for i in range(n):
            for j in range(n):
                if (rows[i] >> j) & 1:
                    code |= 1 << (perm[i] * n + perm[j])
        if best is None or code < best:
            best = code
    return best


def unlabeled_poset_codes(n):
    return {min_perm_code(n, rows) for rows in labeled_posets(n)}


# -- order queries straight from the relation ---------------------------------

def lower_bound_mask(n, rows, mask):
    out = (1 << n) - 1
    m = mask
    while m:
        j = (m & -m).bit_length() - 1
        m &= m - 1
        col = 0
        for i in range(n):
            if (rows[i] >> j) & 1:
                col |= 1 << i
        out &= col
    return out


def least_upper_bound(n, rows, mask):
    """Index of the least upper bound of mask, or None."""
    uppers = []
    for u in range(n):
        ok = True
        m = mask
        while m:
            j = (m & -m).bit_length() - 1
            m &= m - 1
            if not (rows[j] >> u) & 1:
                ok = False
                break
        if ok:
            uppers.append(u)
    for u in uppers:
        if all((rows[u] >> v) & 1 for v in uppers):
            return u
    return None


def is_chainmail_every_mail(n, rows):
    """The full definition: each nonempty lower-bounded subset has a join."""
    for mask in range(1, 1 << n):
        if lower_bound_mask(n, rows, mask) and \
                least_upper_bound(n, rows, mask) is None:
            return False
    return True


def mail_component_count(n, rows, mask):
    """Components of mask under the shared-lower-bound relation."""
    members = [i for i in range(n) if (mask >> i) & 1]
    parent = {i: i for i in members}

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for a, b in combinations(members, 2):
        if lower_bound_mask(n, rows, (1 << a) | (1 << b)):
            parent[find(a)] = find(b)
    return len({find(i) for i in members})


# -- lattice-side references ---------------------------------------------------

def separated_subsets(n, meets, bottom):
    """All separated subsets as masks, by filtering every subset."""
    out = []
    for mask in range(1 << n):
        members = [i for i in range(n) if (mask >> i) & 1]
        if bottom in members:
            continue
        if all(meets[a][b] == bottom for a, b in combinations(members, 2)):
            out.append(mask)
    return out


# -- graphs and connectivity spaces --------------------------------------------

def graph_connected_subsets(n, edges):
    """Masks of nonempty connected vertex subsets, by growing one vertex."""
    out = []
    for mask in range(1, 1 << n):
        start = mask & -mask
        seen = start
        changed = True
        while changed:
            changed = False
            for a, b in edges:
                bit_a, bit_b = 1 << a, 1 << b
                if bit_a & mask and bit_b & mask:
                    if seen & bit_a and not seen & bit_b:
                        seen |= bit_b
                        changed = True
                    elif seen & bit_b and not seen & bit_a:
                        seen |= bit_a
                        changed = True
        if seen == mask:
            out.append(mask)
    return out


def union_closure_holds(family_masks):
    """The unabridged axiom: every overlapping subfamily unions back in.

    Exponential in the family size, so callers keep the family small.
    """
    masks = sorted(set(family_masks))
    present = set(masks)
    k = len(masks)
    for sub in range(1, 1 << k):
        chosen = [masks[i] for i in range(k) if (sub >> i) & 1]
        common = chosen[0]
        union = 0
        for m in chosen:
            common &= m
            union |= m
        if common and union not in present:
            return False
    return True


# -- count transforms -----------------------------------------------------------

def euler_transform(a):
    """b where structures counted by b are multisets of connected ones (a).

    a and b are 1-indexed sequences given as lists starting at n=1.
    """
    n = len(a)
    c = [0] * (n + 1)
    for m in range(1, n + 1):
        c[m] = sum(d * a[d - 1] for d in range(1, m + 1) if m % d == 0)
    b = [0] * (n + 1)
    b[0] = 1
    for m in range(1, n + 1):
        total = c[m] + sum(c[k] * b[m - k] for k in range(1, m))
        b[m] = total // m
    return b[1:]


def downset_masks(n, rows):
    out = []
    for mask in range(1 << n):
        ok = True
        m = mask
        while m and ok:
            j = (m & -m).bit_length() - 1
            m &= m - 1
            for i in range(n):
                if (rows[i] >> j) & 1 and not (mask >> i) & 1:
                    ok = False
                    break
        if ok:
            out.append(mask)
    return out
