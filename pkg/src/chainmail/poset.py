"""Finite posets over element indices 0..n-1, stored as dense bit tables.

``above[i]`` is the bitmask of every j with i <= j (including i itself);
``below`` is its transpose.  All order queries reduce to mask arithmetic,
which keeps the exhaustive constructions elsewhere in the package fast
enough to run at desk scale.  Instances are immutable after construction
and safe to share between workers.
"""

from . import config
from .canonical import canonical_labeling, iter_bits, transpose
from .errors import AxiomViolation, CycleDetected, EmptyInput, SizeBudgetExceeded


def mask_of(members):
    """Pack an iterable of element indices into a bitmask."""
    m = 0
    for i in members:
        m |= 1 << i
    return m


def set_of(mask):
    """Unpack a bitmask into a frozenset of element indices."""
    return frozenset(iter_bits(mask))


class Poset:
    """An immutable finite poset.

    The constructor trusts its argument: ``above`` must already be a valid
    reflexive-transitive up-set table.  Use :func:`validate_poset` for
    anything that arrives from outside the package.
    """

    __slots__ = ("n", "above", "below", "labels", "_code", "_perm")

    def __init__(self, above, labels=None):
        self.n = len(above)
        self.above = tuple(above)
        self.below = tuple(transpose(self.n, above))
        if labels is not None:
            labels = tuple(str(x) for x in labels)
            if len(labels) != self.n:
                raise AxiomViolation("label-count", (len(labels), self.n))
            if len(set(labels)) != self.n:
                raise AxiomViolation("label-distinctness", labels)
        self.labels = labels
        self._code = None
        self._perm = None

    def __repr__(self):
        return f"Poset(n={self.n}, covers={self.covers()})"

    def __eq__(self, other):
        return (
            isinstance(other, Poset)
            and self.above == other.above
            and self.labels == other.labels
        )

    def __hash__(self):
        return hash((self.above, self.labels))

    def leq(self, i, j):
        return (self.above[i] >> j) & 1 == 1

    def full_mask(self):
        return (1 << self.n) - 1

    def label_of(self, i):
        return self.labels[i] if self.labels is not None else str(i)

    def index_of(self, name):
        name = str(name)
        if self.labels is not None:
            try:
                return self.labels.index(name)
            except ValueError:
                raise KeyError(name) from None
        i = int(name)
        if not 0 <= i < self.n:
            raise KeyError(name)
        return i

    def covers(self):
        """Transitive reduction as a lexicographically sorted pair list."""
        out = []
        for i in range(self.n):
            strictly_above = self.above[i] & ~(1 << i)
            for j in iter_bits(strictly_above):
                # i -< j iff nothing sits strictly between them
                between = strictly_above & self.below[j] & ~(1 << j)
                if not between:
                    out.append((i, j))
        out.sort()
        return out

    def maximal_mask(self):
        m = 0
        for i in range(self.n):
            if self.above[i] == 1 << i:
                m |= 1 << i
        return m

    def minimal_mask(self):
        m = 0
        for i in range(self.n):
            if self.below[i] == 1 << i:
                m |= 1 << i
        return m

    def lower_mask(self, mask):
        """Bitmask of common lower bounds of the elements in ``mask``."""
        out = self.full_mask()
        for i in iter_bits(mask):
            out &= self.below[i]
        return out

    def upper_mask(self, mask):
        out = self.full_mask()
        for i in iter_bits(mask):
            out &= self.above[i]
        return out

    def down_closure(self, mask):
        out = 0
        for i in iter_bits(mask):
            out |= self.below[i]
        return out

    def up_closure(self, mask):
        out = 0
        for i in iter_bits(mask):
            out |= self.above[i]
        return out

    def least_of(self, mask):
        """Least element of the sub-set ``mask``, or None."""
        for i in iter_bits(mask):
            if self.above[i] & mask == mask:
                return i
        return None

    def greatest_of(self, mask):
        for i in iter_bits(mask):
            if self.below[i] & mask == mask:
                return i
        return None

    def join_mask(self, mask):
        """Least upper bound of ``mask``, or None.  Empty mask gives bottom."""
        return self.least_of(self.upper_mask(mask))

    def meet_mask(self, mask):
        return self.greatest_of(self.lower_mask(mask))

    def bottom(self):
        return self.least_of(self.full_mask())

    def top(self):
        return self.greatest_of(self.full_mask())

    def is_down_closed(self, mask):
        return self.down_closure(mask) == mask

    def relabel(self, perm):
        """New poset with element i renamed to perm[i]."""
        above = [0] * self.n
        for i in range(self.n):
            row = 0
            for j in iter_bits(self.above[i]):
                row |= 1 << perm[j]
            above[perm[i]] = row
        labels = None
        if self.labels is not None:
            labels = [""] * self.n
            for i in range(self.n):
                labels[perm[i]] = self.labels[i]
        return Poset(above, labels)

    def canonical(self):
        """(code, perm) where perm maps old index -> canonical position."""
        if self._code is None:
            self._code, self._perm = canonical_labeling(self.n, self.above)
        return self._code, self._perm


def validate_poset(size, pairs, mode="covers", labels=None, budget=None):
    """Build a Poset from untrusted data.

    mode="covers": pairs are strict covers (a, b) with a below b; the
    digraph must be acyclic and leq becomes its reflexive-transitive
    closure.  mode="full-relation": pairs are the entire leq relation and
    all three poset axioms are checked.
    """
    cap = config.poset_cap(budget)
    if size > cap:
        raise SizeBudgetExceeded("poset", size, cap)
    if size < 0:
        raise AxiomViolation("size", size)
    pairs = [(int(a), int(b)) for a, b in pairs]
    for a, b in pairs:
        if not (0 <= a < size and 0 <= b < size):
            raise AxiomViolation("element-range", (a, b))

    if mode == "covers":
        succ = [0] * size
        for a, b in pairs:
            if a == b:
                raise CycleDetected([a])
            succ[a] |= 1 << b
        order = _topological_order(size, succ)
        if order is None:
            raise CycleDetected(_find_cycle(size, succ))
        above = [0] * size
        for i in reversed(order):
            row = 1 << i
            for j in iter_bits(succ[i]):
                row |= above[j]
            above[i] = row
        return Poset(above, labels)

    if mode == "full-relation":
        above = [0] * size
        for a, b in pairs:
            above[a] |= 1 << b
        for i in range(size):
            if not (above[i] >> i) & 1:
                raise AxiomViolation("reflexivity", (i, i))
        below = transpose(size, above)
        for i in range(size):
            bad = above[i] & below[i] & ~(1 << i)
            if bad:
                j = next(iter_bits(bad))
                raise AxiomViolation("antisymmetry", (i, j))
        for i in range(size):
            for j in iter_bits(above[i]):
                missing = above[j] & ~above[i]
                if missing:
                    k = next(iter_bits(missing))
                    raise AxiomViolation("transitivity", (i, k))
        return Poset(above, labels)

    raise ValueError(f"unknown mode: {mode!r}")


def _topological_order(size, succ):
    indeg = [0] * size
    for i in range(size):
        for j in iter_bits(succ[i]):
            indeg[j] += 1
    ready = [i for i in range(size) if indeg[i] == 0]
    order = []
    while ready:
        i = ready.pop()
        order.append(i)
        for j in iter_bits(succ[i]):
            indeg[j] -= 1
            if indeg[j] == 0:
                ready.append(j)
    return order if len(order) == size else None


def _find_cycle(size, succ):
    # walk forward from a node on a cycle until a repeat appears
    state = [0] * size  # 0 fresh, 1 active, 2 done
    stack = []

    def dfs(v):
        state[v] = 1
        stack.append(v)
        for w in iter_bits(succ[v]):
            if state[w] == 1:
                return stack[stack.index(w):]
            if state[w] == 0:
                found = dfs(w)
                if found is not None:
                    return found
        stack.pop()
        state[v] = 2
        return None

    for v in range(size):
        if state[v] == 0:
            cyc = dfs(v)
            if cyc is not None:
                return cyc
    return []


# -- convenience wrappers over sets of indices ------------------------------

def covers(p):
    return p.covers()


def lower_bounds(p, s):
    members = frozenset(s)
    if not members:
        raise EmptyInput("lower_bounds of the empty set is the whole poset")
    return set_of(p.lower_mask(mask_of(members)))


def upper_bounds(p, s):
    members = frozenset(s)
    if not members:
        raise EmptyInput("upper_bounds of the empty set is the whole poset")
    return set_of(p.upper_mask(mask_of(members)))


def join_of(p, s):
    return p.join_mask(mask_of(s))


def meet_of(p, s):
    return p.meet_mask(mask_of(s))


def canonical_form(p):
    return p.canonical()


def is_isomorphic(p, q):
    return p.n == q.n and p.canonical()[0] == q.canonical()[0]


# -- interchange -------------------------------------------------------------

def to_json_dict(p):
    names = [p.label_of(i) for i in range(p.n)]
    cover_names = sorted((names[a], names[b]) for a, b in p.covers())
    return {
        "elements": sorted(names),
        "covers": [list(pair) for pair in cover_names],
    }


def from_json_dict(data, budget=None):
    try:
        elements = list(data["elements"])
        cover_items = list(data["covers"])
    except (KeyError, TypeError) as exc:
        raise AxiomViolation("json-shape", str(exc)) from None
    names = [str(x) for x in elements]
    if len(set(names)) != len(names):
        raise AxiomViolation("label-distinctness", names)
    index = {name: i for i, name in enumerate(names)}
    pairs = []
    for item in cover_items:
        a, b = item
        a, b = str(a), str(b)
        if a not in index or b not in index:
            raise AxiomViolation("element-range", (a, b))
        pairs.append((index[a], index[b]))
    return validate_poset(len(names), pairs, mode="covers", labels=names,
                          budget=budget)


def heights(p):
    """Longest-chain-from-a-minimal-element height of every element."""
    h = [0] * p.n
    order = sorted(range(p.n), key=lambda i: bin(p.below[i]).count("1"))
    for i in order:
        strictly = p.below[i] & ~(1 << i)
        h[i] = max((h[j] + 1 for j in iter_bits(strictly)), default=0)
    return h


def to_dot(p, name="poset"):
    """Hasse diagram in DOT, one edge per cover, ranked by height."""
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=ellipse];"]
    for i in range(p.n):
        lines.append(f'  e{i} [label="{p.label_of(i)}"];')
    for a, b in p.covers():
        lines.append(f"  e{a} -> e{b};")
    h = heights(p)
    for level in sorted(set(h)):
        same = " ".join(f"e{i};" for i in range(p.n) if h[i] == level)
        lines.append(f"  {{ rank=same; {same} }}")
    lines.append("}")
    return "\n".join(lines) + "\n"
