"""Chainmails: posets in which every mail has a join.

A mail is a nonempty set of elements with a common lower bound.  The
validation criterion only looks at 2-element mails: in a finite poset
where every 2-element mail has a join, the join of an arbitrary mail can
be built by folding pairwise joins (each intermediate pair shares the
mail's lower bound), and the fold is the least upper bound.  The test
suite cross-checks this against the exponential all-mails definition.
"""

from dataclasses import dataclass

from . import config
from .canonical import iter_bits
from .errors import (
    AxiomViolation,
    NotAChainmail,
    NotMailConnected,
    SizeBudgetExceeded,
    TheoremViolation,
)
from .lattice import CompleteLattice
from .poset import Poset, mask_of, set_of


class Chainmail:
    """A validated chainmail; build with :func:`as_chainmail`."""

    __slots__ = ("poset", "n", "_overlap")

    def __init__(self, poset):
        self.poset = poset
        self.n = poset.n
        self._overlap = None

    def __repr__(self):
        return f"Chainmail(n={self.n})"

    def overlap(self):
        """overlap()[i] = mask of j whose down-set meets i's down-set."""
        if self._overlap is None:
            below = self.poset.below
            table = []
            for i in range(self.n):
                bi = below[i]
                row = 0
                for j in range(self.n):
                    if bi & below[j]:
                        row |= 1 << j
                table.append(row)
            self._overlap = tuple(table)
        return self._overlap

    def components_of(self, mask):
        """Maximal mail-connected subsets of ``mask``, as sorted masks."""
        overlap = self.overlap()
        out = []
        rest = mask
        while rest:
            low = rest & -rest
            comp = low
            frontier = low
            rest ^= low
            while frontier:
                grown = 0
                for x in iter_bits(frontier):
                    grown |= overlap[x] & rest
                rest &= ~grown
                comp |= grown
                frontier = grown
            out.append(comp)
        out.sort()
        return out


def as_chainmail(p):
    """Validate that Poset ``p`` is a chainmail.

    Checks every 2-element mail for a join; the witness on failure is the
    first failing pair in index order.  The empty poset passes vacuously.
    """
    if not isinstance(p, Poset):
        raise TypeError(f"expected Poset, got {type(p).__name__}")
    for i in range(p.n):
        bi = p.below[i]
        for j in range(i + 1, p.n):
            if bi & p.below[j] and p.join_mask((1 << i) | (1 << j)) is None:
                raise NotAChainmail((i, j))
    return Chainmail(p)


def poset_is_chainmail(p):
    """Pairwise criterion as a predicate, for enumeration filters."""
    for i in range(p.n):
        bi = p.below[i]
        for j in range(i + 1, p.n):
            if bi & p.below[j] and p.join_mask((1 << i) | (1 << j)) is None:
                return False
    return True


def is_mail(g, s):
    mask = mask_of(s)
    if not mask:
        return False
    return g.poset.lower_mask(mask) != 0


def mail_components(g, x):
    return tuple(set_of(m) for m in g.components_of(mask_of(x)))


def join_of_mail_connected(g, c):
    """Join of a mail-connected set, built by hierarchical pairwise joins.

    Starts from one element and repeatedly joins in an element whose
    down-set meets the accumulated join's down-set; every such pair is a
    2-element mail, so its join exists.  The result is verified against
    the scan-based least upper bound.
    """
    mask = mask_of(c)
    comps = g.components_of(mask)
    if len(comps) != 1:
        raise NotMailConnected(tuple(set_of(m) for m in comps))
    p = g.poset
    rest = mask
    low = rest & -rest
    acc = low.bit_length() - 1
    rest ^= low
    while rest:
        nxt = None
        for x in iter_bits(rest):
            if p.below[acc] & p.below[x]:
                nxt = x
                break
        if nxt is None:
            raise TheoremViolation("hierarchical-join-stuck", (set_of(mask), acc))
        j = p.join_mask((1 << acc) | (1 << nxt))
        if j is None:
            raise TheoremViolation("hierarchical-join-missing", (acc, nxt))
        acc = j
        rest ^= 1 << nxt
    lub = p.join_mask(mask)
    if lub != acc:
        raise TheoremViolation("hierarchical-join-mismatch", (set_of(mask), acc, lub))
    return acc


def is_totally_disconnected(g, s):
    mask = mask_of(s)
    overlap = g.overlap()
    for i in iter_bits(mask):
        if overlap[i] & mask & ~(1 << i):
            return False
    return True


@dataclass(frozen=True)
class TotallyDisconnectedSet:
    owner: Chainmail
    members: frozenset

    def mask(self):
        return mask_of(self.members)


@dataclass(frozen=True)
class Subchainmail:
    owner: Chainmail
    members: frozenset

    def mask(self):
        return mask_of(self.members)


def _x_star_mask(g, mask):
    out = 0
    for comp in g.components_of(mask):
        out |= 1 << join_of_mail_connected(g, set_of(comp))
    return out


def x_star(g, x):
    """Joins of the maximal mail-connected subsets of ``x``.

    Totally disconnected sets are fixed points; for a subchainmail the
    result's down-closure is the subchainmail itself.  For other inputs
    the component joins can fail to be totally disconnected, in which
    case the promised result type is uninhabitable and an AxiomViolation
    is raised carrying the offending join pair.
    """
    result = _x_star_mask(g, mask_of(x))
    members = set_of(result)
    if not is_totally_disconnected(g, members):
        raise AxiomViolation("x-star-not-totally-disconnected",
                             (frozenset(x), members))
    return TotallyDisconnectedSet(g, members)


def is_subchainmail(g, x):
    """Down-closed and closed under joins of contained mails.

    The closure check only needs 2-element mails: joins of bigger mails
    inside a down-closed set are folds of pairwise joins, and down-closure
    puts each mail's lower bound inside the set.
    """
    mask = mask_of(x)
    p = g.poset
    if not p.is_down_closed(mask):
        return False
    for i in iter_bits(mask):
        bi = p.below[i]
        for j in iter_bits(mask & ~((1 << (i + 1)) - 1)):
            if bi & p.below[j]:
                jm = p.join_mask((1 << i) | (1 << j))
                if jm is None or not (mask >> jm) & 1:
                    return False
    return True


def _generate_mask(g, mask):
    p = g.poset
    cur = p.down_closure(mask)
    while True:
        added = 0
        for i in iter_bits(cur):
            bi = p.below[i]
            for j in iter_bits(cur & ~((1 << (i + 1)) - 1)):
                if bi & p.below[j]:
                    jm = p.join_mask((1 << i) | (1 << j))
                    if jm is None:
                        raise TheoremViolation("subchainmail-join-missing", (i, j))
                    if not (cur >> jm) & 1:
                        added |= 1 << jm
        if not added:
            return cur
        cur = p.down_closure(cur | added)


def subchainmail_generated(g, x):
    """Least subchainmail containing ``x`` (fixpoint of down-closure and
    pairwise mail joins)."""
    return Subchainmail(g, set_of(_generate_mask(g, mask_of(x))))


def _maximal_of(p, mask):
    out = 0
    for i in iter_bits(mask):
        if p.above[i] & mask == 1 << i:
            out |= 1 << i
    return out


def iter_td_masks(g):
    """All totally disconnected sets of ``g`` as bitmasks, by backtracking."""
    overlap = g.overlap()
    full = g.poset.full_mask()

    def walk(cur, allowed):
        yield cur
        rest = allowed
        while rest:
            low = rest & -rest
            e = low.bit_length() - 1
            rest ^= low
            yield from walk(cur | low, rest & ~overlap[e])

    yield from walk(0, full)


@dataclass(frozen=True)
class DLattice:
    """The complete lattice of totally disconnected sets of a chainmail.

    ``td_sets[i]`` is lattice element i as a carrier bitmask and
    ``subchainmails[i]`` its down-closure; the two views are the dictionary
    of the td-set/subchainmail bijection.  Order: D1 <= D2 iff every
    member of D1 lies below some member of D2.
    """
    chainmail: Chainmail
    lattice: CompleteLattice
    td_sets: tuple
    subchainmails: tuple

    def index_of(self, members):
        return self.td_sets.index(mask_of(members))


def d_lattice(g, cap=None):
    """Materialize the lattice of totally disconnected sets.

    Joins go through the dictionary (generate the subchainmail of the
    union of down-closures, take its maximal elements); meets intersect
    down-closures.  Cost is quadratic in the number of td sets, which is
    worst-case exponential in the carrier; the family cap guards that.
    """
    cap = config.family_cap(cap)
    p = g.poset
    tds = []
    for m in iter_td_masks(g):
        tds.append(m)
        if len(tds) > cap:
            raise SizeBudgetExceeded("totally-disconnected family", len(tds), cap)
    tds.sort()
    k = len(tds)
    index = {m: i for i, m in enumerate(tds)}
    down = [p.down_closure(m) for m in tds]

    above = [0] * k
    for i in range(k):
        mi = tds[i]
        row = 0
        for j in range(k):
            if mi & down[j] == mi:
                row |= 1 << j
        above[i] = row

    joins = [[0] * k for _ in range(k)]
    meets = [[0] * k for _ in range(k)]
    for i in range(k):
        joins[i][i] = meets[i][i] = i
        for j in range(i + 1, k):
            if above[i] >> j & 1:       # i <= j
                lo, hi = i, j
            elif above[j] >> i & 1:     # j <= i
                lo, hi = j, i
            else:
                lo_mask = _maximal_of(p, down[i] & down[j])
                hi_mask = _maximal_of(p, _generate_mask(g, down[i] | down[j]))
                try:
                    lo = index[lo_mask]
                    hi = index[hi_mask]
                except KeyError:
                    raise TheoremViolation(
                        "td-subchainmail-dictionary",
                        (set_of(tds[i]), set_of(tds[j]))) from None
            meets[i][j] = meets[j][i] = lo
            joins[i][j] = joins[j][i] = hi

    labels = ["{" + ",".join(sorted((p.label_of(e) for e in iter_bits(m)))) + "}"
              for m in tds]
    dposet = Poset(above, labels)
    bottom = index[0]
    top = bottom
    for i in range(k):
        top = joins[top][i]
    lat = CompleteLattice(dposet, [tuple(r) for r in joins],
                          [tuple(r) for r in meets], bottom, top)
    return DLattice(g, lat, tuple(tds), tuple(down))
