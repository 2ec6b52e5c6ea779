"""Isomorph-free generation of finite posets and chainmails.

The generator is a canonical-augmentation walk: every poset on k+1
elements arises from a poset on k elements by adding one new maximal
element over a down-closed subset, and a candidate child is kept only
when the element just added is interchangeable, under the child's own
automorphisms, with the child's canonically distinguished maximal
element.  Each isomorphism class is therefore produced exactly once,
with memory proportional to the recursion depth.

Counting runs keep the whole tree: a poset that is not a chainmail can
still have chainmail descendants (later elements may supply the missing
joins), so structure filters are applied to the visited posets, never
used for pruning.
"""

import json
import os
from dataclasses import dataclass
from multiprocessing import get_context

from . import config
from .canonical import canonical_labeling, canonical_maximal_position
from .errors import AxiomViolation, SizeBudgetExceeded
from .mails import Chainmail, iter_td_masks, poset_is_chainmail
from .poset import Poset, to_dot

FILTERS = ("all-posets", "chainmails", "mail-connected-chainmails")
EMIT_MODES = ("count-only", "catalog")

_SPLIT_SIZE = 4  # seed size at which the tree is handed to workers


@dataclass(frozen=True)
class EnumerationTask:
    """What to generate: target size, structure filter, workers, output."""

    size: int
    filter: str = "all-posets"
    jobs: int = 1
    emit: str = "count-only"

    def __post_init__(self):
        if self.size < 1:
            raise AxiomViolation("task-size", self.size)
        if self.jobs < 1:
            raise AxiomViolation("task-jobs", self.jobs)
        if self.filter not in FILTERS:
            raise AxiomViolation("task-filter", self.filter)
        if self.emit not in EMIT_MODES:
            raise AxiomViolation("task-emit", self.emit)


@dataclass(frozen=True)
class CatalogEntry:
    code: str
    poset: Poset
    chainmail: bool
    mail_connected: bool
    d_size: object
    filename: str


def _check_size(n, budget):
    cap = config.enum_cap(budget)
    if n > cap:
        raise SizeBudgetExceeded("enumeration size", n, cap)


def _down_closed_masks(p):
    return [m for m in range(1 << p.n) if p.is_down_closed(m)]


def _downset_orbit_reps(p):
    """One down-closed subset per automorphism orbit of the parent."""
    reps = []
    seen = set()
    for mask in _down_closed_masks(p):
        colors = [(mask >> i) & 1 for i in range(p.n)]
        code, _ = canonical_labeling(p.n, p.above, colors)
        if code not in seen:
            seen.add(code)
            reps.append(mask)
    return reps


def _extend(p, dmask):
    """Add a new maximal element above exactly the down-closed ``dmask``."""
    bit = 1 << p.n
    above = [row | bit if (dmask >> i) & 1 else row
             for i, row in enumerate(p.above)]
    above.append(bit)
    return Poset(above)


def _accepted(child):
    """Keep the child only if the new element is canonically removable.

    The new element sits at the last index and is maximal; it survives
    when it lies in the same automorphism orbit as the element occupying
    the canonically distinguished maximal position, which the code of
    the child determines without reference to labels.
    """
    n = child.n
    code, perm = child.canonical()
    pos = canonical_maximal_position(n, child.above, perm)
    z = n - 1
    if perm[z] == pos:
        return True
    w = perm.index(pos)
    mark_z = [0] * n
    mark_z[z] = 1
    mark_w = [0] * n
    mark_w[w] = 1
    return (canonical_labeling(n, child.above, mark_z)[0]
            == canonical_labeling(n, child.above, mark_w)[0])


def _walk(p, n):
    """Yield ``p`` and every accepted descendant up to size ``n``."""
    yield p
    if p.n < n:
        for dmask in _downset_orbit_reps(p):
            child = _extend(p, dmask)
            if _accepted(child):
                yield from _walk(child, n)


def _walk_from_unit(n):
    if n >= 1:
        yield from _walk(Poset((1,)), n)


def enumerate_posets(n, budget=None):
    """One representative per isomorphism class of posets on n elements."""
    _check_size(n, budget)
    if n == 0:
        yield Poset(())
        return
    for p in _walk_from_unit(n):
        if p.n == n:
            yield p


def _mail_connected(p):
    if p.n == 0:
        return False
    return len(Chainmail(p).components_of(p.full_mask())) == 1


def _passes(p, which):
    if which == "all-posets":
        return True
    if not poset_is_chainmail(p):
        return False
    return which == "chainmails" or _mail_connected(p)


def _count_subtrees(args):
    above_rows, n, which = args
    counts = {}
    for rows in above_rows:
        seed = Poset(rows)
        for dmask in _downset_orbit_reps(seed):
            child = _extend(seed, dmask)
            if _accepted(child):
                for q in _walk(child, n):
                    if _passes(q, which):
                        counts[q.n] = counts.get(q.n, 0) + 1
    return counts


def _split_seeds(task):
    """Seeds for the workers plus counts for the sizes handled inline."""
    k0 = min(task.size, _SPLIT_SIZE)
    counts = {s: 0 for s in range(1, task.size + 1)}
    seeds = []
    for p in _walk_from_unit(k0):
        if _passes(p, task.filter):
            counts[p.n] += 1
        if p.n == k0:
            seeds.append(p.above)
    return counts, seeds


def count_chainmails(task, budget=None):
    """Isomorphism-class counts per size, 1..task.size, under the filter."""
    _check_size(task.size, budget)
    if task.jobs == 1 or task.size <= _SPLIT_SIZE:
        counts = {s: 0 for s in range(1, task.size + 1)}
        for p in _walk_from_unit(task.size):
            if _passes(p, task.filter):
                counts[p.n] += 1
        return counts
    counts, seeds = _split_seeds(task)
    chunks = [(seeds[w::task.jobs], task.size, task.filter)
              for w in range(task.jobs)]
    with get_context("fork").Pool(task.jobs) as pool:
        for part in pool.map(_count_subtrees, chunks):
            for size, c in part.items():
                counts[size] += c
    return counts


def _entry_fields(p):
    chain = poset_is_chainmail(p)
    connected = chain and _mail_connected(p)
    d_size = None
    if chain:
        d_size = sum(1 for _ in iter_td_masks(Chainmail(p)))
    return chain, connected, d_size


def _collect_entries(args):
    above_rows, n, which = args
    out = []
    for rows in above_rows:
        seed = Poset(rows)
        for dmask in _downset_orbit_reps(seed):
            child = _extend(seed, dmask)
            if _accepted(child):
                for q in _walk(child, n):
                    if _passes(q, which):
                        out.append((q.above, q.canonical()[0].hex()))
    return out


def emit_catalog(task, out_dir, budget=None):
    """Write one DOT file per structure plus a JSON-lines manifest.

    Files are named by size and by rank within the size (ordered by
    canonical code), so a rerun reproduces the same tree byte for byte.
    Returns the entries in file order.
    """
    _check_size(task.size, budget)
    raw = []
    if task.jobs == 1 or task.size <= _SPLIT_SIZE:
        for p in _walk_from_unit(task.size):
            if _passes(p, task.filter):
                raw.append((p.above, p.canonical()[0].hex()))
    else:
        k0 = min(task.size, _SPLIT_SIZE)
        seeds = []
        for p in _walk_from_unit(k0):
            if _passes(p, task.filter):
                raw.append((p.above, p.canonical()[0].hex()))
            if p.n == k0:
                seeds.append(p.above)
        chunks = [(seeds[w::task.jobs], task.size, task.filter)
                  for w in range(task.jobs)]
        with get_context("fork").Pool(task.jobs) as pool:
            for part in pool.map(_collect_entries, chunks):
                raw.extend(part)
    raw.sort(key=lambda item: (len(item[0]), item[1]))
    os.makedirs(out_dir, exist_ok=True)
    entries = []
    rank = {}
    for rows, code in raw:
        p = Poset(rows)
        i = rank.get(p.n, 0)
        rank[p.n] = i + 1
        chain, connected, d_size = _entry_fields(p)
        filename = f"poset-n{p.n}-{i:04d}.dot"
        with open(os.path.join(out_dir, filename), "w") as fh:
            fh.write(to_dot(p, name=f"p{p.n}_{i}"))
        entries.append(CatalogEntry(code, p, chain, connected, d_size,
                                    filename))
    with open(os.path.join(out_dir, "manifest.jsonl"), "w") as fh:
        for e in entries:
            record = {"code": e.code, "n": e.poset.n, "chainmail": e.chainmail,
                      "mail_connected": e.mail_connected, "d_size": e.d_size,
                      "file": e.filename}
            fh.write(json.dumps(record) + "\n")
    return entries
