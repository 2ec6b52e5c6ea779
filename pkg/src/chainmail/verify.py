"""Machine verification suites for the theory's laws.

Each suite sweeps an exhaustively enumerated population of small posets,
lattices or chainmails and checks one body of claims on every member,
returning a report rather than raising, so a failing law produces a
named witness instead of a stack trace.  The command line and the test
suite both run these.
"""

from dataclasses import dataclass, field

from . import category, lattice, mails
from .enumeration import enumerate_posets
from .errors import NotALattice, TheoremViolation
from .lattice import as_complete_lattice
from .mails import Chainmail, poset_is_chainmail


@dataclass
class SuiteReport:
    name: str
    sizes: str
    checked: int = 0
    violations: list = field(default_factory=list)

    def ok(self):
        return not self.violations

    def record(self, structure, law, witness):
        self.violations.append(
            {"structure": structure, "law": law, "witness": witness})


def _poset_name(p):
    return f"poset(n={p.n}, covers={p.covers()})"


def _lattices_up_to(n):
    for size in range(1, n + 1):
        for p in enumerate_posets(size):
            try:
                yield as_complete_lattice(p)
            except NotALattice:
                continue


def _chainmails_up_to(n):
    for size in range(1, n + 1):
        for p in enumerate_posets(size):
            if poset_is_chainmail(p):
                yield Chainmail(p)


def suite_connectivity_conditions(max_size=None):
    """Implications between the four element conditions, exhaustively.

    On every complete lattice arising from a poset of bounded size:
    separated-join-prime implies each of the other three conditions,
    disjoint-join-prime and separated-join-member each imply
    disjoint-join-indecomposable, and on locally connected lattices
    disjoint-join-indecomposable implies separated-join-prime, closing
    the circle.
    """
    bound = max_size or 6
    report = SuiteReport("connectivity-conditions", f"lattices from n<={bound}")
    implications = [
        ("separated-join-prime", "disjoint-join-prime"),
        ("separated-join-prime", "separated-join-member"),
        ("disjoint-join-prime", "disjoint-join-indecomposable"),
        ("separated-join-member", "disjoint-join-indecomposable"),
    ]
    for lat in _lattices_up_to(bound):
        report.checked += 1
        name = _poset_name(lat.poset)
        locally = lattice.is_locally_connected(lat)
        for a in range(lat.n):
            held = {c: lattice.check_condition(lat, a, c)
                    for c in lattice.CONDITIONS}
            for stronger, weaker in implications:
                if held[stronger] and not held[weaker]:
                    report.record(name, f"{stronger} => {weaker}", a)
            if locally and held["disjoint-join-indecomposable"] \
                    and not held["separated-join-prime"]:
                report.record(
                    name,
                    "locally connected: disjoint-join-indecomposable => "
                    "separated-join-prime",
                    a)
    return report


def suite_local_connectivity(max_size=None):
    """The separation-poset classification and the counit, together.

    The join map out of the separation poset must be an isomorphism
    exactly when it is surjective, exactly when the lattice is locally
    connected; and the counit must be an isomorphism under the same
    condition.  The classification helper re-checks its own trichotomy
    and raises on mismatch, which the suite records as a violation.
    """
    bound = max_size or 6
    report = SuiteReport("local-connectivity", f"lattices from n<={bound}")
    for lat in _lattices_up_to(bound):
        report.checked += 1
        name = _poset_name(lat.poset)
        locally = lattice.is_locally_connected(lat)
        try:
            verdict = lattice.nu_classification(lat)
        except TheoremViolation as e:
            report.record(name, "separation classification", e.witness)
            continue
        if (verdict == "iso") != locally:
            report.record(name, "join-map iso <=> locally connected",
                          verdict)
        try:
            eps_iso = category.is_epsilon_iso(lat)
        except TheoremViolation as e:
            report.record(name, "counit construction", e.witness)
            continue
        if eps_iso != locally:
            report.record(name, "counit iso <=> locally connected", eps_iso)
    return report


def suite_unit_counit(max_size=None):
    """Unit and counit are isomorphisms where the theory says they are.

    Every chainmail embeds isomorphically, via the unit, into the
    connected elements of its lattice of totally disconnected sets; and
    every locally connected lattice is recovered isomorphically, via
    the counit, from its chainmail of connected elements.
    """
    bound = max_size or 6
    report = SuiteReport("unit-counit",
                         f"chainmails and lattices from n<={bound}")
    for g in _chainmails_up_to(bound):
        report.checked += 1
        name = _poset_name(g.poset)
        try:
            category.unit_eta(g)
        except TheoremViolation as e:
            report.record(name, "unit is an order-isomorphism",
                          (e.law, e.witness))
    for lat in _lattices_up_to(bound):
        if not lattice.is_locally_connected(lat):
            continue
        report.checked += 1
        name = _poset_name(lat.poset)
        try:
            if not category.is_epsilon_iso(lat):
                report.record(name, "counit iso on locally connected", None)
        except TheoremViolation as e:
            report.record(name, "counit construction", e.witness)
    return report


def check_adjunction_bijection(g, lat, weak=False, cap=None):
    """Hom-set bijection for one pair, by explicit mutually inverse maps.

    Transposes every chainmail morphism into the connected elements of
    the lattice to a lattice map out of the totally disconnected sets
    (compose the td-set functor's image with the counit), transposes
    every lattice map back (compose the unit with the connected-element
    functor's image), and checks the two round trips are identities and
    the transposes land inside the enumerated hom sets.  Returns the
    common hom-set size; raises TheoremViolation on any mismatch.
    """
    k = category.k_chainmail(lat)
    d = mails.d_lattice(g, cap)
    left = [tuple(t) for t in
            category.chainmail_morphism_tables(g, k.chainmail)]
    right = [tuple(t) for t in
             category.connectivity_hom_tables(d.lattice, lat, weak=weak)]
    right_set = {tuple(t) for t in right}
    left_set = {tuple(t) for t in left}
    dk = mails.d_lattice(k.chainmail, cap)
    eps = category.counit_epsilon(lat, cap)
    eta = category.unit_eta(g, d=d, cap=cap)
    seen_right = set()
    for table in left:
        f = category.PosetMap(g, k.chainmail, table, "chainmail-morphism")
        df = category.d_on_morphism(f, d1=d, d2=dk, cap=cap)
        transposed = tuple(eps.map.table[df.table[i]]
                           for i in range(len(d.td_sets)))
        if transposed not in right_set:
            raise TheoremViolation("transpose-not-a-hom", (table, transposed))
        seen_right.add(transposed)
        back = category.k_on_morphism(
            category.PosetMap(d.lattice, lat, transposed,
                              "connectivity-hom"))
        roundtrip = tuple(back.table[eta.map.table[x]] for x in range(g.n))
        if roundtrip != tuple(table):
            raise TheoremViolation("transpose-roundtrip", (table, roundtrip))
    if len(seen_right) != len(left):
        raise TheoremViolation("transpose-not-injective",
                               (len(left), len(seen_right)))
    for table in right:
        back = category.k_on_morphism(
            category.PosetMap(d.lattice, lat, table, "connectivity-hom"))
        f_table = tuple(back.table[eta.map.table[x]] for x in range(g.n))
        if f_table not in left_set:
            raise TheoremViolation("untranspose-not-a-hom", (table, f_table))
        f = category.PosetMap(g, k.chainmail, f_table, "chainmail-morphism")
        df = category.d_on_morphism(f, d1=d, d2=dk, cap=cap)
        again = tuple(eps.map.table[df.table[i]]
                      for i in range(len(d.td_sets)))
        if again != tuple(table):
            raise TheoremViolation("untranspose-roundtrip", (table, again))
    if len(left) != len(right):
        raise TheoremViolation("hom-count-mismatch", (len(left), len(right)))
    return len(left)


def suite_adjunction(max_size=None):
    """Hom-set bijection and triangle identities over all small pairs.

    Pairs every enumerated chainmail up to the chainmail bound with
    every enumerated complete lattice one element larger at most,
    checking the explicit bijection (strict and weakened lattice-side
    morphisms) plus both triangle identities.
    """
    g_bound = max_size or 4
    l_bound = (max_size + 1) if max_size else 5
    report = SuiteReport(
        "adjunction", f"chainmails n<={g_bound} x lattices n<={l_bound}")
    gs = list(_chainmails_up_to(g_bound))
    ls = list(_lattices_up_to(l_bound))
    for g in gs:
        gname = _poset_name(g.poset)
        for lat in ls:
            report.checked += 1
            pair = f"{gname} / {_poset_name(lat.poset)}"
            try:
                check_adjunction_bijection(g, lat, weak=False)
                check_adjunction_bijection(g, lat, weak=True)
            except TheoremViolation as e:
                report.record(pair, f"hom bijection ({e.law})", e.witness)
                continue
            try:
                category.check_triangle_identities(g, lat)
            except TheoremViolation as e:
                report.record(pair, f"triangle identity ({e.law})",
                              e.witness)
    return report


def _chainmail_by_all_mails(p):
    """Exponential reference: every mail, of any size, must have a join."""
    for mask in range(1, 1 << p.n):
        if p.lower_mask(mask) and p.join_mask(mask) is None:
            return False
    return True


def suite_pairwise_criterion(max_size=None):
    """The two-element mail test agrees with the full definition.

    A poset is a chainmail when every mail has a join; the quadratic
    test only inspects two-element mails.  This sweeps every poset of
    bounded size and compares the quadratic test against the exponential
    all-mails reference.
    """
    bound = max_size or 6
    report = SuiteReport("pairwise-criterion", f"posets n<={bound}")
    for size in range(1, bound + 1):
        for p in enumerate_posets(size):
            report.checked += 1
            fast = poset_is_chainmail(p)
            slow = _chainmail_by_all_mails(p)
            if fast != slow:
                report.record(_poset_name(p), "pairwise mail test agrees",
                              (fast, slow))
    return report


SUITES = {
    "connectivity-conditions": suite_connectivity_conditions,
    "local-connectivity": suite_local_connectivity,
    "unit-counit": suite_unit_counit,
    "adjunction": suite_adjunction,
    "pairwise-criterion": suite_pairwise_criterion,
}


def run_suite(name, max_size=None):
    try:
        fn = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite: {name!r}") from None
    return fn(max_size=max_size)
