"""Maps between chainmails and between complete lattices, and the passage
back and forth.

Two kinds of structure-preserving map live here.  A chainmail morphism
preserves joins of mails; a connectivity homomorphism between complete
lattices preserves all joins and has a right adjoint preserving joins of
separated sets (the weak variant asks instead that connected elements map
to connected elements).  The D construction turns a chainmail into its
lattice of totally disconnected sets and a chainmail morphism into a
connectivity homomorphism; K cuts a lattice down to its chainmail of
connected elements.  D is left adjoint to K, the unit x -> {x} is an
isomorphism, and the counit D(K(L)) -> L (join the set) is injective.
Everything is checked pointwise at validation time; states the theory
rules out raise TheoremViolation instead of ordinary input errors.
"""

from dataclasses import dataclass
from itertools import product

from .canonical import iter_bits
from .errors import (
    AdjointFailsSeparatedJoins,
    AxiomViolation,
    JoinsNotPreserved,
    MailJoinNotPreserved,
    NotJoinPreserving,
    NotMonotone,
    TheoremViolation,
)
from .lattice import CompleteLattice, as_complete_lattice, iter_separated_masks
from .mails import (
    Chainmail,
    DLattice,
    _generate_mask,
    _x_star_mask,
    as_chainmail,
    d_lattice,
)
from .poset import Poset, from_json_dict, set_of, to_json_dict

ROLES = ("monotone", "chainmail-morphism", "connectivity-hom",
         "weak-connectivity-hom")


@dataclass(frozen=True)
class KChainmail:
    """The chainmail of connected elements of a lattice.

    ``elements[i]`` is the lattice element sitting at carrier index i.
    """
    lattice: CompleteLattice
    chainmail: Chainmail
    elements: tuple

    def index_of(self, lattice_element):
        return self.elements.index(lattice_element)


def carrier_poset(x):
    """The underlying Poset of any structure maps can run between."""
    if isinstance(x, Poset):
        return x
    if isinstance(x, Chainmail):
        return x.poset
    if isinstance(x, CompleteLattice):
        return x.poset
    if isinstance(x, KChainmail):
        return x.chainmail.poset
    if isinstance(x, DLattice):
        return x.lattice.poset
    raise TypeError(f"no poset carrier on {type(x).__name__}")


def _chainmail_structure(x):
    if isinstance(x, Chainmail):
        return x
    if isinstance(x, KChainmail):
        return x.chainmail
    if isinstance(x, Poset):
        return as_chainmail(x)
    raise TypeError(f"no chainmail structure on {type(x).__name__}")


def _lattice_structure(x):
    if isinstance(x, CompleteLattice):
        return x
    if isinstance(x, DLattice):
        return x.lattice
    if isinstance(x, Poset):
        return as_complete_lattice(x)
    raise TypeError(f"no lattice structure on {type(x).__name__}")


@dataclass(frozen=True)
class PosetMap:
    source: object
    target: object
    table: tuple
    role: str

    def __call__(self, i):
        return self.table[i]

    def source_poset(self):
        return carrier_poset(self.source)

    def target_poset(self):
        return carrier_poset(self.target)


def _check_monotone(sp, tp, table):
    for i in range(sp.n):
        fi = table[i]
        for j in iter_bits(sp.above[i]):
            if not tp.leq(fi, table[j]):
                raise NotMonotone((i, j))


def _check_mail_joins(g1, g2, table):
    p1, p2 = g1.poset, g2.poset
    for i in range(p1.n):
        bi = p1.below[i]
        for j in range(i + 1, p1.n):
            if bi & p1.below[j]:
                join1 = p1.join_mask((1 << i) | (1 << j))
                img = p2.join_mask((1 << table[i]) | (1 << table[j]))
                if img is None or table[join1] != img:
                    raise MailJoinNotPreserved((i, j))


def _check_join_preserving(l1, l2, table):
    if table[l1.bottom] != l2.bottom:
        raise JoinsNotPreserved(("bottom", l1.bottom))
    for x in range(l1.n):
        for y in range(x + 1, l1.n):
            if table[l1.joins[x][y]] != l2.joins[table[x]][table[y]]:
                raise JoinsNotPreserved((x, y))


def _adjoint_table(table, l1, l2):
    """Right adjoint of a join-preserving table: y -> join{x : F(x) <= y}."""
    adj = []
    for y in range(l2.n):
        acc = l1.bottom
        for x in range(l1.n):
            if l2.leq(table[x], y):
                acc = l1.joins[acc][x]
        adj.append(acc)
    return tuple(adj)


def _check_adjoint_separated_joins(adj, l1, l2):
    for s in iter_separated_masks(l2):
        lhs = adj[l2.join_mask(s)]
        rhs = l1.bottom
        for e in iter_bits(s):
            rhs = l1.joins[rhs][adj[e]]
        if lhs != rhs:
            raise AdjointFailsSeparatedJoins(set_of(s))


def validate_map(source, target, table, role):
    """Build a PosetMap, checking the laws the role demands.

    Raw Posets are wrapped in the structure the role needs (chainmail or
    lattice); richer objects are kept as given.
    """
    if role not in ROLES:
        raise ValueError(f"unknown role: {role!r}")
    if role == "chainmail-morphism":
        src, tgt = _chainmail_structure(source), _chainmail_structure(target)
        source = src if isinstance(source, Poset) else source
        target = tgt if isinstance(target, Poset) else target
    elif role in ("connectivity-hom", "weak-connectivity-hom"):
        src, tgt = _lattice_structure(source), _lattice_structure(target)
        source = src if isinstance(source, Poset) else source
        target = tgt if isinstance(target, Poset) else target
    sp, tp = carrier_poset(source), carrier_poset(target)
    table = tuple(int(v) for v in table)
    if len(table) != sp.n:
        raise AxiomViolation("table-total", (len(table), sp.n))
    for i, v in enumerate(table):
        if not 0 <= v < tp.n:
            raise AxiomViolation("table-range", (i, v))
    _check_monotone(sp, tp, table)
    if role == "chainmail-morphism":
        _check_mail_joins(src, tgt, table)
    elif role == "connectivity-hom":
        _check_join_preserving(src, tgt, table)
        adj = _adjoint_table(table, src, tgt)
        _check_adjoint_separated_joins(adj, src, tgt)
    elif role == "weak-connectivity-hom":
        _check_join_preserving(src, tgt, table)
        conn2 = tgt.connected_mask()
        for c in iter_bits(src.connected_mask()):
            if not (conn2 >> table[c]) & 1:
                raise AxiomViolation("connected-element-preservation", c)
    return PosetMap(source, target, table, role)


def identity_map(structure, role="monotone"):
    return validate_map(structure, structure,
                        range(carrier_poset(structure).n), role)


def compose(f, g):
    """g after f.  The composite is re-validated at the shared role."""
    if f.target_poset() != g.source_poset():
        raise AxiomViolation("composition-mismatch",
                             (f.target_poset().n, g.source_poset().n))
    role = f.role if f.role == g.role else "monotone"
    table = tuple(g.table[v] for v in f.table)
    return validate_map(f.source, g.target, table, role)


def right_adjoint(f):
    """Right adjoint of a join-preserving map between complete lattices.

    The Galois law F(x) <= y iff x <= adjoint(y) is asserted exhaustively
    after construction; it cannot fail for a genuinely join-preserving map.
    """
    l1, l2 = _lattice_structure(f.source), _lattice_structure(f.target)
    try:
        _check_join_preserving(l1, l2, f.table)
    except JoinsNotPreserved as e:
        raise NotJoinPreserving(e.witness) from None
    adj = _adjoint_table(f.table, l1, l2)
    for x in range(l1.n):
        for y in range(l2.n):
            if l2.leq(f.table[x], y) != l1.leq(x, adj[y]):
                raise TheoremViolation("galois-law", (x, y))
    return PosetMap(f.target, f.source, adj, "monotone")


# -- the K and D constructions on objects and morphisms -----------------------

def k_chainmail(lat):
    """The induced subposet of connected elements, as a chainmail."""
    elements = sorted(iter_bits(lat.connected_mask()))
    pos = {e: i for i, e in enumerate(elements)}
    above = []
    for e in elements:
        row = 0
        for f in iter_bits(lat.poset.above[e]):
            if f in pos:
                row |= 1 << pos[f]
        above.append(row)
    labels = [lat.poset.label_of(e) for e in elements]
    poset = Poset(above, labels)
    try:
        g = as_chainmail(poset)
    except Exception as e:  # the theory says this cannot happen
        raise TheoremViolation("k-not-a-chainmail", repr(e)) from None
    return KChainmail(lat, g, tuple(elements))


def k_on_morphism(f, k1=None, k2=None):
    """Restrict a (weak) connectivity homomorphism to connected elements."""
    l1, l2 = _lattice_structure(f.source), _lattice_structure(f.target)
    if k1 is None:
        k1 = k_chainmail(l1)
    if k2 is None:
        k2 = k_chainmail(l2)
    pos2 = {e: i for i, e in enumerate(k2.elements)}
    table = []
    for e in k1.elements:
        v = f.table[e]
        if v not in pos2:
            raise TheoremViolation("connected-element-not-preserved", (e, v))
        table.append(pos2[v])
    try:
        checked = validate_map(k1.chainmail, k2.chainmail, table,
                               "chainmail-morphism")
    except (NotMonotone, MailJoinNotPreserved) as e:
        raise TheoremViolation("k-morphism-laws", e.witness) from None
    return PosetMap(k1, k2, checked.table, "chainmail-morphism")


def d_on_morphism(m, d1=None, d2=None, cap=None):
    """D of a chainmail morphism: a totally disconnected set maps to the
    join of the singletons of its images, i.e. to the maximal elements of
    the subchainmail generated by the image."""
    g1 = _chainmail_structure(m.source)
    g2 = _chainmail_structure(m.target)
    if d1 is None:
        d1 = d_lattice(g1, cap)
    if d2 is None:
        d2 = d_lattice(g2, cap)
    index2 = {mask: i for i, mask in enumerate(d2.td_sets)}
    p2 = g2.poset
    table = []
    for mask in d1.td_sets:
        img = 0
        for e in iter_bits(mask):
            img |= 1 << m.table[e]
        gen = _generate_mask(g2, img)
        maximal = 0
        for e in iter_bits(gen):
            if p2.above[e] & gen == 1 << e:
                maximal |= 1 << e
        try:
            table.append(index2[maximal])
        except KeyError:
            raise TheoremViolation("d-morphism-image", set_of(mask)) from None
    try:
        checked = validate_map(d1.lattice, d2.lattice, table,
                               "connectivity-hom")
    except (NotMonotone, JoinsNotPreserved, AdjointFailsSeparatedJoins) as e:
        raise TheoremViolation("d-morphism-laws", e.witness) from None
    return PosetMap(d1, d2, checked.table, "connectivity-hom")


def d_morphism_adjoint(m, d1=None, d2=None, cap=None):
    """The stated adjoint of D(m): D2 maps to (preimage of D2's down-set)*."""
    g1 = _chainmail_structure(m.source)
    g2 = _chainmail_structure(m.target)
    if d1 is None:
        d1 = d_lattice(g1, cap)
    if d2 is None:
        d2 = d_lattice(g2, cap)
    index1 = {mask: i for i, mask in enumerate(d1.td_sets)}
    p2 = g2.poset
    table = []
    for mask in d2.td_sets:
        down = p2.down_closure(mask)
        pre = 0
        for x in range(g1.n):
            if (down >> m.table[x]) & 1:
                pre |= 1 << x
        star = _x_star_mask(g1, pre)
        try:
            table.append(index1[star])
        except KeyError:
            raise TheoremViolation("d-adjoint-image", set_of(mask)) from None
    return PosetMap(d2, d1, tuple(table), "monotone")


# -- unit and counit -----------------------------------------------------------

@dataclass(frozen=True)
class UnitData:
    """The unit at a chainmail: x -> {x}, an isomorphism onto K(D(source))."""
    map: PosetMap
    d: DLattice
    k: KChainmail


@dataclass(frozen=True)
class CounitData:
    """The counit at a lattice: D(K(L)) -> L by joining, with its adjoint
    x -> (connected elements below x)*."""
    map: PosetMap
    adjoint: PosetMap
    k: KChainmail
    d: DLattice


def unit_eta(g, d=None, cap=None):
    if d is None:
        d = d_lattice(g, cap)
    k = k_chainmail(d.lattice)
    dindex = {mask: i for i, mask in enumerate(d.td_sets)}
    kpos = {e: i for i, e in enumerate(k.elements)}
    table = []
    for x in range(g.n):
        i = dindex.get(1 << x)
        if i is None or i not in kpos:
            raise TheoremViolation("unit-not-defined", x)
        table.append(kpos[i])
    kp = k.chainmail.poset
    if len(set(table)) != g.n or kp.n != g.n:
        raise TheoremViolation("unit-not-bijective", tuple(table))
    for x in range(g.n):
        for y in range(g.n):
            if g.poset.leq(x, y) != kp.leq(table[x], table[y]):
                raise TheoremViolation("unit-not-order-iso", (x, y))
    try:
        checked = validate_map(g, k.chainmail, table, "chainmail-morphism")
    except (NotMonotone, MailJoinNotPreserved) as e:
        raise TheoremViolation("unit-laws", e.witness) from None
    return UnitData(PosetMap(g, k, checked.table, "chainmail-morphism"), d, k)


def counit_epsilon(lat, cap=None):
    k = k_chainmail(lat)
    d = d_lattice(k.chainmail, cap)
    table = []
    for mask in d.td_sets:
        acc = lat.bottom
        for i in iter_bits(mask):
            acc = lat.joins[acc][k.elements[i]]
        table.append(acc)
    dindex = {mask: i for i, mask in enumerate(d.td_sets)}
    adj = []
    for x in range(lat.n):
        cmask = 0
        for i, e in enumerate(k.elements):
            if lat.leq(e, x):
                cmask |= 1 << i
        star = _x_star_mask(k.chainmail, cmask)
        try:
            adj.append(dindex[star])
        except KeyError:
            raise TheoremViolation("counit-adjoint-image", x) from None
    try:
        checked = validate_map(d.lattice, lat, table, "connectivity-hom")
    except (NotMonotone, JoinsNotPreserved, AdjointFailsSeparatedJoins) as e:
        raise TheoremViolation("counit-laws", e.witness) from None
    if tuple(adj) != _adjoint_table(table, d.lattice, lat):
        raise TheoremViolation("counit-adjoint-formula", tuple(adj))
    if len(set(table)) != len(table):
        raise TheoremViolation("counit-not-mono", tuple(table))
    return CounitData(PosetMap(d, lat, checked.table, "connectivity-hom"),
                      PosetMap(lat, d, tuple(adj), "monotone"), k, d)


def is_epsilon_iso(lat, cap=None):
    cd = counit_epsilon(lat, cap)
    table = cd.map.table
    if len(set(table)) != lat.n or len(table) != lat.n:
        return False
    dp = cd.d.lattice.poset
    for i in range(len(table)):
        for j in range(len(table)):
            if dp.leq(i, j) != lat.leq(table[i], table[j]):
                return False
    return True


# -- the adjunction's laws -----------------------------------------------------

@dataclass(frozen=True)
class TriangleReport:
    chainmail_side: dict
    lattice_side: dict


def check_triangle_identities(g, lat, cap=None):
    """Both triangle identities, witnessed as inverse pairs of tables.

    On the chainmail side, D(unit) and the counit at D(g) must invert each
    other; on the lattice side, K(counit) and the unit at K(lat) must.
    """
    ud = unit_eta(g, cap=cap)
    dm = d_on_morphism(ud.map, d1=ud.d, d2=d_lattice(ud.k.chainmail, cap))
    cd = counit_epsilon(ud.d.lattice, cap=cap)
    n1 = len(ud.d.td_sets)
    for i in range(n1):
        if cd.map.table[dm.table[i]] != i:
            raise TheoremViolation("triangle-chainmail-side", i)
    for j in range(len(cd.d.td_sets)):
        if dm.table[cd.map.table[j]] != j:
            raise TheoremViolation("triangle-chainmail-side-inverse", j)
    chain_side = {"d-of-unit": dm.table, "counit-at-d": cd.map.table}

    cl = counit_epsilon(lat, cap=cap)
    ke = k_on_morphism(cl.map)
    uk = unit_eta(cl.k.chainmail, cap=cap)
    nk = len(cl.k.elements)
    for i in range(nk):
        if ke.table[uk.map.table[i]] != i:
            raise TheoremViolation("triangle-lattice-side", i)
    for j in range(len(uk.k.elements)):
        if uk.map.table[ke.table[j]] != j:
            raise TheoremViolation("triangle-lattice-side-inverse", j)
    lattice_side = {"unit-at-k": uk.map.table, "k-of-counit": ke.table}
    return TriangleReport(chain_side, lattice_side)


@dataclass(frozen=True)
class NaturalityReport:
    squares: dict


def check_naturality(f, cap=None):
    """Naturality of the unit (for a chainmail morphism) or of the counit
    in both direct and adjoint form (for a connectivity homomorphism)."""
    squares = {}
    if f.role == "chainmail-morphism":
        g1 = _chainmail_structure(f.source)
        g2 = _chainmail_structure(f.target)
        u1 = unit_eta(g1, cap=cap)
        u2 = unit_eta(g2, cap=cap)
        dm = d_on_morphism(f, d1=u1.d, d2=u2.d)
        km = k_on_morphism(dm)
        for x in range(g1.n):
            if km.table[u1.map.table[x]] != u2.map.table[f.table[x]]:
                raise TheoremViolation("unit-naturality", x)
        squares["unit"] = (tuple(km.table[v] for v in u1.map.table))
        return NaturalityReport(squares)
    if f.role in ("connectivity-hom", "weak-connectivity-hom"):
        l1 = _lattice_structure(f.source)
        l2 = _lattice_structure(f.target)
        c1 = counit_epsilon(l1, cap=cap)
        c2 = counit_epsilon(l2, cap=cap)
        kf = k_on_morphism(f, k1=c1.k, k2=c2.k)
        dkf = d_on_morphism(kf, d1=c1.d, d2=c2.d)
        for i in range(len(c1.d.td_sets)):
            if f.table[c1.map.table[i]] != c2.map.table[dkf.table[i]]:
                raise TheoremViolation("counit-naturality", i)
        squares["counit"] = tuple(f.table[v] for v in c1.map.table)
        adj_f = _adjoint_table(f.table, l1, l2)
        adj_dkf = _adjoint_table(dkf.table, c1.d.lattice, c2.d.lattice)
        for y in range(l2.n):
            if c1.adjoint.table[adj_f[y]] != adj_dkf[c2.adjoint.table[y]]:
                raise TheoremViolation("counit-naturality-adjoint", y)
        squares["counit-adjoint"] = tuple(c1.adjoint.table[v] for v in adj_f)
        return NaturalityReport(squares)
    raise ValueError(f"no naturality square for role {f.role!r}")


# -- hom-set enumeration -------------------------------------------------------

def monotone_tables(p1, p2):
    """All monotone tables p1 -> p2, brute force."""
    if p1.n == 0:
        yield ()
        return
    for table in product(range(p2.n), repeat=p1.n):
        ok = True
        for i in range(p1.n):
            for j in iter_bits(p1.above[i]):
                if not p2.leq(table[i], table[j]):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            yield table


def chainmail_morphism_tables(g1, g2):
    """All chainmail morphisms g1 -> g2, as tables."""
    p1, p2 = g1.poset, g2.poset
    mail_pairs = []
    for i in range(p1.n):
        for j in range(i + 1, p1.n):
            if p1.below[i] & p1.below[j]:
                mail_pairs.append((i, j, p1.join_mask((1 << i) | (1 << j))))
    for table in monotone_tables(p1, p2):
        ok = True
        for i, j, join1 in mail_pairs:
            img = p2.join_mask((1 << table[i]) | (1 << table[j]))
            if img is None or table[join1] != img:
                ok = False
                break
        if ok:
            yield table


def join_preserving_tables(l1, l2):
    """All join-preserving tables l1 -> l2.

    Branch only at join-irreducible elements (in a linear-extension
    order); every other element's value is forced by a decomposition into
    two strictly smaller elements.  A final full filter keeps the
    enumeration honest.
    """
    n = l1.n
    if n == 0:
        return
    order = sorted(range(n), key=lambda i: (bin(l1.poset.below[i]).count("1"), i))
    decomp = {}
    for x in range(n):
        if x == l1.bottom:
            continue
        strictly = l1.poset.below[x] & ~(1 << x)
        found = None
        for a in iter_bits(strictly):
            for b in iter_bits(strictly & ~((1 << (a + 1)) - 1)):
                if l1.joins[a][b] == x:
                    found = (a, b)
                    break
            if found:
                break
        if found:
            decomp[x] = found

    table = [None] * n

    def verify():
        if table[l1.bottom] != l2.bottom:
            return False
        for x in range(n):
            for y in range(x + 1, n):
                if table[l1.joins[x][y]] != l2.joins[table[x]][table[y]]:
                    return False
        return True

    def assign(k):
        if k == len(order):
            if verify():
                yield tuple(table)
            return
        x = order[k]
        if x == l1.bottom:
            table[x] = l2.bottom
            yield from assign(k + 1)
            table[x] = None
            return
        if x in decomp:
            a, b = decomp[x]
            table[x] = l2.joins[table[a]][table[b]]
            yield from assign(k + 1)
            table[x] = None
            return
        floor = l2.bottom
        for y in iter_bits(l1.poset.below[x] & ~(1 << x)):
            floor = l2.joins[floor][table[y]]
        for v in iter_bits(l2.poset.above[floor]):
            table[x] = v
            yield from assign(k + 1)
        table[x] = None

    yield from assign(0)


def connectivity_hom_tables(l1, l2, weak=False):
    """All (weak) connectivity homomorphism tables l1 -> l2."""
    conn2 = l2.connected_mask() if weak else 0
    for table in join_preserving_tables(l1, l2):
        if weak:
            ok = True
            for c in iter_bits(l1.connected_mask()):
                if not (conn2 >> table[c]) & 1:
                    ok = False
                    break
            if ok:
                yield table
            continue
        adj = _adjoint_table(table, l1, l2)
        try:
            _check_adjoint_separated_joins(adj, l1, l2)
        except AdjointFailsSeparatedJoins:
            continue
        yield table


# -- interchange ---------------------------------------------------------------

def map_to_json_dict(f):
    sp, tp = f.source_poset(), f.target_poset()
    return {
        "source": to_json_dict(sp),
        "target": to_json_dict(tp),
        "table": {sp.label_of(i): tp.label_of(f.table[i]) for i in range(sp.n)},
        "role": f.role,
    }


def map_from_json_dict(data, budget=None):
    try:
        source = from_json_dict(data["source"], budget)
        target = from_json_dict(data["target"], budget)
        items = dict(data["table"])
        role = str(data["role"])
    except (KeyError, TypeError) as exc:
        raise AxiomViolation("json-shape", str(exc)) from None
    table = [None] * source.n
    for a, b in items.items():
        table[source.index_of(a)] = target.index_of(b)
    if any(v is None for v in table):
        raise AxiomViolation("table-total", tuple(items))
    return validate_map(source, target, table, role)
