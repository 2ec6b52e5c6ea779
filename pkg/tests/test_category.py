"""Maps, the two functors, the adjunction, and its unit and counit."""

import itertools

import pytest

from chainmail.category import (
    KChainmail,
    PosetMap,
    ROLES,
    chainmail_morphism_tables,
    check_naturality,
    check_triangle_identities,
    compose,
    connectivity_hom_tables,
    counit_epsilon,
    d_morphism_adjoint,
    d_on_morphism,
    identity_map,
    is_epsilon_iso,
    join_preserving_tables,
    k_chainmail,
    k_on_morphism,
    map_from_json_dict,
    map_to_json_dict,
    monotone_tables,
    right_adjoint,
    unit_eta,
    validate_map,
)
from chainmail.enumeration import enumerate_posets
from chainmail.errors import (
    AdjointFailsSeparatedJoins,
    AxiomViolation,
    JoinsNotPreserved,
    MailJoinNotPreserved,
    NotALattice,
    NotJoinPreserving,
    NotMonotone,
)
from chainmail.lattice import (
    as_complete_lattice,
    connected_elements,
    has_connective_foundation,
    is_locally_connected,
    separation_poset,
)
from chainmail.mails import as_chainmail, d_lattice, poset_is_chainmail
from chainmail.poset import set_of, validate_poset
from chainmail.sources import powerset_lattice


def mk_poset(size, covers):
    return validate_poset(size, covers)


def mk_lattice(size, covers):
    return as_complete_lattice(mk_poset(size, covers))


@pytest.fixture
def b2():
    return powerset_lattice(2)


@pytest.fixture
def m3():
    return mk_lattice(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])


@pytest.fixture
def chain3():
    return mk_lattice(3, [(0, 1), (1, 2)])


# -- map validation --------------------------------------------------------------

def test_identity_every_role(counterexample, b2):
    for role in ("monotone", "chainmail-morphism"):
        f = identity_map(counterexample, role)
        assert f.table == tuple(range(7))
        assert f.role == role
    for role in ("connectivity-hom", "weak-connectivity-hom"):
        f = identity_map(b2, role)
        assert f.table == tuple(range(4))
        assert f.role == role


def test_constant_to_top_is_chainmail_morphism(counterexample):
    f = validate_map(counterexample, counterexample, [6] * 7,
                     "chainmail-morphism")
    assert f.role == "chainmail-morphism"


def test_not_monotone():
    with pytest.raises(NotMonotone) as e:
        validate_map(mk_poset(2, [(0, 1)]), mk_poset(2, []), [0, 1],
                     "monotone")
    assert e.value.witness == (0, 1)


def test_collapse_onto_non_lattice_target():
    # a two-element antichain over a bottom has no top, so the role's
    # demand that the target be a complete lattice already fails
    with pytest.raises(NotALattice) as e:
        validate_map(mk_poset(2, [(0, 1)]), mk_poset(3, [(0, 1), (0, 2)]),
                     [0, 1], "connectivity-hom")
    assert e.value.witness == (1, 2)


def test_joins_not_preserved(b2, chain3):
    with pytest.raises(JoinsNotPreserved) as e:
        validate_map(b2, chain3, [0, 1, 1, 2], "connectivity-hom")
    assert e.value.witness == (1, 2)
    one = mk_lattice(1, [])
    with pytest.raises(JoinsNotPreserved) as e:
        validate_map(one, b2, [1], "connectivity-hom")
    assert e.value.witness == ("bottom", 0)


def test_mail_join_not_preserved(b2, chain3):
    with pytest.raises(MailJoinNotPreserved) as e:
        validate_map(b2.poset, chain3.poset, [0, 0, 1, 2],
                     "chainmail-morphism")
    assert e.value.witness == (1, 2)


def test_adjoint_fails_separated_joins(b2, chain3):
    with pytest.raises(AdjointFailsSeparatedJoins) as e:
        validate_map(chain3, b2, [0, 1, 3], "connectivity-hom")
    assert e.value.witness == {1, 2}


def test_weak_rejects_unconnected_image(b2, chain3):
    with pytest.raises(AxiomViolation) as e:
        validate_map(chain3, b2, [0, 1, 3], "weak-connectivity-hom")
    assert e.value.axiom == "connected-element-preservation"


def test_weak_strictly_wider(m3):
    """A lattice with no connected elements admits weak homomorphisms
    whose adjoints break separated joins."""
    chain2 = mk_lattice(2, [(0, 1)])
    table = [0, 0, 1, 1, 1]
    f = validate_map(m3, chain2, table, "weak-connectivity-hom")
    assert f.role == "weak-connectivity-hom"
    with pytest.raises(AdjointFailsSeparatedJoins) as e:
        validate_map(m3, chain2, table, "connectivity-hom")
    assert e.value.witness == set()


def test_table_shape_errors(b2):
    with pytest.raises(AxiomViolation) as e:
        validate_map(b2, b2, [0, 1, 2], "monotone")
    assert e.value.axiom == "table-total"
    with pytest.raises(AxiomViolation) as e:
        validate_map(b2, b2, [0, 1, 2, 9], "monotone")
    assert e.value.axiom == "table-range"
    with pytest.raises(ValueError):
        validate_map(b2, b2, [0, 1, 2, 3], "isotone")


def test_roles_constant():
    assert ROLES == ("monotone", "chainmail-morphism", "connectivity-hom",
                     "weak-connectivity-hom")


# -- composition ----------------------------------------------------------------

def test_compose_keeps_shared_role(counterexample):
    f = validate_map(counterexample, counterexample, [6] * 7,
                     "chainmail-morphism")
    g = identity_map(counterexample, "chainmail-morphism")
    assert compose(f, g).role == "chainmail-morphism"
    assert compose(f, g).table == f.table
    h = identity_map(counterexample.poset, "monotone")
    assert compose(h, f).role == "monotone"


def test_compose_mismatch(counterexample, b2):
    f = identity_map(counterexample, "monotone")
    g = identity_map(b2, "monotone")
    with pytest.raises(AxiomViolation) as e:
        compose(f, g)
    assert e.value.axiom == "composition-mismatch"


def test_roles_closed_under_composition():
    """Composites of two validated same-role maps re-validate at that
    role, on every pair of composable homs between tiny structures."""
    posets = [mk_poset(1, []), mk_poset(2, []), mk_poset(2, [(0, 1)])]
    gs = [as_chainmail(p) for p in posets]
    for g1, g2, g3 in itertools.product(gs, repeat=3):
        for t1 in chainmail_morphism_tables(g1, g2):
            f = PosetMap(g1, g2, tuple(t1), "chainmail-morphism")
            for t2 in chainmail_morphism_tables(g2, g3):
                g = PosetMap(g2, g3, tuple(t2), "chainmail-morphism")
                assert compose(f, g).role == "chainmail-morphism"
    ls = [mk_lattice(1, []), mk_lattice(2, [(0, 1)]), powerset_lattice(2)]
    for l1, l2, l3 in itertools.product(ls, repeat=3):
        for t1 in connectivity_hom_tables(l1, l2):
            f = PosetMap(l1, l2, tuple(t1), "connectivity-hom")
            for t2 in connectivity_hom_tables(l2, l3):
                g = PosetMap(l2, l3, tuple(t2), "connectivity-hom")
                assert compose(f, g).role == "connectivity-hom"


# -- right adjoints --------------------------------------------------------------

def test_right_adjoint_of_identity(b2):
    f = identity_map(b2, "connectivity-hom")
    assert right_adjoint(f).table == tuple(range(4))


def test_right_adjoint_requires_join_preservation(b2, chain3):
    f = validate_map(chain3, b2, [1, 3, 3], "monotone")
    with pytest.raises(NotJoinPreserving) as e:
        right_adjoint(f)
    assert e.value.witness == ("bottom", 0)


def test_powerset_inclusion_adjoint(b2):
    """Including subsets of {p} into subsets of {p,q} has the adjoint
    y -> y intersected with {p}."""
    b1 = powerset_lattice(1)
    f = validate_map(b1, b2, [0, 1], "monotone")
    assert right_adjoint(f).table == (0, 1, 0, 1)


def test_galois_law_everywhere():
    """right_adjoint asserts the Galois equivalence internally for every
    join-preserving map between lattices of up to 6 elements; the adjoint
    is also independently re-validated as monotone."""
    lats = []
    for size in range(1, 7):
        for p in enumerate_posets(size):
            try:
                lats.append(as_complete_lattice(p))
            except NotALattice:
                continue
    checked = 0
    for l1 in lats:
        for l2 in lats:
            for table in join_preserving_tables(l1, l2):
                f = PosetMap(l1, l2, tuple(table), "monotone")
                adj = right_adjoint(f)
                validate_map(l2, l1, adj.table, "monotone")
                checked += 1
    assert checked == 41904


# -- the K construction ----------------------------------------------------------

def test_k_of_powerset():
    k = k_chainmail(powerset_lattice(3))
    assert k.elements == (1, 2, 4)
    assert k.chainmail.n == 3
    assert k.chainmail.poset.covers() == []
    assert k.index_of(2) == 1


def test_k_of_m3_is_empty(m3):
    k = k_chainmail(m3)
    assert k.elements == ()
    assert k.chainmail.n == 0


def test_k_of_chain(chain3):
    k = k_chainmail(chain3)
    assert k.elements == (1, 2)
    assert k.chainmail.poset.covers() == [(0, 1)]


def test_k_on_identity(b2):
    f = identity_map(b2, "connectivity-hom")
    kf = k_on_morphism(f)
    assert kf.table == (0, 1)
    assert kf.role == "chainmail-morphism"


def test_k_on_powerset_inclusion(b2):
    b1 = powerset_lattice(1)
    f = validate_map(b1, b2, [0, 1], "connectivity-hom")
    assert k_on_morphism(f).table == (0,)


def test_k_on_empty_source(m3):
    f = identity_map(m3, "connectivity-hom")
    kf = k_on_morphism(f)
    assert kf.table == ()


def test_homs_preserve_connected_and_adjoint_preserves_separation():
    """Each strict connectivity homomorphism between lattices of up to 5
    elements maps connected elements to connected elements, and its
    adjoint sends the bottom to the bottom and separated sets to
    separated sets.  Weak homomorphisms include every strict one."""
    from chainmail.category import _adjoint_table
    from chainmail.lattice import is_separated, iter_separated_masks

    lats = []
    for size in range(1, 6):
        for p in enumerate_posets(size):
            try:
                lats.append(as_complete_lattice(p))
            except NotALattice:
                continue
    for l1 in lats:
        for l2 in lats:
            strict = {tuple(t) for t in connectivity_hom_tables(l1, l2)}
            weak = {tuple(t) for t in connectivity_hom_tables(l1, l2,
                                                              weak=True)}
            assert strict <= weak
            conn2 = connected_elements(l2)
            for table in strict:
                for c in connected_elements(l1):
                    assert table[c] in conn2
                adj = _adjoint_table(table, l1, l2)
                assert adj[l2.bottom] == l1.bottom
                for s in iter_separated_masks(l2):
                    image = {adj[e] for e in set_of(s)} - {l1.bottom}
                    assert is_separated(l1, image)


# -- the D construction on morphisms ----------------------------------------------

def test_d_on_point_into_chain():
    point = as_chainmail(mk_poset(1, []))
    chain = as_chainmail(mk_poset(2, [(0, 1)]))
    to_low = validate_map(point, chain, [0], "chainmail-morphism")
    assert d_on_morphism(to_low).table == (0, 1)
    to_high = validate_map(point, chain, [1], "chainmail-morphism")
    assert d_on_morphism(to_high).table == (0, 2)


def test_d_on_identity(counterexample):
    f = identity_map(counterexample, "chainmail-morphism")
    assert d_on_morphism(f).table == tuple(range(11))


def test_d_on_constant_to_top(counterexample):
    f = validate_map(counterexample, counterexample, [6] * 7,
                     "chainmail-morphism")
    df = d_on_morphism(f)
    top = d_lattice(counterexample).index_of({6})
    assert df.table == (0,) + (top,) * 10
    assert df.role == "connectivity-hom"


def test_d_adjoint_formula():
    point = as_chainmail(mk_poset(1, []))
    chain = as_chainmail(mk_poset(2, [(0, 1)]))
    f = validate_map(point, chain, [0], "chainmail-morphism")
    assert d_morphism_adjoint(f).table == (0, 1, 1)
    ident = identity_map(point, "chainmail-morphism")
    assert d_morphism_adjoint(ident).table == (0, 1)


def test_d_adjoint_agrees_with_right_adjoint():
    """The displayed preimage-then-star formula equals the right adjoint
    of the image map, for every morphism between small chainmails."""
    gs = []
    for size in range(1, 4):
        for p in enumerate_posets(size):
            if poset_is_chainmail(p):
                gs.append(as_chainmail(p))
    for g1 in gs:
        d1 = d_lattice(g1)
        for g2 in gs:
            d2 = d_lattice(g2)
            for table in chainmail_morphism_tables(g1, g2):
                m = PosetMap(g1, g2, tuple(table), "chainmail-morphism")
                stated = d_morphism_adjoint(m, d1=d1, d2=d2)
                computed = right_adjoint(d_on_morphism(m, d1=d1, d2=d2))
                assert stated.table == computed.table


# -- unit and counit -------------------------------------------------------------

def test_unit_on_counterexample(counterexample):
    ud = unit_eta(counterexample)
    assert ud.map.table == tuple(range(7))
    assert ud.map.role == "chainmail-morphism"
    assert [set_of(ud.d.td_sets[ud.k.elements[i]]) for i in ud.map.table] \
        == [{x} for x in range(7)]


def test_unit_on_chain():
    chain = as_chainmail(mk_poset(2, [(0, 1)]))
    ud = unit_eta(chain)
    assert ud.map.table == (0, 1)
    assert ud.d.lattice.n == 3


def test_unit_on_empty():
    ud = unit_eta(as_chainmail(mk_poset(0, [])))
    assert ud.map.table == ()


def test_unit_is_iso_up_to_seven():
    """The singleton map is an order-isomorphism onto the connected
    elements of the totally-disconnected-set lattice, for every chainmail
    with at most 7 elements.  unit_eta re-checks bijectivity and both
    order directions itself and raises on any failure."""
    checked = 0
    for size in range(1, 8):
        for p in enumerate_posets(size):
            if poset_is_chainmail(p):
                unit_eta(as_chainmail(p))
                checked += 1
    assert checked == 574


def test_counit_on_powerset(b2):
    cd = counit_epsilon(b2)
    assert cd.map.table == (0, 1, 2, 3)
    assert cd.map.role == "connectivity-hom"
    assert cd.adjoint.table == (0, 1, 2, 3)
    assert is_epsilon_iso(b2)


def test_counit_on_m3(m3):
    cd = counit_epsilon(m3)
    assert cd.k.elements == ()
    assert cd.map.table == (0,)
    assert cd.adjoint.table == (0, 0, 0, 0, 0)
    assert not is_epsilon_iso(m3)


def test_counit_on_point():
    assert is_epsilon_iso(mk_lattice(1, []))


def test_counit_injective(small_lattices):
    for lat in small_lattices:
        cd = counit_epsilon(lat)
        assert len(set(cd.map.table)) == len(cd.map.table)


def test_epsilon_iso_iff_locally_connected():
    checked = 0
    for size in range(1, 7):
        for p in enumerate_posets(size):
            try:
                lat = as_complete_lattice(p)
            except NotALattice:
                continue
            assert is_epsilon_iso(lat) == is_locally_connected(lat)
            checked += 1
    assert checked == 25


def test_separation_poset_is_d_of_k(small_lattices):
    """With a connective foundation, the separation poset and the lattice
    of totally disconnected sets over the connected elements are the same
    poset, member set for member set."""
    for lat in small_lattices:
        if not has_connective_foundation(lat):
            continue
        sp = separation_poset(lat)
        k = k_chainmail(lat)
        dl = d_lattice(k.chainmail)
        assert sp.poset.n == dl.lattice.n
        translated = sorted(
            sum(1 << k.elements[i] for i in set_of(m)) for m in dl.td_sets
        )
        assert sorted(sp.sets) == translated
        assert sp.poset.canonical() == dl.lattice.poset.canonical()


# -- triangles, naturality, and the hom bijection -----------------------------------

def test_triangles_on_examples(counterexample, b2, m3):
    r = check_triangle_identities(counterexample, b2)
    assert set(r.chainmail_side) == {"d-of-unit", "counit-at-d"}
    assert set(r.lattice_side) == {"unit-at-k", "k-of-counit"}
    check_triangle_identities(counterexample, powerset_lattice(3))
    check_triangle_identities(as_chainmail(mk_poset(0, [])), mk_lattice(1, []))
    check_triangle_identities(as_chainmail(mk_poset(2, [])), m3)


def test_triangles_on_small_pairs():
    gs = []
    for size in range(1, 4):
        for p in enumerate_posets(size):
            if poset_is_chainmail(p):
                gs.append(as_chainmail(p))
    lats = []
    for size in range(1, 5):
        for p in enumerate_posets(size):
            try:
                lats.append(as_complete_lattice(p))
            except NotALattice:
                continue
    for g in gs:
        for lat in lats:
            check_triangle_identities(g, lat)


def test_naturality(counterexample, b2):
    ident = identity_map(counterexample, "chainmail-morphism")
    assert set(check_naturality(ident).squares) == {"unit"}
    const = validate_map(counterexample, counterexample, [6] * 7,
                         "chainmail-morphism")
    check_naturality(const)
    point = as_chainmail(mk_poset(1, []))
    chain = as_chainmail(mk_poset(2, [(0, 1)]))
    check_naturality(validate_map(point, chain, [0], "chainmail-morphism"))
    f = identity_map(b2, "connectivity-hom")
    assert set(check_naturality(f).squares) == {"counit", "counit-adjoint"}
    with pytest.raises(ValueError):
        check_naturality(identity_map(b2.poset, "monotone"))


def test_hom_enumeration_basics(b2):
    point = mk_poset(1, [])
    assert list(monotone_tables(mk_poset(0, []), b2.poset)) == [()]
    assert sorted(monotone_tables(point, b2.poset)) == [(0,), (1,), (2,), (3,)]
    anti = as_chainmail(mk_poset(2, []))
    chain = as_chainmail(mk_poset(2, [(0, 1)]))
    assert sorted(chainmail_morphism_tables(anti, chain)) == [
        (0, 0), (0, 1), (1, 0), (1, 1)]
    # deterministic ordering on repeat runs
    first = list(connectivity_hom_tables(b2, b2))
    assert first == list(connectivity_hom_tables(b2, b2))


def test_hom_bijection_exhaustive():
    """Transposing is a bijection between the two hom sets for every
    chainmail and lattice with at most 5 elements each, in both the
    strict and the weak reading.  check_adjunction_bijection rebuilds
    both hom sets, transposes every member both ways, and raises on any
    mismatch; strict homs can never outnumber weak ones."""
    from chainmail.verify import check_adjunction_bijection

    gs = []
    for size in range(1, 6):
        for p in enumerate_posets(size):
            if poset_is_chainmail(p):
                gs.append(as_chainmail(p))
    lats = []
    for size in range(1, 6):
        for p in enumerate_posets(size):
            try:
                lats.append(as_complete_lattice(p))
            except NotALattice:
                continue
    for g in gs:
        for lat in lats:
            strict = check_adjunction_bijection(g, lat, weak=False)
            weak = check_adjunction_bijection(g, lat, weak=True)
            assert strict <= weak


def test_point_to_powerset_hom_count(b2):
    from chainmail.verify import check_adjunction_bijection

    point = as_chainmail(mk_poset(1, []))
    assert check_adjunction_bijection(point, b2) == 2


# -- serialization ---------------------------------------------------------------

def test_map_json_roundtrip(counterexample):
    f = validate_map(counterexample, counterexample, [6] * 7,
                     "chainmail-morphism")
    data = map_to_json_dict(f)
    back = map_from_json_dict(data)
    assert back.table == f.table
    assert back.role == f.role


def test_map_json_roundtrip_lattice(b2):
    f = identity_map(b2, "connectivity-hom")
    data = map_to_json_dict(f)
    assert data["role"] == "connectivity-hom"
    back = map_from_json_dict(data)
    assert back.table == (0, 1, 2, 3)


def test_map_json_bad_shape(b2):
    with pytest.raises(AxiomViolation) as e:
        map_from_json_dict({"role": "monotone"})
    assert e.value.axiom == "json-shape"
