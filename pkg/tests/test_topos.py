import pytest

from stargroup import oracle, site, topos
from stargroup.core import (
    StarMorphism,
    classify,
    etale_lift,
    is_etale,
    projections,
)
from stargroup.site import (
    LSMorphism,
    representable_presheaf,
    representable_semigroup,
    terminal_presheaf,
    empty_presheaf,
    validate_presheaf,
    validate_presheaf_map,
)
from stargroup.topos import (
    bsleft_eval,
    counit,
    counit_explicit_preimage,
    fiber_presheaf,
    gamma,
    ideal_correspondence,
    lam,
    lambda_morphism,
    left_compatible,
    m_iso,
    prop_inv_check,
    prop_sym_check,
    triangle_check,
    triangle_check2,
    unit,
)


def test_lambda_terminal_is_base(sl2_inv, sl2):
    # pairs (r, 0) are listed in element order, so the tables must coincide
    LP = lam(terminal_presheaf(sl2_inv))
    assert tuple(r for r, _ in LP.pairs) == tuple(sl2.elements)
    assert LP.semigroup.mul == sl2.mul and LP.semigroup.star == sl2.star


def test_lambda_p21(p21):
    LP = lam(p21)
    assert len(LP.pairs) == 3
    u = LP.index[(1, 0)]
    v = LP.index[(1, 1)]
    assert LP.semigroup.mul[u][v] == u
    assert LP.semigroup.mul[v][u] == v  # non-commuting projections


def test_lambda_of_representable_is_se(i2_inv):
    # checked internally by representable_semigroup; force it for every e
    for e in i2_inv.idempotents:
        representable_semigroup(i2_inv, e)


def test_lambda_morphism_collapse(p21, sl2_inv):
    Q = terminal_presheaf(sl2_inv)
    gmap = validate_presheaf_map(p21, Q, {1: (0, 0), 0: (0,)})
    f = lambda_morphism(gmap)
    assert f.source.order == 3 and f.target.order == 2
    assert f.is_star_hom


def test_lambda_morphism_functorial(p21, sl2_inv):
    Q = terminal_presheaf(sl2_inv)
    idm = validate_presheaf_map(p21, p21, {1: (0, 1), 0: (0,)})
    col = validate_presheaf_map(p21, Q, {1: (0, 0), 0: (0,)})
    LP, LQ = lam(p21), lam(Q)
    li = lambda_morphism(idm, LP, LP)
    lc = lambda_morphism(col, LP, LQ)
    assert li.map == tuple(range(3))
    composite = tuple(lc.map[li.map[i]] for i in range(3))
    assert composite == lc.map


def test_gamma_of_lambda_p21(p21):
    LP = lam(p21)
    G = gamma(LP.structure_map)
    assert G.fiber_size(1) == 2
    assert G.fiber_size(0) == 1


def test_gamma_constant_map(const_c2_t1):
    G = gamma(const_c2_t1)
    assert G.fiber_size(0) == 1  # only alpha(e,e) = 0 extends


def test_gamma_identity_is_terminal(i2_inv, id_i2):
    G = gamma(id_i2)
    for e in i2_inv.idempotents:
        assert G.fiber_size(e) == 1


def test_gamma_budget(p21):
    LP = lam(p21)
    with pytest.raises(topos.SearchBudgetExceeded):
        gamma(LP.structure_map, budget=2, strategy="generic")


def test_unit_iso_terminal(sl2_inv):
    u = unit(terminal_presheaf(sl2_inv))
    assert u.bijective


def test_unit_iso_p21(p21):
    u = unit(p21)
    assert [len(u.components[e]) for e in sorted(u.components)] == [1, 2]


def test_unit_yoneda(i2_inv):
    """eta on a representable recovers Yoneda fullness: components biject
    Hom(d, e) with the *-homomorphisms S(d) -> S(e) over S."""
    for e in i2_inv.idempotents:
        P = representable_presheaf(i2_inv, e)
        u = unit(P)
        for d in i2_inv.idempotents:
            assert len(u.components[d]) == len(P.fiber(d))


def test_counit_etale_bijective(p21, id_i2):
    LP = lam(p21)
    assert counit(LP.structure_map).bijective
    assert counit(id_i2).bijective


def test_counit_constant_not_surjective(const_c2_t1):
    eps = counit(const_c2_t1)
    assert eps.injective and not eps.surjective
    assert set(eps.morphism.map) == {0}


def test_counit_bijective_without_iso(rz2, sl2):
    """The constant *-homomorphism from the right-zero semigroup is not
    etale and its source is not left involutive, yet the counit is a
    bijection; it fails to be an isomorphism because the inverse map is not
    a left *-homomorphism.  This also settles the open question: a
    bijective left *-homomorphism need not admit a left *-homomorphism
    inverse."""
    f = StarMorphism(rz2, sl2, (0, 0))
    assert f.is_star_hom and not is_etale(f)
    assert not classify(rz2).left_involutive
    eps = counit(f)
    assert eps.bijective
    assert eps.inverse_is_left_star_hom is False
    assert not eps.is_iso
    assert eps.morphism.is_left_star_hom and not eps.morphism.is_multiplicative


def test_counit_iso_iff_etale_left_involutive(p21, id_i2, id_sl2,
                                              const_c2_t1, rz2, sl2):
    probes = [lam(p21).structure_map, id_i2, id_sl2, const_c2_t1,
              StarMorphism(rz2, sl2, (0, 0)),
              StarMorphism(sl2, sl2, (0, 0))]
    for f in probes:
        data = bsleft_eval(f)
        assert data["iso"] == (data["etale"] and data["left_involutive"])
    # the last probe shows bijectivity alone is weaker than isomorphism
    # even with a left involutive source
    data = bsleft_eval(StarMorphism(sl2, sl2, (0, 0)))
    assert data["bijective"] and not data["iso"]


def test_counit_naturality(p21, sl2_inv):
    """Naturality square of the counit for a morphism of X(S)."""
    Q = terminal_presheaf(sl2_inv)
    gmap = validate_presheaf_map(p21, Q, {1: (0, 0), 0: (0,)})
    LP, LQ = lam(p21), lam(Q)
    m = lambda_morphism(gmap, LP, LQ)
    g, f = LP.structure_map, LQ.structure_map
    Gg, Gf = gamma(g), gamma(f)
    eps_g, eps_f = counit(g, Gg), counit(f, Gf)
    # Lambda Gamma (m): postcompose each alpha with m, then Lambda
    for i, (r, xi) in enumerate(eps_g.lam_gamma.pairs):
        e = sl2_inv.semigroup.c(r)
        table = Gg.alphas[e][xi]
        moved = tuple(m.map[v] for v in table)
        j = eps_f.lam_gamma.index[(r, Gf.alphas[e].index(moved))]
        assert eps_f.morphism.map[j] == m.map[eps_g.morphism.map[i]]


def test_triangles(p21, sl2_inv, i2_inv):
    assert triangle_check(terminal_presheaf(sl2_inv))
    assert triangle_check(p21)
    assert triangle_check2(lam(p21).structure_map)
    for e in i2_inv.idempotents:
        assert triangle_check(representable_presheaf(i2_inv, e))


def test_triangle2_non_etale(const_c2_t1):
    assert triangle_check2(const_c2_t1)


def test_fiber_presheaf_identity(i2, id_i2):
    P = fiber_presheaf(id_i2)
    for e in P.fibers:
        assert P.fiber(e) == (str(e),)


def test_fiber_presheaf_lambda(p21):
    LP = lam(p21)
    P = fiber_presheaf(LP.structure_map)
    assert sorted(len(P.fiber(e)) for e in P.fibers) == [1, 2]


def test_m_iso(p21, id_i2, id_sl2):
    for f in (lam(p21).structure_map, id_i2, id_sl2):
        m = m_iso(f)
        assert m.is_star_hom and m.is_bijective


def test_m_iso_recovers_elements(id_i2, i2):
    m = m_iso(id_i2)
    # m(f(x), xx*) = x, i.e. m is surjective with the explicit preimage
    assert set(m.map) == set(i2.elements)


def test_gamma_fast_equals_generic(p21, id_i2, id_sl2, i2_inv):
    probes = [lam(p21).structure_map, id_i2, id_sl2]
    probes += [representable_semigroup(i2_inv, e).psi
               for e in i2_inv.idempotents]
    for f in probes:
        a = gamma(f, strategy="generic")
        b = gamma(f, strategy="fast")
        assert a.alphas == b.alphas


def test_counit_explicit_preimage(p21, id_i2):
    for f in (lam(p21).structure_map, id_i2):
        G = gamma(f)
        eps = counit(f, G)
        for x in f.source.elements:
            r, table = counit_explicit_preimage(f, x)
            assert r == f.map[x]
            e = f.target.c(r)
            assert table in G.alphas[e]
            xi = G.alphas[e].index(table)
            elem = eps.lam_gamma.index[(r, xi)]
            assert eps.morphism.map[elem] == x


def test_prop_inv_terminal_and_p21(sl2_inv, p21):
    rep = prop_inv_check(terminal_presheaf(sl2_inv))
    assert rep.all_agree() and rep.inverse
    rep2 = prop_inv_check(p21)
    assert rep2.all_agree() and not rep2.inverse


def test_prop_inv_representable(sl2_inv):
    for e in sl2_inv.idempotents:
        rep = prop_inv_check(representable_presheaf(sl2_inv, e))
        assert rep.all_agree() and rep.inverse


def test_prop_inv_empty(sl2_inv):
    rep = prop_inv_check(empty_presheaf(sl2_inv))
    assert rep.all_agree() and rep.inverse


def test_cor_se(i2_inv, sl2_inv):
    """S(e) inverse iff e-hat subterminal iff psi_e injective."""
    for S in (i2_inv, sl2_inv):
        for e in S.idempotents:
            R = representable_semigroup(S, e)
            inverse = classify(R.semigroup).inverse
            subterminal = all(
                len(representable_presheaf(S, e).fiber(d)) <= 1
                for d in S.idempotents
            )
            injective = R.psi.is_injective
            assert inverse == subterminal == injective


def test_left_compatible(i2_inv, i2):
    maps = oracle.symmetric_inverse_maps(2)
    a = maps.index((0, -1))  # partial identity on first point
    b = maps.index((1, -1))  # first point to second
    assert not left_compatible(i2_inv, a, b)
    for s in i2.elements:
        assert left_compatible(i2_inv, s, s)
    # comparable pairs are compatible
    from stargroup.core import natural_order
    rel = natural_order(i2)
    for s in i2.elements:
        for t in i2.elements:
            if rel.leq(s, t):
                assert left_compatible(i2_inv, s, t)


def test_prop_sym(sl2_inv, i2_inv):
    for S in (sl2_inv, i2_inv):
        for e in S.idempotents:
            rep = prop_sym_check(S, e)
            assert rep.ok
            assert rep.seinv_agrees


def test_lem_rsrs(i2_inv):
    sg = i2_inv.semigroup
    for r in sg.elements:
        e = sg.c(r)
        R = representable_semigroup(i2_inv, e)
        pos = {pair: i for i, pair in enumerate(R.carrier)}
        for s in sg.elements:
            rs = sg.mul[r][s]
            a = pos[(r, e)]
            b = pos[(rs, sg.c(rs))]
            c = pos[(sg.mul[sg.d(r)][s], sg.mul[r][sg.c(s)])]
            se = R.semigroup
            assert se.mul[a][c] == b
            da = se.mul[se.star[a]][a]
            assert se.mul[da][c] == c


def test_ideal_correspondence(i2_inv, i2):
    maps = oracle.symmetric_inverse_maps(2)
    empty = maps.index((-1, -1))
    all_idems = set(i2_inv.idempotents)
    rep = ideal_correspondence(i2_inv, all_idems)
    assert rep.normal and set(rep.ideal) == set(i2.elements)
    rep0 = ideal_correspondence(i2_inv, ())
    assert rep0.normal and rep0.ideal == ()
    repm = ideal_correspondence(i2_inv, {empty})
    assert repm.normal and repm.ideal == (empty,)
    # a non-normal subset: a single rank-1 partial identity
    one = maps.index((0, -1))
    repn = ideal_correspondence(i2_inv, {one})
    assert not repn.normal and repn.witness is not None


def test_ideals_match_subterminal_count(i2_inv):
    """Normal idempotent subsets = subterminal presheaves; both count 4."""
    import itertools
    idems = i2_inv.idempotents
    normal = 0
    for k in range(len(idems) + 1):
        for D in itertools.combinations(idems, k):
            if ideal_correspondence(i2_inv, D).normal:
                normal += 1
    assert normal == 4


def test_etale_lift_on_lambda(p21):
    """Lifting s = f(e,x)s at a projection (e, x) of Lambda(P) lands on
    (s, x.ss*); in particular the lift of 0 at (1, u) is (0, w)."""
    LP = lam(p21)
    sg = p21.base.semigroup
    f = LP.structure_map
    one_u = LP.index[(1, 0)]
    zero_w = LP.index[(0, 0)]
    assert etale_lift(f, one_u, 0) == zero_w
    for i, (e, x) in enumerate(LP.pairs):
        if i not in projections(LP.semigroup):
            continue
        for t in sg.elements:
            if sg.mul[e][t] != t:
                continue
            expected = LP.index[(t, p21.transition(sg.c(t), e)[x])]
            assert etale_lift(f, i, t) == expected


def test_unit_natural_in_the_presheaf(p21, sl2_inv):
    """Naturality of eta in P: for a presheaf map gamma the square with
    Gamma(Lambda(gamma)) commutes."""
    Q = terminal_presheaf(sl2_inv)
    gmap = validate_presheaf_map(p21, Q, {1: (0, 0), 0: (0,)})
    uP, uQ = unit(p21), unit(Q)
    LPg = lambda_morphism(gmap, uP.lam_obj, uQ.lam_obj)
    for d in sl2_inv.idempotents:
        for a in range(len(p21.fiber(d))):
            table = uP.gamma_obj.alphas[d][uP.components[d][a]]
            moved = tuple(LPg.map[v] for v in table)
            assert moved in uQ.gamma_obj.alphas[d]
            lhs = uQ.gamma_obj.alphas[d].index(moved)
            rhs = uQ.components[d][gmap.components[d][a]]
            assert lhs == rhs


def test_bsleft_biconditional_sweep(star_pool, sl2, sl3):
    """Counit isomorphism iff (etale and left involutive), swept over every
    *-homomorphism from the order <= 2 population into SL2 and the 3-chain;
    the sweep contains positives and negatives in all relevant cells."""
    import itertools

    sources = [X for X in star_pool if X.order <= 2]
    cells = set()
    for X in sources:
        for S in (sl2, sl3):
            for fmap in itertools.product(range(S.order), repeat=X.order):
                f = StarMorphism(X, S, fmap)
                if not f.is_star_hom:
                    continue
                data = bsleft_eval(f)
                assert data["iso"] == (data["etale"] and data["left_involutive"])
                cells.add((data["etale"], data["left_involutive"], data["bijective"]))
    assert (True, True, True) in cells       # positive instances
    assert any(not e or not l for e, l, _ in cells)  # negative instances
