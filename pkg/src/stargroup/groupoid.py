"""Ordered groupoids with mediator and the two ESN functors.

A groupoid is stored with explicit dom/cod/identity/inverse arrays, a
partial composition table (-1 marks undefined), a materialized partial
order on morphisms, and an optional total mediator table on object pairs.
The object order is always derived from the morphism order restricted to
identities; it is never stored separately.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache

from .core import (
    ConsistencyError,
    FiniteStarSemigroup,
    Relation,
    ShapeError,
    StarError,
    classify,
    natural_order,
    projections,
    validate_star_semigroup,
)


class NotBounded(StarError):
    pass


class NonUnique(StarError):
    pass


class NotComparable(StarError):
    pass


class NotQuasiInvolutive(StarError):
    pass


class InvalidGroupoid(StarError):
    pass


@dataclass(frozen=True)
class OrderedGroupoidWithMediator:
    n_objects: int
    n_morphisms: int
    dom: tuple[int, ...]
    cod: tuple[int, ...]
    identity: tuple[int, ...]
    inverse: tuple[int, ...]
    compose: tuple[tuple[int, ...], ...]  # compose[x][y] = x after y, -1 undefined
    order: Relation
    mediator: tuple[tuple[int, ...], ...] | None = None
    name: str | None = None

    @property
    def objects(self) -> range:
        return range(self.n_objects)

    @property
    def morphisms(self) -> range:
        return range(self.n_morphisms)

    def object_leq(self, p: int, q: int) -> bool:
        return self.order.leq(self.identity[p], self.identity[q])

    def __repr__(self):
        tag = self.name or "?"
        med = "+mediator" if self.mediator is not None else ""
        return (f"OrderedGroupoid({tag}, objects={self.n_objects}, "
                f"morphisms={self.n_morphisms}{med})")


def _shape_check(G: OrderedGroupoidWithMediator):
    n, m = G.n_morphisms, G.n_objects
    if m < 1 or n < 1:
        raise ShapeError("empty groupoid")
    if len(G.dom) != n or len(G.cod) != n or len(G.inverse) != n:
        raise ShapeError("morphism arrays have wrong length")
    if len(G.identity) != m:
        raise ShapeError("identity array has wrong length")
    if len(G.compose) != n or any(len(r) != n for r in G.compose):
        raise ShapeError("compose table has wrong shape")
    if G.order.size != n:
        raise ShapeError("order relation has wrong size")
    if G.mediator is not None:
        if len(G.mediator) != m or any(len(r) != m for r in G.mediator):
            raise ShapeError("mediator table has wrong shape")


def validate_groupoid(G: OrderedGroupoidWithMediator):
    """Check groupoid and ordered-groupoid axioms; raises InvalidGroupoid.

    Restriction/corestriction existence and uniqueness are checked here, so
    restrict() can later assume exactly one candidate.
    """
    _shape_check(G)
    problems = []
    n = G.n_morphisms

    for p in G.objects:
        i = G.identity[p]
        if G.dom[i] != p or G.cod[i] != p:
            problems.append(("IdentityEndpoints", (p,)))
    for x in G.morphisms:
        for y in G.morphisms:
            z = G.compose[x][y]
            defined = G.dom[x] == G.cod[y]
            if (z != -1) != defined:
                problems.append(("CompositionDomain", (x, y)))
            elif z != -1 and (G.dom[z] != G.dom[y] or G.cod[z] != G.cod[x]):
                problems.append(("CompositionEndpoints", (x, y)))
    for x in G.morphisms:
        i, j = G.identity[G.cod[x]], G.identity[G.dom[x]]
        if G.compose[i][x] != x or G.compose[x][j] != x:
            problems.append(("IdentityLaw", (x,)))
        inv = G.inverse[x]
        if G.dom[inv] != G.cod[x] or G.cod[inv] != G.dom[x]:
            problems.append(("InverseEndpoints", (x,)))
        elif (G.compose[x][inv] != G.identity[G.cod[x]]
              or G.compose[inv][x] != G.identity[G.dom[x]]):
            problems.append(("InverseLaw", (x,)))
    for x in G.morphisms:
        for y in G.morphisms:
            if G.compose[x][y] == -1:
                continue
            for z in G.morphisms:
                if G.compose[y][z] == -1:
                    continue
                if G.compose[G.compose[x][y]][z] != G.compose[x][G.compose[y][z]]:
                    problems.append(("Associativity", (x, y, z)))

    if not G.order.is_partial_order():
        problems.append(("OrderNotPartialOrder", ()))
    for x in G.morphisms:
        for y in G.morphisms:
            if G.order.leq(x, y) and not G.order.leq(G.inverse[x], G.inverse[y]):
                problems.append(("OrderInversion", (x, y)))
    for x1 in G.morphisms:
        for x2 in G.morphisms:
            if not G.order.leq(x1, x2):
                continue
            for y1 in G.morphisms:
                if G.compose[x1][y1] == -1:
                    continue
                for y2 in G.morphisms:
                    if G.compose[x2][y2] == -1 or not G.order.leq(y1, y2):
                        continue
                    if not G.order.leq(G.compose[x1][y1], G.compose[x2][y2]):
                        problems.append(("OrderComposition", (x1, y1, x2, y2)))

    for x in G.morphisms:
        for p in G.objects:
            if not G.object_leq(p, G.dom[x]):
                continue
            hits = [y for y in G.morphisms
                    if G.order.leq(y, x) and G.dom[y] == p]
            if len(hits) != 1:
                problems.append(("RestrictionNotUnique", (x, p, len(hits))))
        for q in G.objects:
            if not G.object_leq(q, G.cod[x]):
                continue
            hits = [y for y in G.morphisms
                    if G.order.leq(y, x) and G.cod[y] == q]
            if len(hits) != 1:
                problems.append(("CorestrictionNotUnique", (x, q, len(hits))))
            elif hits[0] != G.inverse[_restrict_raw(G, G.inverse[x], q)]:
                problems.append(("CorestrictionFormula", (x, q)))

    if problems:
        raise InvalidGroupoid(problems)


def _restrict_raw(G, x, p):
    hits = [y for y in G.morphisms if G.order.leq(y, x) and G.dom[y] == p]
    if len(hits) != 1:
        raise NonUnique(f"restriction of {x} to {p}: {hits}")
    return hits[0]


def restrict(G: OrderedGroupoidWithMediator, x: int, p: int) -> int:
    """The unique y <= x with dom(y) = p, for p <= dom(x)."""
    if not G.object_leq(p, G.dom[x]):
        raise NotBounded(f"object {p} is not below dom({x})")
    return _restrict_raw(G, x, p)


def corestrict(G: OrderedGroupoidWithMediator, x: int, q: int) -> int:
    """The unique y <= x with cod(y) = q, for q <= cod(x)."""
    if not G.object_leq(q, G.cod[x]):
        raise NotBounded(f"object {q} is not below cod({x})")
    hits = [y for y in G.morphisms if G.order.leq(y, x) and G.cod[y] == q]
    if len(hits) != 1:
        raise NonUnique(f"corestriction of {x} to {q}: {hits}")
    return hits[0]


def extended_compose(G: OrderedGroupoidWithMediator, x: int, y: int) -> int:
    """x (x) y: compose after restricting x down to cod(y), or corestricting
    y up to dom(x), whichever comparison holds."""
    _extended_associativity_checked(G)
    return _ext(G, x, y)


def _ext(G, x, y):
    dx, cy = G.dom[x], G.cod[y]
    if G.object_leq(cy, dx):
        return G.compose[restrict(G, x, cy)][y]
    if G.object_leq(dx, cy):
        return G.compose[x][corestrict(G, y, dx)]
    raise NotComparable(f"dom({x}) and cod({y}) are not comparable")


def _ext_or_none(G, x, y):
    dx, cy = G.dom[x], G.cod[y]
    if not (G.object_leq(cy, dx) or G.object_leq(dx, cy)):
        return None
    return _ext(G, x, y)


@lru_cache(maxsize=None)
def _extended_associativity_checked(G: OrderedGroupoidWithMediator) -> bool:
    """Sweep (x(x)y)(x)z = x(x)(y(x)z) over all chains where both sides are
    defined; ran once per groupoid."""
    for x in G.morphisms:
        for y in G.morphisms:
            xy = _ext_or_none(G, x, y)
            for z in G.morphisms:
                yz = _ext_or_none(G, y, z)
                left = None if xy is None else _ext_or_none(G, xy, z)
                right = None if yz is None else _ext_or_none(G, x, yz)
                if left is not None and right is not None and left != right:
                    raise ConsistencyError(
                        f"extended composition not associative at {(x, y, z)}"
                    )
    return True


@dataclass(frozen=True)
class MediatorReport:
    ok: bool
    violations: tuple[tuple[str, tuple], ...]


def validate_mediator(G: OrderedGroupoidWithMediator) -> MediatorReport:
    """Check order-preservation, the two bounds, and action commutation."""
    if G.mediator is None:
        raise InvalidGroupoid("groupoid carries no mediator")
    _shape_check(G)
    med = G.mediator
    out = []
    for p in G.objects:
        for q in G.objects:
            m = med[p][q]
            if not G.object_leq(G.dom[m], q):
                out.append(("DomBoundViolation", (p, q)))
            if not G.object_leq(G.cod[m], p):
                out.append(("CodBoundViolation", (p, q)))
    for p1 in G.objects:
        for q1 in G.objects:
            for p2 in G.objects:
                if not G.object_leq(p1, p2):
                    continue
                for q2 in G.objects:
                    if not G.object_leq(q1, q2):
                        continue
                    if not G.order.leq(med[p1][q1], med[p2][q2]):
                        out.append(("OrderPreservationViolation",
                                    (p1, q1, p2, q2)))
    for p in G.objects:
        for x in G.morphisms:
            try:
                px = _ext(G, med[p][G.cod[x]], x)
                for q in G.objects:
                    xq = _ext(G, x, med[G.dom[x]][q])
                    if _ext(G, px, med[G.dom[px]][q]) != _ext(G, med[p][G.cod[xq]], xq):
                        out.append(("CommutationViolation", (p, x, q)))
            except NotComparable:
                # bound violations can leave an induced action undefined
                out.append(("ActionUndefined", (p, x)))
    return MediatorReport(not out, tuple(out))


# ---------------------------------------------------------------------------
# ESN functors


def esn_ordered_groupoid(X: FiniteStarSemigroup) -> OrderedGroupoidWithMediator:
    """The ordered groupoid of a locally involutive semigroup, no mediator."""
    rel = natural_order(X)  # raises NotLocallyInvolutive if inapplicable
    projs = projections(X)
    obj_of = {p: i for i, p in enumerate(projs)}
    n = X.order
    dom_ = tuple(obj_of[X.d(x)] for x in X.elements)
    cod_ = tuple(obj_of[X.c(x)] for x in X.elements)
    compose_ = tuple(
        tuple(X.mul[x][y] if X.d(x) == X.c(y) else -1 for y in X.elements)
        for x in X.elements
    )
    return OrderedGroupoidWithMediator(
        n_objects=len(projs),
        n_morphisms=n,
        dom=dom_,
        cod=cod_,
        identity=projs,
        inverse=X.star,
        compose=compose_,
        order=rel,
        mediator=None,
        name=f"G({X.name})" if X.name else None,
    )


def esn_groupoid(X: FiniteStarSemigroup) -> OrderedGroupoidWithMediator:
    """The ordered groupoid of a quasi-involutive semigroup, with the
    canonical mediator m_pq = pq."""
    if not classify(X).quasi_involutive:
        raise NotQuasiInvolutive(f"{X!r} is not quasi-involutive")
    G0 = esn_ordered_groupoid(X)
    projs = G0.identity
    mediator = tuple(
        tuple(X.mul[p][q] for q in projs) for p in projs
    )
    G = replace(G0, mediator=mediator)
    validate_groupoid(G)
    report = validate_mediator(G)
    if not report.ok:
        raise ConsistencyError(
            f"canonical mediator of {X!r} fails validation: {report.violations[:3]}"
        )
    return G


def esn_semigroup(G: OrderedGroupoidWithMediator) -> FiniteStarSemigroup:
    """The quasi-involutive semigroup of an ordered groupoid with mediator:
    xy = x (x) m(d(x), c(y)) (x) y, star = inversion."""
    validate_groupoid(G)
    report = validate_mediator(G)
    if not report.ok:
        raise InvalidGroupoid(report.violations)
    med = G.mediator
    n = G.n_morphisms
    mul = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            t = _ext(G, x, med[G.dom[x]][G.cod[y]])
            mul[x][y] = _ext(G, t, y)
    try:
        X = validate_star_semigroup(n, mul, G.inverse,
                                    name=f"S({G.name})" if G.name else None)
    except Exception as exc:
        raise InvalidGroupoid(f"induced product is not a *-semigroup: {exc}")
    if not classify(X).quasi_involutive:
        raise InvalidGroupoid("induced semigroup is not quasi-involutive")
    idents = set(G.identity)
    if set(projections(X)) != idents:
        # the identities-are-projections claim fails; typically an order-2
        # automorphism slipped through the mediator axioms
        raise InvalidGroupoid(
            "projections of the induced semigroup differ from the identities "
            f"of the groupoid: {sorted(set(projections(X)) ^ idents)}"
        )
    for x in X.elements:
        if X.d(x) != G.identity[G.dom[x]] or X.c(x) != G.identity[G.cod[x]]:
            raise InvalidGroupoid(f"domain/codomain mismatch at morphism {x}")
    return X


def _meet(G, p, q):
    lows = [r for r in G.objects
            if G.object_leq(r, p) and G.object_leq(r, q)]
    best = [r for r in lows if all(G.object_leq(t, r) for t in lows)]
    return best[0] if best else None


def mediator_kind(G: OrderedGroupoidWithMediator) -> str:
    """'trivial' (identity at the meet), 'symmetric' (m_pq^-1 = m_qp) or
    'general'; asserted against the classification of the induced semigroup."""
    if G.mediator is None:
        raise InvalidGroupoid("groupoid carries no mediator")
    med = G.mediator
    idents = set(G.identity)
    trivial = True
    for p in G.objects:
        for q in G.objects:
            m = med[p][q]
            if m not in idents or _meet(G, p, q) != G.dom[m]:
                trivial = False
                break
        if not trivial:
            break
    symmetric = all(
        G.inverse[med[p][q]] == med[q][p]
        for p in G.objects for q in G.objects
    )
    report = classify(esn_semigroup(G))
    if trivial != report.inverse:
        raise ConsistencyError(
            f"trivial mediator={trivial} but inverse={report.inverse}")
    if symmetric != report.involutive:
        raise ConsistencyError(
            f"symmetric mediator={symmetric} but involutive={report.involutive}")
    return "trivial" if trivial else ("symmetric" if symmetric else "general")


def groupoid_equal(g1: OrderedGroupoidWithMediator,
                   g2: OrderedGroupoidWithMediator) -> bool:
    """Equality up to the canonical object bijection matching identities;
    morphism indices must agree on the nose."""
    if g1.n_morphisms != g2.n_morphisms or g1.n_objects != g2.n_objects:
        return False
    ident_to_obj2 = {g2.identity[p]: p for p in g2.objects}
    try:
        beta = [ident_to_obj2[g1.identity[p]] for p in g1.objects]
    except KeyError:
        return False
    if any(beta[g1.dom[x]] != g2.dom[x] or beta[g1.cod[x]] != g2.cod[x]
           for x in g1.morphisms):
        return False
    if g1.inverse != g2.inverse or g1.compose != g2.compose:
        return False
    if g1.order.rows != g2.order.rows:
        return False
    if (g1.mediator is None) != (g2.mediator is None):
        return False
    if g1.mediator is not None:
        for p in g1.objects:
            for q in g1.objects:
                if g1.mediator[p][q] != g2.mediator[beta[p]][beta[q]]:
                    return False
    return True
