"""The left cancellative category L(S) of an inverse semigroup, finite
presheaves on it, and the representable left involutive semigroups S(e).

Presheaves store a transition table for every L(S)-morphism, so validation
is pure table checking.  Fiber labels are opaque strings; internally each
fiber is addressed by dense indices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .core import (
    ConsistencyError,
    FiniteStarSemigroup,
    NotIdempotent,
    ShapeError,
    StarError,
    StarMorphism,
    classify,
    idempotents,
    is_etale,
)


class NotInverse(StarError):
    pass


class PresheafInvalid(StarError):
    def __init__(self, violations):
        self.violations = tuple(violations)
        super().__init__("; ".join(f"{k}{w}" for k, w in self.violations))


class NotNatural(StarError):
    pass


@dataclass(frozen=True)
class InverseSemigroup:
    """A validated inverse semigroup; star is the unique quasi-inverse."""

    semigroup: FiniteStarSemigroup

    @property
    def order(self):
        return self.semigroup.order

    @property
    def idempotents(self) -> tuple[int, ...]:
        return idempotents(self.semigroup)

    def __repr__(self):
        return f"InverseSemigroup({self.semigroup.name or '?'})"


def as_inverse(X: FiniteStarSemigroup) -> InverseSemigroup:
    """Wrap X as an inverse semigroup; verifies the star really is the
    unique quasi-inverse of each element."""
    report = classify(X)
    if not report.inverse:
        raise NotInverse(
            f"{X!r} is not inverse (witness {report.witness('inverse') or report.witness('commuting_projections')})"
        )
    for x in X.elements:
        quasi = [y for y in X.elements
                 if X.mul[X.mul[x][y]][x] == x and X.mul[X.mul[y][x]][y] == y]
        if quasi != [X.star[x]]:
            raise NotInverse(f"star of {x} is not the unique quasi-inverse")
    return InverseSemigroup(X)


@dataclass(frozen=True)
class LSMorphism:
    """A morphism s: d -> e of L(S): s*s = d and es = s."""

    s: int
    e: int

    def __repr__(self):
        return f"({self.s} -> {self.e})"


def ls_dom(S: InverseSemigroup, m: LSMorphism) -> int:
    sg = S.semigroup
    return sg.mul[sg.star[m.s]][m.s]


def ls_identity(e: int) -> LSMorphism:
    return LSMorphism(e, e)


def ls_morphisms(S: InverseSemigroup, d: int, e: int) -> tuple[LSMorphism, ...]:
    """All morphisms d -> e, ascending element order."""
    sg = S.semigroup
    for v in (d, e):
        if sg.mul[v][v] != v:
            raise NotIdempotent(f"{v} is not idempotent")
    return tuple(
        LSMorphism(s, e)
        for s in sg.elements
        if sg.mul[sg.star[s]][s] == d and sg.mul[e][s] == s
    )


@lru_cache(maxsize=None)
def all_ls_morphisms(S: InverseSemigroup) -> tuple[LSMorphism, ...]:
    sg = S.semigroup
    return tuple(
        LSMorphism(s, e)
        for e in S.idempotents
        for s in sg.elements
        if sg.mul[e][s] == s
    )


def compose_ls(S: InverseSemigroup, m1: LSMorphism, m2: LSMorphism) -> LSMorphism:
    """m1 after m2: for m1: d -> e and m2: c -> d the product m1.s * m2.s."""
    if ls_dom(S, m1) != m2.e:
        raise ShapeError(f"{m1} and {m2} are not composable")
    return LSMorphism(S.semigroup.mul[m1.s][m2.s], m1.e)


@dataclass(frozen=True)
class PullbackSquare:
    apex: int
    to_dom_first: LSMorphism   # apex -> dom(s)
    to_dom_second: LSMorphism  # apex -> dom(t)


def ls_pullback(S: InverseSemigroup, s: LSMorphism, t: LSMorphism) -> PullbackSquare:
    """The chosen pullback of s and t over their common codomain, with the
    universal property verified by exhaustive cone search."""
    if s.e != t.e:
        raise ShapeError("pullback legs need a common codomain")
    sg = S.semigroup
    cs = sg.c(s.s)
    ct = sg.c(t.s)
    apex = sg.mul[cs][ct]
    ds, dt = ls_dom(S, s), ls_dom(S, t)
    leg1 = LSMorphism(sg.mul[sg.star[s.s]][ct], ds)
    leg2 = LSMorphism(sg.mul[sg.star[t.s]][cs], dt)
    if ls_dom(S, leg1) != apex or ls_dom(S, leg2) != apex:
        raise ConsistencyError("pullback legs have the wrong domain")
    if compose_ls(S, s, leg1).s != compose_ls(S, t, leg2).s:
        raise ConsistencyError("chosen pullback square does not commute")
    for b in S.idempotents:
        for u in ls_morphisms(S, b, ds):
            for v in ls_morphisms(S, b, dt):
                if sg.mul[s.s][u.s] != sg.mul[t.s][v.s]:
                    continue
                hits = [
                    w
                    for w in ls_morphisms(S, b, apex)
                    if sg.mul[leg1.s][w.s] == u.s and sg.mul[leg2.s][w.s] == v.s
                ]
                if len(hits) != 1:
                    raise ConsistencyError(
                        f"universal property fails for cone ({u}, {v}): {hits}"
                    )
    return PullbackSquare(apex, leg1, leg2)


# ---------------------------------------------------------------------------
# presheaves


@dataclass
class Presheaf:
    base: InverseSemigroup
    fibers: dict[int, tuple[str, ...]]
    transitions: dict[tuple[int, int], tuple[int, ...]]

    def fiber(self, e: int) -> tuple[str, ...]:
        return self.fibers[e]

    def transition(self, s: int, e: int) -> tuple[int, ...]:
        return self.transitions[(s, e)]

    def total_size(self) -> int:
        return sum(len(v) for v in self.fibers.values())

    def is_empty(self) -> bool:
        return self.total_size() == 0

    def __eq__(self, other):
        return (isinstance(other, Presheaf)
                and self.base == other.base
                and self.fibers == other.fibers
                and self.transitions == other.transitions)

    def __repr__(self):
        sizes = {e: len(v) for e, v in sorted(self.fibers.items())}
        return f"Presheaf({self.base!r}, fibers={sizes})"


def check_presheaf(base: InverseSemigroup, fibers, transitions):
    sg = base.semigroup
    problems = []
    fibers = {int(e): tuple(str(x) for x in labels) for e, labels in fibers.items()}
    transitions = {
        (int(s), int(e)): tuple(int(v) for v in vals)
        for (s, e), vals in transitions.items()
    }
    idems = set(base.idempotents)
    if set(fibers) != idems:
        raise ShapeError(f"fibers must be keyed by the idempotents {sorted(idems)}")
    for e, labels in fibers.items():
        if len(set(labels)) != len(labels):
            raise ShapeError(f"duplicate labels in fiber {e}")
    morphs = all_ls_morphisms(base)
    if set(transitions) != {(m.s, m.e) for m in morphs}:
        raise ShapeError("transitions must be keyed by every L(S)-morphism")
    for m in morphs:
        tr = transitions[(m.s, m.e)]
        d = ls_dom(base, m)
        if len(tr) != len(fibers[m.e]):
            raise ShapeError(f"transition along {m} has wrong length")
        if any(not 0 <= v < len(fibers[d]) for v in tr):
            raise ShapeError(f"transition along {m} maps outside fiber {d}")
    for e in base.idempotents:
        tr = transitions[(e, e)]
        if tr != tuple(range(len(fibers[e]))):
            problems.append(("IdentityViolation", (e,)))
    for m1 in morphs:
        for m2 in morphs:
            if ls_dom(base, m1) != m2.e:
                continue
            m12 = compose_ls(base, m1, m2)
            t1 = transitions[(m1.s, m1.e)]
            t2 = transitions[(m2.s, m2.e)]
            t12 = transitions[(m12.s, m12.e)]
            if t12 != tuple(t2[t1[i]] for i in range(len(t1))):
                problems.append(
                    ("CompositionViolation", ((m1.s, m1.e), (m2.s, m2.e))))
    return fibers, transitions, problems


def validate_presheaf(base: InverseSemigroup, fibers, transitions) -> Presheaf:
    fibers, transitions, problems = check_presheaf(base, fibers, transitions)
    if problems:
        raise PresheafInvalid(problems)
    return Presheaf(base, fibers, transitions)


def terminal_presheaf(S: InverseSemigroup) -> Presheaf:
    fibers = {e: ("*",) for e in S.idempotents}
    transitions = {(m.s, m.e): (0,) for m in all_ls_morphisms(S)}
    return validate_presheaf(S, fibers, transitions)


def empty_presheaf(S: InverseSemigroup) -> Presheaf:
    fibers = {e: () for e in S.idempotents}
    transitions = {(m.s, m.e): () for m in all_ls_morphisms(S)}
    return validate_presheaf(S, fibers, transitions)


def representable_presheaf(S: InverseSemigroup, e: int) -> Presheaf:
    """e-hat: fiber at d is Hom(d, e), transition by composition."""
    sg = S.semigroup
    if sg.mul[e][e] != e:
        raise NotIdempotent(f"{e} is not idempotent")
    homs = {d: ls_morphisms(S, d, e) for d in S.idempotents}
    fibers = {d: tuple(str(m.s) for m in homs[d]) for d in S.idempotents}
    transitions = {}
    for t in all_ls_morphisms(S):
        d = t.e
        c = ls_dom(S, t)
        pos = {m.s: i for i, m in enumerate(homs[c])}
        transitions[(t.s, t.e)] = tuple(
            pos[compose_ls(S, m, t).s] for m in homs[d]
        )
    return validate_presheaf(S, fibers, transitions)


@dataclass
class PresheafMap:
    """A natural transformation between presheaves on the same base."""

    source: Presheaf
    target: Presheaf
    components: dict[int, tuple[int, ...]]


def validate_presheaf_map(source: Presheaf, target: Presheaf, components) -> PresheafMap:
    if source.base != target.base:
        raise ShapeError("presheaf map needs a common base")
    base = source.base
    components = {int(e): tuple(int(v) for v in c) for e, c in components.items()}
    if set(components) != set(source.fibers):
        raise ShapeError("components must be keyed by every idempotent")
    for e, comp in components.items():
        if len(comp) != len(source.fiber(e)):
            raise ShapeError(f"component at {e} has wrong length")
        if any(not 0 <= v < len(target.fiber(e)) for v in comp):
            raise ShapeError(f"component at {e} maps outside the target fiber")
    for m in all_ls_morphisms(base):
        d = ls_dom(base, m)
        src_t = source.transition(m.s, m.e)
        tgt_t = target.transition(m.s, m.e)
        for i in range(len(source.fiber(m.e))):
            if components[d][src_t[i]] != tgt_t[components[m.e][i]]:
                raise NotNatural(f"naturality square fails along {m} at {i}")
    return PresheafMap(source, target, components)


# ---------------------------------------------------------------------------
# representable semigroups S(e)


@lru_cache(maxsize=None)
def representable_carrier(S: InverseSemigroup, e: int) -> tuple[tuple[int, int], ...]:
    """Pairs (r, s) with d(s) = c(r) and es = s, lexicographic order."""
    sg = S.semigroup
    if sg.mul[e][e] != e:
        raise NotIdempotent(f"{e} is not idempotent")
    return tuple(
        (r, s)
        for r in sg.elements
        for s in sg.elements
        if sg.mul[sg.star[s]][s] == sg.mul[r][sg.star[r]] and sg.mul[e][s] == s
    )


def _se_mul(sg, a, b):
    p, q = a
    r, s = b
    pr = sg.mul[p][r]
    return (pr, sg.mul[q][sg.mul[pr][sg.star[pr]]])


def _se_star(sg, a):
    r, s = a
    return (sg.star[r], sg.mul[s][r])


@dataclass(frozen=True)
class RepresentableSemigroup:
    base: InverseSemigroup
    e: int
    carrier: tuple[tuple[int, int], ...]
    semigroup: FiniteStarSemigroup
    psi: StarMorphism

    def position(self, pair) -> int:
        return self.carrier.index(pair)


@lru_cache(maxsize=None)
def representable_semigroup(S: InverseSemigroup, e: int) -> RepresentableSemigroup:
    """S(e) with structure map psi(r, s) = r; validated left involutive with
    psi an etale *-homomorphism, and cross-checked against Lambda(e-hat)."""
    sg = S.semigroup
    carrier = representable_carrier(S, e)
    pos = {pair: i for i, pair in enumerate(carrier)}
    k = len(carrier)
    mul = [[pos[_se_mul(sg, carrier[i], carrier[j])] for j in range(k)]
           for i in range(k)]
    star = [pos[_se_star(sg, carrier[i])] for i in range(k)]
    from .core import validate_star_semigroup
    sename = f"S({sg.name}|{e})" if sg.name else f"S(?|{e})"
    se = validate_star_semigroup(k, mul, star, name=sename)
    if not classify(se).left_involutive:
        raise ConsistencyError(f"{sename} is not left involutive")
    psi = StarMorphism(se, sg, tuple(r for r, s in carrier), name=f"psi_{e}")
    if not psi.is_star_hom:
        raise ConsistencyError(f"psi_{e} is not a *-homomorphism")
    if not is_etale(psi):
        raise ConsistencyError(f"psi_{e} is not etale")
    _check_against_lambda(S, e, se, carrier)
    return RepresentableSemigroup(S, e, carrier, se, psi)


def _check_against_lambda(S, e, se, carrier):
    # S(e) must equal Lambda(e-hat) element for element
    from . import topos

    ehat = representable_presheaf(S, e)
    LP = topos.lam(ehat)
    sg = S.semigroup
    fiber_elem = {
        d: [int(lbl) for lbl in ehat.fiber(d)] for d in S.idempotents
    }
    mapping = []
    for (r, x) in LP.pairs:
        s = fiber_elem[sg.c(r)][x]
        mapping.append(carrier.index((r, s)))
    if sorted(mapping) != list(range(len(carrier))):
        raise ConsistencyError("Lambda(e-hat) and S(e) carriers differ")
    lsg = LP.semigroup
    for i in range(lsg.order):
        if se.star[mapping[i]] != mapping[lsg.star[i]]:
            raise ConsistencyError("Lambda(e-hat) and S(e) stars differ")
        for j in range(lsg.order):
            if se.mul[mapping[i]][mapping[j]] != mapping[lsg.mul[i][j]]:
                raise ConsistencyError("Lambda(e-hat) and S(e) products differ")


def representable_action(S: InverseSemigroup, m: LSMorphism) -> StarMorphism:
    """S(m): S(d) -> S(e) over S, (u, v) |-> (u, m.s v)."""
    sg = S.semigroup
    d = ls_dom(S, m)
    src = representable_semigroup(S, d)
    tgt = representable_semigroup(S, m.e)
    tpos = {pair: i for i, pair in enumerate(tgt.carrier)}
    mapping = tuple(
        tpos[(u, sg.mul[m.s][v])] for (u, v) in src.carrier
    )
    f = StarMorphism(src.semigroup, tgt.semigroup, mapping,
                     name=f"S({m.s}->{m.e})")
    if not f.is_star_hom:
        raise ConsistencyError(f"S({m}) is not a *-homomorphism")
    if any(tgt.psi.map[f.map[i]] != src.psi.map[i]
           for i in range(src.semigroup.order)):
        raise ConsistencyError(f"S({m}) is not over S")
    _representable_functoriality(S)
    return f


@lru_cache(maxsize=None)
def _representable_functoriality(S: InverseSemigroup) -> bool:
    """S(st) = S(s)S(t) for all composable pairs; ran once per base."""
    sg = S.semigroup
    morphs = all_ls_morphisms(S)
    raw = {}
    for m in morphs:
        d = ls_dom(S, m)
        src = representable_carrier(S, d)
        tgt = representable_carrier(S, m.e)
        tpos = {pair: i for i, pair in enumerate(tgt)}
        raw[(m.s, m.e)] = tuple(tpos[(u, sg.mul[m.s][v])] for (u, v) in src)
    for m1 in morphs:
        for m2 in morphs:
            if ls_dom(S, m1) != m2.e:
                continue
            m12 = compose_ls(S, m1, m2)
            t1, t2 = raw[(m1.s, m1.e)], raw[(m2.s, m2.e)]
            if raw[(m12.s, m12.e)] != tuple(t1[v] for v in t2):
                raise ConsistencyError(f"S({m1})S({m2}) != S({m12})")
    return True


# ---------------------------------------------------------------------------
# presheaf enumeration and random generation


def _presheaf_skeleton(S: InverseSemigroup):
    """Non-identity morphisms in assignment order plus, per morphism, its
    factorizations into earlier-or-identity morphisms."""
    idems = set(S.idempotents)
    morphs = list(all_ls_morphisms(S))
    nonid = [m for m in morphs if not (m.s == m.e and m.s in idems)]
    factorizations = {}
    for m in morphs:
        facts = []
        for m1 in morphs:
            for m2 in morphs:
                if ls_dom(S, m1) != m2.e:
                    continue
                if compose_ls(S, m1, m2) == m:
                    facts.append((m1, m2))
        factorizations[m] = facts
    return nonid, factorizations


def _valid_size_profiles(S, max_fiber):
    idems = list(S.idempotents)
    morphs = all_ls_morphisms(S)
    arrows = {(ls_dom(S, m), m.e) for m in morphs}
    for sizes in itertools.product(range(max_fiber + 1), repeat=len(idems)):
        profile = dict(zip(idems, sizes))
        ok = all(
            not (profile[e] > 0 and profile[d] == 0)
            for (d, e) in arrows
        )
        if ok:
            yield profile


def _fill_transitions(S, profile, rng=None):
    """Yield complete transition assignments for the given fiber sizes via
    backtracking over non-identity morphisms with forced composites."""
    idems = list(S.idempotents)
    nonid, factorizations = _presheaf_skeleton(S)
    assign = {(e, e): tuple(range(profile[e])) for e in idems}

    def candidates(m):
        d = ls_dom(S, m)
        size_e, size_d = profile[m.e], profile[d]
        forced = None
        for m1, m2 in factorizations[m]:
            k1, k2 = (m1.s, m1.e), (m2.s, m2.e)
            if k1 in assign and k2 in assign:
                t = tuple(assign[k2][assign[k1][i]] for i in range(size_e))
                if forced is not None and t != forced:
                    return []
                forced = t
        if forced is not None:
            return [forced]
        opts = list(itertools.product(range(size_d), repeat=size_e))
        if rng is not None:
            rng.shuffle(opts)
        return opts

    def consistent():
        for m, facts in factorizations.items():
            key = (m.s, m.e)
            if key not in assign:
                continue
            for m1, m2 in facts:
                k1, k2 = (m1.s, m1.e), (m2.s, m2.e)
                if k1 in assign and k2 in assign:
                    size_e = profile[m.e]
                    if assign[key] != tuple(
                        assign[k2][assign[k1][i]] for i in range(size_e)
                    ):
                        return False
        return True

    def fill(k):
        if k == len(nonid):
            yield dict(assign)
            return
        m = nonid[k]
        key = (m.s, m.e)
        for cand in candidates(m):
            assign[key] = cand
            if consistent():
                yield from fill(k + 1)
            del assign[key]

    yield from fill(0)


def enumerate_presheaves(S: InverseSemigroup, max_fiber: int):
    """All presheaves on L(S) with every fiber of size <= max_fiber,
    deterministic order, canonical string labels."""
    for profile in _valid_size_profiles(S, max_fiber):
        fibers = {e: tuple(str(i) for i in range(n))
                  for e, n in profile.items()}
        for transitions in _fill_transitions(S, profile):
            yield validate_presheaf(S, fibers, transitions)


def random_presheaf(S: InverseSemigroup, max_fiber: int, rng) -> Presheaf:
    """One random valid presheaf; deterministic for a given rng state."""
    profiles = [p for p in _valid_size_profiles(S, max_fiber)
                if sum(p.values()) > 0]
    rng.shuffle(profiles)
    for profile in profiles:
        for transitions in _fill_transitions(S, profile, rng=rng):
            fibers = {e: tuple(str(i) for i in range(n))
                      for e, n in profile.items()}
            return validate_presheaf(S, fibers, transitions)
    raise ConsistencyError("no valid presheaf found")
