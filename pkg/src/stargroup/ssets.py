"""Involutive, left involutive, and balanced S-sets; the canonical lifting
action of an etale left *-homomorphism; the product retwist.

An S-set is an involutive set with a structure map into a *-semigroup and a
full action table.  Action tables are stored in full: every check here is an
exhaustive sweep anyway.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    ConsistencyError,
    EquivalenceBroken,
    FiniteStarSemigroup,
    NotEtale,
    ShapeError,
    StarError,
    StarMorphism,
    classify,
    is_etale,
    validate_star_semigroup,
)


class SSetInvalid(StarError):
    def __init__(self, violations):
        self.violations = tuple(violations)
        super().__init__("; ".join(f"{k}{w}" for k, w in self.violations))


@dataclass(eq=False)
class SSetStructure:
    """Carrier with involution, structure map into S, and action table."""

    size: int
    star: tuple[int, ...]
    base: FiniteStarSemigroup
    smap: tuple[int, ...]
    action: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        self.star = tuple(self.star)
        self.smap = tuple(self.smap)
        self.action = tuple(tuple(row) for row in self.action)
        if len(self.star) != self.size or len(self.smap) != self.size:
            raise ShapeError("star/smap length mismatch")
        if len(self.action) != self.size or any(
            len(r) != self.base.order for r in self.action
        ):
            raise ShapeError("action table has wrong shape")
        self._cache = {}

    @property
    def elements(self):
        return range(self.size)

    def act(self, x: int, s: int) -> int:
        return self.action[x][s]

    def _cached(self, key, compute):
        if key not in self._cache:
            self._cache[key] = compute()
        return self._cache[key]

    def __repr__(self):
        return f"SSet(size={self.size}, base={self.base!r})"


def check_sset(A: SSetStructure):
    """Violations of the involutive S-set axioms."""
    S = A.base
    out = []
    for x in A.elements:
        if A.star[A.star[x]] != x:
            out.append(("InvolutionViolation", (x,)))
            break
    for x in A.elements:
        if A.smap[A.star[x]] != S.star[A.smap[x]]:
            out.append(("StarMorphismViolation", (x,)))
            break
    wit = next(
        ((x, s) for x in A.elements for s in S.elements
         if A.smap[A.act(x, s)] != S.mul[A.smap[x]][s]),
        None,
    )
    if wit is not None:
        out.append(("EquivarianceViolation", wit))
    wit = next(
        ((x,) for x in A.elements if A.act(x, S.d(A.smap[x])) != x),
        None,
    )
    if wit is not None:
        out.append(("UnitViolation", wit))
    wit = next(
        ((x, s, t) for x in A.elements for s in S.elements for t in S.elements
         if A.act(A.act(x, s), t) != A.act(x, S.mul[s][t])),
        None,
    )
    if wit is not None:
        out.append(("ActionAssociativityViolation", wit))
    return tuple(out)


def make_sset(size, star, base, smap, action) -> SSetStructure:
    A = SSetStructure(size, star, base, smap, action)
    violations = check_sset(A)
    if violations:
        raise SSetInvalid(violations)
    return A


def left_identity_witness(A: SSetStructure):
    """(xs)* = (x* . f(x)s)* . f(x)* sweep; None when the identity holds."""
    S = A.base
    for x in A.elements:
        fx = A.smap[x]
        for s in S.elements:
            lhs = A.star[A.act(x, s)]
            rhs = A.act(A.star[A.act(A.star[x], S.mul[fx][s])], S.star[fx])
            if lhs != rhs:
                return (x, s)
    return None


def is_left_involutive_sset(A: SSetStructure) -> bool:
    return A._cached("left", lambda: left_identity_witness(A) is None)


def left_action(A: SSetStructure, r: int, x: int) -> int:
    """rx = (x* r*)*."""
    out = A.star[A.act(A.star[x], A.base.star[r])]
    _left_action_sweep(A)
    return out


def _left_action_sweep(A: SSetStructure):
    """When A is balanced over an inverse base, the left action must satisfy
    (rx)s = r(xs) and f(rx) = r f(x); swept once per structure."""
    def compute():
        rep = balanced_check(A)
        if not rep.balanced or not classify(A.base).inverse:
            return True
        S = A.base
        la = lambda r, x: A.star[A.act(A.star[x], S.star[r])]
        for r in S.elements:
            for x in A.elements:
                rx = la(r, x)
                if A.smap[rx] != S.mul[r][A.smap[x]]:
                    raise ConsistencyError(f"left action not equivariant at {(r, x)}")
                for s in S.elements:
                    if A.act(rx, s) != la(r, A.act(x, s)):
                        raise ConsistencyError(
                            f"left/right actions do not commute at {(r, x, s)}")
        return True
    return A._cached("left_action_sweep", compute)


@dataclass(frozen=True)
class BalancedReport:
    cond1: bool
    cond2: bool
    balanced: bool
    left_identity: bool
    witness1: tuple | None = None
    witness2: tuple | None = None


def balanced_check(A: SSetStructure) -> BalancedReport:
    """Check the two balance conditions and compare with the left identity.

    Balanced always implies the left identity; over an inverse base the two
    are equivalent.  Either implication failing raises EquivalenceBroken.
    """
    def compute():
        S = A.base
        w1 = None
        for x in A.elements:
            for r in S.elements:
                xr = A.star[A.act(A.star[x], S.star[r])]  # rx
                for s in S.elements:
                    lhs = A.act(xr, s)
                    rhs = A.star[A.act(A.star[A.act(x, s)], S.star[r])]
                    if lhs != rhs:
                        w1 = (x, r, s)
                        break
                if w1:
                    break
            if w1:
                break
        w2 = next(
            ((x,) for x in A.elements
             if A.star[A.act(x, A.smap[A.star[x]])] != A.act(x, A.smap[A.star[x]])),
            None,
        )
        balanced = w1 is None and w2 is None
        left = is_left_involutive_sset(A)
        if balanced and not left:
            raise EquivalenceBroken(
                "balanced S-set without the left identity")
        if classify(S).inverse and balanced != left:
            raise EquivalenceBroken(
                "balanced and left involutive disagree over an inverse base")
        return BalancedReport(w1 is None, w2 is None, balanced, left, w1, w2)
    return A._cached("balanced", compute)


# ---------------------------------------------------------------------------
# canonical action and the category isomorphism


def canonical_action(f: StarMorphism) -> SSetStructure:
    """The lifting action of an etale left *-homomorphism: xs is the unique
    c(x)-fixpoint over f(x)s."""
    if not is_etale(f):
        raise NotEtale(f"{f!r} is not etale")
    X, S = f.source, f.target
    action = []
    for x in X.elements:
        cx = X.c(x)
        row = []
        for s in S.elements:
            target = S.mul[f.map[x]][s]
            hits = [z for z in X.elements
                    if X.mul[cx][z] == z and f.map[z] == target]
            if len(hits) != 1:
                raise ConsistencyError(
                    f"canonical action ambiguous at ({x}, {s}): {hits}")
            row.append(hits[0])
        action.append(tuple(row))
    A = make_sset(X.order, X.star, S, f.map, action)
    if classify(X).left_involutive and classify(S).left_involutive:
        if not is_left_involutive_sset(A):
            raise ConsistencyError(
                "canonical action of left involutive data lost the left identity")
    return A


def sset_to_semigroup(A: SSetStructure):
    """The *-semigroup with product xy = x . f(y); returns (X, f) with f an
    etale *-homomorphism whose canonical action recovers A."""
    mul = [[A.act(x, A.smap[y]) for y in A.elements] for x in A.elements]
    X = validate_star_semigroup(A.size, mul, A.star)
    f = StarMorphism(X, A.base, A.smap)
    if not f.is_star_hom:
        raise ConsistencyError("structure map of an S-set is not a *-homomorphism")
    if not is_etale(f):
        raise ConsistencyError("structure map of an S-set is not etale")
    if canonical_action(f).action != A.action:
        raise ConsistencyError("canonical action does not recover the S-set action")
    return X, f


@dataclass(frozen=True)
class RetwistResult:
    semigroup: FiniteStarSemigroup      # (X, x) with x*y = x f(y)
    structure_map: StarMorphism         # (X, x) -> S, now a *-homomorphism
    forward: StarMorphism               # identity map X -> (X, x)
    conditions: tuple[bool, bool, bool, bool]
    product_unchanged: bool


def retwist(f: StarMorphism) -> RetwistResult:
    """Replace the product of X by x(x)y = x f(y) so that f becomes an etale
    *-homomorphism; checks the four-way equivalence with f being one already."""
    if not is_etale(f):
        raise NotEtale(f"{f!r} is not etale")
    X = f.source
    A = canonical_action(f)
    X2, f2 = sset_to_semigroup(A)
    forward = StarMorphism(X, X2, tuple(X.elements), name="retwist")
    if not (forward.is_left_star_hom and forward.is_bijective
            and is_etale(forward)):
        raise ConsistencyError("identity into the retwist must be a bijective "
                               "etale left *-homomorphism")
    backward = StarMorphism(X2, X, tuple(X.elements))
    cond1 = forward.is_left_star_hom and forward.is_bijective and backward.is_left_star_hom
    cond2 = backward.is_left_star_hom
    cond3 = f.is_star_hom
    cond4 = forward.is_star_hom and forward.is_bijective
    conditions = (cond1, cond2, cond3, cond4)
    # 1 <=> 2 and 3 <=> 4 always; 3 => 1.  The converse 1 => 3 fails: a
    # non-multiplicative etale left *-homomorphism can still have a left
    # *-homomorphism as the backward identity (X, x) -> X, making the
    # forward identity a left *-isomorphism that is not a *-isomorphism.
    if cond1 != cond2 or cond3 != cond4 or (cond3 and not cond1):
        raise EquivalenceBroken(f"retwist equivalence broken: {conditions}")
    if cond3 != (X2.mul == X.mul):
        raise EquivalenceBroken("f multiplicative must mean the product is unchanged")
    return RetwistResult(X2, f2, forward, conditions, X2.mul == X.mul)
