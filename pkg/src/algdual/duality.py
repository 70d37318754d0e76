"""Finite Stone duality, GR spaces with and without involution, the
dualizing-object functors, and the lifted functors between system categories.

Everything here is finite, so all topology is discrete: compactness and
continuity are vacuous, a Stone space is a bare finite set (its dual Boolean
algebra's atoms), and "compact totally order disconnected" reduces to "the
order is a partial order" (for a !<= b the down-set of b is a clopen lower
set separating them; the validator records that witness construction).

A GR space is a partially ordered left normal band with constants; the dual
of a bisemilattice is the space of its homomorphisms into the three-element
bisemilattice, carrying the pointwise GR structure, and the dual of an
involutive bisemilattice additionally carries the involution
``(-phi)(x) = (phi(x'))'``.  Dual carriers are ordered by the canonical
(lexicographic) hom enumeration, which makes every dual table reproducible.

The one-element Boolean algebra has no atoms, so its Stone dual is the empty
space; empty terms are admitted in inverse systems and flagged in validation
reports rather than rejected.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Optional, Sequence

from .algebra import (
    Check,
    FiniteAlgebra,
    Morphism,
    OrderMatrix,
    ValidationReport,
    _search_homs,
    atoms,
    builtin,
    first_violation,
    ibsl_completion,
    is_partial_order,
    morphism_violations,
    order_from_binary,
    validate_bisemilattice,
    validate_boolean_algebra,
    validate_ibsl,
)
from .errors import (
    IsomorphismFailure,
    NotBisemilattice,
    NotBoolean,
    NotGRSpace,
    NotIBSL,
)
from .systems import (
    DirectSystem,
    DirectSystemMorphism,
    InverseSystem,
    InverseSystemMorphism,
    RawMap,
    plonka_decompose,
)

_THREE = builtin("three")
JOIN3 = _THREE.binary("join")
MEET3 = _THREE.binary("meet")
NEG3 = (1, 0, 2)
LEQ3 = order_from_binary(MEET3, "meet")


@dataclass(frozen=True)
class FiniteSpace:
    """A finite discrete space; possibly empty (dual of the one-element
    Boolean algebra)."""

    size: int

    def __post_init__(self):
        if self.size < 0:
            raise ValueError("negative size")


@dataclass(frozen=True)
class GRSpace:
    """Partially ordered left normal band with constants, finite/discrete.

    ``points``, when present, records the hom value vectors a dual space was
    built from (carrier k <-> points[k]); it is metadata, like names.
    """

    size: int
    star: tuple[tuple[int, ...], ...]
    leq: OrderMatrix
    c0: int
    c1: int
    calpha: int
    points: Optional[tuple[RawMap, ...]] = None

    def __post_init__(self):
        object.__setattr__(
            self, "star", tuple(tuple(int(v) for v in row) for row in self.star))
        object.__setattr__(
            self, "leq", tuple(tuple(bool(v) for v in row) for row in self.leq))
        n = self.size
        if n < 1:
            raise ValueError("GR spaces are non-empty (they carry constants)")
        if len(self.star) != n or any(len(r) != n for r in self.star):
            raise ValueError("star table is not square")
        if any(v < 0 or v >= n for row in self.star for v in row):
            raise ValueError("star table has out-of-range entries")
        if len(self.leq) != n or any(len(r) != n for r in self.leq):
            raise ValueError("order matrix is not square")
        for c in (self.c0, self.c1, self.calpha):
            if c < 0 or c >= n:
                raise ValueError("constant out of range")

    @property
    def box(self) -> OrderMatrix:
        """Derived order: a [= b iff a*b <= b and b*a = b."""
        return tuple(
            tuple(self.leq[self.star[a][b]][b] and self.star[b][a] == b
                  for b in range(self.size))
            for a in range(self.size))


@dataclass(frozen=True)
class GRSpaceWithInvolution:
    base: GRSpace
    neg: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "neg", tuple(int(v) for v in self.neg))
        if len(self.neg) != self.base.size:
            raise ValueError("involution is not a carrier self-map")
        if any(v < 0 or v >= self.base.size for v in self.neg):
            raise ValueError("involution has out-of-range values")

    size = property(lambda self: self.base.size)
    star = property(lambda self: self.base.star)
    leq = property(lambda self: self.base.leq)
    c0 = property(lambda self: self.base.c0)
    c1 = property(lambda self: self.base.c1)
    calpha = property(lambda self: self.base.calpha)
    box = property(lambda self: self.base.box)
    points = property(lambda self: self.base.points)


def gr_three() -> GRSpace:
    """The dualizing GR structure on the three-element chain: a*b keeps a
    unless b is the absorbing element, the order is the meet order
    (alpha < 0 < 1), and the constants are 0, 1, alpha."""
    star = tuple(
        tuple(MEET3[a][JOIN3[a][b]] for b in range(3)) for a in range(3))
    return GRSpace(3, star, LEQ3, c0=0, c1=1, calpha=2)


def wk_space() -> GRSpaceWithInvolution:
    """The canonical GR space with involution on three points."""
    return GRSpaceWithInvolution(gr_three(), NEG3)


def base_of(g) -> GRSpace:
    return g.base if isinstance(g, GRSpaceWithInvolution) else g


# ---------------------------------------------------------------------------
# GR validation
# ---------------------------------------------------------------------------

def validate_gr_space(g, subject="GR space") -> ValidationReport:
    """Left normal band + partial order + compatibility + constants (1)-(4).

    The finite stand-in for total order disconnectedness is recorded as the
    explicit check that the down-set of b separates every pair a !<= b.
    """
    g = base_of(g)
    n = g.size
    star_alg = FiniteAlgebra(n, {"star": g.star})
    checks = []
    for name, lhs, rhs in (
            ("star-idempotent", ("star", "x", "x"), "x"),
            ("star-associative",
             ("star", "x", ("star", "y", "z")),
             ("star", ("star", "x", "y"), "z")),
            ("star-left-normal",
             ("star", "x", ("star", "y", "z")),
             ("star", "x", ("star", "z", "y")))):
        w = first_violation(star_alg, lhs, rhs)
        checks.append(Check(name, w is None, w))

    w = is_partial_order(g.leq)
    checks.append(Check("order-partial", w is None, w))

    w = next(((x, y, z) for x in range(n) for y in range(n) for z in range(n)
              if g.leq[x][y] and not g.leq[g.star[x][z]][g.star[y][z]]), None)
    checks.append(Check("order-right-compatible", w is None, w))
    w = next(((x, y, z) for x in range(n) for y in range(n) for z in range(n)
              if g.leq[x][y] and not g.leq[g.star[z][x]][g.star[z][y]]), None)
    checks.append(Check("order-left-compatible", w is None, w))
    w = next(((x, y) for x in range(n) for y in range(n)
              if not g.leq[g.star[x][y]][x]), None)
    checks.append(Check("star-decreasing", w is None, w))

    ca, c0, c1 = g.calpha, g.c0, g.c1
    w = next(((x,) for x in range(n)
              if g.star[x][ca] != ca or g.star[ca][x] != ca), None)
    checks.append(Check("c-alpha-absorbing", w is None, w))
    w = next(((x,) for x in range(n)
              if g.star[x][c0] != x or g.star[x][c1] != x), None)
    checks.append(Check("c0-c1-right-neutral", w is None, w))
    box = g.box
    w = next(((x,) for x in range(n)
              if not (box[c0][x] and g.leq[x][c1]
                      and g.leq[ca][x] and box[x][ca])), None)
    checks.append(Check("constant-bounds", w is None, w))
    w = next(((x,) for x in range(n)
              if g.star[c0][x] == g.star[c1][x] and x != ca), None)
    checks.append(Check("c0-c1-separation", w is None, w))

    w = next(((a, b) for a in range(n) for b in range(n)
              if not g.leq[a][b] and not _downset_separates(g.leq, a, b)), None)
    checks.append(Check("order-disconnected", w is None, w))
    return ValidationReport(subject, tuple(checks))


def _downset_separates(leq: OrderMatrix, a: int, b: int) -> bool:
    down = [y for y in range(len(leq)) if leq[y][b]]
    return (b in down and a not in down
            and all(leq[z][y] <= (z in down) for y in down for z in range(len(leq))))


@lru_cache(maxsize=512)
def _gr_homs_to_three(base: GRSpace) -> tuple[RawMap, ...]:
    return tuple(_search_homs(base, gr_three(), "gr"))


def gr_homs(g, target: Optional[GRSpace] = None) -> list[RawMap]:
    """Value vectors of all GR morphisms (star, constants, order; no
    involution) into ``target`` (default: the dualizing three-point space),
    in lexicographic order."""
    if target is None:
        return list(_gr_homs_to_three(base_of(g)))
    return _search_homs(base_of(g), target, "gr")


def zero_morphism(g) -> Optional[RawMap]:
    """The unique join-neutral element of the hom-space into the three-point
    space (the witness phi_0 whose existence the involution axioms demand),
    or None when it does not exist.

    Morphisms of GR spaces with involution must pull the target's
    zero-morphism back to the source's; dualization turns that into
    preservation of the algebras' zero constant, and without it the
    hom-space functor would admit maps dual to no algebra hom.
    """
    homs = gr_homs(g)
    n = base_of(g).size
    neutral = [p for p in homs
               if all(JOIN3[q[a]][p[a]] == q[a] for q in homs
                      for a in range(n))]
    if len(neutral) != 1:
        return None
    return neutral[0]


def validate_gr_involution(g: GRSpaceWithInvolution,
                           subject="GR space with involution") -> ValidationReport:
    """G1-G6 on top of the base GR checks.

    G5 and G6 quantify over the enumerated hom-space into the three-point
    dualizing space, with the involution ``(-phi)(a) = (phi(-a))'`` and
    operations taken pointwise; they are evaluated only when the base checks
    pass (the hom-space is meaningless otherwise).
    """
    if not isinstance(g, GRSpaceWithInvolution):
        raise NotGRSpace("object carries no involution")
    base = g.base
    checks = list(validate_gr_space(base, subject).checks)
    n = g.size
    neg, star, leq, box = g.neg, g.star, g.leq, g.box

    w = next(((a,) for a in range(n) if neg[neg[a]] != a), None)
    checks.append(Check("G1", w is None, w))
    w = next(((a, b) for a in range(n) for b in range(n)
              if neg[star[a][b]] != star[neg[a]][neg[b]]), None)
    checks.append(Check("G2", w is None, w))
    w = next(((a, b) for a in range(n) for b in range(n)
              if leq[a][b] and not box[neg[b]][neg[a]]), None)
    checks.append(Check("G3", w is None, w))
    g4 = (neg[g.c0] == g.c1 and neg[g.c1] == g.c0 and neg[g.calpha] == g.calpha)
    checks.append(Check("G4", g4, None if g4 else (g.c0, g.c1, g.calpha)))

    if not all(c.holds for c in checks):
        checks.append(Check("G5", False, None, "not evaluated: base invalid"))
        checks.append(Check("G6", False, None, "not evaluated: base invalid"))
        return ValidationReport(subject, tuple(checks))

    homs = gr_homs(base)

    def hom_neg(phi: RawMap) -> RawMap:
        return tuple(NEG3[phi[neg[a]]] for a in range(n))

    w = None
    for pi, phi in enumerate(homs):
        nphi = hom_neg(phi)
        for qi, psi in enumerate(homs):
            for a in range(n):
                if (MEET3[phi[a]][JOIN3[nphi[a]][psi[a]]]
                        != MEET3[psi[a]][phi[a]]):
                    w = (pi, qi, a)
                    break
            if w:
                break
        if w:
            break
    checks.append(Check("G5", w is None, w,
                        "" if w is None else "indices into the hom-space"))

    found = False
    for phi0 in homs:
        phi1 = hom_neg(phi0)
        if phi1 not in homs:
            continue
        if all(JOIN3[psi[a]][phi0[a]] == psi[a]
               for psi in homs for a in range(n)):
            found = True
            break
    checks.append(Check("G6", found, None,
                        "" if found else "no neutral pair phi0, phi1"))
    return ValidationReport(subject, tuple(checks))


# ---------------------------------------------------------------------------
# Finite Stone duality
# ---------------------------------------------------------------------------

def _require_boolean(b: FiniteAlgebra) -> None:
    report = validate_boolean_algebra(b)
    if not report.ok:
        raise NotBoolean("input is not a Boolean algebra", report)


def stone_dual(b: FiniteAlgebra) -> FiniteSpace:
    """The dual space of a finite Boolean algebra: its atoms."""
    _require_boolean(b)
    return FiniteSpace(len(atoms(b)))


def stone_dual_hom(h: Morphism) -> RawMap:
    """Dual of a Boolean homomorphism h: B1 -> B2, as the map sending an
    atom q of B2 to the unique atom of B1 below the meet of
    {x : q <= h(x)}."""
    b1, b2 = h.source, h.target
    atoms1, atoms2 = atoms(b1), atoms(b2)
    meet1 = b1.binary("meet")
    leq1 = order_from_binary(meet1, "meet")
    leq2 = order_from_binary(b2.binary("meet"), "meet")
    out = []
    for q in atoms2:
        above = [x for x in range(b1.size) if leq2[q][h(x)]]
        m = reduce(lambda u, v: meet1[u][v], above, b1.const("one"))
        below = [k for k, p in enumerate(atoms1) if leq1[p][m]]
        if len(below) != 1:
            raise NotBoolean("dual point is not an atom; input hom is broken")
        out.append(below[0])
    return tuple(out)


def ba_of_space(x: FiniteSpace) -> FiniteAlgebra:
    """Power-set algebra of a finite space, carrier ordered as subset
    bitmasks."""
    n = x.size
    full = (1 << n) - 1
    masks = range(1 << n)
    names = tuple(
        "{" + ",".join(str(i) for i in range(n) if (m >> i) & 1) + "}"
        if m else "∅" for m in masks)
    return FiniteAlgebra(
        1 << n,
        {"join": [[a | b for b in masks] for a in masks],
         "meet": [[a & b for b in masks] for a in masks]},
        {"neg": [full ^ a for a in masks]},
        {"zero": 0, "one": full},
        names)


def preimage_hom(vec: Sequence[int], src: FiniteSpace, tgt: FiniteSpace) -> Morphism:
    """Dual of a point map f: tgt -> src, the Boolean hom S -> f^-1(S)
    between the power-set algebras."""
    table = []
    for mask in range(1 << src.size):
        table.append(sum(1 << x for x in range(tgt.size)
                         if (mask >> vec[x]) & 1))
    return Morphism(ba_of_space(src), ba_of_space(tgt), tuple(table), "ba")


def stone_double_dual_iso(b: FiniteAlgebra) -> Morphism:
    """Canonical isomorphism of a Boolean algebra onto the power set of its
    atom space: x -> the set of atoms below x."""
    _require_boolean(b)
    ats = atoms(b)
    leq = order_from_binary(b.binary("meet"), "meet")
    vec = tuple(sum(1 << k for k, p in enumerate(ats) if leq[p][x])
                for x in range(b.size))
    target = ba_of_space(FiniteSpace(len(ats)))
    m = Morphism(b, target, vec, "ba")
    if not m.is_bijective:
        raise IsomorphismFailure("atom-set map is not bijective")
    return m


# ---------------------------------------------------------------------------
# Lifted functors between system categories
# ---------------------------------------------------------------------------

def lift_functor_dir_to_inv(s: DirectSystem) -> InverseSystem:
    """Apply Stone duality fiberwise: same index, terms are the atom spaces,
    bondings the dualized (reversed) transitions."""
    terms = {i: stone_dual(s.fiber(i)) for i in range(s.index.size)}
    bondings = {pair: stone_dual_hom(s.transition(*pair))
                for pair in s.index.comparable_pairs()}
    return InverseSystem(s.index, terms, bondings)


def lift_functor_inv_to_dir(s: InverseSystem) -> DirectSystem:
    """Apply the power-set functor fiberwise: same index, fibers are the
    power-set algebras, transitions the preimage homs of the bondings."""
    fibers = {i: ba_of_space(s.term(i)) for i in range(s.index.size)}
    transitions = {
        (i, j): preimage_hom(s.bonding(i, j), s.term(i), s.term(j)).map
        for (i, j) in s.index.comparable_pairs()}
    return DirectSystem(s.index, fibers, transitions, "ba")


def lift_system_morphism_dir_to_inv(m: DirectSystemMorphism) -> InverseSystemMorphism:
    """Contravariant action on morphisms: (phi, f_i) becomes (phi, dual f_i)
    from the lift of the target system to the lift of the source."""
    src = lift_functor_dir_to_inv(m.target)
    tgt = lift_functor_dir_to_inv(m.source)
    comps = {i: stone_dual_hom(m.components[i])
             for i in range(m.source.index.size)}
    return InverseSystemMorphism(src, tgt, m.index_map, comps)


def lift_system_morphism_inv_to_dir(m: InverseSystemMorphism) -> DirectSystemMorphism:
    src = lift_functor_inv_to_dir(m.target)
    tgt = lift_functor_inv_to_dir(m.source)
    comps = {}
    for j in range(m.target.index.size):
        phi_j = m.index_map(j)
        hom = preimage_hom(m.components[j], m.target.term(j),
                           m.source.term(phi_j))
        comps[j] = Morphism(src.fiber(j), tgt.fiber(phi_j), hom.map, "ba")
    return DirectSystemMorphism(src, tgt, m.index_map, comps)


# ---------------------------------------------------------------------------
# Duals of bisemilattices and involutive bisemilattices
# ---------------------------------------------------------------------------

def bsl_homs_to_three(b: FiniteAlgebra) -> list[RawMap]:
    """Canonically ordered value vectors of all bisemilattice homs into the
    three-element bisemilattice."""
    reduct = b.reduct(binary=("join", "meet"))
    return _search_homs(reduct, _THREE, "bsl")


def dual_of_bsl(b: FiniteAlgebra) -> GRSpace:
    """Dual GR space of a bisemilattice: the hom-space into the three-element
    bisemilattice with the pointwise GR structure of the dualizing object."""
    report = validate_bisemilattice(b)
    if not report.ok:
        raise NotBisemilattice("input is not a bisemilattice", report)
    homs = bsl_homs_to_three(b)
    index = {vec: k for k, vec in enumerate(homs)}
    three = gr_three()

    def locate(vec: RawMap, what: str) -> int:
        if vec not in index:
            raise NotGRSpace(f"hom-space is not closed under {what}")
        return index[vec]

    n = b.size
    star = [[locate(tuple(three.star[p[x]][q[x]] for x in range(n)), "star")
             for q in homs] for p in homs]
    leq = [[all(LEQ3[p[x]][q[x]] for x in range(n)) for q in homs]
           for p in homs]
    space = GRSpace(len(homs), star, leq,
                    c0=locate((0,) * n, "constants"),
                    c1=locate((1,) * n, "constants"),
                    calpha=locate((2,) * n, "constants"),
                    points=tuple(homs))
    rep = validate_gr_space(space)
    if not rep.ok:
        raise NotGRSpace("dual space failed GR validation", rep)
    return space


def dual_of_ibsl(b: FiniteAlgebra) -> GRSpaceWithInvolution:
    """Dual of an involutive bisemilattice: the GR dual of its bisemilattice
    reduct with the involution (-phi)(x) = (phi(x'))'."""
    report = validate_ibsl(b)
    if not report.ok:
        raise NotIBSL("input is not an involutive bisemilattice", report)
    c = ibsl_completion(b)
    base = dual_of_bsl(c.reduct(binary=("join", "meet")))
    bneg = c.unary("neg")
    index = {vec: k for k, vec in enumerate(base.points)}
    neg = []
    for vec in base.points:
        nvec = tuple(NEG3[vec[bneg[x]]] for x in range(c.size))
        if nvec not in index:
            raise NotGRSpace("hom-space is not closed under the involution")
        neg.append(index[nvec])
    g = GRSpaceWithInvolution(base, tuple(neg))
    rep = validate_gr_involution(g)
    if not rep.ok:
        raise NotGRSpace("dual space failed involution validation", rep)
    return g


def bsl_of_gr(g: GRSpace) -> FiniteAlgebra:
    """Dual bisemilattice of a plain GR space: GR morphisms into the
    three-point space with pointwise join and meet."""
    rep = validate_gr_space(g)
    if not rep.ok:
        raise NotGRSpace("input fails GR validation", rep)
    homs = gr_homs(g)
    index = {vec: k for k, vec in enumerate(homs)}
    n = base_of(g).size
    try:
        join = [[index[tuple(JOIN3[p[x]][q[x]] for x in range(n))]
                 for q in homs] for p in homs]
        meet = [[index[tuple(MEET3[p[x]][q[x]] for x in range(n))]
                 for q in homs] for p in homs]
    except KeyError:
        raise NotGRSpace("hom-space is not closed under pointwise operations")
    return FiniteAlgebra(len(homs), {"join": join, "meet": meet})


def dual_of_gr(g: GRSpaceWithInvolution) -> FiniteAlgebra:
    """Dual involutive bisemilattice of a GR space with involution: GR
    morphisms into the three-point space with pointwise operations, the
    involution (-Phi)(a) = (Phi(-a))', and zero the join-neutral morphism."""
    rep = validate_gr_involution(g)
    if not rep.ok:
        raise NotGRSpace("input fails GR-with-involution validation", rep)
    homs = gr_homs(g)
    index = {vec: k for k, vec in enumerate(homs)}
    n = g.size

    def locate(vec: RawMap, what: str) -> int:
        if vec not in index:
            raise NotGRSpace(f"hom-space is not closed under {what}")
        return index[vec]

    join = [[locate(tuple(JOIN3[p[x]][q[x]] for x in range(n)), "join")
             for q in homs] for p in homs]
    meet = [[locate(tuple(MEET3[p[x]][q[x]] for x in range(n)), "meet")
             for q in homs] for p in homs]
    neg = [locate(tuple(NEG3[p[g.neg[x]]] for x in range(n)), "involution")
           for p in homs]
    zeros = [k for k in range(len(homs))
             if all(join[j][k] == j for j in range(len(homs)))]
    if len(zeros) != 1:
        raise NotGRSpace("hom-space has no unique join-neutral element")
    algebra = FiniteAlgebra(
        len(homs), {"join": join, "meet": meet}, {"neg": neg},
        {"zero": zeros[0], "one": neg[zeros[0]]})
    check = validate_ibsl(algebra)
    if not check.ok:
        raise NotGRSpace("dual algebra failed validation", check)
    return algebra


def _as_iso(source, target, vec, kind: str) -> Morphism:
    from .errors import InvalidMorphism

    try:
        m = Morphism(source, target, vec, kind)
    except InvalidMorphism as exc:
        raise IsomorphismFailure(f"double-dual map is not a morphism: {exc}")
    if not m.is_bijective:
        raise IsomorphismFailure("double-dual map is not bijective")
    bad = morphism_violations(target, source, m.inverse().map, kind,
                              stop_early=True)
    if bad:
        raise IsomorphismFailure("inverse of double-dual map is not a morphism")
    return m


def eps_iso(b: FiniteAlgebra) -> Morphism:
    """Evaluation isomorphism of an involutive bisemilattice onto its double
    dual: x -> (phi -> phi(x))."""
    dual = dual_of_ibsl(b)
    double = dual_of_gr(dual)
    ghoms = gr_homs(dual)
    index = {vec: k for k, vec in enumerate(ghoms)}
    vec = []
    for x in range(b.size):
        ev = tuple(phi[x] for phi in dual.points)
        if ev not in index:
            raise IsomorphismFailure(
                "evaluation image is not a morphism of the dual space")
        vec.append(index[ev])
    return _as_iso(b, double, tuple(vec), "ibsl")


def delta_iso(g: GRSpaceWithInvolution) -> Morphism:
    """Evaluation isomorphism of a GR space with involution onto its double
    dual."""
    dual_alg = dual_of_gr(g)
    ghoms = gr_homs(g)
    double = dual_of_ibsl(dual_alg)
    index = {vec: k for k, vec in enumerate(double.points)}
    vec = []
    for x in range(g.size):
        ev = tuple(phi[x] for phi in ghoms)
        if ev not in index:
            raise IsomorphismFailure(
                "evaluation image is not a hom of the dual algebra")
        vec.append(index[ev])
    return _as_iso(g, double, tuple(vec), "igr")


def dual_of_ibsl_hom(f: Morphism) -> Morphism:
    """Contravariant dual of an algebra hom: precomposition between the dual
    spaces, preserving star, constants, order and involution."""
    if f.kind != "ibsl":
        raise NotIBSL("expected a hom of involutive bisemilattices")
    dual_target = dual_of_ibsl(f.target)
    dual_source = dual_of_ibsl(f.source)
    index = {vec: k for k, vec in enumerate(dual_source.points)}
    vec = []
    for point in dual_target.points:
        composed = tuple(point[f(x)] for x in range(f.source.size))
        if composed not in index:
            raise NotGRSpace("precomposition left the dual hom-space")
        vec.append(index[composed])
    return Morphism(dual_target, dual_source, tuple(vec), "igr")


def ibsl_to_inverse_system(b: FiniteAlgebra) -> InverseSystem:
    """Decompose into Boolean fibers, then dualize fiberwise into a
    semilattice inverse system of finite Stone spaces."""
    return lift_functor_dir_to_inv(plonka_decompose(b))
