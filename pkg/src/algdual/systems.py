"""Semilattice direct and inverse systems, their morphisms, and the Plonka
sum construction with its inverse decomposition.

A direct system is a family of algebras of one kind indexed by a join
semilattice with bottom, together with a transition homomorphism for every
comparable pair of indices (not only covers), validated for identity and
full transitivity.  Inverse systems index arbitrary finite terms (discrete
spaces or posets, anything with a ``size``) and reverse the arrows.

The Plonka sum lays its carrier out canonically: fibers concatenated in
index order, elements in fiber order, so equal inputs produce identical
tables.  The decomposition splits an involutive bisemilattice along its
local units ``a + a'``; transitions add the target fiber's local zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from .algebra import (
    Check,
    FiniteAlgebra,
    JoinSemilattice,
    Morphism,
    ValidationReport,
    enumerate_homs,
    ibsl_completion,
    is_partial_order,
    morphism_violations,
    validate_boolean_algebra,
    validate_distributive_lattice,
    validate_ibsl,
    validate_for_kind,
    validate_semilattice,
)
from .errors import (
    DomainMismatch,
    FiberSplit,
    InvalidSystem,
    InvalidSystemMorphism,
    NotIBSL,
)

RawMap = tuple[int, ...]


def _compose_raw(outer: Sequence[int], inner: Sequence[int]) -> RawMap:
    return tuple(outer[v] for v in inner)


def _identity_raw(n: int) -> RawMap:
    return tuple(range(n))


# ---------------------------------------------------------------------------
# Coherence checking, shared by both system variants
# ---------------------------------------------------------------------------

def _check_index(index_algebra: FiniteAlgebra, bottom: int) -> list[Check]:
    checks = list(validate_semilattice(index_algebra).checks)
    join = index_algebra.binary_ops.get("join")
    if join is not None:
        ok = all(join[bottom][x] == x for x in range(index_algebra.size))
        witness = None
        if not ok:
            witness = next((bottom, x) for x in range(index_algebra.size)
                           if join[bottom][x] != x)
        checks.append(Check("index-bottom", ok, witness))
    return checks


def _comparable_pairs(index_algebra: FiniteAlgebra):
    join = index_algebra.binary("join")
    n = index_algebra.size
    return [(i, j) for i in range(n) for j in range(n) if join[i][j] == j]


def check_system(index_algebra: FiniteAlgebra, bottom: int,
                 objects: Mapping[int, object],
                 arrows: Mapping[tuple[int, int], Sequence[int]],
                 kind: Optional[str], *, inverse: bool,
                 subject: str) -> ValidationReport:
    """Full coherence report for a system given raw tables.

    ``arrows`` maps comparable index pairs (i, j), i <= j, to value vectors;
    in a direct system the vector describes object(i) -> object(j), in an
    inverse one object(j) -> object(i).  ``kind`` names the fiber validator
    for direct systems; inverse-system terms need only sizes (plus
    monotonicity when they carry an order).
    """
    checks = _check_index(index_algebra, bottom)
    semilattice_ok = all(c.holds for c in checks)

    n = index_algebra.size
    missing = [i for i in range(n) if i not in objects]
    checks.append(Check("objects-complete", not missing,
                        (missing[0],) if missing else None))
    if missing or not semilattice_ok:
        return ValidationReport(subject, tuple(checks))

    if kind is not None:
        for i in range(n):
            rep = validate_for_kind(objects[i], kind)
            bad = rep.failures()
            checks.append(Check(
                f"fiber-{i}-valid-{kind}", not bad,
                bad[0].witness if bad else None,
                bad[0].name if bad else ""))
        signature = (frozenset(objects[0].binary_ops),
                     frozenset(objects[0].unary_ops),
                     frozenset(objects[0].constants))
        odd = next((i for i in range(n)
                    if (frozenset(objects[i].binary_ops),
                        frozenset(objects[i].unary_ops),
                        frozenset(objects[i].constants)) != signature), None)
        checks.append(Check("fibers-same-signature", odd is None,
                            (odd,) if odd is not None else None))
    empties = [i for i in range(n) if objects[i].size == 0]
    if empties:
        # Zero-point terms (duals of one-element algebras) are admitted but
        # worth surfacing.
        checks.append(Check("empty-terms", True, None,
                            f"indices {empties} have empty terms"))

    pairs = _comparable_pairs(index_algebra)
    extra = sorted(set(arrows) - set(pairs))
    checks.append(Check("arrows-only-comparable", not extra,
                        extra[0] if extra else None))
    absent = [p for p in pairs if p not in arrows]
    checks.append(Check("arrows-complete", not absent,
                        absent[0] if absent else None))
    if absent or extra:
        return ValidationReport(subject, tuple(checks))

    def endpoints(i, j):
        return (objects[j], objects[i]) if inverse else (objects[i], objects[j])

    shaped = True
    for (i, j) in pairs:
        src, tgt = endpoints(i, j)
        vec = arrows[(i, j)]
        if len(vec) != src.size or any(v < 0 or v >= tgt.size for v in vec):
            checks.append(Check("arrows-well-formed", False, (i, j)))
            shaped = False
            break
    if shaped:
        checks.append(Check("arrows-well-formed", True))
    else:
        return ValidationReport(subject, tuple(checks))

    bad_id = next((i for i in range(n)
                   if tuple(arrows[(i, i)]) != _identity_raw(objects[i].size)),
                  None)
    checks.append(Check("identity-arrows", bad_id is None,
                        (bad_id, bad_id) if bad_id is not None else None))

    if kind is not None:
        hom_witness = None
        for (i, j) in pairs:
            src, tgt = endpoints(i, j)
            bad = morphism_violations(src, tgt, tuple(arrows[(i, j)]), kind,
                                      stop_early=True)
            if bad:
                hom_witness = (i, j)
                break
        checks.append(Check("arrows-are-homs", hom_witness is None, hom_witness))
    else:
        mono_witness = None
        for (i, j) in pairs:
            src, tgt = endpoints(i, j)
            if hasattr(src, "leq") and hasattr(tgt, "leq"):
                vec = arrows[(i, j)]
                for x in range(src.size):
                    for y in range(src.size):
                        if src.leq[x][y] and not tgt.leq[vec[x]][vec[y]]:
                            mono_witness = (i, j, x, y)
                            break
                    if mono_witness:
                        break
            if mono_witness:
                break
        checks.append(Check("arrows-monotone", mono_witness is None, mono_witness))

    join = index_algebra.binary("join")
    triple_witness = None
    for (i, j) in pairs:
        for k in range(n):
            if join[j][k] != k:
                continue
            if inverse:
                composite = _compose_raw(arrows[(i, j)], arrows[(j, k)])
            else:
                composite = _compose_raw(arrows[(j, k)], arrows[(i, j)])
            if composite != tuple(arrows[(i, k)]):
                triple_witness = (i, j, k)
                break
        if triple_witness:
            break
    checks.append(Check("arrows-transitive", triple_witness is None,
                        triple_witness))
    return ValidationReport(subject, tuple(checks))


# ---------------------------------------------------------------------------
# Systems
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DirectSystem:
    """Join-semilattice-indexed family of algebras with transition homs."""

    index: JoinSemilattice
    fibers: Mapping[int, FiniteAlgebra]
    transitions: Mapping[tuple[int, int], RawMap]
    kind: str

    def __post_init__(self):
        object.__setattr__(self, "fibers", dict(self.fibers))
        object.__setattr__(
            self, "transitions",
            {k: tuple(v) for k, v in self.transitions.items()})
        report = check_system(self.index.algebra, self.index.bottom,
                              self.fibers, self.transitions, self.kind,
                              inverse=False, subject="direct system")
        if not report.ok:
            raise InvalidSystem(
                f"invalid direct system: "
                f"{[c.name for c in report.failures()]}", report)

    def fiber(self, i: int) -> FiniteAlgebra:
        return self.fibers[i]

    def transition(self, i: int, j: int) -> Morphism:
        return Morphism(self.fibers[i], self.fibers[j],
                        self.transitions[(i, j)], self.kind)

    def offsets(self) -> list[int]:
        out, total = [], 0
        for i in range(self.index.size):
            out.append(total)
            total += self.fibers[i].size
        return out

    def total_size(self) -> int:
        return sum(self.fibers[i].size for i in range(self.index.size))

    def locate(self, g: int) -> tuple[int, int]:
        """Global carrier element of the sum -> (fiber index, local element)."""
        offs = self.offsets()
        for i in range(self.index.size - 1, -1, -1):
            if g >= offs[i]:
                return i, g - offs[i]
        raise ValueError(g)


@dataclass(frozen=True)
class InverseSystem:
    """Join-semilattice-indexed family of finite terms with bonding maps.

    ``bondings[(i, j)]`` for i <= j is the value vector of the map
    term(j) -> term(i).  Terms need only expose ``size``; terms with a
    ``leq`` matrix (posets) get their bondings checked for monotonicity.
    """

    index: JoinSemilattice
    terms: Mapping[int, object]
    bondings: Mapping[tuple[int, int], RawMap]

    def __post_init__(self):
        object.__setattr__(self, "terms", dict(self.terms))
        object.__setattr__(
            self, "bondings",
            {k: tuple(v) for k, v in self.bondings.items()})
        report = check_system(self.index.algebra, self.index.bottom,
                              self.terms, self.bondings, None,
                              inverse=True, subject="inverse system")
        if not report.ok:
            raise InvalidSystem(
                f"invalid inverse system: "
                f"{[c.name for c in report.failures()]}", report)

    def term(self, i: int):
        return self.terms[i]

    def bonding(self, i: int, j: int) -> RawMap:
        return self.bondings[(i, j)]


# ---------------------------------------------------------------------------
# Plonka sum and decomposition
# ---------------------------------------------------------------------------

def plonka_sum(system: DirectSystem) -> FiniteAlgebra:
    """Disjoint union of the fibers with operations evaluated in the join
    fiber after pushing arguments along transitions; constants live in the
    bottom fiber.

    Over Boolean fibers the sum is an involutive bisemilattice; over
    distributive-lattice fibers it is a bisemilattice.
    """
    idx = system.index
    offs = system.offsets()
    total = system.total_size()
    pairs = [(i, a) for i in range(idx.size)
             for a in range(system.fibers[i].size)]

    names = None
    if all(system.fibers[i].names for i in range(idx.size)):
        idx_names = idx.algebra.names or tuple(str(i) for i in range(idx.size))
        names = tuple(f"{system.fibers[i].names[a]}@{idx_names[i]}"
                      for (i, a) in pairs)

    op_names = system.fibers[0].binary_ops.keys()
    binary = {}
    for name in op_names:
        table = []
        for (i1, a1) in pairs:
            row = []
            for (i2, a2) in pairs:
                j = idx.join(i1, i2)
                b1 = system.transitions[(i1, j)][a1]
                b2 = system.transitions[(i2, j)][a2]
                row.append(offs[j] + system.fibers[j].binary(name)[b1][b2])
            table.append(row)
        binary[name] = table
    unary = {}
    for name in system.fibers[0].unary_ops.keys():
        unary[name] = [offs[i] + system.fibers[i].unary(name)[a]
                       for (i, a) in pairs]
    constants = {name: offs[idx.bottom] + c
                 for name, c in system.fibers[idx.bottom].constants.items()}
    return FiniteAlgebra(total, binary, unary, constants, names)


def local_units(b: FiniteAlgebra) -> list[int]:
    """The element a + a' for every a; the sorted set of values indexes the
    fibers of the Plonka decomposition."""
    c = ibsl_completion(b)
    join, neg = c.binary("join"), c.unary("neg")
    return [join[a][neg[a]] for a in range(c.size)]


def plonka_decompose(b: FiniteAlgebra) -> DirectSystem:
    """Split an involutive bisemilattice into a direct system of Boolean
    algebras along its local units.

    The fiber at unit e is {a : a + a' = e} with restricted operations,
    local one e and local zero e . e'; the transition into the fiber at f
    adds f's local zero: a -> a + (f . f').  ``plonka_sum`` of the result is
    isomorphic to the input.
    """
    report = validate_ibsl(b)
    if not report.ok:
        raise NotIBSL("input is not an involutive bisemilattice", report)
    c = ibsl_completion(b)
    join, meet, neg = c.binary("join"), c.binary("meet"), c.unary("neg")
    iota = local_units(c)
    units = sorted(set(iota))
    rank = {e: k for k, e in enumerate(units)}

    index_join = []
    for e in units:
        row = []
        for f in units:
            j = join[e][f]
            if j not in rank:
                raise NotIBSL("local units are not closed under join")
            row.append(rank[j])
        index_join.append(row)
    idx_names = tuple(c.element_name(e) for e in units)
    index = JoinSemilattice.from_table(index_join,
                                       bottom=rank[iota[c.const("zero")]],
                                       names=idx_names)

    members = {e: [a for a in range(c.size) if iota[a] == e] for e in units}
    local = {e: {a: p for p, a in enumerate(members[e])} for e in units}
    fibers = {}
    for k, e in enumerate(units):
        elems = members[e]
        loc = local[e]
        try:
            fb_join = [[loc[join[x][y]] for y in elems] for x in elems]
            fb_meet = [[loc[meet[x][y]] for y in elems] for x in elems]
            fb_neg = [loc[neg[x]] for x in elems]
        except KeyError:
            raise NotIBSL("fibers are not closed under the operations")
        fnames = tuple(c.element_name(a) for a in elems) if c.names else None
        fibers[k] = FiniteAlgebra(
            len(elems), {"join": fb_join, "meet": fb_meet}, {"neg": fb_neg},
            {"zero": loc[meet[e][neg[e]]], "one": loc[e]}, fnames)

    transitions = {}
    for k1, k2 in index.comparable_pairs():
        f = units[k2]
        zf = meet[f][neg[f]]
        vec = []
        for a in members[units[k1]]:
            img = join[a][zf]
            if iota[img] != f:
                raise NotIBSL("transition image escapes its fiber")
            vec.append(local[f][img])
        transitions[(k1, k2)] = tuple(vec)
    return DirectSystem(index, fibers, transitions, "ba")


# ---------------------------------------------------------------------------
# System morphisms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DirectSystemMorphism:
    """Pair (index map, per-fiber homs) with commuting squares.

    ``index_map`` is a bottom-preserving semilattice hom between the index
    algebras; component i maps fiber(i) of the source into fiber(phi(i)) of
    the target, and for i <= i' the square with both transition homs
    commutes.
    """

    source: DirectSystem
    target: DirectSystem
    index_map: Morphism
    components: Mapping[int, Morphism]

    def __post_init__(self):
        object.__setattr__(self, "components", dict(self.components))
        phi = self.index_map
        if (phi.source != self.source.index.algebra
                or phi.target != self.target.index.algebra):
            raise InvalidSystemMorphism("index map endpoints do not match")
        if phi.kind != "sl":
            raise InvalidSystemMorphism("index map must be a semilattice hom")
        for i in range(self.source.index.size):
            comp = self.components.get(i)
            if comp is None:
                raise InvalidSystemMorphism(f"missing component at index {i}")
            if (comp.source != self.source.fiber(i)
                    or comp.target != self.target.fiber(phi(i))):
                raise InvalidSystemMorphism(
                    f"component {i} endpoints do not match")
        for i, j in self.source.index.comparable_pairs():
            p = self.source.transitions[(i, j)]
            q = self.target.transitions[(phi(i), phi(j))]
            fi, fj = self.components[i].map, self.components[j].map
            for x in range(self.source.fiber(i).size):
                if fj[p[x]] != q[fi[x]]:
                    raise InvalidSystemMorphism(
                        f"square ({i},{j}) does not commute at {x}")


@dataclass(frozen=True)
class InverseSystemMorphism:
    """Morphism of inverse systems: an index map running against the arrow
    direction plus per-index term maps.

    For source X (index I) and target Y (index J), ``index_map`` is a
    semilattice hom J -> I and component j maps term X_phi(j) -> Y_j; for
    j <= j' the square with both bonding maps commutes.
    """

    source: InverseSystem
    target: InverseSystem
    index_map: Morphism
    components: Mapping[int, RawMap]

    def __post_init__(self):
        object.__setattr__(
            self, "components",
            {k: tuple(v) for k, v in self.components.items()})
        phi = self.index_map
        if (phi.source != self.target.index.algebra
                or phi.target != self.source.index.algebra):
            raise InvalidSystemMorphism("index map endpoints do not match")
        if phi.kind != "sl":
            raise InvalidSystemMorphism("index map must be a semilattice hom")
        for j in range(self.target.index.size):
            vec = self.components.get(j)
            if vec is None:
                raise InvalidSystemMorphism(f"missing component at index {j}")
            src = self.source.term(phi(j))
            tgt = self.target.term(j)
            if len(vec) != src.size or any(v >= tgt.size for v in vec):
                raise InvalidSystemMorphism(
                    f"component {j} is not a map term({phi(j)}) -> term({j})")
        for j, j2 in self.target.index.comparable_pairs():
            p = self.source.bondings[(phi(j), phi(j2))]
            q = self.target.bondings[(j, j2)]
            fj, fj2 = self.components[j], self.components[j2]
            for x in range(self.source.term(phi(j2)).size):
                if fj[p[x]] != q[fj2[x]]:
                    raise InvalidSystemMorphism(
                        f"square ({j},{j2}) does not commute at {x}")


def identity_system_morphism(system):
    if isinstance(system, DirectSystem):
        return DirectSystemMorphism(
            system, system, Morphism.identity(system.index.algebra, "sl"),
            {i: Morphism.identity(system.fiber(i), system.kind)
             for i in range(system.index.size)})
    return InverseSystemMorphism(
        system, system, Morphism.identity(system.index.algebra, "sl"),
        {i: _identity_raw(system.term(i).size)
         for i in range(system.index.size)})


def compose_system_morphisms(m2, m1):
    """m2 after m1.

    Direct variant: index maps compose covariantly and component i is
    g_phi1(i) . f_i.  Inverse variant: index maps compose the other way
    around and component k is g_k . f_psi(k).
    """
    if isinstance(m1, DirectSystemMorphism) and isinstance(m2, DirectSystemMorphism):
        if m1.target != m2.source:
            raise DomainMismatch("system morphisms do not compose")
        chi = m2.index_map.compose(m1.index_map)
        comps = {i: m2.components[m1.index_map(i)].compose(m1.components[i])
                 for i in range(m1.source.index.size)}
        return DirectSystemMorphism(m1.source, m2.target, chi, comps)
    if isinstance(m1, InverseSystemMorphism) and isinstance(m2, InverseSystemMorphism):
        if m1.target != m2.source:
            raise DomainMismatch("system morphisms do not compose")
        chi = m1.index_map.compose(m2.index_map)
        comps = {k: _compose_raw(m2.components[k],
                                 m1.components[m2.index_map(k)])
                 for k in range(m2.target.index.size)}
        return InverseSystemMorphism(m1.source, m2.target, chi, comps)
    raise DomainMismatch("cannot compose morphisms of different variants")


# ---------------------------------------------------------------------------
# The equivalence between algebras and systems
# ---------------------------------------------------------------------------

def _expect_sum(h_end: FiniteAlgebra, system: DirectSystem, side: str) -> FiniteAlgebra:
    expected = plonka_sum(system)
    stripped = FiniteAlgebra(h_end.size, h_end.binary_ops, h_end.unary_ops,
                             h_end.constants)
    if FiniteAlgebra(expected.size, expected.binary_ops, expected.unary_ops,
                     expected.constants) != stripped:
        raise DomainMismatch(
            f"hom {side} is not the Plonka sum of the given system")
    return expected


def induced_index_map(h: Morphism, da: DirectSystem, db: DirectSystem) -> Morphism:
    """The semilattice hom phi with h(fiber_i) inside fiber_phi(i), checked
    exhaustively."""
    _expect_sum(h.source, da, "source")
    _expect_sum(h.target, db, "target")
    offs_a = da.offsets()
    phi = []
    for i in range(da.index.size):
        images = {db.locate(h(offs_a[i] + a))[0]
                  for a in range(da.fiber(i).size)}
        if len(images) != 1:
            raise FiberSplit(
                f"fiber {i} is scattered across target fibers {sorted(images)}")
        phi.append(images.pop())
    return Morphism(da.index.algebra, db.index.algebra, tuple(phi), "sl")


def restrict_to_fibers(h: Morphism, da: DirectSystem,
                       db: DirectSystem) -> dict[int, Morphism]:
    """Per-index restrictions of an algebra hom, as fiber homs."""
    phi = induced_index_map(h, da, db)
    offs_a, offs_b = da.offsets(), db.offsets()
    out = {}
    for i in range(da.index.size):
        j = phi(i)
        vec = tuple(h(offs_a[i] + a) - offs_b[j]
                    for a in range(da.fiber(i).size))
        out[i] = Morphism(da.fiber(i), db.fiber(j), vec, da.kind)
    return out


def hom_to_system_morphism(h: Morphism, da: DirectSystem,
                           db: DirectSystem) -> DirectSystemMorphism:
    return DirectSystemMorphism(da, db, induced_index_map(h, da, db),
                                restrict_to_fibers(h, da, db))


def system_morphism_to_hom(m: DirectSystemMorphism) -> Morphism:
    """Glue the components of a system morphism into one hom of the sums."""
    a, b = plonka_sum(m.source), plonka_sum(m.target)
    offs_b = m.target.offsets()
    vec = []
    for i in range(m.source.index.size):
        j = m.index_map(i)
        for x in range(m.source.fiber(i).size):
            vec.append(offs_b[j] + m.components[i](x))
    kind = "ibsl" if m.source.kind == "ba" else "bsl"
    return Morphism(a, b, tuple(vec), kind)


def enumerate_system_morphisms(da: DirectSystem,
                               db: DirectSystem) -> list[DirectSystemMorphism]:
    """All system morphisms da -> db, ordered by (index map, components)."""
    out = []
    fiber_hom_cache: dict[tuple[int, int], list[Morphism]] = {}

    def fiber_homs(i, j):
        if (i, j) not in fiber_hom_cache:
            fiber_hom_cache[(i, j)] = enumerate_homs(
                da.fiber(i), db.fiber(j), da.kind, validate=False)
        return fiber_hom_cache[(i, j)]

    comparable = da.index.comparable_pairs()
    for phi in enumerate_homs(da.index.algebra, db.index.algebra, "sl",
                              validate=False):
        chosen: dict[int, Morphism] = {}

        def squares_ok(i: int) -> bool:
            for (x, y) in comparable:
                if x in chosen and y in chosen and (x == i or y == i):
                    p = da.transitions[(x, y)]
                    q = db.transitions[(phi(x), phi(y))]
                    fx, fy = chosen[x].map, chosen[y].map
                    if any(fy[p[e]] != q[fx[e]]
                           for e in range(da.fiber(x).size)):
                        return False
            return True

        def extend(i: int):
            if i == da.index.size:
                out.append(DirectSystemMorphism(da, db, phi, dict(chosen)))
                return
            for f in fiber_homs(i, phi(i)):
                chosen[i] = f
                if squares_ok(i):
                    extend(i + 1)
                del chosen[i]

        extend(0)
    return out
