"""Bisemilattices as Plonka sums of distributive lattices, and finite
Priestley duality in its Birkhoff form.

Every finite ordered discrete space is a Priestley space, so the finite
restriction of Priestley duality is Birkhoff's representation: a finite
distributive lattice dualizes to its poset of join-irreducibles and a finite
poset to its lattice of down-sets.  The one-element lattice has no
join-irreducibles; its dual is the empty poset, which is admitted as an
inverse-system term and flagged in validation reports.

A bisemilattice splits into distributive-lattice fibers along the operation
``a * b = a . (a + b)``: two elements share a fiber iff ``a * b = a`` and
``b * a = b``, and the transition into a fiber applies ``* w`` for any
member w of that fiber (the choice is checked to be immaterial).

Only bound-preserving lattice homs have total Birkhoff duals, and only
bottomed index semilattices fit the system types here, so dualization
raises on decompositions that fall outside either restriction.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Optional, Sequence

from .algebra import (
    FiniteAlgebra,
    Morphism,
    JoinSemilattice,
    OrderMatrix,
    is_partial_order,
    order_from_binary,
    validate_bisemilattice,
    validate_distributive_lattice,
)
from .errors import (
    IllDefinedTransition,
    IsomorphismFailure,
    MissingBottom,
    NotBisemilattice,
    NotDistributive,
    UnboundedTransition,
)
from .systems import DirectSystem, InverseSystem, RawMap


@dataclass(frozen=True)
class DistributiveLattice:
    """A finite algebra validated against the distributive-lattice axioms."""

    algebra: FiniteAlgebra

    def __post_init__(self):
        report = validate_distributive_lattice(self.algebra)
        if not report.ok:
            raise NotDistributive("not a distributive lattice", report)

    @property
    def size(self) -> int:
        return self.algebra.size


@dataclass(frozen=True)
class FinitePoset:
    """A finite partial order; possibly empty (dual of the one-element
    lattice)."""

    size: int
    leq: OrderMatrix

    def __post_init__(self):
        object.__setattr__(
            self, "leq", tuple(tuple(bool(v) for v in row) for row in self.leq))
        if self.size < 0:
            raise ValueError("negative size")
        if len(self.leq) != self.size or any(len(r) != self.size for r in self.leq):
            raise ValueError("order matrix does not match size")
        w = is_partial_order(self.leq)
        if w is not None:
            raise ValueError(f"not a partial order, witness {w}")


def _as_lattice(d) -> FiniteAlgebra:
    if isinstance(d, DistributiveLattice):
        return d.algebra
    report = validate_distributive_lattice(d)
    if not report.ok:
        raise NotDistributive("not a distributive lattice", report)
    return d


def lattice_bounds(d: FiniteAlgebra) -> tuple[int, int]:
    meet, join = d.binary("meet"), d.binary("join")
    bot = reduce(lambda a, b: meet[a][b], range(d.size))
    top = reduce(lambda a, b: join[a][b], range(d.size))
    return bot, top


def join_irreducibles(d: FiniteAlgebra) -> list[int]:
    """Elements other than the bottom that are not proper joins."""
    join = d.binary("join")
    bot, _ = lattice_bounds(d)
    out = []
    for x in range(d.size):
        if x == bot:
            continue
        if all(join[a][b] != x or x in (a, b)
               for a in range(d.size) for b in range(d.size)):
            out.append(x)
    return out


# ---------------------------------------------------------------------------
# Birkhoff duality
# ---------------------------------------------------------------------------

def priestley_dual(d) -> FinitePoset:
    """The poset of join-irreducibles with the induced order."""
    alg = _as_lattice(d)
    irr = join_irreducibles(alg)
    leq = order_from_binary(alg.binary("meet"), "meet")
    return FinitePoset(len(irr),
                       tuple(tuple(leq[p][q] for q in irr) for p in irr))


def downset_masks(p: FinitePoset) -> list[int]:
    """All down-sets of the poset as bitmasks, ascending."""
    down = [sum(1 << j for j in range(p.size) if p.leq[j][i])
            for i in range(p.size)]
    out = []
    for mask in range(1 << p.size):
        closure = mask
        for i in range(p.size):
            if (mask >> i) & 1:
                closure |= down[i]
        if closure == mask:
            out.append(mask)
    return out


def dl_of_poset(p: FinitePoset) -> FiniteAlgebra:
    """The distributive lattice of down-sets ordered by inclusion."""
    masks = downset_masks(p)
    rank = {m: k for k, m in enumerate(masks)}
    names = tuple(
        "{" + ",".join(str(i) for i in range(p.size) if (m >> i) & 1) + "}"
        if m else "∅" for m in masks)
    return FiniteAlgebra(
        len(masks),
        {"join": [[rank[a | b] for b in masks] for a in masks],
         "meet": [[rank[a & b] for b in masks] for a in masks]},
        names=names)


def priestley_dual_hom(h: Morphism) -> RawMap:
    """Dual of a bound-preserving lattice hom h: D1 -> D2: the monotone map
    sending a join-irreducible q of D2 to min{x in D1 : q <= h(x)}.

    Homomorphisms that move a bound have no total Birkhoff dual; they raise
    :class:`UnboundedTransition`.
    """
    d1, d2 = h.source, h.target
    bot1, top1 = lattice_bounds(d1)
    bot2, top2 = lattice_bounds(d2)
    if h(bot1) != bot2 or h(top1) != top2:
        raise UnboundedTransition(
            "lattice hom does not preserve bounds; no total Birkhoff dual")
    irr1, irr2 = join_irreducibles(d1), join_irreducibles(d2)
    meet1 = d1.binary("meet")
    leq2 = order_from_binary(d2.binary("meet"), "meet")
    out = []
    for q in irr2:
        above = [x for x in range(d1.size) if leq2[q][h(x)]]
        m = reduce(lambda a, b: meet1[a][b], above, top1)
        if m not in irr1:
            raise UnboundedTransition(
                "dual point is not join-irreducible; input hom is broken")
        out.append(irr1.index(m))
    return tuple(out)


def dl_double_dual_iso(d) -> Morphism:
    """Canonical isomorphism of a distributive lattice onto the down-set
    lattice of its join-irreducibles: x -> {q in J : q <= x}."""
    alg = _as_lattice(d)
    irr = join_irreducibles(alg)
    leq = order_from_binary(alg.binary("meet"), "meet")
    dual_poset = priestley_dual(alg)
    target = dl_of_poset(dual_poset)
    masks = downset_masks(dual_poset)
    rank = {m: k for k, m in enumerate(masks)}
    vec = []
    for x in range(alg.size):
        mask = sum(1 << k for k, q in enumerate(irr) if leq[q][x])
        if mask not in rank:
            raise IsomorphismFailure("image is not a down-set")
        vec.append(rank[mask])
    m = Morphism(alg, target, tuple(vec), "dl")
    if not m.is_bijective:
        raise IsomorphismFailure("down-set map is not bijective")
    return m


def poset_double_dual_iso(p: FinitePoset) -> RawMap:
    """Canonical order isomorphism of a poset onto the join-irreducibles of
    its down-set lattice: x -> the principal down-set of x."""
    lat = dl_of_poset(p)
    masks = downset_masks(p)
    irr = join_irreducibles(lat)
    vec = []
    for x in range(p.size):
        principal = sum(1 << j for j in range(p.size) if p.leq[j][x])
        k = masks.index(principal)
        if k not in irr:
            raise IsomorphismFailure("principal down-set is not irreducible")
        vec.append(irr.index(k))
    dual = priestley_dual(lat)
    if sorted(vec) != list(range(p.size)):
        raise IsomorphismFailure("principal map is not bijective")
    for x in range(p.size):
        for y in range(p.size):
            if p.leq[x][y] != dual.leq[vec[x]][vec[y]]:
                raise IsomorphismFailure("principal map is not an order iso")
    return tuple(vec)


def find_poset_isomorphism(p: FinitePoset, q: FinitePoset) -> Optional[RawMap]:
    """First order isomorphism in lexicographic order, or None."""
    if p.size != q.size:
        return None
    n = p.size
    f = [-1] * n
    used = [False] * n

    def extend(k: int) -> Optional[RawMap]:
        if k == n:
            return tuple(f)
        for v in range(n):
            if used[v]:
                continue
            if all(p.leq[x][k] == q.leq[f[x]][v]
                   and p.leq[k][x] == q.leq[v][f[x]] for x in range(k)):
                f[k] = v
                used[v] = True
                res = extend(k + 1)
                if res is not None:
                    return res
                used[v] = False
        f[k] = -1
        return None

    return extend(0)


# ---------------------------------------------------------------------------
# Plonka decomposition of bisemilattices
# ---------------------------------------------------------------------------

def star_table(b: FiniteAlgebra) -> tuple[tuple[int, ...], ...]:
    """The fiber projection a * b = a . (a + b)."""
    join, meet = b.binary("join"), b.binary("meet")
    return tuple(tuple(meet[a][join[a][x]] for x in range(b.size))
                 for a in range(b.size))


def plonka_decompose_bsl(b: FiniteAlgebra) -> DirectSystem:
    """Split a bisemilattice into a direct system of distributive lattices.

    Fibers are the classes of ``a ~ b iff a*b = a and b*a = b``; the
    transition into fiber F applies ``* w`` for any w in F, with the choice
    of w checked to be immaterial.  Requires the induced index semilattice
    to have a least element (sums over pointless semilattices are out of
    scope here).
    """
    report = validate_bisemilattice(b)
    if not report.ok:
        raise NotBisemilattice("input is not a bisemilattice", report)
    n = b.size
    star = star_table(b)
    related = [[star[x][y] == x and star[y][x] == y for y in range(n)]
               for x in range(n)]
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if related[x][y] and related[y][z] and not related[x][z]:
                    raise IllDefinedTransition(
                        f"fiber relation is not transitive at {(x, y, z)}")
    reps = []
    class_of = [-1] * n
    for x in range(n):
        for k, r in enumerate(reps):
            if related[r][x]:
                class_of[x] = k
                break
        else:
            class_of[x] = len(reps)
            reps.append(x)
    k = len(reps)

    join, meet = b.binary("join"), b.binary("meet")
    index_join = [[-1] * k for _ in range(k)]
    for x in range(n):
        for y in range(n):
            jx, jy = class_of[x], class_of[y]
            val = class_of[join[x][y]]
            if index_join[jx][jy] == -1:
                index_join[jx][jy] = val
            elif index_join[jx][jy] != val:
                raise IllDefinedTransition(
                    f"index join ill-defined on classes {(jx, jy)}")
            if class_of[meet[x][y]] != val:
                raise IllDefinedTransition(
                    f"join and meet disagree on fiber indices at {(x, y)}")
    bottoms = [e for e in range(k)
               if all(index_join[e][f] == f for f in range(k))]
    if not bottoms:
        raise MissingBottom(
            "fiber index semilattice has no least element; "
            "such sums are out of scope")
    idx_names = None
    if b.names:
        idx_names = tuple(b.element_name(r) for r in reps)
    index = JoinSemilattice.from_table(index_join, bottom=bottoms[0],
                                       names=idx_names)

    members = [[x for x in range(n) if class_of[x] == e] for e in range(k)]
    local = [{x: p for p, x in enumerate(ms)} for ms in members]
    fibers = {}
    for e in range(k):
        ms, loc = members[e], local[e]
        try:
            fb_join = [[loc[join[x][y]] for y in ms] for x in ms]
            fb_meet = [[loc[meet[x][y]] for y in ms] for x in ms]
        except KeyError:
            raise IllDefinedTransition(
                f"fiber {e} is not closed under the operations")
        fnames = tuple(b.element_name(x) for x in ms) if b.names else None
        fibers[e] = FiniteAlgebra(
            len(ms), {"join": fb_join, "meet": fb_meet}, names=fnames)
        rep = validate_distributive_lattice(fibers[e])
        if not rep.ok:
            raise NotDistributive(f"fiber {e} is not a distributive lattice",
                                  rep)

    transitions = {}
    for e, f in index.comparable_pairs():
        vec = []
        for a in members[e]:
            images = {star[a][w] for w in members[f]}
            if len(images) != 1:
                raise IllDefinedTransition(
                    f"transition {e}->{f} depends on the representative at {a}")
            img = images.pop()
            if class_of[img] != f:
                raise IllDefinedTransition(
                    f"transition {e}->{f} escapes its fiber at {a}")
            vec.append(local[f][img])
        transitions[(e, f)] = tuple(vec)
    return DirectSystem(index, fibers, transitions, "dl")


def lift_system_dl_to_posets(s: DirectSystem) -> InverseSystem:
    """Apply Birkhoff duality fiberwise to a direct system of distributive
    lattices (bound-preserving transitions only)."""
    terms = {i: priestley_dual(s.fiber(i)) for i in range(s.index.size)}
    bondings = {pair: priestley_dual_hom(s.transition(*pair))
                for pair in s.index.comparable_pairs()}
    return InverseSystem(s.index, terms, bondings)


def lift_system_posets_to_dl(s: InverseSystem) -> DirectSystem:
    """Rebuild the down-set lattices fiberwise from an inverse system of
    finite posets, transitions by preimage of bondings."""
    fibers = {i: dl_of_poset(s.term(i)) for i in range(s.index.size)}
    transitions = {}
    for (i, j) in s.index.comparable_pairs():
        vec = s.bonding(i, j)
        masks_i = downset_masks(s.term(i))
        rank_j = {m: p for p, m in enumerate(downset_masks(s.term(j)))}
        table = []
        for mask in masks_i:
            img = sum(1 << x for x in range(s.term(j).size)
                      if (mask >> vec[x]) & 1)
            table.append(rank_j[img])
        transitions[(i, j)] = tuple(table)
    return DirectSystem(s.index, fibers, transitions, "dl")


def bsl_to_inverse_system(b: FiniteAlgebra) -> InverseSystem:
    """Decompose into distributive-lattice fibers, then dualize fiberwise
    into a semilattice inverse system of finite posets."""
    return lift_system_dl_to_posets(plonka_decompose_bsl(b))


def inverse_system_to_bsl(s: InverseSystem) -> FiniteAlgebra:
    """Round-trip inverse of :func:`bsl_to_inverse_system`: rebuild the
    down-set lattices fiberwise and take the Plonka sum."""
    from .systems import plonka_sum

    return plonka_sum(lift_system_posets_to_dl(s))
