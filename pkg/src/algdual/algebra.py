"""Finite algebras as explicit operation tables, axiom validators, and
brute-force homomorphism machinery.

Carriers are always ``{0, ..., size-1}``; display names are metadata only.
Operation tables are row-major (row = first argument).  All objects are
immutable after construction, so they can be shared freely between workers.

Validators return a :class:`ValidationReport` listing one entry per checked
identity.  Each failed identity carries the lexicographically first
witnessing assignment, which keeps golden outputs small and deterministic.

Homomorphism enumeration is a backtracking search over the value vector
``(f(0), ..., f(n-1))``, pruning as soon as an equation over already-assigned
arguments is violated, and therefore yields morphisms sorted
lexicographically by value vector.  Dual-space constructions downstream rely
on that ordering.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Mapping, Optional, Sequence

from .errors import (
    InvalidMorphism,
    KindMismatch,
    MissingBottom,
    MissingOperation,
    NotSemilattice,
    UnknownBuiltin,
)

Table = tuple[tuple[int, ...], ...]


def _freeze_binary(table) -> Table:
    return tuple(tuple(int(v) for v in row) for row in table)


def _freeze_unary(table) -> tuple[int, ...]:
    return tuple(int(v) for v in table)


@dataclass(frozen=True)
class FiniteAlgebra:
    """A finite algebra on carrier {0, ..., size-1} with named operations."""

    size: int
    binary_ops: Mapping[str, Table] = field(default_factory=dict)
    unary_ops: Mapping[str, tuple[int, ...]] = field(default_factory=dict)
    constants: Mapping[str, int] = field(default_factory=dict)
    names: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("carrier must be non-empty")
        object.__setattr__(
            self, "binary_ops",
            {k: _freeze_binary(t) for k, t in self.binary_ops.items()})
        object.__setattr__(
            self, "unary_ops",
            {k: _freeze_unary(t) for k, t in self.unary_ops.items()})
        object.__setattr__(
            self, "constants", {k: int(v) for k, v in self.constants.items()})
        if self.names is not None:
            object.__setattr__(self, "names", tuple(self.names))
            if len(self.names) != self.size:
                raise ValueError("names must match carrier size")
        seen = set()
        for name in (*self.binary_ops, *self.unary_ops, *self.constants):
            if name in seen:
                raise ValueError(f"duplicate operation name {name!r}")
            seen.add(name)
        rng = range(self.size)
        for name, t in self.binary_ops.items():
            if len(t) != self.size or any(len(row) != self.size for row in t):
                raise ValueError(f"table {name!r} is not {self.size}x{self.size}")
            if any(v not in rng for row in t for v in row):
                raise ValueError(f"table {name!r} has out-of-range entries")
        for name, t in self.unary_ops.items():
            if len(t) != self.size or any(v not in rng for v in t):
                raise ValueError(f"map {name!r} is not a carrier self-map")
        for name, c in self.constants.items():
            if c not in rng:
                raise ValueError(f"constant {name!r} out of range")

    def binary(self, name: str) -> Table:
        try:
            return self.binary_ops[name]
        except KeyError:
            raise MissingOperation(f"algebra has no binary operation {name!r}")

    def unary(self, name: str) -> tuple[int, ...]:
        try:
            return self.unary_ops[name]
        except KeyError:
            raise MissingOperation(f"algebra has no unary operation {name!r}")

    def const(self, name: str) -> int:
        try:
            return self.constants[name]
        except KeyError:
            raise MissingOperation(f"algebra has no constant {name!r}")

    def has(self, name: str) -> bool:
        return (name in self.binary_ops or name in self.unary_ops
                or name in self.constants)

    def element_name(self, x: int) -> str:
        return self.names[x] if self.names else str(x)

    def reduct(self, binary=(), unary=(), constants=()) -> "FiniteAlgebra":
        """The same carrier with only the listed operations."""
        return FiniteAlgebra(
            self.size,
            {k: self.binary(k) for k in binary},
            {k: self.unary(k) for k in unary},
            {k: self.const(k) for k in constants},
            self.names,
        )

    def with_ops(self, binary=None, unary=None, constants=None) -> "FiniteAlgebra":
        """A copy extended with additional operations."""
        return FiniteAlgebra(
            self.size,
            {**self.binary_ops, **(binary or {})},
            {**self.unary_ops, **(unary or {})},
            {**self.constants, **(constants or {})},
            self.names,
        )


def permute_algebra(a: FiniteAlgebra, perm: Sequence[int]) -> FiniteAlgebra:
    """Relabel the carrier along ``perm`` (old label -> new label)."""
    inv = [0] * a.size
    for old, new in enumerate(perm):
        inv[new] = old
    bin_ops = {
        name: [[perm[t[inv[x]][inv[y]]] for y in range(a.size)]
               for x in range(a.size)]
        for name, t in a.binary_ops.items()
    }
    un_ops = {name: [perm[t[inv[x]]] for x in range(a.size)]
              for name, t in a.unary_ops.items()}
    consts = {name: perm[c] for name, c in a.constants.items()}
    names = None
    if a.names is not None:
        names = tuple(a.names[inv[x]] for x in range(a.size))
    return FiniteAlgebra(a.size, bin_ops, un_ops, consts, names)


# ---------------------------------------------------------------------------
# Identity checking
# ---------------------------------------------------------------------------

# Terms are nested tuples: a variable is a string, ('zero',) is a constant,
# ('neg', t) applies a unary operation, ('join', s, t) a binary one.

def eval_term(a: FiniteAlgebra, term, env: Mapping[str, int]) -> int:
    if isinstance(term, str):
        return env[term]
    op = term[0]
    if len(term) == 1:
        return a.const(op)
    if len(term) == 2:
        return a.unary(op)[eval_term(a, term[1], env)]
    return a.binary(op)[eval_term(a, term[1], env)][eval_term(a, term[2], env)]


def _term_vars(term, acc):
    if isinstance(term, str):
        acc.add(term)
    else:
        for t in term[1:]:
            _term_vars(t, acc)


def first_violation(a: FiniteAlgebra, lhs, rhs) -> Optional[tuple[int, ...]]:
    """Lexicographically first assignment violating ``lhs = rhs``, if any."""
    vs: set[str] = set()
    _term_vars(lhs, vs)
    _term_vars(rhs, vs)
    names = sorted(vs)
    for values in product(range(a.size), repeat=len(names)):
        env = dict(zip(names, values))
        if eval_term(a, lhs, env) != eval_term(a, rhs, env):
            return values
    return None


@dataclass(frozen=True)
class Check:
    """Outcome of a single named check, with an optional witness tuple."""

    name: str
    holds: bool
    witness: Optional[tuple[int, ...]] = None
    note: str = ""


@dataclass(frozen=True)
class ValidationReport:
    subject: str
    checks: tuple[Check, ...]

    @property
    def ok(self) -> bool:
        return all(c.holds for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.holds]

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def _identity_checks(a: FiniteAlgebra, identities) -> list[Check]:
    out = []
    for name, lhs, rhs in identities:
        w = first_violation(a, lhs, rhs)
        out.append(Check(name, w is None, w))
    return out


# ---------------------------------------------------------------------------
# Validators
# ---------------------------------------------------------------------------

BISEMILATTICE_IDENTITIES = (
    ("join-idempotent", ("join", "x", "x"), "x"),
    ("join-commutative", ("join", "x", "y"), ("join", "y", "x")),
    ("join-associative",
     ("join", "x", ("join", "y", "z")), ("join", ("join", "x", "y"), "z")),
    ("meet-idempotent", ("meet", "x", "x"), "x"),
    ("meet-commutative", ("meet", "x", "y"), ("meet", "y", "x")),
    ("meet-associative",
     ("meet", "x", ("meet", "y", "z")), ("meet", ("meet", "x", "y"), "z")),
    ("join-distributes-over-meet",
     ("join", "x", ("meet", "y", "z")),
     ("meet", ("join", "x", "y"), ("join", "x", "z"))),
    ("meet-distributes-over-join",
     ("meet", "x", ("join", "y", "z")),
     ("join", ("meet", "x", "y"), ("meet", "x", "z"))),
)

LATTICE_ABSORPTION = (
    ("join-absorbs-meet", ("join", "x", ("meet", "x", "y")), "x"),
    ("meet-absorbs-join", ("meet", "x", ("join", "x", "y")), "x"),
)

IBSL_IDENTITIES = (
    ("I1", ("join", "x", "x"), "x"),
    ("I2", ("join", "x", "y"), ("join", "y", "x")),
    ("I3", ("join", "x", ("join", "y", "z")),
     ("join", ("join", "x", "y"), "z")),
    ("I4", ("neg", ("neg", "x")), "x"),
    ("I5", ("meet", "x", "y"), ("neg", ("join", ("neg", "x"), ("neg", "y")))),
    ("I6", ("meet", "x", ("join", ("neg", "x"), "y")), ("meet", "x", "y")),
    ("I7", ("join", ("zero",), "x"), "x"),
    ("I8", ("one",), ("neg", ("zero",))),
)

IBSL_DERIVED = (
    ("derived-join-de-morgan",
     ("join", "x", "y"), ("neg", ("meet", ("neg", "x"), ("neg", "y")))),
    ("derived-join-complement-meet",
     ("join", "x", "y"), ("join", "x", ("meet", ("neg", "x"), "y"))),
)

BOOLEAN_COMPLEMENT = (
    ("join-complement", ("join", "x", ("neg", "x")), ("one",)),
    ("meet-complement", ("meet", "x", ("neg", "x")), ("zero",)),
    ("zero-neutral", ("join", ("zero",), "x"), "x"),
    ("one-neutral", ("meet", ("one",), "x"), "x"),
)


def _require(a: FiniteAlgebra, binary=(), unary=(), constants=()):
    for name in binary:
        if name not in a.binary_ops:
            raise MissingOperation(f"missing binary operation {name!r}")
    for name in unary:
        if name not in a.unary_ops:
            raise MissingOperation(f"missing unary operation {name!r}")
    for name in constants:
        if name not in a.constants:
            raise MissingOperation(f"missing constant {name!r}")


def validate_bisemilattice(a: FiniteAlgebra, subject="bisemilattice") -> ValidationReport:
    """Check that join and meet are both semilattice operations distributing
    over each other."""
    _require(a, binary=("join", "meet"))
    return ValidationReport(subject, tuple(_identity_checks(a, BISEMILATTICE_IDENTITIES)))


def ibsl_completion(a: FiniteAlgebra) -> FiniteAlgebra:
    """Extend with the meet and unit derived from join, neg and zero.

    Meet is forced by ``x . y = (x' + y')'`` and the unit by ``1 = 0'``, so
    an involutive bisemilattice is determined by its join reduct.  Existing
    meet/one tables are kept (validators cross-check them against the
    synthesis).
    """
    _require(a, binary=("join",), unary=("neg",), constants=("zero",))
    join, neg = a.binary("join"), a.unary("neg")
    extra_bin, extra_const = {}, {}
    if "meet" not in a.binary_ops:
        extra_bin["meet"] = [
            [neg[join[neg[x]][neg[y]]] for y in range(a.size)]
            for x in range(a.size)
        ]
    if "one" not in a.constants:
        extra_const["one"] = neg[a.const("zero")]
    return a.with_ops(binary=extra_bin, constants=extra_const)


def validate_ibsl(a: FiniteAlgebra, subject="involutive bisemilattice") -> ValidationReport:
    """Check the involutive-bisemilattice axioms I1-I8 plus two derived laws.

    Requires join, neg and zero; meet and one are synthesized when absent and
    cross-checked against the synthesis when present.
    """
    _require(a, binary=("join",), unary=("neg",), constants=("zero",))
    b = ibsl_completion(a)
    checks = _identity_checks(b, IBSL_IDENTITIES + IBSL_DERIVED)
    return ValidationReport(subject, tuple(checks))


def validate_boolean_algebra(a: FiniteAlgebra, subject="boolean algebra") -> ValidationReport:
    """Bounded distributive lattice plus complement laws."""
    _require(a, binary=("join", "meet"), unary=("neg",), constants=("zero", "one"))
    identities = BISEMILATTICE_IDENTITIES + LATTICE_ABSORPTION + BOOLEAN_COMPLEMENT
    return ValidationReport(subject, tuple(_identity_checks(a, identities)))


def validate_distributive_lattice(a: FiniteAlgebra, subject="distributive lattice") -> ValidationReport:
    _require(a, binary=("join", "meet"))
    identities = BISEMILATTICE_IDENTITIES + LATTICE_ABSORPTION
    return ValidationReport(subject, tuple(_identity_checks(a, identities)))


def validate_semilattice(a: FiniteAlgebra, subject="join semilattice") -> ValidationReport:
    """Single-operation semilattice; the bottom law is checked when a bottom
    constant is declared."""
    _require(a, binary=("join",))
    checks = _identity_checks(a, BISEMILATTICE_IDENTITIES[:3])
    if "bottom" in a.constants:
        checks.extend(_identity_checks(
            a, (("bottom-neutral", ("join", ("bottom",), "x"), "x"),)))
    return ValidationReport(subject, tuple(checks))


# ---------------------------------------------------------------------------
# Orders
# ---------------------------------------------------------------------------

OrderMatrix = tuple[tuple[bool, ...], ...]


def order_from_binary(table: Table, via: str) -> OrderMatrix:
    """Relation matrix of an operation-induced order.

    ``via='join'`` gives x <= y iff x + y = y; ``via='meet'`` gives
    x <= y iff x . y = x.
    """
    n = len(table)
    if via == "join":
        return tuple(tuple(table[x][y] == y for y in range(n)) for x in range(n))
    if via == "meet":
        return tuple(tuple(table[x][y] == x for y in range(n)) for x in range(n))
    raise ValueError(via)


def is_partial_order(leq: OrderMatrix) -> Optional[tuple[int, ...]]:
    """None if ``leq`` is a partial order, else a witnessing tuple."""
    n = len(leq)
    for x in range(n):
        if not leq[x][x]:
            return (x,)
    for x in range(n):
        for y in range(n):
            if x != y and leq[x][y] and leq[y][x]:
                return (x, y)
    for x, y, z in product(range(n), repeat=3):
        if leq[x][y] and leq[y][z] and not leq[x][z]:
            return (x, y, z)
    return None


def induced_orders(a: FiniteAlgebra) -> tuple[OrderMatrix, OrderMatrix]:
    """The two partial orders of a bisemilattice: (join order, meet order).

    The join order has x <= y iff x + y = y; the meet order has x <= y iff
    x . y = x.  Requires a valid bisemilattice.
    """
    from .errors import NotBisemilattice

    report = validate_bisemilattice(a)
    if not report.ok:
        raise NotBisemilattice("not a bisemilattice", report)
    return (order_from_binary(a.binary("join"), "join"),
            order_from_binary(a.binary("meet"), "meet"))


def atoms(a: FiniteAlgebra) -> list[int]:
    """Atoms of a lattice-ordered algebra: minimal elements above zero."""
    meet = a.binary("meet")
    zero = a.const("zero")
    leq = order_from_binary(meet, "meet")
    out = []
    for x in range(a.size):
        if x == zero:
            continue
        if all(y in (zero, x) for y in range(a.size) if leq[y][x]):
            out.append(x)
    return out


# ---------------------------------------------------------------------------
# Built-in algebras
# ---------------------------------------------------------------------------

_THREE_JOIN = ((0, 1, 2), (1, 1, 2), (2, 2, 2))
_THREE_MEET = ((0, 0, 2), (0, 1, 2), (2, 2, 2))


def builtin(name: str) -> FiniteAlgebra:
    """Built-in algebras: ``two``, ``s2``, ``wk`` and ``three``.

    ``three`` is the three-element bisemilattice on {0, 1, a} whose meet
    order is the chain a < 0 < 1 and whose join order is 0 < 1 < a.  ``wk``
    extends it with the involution swapping 0 and 1 and fixing a.  ``two``
    is the two-element Boolean algebra and ``s2`` the two-element semilattice
    with zero whose involution is the identity.
    """
    if name == "three":
        return FiniteAlgebra(
            3, {"join": _THREE_JOIN, "meet": _THREE_MEET},
            names=("0", "1", "α"))
    if name == "wk":
        return FiniteAlgebra(
            3, {"join": _THREE_JOIN, "meet": _THREE_MEET},
            {"neg": (1, 0, 2)}, {"zero": 0, "one": 1},
            names=("0", "1", "α"))
    if name == "two":
        return FiniteAlgebra(
            2, {"join": ((0, 1), (1, 1)), "meet": ((0, 0), (0, 1))},
            {"neg": (1, 0)}, {"zero": 0, "one": 1}, names=("0", "1"))
    if name == "s2":
        return FiniteAlgebra(
            2, {"join": ((0, 1), (1, 1)), "meet": ((0, 1), (1, 1))},
            {"neg": (0, 1)}, {"zero": 0, "one": 0}, names=("0", "a"))
    raise UnknownBuiltin(f"no builtin algebra named {name!r}")


# ---------------------------------------------------------------------------
# Join semilattices (index sets of systems)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class JoinSemilattice:
    """A validated join semilattice with least element, used as an index set."""

    algebra: FiniteAlgebra
    bottom: int

    def __post_init__(self):
        report = validate_semilattice(self.algebra)
        if not report.ok:
            raise NotSemilattice("join is not a semilattice operation", report)
        join = self.algebra.binary("join")
        if any(join[self.bottom][x] != x for x in range(self.size)):
            raise MissingBottom(
                f"element {self.bottom} is not a least element")
        if self.algebra.constants.get("bottom", self.bottom) != self.bottom:
            raise ValueError("declared bottom constant disagrees")

    @classmethod
    def from_table(cls, table, bottom: Optional[int] = None,
                   names=None) -> "JoinSemilattice":
        join = _freeze_binary(table)
        if bottom is None:
            n = len(join)
            bottoms = [b for b in range(n) if all(join[b][x] == x for x in range(n))]
            if not bottoms:
                raise MissingBottom("semilattice has no least element")
            bottom = bottoms[0]
        alg = FiniteAlgebra(len(join), {"join": join},
                            constants={"bottom": bottom}, names=names)
        return cls(alg, bottom)

    @property
    def size(self) -> int:
        return self.algebra.size

    def join(self, i: int, j: int) -> int:
        return self.algebra.binary("join")[i][j]

    def leq(self, i: int, j: int) -> bool:
        return self.join(i, j) == j

    @property
    def order(self) -> OrderMatrix:
        return order_from_binary(self.algebra.binary("join"), "join")

    def comparable_pairs(self) -> list[tuple[int, int]]:
        """All pairs (i, j) with i <= j, including the diagonal, in
        lexicographic order."""
        return [(i, j) for i in range(self.size) for j in range(self.size)
                if self.leq(i, j)]


# ---------------------------------------------------------------------------
# Morphisms and kind dispatch
# ---------------------------------------------------------------------------

# Operations a morphism of each kind must preserve.  An involutive
# bisemilattice's meet and unit are derived from join, neg and zero, so
# preserving the required group preserves them too and they are not listed.
# A semilattice bottom is enforced exactly when both endpoints declare one
# (index semilattices of systems always do).
_KIND_BINARY = {
    "sl": ("join",), "bsl": ("join", "meet"), "dl": ("join", "meet"),
    "ibsl": ("join",), "ba": ("join", "meet"),
}
_KIND_UNARY = {"ibsl": ("neg",), "ba": ("neg",)}
_KIND_CONSTANTS = {"ibsl": ("zero",), "ba": ("zero", "one")}
_KIND_OPT_BINARY = {}
_KIND_OPT_CONSTANTS = {"sl": ("bottom",)}

ALGEBRA_KINDS = ("sl", "bsl", "dl", "ibsl", "ba")
SPACE_KINDS = ("gr", "igr")


def _kind_ops(a: FiniteAlgebra, b: FiniteAlgebra, kind: str):
    """Resolve the (binary, unary, constant) op names a kind-hom a -> b must
    preserve, raising KindMismatch when required structure is missing."""
    if kind not in ALGEBRA_KINDS:
        raise KindMismatch(f"unknown morphism kind {kind!r}")
    binary = list(_KIND_BINARY.get(kind, ()))
    unary = list(_KIND_UNARY.get(kind, ()))
    constants = list(_KIND_CONSTANTS.get(kind, ()))
    for group, names in ((binary, _KIND_BINARY), (unary, _KIND_UNARY),
                         (constants, _KIND_CONSTANTS)):
        for name in names.get(kind, ()):
            if not (a.has(name) and b.has(name)):
                raise KindMismatch(
                    f"kind {kind!r} needs operation {name!r} on both sides")
    for name in _KIND_OPT_BINARY.get(kind, ()):
        if name in a.binary_ops and name in b.binary_ops:
            binary.append(name)
    for name in _KIND_OPT_CONSTANTS.get(kind, ()):
        have = (name in a.constants) + (name in b.constants)
        if have == 1:
            raise KindMismatch(
                f"constant {name!r} declared on only one side")
        if have == 2:
            constants.append(name)
    return tuple(binary), tuple(unary), tuple(constants)


def _space_parts(s, kind: str):
    star = s.star
    leq = s.leq
    consts = (s.c0, s.c1, s.calpha)
    neg = getattr(s, "neg", None) if kind == "igr" else None
    if kind == "igr" and neg is None:
        raise KindMismatch("kind 'igr' needs an involution on both sides")
    return star, leq, consts, neg


def morphism_violations(source, target, mapping: Sequence[int], kind: str,
                        stop_early: bool = False) -> list[tuple[str, tuple[int, ...]]]:
    """All (equation, witness) pairs violated by ``mapping``.

    Works for algebra kinds (sl/bsl/dl/ibsl/ba) and ordered-space kinds
    (gr/igr); the latter additionally require order preservation.
    """
    f = mapping
    out = []
    if kind in ALGEBRA_KINDS:
        n = source.size
        binary, unary, constants = _kind_ops(source, target, kind)
        for name in constants:
            if f[source.const(name)] != target.const(name):
                out.append((name, (source.const(name),)))
                if stop_early:
                    return out
        for name in unary:
            ta, tb = source.unary(name), target.unary(name)
            for x in range(n):
                if f[ta[x]] != tb[f[x]]:
                    out.append((name, (x,)))
                    if stop_early:
                        return out
                    break
        for name in binary:
            ta, tb = source.binary(name), target.binary(name)
            done = False
            for x in range(n):
                for y in range(n):
                    if f[ta[x][y]] != tb[f[x]][f[y]]:
                        out.append((name, (x, y)))
                        done = True
                        break
                if done:
                    break
            if done and stop_early:
                return out
        return out
    star_a, leq_a, consts_a, neg_a = _space_parts(source, kind)
    star_b, leq_b, consts_b, neg_b = _space_parts(target, kind)
    n = source.size
    for name, ca, cb in zip(("c0", "c1", "calpha"), consts_a, consts_b):
        if f[ca] != cb:
            out.append((name, (ca,)))
            if stop_early:
                return out
    if kind == "igr":
        # involutive dual-space morphisms must pull the target's neutral
        # evaluation morphism back to the source's, or they dualize to maps
        # that do not preserve the algebras' zero
        from .duality import zero_morphism

        z_src, z_tgt = zero_morphism(source), zero_morphism(target)
        if (z_src is None or z_tgt is None
                or tuple(z_tgt[f[x]] for x in range(n)) != z_src):
            out.append(("zero-morphism", ()))
            if stop_early:
                return out
    if neg_a is not None:
        for x in range(n):
            if f[neg_a[x]] != neg_b[f[x]]:
                out.append(("neg", (x,)))
                if stop_early:
                    return out
                break
    for x in range(n):
        hit = False
        for y in range(n):
            if f[star_a[x][y]] != star_b[f[x]][f[y]]:
                out.append(("star", (x, y)))
                hit = True
                break
        if hit:
            if stop_early:
                return out
            break
    for x in range(n):
        hit = False
        for y in range(n):
            if leq_a[x][y] and not leq_b[f[x]][f[y]]:
                out.append(("order", (x, y)))
                hit = True
                break
        if hit:
            if stop_early:
                return out
            break
    return out


@dataclass(frozen=True)
class Morphism:
    """A total carrier map validated against its kind's preservation laws."""

    source: object
    target: object
    map: tuple[int, ...]
    kind: str

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(int(v) for v in self.map))
        if len(self.map) != self.source.size:
            raise InvalidMorphism("map length does not match source carrier")
        if any(v < 0 or v >= self.target.size for v in self.map):
            raise InvalidMorphism("map has out-of-range values")
        bad = morphism_violations(self.source, self.target, self.map,
                                  self.kind, stop_early=True)
        if bad:
            name, witness = bad[0]
            raise InvalidMorphism(
                f"map does not preserve {name!r} at {witness}")

    def __call__(self, x: int) -> int:
        return self.map[x]

    @classmethod
    def identity(cls, obj, kind: str) -> "Morphism":
        return cls(obj, obj, tuple(range(obj.size)), kind)

    def compose(self, other: "Morphism") -> "Morphism":
        """self after other."""
        from .errors import DomainMismatch

        if other.target is not self.source and other.target != self.source:
            raise DomainMismatch("codomain of inner morphism != domain of outer")
        return Morphism(other.source, self.target,
                        tuple(self.map[v] for v in other.map), self.kind)

    @property
    def is_bijective(self) -> bool:
        return (self.source.size == self.target.size
                and len(set(self.map)) == self.source.size)

    def inverse(self) -> "Morphism":
        if not self.is_bijective:
            raise InvalidMorphism("not bijective")
        inv = [0] * self.target.size
        for x, v in enumerate(self.map):
            inv[v] = x
        return Morphism(self.target, self.source, tuple(inv), self.kind)


def validate_for_kind(obj, kind: str) -> ValidationReport:
    """Run the validator matching a morphism kind."""
    if kind == "sl":
        return validate_semilattice(obj)
    if kind == "bsl":
        return validate_bisemilattice(obj)
    if kind == "dl":
        return validate_distributive_lattice(obj)
    if kind == "ibsl":
        return validate_ibsl(obj)
    if kind == "ba":
        return validate_boolean_algebra(obj)
    if kind in SPACE_KINDS:
        from . import duality

        if kind == "igr":
            return duality.validate_gr_involution(obj)
        return duality.validate_gr_space(obj)
    raise KindMismatch(f"unknown morphism kind {kind!r}")


# ---------------------------------------------------------------------------
# Homomorphism search
# ---------------------------------------------------------------------------

def _search_homs(source, target, kind: str, *, injective=False,
                 candidates=None, limit=None) -> list[tuple[int, ...]]:
    """Backtracking enumeration of kind-preserving value vectors in
    lexicographic order, pruning on the first violated equation over
    already-assigned arguments."""
    n, m = source.size, target.size
    if kind in ALGEBRA_KINDS:
        binary, unary, constants = _kind_ops(source, target, kind)
        binops = [(source.binary(nm), target.binary(nm)) for nm in binary]
        unops = [(source.unary(nm), target.unary(nm)) for nm in unary]
        consts = [(source.const(nm), target.const(nm)) for nm in constants]
        leq_pair = None
    else:
        star_a, leq_a, consts_a, neg_a = _space_parts(source, kind)
        star_b, leq_b, consts_b, neg_b = _space_parts(target, kind)
        binops = [(star_a, star_b)]
        unops = [(neg_a, neg_b)] if neg_a is not None else []
        consts = list(zip(consts_a, consts_b))
        leq_pair = (leq_a, leq_b)

    f = [-1] * n
    used = [False] * m
    results: list[tuple[int, ...]] = []

    def consistent(k: int) -> bool:
        for ca, cb in consts:
            if ca == k and f[k] != cb:
                return False
        for ua, ub in unops:
            y = ua[k]
            if y <= k and ub[f[k]] != f[y]:
                return False
            for x in range(k):
                if ua[x] == k and ub[f[x]] != f[k]:
                    return False
        for ta, tb in binops:
            for x in range(k + 1):
                row = ta[x]
                for y in range(k + 1):
                    z = row[y]
                    if z > k or (x != k and y != k and z != k):
                        continue
                    if tb[f[x]][f[y]] != f[z]:
                        return False
        if leq_pair is not None:
            leq_a, leq_b = leq_pair
            for x in range(k + 1):
                if leq_a[x][k] and not leq_b[f[x]][f[k]]:
                    return False
                if leq_a[k][x] and not leq_b[f[k]][f[x]]:
                    return False
        return True

    def extend(k: int) -> bool:
        if k == n:
            results.append(tuple(f))
            return limit is not None and len(results) >= limit
        values = candidates[k] if candidates is not None else range(m)
        for v in values:
            if injective and used[v]:
                continue
            f[k] = v
            used[v] = True
            if consistent(k) and extend(k + 1):
                return True
            used[v] = False
        f[k] = -1
        return False

    extend(0)
    return results


def enumerate_homs(source, target, kind: str, *, validate=True) -> list[Morphism]:
    """All kind-preserving maps source -> target, sorted lexicographically by
    value vector.  The ordering is deterministic and downstream dual-object
    constructions depend on it."""
    if validate:
        for obj in (source, target):
            report = validate_for_kind(obj, kind)
            if not report.ok:
                raise KindMismatch(
                    f"object is not a valid {kind!r}: "
                    f"{[c.name for c in report.failures()]}", report)
    vecs = _search_homs(source, target, kind)
    if kind == "igr":
        # the zero-morphism condition is not checkable during backtracking
        vecs = [v for v in vecs
                if not morphism_violations(source, target, v, kind,
                                           stop_early=True)]
    return [Morphism(source, target, vec, kind) for vec in vecs]


def _structure_parts(obj, kind: str, ops):
    if kind in ALGEBRA_KINDS:
        binary, unary, constants = ops
        return ([obj.binary(nm) for nm in binary],
                [obj.unary(nm) for nm in unary],
                [obj.const(nm) for nm in constants], None)
    star, leq, consts3, neg = _space_parts(obj, kind)
    return [star], ([neg] if neg is not None else []), list(consts3), leq


def _joint_iso_colors(a, b, kind: str, ops, rounds: int = 2):
    """Isomorphism-invariant element colors for both endpoints at once.

    The refinement starts from constant/fixed-point seeds and folds in the
    multiset of colored operation rows, using one shared canonical numbering,
    so any isomorphism a -> b must map an element to one of equal color.
    """
    parts = [_structure_parts(a, kind, ops), _structure_parts(b, kind, ops)]
    sizes = (a.size, b.size)

    def canon(values_a, values_b):
        table: dict = {}
        out = []
        for values in (values_a, values_b):
            out.append([table.setdefault(v, len(table)) for v in values])
        return out

    colors = canon(
        *[[tuple(x == c for c in parts[s][2]) for x in range(sizes[s])]
          for s in (0, 1)])
    for _ in range(rounds):
        sigs = []
        for s in (0, 1):
            binops, unops, _, leq = parts[s]
            color = colors[s]
            side = []
            for x in range(sizes[s]):
                sig = [color[x]]
                for u in unops:
                    sig.append(color[u[x]])
                for t in binops:
                    sig.append(tuple(sorted(
                        (color[y], color[t[x][y]], color[t[y][x]])
                        for y in range(sizes[s]))))
                if leq is not None:
                    sig.append(tuple(sorted(
                        (color[y], leq[x][y], leq[y][x])
                        for y in range(sizes[s]))))
                side.append(tuple(sig))
            sigs.append(side)
        colors = canon(*sigs)
    return colors


def find_isomorphism(source, target, kind: str, *, validate=True) -> Optional[Morphism]:
    """First (in lexicographic order) bijective kind-hom whose inverse is
    also a kind-hom, or None."""
    if validate:
        for obj in (source, target):
            report = validate_for_kind(obj, kind)
            if not report.ok:
                raise KindMismatch(
                    f"object is not a valid {kind!r}", report)
    if source.size != target.size:
        return None
    ops = _kind_ops(source, target, kind) if kind in ALGEBRA_KINDS else None
    ca, cb = _joint_iso_colors(source, target, kind, ops)
    if sorted(ca) != sorted(cb):
        return None
    candidates = [[v for v in range(target.size) if cb[v] == ca[x]]
                  for x in range(source.size)]
    for vec in _search_homs(source, target, kind, injective=True,
                            candidates=candidates):
        if len(set(vec)) != source.size:
            continue
        if kind == "igr" and morphism_violations(source, target, vec, kind,
                                                 stop_early=True):
            continue
        inv = [0] * source.size
        for x, v in enumerate(vec):
            inv[v] = x
        if not morphism_violations(target, source, inv, kind, stop_early=True):
            return Morphism(source, target, vec, kind)
    return None
