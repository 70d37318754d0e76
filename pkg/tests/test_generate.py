from random import Random

from algdual.algebra import (
    builtin,
    validate_bisemilattice,
    validate_boolean_algebra,
    validate_distributive_lattice,
    validate_ibsl,
)
from algdual.generate import (
    random_ba_hom,
    random_boolean_algebra,
    random_bsl,
    random_direct_system,
    random_distributive_lattice,
    random_dl_hom,
    random_ibsl,
    random_join_semilattice,
    random_presheaf_system,
)
from algdual.systems import plonka_sum


def test_same_seed_reproduces():
    a = random_ibsl(Random(99), 3, 2)
    b = random_ibsl(Random(99), 3, 2)
    assert a == b
    s = random_direct_system(Random(4), "ba", 3, 3)
    t = random_direct_system(Random(4), "ba", 3, 3)
    assert s.transitions == t.transitions
    assert s.fibers == t.fibers


def test_random_instances_are_valid():
    rng = Random(1)
    for _ in range(10):
        assert validate_boolean_algebra(random_boolean_algebra(rng, 3)).ok
        assert validate_distributive_lattice(
            random_distributive_lattice(rng, 3)).ok
        assert validate_ibsl(random_ibsl(rng, 3, 2)).ok
        assert validate_bisemilattice(random_bsl(rng, 3, 2)).ok


def test_random_homs_validate():
    rng = Random(2)
    for _ in range(10):
        a, b = random_boolean_algebra(rng, 2, 1), random_boolean_algebra(rng, 2, 1)
        h = random_ba_hom(rng, a, b)
        assert h is not None and h.kind == "ba"
        d1, d2 = (random_distributive_lattice(rng, 2) for _ in range(2))
        random_dl_hom(rng, d1, d2)
        random_dl_hom(rng, d1, d2, bounded=True)


def test_semilattice_generator_bottomed():
    rng = Random(3)
    for _ in range(10):
        index = random_join_semilattice(rng, 6)
        assert index.size <= 6
        assert all(index.join(index.bottom, x) == x
                   for x in range(index.size))


def test_presheaf_system_over_non_chain():
    rng = Random(6)
    for _ in range(10):
        index = random_join_semilattice(rng, 5)
        system = random_presheaf_system(rng, index, 4)
        assert validate_ibsl(plonka_sum(system)).ok


def test_trivial_fiber_cascade():
    # once a Boolean chain hits a trivial fiber, everything above is trivial
    rng = Random(8)
    for _ in range(30):
        system = random_direct_system(rng, "ba", 3, 2)
        seen_trivial = False
        for i in range(system.index.size):
            if seen_trivial:
                assert system.fiber(i).size == 1
            if system.fiber(i).size == 1:
                seen_trivial = True
