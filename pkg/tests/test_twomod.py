import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twohomalg import oracle
from twohomalg.errors import InputError
from twohomalg.intmod import ZZ, FpModule, ModuleHom, matrix
from twohomalg.linsys import HomSystem
from twohomalg.sampling import random_onemor, random_twomod
from twohomalg.twomod import (OneMor, TwoMod, TwoMor, biproduct, hcomp, is_equivalence,
                              is_essentially_surjective, is_faithful, is_full, pi, vcomp,
                              whisker_left, whisker_right)

from builders import Z2, Z4, cyc, discrete, times

rings = st.sampled_from([Z2, Z4])


def _z():
    return FpModule.free(ZZ, 1)


def test_pi_of_times2_on_z():
    p = pi(TwoMod(ModuleHom(_z(), _z(), [[2]])))
    assert p.factors() == ((), (2,))


def test_pi_of_discrete_z():
    assert pi(TwoMod.discrete(_z())).factors() == ((), (0,))


def test_pi_of_times2_on_z4():
    assert pi(TwoMod(ModuleHom(cyc(Z4, 4), cyc(Z4, 4), [[2]]))).factors() == ((2,), (2,))


def test_identity_is_everything():
    a = TwoMod(ModuleHom(cyc(Z4, 4), cyc(Z4, 4), [[2]]))
    f = OneMor.identity(a)
    assert is_faithful(f) and is_full(f) and is_essentially_surjective(f) and is_equivalence(f)


def test_zero_map_out_of_discrete_is_faithful():
    assert is_faithful(OneMor.zero(discrete(Z2, 2), TwoMod.zero(Z2)))


def test_zero_map_out_of_codiscrete_is_not_faithful():
    assert not is_faithful(OneMor.zero(TwoMod.codiscrete(cyc(Z2, 2)), TwoMod.zero(Z2)))


def test_discrete_inclusion_full_not_essentially_surjective():
    f = times(discrete(Z4, 2), discrete(Z4, 4), 2)
    assert is_full(f) and not is_essentially_surjective(f)


def test_contractible_over_z_is_equivalent_to_zero():
    f = OneMor.zero(TwoMod.contractible(_z()), TwoMod.zero(ZZ))
    assert is_equivalence(f)


def test_chain_condition_is_enforced():
    a = TwoMod(ModuleHom(cyc(Z4, 4), cyc(Z4, 4), [[1]]))
    b = TwoMod(ModuleHom(cyc(Z4, 4), cyc(Z4, 4), [[2]]))
    with pytest.raises(InputError):
        OneMor(a, b, ModuleHom(a.deg1, b.deg1, [[1]]), ModuleHom(a.deg0, b.deg0, [[1]]))


def test_invalid_twomor_is_rejected():
    a = discrete(Z4, 4)
    f = OneMor.identity(a)
    g = OneMor(a, a, ModuleHom.zero(a.deg1, a.deg1), ModuleHom(a.deg0, a.deg0, [[3]]))
    with pytest.raises(InputError):
        TwoMor(f, g, ModuleHom.zero(a.deg0, a.deg1))


def test_vcomp_with_identity_cell():
    a = TwoMod.contractible(cyc(Z4, 4))
    f = OneMor.identity(a)
    g = OneMor.zero(a, a)
    tau = TwoMor(f, g, ModuleHom(a.deg0, a.deg1, [[-1]]))
    assert vcomp(tau, TwoMor.identity(g)).equals(tau)
    assert vcomp(TwoMor.identity(f), tau).equals(tau)
    assert whisker_left(OneMor.identity(a), tau).equals(tau)
    assert whisker_right(tau, OneMor.identity(a)).equals(tau)


def test_vcomp_rejects_non_composable():
    a = TwoMod.contractible(cyc(Z4, 4))
    f, g = OneMor.identity(a), OneMor.zero(a, a)
    tau = TwoMor(f, g, ModuleHom(a.deg0, a.deg1, [[-1]]))
    with pytest.raises(InputError):
        vcomp(tau, tau)


def _random_cell(rng, a, b):
    """Random ``f`` and a random 2-morphism ``f => g``."""
    f = random_onemor(rng, a, b)
    sys = HomSystem(a.ring)
    sys.var(a.deg0, b.deg1)
    h = sys.solve(seed=rng.randrange(1 << 20))[0]
    g = OneMor(a, b, f.f1 + h @ a.d, f.f0 + b.d @ h)
    return TwoMor(f, g, h)


@settings(max_examples=40, deadline=None)
@given(rings, st.randoms(use_true_random=False))
def test_composites_of_twomorphisms_are_valid(ring, rnd):
    rng = random.Random(rnd.random())
    a, b, c = (random_twomod(rng, ring) for _ in range(3))
    s, t = _random_cell(rng, a, b), _random_cell(rng, b, c)
    for cell in (whisker_left(t.src, s), whisker_right(t, s.src), hcomp(t, s)):
        assert not cell.violations()
    t2 = _random_cell(rng, a, b)
    t2 = TwoMor(s.dst, OneMor(a, b, s.dst.f1 + t2.h @ a.d, s.dst.f0 + b.d @ t2.h), t2.h)
    assert not vcomp(s, t2).violations()


@settings(max_examples=40, deadline=None)
@given(rings, st.randoms(use_true_random=False))
def test_biproduct_pi_is_sum(ring, rnd):
    rng = random.Random(rnd.random())
    a, b = random_twomod(rng, ring), random_twomod(rng, ring)
    bp = biproduct(a, b)
    pa, pb, pab = pi(a), pi(b), pi(bp.obj)
    assert pab.pi1 == pa.pi1.direct_sum(pb.pi1)
    assert pab.pi0 == pa.pi0.direct_sum(pb.pi0)
    assert (bp.p1 @ bp.i1).equals(OneMor.identity(a))
    assert (bp.p2 @ bp.i1).equals(OneMor.zero(a, b))
    assert (bp.i1 @ bp.p1 + bp.i2 @ bp.p2).equals(OneMor.identity(bp.obj))


def test_biproduct_with_zero_and_componentwise():
    a = TwoMod(ModuleHom(cyc(Z4, 4), cyc(Z4, 4), [[2]]))
    assert pi(biproduct(a, TwoMod.zero(Z4)).obj).factors() == pi(a).factors()
    bp = biproduct(discrete(Z2, 2), TwoMod.codiscrete(cyc(Z2, 2)))
    assert pi(bp.obj).factors() == ((2,), (2,))


def test_biproduct_ring_mismatch():
    with pytest.raises(InputError):
        biproduct(discrete(Z2, 2), discrete(Z4, 4))


# ------------------------------------------- predicates against enumeration

def _enum_faithful(f, ea, eb):
    for x in ea.objects:
        images = {}
        for a, y in ea.morphisms_from(x):
            key = (y, eb.deg1.canon(f.f1(np.array(a, dtype=object))))
            if key in images:
                return False
            images[key] = a
    return True


def _enum_full(f, ea, eb):
    fx = {x: eb.deg0.canon(f.f0(np.array(x, dtype=object))) for x in ea.objects}
    for x in ea.objects:
        hit = {(y, eb.deg1.canon(f.f1(np.array(a, dtype=object))))
               for a, y in ea.morphisms_from(x)}
        for y in ea.objects:
            for b, tgt in eb.morphisms_from(fx[x]):
                if tgt == fx[y] and (y, b) not in hit:
                    return False
    return True


def test_faithful_and_full_agree_with_enumeration():
    rng = random.Random(21)
    seen = {True: 0, False: 0}
    for ring in (Z2, Z4):
        for _ in range(60):
            a, b = random_twomod(rng, ring), random_twomod(rng, ring)
            f = random_onemor(rng, a, b)
            ea, eb = oracle.enumerate(a), oracle.enumerate(b)
            assert is_faithful(f) == _enum_faithful(f, ea, eb)
            assert is_full(f) == _enum_full(f, ea, eb)
            seen[is_full(f)] += 1
    assert seen[True] and seen[False]


def test_equivalence_matches_quasi_inverse_search():
    rng = random.Random(2)
    for _ in range(30):
        a, b = random_twomod(rng, Z2, 1), random_twomod(rng, Z2, 1)
        f = random_onemor(rng, a, b)
        assert is_equivalence(f) == (oracle.find_quasi_inverse(f) is not None)


def test_from_matrices_round_trip():
    a = TwoMod.from_matrices(Z4, matrix([[4]]), matrix([[4]]), [[2]], 1, 1)
    assert pi(a).factors() == ((2,), (2,))
