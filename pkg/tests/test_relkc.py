import random

import pytest

from twohomalg import oracle
from twohomalg.errors import InputError, PreconditionError
from twohomalg.intmod import ModuleHom, hom_cokernel, hom_kernel
from twohomalg.relkc import (factor_through_cokernel, factor_through_kernel, relative_cokernel,
                             relative_kernel)
from twohomalg.sampling import random_complex, random_onemor, random_twomod
from twohomalg.twomod import (OneMor, TwoMod, TwoMor,
                              is_essentially_surjective, is_faithful, pi, whisker_left,
                              whisker_right)

from builders import Z2, Z4, cyc, discrete, times


def _can(g, f):
    return TwoMor.to_zero(g @ f, ModuleHom.zero(f.source.deg0, g.target.deg1))


def _random_sequence(rng, ring):
    c = random_complex(rng, ring, 3)
    return c.diff(0), c.diff(1), c.alpha(0)


def _cell_exists(s, t):
    from twohomalg.resolution import hom_elements
    return any(not TwoMor(s, t, h, check=False).violations()
               for h in hom_elements(s.source.deg0, s.target.deg1))


# ------------------------------------------------------------ kernel

def test_kernel_of_identity_is_trivial():
    a = TwoMod(ModuleHom(cyc(Z4, 4), cyc(Z4, 4), [[2]]))
    z = TwoMod.zero(Z4)
    f, g = OneMor.identity(a), OneMor.zero(a, z)
    assert pi(relative_kernel(f, g, _can(g, f)).K).is_zero()


def test_kernel_picks_up_automorphisms_as_objects():
    b = TwoMod.codiscrete(cyc(Z2, 2))
    z = TwoMod.zero(Z2)
    f, g = OneMor.zero(z, b), OneMor.zero(b, z)
    k = relative_kernel(f, g, _can(g, f)).K
    assert pi(k).factors() == ((), (2,))


def test_invalid_phi_is_an_input_error():
    a = TwoMod.contractible(cyc(Z4, 4))
    f = OneMor.identity(a)
    g = OneMor.identity(a)
    bad = TwoMor(g @ f, OneMor.zero(a, a), ModuleHom.zero(a.deg0, a.deg1), check=False)
    with pytest.raises(InputError):
        relative_kernel(f, g, bad)
    with pytest.raises(InputError):
        relative_cokernel(f, g, bad)


def test_kernel_of_discrete_map_is_classical_kernel():
    a, b = discrete(Z4, 4), discrete(Z4, 4)
    f = times(a, b, 2)
    z = TwoMod.zero(Z4)
    g = OneMor.zero(b, z)
    k = relative_kernel(f, g, _can(g, f)).K
    assert pi(k).pi0 == hom_kernel(f.f0)[0] and pi(k).pi1.is_trivial()


def test_structure_maps_on_random_sequences():
    rng = random.Random(31)
    for ring in (Z2, Z4):
        for _ in range(25):
            f, g, phi = _random_sequence(rng, ring)
            kd = relative_kernel(f, g, phi)
            assert is_faithful(kd.e)
            assert not TwoMor.to_zero(f @ kd.e, kd.eps.h, check=False).violations()
            cd = relative_cokernel(f, g, phi)
            assert is_essentially_surjective(cd.p)
            assert not TwoMor.to_zero(cd.p @ g, cd.piw.h, check=False).violations()


# ---------------------------------------------------------- cokernel

def test_cokernel_of_identity_is_trivial():
    a = TwoMod(ModuleHom(cyc(Z4, 4), cyc(Z4, 4), [[2]]))
    z = TwoMod.zero(Z4)
    f, g = OneMor.identity(a), OneMor.zero(a, z)
    assert pi(relative_cokernel(f, g, _can(g, f)).Q).is_zero()


def test_cokernel_shifts_objects_into_morphisms():
    a = discrete(Z2, 2)
    z = TwoMod.zero(Z2)
    f, g = OneMor.zero(z, a), OneMor.zero(a, z)
    assert pi(relative_cokernel(f, g, _can(g, f)).Q).factors() == ((2,), ())


def test_general_cokernel_on_discrete_inputs_is_classical():
    rng = random.Random(8)
    z = TwoMod.zero(Z4)
    for _ in range(20):
        a = TwoMod.discrete(random_twomod(rng, Z4).deg0)
        c = TwoMod.discrete(random_twomod(rng, Z4).deg0)
        g = random_onemor(rng, a, c)
        f = OneMor.zero(z, a)
        q = relative_cokernel(f, g, _can(g, f)).Q
        assert pi(q).pi0 == hom_cokernel(g.f0)[0]
        assert pi(q).pi1 == hom_kernel(g.f0)[0]


# ------------------------------------------------------ factorizations

def test_factor_p_through_itself_is_identity():
    rng = random.Random(1)
    f, g, phi = _random_sequence(rng, Z4)
    cd = relative_cokernel(f, g, phi)
    hq, iso = factor_through_cokernel(cd, cd.p, cd.piw)
    assert hq.equals(OneMor.identity(cd.Q))
    assert not iso.violations()


def test_factor_e_through_itself_is_identity():
    rng = random.Random(2)
    f, g, phi = _random_sequence(rng, Z4)
    kd = relative_kernel(f, g, phi)
    tk, iso = factor_through_kernel(kd, kd.e, kd.eps)
    assert tk.equals(OneMor.identity(kd.K))
    assert not iso.violations()


def test_factor_through_zero_objects():
    rng = random.Random(3)
    f, g, phi = _random_sequence(rng, Z4)
    z = TwoMod.zero(Z4)
    cd = relative_cokernel(f, g, phi)
    h = OneMor.zero(g.target, z)
    hq, _ = factor_through_cokernel(cd, h, TwoMor.to_zero(h @ g, ModuleHom.zero(g.source.deg0, z.deg1)))
    assert hq.equals(OneMor.zero(cd.Q, z))
    kd = relative_kernel(f, g, phi)
    t = OneMor.zero(z, f.source)
    tk, _ = factor_through_kernel(kd, t, TwoMor.to_zero(f @ t, ModuleHom.zero(z.deg0, f.target.deg1)))
    assert tk.equals(OneMor.zero(z, kd.K))


def test_random_factorizations_validate_and_are_unique():
    rng = random.Random(4)
    for ring in (Z2, Z4):
        for _ in range(10):
            f, g, phi = _random_sequence(rng, ring)
            cd = relative_cokernel(f, g, phi)
            d = random_twomod(rng, ring, 1)
            k = random_onemor(rng, cd.Q, d)
            h, psi = k @ cd.p, whisker_left(k, cd.piw)
            hq, iso = factor_through_cokernel(cd, h, psi)
            assert not iso.violations()
            assert _cell_exists(hq, k)
            kd = relative_kernel(f, g, phi)
            s = random_onemor(rng, d, kd.K)
            t, tt = kd.e @ s, whisker_right(kd.eps, s)
            tk, iso2 = factor_through_kernel(kd, t, tt)
            assert not iso2.violations()
            assert _cell_exists(tk, s)


def test_incompatible_trivialisation_is_a_precondition_error():
    a = discrete(Z2, 2)
    c = TwoMod.codiscrete(cyc(Z2, 2))
    f, g = OneMor.identity(a), OneMor.zero(a, c)
    phi = TwoMor.to_zero(g @ f, ModuleHom(a.deg0, c.deg1, [[1]]))
    h = OneMor.identity(c)
    psi = TwoMor.to_zero(h @ g, ModuleHom.zero(a.deg0, c.deg1))
    with pytest.raises(PreconditionError):
        factor_through_cokernel(relative_cokernel(f, g, phi), h, psi)
    b = TwoMod.codiscrete(cyc(Z2, 2))
    f = OneMor.zero(a, b)
    g = OneMor(b, c, ModuleHom.identity(b.deg1), ModuleHom.zero(b.deg0, c.deg0))
    phi = TwoMor.to_zero(g @ f, ModuleHom.zero(a.deg0, c.deg1))
    t = OneMor.identity(a)
    tt = TwoMor.to_zero(f @ t, ModuleHom(a.deg0, b.deg1, [[1]]))
    with pytest.raises(PreconditionError):
        factor_through_kernel(relative_kernel(f, g, phi), t, tt)


def test_universal_properties_exhaustively_over_z2():
    rng = random.Random(6)
    mods = oracle.all_small_twomods(Z2, max_gens=1)
    for _ in range(10):
        c = random_complex(rng, Z2, 3, entries=[rng.choice(mods) for _ in range(3)])
        inst = (c.diff(0), c.diff(1), c.alpha(0))
        assert oracle.verify_rel_kernel(*inst).ok
        assert oracle.verify_rel_cokernel(*inst).ok
