"""Element-level oracle: runs first so the chain-level formulas are certified
before anything built on them is exercised."""

import dataclasses
import random

import pytest

from twohomalg import oracle
from twohomalg.errors import CapacityError, InputError
from twohomalg.exactness import exactness_at
from twohomalg.intmod import ZZ, FpModule, ModuleHom, matrix
from twohomalg.sampling import random_complex, random_onemor, random_twomod
from twohomalg.twomod import OneMor, TwoMod, TwoMor, is_equivalence

from builders import Z2, Z4, cyc, discrete, discrete_times2_complex


# ----------------------------------------------------------------- enumerate

def test_enumerate_discrete_has_identity_morphisms_only():
    e = oracle.enumerate(discrete(Z2, 2))
    assert len(e.objects) == 2
    for x in e.objects:
        assert e.morphisms_from(x) == [(e.deg1.zero, x)]


def test_enumerate_codiscrete_has_one_object_two_automorphisms():
    e = oracle.enumerate(TwoMod.codiscrete(cyc(Z2, 2)))
    assert len(e.objects) == 1
    assert len(e.automorphisms(e.objects[0])) == 2


def test_enumerate_times2_on_z4():
    z4 = cyc(Z4, 4)
    e = oracle.enumerate(TwoMod(ModuleHom(z4, z4, matrix([[2]]))))
    assert len(e.objects) == 4
    assert all(len(e.morphisms_from(x)) == 4 for x in e.objects)
    assert len(e.iso_classes()) == 2


def test_enumerate_respects_relations():
    # Z/4 presented on two generators with relation g1 = 2 g0 has 4 elements
    m = FpModule(Z4, matrix([[2], [-1]]), 2)
    e = oracle.enumerate(TwoMod.discrete(m))
    assert len(e.objects) == 4


def test_enumerate_rejects_integers_and_oversize():
    with pytest.raises(CapacityError):
        oracle.enumerate(TwoMod.discrete(FpModule.free(ZZ, 1)))
    big = TwoMod.contractible(cyc(Z4, 4, 4, 4))
    with pytest.raises(CapacityError):
        oracle.enumerate(big, cap=100)


def test_unknown_kind_is_an_input_error():
    with pytest.raises(InputError):
        oracle.verify_universal("bogus", ())


# ------------------------------------------------------- certification sweep

def _sequences(rng, ring, mods, count):
    for _ in range(count):
        ents = [rng.choice(mods) for _ in range(3)]
        c = random_complex(rng, ring, 3, entries=ents)
        yield c.diff(0), c.diff(1), c.alpha(0)


@pytest.mark.parametrize("kind", ["rel_kernel", "rel_cokernel"])
def test_relative_constructions_match_element_description(kind):
    rng = random.Random(7)
    mods = oracle.all_small_twomods(Z2, max_gens=1)
    total = oracle.OracleReport(kind)
    for f, g, phi in _sequences(rng, Z2, mods, 25):
        total.merge(oracle.verify_universal(kind, (f, g, phi)))
    assert total.checks > 0
    assert total.ok, total.mismatches[:5]


@pytest.mark.parametrize("kind", ["rel_kernel", "rel_cokernel"])
def test_relative_constructions_over_z4(kind):
    rng = random.Random(11)
    total = oracle.OracleReport(kind)
    for _ in range(6):
        ents = [random_twomod(rng, Z4, 1) for _ in range(3)]
        c = random_complex(rng, Z4, 3, entries=ents)
        total.merge(oracle.verify_universal(kind, (c.diff(0), c.diff(1), c.alpha(0))))
    assert total.ok, total.mismatches[:5]


def test_biproduct_matches_element_description():
    rng = random.Random(3)
    mods = oracle.all_small_twomods(Z2, max_gens=1)
    for a in mods:
        rep = oracle.verify_universal("biproduct", (a, rng.choice(mods)))
        assert rep.ok, rep.mismatches[:5]


def test_cohomology_matches_element_description():
    rng = random.Random(5)
    for ring in (Z2, Z4):
        for _ in range(5):
            c = random_complex(rng, ring, 4, max_gens=1)
            for n in range(4):
                rep = oracle.verify_universal("cohomology_description", (c, n))
                assert rep.ok, rep.mismatches[:5]


def test_trivial_instance_verifies():
    z = TwoMod.zero(Z2)
    f = OneMor.identity(z)
    phi = TwoMor.identity(f)
    for kind, inst in (("rel_kernel", (f, f, phi)), ("rel_cokernel", (f, f, phi)),
                       ("biproduct", (z, z))):
        rep = oracle.verify_universal(kind, inst)
        assert rep.ok and rep.checks > 0


def test_direct_exactness_agrees_with_cohomology_vanishing():
    rng = random.Random(13)
    for ring in (Z2, Z4):
        for _ in range(8):
            c = random_complex(rng, ring, 3, max_gens=1)
            for n in range(3):
                assert oracle.direct_exactness(c, n) == exactness_at(c, n).verdict


def test_brute_cohomology_of_discrete_times2_complex():
    c = discrete_times2_complex(3)
    counts = [(oracle.brute_cohomology(c, n).pi0_count, oracle.brute_cohomology(c, n).pi1_count)
              for n in range(3)]
    # classical H = (Z/2, 0, Z/2); pi1 of H^n is classical H^{n-1}
    assert counts == [(2, 1), (1, 2), (2, 1)]


# --------------------------------------------------------- mutation testing

def _kernel_with_nonzero_witnesses():
    b = TwoMod.codiscrete(cyc(Z4, 4))
    z = TwoMod.zero(Z4)
    f, g = OneMor.zero(z, b), OneMor.zero(b, z)
    return f, g, TwoMor.to_zero(g @ f, ModuleHom.zero(z.deg0, z.deg1))


def test_oracle_detects_corrupted_kernel_witness(monkeypatch):
    real = oracle.relative_kernel
    f, g, phi = _kernel_with_nonzero_witnesses()
    assert oracle.verify_rel_kernel(f, g, phi).ok

    def corrupted(*args):
        data = real(*args)
        bad = TwoMor(data.eps.src, data.eps.dst, data.eps.h.scale(-1), check=False)
        return dataclasses.replace(data, eps=bad)

    monkeypatch.setattr(oracle, "relative_kernel", corrupted)
    assert not oracle.verify_rel_kernel(f, g, phi).ok


def test_oracle_detects_corrupted_cokernel_witness(monkeypatch):
    real = oracle.relative_cokernel
    b = discrete(Z2, 2)
    z = TwoMod.zero(Z2)
    f, g = OneMor.zero(z, b), OneMor.identity(b)
    phi = TwoMor.to_zero(g @ f, ModuleHom.zero(z.deg0, b.deg1))
    assert oracle.verify_rel_cokernel(f, g, phi).ok

    def corrupted(*args):
        data = real(*args)
        bad = TwoMor(data.piw.src, data.piw.dst, data.piw.h.scale(0), check=False)
        return dataclasses.replace(data, piw=bad)

    monkeypatch.setattr(oracle, "relative_cokernel", corrupted)
    assert not oracle.verify_rel_cokernel(f, g, phi).ok


def test_oracle_detects_corrupted_cohomology(monkeypatch):
    real = oracle.cohomology
    c = discrete_times2_complex(3)
    assert oracle.verify_cohomology_description(c, 1).ok

    def corrupted(cc, n):
        res = real(cc, n)
        cd = res.cokernel
        bad = TwoMor(cd.piw.src, cd.piw.dst, cd.piw.h.scale(0), check=False)
        return dataclasses.replace(res, cokernel=dataclasses.replace(cd, piw=bad))

    monkeypatch.setattr(oracle, "cohomology", corrupted)
    assert not oracle.verify_cohomology_description(c, 1).ok


# ------------------------------------------------------------ quasi-inverse

def test_quasi_inverse_of_identity_is_identity():
    a = TwoMod(ModuleHom(cyc(Z4, 4), cyc(Z4, 4), matrix([[2]])))
    qi = oracle.find_quasi_inverse(OneMor.identity(a))
    assert qi is not None
    assert qi.inverse.equals(OneMor.identity(a))
    assert not qi.unit.violations() and not qi.counit.violations()


def test_contractible_is_equivalent_to_zero():
    c = TwoMod.contractible(cyc(Z4, 4))
    f = OneMor.zero(c, TwoMod.zero(Z4))
    qi = oracle.find_quasi_inverse(f)
    assert qi is not None and is_equivalence(f)
    assert not qi.unit.violations() and not qi.counit.violations()


def test_non_equivalence_has_no_quasi_inverse():
    f = OneMor.zero(discrete(Z2, 2), TwoMod.zero(Z2))
    assert oracle.find_quasi_inverse(f) is None
    assert not is_equivalence(f)


def test_quasi_inverse_search_agrees_with_pi_test():
    rng = random.Random(17)
    for ring in (Z2, Z4):
        for _ in range(25):
            a, b = random_twomod(rng, ring, 1), random_twomod(rng, ring, 1)
            f = random_onemor(rng, a, b)
            assert (oracle.find_quasi_inverse(f) is not None) == is_equivalence(f)


def test_all_small_twomods_count():
    # sum over a, b <= 2 of 2^(a b)
    assert len(oracle.all_small_twomods(Z2)) == sum(2 ** (i * j) for i in range(3) for j in range(3))
