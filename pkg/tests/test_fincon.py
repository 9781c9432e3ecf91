import json
import random

import pytest

from qtree.classical import abelian_eval, enumerate_GP, preset_subgroup
from qtree.engine import TreeAlgebra, parse, prove_zero
from qtree.fincon import (RelatorSet, WreathAlgebra, classical_crosscheck, coideal_witness, describe, expand_witness,
                          from_subgroup, phi_map, pi_map, preset, quotient_reduce, random_wreath_monomials,
                          split_preset, verify_woronowicz_ideal, verify_wreath_comult, verify_wreath_iso,
                          wreath_delta, wreath_generators, wreath_reduce)
from qtree.hopf import delta
from qtree.report import VerificationReport
from qtree.selfsim import rho_word
from qtree.tensor import apply_on_leg, prove_zero_tensor


def test_split_preset():
    assert split_preset("cyclic2") == ("cyclic", 2)
    assert split_preset("trivial") == ("trivial", None)
    with pytest.raises(ValueError):
        split_preset("dihedral")
    with pytest.raises(ValueError):
        preset("cyclic2", 3)


def test_presets():
    assert preset("full", 2).is_zero
    triv = preset("trivial", 3)
    assert len(triv.vanishing) == 6 and not triv.relators
    cyc = preset("cyclic", 3)
    assert len(cyc.relators) > 0 and len(cyc.classical.elements) == 3
    assert not preset("cyclic", 2).is_zero
    assert len(preset("klein", 4).classical.elements) == 4


def test_from_subgroup_rejects_unsupported():
    P = preset_subgroup("full", 3).generated(3, [(1, 0, 2)], "swap")
    with pytest.raises(ValueError):
        from_subgroup(P)


def test_json_roundtrip(tmp_path):
    I = preset("cyclic", 3)
    path = tmp_path / "rel.json"
    path.write_text(json.dumps(I.to_json()))
    J = RelatorSet.load(str(path), 3)
    assert J.relators == I.relators and J.vanishing == I.vanishing
    assert describe(I)["order"] == 3


def test_quotient_membership():
    I = preset("cyclic", 3)
    assert quotient_reduce(parse("a[0,0] - a[1,1]", 3), I).proved_zero
    assert quotient_reduce(parse("a[01,01] - a[1,1]*a[01,01]", 3), I).proved_zero
    assert quotient_reduce(rho_word((2,), I.relators[0]), I).proved_zero
    # sections below different vertices are independent in G_P
    assert not quotient_reduce(parse("a[00,00] - a[11,11]", 3), I, 2).proved_zero
    assert not quotient_reduce(parse("a[0,0] - a[0,1]", 3), I).proved_zero
    triv = preset("trivial", 2)
    assert quotient_reduce(parse("a[0,1]", 2), triv).proved_zero
    assert quotient_reduce(parse("a[0,0] - 1", 2), triv).proved_zero


def test_quotient_elements_vanish_on_gp():
    # every certified member of J is zero at every point of G_P
    I = preset("cyclic", 3)
    pts = enumerate_GP(I.classical, 2)
    members = [parse("a[0,0] - a[1,1]", 3), parse("a[12,12] - a[2,2]*a[12,12]", 3),
               rho_word((1,), I.relators[2])]
    for e in members:
        assert quotient_reduce(e, I, 2).proved_zero
        assert all(abelian_eval(e, g) == 0 for g in pts)


def test_coideal_witness_is_exact():
    I = preset("cyclic", 3)
    for r in I.relators:
        w = coideal_witness(r, I)
        assert w is not None
        assert prove_zero_tensor(delta(r) - expand_witness(w, 3)).proved_zero


def test_woronowicz_small():
    for name in ("full2", "trivial2", "cyclic3"):
        assert verify_woronowicz_ideal(preset(name), 1).passed


def test_wreath_maps_are_inverse_on_generators():
    W = WreathAlgebra(TreeAlgebra(2))
    for _, x in wreath_generators(W, 2):
        assert wreath_reduce(pi_map(phi_map(x), W) - x).proved_zero
    for text in ("a[0,1]", "a[01,10]"):
        a = parse(text, 2)
        assert prove_zero(phi_map(pi_map(a, W)) - a).proved_zero


def test_wreath_comultiplication_matches():
    W = WreathAlgebra(TreeAlgebra(2))
    for x in random_wreath_monomials(W, 3, 2, 2, 4):
        A = W.base
        lhs = apply_on_leg(wreath_delta(x), 0, W.phi_monomial, (A,))
        lhs = apply_on_leg(lhs, 1, W.phi_monomial, (A,))
        assert prove_zero_tensor(lhs - delta(phi_map(x))).proved_zero


def test_wreath_suites_small():
    I = preset("cyclic", 2)
    assert verify_wreath_iso(I, d=2, g=2, samples=2).passed
    assert verify_wreath_comult(I, d=2, g=2, samples=2).passed


def test_classical_crosscheck():
    report = VerificationReport("crosscheck")
    classical_crosscheck(preset("cyclic", 3), 2, report)
    assert report.passed


def test_random_wreath_monomials_deterministic():
    W = WreathAlgebra(TreeAlgebra(2))
    assert random_wreath_monomials(W, 9, 2, 2, 5) == random_wreath_monomials(W, 9, 2, 2, 5)
    assert random.Random(0).random() == random.Random(0).random()


def test_wreath_engine_rejects_false_identities():
    W = WreathAlgebra(TreeAlgebra(2))
    a00, a10 = parse("a[0,0]", 2), parse("a[1,0]", 2)
    assert not wreath_reduce(W.pgen(0, 0) - W.pgen(0, 1)).proved_zero
    assert not wreath_reduce(W.nu(0, a00) - W.nu(1, a00)).proved_zero
    # N(0,.) and N(1,.) need not commute
    x, y = W.nu(0, a00), W.nu(1, a10)
    assert not wreath_reduce(x * y - y * x).proved_zero
    assert wreath_reduce(W.pgen(0, 0) + W.pgen(0, 1) - W.one()).proved_zero
