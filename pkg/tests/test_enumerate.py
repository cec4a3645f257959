import random

import pytest

from oracles import Brute, isomorphic, semimodular, slim_by_two_chains
from slimlat.classify import replay
from slimlat.enumerate import (
    Universe,
    all_lattices,
    brute_force_universe,
    canonical_form,
    canonical_labelling,
    find_isomorphism,
    generate_universe,
)
from slimlat.errors import CeilingExceeded
from slimlat.fixtures import b4, chain, g23, s7
from slimlat.lattice import FiniteLattice, relabel


def shuffle(L, rng):
    perm = list(range(L.n))
    rng.shuffle(perm)
    return relabel(L.n, [(perm[x], perm[y]) for x, y in L.covers], tiebreak=lambda x: rng.random())[0]


def test_canonical_examples():
    swapped = FiniteLattice(4, [(0, 2), (0, 1), (2, 3), (1, 3)])
    assert canonical_form(b4()) == canonical_form(swapped)
    mirror = FiniteLattice(7, [(0, 2), (0, 1), (2, 5), (2, 4), (1, 4), (1, 3), (5, 6), (4, 6), (3, 6)])
    assert canonical_form(s7()) == canonical_form(mirror)
    assert canonical_form(b4()) != canonical_form(chain(4))


def test_canonical_labelling_is_isomorphism():
    form, lab = canonical_labelling(s7())
    K = FiniteLattice(7, sorted((lab[x], lab[y]) for x, y in s7().covers))
    assert canonical_form(K) == form
    assert find_isomorphism(s7(), K) is not None
    assert find_isomorphism(s7(), g23()) is None


def test_canonical_form_vs_isomorphism_oracle():
    rng = random.Random(7)
    pool = list(all_lattices(7).values())
    pairs = 0
    for _ in range(500):
        A = rng.choice(pool)
        B = shuffle(A, rng) if rng.random() < 0.5 else rng.choice(pool)
        if A.n != B.n:
            continue
        pairs += 1
        assert (canonical_form(A) == canonical_form(B)) == isomorphic(Brute.of(A), Brute.of(B))
    assert pairs > 200


def test_all_lattice_counts():
    counts = [sum(1 for L in all_lattices(n).values() if L.n == n) for n in range(1, 8)]
    # computed by the brute-force search itself; checked independently below
    assert counts[:4] == [1, 1, 1, 2]
    for L in all_lattices(6).values():
        assert Brute.of(L).is_lattice()


def test_small_counts():
    U = generate_universe(4)
    assert U.counts() == {1: 1, 2: 1, 3: 1, 4: 2}
    assert {canonical_form(L) for L in U.of_size(4) for L in [L.lattice]} == {
        canonical_form(b4()), canonical_form(chain(4))}
    assert s7() in generate_universe(7)


def test_brute_force_examples():
    B = brute_force_universe(4)
    assert {canonical_form(m.lattice) for m in B.of_size(4)} == {canonical_form(b4()), canonical_form(chain(4))}
    assert len(brute_force_universe(1)) == 1
    five = {f for f, m in brute_force_universe(5).members.items() if m.diagram is not None and m.lattice.n == 5}
    assert five == {f for f, m in generate_universe(5).members.items() if m.lattice.n == 5}
    with pytest.raises(CeilingExceeded):
        brute_force_universe(9)
    with pytest.raises(CeilingExceeded):
        generate_universe(15)


def test_brute_force_marks_members_by_definition():
    B = brute_force_universe(7)
    for m in B:
        br = Brute.of(m.lattice)
        assert (m.diagram is not None) == (slim_by_two_chains(br) and semimodular(br))


def test_patch_of_length_two_is_b4(universe12):
    P = universe12.filtered("patch")
    assert [m.lattice for m in P if m.lattice.length == 2] == [b4()]


def test_rectangular_and_patch_universes(rect14, universe12):
    from slimlat.classify import classify
    assert all(classify(m.lattice, m.diagram).is_rectangular for m in rect14)
    direct = universe12.filtered("rectangular")
    assert set(direct.members) == {f for f, m in rect14.members.items() if m.lattice.n <= 12}


def test_certificates_attached():
    U = generate_universe(8, certificates=True)
    for m in U:
        if m.lattice.n > 2:
            assert canonical_form(replay(m.certificate).lattice) == canonical_form(m.lattice)


def test_save_load(tmp_path):
    U = generate_universe(7, certificates=True)
    path = tmp_path / "u.jsonl"
    U.save(path)
    V = Universe.load(path)
    assert V.forms() == U.forms() and V.klass == U.klass
    assert path.read_text() == (V.save(tmp_path / "v.jsonl") or (tmp_path / "v.jsonl").read_text())


def test_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("SLIMLAT_CACHE", str(tmp_path))
    U = generate_universe(6)
    assert list(tmp_path.iterdir())
    assert generate_universe(6).forms() == U.forms()


def test_generation_is_deterministic():
    assert generate_universe(9).forms() == generate_universe(9).forms()
