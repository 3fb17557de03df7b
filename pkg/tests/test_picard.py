import random

import pytest

from rspin.errors import (
    InconsistentInputError,
    LatticeMismatchError,
    NotRepresentableError,
    UncertifiedError,
)
from rspin.picard import (
    JetLedger,
    PicardLattice,
    adjoint_and_root,
    catalog_lattice,
    catalog_names,
    genus_of_section,
    intersect,
    jet_compose,
    jet_splitting_certificate,
    lefschetz_full_decision,
    parse_lattice,
    render_lattice,
    smoothed_genus,
)


@pytest.fixture
def p2():
    return catalog_lattice("P2")[0]


@pytest.fixture
def quadric():
    return catalog_lattice("P1xP1")[0]


def test_intersect_p2(p2):
    h = p2.divisor((1,))
    assert intersect(h, h) == 1
    assert intersect(5 * h, 5 * h) == 25


def test_intersect_quadric(quadric):
    assert intersect(quadric.divisor((1, 0)), quadric.divisor((0, 1))) == 1


def test_intersect_symmetric_random():
    rng = random.Random(11)
    for name in catalog_names():
        lat, _ = catalog_lattice(name)
        for _ in range(20):
            a = lat.divisor(rng.randint(-5, 5) for _ in range(lat.rank))
            b = lat.divisor(rng.randint(-5, 5) for _ in range(lat.rank))
            assert intersect(a, b) == intersect(b, a)


def test_intersect_lattice_mismatch(p2, quadric):
    with pytest.raises(LatticeMismatchError):
        intersect(p2.divisor((1,)), quadric.divisor((1, 0)))


def test_signature_rejected():
    with pytest.raises(InconsistentInputError):
        PicardLattice(2, ((1, 0), (0, 1)), (0, 0))  # positive definite
    with pytest.raises(InconsistentInputError):
        PicardLattice(2, ((0, 0), (0, -1)), (0, 0))  # degenerate
    with pytest.raises(InconsistentInputError):
        PicardLattice(2, ((0, 1), (2, 0)), (0, 0))  # not symmetric


def test_adjoint_and_root(p2):
    h = p2.divisor((1,))
    rep = adjoint_and_root(5 * h)
    assert rep.adjoint.coords == (2,) and rep.divisibility == 2
    rep = adjoint_and_root(7 * h)
    assert rep.adjoint.coords == (4,) and rep.divisibility == 4
    rep = adjoint_and_root(3 * h)
    assert rep.degenerate and rep.divisibility == 0


def test_genus_of_section(p2, quadric):
    for d in range(1, 9):
        assert genus_of_section(p2.divisor((d,))) == (d - 1) * (d - 2) // 2
    assert genus_of_section(quadric.divisor((2, 2))) == 1


def test_genus_anticanonical_is_one():
    for name in ("P2", "dP3", "dP6"):
        lat, _ = catalog_lattice(name)
        minus_k = -lat.canonical_class
        assert genus_of_section(minus_k) == 1


def test_genus_odd_product_rejected():
    # A non-characteristic canonical vector is inconsistent input; the genus
    # must refuse to round rather than hide it.
    bad = PicardLattice(2, ((0, 1), (1, 0)), (-1, 0), name="inconsistent")
    with pytest.raises(NotRepresentableError):
        genus_of_section(bad.divisor((0, 1)))  # L.(K+L) = -1


def test_smoothed_genus_examples(p2, quadric):
    h = p2.divisor((1,))
    assert smoothed_genus(h, h) == 0 == genus_of_section(2 * h)
    assert smoothed_genus(6 * h, h) == 15 == genus_of_section(7 * h)
    one_one = quadric.divisor((1, 1))
    assert smoothed_genus(one_one, one_one) == 1 == genus_of_section(quadric.divisor((2, 2)))


def test_smoothed_genus_matches_section_genus_randomized():
    rng = random.Random(5)
    checked = 0
    while checked < 500:
        name = rng.choice(catalog_names())
        lat, _ = catalog_lattice(name)
        c = lat.divisor(rng.randint(-4, 6) for _ in range(lat.rank))
        d = lat.divisor(rng.randint(-4, 6) for _ in range(lat.rank))
        k = lat.canonical_class
        if intersect(c, k + c) % 2 or intersect(d, k + d) % 2:
            continue
        assert smoothed_genus(c, d) == genus_of_section(c + d)
        checked += 1


def test_divisibility_divides_every_pairing():
    rng = random.Random(23)
    for name in catalog_names():
        lat, _ = catalog_lattice(name)
        for _ in range(30):
            l = lat.divisor(rng.randint(-5, 5) for _ in range(lat.rank))
            rep = adjoint_and_root(l)
            if rep.degenerate:
                continue
            b = lat.divisor(rng.randint(-5, 5) for _ in range(lat.rank))
            assert intersect(rep.adjoint, b) % rep.divisibility == 0


def test_jet_ledger_monotone(p2):
    h = p2.divisor((1,))
    ledger = JetLedger()
    ledger.declare(h, 1)
    assert jet_compose(ledger, h, h) == 2
    ledger.declare(2 * h, 1)  # attempt to lower: must not stick
    assert ledger.level(2 * h) == 2
    before = {cls: ledger.level(cls) for cls in ledger.classes()}
    jet_compose(ledger, h, 2 * h)
    for cls, lvl in before.items():
        assert ledger.level(cls) >= lvl


def test_jet_compose_needs_entries(p2):
    ledger = JetLedger()
    ledger.declare(p2.divisor((1,)), 1)
    with pytest.raises(UncertifiedError):
        jet_compose(ledger, p2.divisor((1,)), p2.divisor((2,)))


def test_jet_compose_rule_instances(p2):
    h = p2.divisor((1,))
    ledger = JetLedger()
    ledger.declare(h, 1)
    level = 1
    for _ in range(6):
        level = jet_compose(ledger, (level) * h, h)
    assert ledger.level(7 * h) == 7
    ledger2 = JetLedger()
    ledger2.declare(p2.divisor((6,)), 6)
    ledger2.declare(h, 1)
    assert jet_compose(ledger2, p2.divisor((6,)), h) == 7
    ledger3 = JetLedger()
    ledger3.declare(p2.divisor((2,)), 3)
    assert jet_compose(ledger3, p2.divisor((2,)), p2.divisor((2,))) == 6


def test_hypothesis_certificate(p2):
    h = p2.divisor((1,))
    ledger = JetLedger()
    ledger.declare(h, 1)
    split = jet_splitting_certificate(7 * h, ledger)
    assert split is not None
    assert split.l1 + split.l2 == 7 * h
    assert split.jet1 >= 6 and split.jet2 >= 1
    assert jet_splitting_certificate(5 * h, ledger) is None


def test_hypothesis_direct_hit(quadric):
    ledger = JetLedger()
    l1, l2 = quadric.divisor((3, 3)), quadric.divisor((1, 1))
    ledger.declare(l1, 6)
    ledger.declare(l2, 1)
    split = jet_splitting_certificate(l1 + l2, ledger)
    assert split is not None and {split.l1, split.l2} <= {l1, l2, l1 + l2}


def test_lefschetz_decisions(p2):
    dec = lefschetz_full_decision(p2)
    assert dec.exists and dec.classification == "del Pezzo"
    assert dec.witness_multiple == 4  # pencil of quartics
    k3, _ = catalog_lattice("K3-4")
    dec = lefschetz_full_decision(k3)
    assert dec.exists and dec.classification == "K3" and dec.exceptional
    assert dec.witness_multiple == 1
    quad, _ = catalog_lattice("P1xP1")
    dec = lefschetz_full_decision(quad)
    assert dec.exists and dec.rank == 2
    general = PicardLattice(1, ((2,),), (4,), name="general-type")
    dec = lefschetz_full_decision(general)
    assert not dec.exists and dec.classification == "general type"


def test_lefschetz_inconsistent_rank_one():
    lat = PicardLattice(1, ((2,),), (1,), name="bad")
    with pytest.raises(InconsistentInputError):
        lefschetz_full_decision(lat, lat.divisor((2,)))


def test_catalog_all_valid():
    for name in catalog_names():
        lat, ledger = catalog_lattice(name)
        assert lat.rank >= 1
        for cls in ledger.classes():
            assert ledger.level(cls) >= 1


def test_lattice_format_round_trip():
    for name in catalog_names():
        lat, ledger = catalog_lattice(name)
        text = render_lattice(lat, ledger)
        lat2, ledger2 = parse_lattice(text)
        assert lat2 == lat
        assert {c.coords: ledger2.level(c) for c in ledger2.classes()} == \
               {c.coords: ledger.level(c) for c in ledger.classes()}


def test_lattice_format_whitespace_insensitive():
    text = "rank 2\ngram 0 1\n  1 0\ncanonical\n-2 -2\nname thing"
    lat, _ = parse_lattice(text)
    assert lat.rank == 2 and lat.canonical == (-2, -2) and lat.name == "thing"
