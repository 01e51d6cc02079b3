import pytest

from beacon_route.attraction import Status
from beacon_route.decomposition import vertical_decomposition
from beacon_route.geometry import pt
from beacon_route.spiral import (
    SectionOutOfRange,
    SpecInvariantViolated,
    SpiralSpec,
    certify,
    check_length_inequality,
    default_lengths,
    exponent_law_holds,
    generate_spiral,
    length_inequality_holds,
    region_between_lines,
    spiral_condition_failures,
    witness_indeterminate,
    witness_probe,
    witness_stuck,
)
from beacon_route.synthesis import synthesize


@pytest.fixture(scope="module")
def sp1():
    return generate_spiral(SpiralSpec.default(1))


@pytest.fixture(scope="module")
def sp2():
    return generate_spiral(SpiralSpec.default(2))


def test_default_lengths_r1():
    assert default_lengths(1) == [2, 16, 512, 65536]


def test_length_inequality_arithmetic():
    (rep,) = check_length_inequality(SpiralSpec.default(1))
    assert (rep.lhs, rep.rhs_num, rep.rhs_den) == (65536, 4 * 512 * 17, 2)
    assert rep.rhs_num // rep.rhs_den == 17408 and rep.holds


def test_spiral_condition_r1():
    assert spiral_condition_failures(default_lengths(1)) == []
    assert spiral_condition_failures([2, 16, 4, 65536]) == [3]


def test_equal_lengths_fail_everything():
    spec = SpiralSpec(1, (10, 10, 10, 10))
    assert [r.holds for r in check_length_inequality(spec)] == [False]
    assert not length_inequality_holds(spec.lengths, 1)
    with pytest.raises(SpecInvariantViolated):
        generate_spiral(spec)


def test_spec_validation_errors():
    with pytest.raises(SpecInvariantViolated):
        default_lengths(0)
    with pytest.raises(SpecInvariantViolated):
        SpiralSpec(1, (2, 16, 512)).validate()
    with pytest.raises(SpecInvariantViolated):
        generate_spiral(SpiralSpec.default(4))


def test_bit_cap(monkeypatch):
    monkeypatch.setenv("BEACON_ROUTE_MAX_BITS", "20")
    with pytest.raises(SpecInvariantViolated):
        generate_spiral(SpiralSpec.default(2))


def test_exponent_law():
    assert exponent_law_holds(10)


# --------------------------------------------------------------------------
# geometry


def test_r1_polygon(sp1):
    assert sp1.poly.n == 10
    assert sp1.r_chain[:2] == (pt(-2, 0), pt(0, 0))
    assert len(sp1.poly.reflex_vertices) == 3
    assert len(vertical_decomposition(sp1.poly).rects) == 4


def test_r2_polygon(sp2):
    assert sp2.poly.n == 16
    bb = sp2.poly.bbox
    # the last hallway alone spans l_7 = 2^49; with r_1 at the origin no single coordinate does
    assert max(bb.width, bb.height) >= 2 ** 49
    assert max(max(abs(v.x), abs(v.y)) for v in sp2.poly.vertices) < 2 ** 49


def test_corner_squares_are_unit(sp2):
    for k in range(1, sp2.K):
        c = sp2.corner(k)
        assert c.width == 1 and c.height == 1
        assert {sp2.r_chain[k], sp2.c_chain[k]} <= set(c.corners())


def test_hallway_dimensions(sp2):
    for k in range(2, sp2.K):
        h = sp2.hallway(k)
        assert sorted([h.width, h.height]) == [1, sp2.spec.lengths[k - 1]]


def test_half_hallways(sp1):
    sec = sp1.sections[0]
    assert sec.half_plus.contains(sp1.m_in(1)) and sec.half_plus.contains(sp1.m_out(1))
    assert sp1.hallway(1).contains_rect(sec.half_plus)


def test_sections_tile_polygon(sp2):
    pieces = [p for sec in sp2.sections for p in sec.pieces()] + list(sp2.end_halves())
    assert sum(p.area for p in pieces) == sp2.poly.area
    for i, a in enumerate(pieces):
        for b in pieces[i + 1:]:
            assert min(a.hi.x, b.hi.x) <= max(a.lo.x, b.lo.x) or min(a.hi.y, b.hi.y) <= max(a.lo.y, b.lo.y)


# --------------------------------------------------------------------------
# witnesses


@pytest.mark.parametrize("r", [1, 2])
def test_witnesses_every_section(r, sp1, sp2):
    sp = sp1 if r == 1 else sp2
    for i in range(1, r + 1):
        assert witness_stuck(sp, i, True).terminal.status.stuck
        assert witness_stuck(sp, i, False).reached
        assert witness_indeterminate(sp, i).status is Status.INDETERMINATE
        rep = region_between_lines(sp, i)
        assert rep.single_point and rep.vertices == (sp.r_chain[3 * i - 1],)


def test_probes_lie_in_middle_corner(sp1):
    c = sp1.corner(2)
    for below in (True, False):
        p = witness_probe(sp1, 1, below)
        assert c.contains_interior(p)


def test_indeterminate_with_nearby_beacon_reaches(sp1):
    assert witness_indeterminate(sp1, 1, sp1.corner(2).center).status is Status.REACHED


def test_section_range(sp1):
    with pytest.raises(SectionOutOfRange):
        witness_stuck(sp1, 2, True)
    with pytest.raises(SectionOutOfRange):
        region_between_lines(sp1, 0)


def test_weak_lengths_open_a_wedge():
    sp = generate_spiral(SpiralSpec(1, (2, 16, 512, 1000)), check_length_inequality=False)
    rep = region_between_lines(sp, 1)
    assert not rep.single_point and len(rep.vertices) == 3
    assert not certify(sp).ok


def test_certificates(sp1, sp2):
    assert certify(sp1).ok and certify(sp2).ok


def test_synthesis_meets_lower_bound(sp1):
    beacons, _, _ = synthesize(sp1.poly)
    assert len(beacons) == 2
