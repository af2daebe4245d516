import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pegboard.curves import Component, CurveDiagram
from pegboard.geometry import pt
from pegboard.pairing import (
    ArcLift,
    SlopeSpec,
    ZeroSurgery,
    arc_points,
    cancel_bigons,
    dual_hfk_dims,
    genus_of,
    line_family,
    raw_intersections,
    surgery_dim,
    surgery_report,
)


def vertical_dims_oracle(d):
    """Brute-force graded count: transversal crossings of integer-x lines,
    bucketed by height band.  Independent of the arc/lift machinery."""
    out = {}
    for c in d.components:
        verts = list(c.vertices) if c.winding == 1 else list(c.vertices) + [c.vertices[0]]
        n = len(verts) - 1
        for i in range(n):
            a, b = verts[i], verts[i + 1]
            if a.x == b.x:
                continue
            lo, hi = sorted((a.x, b.x))
            for k in range(math.ceil(lo), math.floor(hi) + 1):
                t = (F(k) - a.x) / (b.x - a.x)
                if not (0 <= t < 1):
                    continue
                if t == 0:
                    prev = verts[i - 1] if i > 0 else (
                        verts[n - 1].translate(-1) if c.winding == 1 else verts[n - 1]
                    )
                    if not ((prev.x < k) != (b.x < k)):
                        continue
                y = a.y + t * (b.y - a.y)
                band = math.floor(y + F(1, 2))
                out[band] = out.get(band, 0) + 1
    return {F(h): v for h, v in out.items()}


WIGGLED = CurveDiagram(
    (
        Component(
            (pt(F(-1, 2), 0), pt(F(-3, 8), F(-15, 16)), pt(F(-1, 4), 0), pt(F(1, 2), 0)),
            1,
        ),
    ),
    "wiggled-unknot",
)


class TestSlopeSpec:
    def test_parse_and_normalize(self):
        assert SlopeSpec.parse("5/2") == SlopeSpec(5, 2)
        assert SlopeSpec.parse("-3") == SlopeSpec(-3, 1)
        assert SlopeSpec(6, -4) == SlopeSpec(-3, 2)
        assert SlopeSpec.parse("1/0").is_vertical
        assert SlopeSpec(-1, 0) == SlopeSpec(1, 0)

    def test_zero_zero_rejected(self):
        with pytest.raises(ValueError):
            SlopeSpec(0, 0)

    @given(st.integers(-40, 40), st.integers(-20, 20))
    @settings(max_examples=120)
    def test_always_reduced(self, p, q):
        if p == 0 and q == 0:
            return
        s = SlopeSpec(p, q)
        assert s.q >= 0
        assert math.gcd(abs(s.p), s.q) == 1 or (s.q == 0 and s.p == 1)


class TestSurgeryDims:
    def test_lens_law_sample(self, zoo):
        u = zoo["unknot"]
        for p, q in [(1, 1), (3, 2), (7, 5), (-6, 1), (13, 4), (0, 1)]:
            assert surgery_dim(u, SlopeSpec(p, q)) == abs(SlopeSpec(p, q).p)

    def test_vertical_filling_is_one_dimensional(self, zoo):
        for d in zoo.values():
            assert surgery_dim(d, SlopeSpec(1, 0)) == 1

    def test_trefoil_values(self, zoo):
        t = zoo["trefoil"]
        assert surgery_dim(t, SlopeSpec(5, 1)) == 5
        assert surgery_dim(t, SlopeSpec(1, 1)) == 1
        assert surgery_dim(t, SlopeSpec(-1, 1)) == 3
        assert surgery_dim(t, SlopeSpec(0, 1)) == 2

    def test_zero_filling_is_flagged(self, zoo):
        rep = surgery_report(zoo["trefoil"], SlopeSpec(0, 1))
        assert rep.flags and "0-filling" in rep.flags[0]

    def test_spin_classes_each_carry_at_least_one(self, zoo):
        for name in ("trefoil", "figure_eight"):
            for p, q in [(3, 1), (5, 2), (-4, 1)]:
                rep = surgery_report(zoo[name], SlopeSpec(p, q))
                assert len(rep.counts) == abs(p)
                assert all(v >= 1 for v in rep.counts.values())

    def test_dim_at_least_p(self, zoo):
        for d in zoo.values():
            for p, q in [(1, 1), (2, 1), (-3, 2), (4, 3)]:
                assert surgery_dim(d, SlopeSpec(p, q)) >= abs(p)


class TestArcPairing:
    def test_unknot_single_generator(self, zoo):
        assert dual_hfk_dims(zoo["unknot"], SlopeSpec(1, 1)) == {F(0): 1}

    def test_unknot_vertical(self, zoo):
        assert dual_hfk_dims(zoo["unknot"], SlopeSpec(1, 0)) == {F(0): 1}

    def test_trefoil_high_vertical_arc_empty(self, zoo):
        assert arc_points(zoo["trefoil"], ArcLift(SlopeSpec(1, 0), F(2))) == []

    def test_trefoil_unit_slope(self, zoo):
        dims = dual_hfk_dims(zoo["trefoil"], SlopeSpec(1, 1))
        assert dims == {F(1): 1, F(0): 1, F(-1): 1}

    def test_figure_eight_vertical(self, zoo):
        dims = dual_hfk_dims(zoo["figure_eight"], SlopeSpec(1, 0))
        assert dims == {F(1): 1, F(0): 3, F(-1): 1}
        assert sum(dims.values()) == 5  # the determinant of the knot

    def test_vertical_dims_match_brute_oracle(self, zoo):
        for name, d in zoo.items():
            assert dual_hfk_dims(d, SlopeSpec(1, 0)) == vertical_dims_oracle(d), name

    def test_even_p_uses_half_integer_gradings(self, zoo):
        dims = dual_hfk_dims(zoo["trefoil"], SlopeSpec(2, 1))
        assert dims and all((h - F(1, 2)).denominator == 1 for h in dims)

    def test_grading_symmetry(self, zoo):
        for d in zoo.values():
            for p, q in [(1, 1), (2, 1), (-3, 2), (5, 3)]:
                dims = dual_hfk_dims(d, SlopeSpec(p, q))
                assert all(dims.get(-h, 0) == n for h, n in dims.items())

    def test_dominance(self, zoo):
        for d in zoo.values():
            for p, q in [(1, 1), (3, 2), (-2, 1)]:
                s = SlopeSpec(p, q)
                assert sum(dual_hfk_dims(d, s).values()) >= surgery_dim(d, s)

    def test_totals_have_the_parity_of_p(self, zoo):
        # one page of cancellation drops even rank, so the graded total and
        # the filling dimension (= |p| + even) share parity with |p|
        for name, d in zoo.items():
            for p, q in [(1, 1), (2, 1), (3, 2), (-4, 3), (5, 2)]:
                s = SlopeSpec(p, q)
                assert sum(dual_hfk_dims(d, s).values()) % 2 == abs(p) % 2, (name, f"{p}/{q}")
                assert surgery_dim(d, s) % 2 == abs(p) % 2, (name, f"{p}/{q}")

    def test_zero_slope_refused(self, zoo):
        with pytest.raises(ZeroSurgery):
            dual_hfk_dims(zoo["trefoil"], SlopeSpec(0, 1))


class TestGenus:
    def test_genus_values(self, zoo):
        want = {"unknot": 0, "trefoil": 1, "trefoil_mirror": 1, "figure_eight": 1,
                "torus_2_5": 2, "torus_3_4": 3}
        for name, g in want.items():
            assert genus_of(zoo[name]) == g, name

    def test_staircase_tau_equals_genus(self, staircases):
        from pegboard.curves import tau_epsilon

        for d in staircases.values():
            tau, eps = tau_epsilon(d)
            assert tau == genus_of(d)
            assert eps == 1


class TestCancellation:
    def test_unknot_is_raw_minimal_everywhere(self, zoo):
        slopes = [
            SlopeSpec(p, q)
            for p in range(-5, 6)
            for q in range(1, 6)
            if p != 0 and math.gcd(abs(p), q) == 1
        ]
        for s in slopes:
            assert surgery_report(zoo["unknot"], s).cancelled == ()

    def test_staircases_raw_minimal_at_sample_simple_slopes(self, staircases):
        # Raw minimality over a whole slope grid is not achievable for a
        # fixed PL representative under the exact-offset convention: some
        # family always owns a line passing closer to a peg than the curve
        # hugs it, leaving one removable sliver.  The canonical counts come
        # from confluent cancellation; raw minimality is only spot-checked.
        for s in (SlopeSpec(3, 1), SlopeSpec(5, 1)):
            assert surgery_report(staircases["trefoil"], s).cancelled == ()
        assert surgery_report(staircases["torus_2_5"], SlopeSpec(5, 1)).cancelled == ()

    def test_cancellation_certificates_have_zero_windings(self, staircases):
        from pegboard.geometry import winding_number

        rep = surgery_report(staircases["trefoil"], SlopeSpec(-5, 1))
        assert rep.cancelled
        for bigon in rep.cancelled:
            for peg in bigon.pegs_checked:
                assert winding_number(bigon.loop, peg) == 0

    def test_wiggled_unknot_cancels_exactly_one_pair(self):
        rep = surgery_report(WIGGLED, SlopeSpec(1, 1))
        assert rep.total == 1
        assert len(rep.cancelled) == 1
        bigon = rep.cancelled[0]
        assert bigon.loop and bigon.pegs_checked == tuple()

    def test_empty_input_stays_empty(self, zoo):
        fam = line_family(zoo["unknot"], SlopeSpec(1, 1))
        live, audit = cancel_bigons([], zoo["unknot"], fam)
        assert live == [] and audit == []

    def test_order_independence_small(self, zoo):
        d = zoo["figure_eight"]
        fam = line_family(d, SlopeSpec(1, 1))
        raw = raw_intersections(d, fam)
        totals = {len(cancel_bigons(raw, d, fam, order_seed=seed)[0]) for seed in range(25)}
        assert len(totals) == 1

    def test_audit_certifies_empty_loops(self):
        rep = surgery_report(WIGGLED, SlopeSpec(1, 1))
        for bigon in rep.cancelled:
            # every peg listed in the certificate had winding zero; the loop
            # is recorded for replay
            assert len(bigon.loop) >= 2


def _random_confined_wiggle(seed):
    """A wrapping component wiggling inside the peg-free band |y| < 1/2.

    Such a curve winds around nothing, so it is homotopic to the horizontal
    line: every pairing must cancel down to the lens-space counts.
    """
    import random

    rng = random.Random(seed)
    xs = sorted(rng.sample(range(-7, 8), rng.randint(1, 5)))
    verts = [pt(F(-1, 2), 0)]
    for x in xs:
        # odd/32 heights cannot be collinear with any unit-slope arc line,
        # which would be an unperturbable degeneracy in arc mode
        y = F(2 * rng.randint(-7, 7) + 1, 32)
        cand = pt(F(x, 16), y)
        if cand != verts[-1]:
            verts.append(cand)
    end = pt(F(1, 2), 0)
    if verts[-1] == end:
        verts.pop()
    verts.append(end)
    return CurveDiagram((Component(tuple(verts), 1),), f"wiggle-{seed}")


class TestCancellationCompleteness:
    def test_confined_wiggles_cancel_to_lens_counts(self):
        # completeness of the bigon search: anything null-wiggled must come
        # all the way down to |p| for every slope
        slopes = [SlopeSpec(1, 1), SlopeSpec(2, 1), SlopeSpec(3, 2), SlopeSpec(-3, 1)]
        for seed in range(30):
            d = _random_confined_wiggle(seed)
            for s in slopes:
                assert surgery_dim(d, s) == abs(s.p), (seed, str(s))

    def test_confined_wiggles_have_trivial_graded_dims(self):
        for seed in range(15):
            d = _random_confined_wiggle(seed)
            assert dual_hfk_dims(d, SlopeSpec(1, 1)) == {F(0): 1}, seed
            assert dual_hfk_dims(d, SlopeSpec(1, 0)) == {F(0): 1}, seed
