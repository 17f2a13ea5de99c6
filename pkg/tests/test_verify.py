import dataclasses

import pytest

from gridlift import (
    gen_tree,
    make_certificate,
    parse_tree,
    run_pipeline,
    verify_bounds,
    verify_combinatorics,
    verify_convexity_global,
    verify_convexity_stress,
)


def with_coords(realization, coords):
    return dataclasses.replace(realization, coords=[tuple(p) for p in coords])


def move_vertex(realization, vid, point):
    coords = [list(p) for p in realization.coords]
    coords[vid] = list(point)
    return with_coords(realization, coords)


class TestFixtureCertificate:
    def test_all_true(self, tet_result, tet_tree):
        realization, report = tet_result
        cert = make_certificate(realization, tet_tree)
        assert cert.convex_by_stress is True
        assert cert.convex_global is True
        assert cert.bounds_ok is True
        assert cert.combinatorics_ok is True
        assert cert.ok is True
        assert cert.witnesses == []

    def test_report_embeds_certificate(self, tet_result):
        _, report = tet_result
        assert report.certificate.ok is True


class TestStressOracle:
    def test_negated_apex(self, tet_result):
        realization, _ = tet_result
        x, y, z = realization.coords[3]
        bad = move_vertex(realization, 3, (x, y, -z))
        ok, witnesses = verify_convexity_stress(bad)
        assert ok is False
        assert any("below height zero" in w for w in witnesses)
        # the mirrored tetrahedron is still globally convex; the stress
        # certificate's height preconditions are what reject it
        g_ok, _ = verify_convexity_global(bad)
        assert g_ok is True

    def test_apex_pushed_into_base(self, tet_result):
        realization, _ = tet_result
        bad = move_vertex(realization, 3, (480, 480, 0))
        ok, witnesses = verify_convexity_stress(bad)
        assert ok is False


@pytest.fixture(scope="module")
def instance():
    tree = gen_tree("random", 3, 8, seed=42)
    realization, report = run_pipeline(tree)
    return realization


class TestOraclesAgreeOnCorruptions:
    """Corruptions that stay inside the oracle-equivalence class

    (base flat at height zero, everything else strictly above) must be
    rejected by both routes.
    """

    def test_spike(self, instance):
        vid = len(instance.coords) - 1
        x, y, z = instance.coords[vid]
        bad = move_vertex(instance, vid, (x, y, z + 10**9))
        s_ok, _ = verify_convexity_stress(bad)
        g_ok, _ = verify_convexity_global(bad)
        assert s_ok is False
        assert g_ok is False

    def test_sink(self, instance):
        # pull an apex down close to its facet plane but keep it positive
        vid = len(instance.coords) - 1
        x, y, z = instance.coords[vid]
        bad = move_vertex(instance, vid, (x, y, 1))
        s_ok, _ = verify_convexity_stress(bad)
        g_ok, _ = verify_convexity_global(bad)
        assert s_ok == g_ok  # both verdicts, whatever they are, must agree

    def test_lateral_shove(self, instance):
        vid = len(instance.coords) - 1
        x, y, z = instance.coords[vid]
        bad = move_vertex(instance, vid, (x + 10**9, y, z))
        s_ok, _ = verify_convexity_stress(bad)
        g_ok, _ = verify_convexity_global(bad)
        assert s_ok is False
        assert g_ok is False


class TestBounds:
    def test_fixture(self, tet_result):
        realization, _ = tet_result
        ok, _ = verify_bounds(realization)
        assert ok is True

    def test_explicit_parameters(self, tet_result):
        realization, _ = tet_result
        ok, _ = verify_bounds(realization, R_eff=4, d=3)
        assert ok is True
        ok, witnesses = verify_bounds(realization, R_eff=3, d=3)
        assert ok is False
        assert witnesses

    def test_negative_coordinate(self, tet_result):
        realization, _ = tet_result
        bad = move_vertex(realization, 3, (480, -1, 21))
        ok, _ = verify_bounds(bad)
        assert ok is False


class TestCombinatorics:
    def test_fixture(self, tet_result, tet_tree):
        realization, _ = tet_result
        ok, _ = verify_combinatorics(realization, tet_tree)
        assert ok is True

    def test_wrong_tree(self, tet_result):
        realization, _ = tet_result
        other = parse_tree('{"dim": 3, "tree": [[null, null, null], null, null]}')
        ok, witnesses = verify_combinatorics(realization, other)
        assert ok is False
        assert witnesses

    def test_facet_count(self, two_stack_tree):
        realization, report = run_pipeline(two_stack_tree)
        ok, _ = verify_combinatorics(realization, two_stack_tree)
        assert ok is True
        assert len(realization.facets) + 1 == two_stack_tree.interior_count * 2 + 2


class TestAgreementSmoke:
    @pytest.mark.parametrize("seed", range(8))
    def test_small_instances(self, seed):
        tree = gen_tree("random", 3, 4 + seed % 4, seed=seed)
        realization, _ = run_pipeline(tree)
        s_ok, s_wit = verify_convexity_stress(realization)
        g_ok, g_wit = verify_convexity_global(realization)
        assert s_ok and g_ok
        assert s_wit == [] and g_wit == []

    def test_threaded_matches_serial(self):
        tree = gen_tree("random", 3, 15, seed=3)
        realization, _ = run_pipeline(tree)
        assert verify_convexity_global(realization, threads=4) == verify_convexity_global(
            realization
        )
