import itertools

import numpy as np
import pytest

from latentweight.dist import make_distribution, uniform
from latentweight.errors import ValidationError
from latentweight.polytope import (
    build_system,
    coefficient_matrix,
    enumerate_square_subsystems,
    scan_vertices,
    solve_subsystem,
    vertices,
)

from conftest import random_positive


def brute_vertices(sys):
    """Solve every square subsystem with numpy and keep the feasible, distinct points."""
    found = []
    for rows in itertools.combinations(range(sys.n_rows), sys.d):
        A = sys.coeffs[list(rows)]
        if abs(np.linalg.det(A)) < 1e-9:
            continue
        y = np.linalg.solve(A, sys.rhs[list(rows)])
        if np.all(sys.coeffs @ y <= sys.rhs + 1e-9 * np.maximum(1, np.abs(sys.rhs))):
            if all(np.max(np.abs(y - z)) > 1e-8 for z in found):
                found.append(y)
    return sorted(found, key=tuple)


class TestSystems:
    def test_pair_rhs(self, pair):
        sys = build_system(pair, 0)
        # rows by difference pattern: (1,0), (0,1), (1,1)
        np.testing.assert_allclose(sys.rhs, [np.log(0.05), np.log(0.05), np.log(0.25)], rtol=1e-12)
        assert sys.rhs[0] == pytest.approx(-2.995732, abs=1e-6)
        assert sys.rhs[2] == pytest.approx(-1.386294, abs=1e-6)
        np.testing.assert_array_equal(sys.nu, [1, 2, 3])

    def test_coefficients_shared(self):
        np.testing.assert_array_equal(
            coefficient_matrix(2), [[1, 0], [0, 1], [1, 1]]
        )

    def test_single_coordinate(self):
        P = make_distribution(1, [0.3, 0.7])
        sys = build_system(P, 0)
        assert sys.rhs[0] == pytest.approx(np.log(7 / 3))
        assert sys.rhs[0] == pytest.approx(0.847298, abs=1e-6)
        (v,) = vertices(sys)
        assert np.exp(v.log_objective) == pytest.approx(1.0, rel=1e-12)

    def test_uniform_rhs_zero(self):
        sys = build_system(uniform(3), 5)
        np.testing.assert_array_equal(sys.rhs, 0.0)

    def test_singleton_rows_identity(self):
        sys = build_system(uniform(3), 0)
        np.testing.assert_array_equal(sys.coeffs[list(sys.singleton_rows())], np.eye(3))
        v = solve_subsystem(sys, sys.singleton_rows())
        np.testing.assert_array_equal(v.y, 0.0)
        assert v.feasible

    def test_singular_triple(self):
        # difference patterns (1,0,0), (0,1,0), (1,1,0) are rows 0, 1, 2
        sys = build_system(uniform(3), 0)
        assert solve_subsystem(sys, (0, 1, 2)) is None

    def test_infeasible_candidate_flagged(self, pair):
        sys = build_system(pair, 3)
        flags = [solve_subsystem(sys, rows).feasible for rows in enumerate_square_subsystems(sys)]
        assert not all(flags)

    def test_zero_mass_rejected(self):
        with pytest.raises(ValidationError) as exc:
            build_system(make_distribution(2, [0.5, 0, 0, 0.5]), 0)
        assert exc.value.code == "ZERO_MASS"

    def test_lazy_enumeration_count(self):
        sys = build_system(uniform(3), 0)
        assert sum(1 for _ in enumerate_square_subsystems(sys)) == 35


class TestVertices:
    @pytest.mark.parametrize("d", [1, 2, 3])
    def test_matches_brute_force(self, rng, d):
        for _ in range(5):
            P = random_positive(rng, d)
            for omega in range(len(P)):
                sys = build_system(P, omega)
                got = sorted((v.y for v in vertices(sys)), key=tuple)
                ref = brute_vertices(sys)
                assert len(got) == len(ref)
                for a, b in zip(got, ref):
                    np.testing.assert_allclose(a, b, atol=1e-9)

    def test_vertices_feasible(self, rng):
        P = random_positive(rng, 4)
        for omega, verts in scan_vertices(np.log(P.probs), range(16)).items():
            sys = build_system(P, omega)
            assert verts
            assert all(sys.is_feasible(v.y) for v in verts)

    def test_best_vertex_covers_region(self, rng):
        # a convex increasing objective on a pointed polyhedron peaks at a vertex
        P = random_positive(rng, 3)
        for omega in range(8):
            sys = build_system(P, omega)
            best = max(v.log_objective for v in vertices(sys))
            y = rng.normal(size=(4000, 3)) * 3 + sys.rhs[list(sys.singleton_rows())]
            ok = np.all(y @ sys.coeffs.T <= sys.rhs, axis=1)
            vals = sys.log_p_omega + np.logaddexp(0, y[ok]).sum(axis=1)
            assert vals.size > 0
            assert vals.max() <= best + 1e-12

    def test_workers_do_not_change_result(self, rng):
        P = random_positive(rng, 3)
        logp = np.log(P.probs)
        a = scan_vertices(logp, range(8), workers=1, block=7)
        b = scan_vertices(logp, range(8), workers=2, block=7)
        for omega in range(8):
            assert [v.active_rows for v in a[omega]] == [v.active_rows for v in b[omega]]
            for u, v in zip(a[omega], b[omega]):
                np.testing.assert_array_equal(u.y, v.y)
