import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.optimize import linprog

from diamond_relay import lp
from diamond_relay.capacity import build_full_lp
from diamond_relay.errors import InvalidArgumentError
from diamond_relay.network import DiamondNetwork

F = Fraction


def exact_array(a):
    return np.array([[F(int(v)) for v in row] for row in np.atleast_2d(a)], dtype=object)


class TestSmallPrograms:
    @pytest.mark.parametrize("mode", ["float", "exact"])
    def test_single_bound(self, mode):
        prog = lp.LinearProgram([1], [[1]], [3])
        sol = lp.solve(prog, mode)
        assert sol.status == lp.OPTIMAL and sol.value == 3
        assert lp.check_certificate(prog, sol) == []

    @pytest.mark.parametrize("mode", ["float", "exact"])
    def test_simplex_face(self, mode):
        prog = lp.LinearProgram([1, 1], [[1, 1]], [1])
        sol = lp.solve(prog, mode)
        assert sol.value == 1
        assert lp.check_certificate(prog, sol) == []

    @pytest.mark.parametrize("mode", ["float", "exact"])
    def test_two_relay_example(self, mode):
        nw = DiamondNetwork.from_pairs([(2, 2), (2, 2)])
        prog = build_full_lp(nw, exact=mode == "exact")
        sol = lp.solve(prog, mode)
        assert sol.value == 2

    @pytest.mark.parametrize("mode", ["float", "exact"])
    def test_infeasible(self, mode):
        prog = lp.LinearProgram([1], [[1], [-1]], [1, -2])
        assert lp.solve(prog, mode).status == lp.INFEASIBLE

    @pytest.mark.parametrize("mode", ["float", "exact"])
    def test_unbounded(self, mode):
        prog = lp.LinearProgram([1, 0], [[-1, 1]], [1])
        assert lp.solve(prog, mode).status == lp.UNBOUNDED

    @pytest.mark.parametrize("mode", ["float", "exact"])
    def test_free_variable_and_equality(self, mode):
        # max -x with x free, x + y == -2, 0 <= y <= 1 -> y = 1, x = -3, value 3
        prog = lp.LinearProgram([-1, 0], [[0, 1]], [1], [[1, 1]], [-2], nonneg=[False, True])
        sol = lp.solve(prog, mode)
        assert sol.status == lp.OPTIMAL and sol.value == 3
        assert sol.primal[0] == -3
        assert lp.check_certificate(prog, sol) == []

    def test_degenerate_cycling_example(self):
        # Beale's classic cycling LP; Bland's rule must terminate
        c = [F(3, 4), F(-150), F(1, 50), F(-6)]
        A = [[F(1, 4), F(-60), F(-1, 25), F(9)], [F(1, 2), F(-90), F(-1, 50), F(3)], [0, 0, 1, 0]]
        prog = lp.LinearProgram(np.array(c, dtype=object), np.array(A, dtype=object),
                                np.array([F(0), F(0), F(1)], dtype=object))
        sol = lp.solve(prog, "exact")
        assert sol.value == F(1, 20)
        assert lp.check_certificate(prog, sol) == []
        fsol = lp.solve(prog, "float")
        assert fsol.value == pytest.approx(0.05, abs=1e-12)

    def test_exact_takes_floats_as_binary_rationals(self):
        prog = lp.LinearProgram([np.sqrt(2)], [[1]], [1])
        sol = lp.solve(prog, "exact")  # floats are dyadic rationals and accepted
        assert sol.value == F(np.sqrt(2))
        with pytest.raises(InvalidArgumentError):
            lp.to_fraction(complex(1, 1))

    def test_unknown_mode(self):
        with pytest.raises(InvalidArgumentError):
            lp.solve(lp.LinearProgram([1], [[1]], [1]), "fast")

    def test_shape_mismatch(self):
        with pytest.raises(InvalidArgumentError):
            lp.LinearProgram([1, 2], [[1]], [1])
        with pytest.raises(InvalidArgumentError):
            lp.LinearProgram([1], [[np.inf]], [1])

    def test_deterministic(self):
        prog = build_full_lp(DiamondNetwork.from_pairs([(1, 3), (2, 2), (3, 1)]))
        a, b = lp.solve(prog), lp.solve(prog)
        assert a.pivots == b.pivots and a.primal == b.primal and a.dual == b.dual


class TestCertificate:
    def test_hand_built_pair_accepted(self):
        prog = lp.LinearProgram([1], [[1]], [3])
        sol = lp.LpSolution(lp.OPTIMAL, "float", 3.0, [3.0], [1.0])
        assert lp.check_certificate(prog, sol) == []

    def test_perturbed_primal_rejected(self):
        prog = build_full_lp(DiamondNetwork.from_pairs([(2, 3), (4, 1)]))
        sol = lp.solve(prog)
        j = 1 + int(np.argmax(sol.primal[1:]))
        primal = list(sol.primal)
        primal[j] += 1e-3
        bad = lp.LpSolution(sol.status, sol.mode, sol.value, primal, sol.dual)
        assert lp.check_certificate(prog, bad)

    def test_wrong_dual_rejected(self):
        prog = lp.LinearProgram([1], [[1]], [3])
        sol = lp.LpSolution(lp.OPTIMAL, "float", 3.0, [3.0], [0.5])
        assert lp.check_certificate(prog, sol)

    def test_exact_zero_tolerance(self):
        prog = lp.LinearProgram(np.array([F(1)], dtype=object), exact_array([[1]]),
                                np.array([F(3)], dtype=object))
        sol = lp.LpSolution(lp.OPTIMAL, "exact", F(3), [F(3) - F(1, 10**30)], [F(1)])
        assert lp.check_certificate(prog, sol)


class TestSupport:
    def test_positions_are_one_based(self):
        assert lp.support(lp.LpSolution(lp.OPTIMAL, "float", 0, [0, 0.5, 0.5, 0])) == {2, 3}

    def test_all_zero(self):
        assert lp.support(lp.LpSolution(lp.OPTIMAL, "float", 0, [0.0, 0.0])) == set()

    def test_float_threshold(self):
        assert lp.support(lp.LpSolution(lp.OPTIMAL, "float", 0, [1e-12, 1.0])) == {2}

    def test_exact_any_nonzero(self):
        assert lp.support(lp.LpSolution(lp.OPTIMAL, "exact", 0, [F(1, 10**20), F(0)])) == {1}


def _random_lp(rng: random.Random):
    n = rng.randint(1, 5)
    mu, me = rng.randint(0, 4), rng.randint(0, 2)
    ri = lambda lo, hi, k: [rng.randint(lo, hi) for _ in range(k)]  # noqa: E731
    c = ri(-5, 5, n)
    A = [ri(-4, 4, n) for _ in range(mu)] + [[int(i == j) for j in range(n)] for i in range(n)]
    b = ri(-3, 7, mu) + [10] * n
    E = [ri(-3, 3, n) for _ in range(me)]
    d = ri(-3, 3, me)
    nonneg = [rng.random() < 0.7 for _ in range(n)]
    # keep free variables bounded below too
    A += [[-int(i == j) for j in range(n)] for i in range(n)]
    b += [10] * n
    return n, c, A, b, E, d, nonneg


@pytest.mark.parametrize("seed", range(120))
def test_random_programs_match_reference_solver(seed):
    n, c, A, b, E, d, nonneg = _random_lp(random.Random(seed))
    ref = linprog(-np.array(c, float), A_ub=np.array(A, float), b_ub=np.array(b, float),
                  A_eq=np.array(E, float).reshape(-1, n) if E else None, b_eq=np.array(d, float) if E else None,
                  bounds=[(0, None) if f else (None, None) for f in nonneg], method="highs")
    for mode in ("float", "exact"):
        if mode == "exact":
            prog = lp.LinearProgram(np.array([F(v) for v in c], dtype=object), exact_array(A),
                                    np.array([F(v) for v in b], dtype=object),
                                    exact_array(E).reshape(-1, n) if E else None,
                                    np.array([F(v) for v in d], dtype=object), nonneg)
        else:
            prog = lp.LinearProgram(c, A, b, E or None, d or None, nonneg)
        sol = lp.solve(prog, mode)
        if ref.status == 2:
            assert sol.status == lp.INFEASIBLE
        else:
            assert sol.status == lp.OPTIMAL
            assert float(sol.value) == pytest.approx(-ref.fun, abs=1e-7)
            assert lp.check_certificate(prog, sol) == []


@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=1, max_size=4),
       st.lists(st.integers(0, 6), min_size=4, max_size=4), st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_strong_duality_exact(A, b, c):
    A = A + [[1, 1, 1]]
    b = b[: len(A) - 1] + [5]
    A, b = A[: len(b)], b[: len(A)]
    prog = lp.LinearProgram(np.array([F(v) for v in c], dtype=object), exact_array(A),
                            np.array([F(v) for v in b], dtype=object))
    sol = lp.solve(prog, "exact")
    assert sol.status == lp.OPTIMAL  # b >= 0 keeps x = 0 feasible, sum row bounds x
    assert sum(y * bi for y, bi in zip(sol.dual, b)) == sol.value
    assert lp.check_certificate(prog, sol) == []
