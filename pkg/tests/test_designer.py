"""
逆向设计测试

目标校验、磁场闭式解、分支选择、配对排序与均匀 q 设计
"""

import math

import numpy as np
import pytest

from qrainbow.design.designer import DesignTarget
from qrainbow.design.designer import branch_candidates
from qrainbow.design.designer import choose_branch
from qrainbow.design.designer import entropies_to_energies
from qrainbow.design.designer import fields_from_energies
from qrainbow.design.designer import h2_max
from qrainbow.design.designer import order_pairs
from qrainbow.design.designer import solve_fields
from qrainbow.design.designer import uniform_q_fields
from qrainbow.exceptions import DegenerateTargetError
from qrainbow.exceptions import InvalidArgumentError
from qrainbow.exceptions import NumericRangeError
from qrainbow.model.chain import ChainSpec
from qrainbow.model.qalgebra import LN2
from qrainbow.model.qalgebra import pair_entropy
from qrainbow.solver.rg import renormalize


class TestDesignTarget:
    """设计目标测试"""

    def test_from_energies(self):
        target = DesignTarget.from_energies([1.0, -2.0], [1.0, 0.01])
        assert target.eps_targets == [1.0, -2.0]
        assert target.s_targets is None
        assert target.n_pairs == 2

    def test_entropy_alias(self):
        """测试 JSON 中熵目标键为 S"""
        target = DesignTarget.from_dict({"targets": {"S": [0.2, 0.6]}, "J": [1.0, 0.1]})
        assert target.s_targets == [0.2, 0.6]
        assert target.to_dict()["targets"] == {"S": [0.2, 0.6]}

    def test_to_dict(self):
        data = DesignTarget.from_energies([0.5], [1.0]).to_dict()
        assert data == {
            "targets": {"eps": [0.5]},
            "J": [1.0],
            "ordering": "optimal",
            "branch": "optimal",
            "method": "auto",
        }

    @pytest.mark.parametrize(
        "data",
        [
            {"targets": {"eps": [1.0]}, "J": [1.0, 0.1]},
            {"targets": {"eps": [1.0], "S": [0.1]}, "J": [1.0]},
            {"targets": {}, "J": [1.0]},
            {"targets": {"S": [0.8]}, "J": [1.0]},
            {"targets": {"eps": [math.nan]}, "J": [1.0]},
            {"targets": {"eps": [1.0]}, "J": [-1.0]},
            {"targets": {"eps": [1.0]}, "J": [1.0], "ordering": "random"},
        ],
    )
    def test_invalid_targets(self, data):
        """测试非法目标统一为参数错误"""
        with pytest.raises(InvalidArgumentError):
            DesignTarget.from_dict(data)


class TestSolveFields:
    """磁场求解测试"""

    def test_first_field(self):
        """测试 h_1 = −J_1 sinh(ε_1/2)"""
        fields = solve_fields([2.0], [3.0])
        assert fields[0] == pytest.approx(-3.0 * math.sinh(1.0))

    def test_worked_example(self):
        """测试 ε = (−2 asinh 1, 4)：h_1 = 1 且 h~_2/J~_2 = −sinh 2"""
        eps = [-2.0 * math.asinh(1.0), 4.0]
        fields = solve_fields(eps, [1.0, 0.01])
        assert fields[0] == pytest.approx(1.0, rel=1e-14)

        profile = renormalize(ChainSpec.create([1.0, 0.01], fields))
        assert profile.h_eff[1] / profile.J_eff[1] == pytest.approx(-math.sinh(2.0), rel=1e-12)
        assert profile.gammas[1] == pytest.approx(-2.0, rel=1e-12)

    @pytest.mark.parametrize("n_pairs", [2, 3, 4])
    def test_closed_form_matches_forward(self, n_pairs):
        """测试闭式解与正向递推一致"""
        rng = np.random.default_rng(7 + n_pairs)
        eps = list(rng.uniform(-6.0, 6.0, n_pairs))
        J = [10.0 ** (-2 * i) for i in range(n_pairs)]
        closed = solve_fields(eps, J, method="closed-form")
        forward = solve_fields(eps, J, method="forward")
        np.testing.assert_allclose(closed, forward, rtol=1e-10)

    def test_closed_form_singularity(self):
        """测试 h_2 = 0 时闭式递推报退化错误，auto 回退到正向求解"""
        eps = [-1.0, 1.0, 0.5]
        J = [1.0, 0.01, 1e-6]
        with pytest.raises(DegenerateTargetError) as exc_info:
            solve_fields(eps, J, method="closed-form")
        assert exc_info.value.pair_index == 3

        fields = solve_fields(eps, J, method="auto")
        assert fields[1] == 0.0
        np.testing.assert_allclose(fields, solve_fields(eps, J, method="forward"))

    def test_overflow(self):
        """测试 sinh(|ε|/2) 超出浮点范围时报数值错误"""
        with pytest.raises(NumericRangeError) as exc_info:
            solve_fields([1500.0], [1.0])
        assert exc_info.value.pair_index == 1

    def test_large_inner_target(self):
        """测试 |ε| = 1000 的内侧对：h_2 有限且闭式解与正向递推一致"""
        eps = [1.0, -1000.0]
        J = [1.0, 0.01]
        closed = solve_fields(eps, J, method="closed-form")
        forward = solve_fields(eps, J, method="forward")
        assert all(math.isfinite(value) for value in closed)
        np.testing.assert_allclose(closed, forward, rtol=1e-12)


class TestBranches:
    """高/低保真度分支测试"""

    def test_h2_max(self):
        """测试 J=[1, 0.1], h_1 = 1：h2_max = sinh(γ_1) J~_2 = 0.005"""
        assert h2_max(1.0, 1.0, 0.1) == pytest.approx(0.005, rel=1e-14)

    def test_candidates_symmetric(self):
        """测试两个候选关于 h2_max 对称"""
        low, high = branch_candidates(1.0, 0.7, 0.1, 0.3)
        assert low < high
        assert (low + high) / 2 == pytest.approx(h2_max(1.0, 0.7, 0.1), rel=1e-12)

    @pytest.mark.parametrize("h2_index", [0, 1])
    def test_candidates_reach_target(self, h2_index):
        """测试两个候选都达到目标熵"""
        target_S2 = 0.45
        h2 = branch_candidates(1.0, -0.8, 0.05, target_S2)[h2_index]
        profile = renormalize(ChainSpec.create([1.0, 0.05], [-0.8, h2]))
        assert pair_entropy(profile.q[1]) == pytest.approx(target_S2, rel=1e-10)

    def test_max_entropy_target(self):
        """测试 S_2 = ln 2 时两分支重合"""
        low, high = branch_candidates(1.0, 0.5, 0.1, LN2)
        assert low == pytest.approx(high)

    @pytest.mark.parametrize("target", [0.0, 0.8, -0.1])
    def test_invalid_target(self, target):
        with pytest.raises(InvalidArgumentError):
            branch_candidates(1.0, 0.5, 0.1, target)

    @pytest.mark.parametrize(
        "h1,policy,expected",
        [
            (1.0, "optimal", 1),
            (-1.0, "optimal", 0),
            (0.0, "optimal", 1),
            (1.0, "low", 0),
            (-1.0, "high", 1),
        ],
    )
    def test_choose_branch(self, h1, policy, expected):
        """测试 h_1/J_1 的符号决定默认分支"""
        candidates = branch_candidates(1.0, h1, 0.1, 0.4)
        assert choose_branch(1.0, h1, 0.1, 0.4, policy) == candidates[expected]


class TestOrdering:
    """配对排序测试"""

    def test_descending_magnitude(self):
        """测试 |ε| 大者在内，同 |ε| 时正值在前"""
        assert order_pairs([1.0, -3.0, 3.0, 0.5]) == (2, 1, 0, 3)

    def test_stable_ties(self):
        assert order_pairs([2.0, 2.0, 2.0]) == (0, 1, 2)

    def test_rejects_infinite(self):
        with pytest.raises(InvalidArgumentError):
            order_pairs([1.0, math.inf])

    def test_entropy_signs(self):
        """测试熵转 ε：首对 ε ≤ 0，low 分支其后 ε ≥ 0"""
        eps = entropies_to_energies([0.3, 0.5], "low")
        assert eps[0] < 0
        assert eps[1] > 0
        assert entropies_to_energies([0.3, 0.5], "high")[1] < 0

    def test_entropy_follow_previous(self):
        """测试 optimal 策略跟随前一对的 γ 符号"""
        eps = entropies_to_energies([0.5], "optimal", previous_gamma=-1.0)
        assert eps[0] > 0


class TestFieldsFromEnergies:
    """完整设计流程测试"""

    @pytest.mark.parametrize("n_pairs", [2, 3, 4])
    def test_round_trip(self, n_pairs):
        """测试回代的 ε 与目标偏差 ≤ 1e−9"""
        rng = np.random.default_rng(100 + n_pairs)
        J = [10.0 ** (-2 * i) for i in range(n_pairs)]
        for _ in range(20):
            eps = list(rng.uniform(-8.0, 8.0, n_pairs))
            result = fields_from_energies(DesignTarget.from_energies(eps, J))
            assert result.max_deviation <= 1e-9
            assert sorted(result.targets) == sorted(eps)
            np.testing.assert_allclose(result.achieved, result.targets, atol=1e-9)

    def test_as_given_ordering(self):
        """测试 as-given 保持输入顺序"""
        target = DesignTarget.from_energies([1.0, -3.0], [1.0, 0.01], ordering="as-given")
        result = fields_from_energies(target)
        assert result.permutation == (0, 1)
        assert result.targets == (1.0, -3.0)

    def test_optimal_ordering(self):
        target = DesignTarget.from_energies([1.0, -3.0], [1.0, 0.01])
        result = fields_from_energies(target)
        assert result.permutation == (1, 0)
        assert result.targets == (-3.0, 1.0)

    def test_entropy_targets(self):
        """测试熵目标按 S 升序排列且逐对达到"""
        target = DesignTarget.from_entropies([0.6, 0.2], [1.0, 0.01])
        result = fields_from_energies(target)
        assert result.permutation == (1, 0)
        assert pair_entropy(result.profile.q[0]) == pytest.approx(0.2, rel=1e-9)
        assert pair_entropy(result.profile.q[1]) == pytest.approx(0.6, rel=1e-9)

    def test_predicted_report(self):
        """测试结果携带拟设态纠缠报告"""
        result = fields_from_energies(DesignTarget.from_energies([0.0], [1.0]))
        assert result.spec.h == (0.0,)
        assert result.predicted.vn_entropy == pytest.approx(LN2)

    def test_overflow_target(self):
        with pytest.raises(NumericRangeError):
            fields_from_energies(DesignTarget.from_energies([1500.0], [1.0]))

    @pytest.mark.parametrize("eps", [-1000.0, 800.0])
    def test_large_single_pair(self, eps):
        """测试 |ε| 超过 700 的单对：h_1 = −sinh(ε/2) 有限且回代一致"""
        result = fields_from_energies(DesignTarget.from_energies([eps], [1.0]))
        assert result.spec.h[0] == pytest.approx(-math.sinh(eps / 2.0), rel=1e-12)
        assert result.achieved == [pytest.approx(eps, rel=1e-12)]
        assert result.max_deviation <= 1e-9 * abs(eps)


class TestUniformQ:
    """均匀 q 设计测试"""

    def test_two_pairs(self):
        """测试 q = 2, J = (1, 0.01)：h_1 = 0.75，h_2 = 9.6e−5"""
        spec = uniform_q_fields(2.0, [1.0, 0.01])
        assert spec.h[0] == pytest.approx(0.75, rel=1e-14)
        assert spec.h[1] == pytest.approx(9.6e-5, rel=1e-12)
        profile = renormalize(spec)
        np.testing.assert_allclose([param.q for param in profile.q], [2.0, 2.0], rtol=1e-9)

    @pytest.mark.parametrize("q", [0.5, 3.0, 10.0])
    def test_every_pair_has_q(self, q):
        """测试三对链每对形变参数均为 q"""
        spec = uniform_q_fields(q, [1.0, 0.01, 1e-6])
        profile = renormalize(spec, validity_threshold=math.inf)
        np.testing.assert_allclose([param.q for param in profile.q], [q] * 3, rtol=1e-9)

    def test_q_one(self):
        assert uniform_q_fields(1.0, [1.0, 0.1]).h == (0.0, 0.0)

    @pytest.mark.parametrize("J", [[], [1.0, -0.1]])
    def test_invalid_couplings(self, J):
        with pytest.raises(InvalidArgumentError):
            uniform_q_fields(2.0, J)
