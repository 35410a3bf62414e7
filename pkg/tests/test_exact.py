"""
精确对角化测试

基态能量、能隙、简并、保真度与期望值
"""

import math

import numpy as np
import pytest

from qrainbow.exceptions import InvalidArgumentError
from qrainbow.exceptions import ResourceError
from qrainbow.model.chain import ChainSpec
from qrainbow.model.chain import build_hamiltonian
from qrainbow.model.qalgebra import q_from_ratio
from qrainbow.model.qalgebra import quantum_dimension
from qrainbow.solver.exact import GroundStateResult
from qrainbow.solver.exact import PureState
from qrainbow.solver.exact import basis_state
from qrainbow.solver.exact import expectation_value
from qrainbow.solver.exact import fidelity
from qrainbow.solver.exact import fix_phase
from qrainbow.solver.exact import ground_state
from qrainbow.solver.rg import QProfile
from qrainbow.solver.rg import rainbow_state


class TestPureState:
    """纯态测试"""

    def test_requires_normalization(self):
        with pytest.raises(InvalidArgumentError):
            PureState(2, np.array([1.0, 1.0, 0.0, 0.0]))

    def test_requires_matching_length(self):
        with pytest.raises(InvalidArgumentError):
            PureState(2, np.array([1.0, 0.0]))

    def test_from_vector(self):
        """测试归一化任意向量"""
        state = PureState.from_vector(np.array([0.0, 3.0, 4.0, 0.0]))
        assert state.n_sites == 2
        np.testing.assert_allclose(state.amplitudes, [0.0, 0.6, 0.8, 0.0])

    def test_zero_vector(self):
        with pytest.raises(InvalidArgumentError):
            PureState.from_vector(np.zeros(4))

    def test_amplitudes_read_only(self):
        state = basis_state(2, 1)
        with pytest.raises(ValueError):
            state.amplitudes[0] = 1.0

    def test_fix_phase(self):
        """测试首个非零振幅取正"""
        np.testing.assert_array_equal(fix_phase(np.array([0.0, -0.6, 0.8])), [0.0, 0.6, -0.8])


class TestGroundState:
    """基态求解测试"""

    def test_two_site(self, two_site_chain):
        """测试 N=1, J=1, h=1：E = −2√2，态为 q = 1 + √2 的 q 单态"""
        result = ground_state(two_site_chain)
        assert result.energy == pytest.approx(-2.0 * math.sqrt(2.0), abs=1e-12)
        assert result.degeneracy == 1
        assert result.sectors == (0,)
        assert result.gap == pytest.approx(2.0 * math.sqrt(2.0), abs=1e-12)
        np.testing.assert_allclose(
            result.state.amplitudes, [0.0, 0.38268343236509, -0.92387953251129, 0.0], atol=1e-12
        )

    @pytest.mark.parametrize("ratio", np.linspace(-5.0, 5.0, 21))
    def test_two_site_exactness(self, ratio):
        """测试 21 点网格上两格点基态等于 q 单态"""
        J = 1.0
        spec = ChainSpec.create([J], [ratio * J])
        result = ground_state(spec)
        param = q_from_ratio(ratio)
        ansatz = rainbow_state(QProfile.from_q([param]))

        assert result.energy == pytest.approx(-quantum_dimension(2, param) * J, abs=1e-12)
        assert fidelity(result, ansatz) >= 1.0 - 1e-12

    def test_xx_chain_energy(self, xx_chain):
        """测试 N=2 零磁场链的能量接近 −2 − 2J~_2"""
        result = ground_state(xx_chain)
        J2_eff = 0.01**2 / 1.0
        # 常数项修正为 O(J_2²/J_1)
        assert result.energy == pytest.approx(-2.0 - 2.0 * J2_eff, abs=3.0 * 0.01**2)
        assert result.energy < -2.0

    def test_matches_dense_diagonalization(self):
        """测试与不分块的 16×16 对角化一致"""
        spec = ChainSpec.create([1.0, 0.1], [0.0, 0.0])
        dense = build_hamiltonian(spec, blocked=False)
        assert ground_state(spec).energy == pytest.approx(
            float(np.linalg.eigvalsh(dense)[0]), abs=1e-12
        )

    def test_residual_is_small(self, generic_chain):
        """测试本征方程残差"""
        result = ground_state(generic_chain)
        assert result.residual < 1e-10
        assert result.norm_estimate > 0

    def test_threads_do_not_change_result(self, generic_chain):
        """测试线程数不影响结果"""
        serial = ground_state(generic_chain, threads=1)
        parallel = ground_state(generic_chain, threads=3)
        assert serial.energy == parallel.energy
        np.testing.assert_array_equal(serial.state.amplitudes, parallel.state.amplitudes)

    def test_sz_zero_restriction(self, generic_chain):
        """测试仅搜索 Sz=0 扇区时结果不变"""
        full = ground_state(generic_chain, full_sector_search=True)
        restricted = ground_state(generic_chain, full_sector_search=False)
        assert restricted.sectors == (0,)
        assert restricted.energy == pytest.approx(full.energy, abs=1e-12)

    def test_degeneracy_tolerance(self):
        """测试简并判据按相对 max|E| 合并能级"""
        # 谱为 {−2, 0, 0, 2}，容差 1.0 × 2 把两个全极化态并入基态能级
        spec = ChainSpec.create([1.0], [0.0])
        result = ground_state(spec, gap_rel_tol=1.0)
        assert result.energy == pytest.approx(-2.0)
        assert result.degeneracy == 3
        assert result.sectors == (-2, 0, 2)
        assert result.gap == pytest.approx(4.0)
        assert result.projector_weight(basis_state(2, 0)) == pytest.approx(1.0)

    def test_default_tolerance_is_strict(self):
        """测试默认容差下两格点基态非简并"""
        result = ground_state(ChainSpec.create([1.0], [0.0]))
        assert result.degeneracy == 1
        assert result.gap == pytest.approx(2.0)

    def test_size_cap(self):
        spec = ChainSpec.create([1.0, 0.1, 0.01], [0.0, 0.0, 0.0])
        with pytest.raises(ResourceError):
            ground_state(spec, size_cap=32)


class TestFidelity:
    """保真度测试"""

    def test_identical_states(self):
        state = basis_state(2, 1)
        assert fidelity(state, state) == 1.0

    def test_orthogonal_states(self):
        assert fidelity(basis_state(2, 1), basis_state(2, 2)) == 0.0

    def test_symmetric(self, xx_chain):
        """测试保真度对参数顺序对称"""
        result = ground_state(xx_chain)
        ansatz = rainbow_state(QProfile.from_q([1.0, 1.0]))
        assert fidelity(result, ansatz) == pytest.approx(fidelity(ansatz, result))

    def test_xx_chain_fidelity(self, xx_chain):
        """测试强非均匀零磁场链的保真度 ≥ 0.999"""
        result = ground_state(xx_chain)
        ansatz = rainbow_state(QProfile.from_q([1.0, 1.0]))
        assert fidelity(result, ansatz) >= 0.999

    def test_dimension_mismatch(self):
        with pytest.raises(InvalidArgumentError):
            fidelity(basis_state(2, 1), basis_state(4, 1))

    def test_two_results(self, two_site_chain):
        """测试两个求解结果之间的保真度"""
        result = ground_state(two_site_chain)
        assert fidelity(result, result) == pytest.approx(1.0)
        assert isinstance(result, GroundStateResult)


class TestExpectationValue:
    """期望值测试"""

    def test_ground_state_energy(self, generic_chain):
        """测试基态期望值等于基态能量"""
        result = ground_state(generic_chain)
        assert expectation_value(generic_chain, result.state) == pytest.approx(
            result.energy, abs=1e-10
        )

    def test_variational_bound(self, field_chain):
        """测试任意态的能量不低于基态能量"""
        result = ground_state(field_chain)
        ansatz = rainbow_state(QProfile.from_q([1.0 + math.sqrt(2.0), 1.0]))
        assert expectation_value(field_chain, ansatz) >= result.energy - 1e-12

    def test_size_mismatch(self, field_chain):
        with pytest.raises(InvalidArgumentError):
            expectation_value(field_chain, basis_state(2, 1))
