"""
qrainbow 测试配置

提供测试所需的基础fixtures：配置重置、典型链参数与彩虹态
"""

import logging
import math

import pytest
from hypothesis import HealthCheck
from hypothesis import settings

from qrainbow.config import ConfigManager
from qrainbow.model.chain import ChainSpec
from qrainbow.model.qalgebra import QParam
from qrainbow.solver.rg import QProfile

# 1 + √2 对应 h/J = 1
SILVER = 1.0 + math.sqrt(2.0)

# 配置重置 fixture 对每个样例都是幂等的
settings.register_profile(
    "qrainbow",
    suppress_health_check=[HealthCheck.function_scoped_fixture],
    deadline=None,
)
settings.load_profile("qrainbow")


@pytest.fixture(autouse=True)
def reset_config(monkeypatch, tmp_path):
    """每个测试使用全新的全局配置，且不读取工作目录中的配置文件"""
    monkeypatch.chdir(tmp_path)
    for key in ("QRAINBOW_THREADS", "QRAINBOW_SIZE_CAP", "QRAINBOW_LOG_LEVEL"):
        monkeypatch.delenv(key, raising=False)
    ConfigManager._instance = None
    yield
    ConfigManager._instance = None

    # CLI 测试会给包日志器挂载 rich 处理器
    package_logger = logging.getLogger("qrainbow")
    for handler in list(package_logger.handlers):
        if not isinstance(handler, logging.NullHandler):
            package_logger.removeHandler(handler)
    package_logger.setLevel(logging.NOTSET)


@pytest.fixture
def two_site_chain():
    """N=1, J=1, h=1：q = 1 + √2"""
    return ChainSpec.create([1.0], [1.0])


@pytest.fixture
def xx_chain():
    """N=2 零磁场强非均匀链"""
    return ChainSpec.create([1.0, 0.01], [0.0, 0.0])


@pytest.fixture
def field_chain():
    """N=2 带磁场的链，h1/J1 = 1"""
    return ChainSpec.create([1.0, 0.1], [1.0, 0.0])


@pytest.fixture
def generic_chain():
    """N=3 一般参数链（无简并）"""
    return ChainSpec.create([1.0, 0.3, 0.1], [0.2, -0.1, 0.05])


@pytest.fixture
def silver_profile():
    """q = [1 + √2, 1]"""
    return QProfile.from_q([QParam.from_q(SILVER), QParam(0.0)])
