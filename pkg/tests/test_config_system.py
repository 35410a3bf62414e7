"""
qrainbow 配置系统测试

测试配置管理、环境变量、配置文件与显式覆盖
"""

import json

import pytest

from qrainbow.config import ConfigManager
from qrainbow.config import QRainbowConfig
from qrainbow.config import generate_config_file
from qrainbow.config import get_config
from qrainbow.config import get_setting
from qrainbow.config import resolve
from qrainbow.config import set_config
from qrainbow.config import set_setting
from qrainbow.config import validate_config


class TestQRainbowConfig:
    """配置类测试"""

    def test_default_config_values(self):
        """测试默认配置值"""
        config = QRainbowConfig()

        # 并行与资源
        assert config.threads == 1
        assert config.size_cap == 2**16
        assert config.dense_block_cap == 2**14
        assert config.full_sector_max_pairs == 4

        # 数值判据
        assert config.validity_threshold == 0.1
        assert config.gap_rel_tol == 1e-10
        assert config.spectrum_cutoff == 1e-14
        assert config.renyi_orders == [0.5, 2.0, 3.0]

        # 素数谱与输出
        assert config.prime_truncation_start == 4096
        assert config.prime_truncation_cap == 10**7
        assert config.csv_significant_digits == 17
        assert config.log_level == "WARNING"


class TestConfigManager:
    """配置管理器测试"""

    def test_singleton_pattern(self):
        """测试单例模式"""
        assert ConfigManager() is ConfigManager()

    def test_get_set_config(self):
        """测试配置获取和更新"""
        manager = ConfigManager()
        manager.update_config(threads=4, validity_threshold=0.05)

        config = manager.get_config()
        assert config.threads == 4
        assert config.validity_threshold == 0.05

    def test_unknown_keys_are_ignored(self):
        """测试未知配置项被忽略"""
        manager = ConfigManager()
        manager.set("nonexistent_key", "value")
        manager.update_config(another_key=1)

        assert manager.get("nonexistent_key") is None
        assert manager.get("nonexistent_key", "default") == "default"

    def test_load_from_env(self, monkeypatch):
        """测试从环境变量加载配置"""
        monkeypatch.setenv("QRAINBOW_THREADS", "3")
        monkeypatch.setenv("QRAINBOW_SIZE_CAP", "1024")
        monkeypatch.setenv("QRAINBOW_RENYI_ORDERS", "[2.0]")

        ConfigManager._instance = None
        config = ConfigManager().get_config()

        assert config.threads == 3
        assert config.size_cap == 1024
        assert config.renyi_orders == [2.0]

    def test_invalid_env_falls_back_to_defaults(self, monkeypatch):
        """测试非法环境变量不会阻止加载"""
        monkeypatch.setenv("QRAINBOW_THREADS", "many")

        ConfigManager._instance = None
        assert ConfigManager().get("threads") == 1

    def test_load_from_config_file(self, tmp_path):
        """测试从当前目录的 qrainbow.json 加载配置"""
        (tmp_path / "qrainbow.json").write_text(
            json.dumps(
                {
                    "// 注释": "被忽略",
                    "threads": 2,
                    "gap_rel_tol": 1e-9,
                }
            ),
            encoding="utf-8",
        )

        ConfigManager._instance = None
        config = ConfigManager().get_config()

        assert config.threads == 2
        assert config.gap_rel_tol == 1e-9

    def test_broken_config_file_is_skipped(self, tmp_path):
        """测试损坏的配置文件被跳过"""
        (tmp_path / "qrainbow.json").write_text("{not json", encoding="utf-8")

        ConfigManager._instance = None
        assert ConfigManager().get("threads") == 1

    def test_save_to_file(self, tmp_path):
        """测试保存配置到文件"""
        manager = ConfigManager()
        manager.update_config(threads=8)
        target = tmp_path / "saved.json"

        manager.save_to_file(target)

        saved = json.loads(target.read_text(encoding="utf-8"))
        assert saved["threads"] == 8
        assert saved["size_cap"] == 2**16


class TestGlobalHelpers:
    """全局配置函数测试"""

    def test_get_and_set_setting(self):
        """测试单项读写"""
        set_setting("size_cap", 256)
        assert get_setting("size_cap") == 256
        assert get_config().size_cap == 256

    def test_set_config(self):
        """测试批量设置"""
        set_config(threads=2, log_level="INFO")
        assert get_setting("threads") == 2
        assert get_setting("log_level") == "INFO"

    def test_resolve_prefers_override(self):
        """测试显式参数优先于全局配置"""
        set_setting("validity_threshold", 0.2)

        assert resolve("validity_threshold") == 0.2
        assert resolve("validity_threshold", 0.5) == 0.5
        assert resolve("validity_threshold", None) == 0.2


class TestGenerateAndValidate:
    """配置文件生成与校验测试"""

    def test_generate_config_file(self, tmp_path):
        """测试生成的示例文件可以被加载"""
        target = tmp_path / "qrainbow.json"
        generate_config_file(target)

        content = json.loads(target.read_text(encoding="utf-8"))
        assert content["threads"] == 1
        assert any(key.startswith("//") for key in content)

        ConfigManager._instance = None
        assert ConfigManager().get("prime_truncation_cap") == 10**7

    def test_default_config_is_valid(self):
        """测试默认配置合法"""
        assert validate_config() == {}

    @pytest.mark.parametrize(
        "key,value",
        [
            ("threads", 0),
            ("size_cap", 2),
            ("validity_threshold", 0.0),
            ("gap_rel_tol", 2.0),
            ("renyi_orders", [1.0]),
            ("csv_significant_digits", 18),
            ("log_level", "LOUD"),
        ],
    )
    def test_invalid_values_reported(self, key, value):
        """测试非法配置项被报告"""
        set_setting(key, value)
        assert key in validate_config()

    def test_truncation_cap_below_start(self):
        """测试截断上限小于起点"""
        set_config(prime_truncation_start=5000, prime_truncation_cap=4000)
        assert "prime_truncation_cap" in validate_config()
