"""
qrainbow 配置系统

提供灵活的配置管理，支持环境变量（QRAINBOW_ 前缀）、配置文件和代码配置。
所有运算接口的可调参数均接受显式覆盖，None 表示使用全局配置。
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any

from pydantic_settings import BaseSettings
from pydantic_settings import SettingsConfigDict

logger = logging.getLogger(__name__)


class QRainbowConfig(BaseSettings):
    """qrainbow 配置类"""

    model_config = SettingsConfigDict(env_prefix="QRAINBOW_", extra="ignore")

    # =================================================================
    # 并行配置
    # =================================================================

    # 扇区对角化与参数扫描的工作线程数
    threads: int = 1

    # =================================================================
    # 精确对角化配置
    # =================================================================

    # 全 Hilbert 空间维数上限 4^N
    size_cap: int = 2**16

    # 单个稠密块的维数上限
    dense_block_cap: int = 2**14

    # 不超过该对数时搜索全部 Sz 扇区
    full_sector_max_pairs: int = 4

    # 简并判据（相对 max|E|）
    gap_rel_tol: float = 1e-10

    # =================================================================
    # 重整化与纠缠配置
    # =================================================================

    validity_threshold: float = 0.1
    spectrum_cutoff: float = 1e-14
    renyi_orders: list[float] = [0.5, 2.0, 3.0]

    # =================================================================
    # 素数谱配置
    # =================================================================

    prime_truncation_start: int = 4096
    prime_truncation_cap: int = 10**7

    # =================================================================
    # 输出配置
    # =================================================================

    csv_significant_digits: int = 17
    log_level: str = "WARNING"


class ConfigManager:
    """配置管理器"""

    _instance: ConfigManager | None = None
    _config: QRainbowConfig

    def __new__(cls) -> ConfigManager:
        """单例模式"""
        if cls._instance is None:
            cls._instance = super().__new__(cls)
            cls._instance._load_config()
        return cls._instance

    def _load_config(self) -> None:
        """加载配置"""
        # 1. 环境变量（由 BaseSettings 读取）
        try:
            self._config = QRainbowConfig()
        except ValueError as e:
            logger.warning("Ignoring invalid QRAINBOW_* environment values: %s", e)
            self._config = QRainbowConfig.model_construct()

        # 2. 配置文件
        self._load_from_file()

    def _load_from_file(self) -> None:
        """从配置文件加载配置"""
        config_paths = [
            Path.cwd() / "qrainbow.json",
            Path.cwd() / ".qrainbow.json",
            Path.home() / ".qrainbow" / "config.json",
        ]

        for config_path in config_paths:
            if config_path.exists():
                try:
                    with open(config_path, encoding="utf-8") as f:
                        self._update_config_from_dict(json.load(f))
                    logger.info("Loaded configuration from %s", config_path)
                    break
                except (json.JSONDecodeError, OSError):
                    continue

    def _update_config_from_dict(self, config_dict: dict[str, Any]) -> None:
        """从字典更新配置"""
        for key, value in config_dict.items():
            if key.startswith("//"):
                continue
            if key in QRainbowConfig.model_fields:
                setattr(self._config, key, value)

    def get_config(self) -> QRainbowConfig:
        """获取当前配置"""
        return self._config

    def update_config(self, **kwargs: Any) -> None:
        """更新配置"""
        self._update_config_from_dict(kwargs)

    def get(self, key: str, default: Any = None) -> Any:
        """获取配置项"""
        return getattr(self._config, key, default)

    def set(self, key: str, value: Any) -> None:
        """设置配置项"""
        if key in QRainbowConfig.model_fields:
            setattr(self._config, key, value)

    def to_dict(self) -> dict[str, Any]:
        """转换为字典"""
        return self._config.model_dump()

    def save_to_file(self, file_path: str | Path) -> None:
        """保存配置到文件"""
        with open(file_path, "w", encoding="utf-8") as f:
            json.dump(self.to_dict(), f, indent=2, ensure_ascii=False)


# =============================================================================
# 全局配置访问
# =============================================================================


def get_config() -> QRainbowConfig:
    """获取全局配置"""
    return ConfigManager().get_config()


def set_config(**kwargs: Any) -> None:
    """设置全局配置"""
    ConfigManager().update_config(**kwargs)


def get_setting(key: str, default: Any = None) -> Any:
    """获取配置项"""
    return ConfigManager().get(key, default)


def set_setting(key: str, value: Any) -> None:
    """设置配置项"""
    ConfigManager().set(key, value)


def resolve(key: str, override: Any = None) -> Any:
    """显式参数优先，否则取全局配置"""
    if override is not None:
        return override
    return get_setting(key)


# =============================================================================
# 配置文件示例生成
# =============================================================================


def generate_config_file(file_path: str | Path = "qrainbow.json") -> None:
    """生成示例配置文件"""

    example_config = {
        "// qrainbow 配置文件": "JSON格式，// 开头的键为注释",
        "// 并行配置": "",
        "threads": 1,
        "// 精确对角化配置": "",
        "size_cap": 2**16,
        "dense_block_cap": 2**14,
        "full_sector_max_pairs": 4,
        "gap_rel_tol": 1e-10,
        "// 重整化与纠缠配置": "",
        "validity_threshold": 0.1,
        "spectrum_cutoff": 1e-14,
        "renyi_orders": [0.5, 2.0, 3.0],
        "// 素数谱配置": "",
        "prime_truncation_start": 4096,
        "prime_truncation_cap": 10**7,
        "// 输出配置": "",
        "csv_significant_digits": 17,
        "log_level": "WARNING",
    }

    with open(file_path, "w", encoding="utf-8") as f:
        json.dump(example_config, f, indent=2, ensure_ascii=False)


# =============================================================================
# 配置验证
# =============================================================================


def validate_config() -> dict[str, str]:
    """验证配置合法性"""
    errors: dict[str, str] = {}
    config = get_config()

    if config.threads < 1:
        errors["threads"] = "线程数必须大于0"

    if config.size_cap < 4:
        errors["size_cap"] = "维数上限至少为4"

    if config.dense_block_cap < 2:
        errors["dense_block_cap"] = "稠密块上限至少为2"

    if not 0.0 < config.validity_threshold:
        errors["validity_threshold"] = "有效性阈值必须为正"

    if not 0.0 < config.gap_rel_tol < 1.0:
        errors["gap_rel_tol"] = "简并判据必须在 (0, 1) 内"

    if any(alpha <= 0 or alpha == 1 for alpha in config.renyi_orders):
        errors["renyi_orders"] = "Renyi 阶数必须为正且不等于1"

    if config.prime_truncation_start < 2:
        errors["prime_truncation_start"] = "截断起点至少为2"
    elif config.prime_truncation_cap < config.prime_truncation_start:
        errors["prime_truncation_cap"] = "截断上限不能小于起点"

    if not 1 <= config.csv_significant_digits <= 17:
        errors["csv_significant_digits"] = "有效数字必须在 1 到 17 之间"

    if config.log_level.upper() not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
        errors["log_level"] = "不支持的日志级别"

    return errors
