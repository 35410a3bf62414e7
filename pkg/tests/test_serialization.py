"""
qrainbow 序列化功能测试

测试输出格式与报告模型：
- JSON格式化器（numpy 类型、解析错误行列号）
- CSV格式化器（有效数字、特殊值、列校验）
- 格式化器注册表
- 报告模型与 JSON Schema 导出
- 仓库发布的 Schema 与真实输出的一致性
"""

import json
import math
from pathlib import Path

import numpy as np
import pytest
from click.testing import CliRunner

from qrainbow.cli import cli
from qrainbow.core.simulator import simulate
from qrainbow.exceptions import FormatterError
from qrainbow.model.chain import ChainSpec
from qrainbow.serialization.formatters import BaseFormatter
from qrainbow.serialization.formatters import CSVFormatter
from qrainbow.serialization.formatters import JSONFormatter
from qrainbow.serialization.formatters import format_as_csv
from qrainbow.serialization.formatters import format_as_json
from qrainbow.serialization.formatters import formatter_registry
from qrainbow.serialization.formatters import parse_csv
from qrainbow.serialization.formatters import parse_json
from qrainbow.serialization.formatters import to_plain
from qrainbow.serialization.schemas import REPORT_MODELS
from qrainbow.serialization.schemas import DesignReport
from qrainbow.serialization.schemas import PrimeReport
from qrainbow.serialization.schemas import SimulationReport
from qrainbow.serialization.schemas import export_json_schemas
from qrainbow.serialization.schemas import json_schemas
from qrainbow.sweep.grid import SweepGrid


@pytest.fixture
def runner():
    return CliRunner()


# =================================================================
# JSON
# =================================================================


class TestJSONFormatter:
    """JSON格式化器测试类"""

    def test_numpy_values(self):
        """测试 numpy 数组与标量转换为原生类型"""
        data = {
            "array": np.array([1.0, 2.5]),
            "int": np.int64(3),
            "float": np.float64(0.25),
            "flag": np.bool_(True),
            "nested": (np.arange(2),),
        }
        assert json.loads(format_as_json(data)) == {
            "array": [1.0, 2.5],
            "int": 3,
            "float": 0.25,
            "flag": True,
            "nested": [[0, 1]],
        }

    def test_pydantic_model_uses_alias(self):
        """测试 pydantic 模型按别名输出"""
        spec = ChainSpec.create([1.0], [0.5])
        assert to_plain(spec) == {"pairs": 1, "J": [1.0], "h": [0.5]}

    def test_to_dict_objects(self):
        class Point:
            def to_dict(self):
                return {"x": np.float64(1.5)}

        assert to_plain([Point()]) == [{"x": 1.5}]

    def test_parse_error_location(self):
        """测试解析错误带行列号"""
        content = '{\n  "pairs": 1,\n  "J": [1.0\n}\n'
        with pytest.raises(FormatterError) as exc_info:
            parse_json(content)
        error = exc_info.value
        assert error.context["line"] == 4
        assert error.context["column"] == 1
        assert "行 4" in error.message
        assert error.exit_code == 2

    def test_non_serializable(self):
        with pytest.raises(FormatterError):
            format_as_json({"value": object()})

    def test_non_finite_rejected_in_strict_mode(self):
        with pytest.raises(FormatterError):
            JSONFormatter().format({"value": math.nan}, allow_nan=False)


# =================================================================
# CSV
# =================================================================


class TestCSVFormatter:
    """CSV格式化器测试类"""

    def test_seventeen_digits(self):
        """测试浮点数默认以 17 位有效数字输出并可精确还原"""
        content = format_as_csv([{"x": 0.1, "y": 1.0 / 3.0}])
        assert content == "x,y\n0.10000000000000001,0.33333333333333331\n"
        row = parse_csv(content)[0]
        assert float(row["x"]) == 0.1
        assert float(row["y"]) == 1.0 / 3.0

    def test_custom_digits(self):
        assert format_as_csv([{"x": 1.0 / 3.0}], digits=3) == "x\n0.333\n"

    def test_global_digits(self):
        """测试全局配置的有效数字"""
        from qrainbow.config import set_setting

        set_setting("csv_significant_digits", 4)
        assert format_as_csv([{"x": math.pi}]) == "x\n3.142\n"

    def test_special_values(self):
        """测试 inf、nan、None、布尔值与整数"""
        row = {
            "a": math.inf,
            "b": -math.inf,
            "c": math.nan,
            "d": None,
            "e": True,
            "f": np.int32(7),
            "g": "0 1",
        }
        content = format_as_csv([row])
        assert content.splitlines()[1] == "inf,-inf,nan,,true,7,0 1"

    def test_header_order(self):
        """测试按给定表头排序输出"""
        content = format_as_csv([{"a": 1, "b": 2}], headers=["b", "a"])
        assert content == "b,a\n2,1\n"

    def test_missing_column(self):
        with pytest.raises(FormatterError) as exc_info:
            format_as_csv([{"a": 1}], headers=["a", "b"])
        assert exc_info.value.context["columns"] == ["b"]

    def test_unix_line_endings(self):
        content = format_as_csv([{"a": 1}, {"a": 2}])
        assert "\r" not in content
        assert content.count("\n") == 3

    def test_empty_rows(self):
        assert format_as_csv([]) == ""
        assert format_as_csv([], headers=["a"]) == "a\n"

    def test_invalid_rows(self):
        with pytest.raises(FormatterError):
            format_as_csv([1, 2])
        with pytest.raises(FormatterError):
            format_as_csv("text")


# =================================================================
# 注册表
# =================================================================


class TestFormatterRegistry:
    """格式化器注册表测试类"""

    def test_builtin_formatters(self):
        assert formatter_registry.list_formatters() == ["json", "csv"]
        assert isinstance(formatter_registry.get_formatter("csv"), CSVFormatter)

    def test_mime_types(self):
        formatter = formatter_registry.get_formatter_by_mime_type("application/json")
        assert isinstance(formatter, JSONFormatter)
        assert formatter_registry.get_formatter_by_mime_type("text/xml") is None

    def test_unknown_formatter(self):
        with pytest.raises(FormatterError) as exc_info:
            formatter_registry.format_data({}, "xml")
        assert exc_info.value.formatter_name == "xml"

    def test_callable(self):
        formatter = formatter_registry.get_formatter("json")
        assert isinstance(formatter, BaseFormatter)
        assert formatter([1, 2], indent=None) == "[1, 2]"


# =================================================================
# 报告模型
# =================================================================


class TestSchemas:
    """报告模型与 JSON Schema 测试类"""

    def test_schema_names(self):
        schemas = json_schemas()
        assert set(schemas) == set(REPORT_MODELS) | {"sweep_grid"}
        assert "pairs" in schemas["chain_spec"]["properties"]

    def test_export(self, tmp_path):
        """测试每个模型写出一个 schema 文件"""
        written = export_json_schemas(tmp_path / "schemas")
        assert len(written) == 6
        for path in written:
            assert path.name.endswith(".schema.json")
            assert json.loads(path.read_text(encoding="utf-8"))["type"] == "object"

    def test_export_is_deterministic(self, tmp_path):
        first = export_json_schemas(tmp_path / "a")
        second = export_json_schemas(tmp_path / "b")
        for left, right in zip(first, second):
            assert left.read_bytes() == right.read_bytes()

    def test_report_round_trip(self, two_site_chain):
        """测试模拟报告经 JSON 写出后可重新校验"""
        report = simulate(two_site_chain)
        restored = SimulationReport.model_validate(json.loads(format_as_json(report)))
        assert restored.exact.energy == report.exact.energy
        assert restored.chain == two_site_chain

    def test_report_forbids_extra_fields(self, two_site_chain):
        data = json.loads(format_as_json(simulate(two_site_chain)))
        data["unexpected"] = 1
        with pytest.raises(Exception):
            SimulationReport.model_validate(data)


# =================================================================
# 仓库内发布的 Schema
# =================================================================

REPO_ROOT = Path(__file__).resolve().parent.parent
SCHEMA_DIR = REPO_ROOT / "schemas"
EXAMPLES_DIR = REPO_ROOT / "docs" / "examples"


def load_schema(name: str) -> dict:
    return json.loads((SCHEMA_DIR / f"{name}.schema.json").read_text(encoding="utf-8"))


def schema_outline(schema: dict) -> tuple:
    """属性名、必填项，以及 $defs 中每个模型的同类信息"""

    def outline(node: dict) -> tuple:
        return sorted(node.get("properties", {})), list(node.get("required", []))

    return outline(schema), {name: outline(node) for name, node in schema.get("$defs", {}).items()}


def assert_conforms(instance, schema: dict, root: dict | None = None) -> None:
    """按 required / properties / additionalProperties 递归检查实例，跟随 $ref"""
    root = root or schema
    if "$ref" in schema:
        schema = root["$defs"][schema["$ref"].rsplit("/", 1)[-1]]
    if schema.get("type") == "object" and "properties" in schema:
        assert isinstance(instance, dict)
        assert set(schema.get("required", [])) <= set(instance)
        if schema.get("additionalProperties") is False:
            assert set(instance) <= set(schema["properties"])
        for key, value in instance.items():
            if key in schema["properties"]:
                assert_conforms(value, schema["properties"][key], root)
    elif schema.get("type") == "array":
        assert isinstance(instance, list)
        for item in instance:
            assert_conforms(item, schema["items"], root)


class TestPublishedSchemas:
    """schemas/ 目录下随仓库发布的 Schema"""

    def test_every_model_is_published(self):
        published = {path.name for path in SCHEMA_DIR.glob("*.schema.json")}
        assert published == {f"{name}.schema.json" for name in json_schemas()}

    @pytest.mark.parametrize("name", sorted(REPORT_MODELS) + ["sweep_grid"])
    def test_matches_models(self, name):
        """测试发布的 Schema 与 model_json_schema() 的字段结构一致"""
        generated = json_schemas()[name]
        published = load_schema(name)
        assert schema_outline(published) == schema_outline(generated)
        assert published["title"] == generated["title"]

    def test_simulate_report(self, runner):
        """测试 simulate 输出满足发布的 Schema"""
        result = runner.invoke(cli, ["simulate", str(EXAMPLES_DIR / "chain.json"), "-o", "r.json"])
        assert result.exit_code == 0, result.output
        data = json.loads(Path("r.json").read_text(encoding="utf-8"))

        SimulationReport.model_validate(data)
        assert_conforms(data, load_schema("simulation_report"))
        assert_conforms(data["spec"], load_schema("chain_spec"))

    def test_design_outputs(self, runner):
        """测试 design 的三个输出文件满足各自的 Schema"""
        target = str(EXAMPLES_DIR / "target_eps.json")
        result = runner.invoke(cli, ["design", target, "--out", "designs"])
        assert result.exit_code == 0, result.output

        def read(name: str) -> dict:
            return json.loads(Path("designs", name).read_text(encoding="utf-8"))

        design = read("target_eps_design.json")
        DesignReport.model_validate(design)
        assert_conforms(design, load_schema("design_report"))
        assert_conforms(design["target"], load_schema("design_target"))
        assert_conforms(read("target_eps_spec.json"), load_schema("chain_spec"))
        assert_conforms(read("target_eps_report.json"), load_schema("simulation_report"))

    def test_prime_report(self, runner):
        result = runner.invoke(
            cli, ["prime", "--s", "2", "--pairs", "2", "--truncation", "10000", "--no-simulate"]
        )
        assert result.exit_code == 0, result.output
        data = json.loads(Path("prime_s2_n2_prime.json").read_text(encoding="utf-8"))
        PrimeReport.model_validate(data)
        assert_conforms(data, load_schema("prime_report"))

    @pytest.mark.parametrize("name", ["uniform_q.json", "pair_renyi.json", "ordering.json"])
    def test_sweep_grids(self, name):
        """测试示例扫描网格满足 sweep_grid Schema"""
        data = json.loads((EXAMPLES_DIR / name).read_text(encoding="utf-8"))
        SweepGrid.model_validate(data)
        assert_conforms(data, load_schema("sweep_grid"))
