import json
import uuid
from pathlib import Path
from typing import Type, Union, Optional, Dict, Any, List, get_type_hints

import yaml
from pydantic import BaseModel, ValidationError

from .schema import BaseConfig, SCHEMA_VERSION
from ..errors import SchemaError
from ..protocol import OperationProtocol as OPP, LoaderProtocol as LDP, IdentityProtocol as IDP


EXT_LOADERS = {
    ".json": lambda f: load_json_config(f),
    ".yaml": lambda f: load_yaml_config(f),
    ".yml": lambda f: load_yaml_config(f),
}


class ConfigLoader(OPP, LDP, IDP):
    """
    实验配置加载器。

    读取 JSON / YAML 配置文件，叠加命令行覆盖项，检查结构版本号后实例化 schema。
    校验失败时抛出 SchemaError，并列出所有出错字段。

    关键函数：
    load：加载配置schema实例

    config：配置文件最新实例
    dict：配置文件最新实例的字典形式
    json：配置文件的json形式

    Args:
        config_path (Union[Path, str]): 配置文件路径。
        schema_cls (Type[BaseModel], optional): 配置模式的类，默认为BaseConfig。
        overrides (dict, optional): 覆盖项，按字典递归合并到文件内容之上。
    Attributes:
        schema_cls (Type[BaseModel]): 配置模式的类。
        config_path (Path): 配置文件的路径。
    """
    def __init__(self, config_path: Union[Path, str], schema_cls: Type[BaseModel] = BaseConfig,
                 overrides: Optional[dict] = None):
        self.config_path: Path = Path(config_path)
        self.schema_cls = schema_cls
        self.overrides: dict = overrides or {}

        self._name = "配置管理器"
        self._uuid: str = str(uuid.uuid4())
        self._instance: Optional[BaseModel] = None

    def get_id(self):
        return f"{self._name}:{self._uuid}"

    def get_name(self):
        return self._name

    def load(self) -> BaseModel:
        """
        从配置文件中加载配置并实例化模型。
        Returns:
            BaseModel: 实例化后的模型对象。
        Raises:
            SchemaError: 版本号不受支持或字段校验失败。
        """
        raw = read_config(self.config_path)
        raw = merge_dicts(raw, self.overrides)
        check_schema_version(raw)
        self._instance = create_schema(raw, self.schema_cls)
        return self._instance

    def start(self):
        pass

    def join(self):
        pass

    def stop(self):
        pass

    @property
    def config(self) -> Optional[BaseModel]:
        return self._instance

    def dict(self) -> dict:
        return self._instance.model_dump(mode="json") if self._instance else {}

    def json(self) -> str:
        return json.dumps(self.dict(), indent=2, ensure_ascii=False)


def check_schema_version(cfg_dict: dict, supported: str = SCHEMA_VERSION):
    """
    检查配置的 schema_version，主版本号不同则拒绝。

    Raises:
        SchemaError: 缺少版本号或主版本号不受支持。
    """
    if "schema_version" not in cfg_dict:
        raise SchemaError("配置缺少结构版本号", keys=["schema_version"])
    version = str(cfg_dict["schema_version"])
    if version.split(".")[0] != supported.split(".")[0]:
        raise SchemaError(f"不支持的配置结构版本 {version}（支持 {supported}）", keys=["schema_version"])


def validation_keys(err: ValidationError) -> List[str]:
    """pydantic 校验错误中所有出错字段的点分路径"""
    return [".".join(str(p) for p in e["loc"]) or "<root>" for e in err.errors()]


def create_schema(cfg_dict: dict, schema: Type[BaseModel]):
    """
    根据配置字典创建指定类型的Schema实例。

    Args:
        cfg_dict (dict): 包含配置信息的字典。
        schema (Type[BaseModel]): 需要创建的Schema类。

    Returns:
        BaseModel: 根据配置字典创建的Schema实例。

    Raises:
        SchemaError: 字段校验失败，keys 中列出所有出错字段。
    """
    typed_data: Dict[str, Any] = dict(cfg_dict)
    errors: List[str] = []
    for field, field_type in get_type_hints(schema).items():
        if field in typed_data and field_type in (bool, int, float, str):
            try:
                typed_data[field] = normalize_value(typed_data[field], field_type, field)
            except ValueError:
                errors.append(field)
    try:
        instance = schema.model_validate(typed_data)
    except ValidationError as e:
        raise SchemaError("配置校验失败", keys=sorted(set(errors + validation_keys(e)))) from None
    if errors:
        raise SchemaError("配置校验失败", keys=errors)
    return instance


def read_config(config_path: Union[str, Path]) -> dict:
    """
    读取配置文件，返回配置内容的字典。

    Args:
        config_path (Union[str, Path]): 配置文件的路径，支持 .json / .yaml / .yml。

    Returns:
        dict: 配置内容。

    Raises:
        ValueError: 文件后缀不受支持或顶层不是映射。
    """
    file = Path(config_path)
    if file.suffix.lower() not in EXT_LOADERS:
        raise ValueError(f"无法识别的配置文件类型: {file.suffix}")
    raw_data = EXT_LOADERS[file.suffix.lower()](file)
    if not isinstance(raw_data, dict):
        raise ValueError(f"配置文件顶层须为映射: {file}")
    return raw_data


def load_json_config(file_path: Path) -> dict:
    with open(file_path, "r", encoding="utf-8") as f:
        return json.load(f)


def load_yaml_config(file_path: Path) -> dict:
    """
    从指定的YAML文件中加载配置信息。

    Args:
        file_path (Path): 包含YAML配置文件的路径。

    Returns:
        dict: 包含YAML配置信息的字典。空文件返回空字典。
    """
    with open(file_path, "r", encoding="utf-8") as f:
        return yaml.safe_load(f) or {}


def merge_dicts(base: dict, override: dict) -> dict:
    """
    递归合并两个字典，返回新字典。

    Args:
        base (dict): 基础字典。
        override (dict): 覆盖字典，用于覆盖基础字典中对应的键值对。

    Returns:
        dict: 合并后的字典。
    """
    merged = dict(base)
    for k, v in override.items():
        if k in merged and isinstance(merged[k], dict) and isinstance(v, dict):
            merged[k] = merge_dicts(merged[k], v)
        else:
            merged[k] = v
    return merged


def normalize_value(value, expected_type, field_name=""):
    """
    对字符串形式的标量（如命令行覆盖项）做类型转换。

    Args:
        value (Any): 待转换的值。
        expected_type (type): 期望的类型。
        field_name (str, optional): 字段名称。

    Returns:
        Any: 转换后的值；非字符串输入原样返回，由 pydantic 校验。

    Raises:
        ValueError: 字符串无法转换为期望类型。
    """
    if not isinstance(value, str):
        return value
    try:
        if expected_type == bool:
            if value.strip().lower() in ["1", "true", "yes"]:
                return True
            elif value.strip().lower() in ["0", "false", "no"]:
                return False
            raise ValueError(f"非法布尔值: {value}")
        elif expected_type == int:
            return int(value.replace(",", ""))
        elif expected_type == float:
            return float(value.replace(",", ""))
        return value.strip()
    except Exception as e:
        raise ValueError(f"字段[{field_name}] 类型校验失败: {e}")
