from pydantic import BaseModel, ConfigDict, Field


SCHEMA_VERSION = "1.0"


class BaseConfig(BaseModel):
    """
    带版本号的配置基类：未声明的字段视为错误，读取时拒绝未知的主版本号
    """
    model_config = ConfigDict(extra="forbid", use_enum_values=False)

    schema_version: str = Field(default=SCHEMA_VERSION, description="配置文件结构版本号")
