from typing import Protocol, runtime_checkable
from abc import abstractmethod


@runtime_checkable
class SerializeProtocol(Protocol):
    """
    可序列化对象协议
    serialize 返回只含 JSON 基本类型的字典，用于结果文件与跨进程任务封装；
    deserialize 为其逆操作。
    """
    def serialize(self) -> dict:
        ...

    @classmethod
    @abstractmethod
    def deserialize(cls, data: dict):
        ...
