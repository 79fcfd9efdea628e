from typing import Protocol, runtime_checkable


@runtime_checkable
class OperationProtocol(Protocol):
    """
    生命周期协议：日志管理器、任务执行器、实验引擎统一的启动/等待/关闭接口
    """
    def start(self):
        ...

    def stop(self):
        ...

    def join(self):
        ...


@runtime_checkable
class IdentityProtocol(Protocol):
    """可标识组件，名称与唯一ID用于日志中的 log_id"""
    def get_name(self) -> str:
        ...

    def get_id(self) -> str:
        ...


@runtime_checkable
class LoaderProtocol(Protocol):
    """
    加载器协议：配置加载器按文件路径返回校验后的 schema 实例
    """
    def load(self):
        ...
