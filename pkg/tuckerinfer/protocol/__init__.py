from .task import SerializeProtocol
from .mod import LoaderProtocol, OperationProtocol, IdentityProtocol


__all__ = [
    "SerializeProtocol",

    "LoaderProtocol",
    "OperationProtocol",
    "IdentityProtocol",
]
