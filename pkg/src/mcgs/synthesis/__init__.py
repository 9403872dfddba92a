from . import mcx, ctrl_u

__all__ = ["mcx", "ctrl_u"]
