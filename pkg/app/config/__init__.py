# app/config/__init__.py
from .setting import settings, validate_settings, get_settings

__all__ = [
    "settings",
    "validate_settings",
    "get_settings",
]
