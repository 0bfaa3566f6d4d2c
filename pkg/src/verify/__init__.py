# Verification suites
from src.verify.registry import register_suite, suite_registry

__all__ = ["suite_registry", "register_suite"]
