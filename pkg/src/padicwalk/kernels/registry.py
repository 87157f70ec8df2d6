"""
Kernel Registry

Maps the `type` field of a kernel config to the builder that turns it into a
RateProfile.
"""

import logging
from typing import Any, Callable, Dict, List, Mapping

from ..exceptions import ConfigError
from ..padic import Base, Window
from .base import VANISHING_TAIL, RateProfile, table_profile, vladimirov_profile

logger = logging.getLogger(__name__)

KernelBuilder = Callable[[Mapping[str, Any], Window, Base], RateProfile]


class KernelRegistry:
    """Registry for rate-profile builders."""

    def __init__(self):
        self._builders: Dict[str, KernelBuilder] = {}

    def register(self, kind: str, builder: KernelBuilder) -> None:
        """
        Register a builder for a kernel type.

        Args:
            kind: Value of the config `type` field
            builder: Callable (spec, window, base) -> RateProfile
        """
        if kind in self._builders:
            logger.debug(f"Replacing kernel builder for {kind}")
        self._builders[kind] = builder

    def build(self, spec: Mapping[str, Any], window: Window, base: Base) -> RateProfile:
        kind = spec.get("type")
        builder = self._builders.get(kind)
        if builder is None:
            raise ConfigError(
                f"Unknown kernel type {kind!r}; available: {', '.join(self.list_kinds())}"
            )
        return builder(spec, window, base)

    def list_kinds(self) -> List[str]:
        return sorted(self._builders)


def _build_vladimirov(spec: Mapping[str, Any], window: Window, base: Base) -> RateProfile:
    if "alpha" not in spec:
        raise ConfigError("Vladimirov kernel needs 'alpha'")
    return vladimirov_profile(float(spec["alpha"]), window, base, tail=spec.get("tail", VANISHING_TAIL))


def _build_table(spec: Mapping[str, Any], window: Window, base: Base) -> RateProfile:
    values = {int(i): float(w) for i, w in spec.get("values", {}).items()}
    return table_profile(values, window, base, tail=spec.get("tail", VANISHING_TAIL))


# Global registry instance
_registry = KernelRegistry()


def register_kernel(kind: str, builder: KernelBuilder) -> None:
    """Register a kernel builder in the global registry."""
    _registry.register(kind, builder)


def get_registry() -> KernelRegistry:
    """Get the global registry instance."""
    return _registry


def build_profile(spec: Mapping[str, Any], window: Window, base: Base) -> RateProfile:
    """Build a RateProfile from a kernel config using the global registry."""
    return _registry.build(spec, window, base)


def register_defaults() -> None:
    """Register the built-in kernel families."""
    register_kernel("vladimirov", _build_vladimirov)
    register_kernel("table", _build_table)


register_defaults()
