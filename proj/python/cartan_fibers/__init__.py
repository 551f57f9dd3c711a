"""Special fibers of the modular curves X_ns(p), X_ns+(p), X_s(p), X_s+(p)."""

from ._core import (
    CartanError,
    Fiber,
    build_fiber,
    component_group,
    contract,
    expected_component_group,
    smith_normal_form,
    verify,
)

__all__ = [
    "CartanError",
    "Fiber",
    "build_fiber",
    "component_group",
    "contract",
    "expected_component_group",
    "smith_normal_form",
    "verify",
]
