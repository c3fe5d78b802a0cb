from ._props import (
    PROPERTIES,
    SAMPLING,
    PropertyCase,
    PropertyDescriptor,
    PropertyRunner,
    case_generator,
    default_sampling,
    property_names,
    run_property,
)

__all__ = [
    "PROPERTIES",
    "SAMPLING",
    "PropertyCase",
    "PropertyDescriptor",
    "PropertyRunner",
    "case_generator",
    "default_sampling",
    "property_names",
    "run_property",
]
