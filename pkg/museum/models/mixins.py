"""
Serializer mixin for the engine's dataclass models.
"""
from dataclasses import fields
from fractions import Fraction

from museum.utils.rationals import format_rational


def serialize_value(value):
    """Convert one field value into a JSON-ready, order-stable value."""
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, (set, frozenset)):
        return sorted(serialize_value(v) for v in value)
    if isinstance(value, dict):
        return {str(k): serialize_value(v) for k, v in sorted(value.items())}
    if isinstance(value, (list, tuple)):
        return [serialize_value(v) for v in value]
    if hasattr(value, 'to_dict'):
        return value.to_dict()
    return value


class SerializerMixin:
    """
    Mixin that auto-generates to_dict() by inspecting dataclass fields.
    Handles sets, mappings and rationals in a single place so every JSON
    document the engine writes is deterministic.
    """

    # Override in subclasses to exclude fields from serialization
    serialize_exclude = ()

    def to_dict(self, exclude=(), extra=None):
        """
        Convert the instance to a dictionary for JSON output.

        Args:
            exclude: Field names to exclude from output
            extra: Extra key-value pairs to merge into the result

        Returns:
            Dictionary representation of the model
        """
        all_exclude = set(self.serialize_exclude) | set(exclude)
        data = {}

        for f in fields(self):
            if f.name in all_exclude:
                continue
            data[f.name] = serialize_value(getattr(self, f.name))

        if extra:
            data.update(extra)

        return data
