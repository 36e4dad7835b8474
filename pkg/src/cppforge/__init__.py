"""Complete permutation polynomial families over finite fields."""

__version__ = "0.1.0"

from .field import FieldCtx, build_field, parse_field_spec  # noqa: F401
