"""Exception types shared across the package.

Two failure families are distinguished: inputs that are malformed as data
(wrong shape, not normalized, not PSD) raise ValidationError; structurally
valid inputs used outside an operation's domain (bad k, bad range) raise
ArgumentError. Both derive from ValueError so callers may catch broadly.
"""


class ValidationError(ValueError):
    """Input object fails a structural invariant (shape, norm, hermiticity, PSD)."""


class ArgumentError(ValueError):
    """Parameter outside the operation's documented domain."""
