"""Exception hierarchy.

Every error carries a short machine-readable ``code`` (``NOT_FLAG``,
``PARITY_UNDEFINED``, ...).  The subclass determines the CLI exit code.
"""


class DavisForgeError(Exception):
    exit_code = 2

    def __init__(self, code, message=""):
        self.code = code
        self.message = message
        super().__init__(f"{code}: {message}" if message else code)


class InputError(DavisForgeError):
    """Bad or inconsistent input (exit code 2)."""

    exit_code = 2


class VerificationError(DavisForgeError):
    """A computed check did not come out as predicted (exit code 1)."""

    exit_code = 1


class CapExceeded(DavisForgeError):
    """A configured resource cap was hit (exit code 3)."""

    exit_code = 3
