"""Resource caps, overridable through ``DAVIS_FORGE_CAPS``.

The variable holds comma separated ``key=value`` pairs, for instance
``DAVIS_FORGE_CAPS="quotient=4096,simplices=200000,cosets=50000"``.
"""

import os
from dataclasses import dataclass, fields, replace

from .errors import InputError

ENV_VAR = "DAVIS_FORGE_CAPS"


@dataclass(frozen=True)
class Caps:
    quotient: int = 2**20
    simplices: int = 10**7
    cosets: int = 10**6
    # largest |S| for which the abelianization quotient is built
    generators: int = 20

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) <= 0:
                raise InputError("BAD_CAP", f"{f.name} must be positive")

    @classmethod
    def from_env(cls, environ=None):
        environ = os.environ if environ is None else environ
        raw = environ.get(ENV_VAR, "").strip()
        caps = cls()
        if not raw:
            return caps
        known = {f.name for f in fields(cls)}
        updates = {}
        for item in raw.split(","):
            if not item.strip():
                continue
            key, sep, value = item.partition("=")
            key = key.strip()
            if not sep or key not in known:
                raise InputError("BAD_CAP", f"cannot parse {item!r} in {ENV_VAR}")
            try:
                updates[key] = int(value)
            except ValueError:
                raise InputError("BAD_CAP", f"{key} must be an integer") from None
        return replace(caps, **updates)


DEFAULT_CAPS = Caps()
