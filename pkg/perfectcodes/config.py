import logging
import os
from dataclasses import dataclass, fields, replace
from typing import Optional

from .errors import InvalidInput

log = logging.getLogger("perfectcodes.config")

DEFAULT_SETTINGS = {
    "enumeration_cap": 10**6,  # Largest group (in elements) a closure may enumerate.
    "field_cap": 4096,  # Largest field order accepted by make_field.
    "search_budget": 10**7,  # Node limit for one independent transversal search.
    "max_connection_subsets": 1 << 16,  # Connection sets tried by the graph witness search.
    "threads": 1,  # Worker processes for independent subsearches. 1 = run inline.
    "mode": "literal",  # Perfect code notion in graphs: "literal" or "independent".
    "symmetric_degree_cap": 9,  # Largest n accepted for Sym(n) based families.
    "seed": 0,  # Seed used when sampling instances for the oracle comparison.
}

ENV_PREFIX = "PERFECTCODES_"
MODES = ("literal", "independent")


@dataclass(frozen=True)
class Settings:
    enumeration_cap: int = DEFAULT_SETTINGS["enumeration_cap"]
    field_cap: int = DEFAULT_SETTINGS["field_cap"]
    search_budget: int = DEFAULT_SETTINGS["search_budget"]
    max_connection_subsets: int = DEFAULT_SETTINGS["max_connection_subsets"]
    threads: int = DEFAULT_SETTINGS["threads"]
    mode: str = DEFAULT_SETTINGS["mode"]
    symmetric_degree_cap: int = DEFAULT_SETTINGS["symmetric_degree_cap"]
    seed: int = DEFAULT_SETTINGS["seed"]

    def __post_init__(self):
        if self.mode not in MODES:
            raise InvalidInput(f"mode must be one of {', '.join(MODES)}, not {self.mode!r}")
        for key in ("enumeration_cap", "field_cap", "search_budget", "threads"):
            if getattr(self, key) < 1:
                raise InvalidInput(f"{key} must be positive")

    @classmethod
    def from_env(cls, environ: Optional[dict] = None) -> "Settings":
        """Defaults overridden by PERFECTCODES_<KEY> environment variables."""
        environ = os.environ if environ is None else environ
        overrides = {}
        for field in fields(cls):
            raw = environ.get(ENV_PREFIX + field.name.upper())
            if raw is None:
                continue
            if field.type in (str, "str"):
                overrides[field.name] = raw
            elif raw.strip().lstrip("-").isdigit():
                overrides[field.name] = int(raw)
            else:
                name = ENV_PREFIX + field.name.upper()
                raise InvalidInput(f"{name} must be an integer, not {raw!r}")
            log.debug("Setting %s overridden from environment: %s", field.name, raw)
        return cls(**overrides)

    def to_dict(self) -> dict:
        return {field.name: getattr(self, field.name) for field in fields(self)}


_active: Optional[Settings] = None


def get_settings() -> Settings:
    global _active
    if _active is None:
        _active = Settings.from_env()
    return _active


def configure(**overrides) -> Settings:
    """Replace the active settings, keeping every key not given here."""
    global _active
    _active = replace(get_settings(), **{k: v for k, v in overrides.items() if v is not None})
    return _active


def reset():
    global _active
    _active = None
