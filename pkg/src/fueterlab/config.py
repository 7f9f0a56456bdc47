"""Suite configuration: TOML in, canonical TOML out.

The canonical form fixes section order, key order, and value formatting,
so a parsed config round-trips byte-identically and reports can embed it.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SuiteConfig:
    domain_kind: str = "sphere"
    r1: str = "1"
    r2: str = "1"
    order_eta: int = 16
    order_xi: int = 16
    recon_orders: tuple = (8, 16, 32)
    seed: int = 20240801
    corpus_size: int = 50
    max_degree: int = 6
    zero_tol: float = 1e-10
    witness_tol: float = 1e-3
    backend: str = "exact"
    out_dir: str = "out"

    def __post_init__(self):
        if self.domain_kind not in ("sphere", "ellipsoid"):
            raise ConfigError(f"unknown domain kind {self.domain_kind!r}")
        if self.backend not in ("exact", "float"):
            raise ConfigError(f"unknown backend {self.backend!r}")
        if self.order_eta < 2 or self.order_xi < 2:
            raise ConfigError("quadrature orders must be at least 2")
        if self.corpus_size < 1:
            raise ConfigError("corpus size must be positive")
        if self.max_degree < 1:
            raise ConfigError("max degree must be positive")
        try:
            if Fraction(self.r1) <= 0 or Fraction(self.r2) <= 0:
                raise ConfigError("ellipsoid axes must be positive")
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"bad ellipsoid axis: {exc}") from exc
        if any(o < 2 for o in self.recon_orders):
            raise ConfigError("reconstruction orders must be at least 2")

    @classmethod
    def from_dict(cls, data: dict) -> "SuiteConfig":
        known = {
            ("domain", "kind"): "domain_kind",
            ("domain", "r1"): "r1",
            ("domain", "r2"): "r2",
            ("quadrature", "order_eta"): "order_eta",
            ("quadrature", "order_xi"): "order_xi",
            ("quadrature", "recon_orders"): "recon_orders",
            ("corpus", "seed"): "seed",
            ("corpus", "size"): "corpus_size",
            ("corpus", "max_degree"): "max_degree",
            ("thresholds", "zero"): "zero_tol",
            ("thresholds", "witness"): "witness_tol",
            ("run", "backend"): "backend",
            ("run", "out_dir"): "out_dir",
        }
        kwargs = {}
        for section, body in data.items():
            if not isinstance(body, dict):
                raise ConfigError(f"top-level key {section!r} is not a table")
            for key, value in body.items():
                attr = known.get((section, key))
                if attr is None:
                    raise ConfigError(f"unknown config key [{section}] {key}")
                if attr in ("r1", "r2"):
                    value = str(value)
                if attr == "recon_orders":
                    value = tuple(int(v) for v in value)
                kwargs[attr] = value
        try:
            return cls(**kwargs)
        except TypeError as exc:
            raise ConfigError(str(exc)) from exc

    @classmethod
    def from_toml(cls, path) -> "SuiteConfig":
        try:
            with open(path, "rb") as fh:
                data = tomllib.load(fh)
        except FileNotFoundError as exc:
            raise ConfigError(f"config file not found: {path}") from exc
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(f"TOML parse error in {path}: {exc}") from exc
        return cls.from_dict(data)

    def with_overrides(self, **kwargs) -> "SuiteConfig":
        clean = {k: v for k, v in kwargs.items() if v is not None}
        return replace(self, **clean) if clean else self

    def to_canonical_toml(self) -> str:
        lines = [
            "[domain]",
            f'kind = "{self.domain_kind}"',
            f'r1 = "{self.r1}"',
            f'r2 = "{self.r2}"',
            "",
            "[quadrature]",
            f"order_eta = {self.order_eta}",
            f"order_xi = {self.order_xi}",
            f"recon_orders = [{', '.join(str(o) for o in self.recon_orders)}]",
            "",
            "[corpus]",
            f"seed = {self.seed}",
            f"size = {self.corpus_size}",
            f"max_degree = {self.max_degree}",
            "",
            "[thresholds]",
            f"zero = {self.zero_tol!r}",
            f"witness = {self.witness_tol!r}",
            "",
            "[run]",
            f'backend = "{self.backend}"',
            f'out_dir = "{self.out_dir}"',
            "",
        ]
        return "\n".join(lines)

    def to_json_dict(self) -> dict:
        return {
            "domain": {"kind": self.domain_kind, "r1": self.r1, "r2": self.r2},
            "quadrature": {
                "order_eta": self.order_eta,
                "order_xi": self.order_xi,
                "recon_orders": list(self.recon_orders),
            },
            "corpus": {
                "seed": self.seed,
                "size": self.corpus_size,
                "max_degree": self.max_degree,
            },
            "thresholds": {"zero": self.zero_tol, "witness": self.witness_tol},
            "run": {"backend": self.backend, "out_dir": self.out_dir},
        }
