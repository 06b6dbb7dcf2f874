"""Experiment configuration: one JSON document, validated up front.

Every run is described by a single dict (see README for the schema).  The
named random shortcuts ("pure" without a vector, "random_s_commuting", ...)
expand deterministically from the seed: each consumer draws from a fixed
substream, so changing one section never reshuffles another.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .gaussian import GaussianState, from_complex_covariance, maximally_mixed_state, pure_state_covariance
from .generators import (
    random_s_commuting_symmetric,
    random_symmetric_operator,
    random_unit_complex,
)
from .phase import BlockOperator, PhaseVector
from .streams import stream
from .variables import PolynomialVariable

__all__ = ["ConfigError", "ExperimentConfig"]

STATE_KINDS = ("pure", "complex_covariance", "real_covariance", "maximally_mixed")
GENERATOR_KINDS = ("harmonic", "dense", "random_s_commuting", "random_symmetric")
FACTOR_KINDS = ("identity", "blocks", "random")

# fixed substream roles so sections expand independently of each other
ROLE_STATE, ROLE_GENERATOR, ROLE_VARIABLE, ROLE_POINT, ROLE_MC = range(5)


class ConfigError(Exception):
    """Invalid experiment configuration; the message names the offending field."""


def _fail(path: str, message: str):
    raise ConfigError(f"{path}: {message}")


def _require(d: dict, path: str, key: str, kind, default=None, required=False):
    if key not in d:
        if required:
            _fail(path, f"missing required field '{key}'")
        return default
    value = d[key]
    if kind is float and isinstance(value, int) and not isinstance(value, bool):
        value = float(value)
    if not isinstance(value, kind) or isinstance(value, bool) and kind is not bool:
        name = kind.__name__ if isinstance(kind, type) else "/".join(k.__name__ for k in kind)
        _fail(f"{path}.{key}", f"expected {name}, got {type(value).__name__}")
    return value


def _matrix(value, path: str, shape: tuple[int, int]) -> np.ndarray:
    try:
        m = np.asarray(value, dtype=float)
    except (TypeError, ValueError):
        _fail(path, "expected a numeric matrix")
    if m.shape != shape:
        _fail(path, f"expected shape {shape}, got {m.shape}")
    return m


def _vector(value, path: str, length: int) -> np.ndarray:
    try:
        v = np.asarray(value, dtype=float)
    except (TypeError, ValueError):
        _fail(path, "expected a numeric vector")
    if v.shape != (length,):
        _fail(path, f"expected length {length}, got shape {v.shape}")
    return v


@dataclass(frozen=True)
class ExperimentConfig:
    """Validated in-memory plan for one CLI run."""

    n: int = 4
    h: float = 0.01
    seed: int = 42
    state: dict = field(default_factory=lambda: {"kind": "pure"})
    generator: dict = field(default_factory=lambda: {"kind": "random_s_commuting"})
    variable: dict = field(
        default_factory=lambda: {"terms": [{"coeff": 1.0, "factors": [{"kind": "identity"}]}]}
    )
    samples: int = 20000
    times: tuple = (0.0, 0.25, 0.5, 0.75, 1.0)
    h_values: tuple = (1e-1, 1e-2, 1e-3, 1e-4)
    point: dict | None = None
    expect_state_invariant: bool = True

    @classmethod
    def from_dict(cls, d: dict, seed_override: int | None = None) -> "ExperimentConfig":
        if not isinstance(d, dict):
            raise ConfigError("config: top level must be a JSON object")
        known = {
            "n", "h", "seed", "state", "generator", "variable",
            "samples", "times", "h_values", "point", "expect",
        }
        for key in d:
            if key not in known:
                _fail(f"config.{key}", "unknown field")
        n = _require(d, "config", "n", int, default=4)
        if n < 1 or n > 256:
            _fail("config.n", f"dimension must be in [1, 256], got {n}")
        h = _require(d, "config", "h", float, default=0.01)
        if h <= 0:
            _fail("config.h", f"must be positive, got {h}")
        seed = _require(d, "config", "seed", int, default=42)
        if seed_override is not None:
            seed = seed_override
        samples = _require(d, "config", "samples", int, default=20000)
        if samples < 2:
            _fail("config.samples", f"need at least 2 samples, got {samples}")

        times = d.get("times", [0.0, 0.25, 0.5, 0.75, 1.0])
        if not isinstance(times, list) or not times or not all(
            isinstance(t, (int, float)) and not isinstance(t, bool) for t in times
        ):
            _fail("config.times", "expected a non-empty list of numbers")
        h_values = d.get("h_values", [1e-1, 1e-2, 1e-3, 1e-4])
        if not isinstance(h_values, list) or not all(
            isinstance(x, (int, float)) and not isinstance(x, bool) for x in h_values
        ):
            _fail("config.h_values", "expected a list of numbers")
        if any(x <= 0 for x in h_values):
            _fail("config.h_values", "all grid points must be positive")
        if any(b >= a for a, b in zip(h_values, h_values[1:])):
            _fail("config.h_values", "grid must be strictly descending")

        state = d.get("state", {"kind": "pure"})
        generator = d.get("generator", {"kind": "random_s_commuting"})
        variable = d.get("variable", {"terms": [{"coeff": 1.0, "factors": [{"kind": "identity"}]}]})
        point = d.get("point")
        expect = d.get("expect", {})
        if not isinstance(expect, dict):
            _fail("config.expect", "expected an object")
        expect_invariant = expect.get("state_invariant", True)
        if not isinstance(expect_invariant, bool):
            _fail("config.expect.state_invariant", "expected a boolean")

        cfg = cls(
            n=n, h=h, seed=seed, state=state, generator=generator, variable=variable,
            samples=samples, times=tuple(float(t) for t in times),
            h_values=tuple(float(x) for x in h_values), point=point,
            expect_state_invariant=expect_invariant,
        )
        # construct everything once so bad sections fail here, not mid-run
        cfg.build_state()
        cfg.build_generator()
        cfg.build_variable()
        cfg.build_point()
        return cfg

    @classmethod
    def from_file(cls, path: str, seed_override: int | None = None) -> "ExperimentConfig":
        try:
            with open(path) as fh:
                data = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"config: cannot read {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config: {path} is not valid JSON (line {exc.lineno}: {exc.msg})") from exc
        return cls.from_dict(data, seed_override=seed_override)

    def _stream(self, role: int):
        return stream(np.random.SeedSequence(self.seed).spawn(5)[role])

    def mc_seed(self) -> np.random.SeedSequence:
        return np.random.SeedSequence(self.seed).spawn(5)[ROLE_MC]

    def build_state(self) -> GaussianState:
        spec, n, h = self.state, self.n, self.h
        if not isinstance(spec, dict):
            _fail("config.state", "expected an object")
        kind = spec.get("kind")
        if kind not in STATE_KINDS:
            _fail("config.state.kind", f"expected one of {STATE_KINDS}, got {kind!r}")
        rng = self._stream(ROLE_STATE)
        try:
            if kind == "pure":
                if "psi_re" in spec or "psi_im" in spec:
                    psi = _vector(spec.get("psi_re", []), "config.state.psi_re", n) + 1j * _vector(
                        spec.get("psi_im", []), "config.state.psi_im", n
                    )
                else:
                    psi = random_unit_complex(rng, n)
                rho = pure_state_covariance(psi, h)
            elif kind == "complex_covariance":
                re = _matrix(spec.get("re"), "config.state.re", (n, n)) if "re" in spec else None
                if re is None:
                    _fail("config.state.re", "missing required field 're'")
                im = _matrix(spec.get("im", np.zeros((n, n)).tolist()), "config.state.im", (n, n))
                rho = from_complex_covariance(re + 1j * im)
            elif kind == "real_covariance":
                if "B" not in spec:
                    _fail("config.state.B", "missing required field 'B'")
                rho = GaussianState(_matrix(spec["B"], "config.state.B", (2 * n, 2 * n)))
            else:
                rho = maximally_mixed_state(n, h)
        except ValueError as exc:
            raise ConfigError(f"config.state: {exc}") from exc
        if spec.get("normalize_dispersion", False):
            rho = GaussianState(rho.B * (2.0 * h / rho.dispersion))
        return rho

    def build_generator(self) -> BlockOperator:
        spec, n = self.generator, self.n
        if not isinstance(spec, dict):
            _fail("config.generator", "expected an object")
        kind = spec.get("kind")
        if kind not in GENERATOR_KINDS:
            _fail("config.generator.kind", f"expected one of {GENERATOR_KINDS}, got {kind!r}")
        rng = self._stream(ROLE_GENERATOR)
        if kind == "harmonic":
            k = _require(spec, "config.generator", "k", float, default=1.0)
            return BlockOperator.from_matrix(k * np.eye(2 * n))
        if kind == "dense":
            if "matrix" not in spec:
                _fail("config.generator.matrix", "missing required field 'matrix'")
            m = _matrix(spec["matrix"], "config.generator.matrix", (2 * n, 2 * n))
            if float(np.max(np.abs(m - m.T))) > 1e-10 * max(1.0, float(np.max(np.abs(m)))):
                _fail("config.generator.matrix", "generator must be symmetric")
            return BlockOperator.from_matrix(m)
        if kind == "random_s_commuting":
            return random_s_commuting_symmetric(rng, n)
        return random_symmetric_operator(rng, n)

    def build_variable(self) -> PolynomialVariable:
        spec, n = self.variable, self.n
        if not isinstance(spec, dict) or "terms" not in spec:
            _fail("config.variable", "expected an object with a 'terms' list")
        terms = spec["terms"]
        if not isinstance(terms, list):
            _fail("config.variable.terms", "expected a list")
        rng = self._stream(ROLE_VARIABLE)
        if not terms:
            return PolynomialVariable.zero(n)
        built = []
        for i, term in enumerate(terms):
            path = f"config.variable.terms[{i}]"
            if not isinstance(term, dict):
                _fail(path, "expected an object")
            coeff = _require(term, path, "coeff", float, default=1.0)
            factors_spec = term.get("factors")
            if not isinstance(factors_spec, list) or not factors_spec:
                _fail(f"{path}.factors", "expected a non-empty list")
            factors = []
            for j, fspec in enumerate(factors_spec):
                fpath = f"{path}.factors[{j}]"
                if not isinstance(fspec, dict):
                    _fail(fpath, "expected an object")
                fkind = fspec.get("kind")
                if fkind not in FACTOR_KINDS:
                    _fail(f"{fpath}.kind", f"expected one of {FACTOR_KINDS}, got {fkind!r}")
                if fkind == "identity":
                    factors.append(BlockOperator.identity(n))
                elif fkind == "blocks":
                    D = _matrix(fspec.get("D"), f"{fpath}.D", (n, n)) if "D" in fspec else None
                    if D is None:
                        _fail(f"{fpath}.D", "missing required field 'D'")
                    S = _matrix(fspec.get("S", np.zeros((n, n)).tolist()), f"{fpath}.S", (n, n))
                    try:
                        factors.append(BlockOperator.s_commuting(D, S))
                        PolynomialVariable.quadratic(factors[-1])  # symmetry check
                    except ValueError as exc:
                        raise ConfigError(f"{fpath}: {exc}") from exc
                else:
                    factors.append(random_s_commuting_symmetric(rng, n))
            built.append((coeff, tuple(factors)))
        try:
            return PolynomialVariable(tuple(built))
        except ValueError as exc:
            raise ConfigError(f"config.variable: {exc}") from exc

    def build_point(self) -> PhaseVector:
        if self.point is None:
            rng = self._stream(ROLE_POINT)
            v = rng.standard_normal(2 * self.n)
            return PhaseVector(v[: self.n], v[self.n :])
        if not isinstance(self.point, dict):
            _fail("config.point", "expected an object with 'q' and 'p'")
        q = _vector(self.point.get("q"), "config.point.q", self.n) if "q" in self.point else None
        if q is None:
            _fail("config.point.q", "missing required field 'q'")
        p = _vector(self.point.get("p"), "config.point.p", self.n) if "p" in self.point else None
        if p is None:
            _fail("config.point.p", "missing required field 'p'")
        return PhaseVector(q, p)
