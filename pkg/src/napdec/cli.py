"""Command-line front door: JSON config in, JSON report out.

Exit codes: 0 all checks pass, 1 a violation was found, 2 the config or a
precondition is invalid.  The machine report goes to stdout (or ``--out``),
a one-line summary to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field as dc_field, replace
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import __version__
from .audits import Depths, fixed_points, freeness, isometry, orbit, pingpong, verdict_audits
from .affine_group import isometry_epsilon
from .errors import NapdecError, StabilizedBasePoint
from .freegroup import verify_group_paradox
from .generators import (EQUAL_CHAR, FIXTURES, MAGNUS, build_equal_char, build_magnus,
                         local_commutativity_audit, negative_fixture, nonparabolic_audit)
from .normed_space import NormSpec
from .paradox import FieldDescriptor, TrivialNormDesc, verdict
from .valued_fields import FieldCtx

COMMANDS = ("verdict", "audit-pingpong", "audit-freeness", "audit-nonparabolic",
            "audit-localcomm", "audit-paradox-words", "audit-orbit", "audit-isometry",
            "fixed-points")
# which depth --depth overrides
DEPTH_FIELD = {"audit-pingpong": "grid_degree", "audit-localcomm": "pair",
               "audit-orbit": "orbit", "audit-isometry": "factors"}


class ConfigError(NapdecError, ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    field: dict = dc_field(default_factory=lambda: {"kind": "padic", "p": 2})
    n: int = 2
    norm: dict = dc_field(default_factory=lambda: {"kind": "max"})
    construction: Optional[dict] = None
    depths: Depths = dc_field(default_factory=Depths)
    base: Optional[tuple] = None
    ball: Optional[dict] = None
    seed: Optional[int] = None
    fixture: Optional[str] = None

    KEYS = ("field", "n", "norm", "construction", "depths", "base", "ball", "seed", "fixture")

    @classmethod
    def from_json(cls, data: dict) -> "RunConfig":
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        unknown = set(data) - set(cls.KEYS)
        if unknown:
            raise ConfigError(f"unknown config keys {sorted(unknown)}")
        kwargs = dict(data)
        if "depths" in kwargs:
            depths = dict(kwargs["depths"])
            if "grid_coeffs" in depths:
                depths["grid_coeffs"] = tuple(depths["grid_coeffs"])
            kwargs["depths"] = Depths(**depths)
        if kwargs.get("base") is not None:
            kwargs["base"] = tuple(str(c) for c in kwargs["base"])
        cfg = cls(**kwargs)
        cfg.validate()
        return cfg

    def validate(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise ConfigError("n must be a positive integer")
        if self.seed is not None and not 0 <= int(self.seed) < 2 ** 64:
            raise ConfigError("seed must be an unsigned 64-bit integer")
        if self.fixture is not None and self.fixture not in FIXTURES:
            raise ConfigError(f"unknown fixture {self.fixture!r}; choose from {FIXTURES}")
        self.field_descriptor()
        self.norm_descriptor()

    def to_json(self) -> dict:
        return {"field": self.field, "n": self.n, "norm": self.norm,
                "construction": self.construction, "depths": self.depths.to_json(),
                "base": list(self.base) if self.base is not None else None,
                "ball": self.ball, "seed": self.seed, "fixture": self.fixture}

    # -- resolution -------------------------------------------------------

    def field_descriptor(self) -> FieldDescriptor:
        kind = self.field.get("kind")
        if kind == "trivial":
            return FieldDescriptor.trivial(str(self.field.get("base", "Q")))
        if kind == "locally_finite":
            return FieldDescriptor.locally_finite_field(
                self.field.get("name", "algebraic closure of F_p"))
        try:
            return FieldDescriptor.valued(FieldCtx.from_json(self.field))
        except (KeyError, ValueError) as exc:
            raise ConfigError(f"bad field descriptor {self.field}: {exc}") from exc

    def norm_descriptor(self):
        if self.norm.get("kind") == "trivial":
            return TrivialNormDesc(self.n, tuple(self.norm["values"]), tuple(self.norm["dims"]))
        try:
            spec = NormSpec.from_json(self.norm)
        except (KeyError, ValueError) as exc:
            raise ConfigError(f"bad norm descriptor {self.norm}: {exc}") from exc
        if spec.weights is not None and len(spec.weights) != self.n:
            raise ConfigError(f"{len(spec.weights)} weights for n = {self.n}")
        return spec

    def ball_params(self) -> Optional[tuple]:
        if self.ball is None:
            return None
        return tuple(self.ball["x0"]), Fraction(self.ball["r"])

    def ctx(self) -> FieldCtx:
        desc = self.field_descriptor()
        ctx = desc.ctx or desc.model
        if ctx is None:
            raise ConfigError("this field admits no nontrivial valuation to compute in")
        return ctx

    def certificate(self):
        if self.fixture is not None:
            return negative_fixture(self.fixture)
        if self.construction is None:
            v = verdict(self.field_descriptor(), self.n, self.norm_descriptor(),
                        self.ball_params())
            if not v.paradoxical:
                raise ConfigError(f"no certificate: {v.kind} ({v.reason})")
            return v.certificate
        ctx = self.ctx()
        spec = self.norm_descriptor()
        eps = Fraction(self.construction.get(
            "eps", isometry_epsilon(spec) if isinstance(spec, NormSpec) else 1))
        name = self.construction.get("name")
        if name == MAGNUS:
            return build_magnus(ctx, int(self.construction["s"]),
                                int(self.construction["t"]), eps)
        if name == EQUAL_CHAR:
            return build_equal_char(ctx, eps)
        raise ConfigError(f"unknown construction {name!r}")


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _need_seed(cfg: RunConfig, command: str) -> int:
    if cfg.seed is None:
        raise ConfigError(f"{command} samples randomly; pass --seed or set 'seed'")
    return int(cfg.seed)


def run(command: str, cfg: RunConfig) -> tuple[int, dict]:
    """Run one command; return ``(exit_code, document)``."""
    doc = {"command": command, "version": __version__, "config": cfg.to_json()}
    try:
        reports = _dispatch(command, cfg, doc)
    except (NapdecError, ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        error = {"type": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, StabilizedBasePoint):
            error["word"] = exc.word
        doc["error"] = error
        return 2, doc
    doc["audits"] = {name: r.to_json() for name, r in reports.items()}
    doc["ok"] = all(r.ok for r in reports.values())
    return (0 if doc["ok"] else 1), doc


def _dispatch(command: str, cfg: RunConfig, doc: dict) -> dict:
    d = cfg.depths
    if command == "verdict":
        v = verdict(cfg.field_descriptor(), cfg.n, cfg.norm_descriptor(), cfg.ball_params())
        body = v.to_json()
        doc.update(verdict=body["verdict"], reason=body["reason"],
                   certificate=body.get("certificate"),
                   embedding_index=body.get("embedding_index"))
        spec = cfg.norm_descriptor()
        return verdict_audits(v, d, cfg.seed or 0, cfg.ball_params(),
                              spec if isinstance(spec, NormSpec) else None)
    if command == "audit-paradox-words":
        return {"group-paradox": verify_group_paradox(d.word)}
    if command == "audit-isometry":
        spec = cfg.norm_descriptor()
        if not isinstance(spec, NormSpec):
            raise ConfigError("isometry audits need a max or weighted norm")
        return {"isometry": isometry(cfg.ctx(), spec, cfg.n, d, _need_seed(cfg, command))}
    cert = cfg.certificate()
    doc["certificate"] = cert.to_json()
    if command == "audit-pingpong":
        return {"pingpong": pingpong(cert, d, _need_seed(cfg, command))}
    if command == "audit-freeness":
        return {"freeness": freeness(cert, d.word)}
    if command == "audit-nonparabolic":
        return {"nonparabolic": nonparabolic_audit(cert, d.word)}
    if command == "audit-localcomm":
        return {"local-commutativity": local_commutativity_audit(cert, d.pair)}
    if command == "audit-orbit":
        base = cfg.base if cfg.base is not None else (1, 0)
        return {"orbit": orbit(cert, [cert.ctx.elem(c) for c in base], d.orbit)}
    if command == "fixed-points":
        return {"fixed-points": fixed_points(cert)}
    raise ConfigError(f"unknown command {command!r}")


def _summary(command: str, code: int, doc: dict) -> str:
    if "error" in doc:
        return f"{command}: error {doc['error']['type']}: {doc['error']['message']}"
    parts = [f"{name} {'ok' if r['ok'] else 'FAIL'} ({r['checked']} checked, "
             f"{r['violation_count']} violations)" for name, r in doc["audits"].items()]
    head = f"{command}: exit {code}"
    if "verdict" in doc:
        head += f", {doc['verdict']}" + (f" ({doc['reason']})" if doc["reason"] else "")
    return "; ".join([head] + parts)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="napdec", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", type=Path, help="JSON run configuration")
    parser.add_argument("--depth", type=int, help="override the command's main depth")
    parser.add_argument("--seed", type=int, help="seed for randomized sampling")
    parser.add_argument("--out", type=Path, help="write the report here instead of stdout")
    parser.add_argument("--fixture", choices=FIXTURES, help="use a negative-control certificate")
    return parser


def load_config(args) -> RunConfig:
    data = {}
    if args.config is not None:
        try:
            data = json.loads(args.config.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
    cfg = RunConfig.from_json(data)
    if args.seed is not None:
        cfg = replace(cfg, seed=args.seed)
    if args.fixture is not None:
        cfg = replace(cfg, fixture=args.fixture)
    if args.depth is not None:
        name = DEPTH_FIELD.get(args.command, "word")
        cfg = replace(cfg, depths=replace(cfg.depths, **{name: args.depth}))
    cfg.validate()
    return cfg


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args)
    except (NapdecError, ValueError, TypeError, KeyError) as exc:
        code, doc = 2, {"command": args.command, "version": __version__,
                        "error": {"type": type(exc).__name__, "message": str(exc)}}
    else:
        code, doc = run(args.command, cfg)
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if args.out is not None:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    print(_summary(args.command, code, doc), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
