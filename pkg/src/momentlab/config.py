"""Run configuration: a flat key = value file format and its validation.

Grammar (one entry per line):

    line    := blank | comment | entry
    comment := '#' anything
    entry   := key ws? '=' ws? value ws? comment?
    key     := [a-z_][a-z0-9_-]*
    value   := string | bool | number | list
    string  := '"' chars-without-quote '"'
    bool    := 'true' | 'false'
    number  := int | float | complex written as a+bj
    list    := '[' (value (',' value)*)? ']'

Dashes in keys are read as underscores, so `trunc-c = 2000` and the
`--trunc-c` flag name the same field. Duplicate keys are an error.
"""
from __future__ import annotations

import json
import re
from dataclasses import asdict, dataclass, field, fields

from .numth import is_squarefree

KEY = re.compile(r"[a-z_][a-z0-9_-]*$")
EXPERIMENTS = ("residual", "scaling", "large-sieve")
SUITES = ("charsums", "mellin", "petersson", "sieve", "diagonal")


class ConfigError(ValueError):
    """Carries every problem found, not just the first."""

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


def _scalar(text: str):
    if text.startswith('"'):
        if len(text) < 2 or not text.endswith('"') or '"' in text[1:-1]:
            raise ValueError(f"bad string {text}")
        return text[1:-1]
    if text in ("true", "false"):
        return text == "true"
    for kind in (int, float, complex):
        try:
            return kind(text)
        except ValueError:
            pass
    raise ValueError(f"cannot read value {text!r}")


def _split_list(body: str) -> list[str]:
    items, cur, quoted = [], "", False
    for ch in body:
        if ch == '"':
            quoted = not quoted
        if ch == "," and not quoted:
            items.append(cur.strip())
            cur = ""
            continue
        cur += ch
    if cur.strip():
        items.append(cur.strip())
    return items


def _strip_comment(line: str) -> str:
    quoted = False
    for i, ch in enumerate(line):
        if ch == '"':
            quoted = not quoted
        elif ch == "#" and not quoted:
            return line[:i]
    return line


def parse_config_text(text: str) -> dict:
    out, problems = {}, []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        if "=" not in line:
            problems.append(f"line {lineno}: expected key = value")
            continue
        key, value = (part.strip() for part in line.split("=", 1))
        if not KEY.match(key):
            problems.append(f"line {lineno}: bad key {key!r}")
            continue
        key = key.replace("-", "_")
        if key in out:
            problems.append(f"line {lineno}: duplicate key {key!r}")
            continue
        try:
            if value.startswith("["):
                if not value.endswith("]"):
                    raise ValueError("unterminated list")
                out[key] = [_scalar(v) for v in _split_list(value[1:-1])]
            else:
                out[key] = _scalar(value)
        except ValueError as exc:
            problems.append(f"line {lineno}: {exc}")
    if problems:
        raise ConfigError(problems)
    return out


def dump_config_text(values: dict) -> str:
    def fmt(v):
        if isinstance(v, bool):
            return "true" if v else "false"
        if isinstance(v, str):
            return f'"{v}"'
        if isinstance(v, list):
            return "[" + ", ".join(fmt(x) for x in v) + "]"
        return repr(v)

    # keys are lower-case in the grammar; from_mapping restores contour_T
    return "".join(f"{k.lower()} = {fmt(v)}\n" for k, v in values.items() if v is not None)


@dataclass
class RunConfig:
    command: str = "experiment"
    name: str = "scaling"
    q: int | None = None
    q_list: list = field(default_factory=list)
    q_max: int = 200
    weight: int = 2
    alpha: str = "0,0,0"
    data: str | None = None
    out: str = "momentlab-out"
    threads: int = 1
    trunc_c: int | None = None
    contour_T: float = 28.0
    t_grid: str = "0:10:0.5"
    q_odd_squarefree_max: int = 99

    @classmethod
    def from_mapping(cls, values: dict) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        alias = {"contour_t": "contour_T"}
        values = {alias.get(k, k): v for k, v in values.items()}
        unknown = sorted(set(values) - known)
        if unknown:
            raise ConfigError([f"unknown key {k!r}" for k in unknown])
        return cls(**values)

    def levels(self) -> list[int] | None:
        if self.q is not None:
            return [int(self.q)]
        if self.q_list:
            return [int(x) for x in self.q_list]
        return None

    def shifts(self) -> tuple:
        return tuple(complex(x) for x in str(self.alpha).split(","))

    def t_values(self) -> tuple:
        start, stop, step = (float(x) for x in self.t_grid.split(":"))
        n = int(round((stop - start) / step))
        return tuple(round(start + k * step, 10) for k in range(n + 1))

    def problems(self) -> list[str]:
        out = []
        if self.command not in ("experiment", "verify"):
            out.append(f"command must be experiment or verify, not {self.command!r}")
        allowed = EXPERIMENTS if self.command == "experiment" else SUITES
        if self.name not in allowed:
            out.append(f"name must be one of {', '.join(allowed)}, not {self.name!r}")
        if self.weight not in (2, 4, 6, 8, 10):
            out.append(f"weight must be an even integer in 2..10, not {self.weight!r}")
        for q in self.levels() or []:
            if q < 3 or q % 2 == 0 or not is_squarefree(q):
                out.append(f"level {q} must be odd, square-free and at least 3")
        try:
            a = self.shifts()
            if len(a) != 3:
                out.append("alpha needs three comma-separated shifts")
            elif any(abs(x.real) >= 0.5 for x in a):
                out.append("alpha must satisfy |Re alpha_i| < 1/2")
        except ValueError:
            out.append(f"cannot read alpha {self.alpha!r}")
        if not isinstance(self.threads, int) or self.threads < 1:
            out.append("threads must be a positive integer")
        if self.trunc_c is not None and (not isinstance(self.trunc_c, int) or self.trunc_c < 10):
            out.append("trunc_c must be an integer >= 10 (the c-sum runs to trunc_c * q)")
        if not 5.0 <= float(self.contour_T) <= 200.0:
            out.append("contour_T must lie in [5, 200]")
        try:
            t = self.t_values()
            if not t or any(abs(x) > 100 for x in t):
                out.append("t_grid must be non-empty with |t| <= 100")
        except (ValueError, ZeroDivisionError):
            out.append(f"cannot read t_grid {self.t_grid!r} (start:stop:step)")
        if not 3 <= self.q_odd_squarefree_max <= 100:
            out.append("q_odd_squarefree_max must lie in 3..100")
        return out

    def validate(self) -> "RunConfig":
        problems = self.problems()
        if problems:
            raise ConfigError(problems)
        return self

    def echo(self) -> dict:
        return asdict(self)

    def canonical(self) -> str:
        return json.dumps(self.echo(), sort_keys=True, separators=(",", ":"))
