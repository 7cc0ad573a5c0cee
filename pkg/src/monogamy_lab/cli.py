"""
Command-line front end.

Examples::

    monogamy-lab --command fig1 --m-max 8
    monogamy-lab --command fig3 --n 12 --m-max 20 --out fig3.csv
    monogamy-lab --command threshold --family wclass --n 5 --d 2
    monogamy-lab --command tighter --family w3 --s 2
    monogamy-lab --config run.cfg --m-max 10

Settings come from an optional ``key = value`` config file (``#``
starts a comment); command-line flags override it. Exit status is 0 on
success, 1 for invalid input and 2 for I/O failures.
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .errors import CapacityError, MonogamyLabError
from .measures import Convention, cren_wclass_one_vs_rest, cren_wclass_pair
from .monogamy import (
    CorrelationProfile,
    critical_power,
    polygamy_power,
    residual,
    tighter_bound_multipartite,
    tighter_bound_tripartite,
)
from .states import (
    GHZClassParams,
    WClassParams,
    build_ghz_class,
    build_wclass,
    uniform_wclass,
    w3_params,
)
from .superactivation import (
    FULL_PATH_MAX_SIDE,
    brute_force_copy_negativity,
    copies_residual,
    copy_model_gap,
    f_crossing,
    f_surface,
    minimal_copies,
    state_profile,
)

log = logging.getLogger("monogamy_lab")

COMMANDS = ("fig1", "fig2", "fig3", "threshold", "power", "tighter", "oracle")
FAMILIES = ("w3", "wclass", "ghz")

DEFAULTS = {
    "fig1": {"m_max": 8},
    "fig2": {"m_max": 8, "n": 5},
    "fig3": {"n": 12, "m_max": 20},
    "threshold": {"m_max": 64},
    "power": {},
    "tighter": {"s": 2.0},
    "oracle": {"m_max": 3},
}


class InputError(MonogamyLabError):
    pass


def fmt(x: float | int | None) -> str:
    """Fixed CSV number format: 12 significant digits, empty for missing values."""
    if x is None:
        return ""
    if isinstance(x, int):
        return str(x)
    return f"{x:.12g}"


@dataclass
class RunConfig:
    command: str = "fig1"
    family: str = "w3"
    n: int | None = None
    d: int = 2
    coefficients: list[complex] | None = field(default=None, repr=False)
    m_max: int | None = None
    s: float | None = None
    alpha: float | None = None
    convention: Convention = Convention.DOUBLED
    out: str | None = None

    def get(self, key: str, fallback=None):
        value = getattr(self, key)
        if value is None:
            value = DEFAULTS.get(self.command, {}).get(key, fallback)
        return value


def parse_coefficients(text: str) -> list[complex]:
    """Whitespace- or semicolon-separated ``re,im`` pairs (``re`` alone means ``im = 0``)."""
    out = []
    for token in text.replace(";", " ").split():
        parts = token.split(",")
        try:
            if len(parts) == 1:
                out.append(complex(float(parts[0]), 0.0))
            elif len(parts) == 2:
                out.append(complex(float(parts[0]), float(parts[1])))
            else:
                raise ValueError
        except ValueError:
            raise InputError(f"bad coefficient {token!r}; expected 're,im'") from None
    return out


def read_config(path: str) -> dict[str, str]:
    entries = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InputError(f"{path}:{lineno}: expected 'key = value'")
        key, value = line.split("=", 1)
        entries[key.strip().lower().replace("-", "_")] = value.strip()
    return entries


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="monogamy-lab",
        description="Negativity monogamy and its superactivation under tensor copies.",
    )
    p.add_argument("--command", choices=COMMANDS)
    p.add_argument("--config", help="key = value settings file; flags override it")
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--n", type=int, help="party count (fig3: largest n)")
    p.add_argument("--d", type=int, help="local dimension")
    p.add_argument("--coeffs", help="file of 're,im' coefficient pairs, party-major")
    p.add_argument("--m-max", dest="m_max", type=int)
    p.add_argument("--s", type=float, help="tighter-bound exponent factor (>= 1)")
    p.add_argument("--alpha", type=float, help="monogamy power for the tighter bound")
    p.add_argument("--convention", choices=[c.value for c in Convention])
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def resolve_config(args: argparse.Namespace) -> RunConfig:
    raw: dict[str, str] = read_config(args.config) if args.config else {}
    unknown = set(raw) - {
        "command", "family", "n", "d", "coefficients", "coeffs", "m_max", "s", "alpha", "convention", "out",
    }
    if unknown:
        raise InputError(f"unknown config keys: {', '.join(sorted(unknown))}")

    def pick(name, conv):
        flag = getattr(args, name, None)
        if flag is not None:
            return flag
        if name in raw:
            try:
                return conv(raw[name])
            except ValueError:
                raise InputError(f"config value {name} = {raw[name]!r} is invalid") from None
        return None

    cfg = RunConfig()
    cfg.command = pick("command", str) or cfg.command
    cfg.family = pick("family", str) or cfg.family
    cfg.n = pick("n", int)
    cfg.d = pick("d", int) or cfg.d
    cfg.m_max = pick("m_max", int)
    cfg.s = pick("s", float)
    cfg.alpha = pick("alpha", float)
    cfg.out = pick("out", str)
    convention = pick("convention", str)
    if convention is not None:
        try:
            cfg.convention = Convention(convention)
        except ValueError:
            raise InputError(f"unknown convention {convention!r}") from None
    if cfg.command not in COMMANDS:
        raise InputError(f"unknown command {cfg.command!r}")
    if cfg.family not in FAMILIES:
        raise InputError(f"unknown family {cfg.family!r}")

    coeff_path = args.coeffs if args.coeffs is not None else raw.get("coeffs")
    if coeff_path is not None:
        cfg.coefficients = parse_coefficients(Path(coeff_path).read_text(encoding="utf-8"))
    elif "coefficients" in raw:
        cfg.coefficients = parse_coefficients(raw["coefficients"])
    return cfg


def wclass_from_config(cfg: RunConfig) -> WClassParams:
    if cfg.family == "w3":
        return w3_params()
    if cfg.family != "wclass":
        raise InputError(f"command {cfg.command!r} needs a W-class family, got {cfg.family!r}")
    n = cfg.get("n", 3)
    if cfg.coefficients is None:
        return uniform_wclass(n, cfg.d)
    return WClassParams.from_flat(n, cfg.d, cfg.coefficients)


def ghz_from_config(cfg: RunConfig):
    n = cfg.get("n", 3)
    if cfg.coefficients is None:
        lam = (1 / math.sqrt(2),) * 2
    else:
        if any(abs(c.imag) > 0 for c in cfg.coefficients):
            raise InputError("GHZ Schmidt coefficients must be real")
        lam = tuple(c.real for c in cfg.coefficients)
    return build_ghz_class(GHZClassParams(n, cfg.d, lam))


def _csv_text(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(x) for x in row])
    return buf.getvalue()


def _m_max(cfg: RunConfig) -> int:
    m_max = cfg.get("m_max", 8)
    if m_max < 1:
        raise InputError(f"--m-max must be >= 1, got {m_max}")
    return m_max


def _oracle_joint(params: WClassParams, m: int) -> float | None:
    psi = build_wclass(params)
    side = params.d**m
    if side > FULL_PATH_MAX_SIDE:
        return None
    try:
        return brute_force_copy_negativity(psi, [0], m)
    except CapacityError as exc:
        log.info("oracle column left empty at m=%d: %s", m, exc)
        return None


def copy_table(params: WClassParams, m_max: int) -> list[tuple]:
    """Rows ``(m, joint, pair_sum, residual, oracle_joint, model_gap)``."""
    rows = []
    for m in range(1, m_max + 1):
        r = copies_residual(params, m)
        oracle = _oracle_joint(params, m)
        gap = None if oracle is None else r.q_joint_m - oracle
        rows.append((m, r.q_joint_m, sum(r.q_pairs_m), r.residual_m, oracle, gap))
    return rows


COPY_HEADER = ("m", "joint", "pair_sum", "residual", "oracle_joint", "model_gap")


def run_fig1(m_max: int = 8) -> str:
    """CSV of the 3-qubit W copy sweep."""
    return _csv_text(COPY_HEADER, copy_table(w3_params(), m_max))


def run_fig2(m_max: int = 8, params: WClassParams | None = None) -> str:
    return _csv_text(COPY_HEADER, copy_table(params or uniform_wclass(5, 2), m_max))


def run_fig3(n_max: int = 12, m_max: int = 20) -> str:
    """CSV of ``f(n, m)`` over ``3 <= n <= n_max``, ``1 <= m <= m_max``, with each n's crossing."""
    if n_max < 3:
        raise InputError(f"fig3 needs n >= 3, got {n_max}")
    if m_max < 1:
        raise InputError(f"--m-max must be >= 1, got {m_max}")
    rows = []
    for n in range(3, n_max + 1):
        crossing = f_crossing(n, m_max)
        for m in range(1, m_max + 1):
            rows.append((n, m, f_surface(n, m), crossing))
    return _csv_text(("n", "m", "f", "m_star"), rows)


def _profile_for(cfg: RunConfig) -> tuple[CorrelationProfile, str]:
    if cfg.family == "ghz":
        return state_profile(ghz_from_config(cfg)), "definitional negativity"
    params = wclass_from_config(cfg)
    pairs = tuple(cren_wclass_pair(params, s) for s in range(2, params.n + 1))
    return CorrelationProfile(cren_wclass_one_vs_rest(params), pairs), "CREN closed forms"


def _power_lines(profile: CorrelationProfile) -> list[str]:
    if profile.q_joint == 0.0:
        return ["gamma* = n/a (joint correlation is 0)"]
    g = critical_power(profile)
    d = polygamy_power(profile)
    return [f"gamma* = {fmt(g.value)} ({g.status})", f"delta* = {fmt(d.value)} ({d.status})"]


def run_threshold(cfg: RunConfig) -> str:
    m_max = _m_max(cfg)
    lines = [f"family = {cfg.family}"]
    if cfg.family == "ghz":
        profile = state_profile(ghz_from_config(cfg))
        res = residual(profile, 1.0)
        # pairwise reductions are separable, so every copy count is monogamous
        lines.append(f"m* = {1 if res >= 0 else 'none'}")
        lines.append(f"residual(m=1) = {fmt(res)}")
    else:
        params = wclass_from_config(cfg)
        th = minimal_copies(params, m_max)
        if th.m_star is None:
            lines.append(f"m* = none (m <= {m_max})")
            lines.append(f"residual(m={m_max}) = {fmt(th.last_residual)}")
        else:
            lines.append(f"m* = {th.m_star}")
            if th.m_star > 1:
                before = copies_residual(params, th.m_star - 1).residual_m
                lines.append(f"residual(m={th.m_star - 1}) = {fmt(before)}")
            lines.append(f"residual(m={th.m_star}) = {fmt(th.last_residual)}")
        profile, _ = _profile_for(cfg)
    lines.extend(_power_lines(profile))
    return "\n".join(lines) + "\n"


def run_power(cfg: RunConfig) -> str:
    profile, source = _profile_for(cfg)
    lines = [
        f"family = {cfg.family}",
        f"source = {source}",
        f"q_joint = {fmt(profile.q_joint)}",
        "q_pairs = " + " ".join(fmt(q) for q in profile.q_pairs),
    ]
    lines.extend(_power_lines(profile))
    return "\n".join(lines) + "\n"


def run_tighter(cfg: RunConfig) -> str:
    profile, source = _profile_for(cfg)
    s = cfg.get("s", 2.0)
    alpha = cfg.alpha
    if alpha is None:
        alpha = critical_power(profile).value
    lines = [f"family = {cfg.family}", f"source = {source}", f"alpha = {fmt(alpha)}", f"s = {fmt(s)}"]
    n = len(profile.q_pairs) + 1
    if n == 3:
        b = tighter_bound_tripartite(profile, alpha, s)
        lines += [f"lhs = {fmt(b.lhs)}", f"rhs = {fmt(b.rhs)}", f"holds = {str(b.holds).lower()}"]
    else:
        t = s * alpha
        lines.append(f"lhs = {fmt(profile.q_joint ** t)}")
        for split in range(2, n - 1):
            b = tighter_bound_multipartite(profile.q_pairs, alpha, s, split)
            lines.append(f"rhs(split_m={split}) = {fmt(b.value)} (conditional)")
    return "\n".join(lines) + "\n"


def run_oracle(cfg: RunConfig) -> str:
    """
    CSV comparing, per cut and copy count, the closed-form model with
    the trace-norm definition.

    ``multiplicative`` is ``(1 + N_1)^m - 1`` built from the brute-force
    single-copy value; ``model_gap`` is ``closed_form - brute_force``.
    """
    params = wclass_from_config(cfg)
    psi = build_wclass(params)
    conv = cfg.convention
    cuts = [("A1|rest", None, cren_wclass_one_vs_rest(params))]
    cuts += [(f"A1|A{s}", [0, s - 1], cren_wclass_pair(params, s)) for s in range(2, params.n + 1)]
    single = {label: brute_force_copy_negativity(psi, [0], 1, keep=keep) for label, keep, _ in cuts}
    rows = []
    for m in range(1, _m_max(cfg) + 1):
        for label, keep, closed_single in cuts:
            closed = copy_model_gap(closed_single, m).closed_form
            try:
                brute = brute_force_copy_negativity(psi, [0], m, keep=keep)
            except MonogamyLabError as exc:
                log.warning("skipping brute force for %s, m=%d: %s", label, m, exc)
                brute = None
            multiplicative = (1.0 + single[label]) ** m - 1.0
            gap = None if brute is None else conv.scale(closed - brute)
            rows.append(
                [m, label, fmt(conv.scale(closed)), fmt(None if brute is None else conv.scale(brute)),
                 fmt(conv.scale(multiplicative)), fmt(gap)]
            )
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("m", "cut", "closed_form", "brute_force", "multiplicative", "model_gap"))
    w.writerows(rows)
    return buf.getvalue()


def execute(cfg: RunConfig) -> str:
    if cfg.command == "fig1":
        return run_fig1(_m_max(cfg))
    if cfg.command == "fig2":
        params = wclass_from_config(cfg) if cfg.family == "wclass" else None
        return run_fig2(_m_max(cfg), params)
    if cfg.command == "fig3":
        return run_fig3(cfg.get("n", 12), _m_max(cfg))
    if cfg.command == "threshold":
        return run_threshold(cfg)
    if cfg.command == "power":
        return run_power(cfg)
    if cfg.command == "tighter":
        return run_tighter(cfg)
    return run_oracle(cfg)


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad flags; 2 is reserved for I/O failures here
        return 1 if exc.code else 0
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        cfg = resolve_config(args)
        text = execute(cfg)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (MonogamyLabError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        if cfg.out:
            with open(cfg.out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
