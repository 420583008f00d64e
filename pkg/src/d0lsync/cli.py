"""Command-line front end.

    d0lsync analyze   -m "a->ab,b->ba" [--axiom a] [--cap N] [--format json|text]
    d0lsync zmin      -m SPEC
    d0lsync overhangs -m SPEC
    d0lsync graph     -m SPEC [--format dot|json]
    d0lsync walks     -m SPEC
    d0lsync code      -m SPEC
    d0lsync factors   -m SPEC --cap L [--format text|json]
    d0lsync sweep     --k K [--format csv|json] [--jobs N]

Exit status: 0 success, 2 usage / precondition error, 3 cap overflow
(non-circularity suspected).  ``OVERHANG_CAP`` overrides default caps.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

from .classify import CSV_COLUMNS, analyze, sweep
from .interpretations import default_cap, z_min
from .language import factors_up_to
from .overhangs import (
    build_graph,
    enumerate_overhangs,
    export_dot,
    has_cycle,
    is_circular_code,
    is_code,
    overhang_record,
    sardinas_patterson,
)
from .walks import components, forbidden_subgraphs, l_max
from .words import CapExceeded, D0LSystem, MorphismError

EXIT_OK, EXIT_USAGE, EXIT_CAP = 0, 2, 3

COMMANDS = ("analyze", "zmin", "overhangs", "graph", "walks", "sweep", "factors", "code")
FORMATS = ("json", "csv", "dot", "text")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    morphism: str | None = None
    axiom: str | None = None
    k: int | None = None
    cap: int | None = None
    fmt: str = "json"
    out: str | None = None
    jobs: int = 1

    def validate(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.fmt not in FORMATS:
            raise UsageError(f"unknown format {self.fmt!r}")
        if self.command == "sweep":
            if self.k is None:
                raise UsageError("sweep requires --k")
        elif not self.morphism:
            raise UsageError(f"{self.command} requires -m/--morphism")
        if self.cap is not None and self.cap < 1:
            raise UsageError("--cap must be >= 1")


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _text(obj: dict) -> str:
    lines = []
    for key in sorted(obj):
        val = obj[key]
        if isinstance(val, (dict, list)):
            val = json.dumps(val, sort_keys=True, ensure_ascii=False)
        lines.append(f"{key}: {val}")
    return "\n".join(lines) + "\n"


def _render(obj: dict, fmt: str) -> str:
    if fmt == "text":
        return _text(obj)
    if fmt == "json":
        return _json(obj)
    raise UsageError(f"format {fmt!r} not supported for this command")


def _system(cfg: RunConfig) -> D0LSystem:
    return D0LSystem.parse(cfg.morphism, cfg.axiom)


def _cap(cfg: RunConfig, system: D0LSystem) -> int:
    if cfg.cap is not None:
        return cfg.cap
    try:
        return default_cap(system)
    except ValueError as exc:
        raise UsageError(f"{exc} (use --cap)") from None


def _zmin_dict(system, z):
    return {
        "morphism": system.morphism.spec(),
        "axiom": system.axiom,
        "cap": z.cap,
        "z_min": z.z_min,
        "z_min_definitional": z.definitional,
        "witness": z.witness,
        "exceeded_cap": z.exceeded_cap,
        "injective": z.injective,
        "non_synchronized_counts": {str(n + 1): c for n, c in enumerate(z.level_counts)},
    }


def _walks_dict(system, w, z=None):
    out = {
        "morphism": system.morphism.spec(),
        "axiom": system.axiom,
        "l_max": w.l_max,
        "l_max_multi_edge": w.l_max_multi,
        "exceeded_cap": w.exceeded_cap,
        "max_image_len": w.max_image_len,
        "witness": w.witness.labels() if w.witness else None,
        "witness_word": w.witness.word if w.witness else None,
    }
    if z is not None:
        out["z_min"] = z.z_min
        out["sandwich_ok"] = (
            None if (z.exceeded_cap or w.exceeded_cap)
            else w.l_max <= z.z_min <= w.l_max + 2 * w.max_image_len - 3
        )
    return out


def _graph_dict(g):
    return {
        "vertices": sorted(g.vertices, key=lambda s: (len(s), s)),
        "edges": [
            {"from": e.source, "to": e.target, "label": overhang_record(e.label)}
            for e in g.edges
        ],
        "has_cycle": has_cycle(g),
        "forbidden_subgraphs": [
            {"pattern": v.pattern, "vertices": list(v.vertices)} for v in forbidden_subgraphs(g)
        ],
    }


def run(cfg: RunConfig) -> tuple[int, str]:
    """Dispatch one command; return (exit status, serialized output)."""
    cfg.validate()
    cmd = cfg.command

    if cmd == "sweep":
        reports = sweep(cfg.k, cfg.cap, cfg.jobs)
        if cfg.fmt == "csv":
            buf = io.StringIO()
            writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
            writer.writeheader()
            for r in reports:
                writer.writerow(r.row())
            return EXIT_OK, buf.getvalue()
        return EXIT_OK, _json([r.to_dict() for r in reports])

    system = _system(cfg)
    m = system.morphism

    if cmd == "overhangs":
        return EXIT_OK, _render({"morphism": m.spec(),
                                 "overhangs": [overhang_record(o) for o in enumerate_overhangs(m)]},
                                cfg.fmt)
    if cmd == "graph":
        g = build_graph(m)
        if cfg.fmt == "dot":
            return EXIT_OK, export_dot(g) + "\n"
        data = _graph_dict(g)
        if m.uniform_k is not None:
            data["components"] = [
                {"vertices": list(c.vertices), "overlap": c.overlap, "vertex_len": c.vertex_len}
                for c in components(g)
            ]
        return EXIT_OK, _render(data, cfg.fmt)
    if cmd == "code":
        return EXIT_OK, _render({
            "morphism": m.spec(),
            "is_code": is_code(m),
            "is_circular_code": is_circular_code(m),
            "sardinas_patterson": sardinas_patterson(m),
        }, cfg.fmt)
    if cmd == "factors":
        if cfg.cap is None:
            raise UsageError("factors requires --cap (maximum factor length)")
        fs = factors_up_to(system, cfg.cap)
        if cfg.fmt == "json":
            return EXIT_OK, _json({str(n): sorted(fs.layer(n)) for n in range(1, fs.max_len + 1)})
        if cfg.fmt != "text":
            raise UsageError("factors supports --format text or json")
        blocks = []
        for n in range(1, fs.max_len + 1):
            blocks.append(f"# length {n} ({len(fs.layer(n))})")
            blocks.extend(sorted(fs.layer(n)))
        return EXIT_OK, "\n".join(blocks) + "\n"

    cap = _cap(cfg, system)
    if cmd == "zmin":
        z = z_min(system, cap)
        return (EXIT_CAP if z.exceeded_cap else EXIT_OK), _render(_zmin_dict(system, z), cfg.fmt)
    if cmd == "walks":
        w = l_max(system, cap=cap)
        z = None if w.exceeded_cap else z_min(system, cap)
        status = EXIT_CAP if (w.exceeded_cap or z.exceeded_cap) else EXIT_OK
        return status, _render(_walks_dict(system, w, z), cfg.fmt)
    if cmd == "analyze":
        if m.size == 2 and m.uniform_k is not None and m.uniform_k >= 2 and system.axiom == m.alphabet[0]:
            report = analyze(system, cap)
            status = EXIT_CAP if report.z.exceeded_cap else EXIT_OK
            return status, _render(report.to_dict(), cfg.fmt)
        # generic system: brute-force tools only
        z = z_min(system, cap)
        w = l_max(system, cap=cap)
        data = _zmin_dict(system, z)
        data.update({k: v for k, v in _walks_dict(system, w, z).items() if k.startswith(("l_max", "sandwich"))})
        data.update({"is_code": is_code(m), "is_circular_code": is_circular_code(m)})
        return (EXIT_CAP if z.exceeded_cap else EXIT_OK), _render(data, cfg.fmt)
    raise UsageError(f"unknown command {cmd!r}")  # pragma: no cover


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="d0lsync", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("-m", "--morphism", help='rules such as "a->ab,b->ba"')
    parser.add_argument("--axiom", help="axiom word (default: first declared letter)")
    parser.add_argument("--k", type=int, help="image length for sweep")
    parser.add_argument("--cap", type=int, help="search cap (factor length for `factors`)")
    parser.add_argument("--format", dest="fmt", choices=FORMATS, default=None)
    parser.add_argument("-o", "--out", help="write output to a file instead of stdout")
    parser.add_argument("--jobs", type=int, default=1, help="worker processes for sweep")
    return parser


_DEFAULT_FORMAT = {"graph": "dot", "factors": "text"}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(
        command=args.command,
        morphism=args.morphism,
        axiom=args.axiom,
        k=args.k,
        cap=args.cap,
        fmt=args.fmt or _DEFAULT_FORMAT.get(args.command, "json"),
        out=args.out,
        jobs=args.jobs,
    )
    try:
        status, text = run(cfg)
    except (UsageError, MorphismError, ValueError) as exc:
        print(f"d0lsync: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceeded as exc:
        print(f"d0lsync: cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
