"""
Command-line front end.

Every subcommand takes a graph (``--family NAME`` or ``--graph FILE``) and
prints JSON (default) or TSV.  Exit codes: 0 success, 1 domain error (bad
graph, bad word), 2 verification failure, 3 resource cap exceeded.

>>> main(["cf", "--family", "A3", "2,0,1"])
{"trace": [[0, 2], [1]], "word": [2, 0, 1]}
0
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Sequence

from .classify import classify_star_reducible, counterexample_word
from .elements import DEFAULT_TITS_CAP, ElementError, enumerate_fc, fc_element
from .graph import CoxeterGraph, GraphError, family_graph, graph_from_json, graph_to_json
from .hinv import InvariantViolation, h_value
from .laurent import LaurentInt
from .star import StarReducer, path_to_json
from .tl import TlElement, algebra, structure_table_tsv, trace_label
from .traces import CapExceeded, Trace, TraceError, cartier_foata, trace_from_blocks

__all__ = ["main", "run", "Cache", "CACHE_VERSION"]

CACHE_VERSION = 1

EXIT_OK, EXIT_DOMAIN, EXIT_VERIFY, EXIT_CAP = 0, 1, 2, 3


class Cache:
    """
    Versioned JSON cache of FC enumerations and c-basis tables, one file per
    graph fingerprint.  Files with another version or fingerprint are ignored.
    """

    def __init__(self, directory: str | os.PathLike | None, g: CoxeterGraph):
        self.graph = g
        self.path = None if directory is None else Path(directory) / f"{g.fingerprint()}.json"
        self.data = {"version": CACHE_VERSION, "fingerprint": g.fingerprint(), "fc": {}, "cbasis": {}}
        if self.path is not None and self.path.exists():
            try:
                loaded = json.loads(self.path.read_text())
            except (OSError, ValueError):
                loaded = None
            if (isinstance(loaded, dict) and loaded.get("version") == CACHE_VERSION
                    and loaded.get("fingerprint") == g.fingerprint()):
                self.data = loaded
        self.dirty = False

    def enumerate_fc(self, max_len: int, cap: int | None = None) -> tuple[list[Trace], bool]:
        hit = self.data["fc"].get(str(max_len))
        if hit is not None:
            if cap is not None and len(hit["elements"]) > cap:
                raise CapExceeded(f"FC enumeration exceeds {cap} elements")
            return [trace_from_blocks(self.graph, b) for b in hit["elements"]], hit["exhaustive"]
        elements, exhaustive = enumerate_fc(self.graph, max_len, cap)
        self.data["fc"][str(max_len)] = {"elements": [w.to_json() for w in elements], "exhaustive": exhaustive}
        self.dirty = True
        return elements, exhaustive

    def seed_cbasis(self):
        """Load cached c_w into the algebra; each entry is re-verified."""
        alg = algebra(self.graph)
        for entry in self.data["cbasis"].values():
            w = trace_from_blocks(self.graph, entry["w"])
            if w in alg._c:
                continue
            vec = {trace_from_blocks(self.graph, t["trace"]): LaurentInt.from_json(t["coeff"])
                   for t in entry["terms"]}
            alg._verify_c(w, vec)
            alg._c[w] = vec

    def store_cbasis(self, w: Trace, c: TlElement):
        key = trace_label(w)
        if key not in self.data["cbasis"]:
            self.data["cbasis"][key] = {"w": w.to_json(), "terms": c.to_json()["terms"]}
            self.dirty = True

    def save(self):
        if self.path is None or not self.dirty:
            return
        self.path.parent.mkdir(parents=True, exist_ok=True)
        tmp = self.path.with_suffix(".tmp")
        tmp.write_text(json.dumps(self.data, sort_keys=True))
        tmp.replace(self.path)


def parse_word(text: str) -> tuple[int, ...]:
    """Accept a JSON array or comma/space separated integers."""
    text = text.strip()
    if text.startswith("["):
        try:
            data = json.loads(text)
        except ValueError:
            raise ElementError(f"malformed word {text!r}") from None
    else:
        data = [x for x in text.replace(",", " ").split()]
    try:
        return tuple(int(x) for x in data)
    except (TypeError, ValueError):
        raise ElementError(f"malformed word {text!r}") from None


def _check_word(g: CoxeterGraph, w: Sequence[int]):
    for x in w:
        if not 0 <= x < g.rank:
            raise ElementError(f"generator {x} out of range for rank {g.rank}")


def load_graph(args) -> CoxeterGraph:
    if args.family:
        return family_graph(args.family)
    try:
        text = Path(args.graph).read_text()
    except OSError as exc:
        raise GraphError(f"cannot read graph file: {exc}") from None
    return graph_from_json(text)


# -- subcommands; each returns (payload, tsv text or None, exit code)

def cmd_classify(g, args, cache):
    v = classify_star_reducible(g)
    rows = [f"{','.join(map(str, c.vertices))}\t{c.family or '-'}\t{str(c.ok).lower()}" for c in v.components]
    return {"graph": graph_to_json(g), **v.to_json()}, "vertices\tfamily\tstar_reducible\n" + "\n".join(rows) + "\n", 0


def cmd_enumerate(g, args, cache):
    elements, exhaustive = cache.enumerate_fc(args.max_len, args.cap)
    payload = {"count": len(elements), "exhaustive": exhaustive, "max_len": args.max_len,
               "elements": [{"trace": w.to_json(), "length": w.length} for w in elements]}
    tsv = "length\ttrace\n" + "".join(f"{w.length}\t{trace_label(w)}\n" for w in elements)
    return payload, tsv, 0


def cmd_star_reduce(g, args, cache):
    w = fc_element(g, parse_word(args.word))
    path = StarReducer(g).path(w)
    payload = {"trace": w.to_json(), "irreducible": path is None,
               "path": None if path is None else path_to_json(path)}
    if path is None:
        tsv = "irreducible\n"
    else:
        tsv = "pair\tside\tresult\n" + "".join(
            f"{p[0]},{p[1]}\t{'L' if side == 'left' else 'R'}\t{trace_label(u)}\n" for p, side, u in path)
    return payload, tsv, 0


def cmd_cf(g, args, cache):
    w = parse_word(args.word)
    _check_word(g, w)
    t = cartier_foata(g, w)
    return {"word": list(w), "trace": t.to_json()}, trace_label(t) + "\n", 0


def cmd_h(g, args, cache):
    w = parse_word(args.word)
    _check_word(g, w)
    h, log = h_value(g, w, seed=args.seed)
    tsv = "kind\tpair\tposition\n" + "".join(
        f"{m['kind']}\t{','.join(map(str, m['pair']))}\t{','.join(map(str, m['position']))}\n" for m in log)
    return {"word": list(w), "h": h, "seed": args.seed, "log": log}, f"h\t{h}\n" + tsv, 0


def _element_tsv(x: TlElement) -> str:
    return "basis_element\tcoefficient\n" + "".join(f"{trace_label(w)}\t{c}\n" for w, c in x.items())


def cmd_reduce(g, args, cache):
    w = parse_word(args.word)
    _check_word(g, w)
    x = algebra(g).reduce_word(w)
    return x.to_json(), _element_tsv(x), 0


def cmd_cbasis(g, args, cache):
    alg = algebra(g)
    alg.require_star_reducible()
    cache.seed_cbasis()
    elements, exhaustive = cache.enumerate_fc(args.max_len, args.cap)
    out, lines = [], ["w\tb\tcoefficient"]
    for w in elements:
        c = alg.c_of(w)
        cache.store_cbasis(w, c)
        out.append({"w": w.to_json(), "c": c.to_json()})
        lines += [f"{trace_label(w)}\t{trace_label(y)}\t{f}" for y, f in c.items()]
    return {"exhaustive": exhaustive, "max_len": args.max_len, "elements": out}, "\n".join(lines) + "\n", 0


def _positivity_worker(graph_json: dict, max_len: int, lo: int, hi: int):
    g = graph_from_json(graph_json)
    elements, _ = enumerate_fc(g, max_len)
    rows, violations, power = algebra(g).positivity_rows(elements[lo:hi], elements)
    return [(x.to_json(), y.to_json(), w.to_json(), f.to_json()) for x, y, w, f in rows], violations, power


def cmd_positivity(g, args, cache):
    alg = algebra(g)
    alg.require_star_reducible()
    elements, exhaustive = cache.enumerate_fc(args.max_len, args.cap)
    n = len(elements)
    if args.jobs > 1 and n > 1:
        bounds = [(n * k // args.jobs, n * (k + 1) // args.jobs) for k in range(args.jobs)]
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            parts = list(pool.map(_positivity_worker, *zip(*[(graph_to_json(g), args.max_len, lo, hi)
                                                             for lo, hi in bounds])))
        rows, violations, power = [], [], 0
        for r, v, p in parts:
            rows += [(trace_from_blocks(g, x), trace_from_blocks(g, y), trace_from_blocks(g, w),
                      LaurentInt.from_json(f)) for x, y, w, f in r]
            violations += v
            power = max(power, p)
    else:
        rows, violations, power = alg.positivity_rows(elements, elements)
    payload = {"pairs": n * n, "max_delta_power": power, "violations": violations, "exhaustive": exhaustive}
    return payload, structure_table_tsv(rows), EXIT_VERIFY if violations else 0


def cmd_audit(g, args, cache):
    elements, exhaustive = cache.enumerate_fc(args.max_len, args.cap)
    reducer = StarReducer(g)
    witnesses = [w for w in elements if reducer.path(w) is None]
    payload = {"max_len": args.max_len, "exhaustive": exhaustive,
               "witnesses": [w.to_json() for w in witnesses]}
    return payload, "trace\n" + "".join(trace_label(w) + "\n" for w in witnesses), 0


def cmd_counterexample(g, args, cache):
    w = counterexample_word(g)
    payload = {"word": None if w is None else list(w)}
    return payload, ("none" if w is None else ",".join(map(str, w))) + "\n", 0


COMMANDS = {
    "classify": (cmd_classify, None),
    "enumerate": (cmd_enumerate, "max_len"),
    "star-reduce": (cmd_star_reduce, "word"),
    "cf": (cmd_cf, "word"),
    "h": (cmd_h, "word"),
    "reduce": (cmd_reduce, "word"),
    "cbasis": (cmd_cbasis, "max_len"),
    "positivity": (cmd_positivity, "max_len"),
    "audit": (cmd_audit, "max_len"),
    "counterexample": (cmd_counterexample, None),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group(required=True)
    src.add_argument("--family", help="named graph, e.g. B3, I2(5), Ctilde3, K3(3,4,5)")
    src.add_argument("--graph", help="graph JSON file {rank, edges: [[i, j, m], ...]}")
    common.add_argument("--format", choices=("json", "tsv"), default="json")
    common.add_argument("--cache", default=None, help="cache directory (COXSTAR_CACHE overrides)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--cap", type=int, default=DEFAULT_TITS_CAP)
    common.add_argument("--jobs", type=int, default=1)

    parser = argparse.ArgumentParser(prog="coxstar", description=__doc__.split("\n\n")[0].strip())
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, arg) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common])
        if arg == "word":
            p.add_argument("word", help="generator indices, e.g. 0,1,0 or [0,1,0]")
        elif arg == "max_len":
            p.add_argument("--max-len", type=int, default=10)
    return parser


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    if getattr(args, "max_len", 0) < 0:
        print("error: --max-len must be nonnegative", file=err)
        return EXIT_DOMAIN
    cache_dir = os.environ.get("COXSTAR_CACHE") or args.cache
    try:
        g = load_graph(args)
        cache = Cache(cache_dir, g)
        handler = COMMANDS[args.command][0]
        payload, tsv, code = handler(g, args, cache)
        cache.save()
    except InvariantViolation as exc:
        print(f"verification failure: {exc}", file=err)
        return EXIT_VERIFY
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=err)
        return EXIT_CAP
    except (GraphError, ElementError, TraceError, ValueError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_DOMAIN
    if args.format == "json":
        out.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        out.write(tsv)
    return code


def main(argv: Sequence[str] | None = None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
