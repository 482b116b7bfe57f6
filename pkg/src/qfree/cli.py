"""Command-line front door.  The CLI is a thin HTTP client of the service
app: by default it mounts the FastAPI app in-process, and --server points
it at a remote instance instead.

Exit codes: 0 success / graph is free, 1 semantic negative (violation
found, or no improvement when one was demanded), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys

import httpx

from .coloring import BUILTIN_NAMES
from .io import parse_edge_tokens


class CliError(Exception):
    def __init__(self, message, code=2):
        super().__init__(message)
        self.code = code


def make_client(server: str | None) -> httpx.Client:
    if server:
        return httpx.Client(base_url=server, timeout=None)
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from starlette.testclient import TestClient

    from .service import app

    return TestClient(app)


def call(client: httpx.Client, method: str, path: str, payload=None) -> dict:
    resp = client.request(method, path, json=payload)
    if resp.status_code == 422:
        detail = resp.json().get("detail", resp.text)
        raise CliError(f"input error: {detail}")
    resp.raise_for_status()
    return resp.json()


def read_graph_file(path: str, mode: str) -> dict:
    try:
        with open(path) as fh:
            text = fh.read()
        n, edges = parse_edge_tokens(text)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}")
    except ValueError as exc:
        raise CliError(f"bad edge list {path}: {exc}")
    from .core import format_edge

    return {"n": n, "edges": [format_edge(e) for e in edges], "mode": mode}


def coloring_payload(spec: str) -> dict:
    if spec in BUILTIN_NAMES:
        return {"name": spec}
    try:
        with open(spec) as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError(f"unknown builtin coloring and unreadable file {spec!r}: {exc}")
    from .coloring import coloring_from_text
    from .core import edge_from_index, format_edge
    from .subgraph import bit_indices

    try:
        c = coloring_from_text(text)
    except ValueError as exc:
        raise CliError(f"bad coloring file {spec}: {exc}")
    return {
        "m": c.m,
        "e_edges": [format_edge(edge_from_index(c.m, i)) for i in bit_indices(c.e_mask)],
        "o_edges": [format_edge(edge_from_index(c.m, i)) for i in bit_indices(c.o_mask)],
    }


def parse_forbid(text: str):
    if text in ("q2", "q3"):
        return text
    if text.startswith("qd="):
        return int(text[3:])
    if text.startswith("q") and text[1:].isdigit():
        return int(text[1:])
    raise CliError(f"bad --forbid value {text!r}; use q2, q3 or qd=<d>")


def emit(args, data: dict, human: str):
    if args.format == "machine":
        print(json.dumps(data, indent=2))
    else:
        print(human)


def class_stats_line(data: dict) -> str:
    cells = [f"{cs['direction']}:{cs['present']}/{cs['present'] + cs['omitted']}"
             for cs in data["class_stats"]]
    return ("per-direction present: " + " ".join(cells)
            + f"  (best direction {data['best_direction']})")


def write_out(path: str, n: int, tokens: list, header: str):
    with open(path, "w") as fh:
        fh.write(f"# {header}\nn={n}\n")
        for i in range(0, len(tokens), 6):
            fh.write(",".join(tokens[i:i + 6]) + "\n")


def cmd_verify(args, client) -> int:
    payload = {
        "graph": read_graph_file(args.file, args.mode),
        "forbid": parse_forbid(args.forbid),
        "workers": args.workers,
    }
    data = call(client, "POST", "/verify", payload)
    lines = [
        f"Q{data['n']}: {data['present_count']} present, {data['omitted_count']} omitted",
        class_stats_line(data),
    ]
    if data["free"]:
        lines.append(f"Q{data['forbid_dimension']}-free: yes  "
                     f"({data['elapsed']:.3f}s)")
    else:
        lines.append(f"Q{data['forbid_dimension']}-free: NO — "
                     f"{data['violation_count']} violations, first at "
                     f"{data['witness']}  ({data['elapsed']:.3f}s)")
    emit(args, data, "\n".join(lines))
    return 0 if data["free"] else 1


def cmd_analyze(args, client) -> int:
    payload = {
        "graph": read_graph_file(args.file, args.mode),
        "forbid": parse_forbid(args.forbid),
    }
    data = call(client, "POST", "/analyze", payload)
    hist = " ".join(f"{k}:{v}" for k, v in sorted(data["p_value_histogram"].items(),
                                                  key=lambda kv: int(kv[0])))
    lines = [
        f"Q{data['n']}: {data['present_count']} present, {data['omitted_count']} omitted",
        class_stats_line(data),
        f"free: {data['free']}  maximal: {data['maximal']}  "
        f"addable: {len(data['addable_edges'])}",
        f"parity split (even/odd endpoints): {tuple(data['parity_split'])}",
        f"p-value histogram: {hist}",
    ]
    emit(args, data, "\n".join(lines))
    return 0


def cmd_construct(args, client) -> int:
    direction = None if args.direction == "auto" else int(args.direction)
    payload = {
        "base": read_graph_file(args.base, args.mode),
        "coloring": coloring_payload(args.coloring),
        "direction": direction,
        "parity_convention": args.parity,
        "target": args.target,
        "verify": not args.no_verify,
    }
    data = call(client, "POST", "/construct", payload)
    if args.out:
        write_out(args.out, data["n"], data["edges"],
                  f"{args.target}-free product, omitted edges")
    lines = [
        f"product: Q{data['n']} with {data['present_count']} edges "
        f"({data['omitted_count']} omitted)",
        f"base: {data['base_edge_count']} edges, chosen class "
        f"{data['direction']} with {data['base_class_count']} edges",
        f"predicted count: {data['predicted_count']} "
        f"({'match' if data['predicted_count'] == data['present_count'] else 'MISMATCH'})",
    ]
    if data["free"] is not None:
        lines.append(f"verified free: {data['free']}")
    if args.out:
        lines.append(f"omitted edge list written to {args.out}")
    emit(args, data, "\n".join(lines))
    if data["free"] is False or data["predicted_count"] != data["present_count"]:
        return 1
    return 0


def parse_seeds(text: str) -> dict:
    seeds = {}
    try:
        for part in text.split(","):
            k, v = part.split(":")
            seeds[int(k)] = int(v)
    except ValueError:
        raise CliError(f"bad --seeds value {text!r}; expected like 7:56,8:128")
    return seeds


def cmd_recur(args, client) -> int:
    payload = {
        "seeds": parse_seeds(args.seeds),
        "coloring": coloring_payload(args.coloring),
        "k_max": args.k_max,
    }
    data = call(client, "POST", "/recur", payload)
    emit(args, data, data["text"])
    return 0


def cmd_general(args, client) -> int:
    residue = "best" if args.residue == "best" else int(args.residue)
    data = call(client, "POST", "/general", {"n": args.n, "residue": residue})
    if args.out:
        write_out(args.out, data["n"], data["omitted_edges"],
                  f"Q3-free by dropping residue class {data['residue']}")
    human = (
        f"Q{data['n']} minus residue class {data['residue']} "
        f"(sizes {data['class_sizes']}): {data['present_count']} edges, "
        f"{data['omitted_count']} omitted, Q3-free: {data['free']}"
        + (f"\nomitted edge list written to {args.out}" if args.out else "")
    )
    emit(args, data, human)
    return 0


def _search_config(args) -> dict:
    return {
        "time_budget": args.time_budget,
        "remove_t": getattr(args, "t", 2),
        "workers": args.workers,
        "rng_seed": getattr(args, "seed", 0),
        "node_limit": args.node_limit,
        "sample_limit": getattr(args, "sample", None),
    }


def _finish_search(args, data, header: str) -> int:
    if args.checkpoint:
        write_out(args.checkpoint, data["n"], data["omitted_edges"], header)
    lines = [
        f"Q{data['n']}: best found {data['present_count']} present / "
        f"{data['omitted_count']} omitted, optimal={data['optimal']}",
        class_stats_line(data),
        f"nodes explored: {data['nodes_explored']}  elapsed: {data['elapsed']:.2f}s"
        + (f"  [{data['note']}]" if data["note"] else ""),
    ]
    if data.get("improved") is not None:
        lines.insert(1, f"improved over input: {data['improved']}")
    if args.checkpoint:
        lines.append(f"incumbent written to {args.checkpoint}")
    emit(args, data, "\n".join(lines))
    return 0


def cmd_search_exact(args, client) -> int:
    payload = {"n": args.n, "d": args.d, "config": _search_config(args)}
    data = call(client, "POST", "/search/exact", payload)
    return _finish_search(args, data, f"minimum hitting set search, n={args.n} d={args.d}")


def cmd_search_perturb(args, client) -> int:
    payload = {
        "graph": read_graph_file(args.file, args.mode),
        "d": args.d,
        "config": _search_config(args),
    }
    data = call(client, "POST", "/search/perturb", payload)
    rc = _finish_search(args, data, f"perturbation search incumbent, t={args.t}")
    if args.require_improvement and not data["improved"]:
        return 1
    return rc


def cmd_coloring_list(args, client) -> int:
    data = call(client, "GET", "/colorings")
    human = "\n".join(
        f"{c['name']}: m={c['m']} a={c['count_a']} e={c['count_e']} o={c['count_o']}"
        for c in data
    )
    emit(args, {"colorings": data}, human)
    return 0


def cmd_coloring_validate(args, client) -> int:
    payload = {"coloring": coloring_payload(args.coloring), "target": args.target}
    data = call(client, "POST", "/coloring/validate", payload)
    c = data["coloring"]
    human = (f"m={c['m']} a={c['count_a']} e={c['count_e']} o={c['count_o']} "
             f"target={data['target']}: {'valid' if data['ok'] else 'INVALID'}")
    if not data["ok"]:
        human += "\n" + "\n".join(f"  {v['condition']} at {v['subcube']}"
                                  for v in data["violations"][:20])
    emit(args, data, human)
    return 0 if data["ok"] else 1


def cmd_coloring_split(args, client) -> int:
    payload = {"graph": read_graph_file(args.file, args.mode)}
    data = call(client, "POST", "/coloring/split", payload)
    if not data["ok"]:
        human = f"split failed: {data['reason']}"
        if data.get("witness"):
            human += f" (witness {data['witness']})"
        emit(args, data, human)
        return 1
    c = data["coloring"]
    human = (f"split ok: m={c['m']} a={c['count_a']} e={c['count_e']} o={c['count_o']}\n"
             f"e: {' '.join(c['e_edges'])}\n"
             f"o: {' '.join(c['o_edges'])}")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(f"m={c['m']}\n")
            fh.write("e: " + " ".join(c["e_edges"]) + "\n")
            fh.write("o: " + " ".join(c["o_edges"]) + "\n")
        human += f"\ncoloring written to {args.out}"
    emit(args, data, human)
    return 0


def cmd_serve(args, client) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qfree",
                                 description="Q3-free / C4-free hypercube subgraph toolkit")
    ap.add_argument("--server", help="base URL of a running service "
                                     "(default: run the app in-process)")
    ap.add_argument("--format", choices=["human", "machine"], default="human")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_mode(p):
        p.add_argument("--mode", choices=["present", "omitted"], default="present",
                       help="semantics of the edge list (default present)")

    p = sub.add_parser("verify", help="check a graph for forbidden subcubes")
    p.add_argument("file")
    add_mode(p)
    p.add_argument("--forbid", default="q3", help="q2, q3 or qd=<d> (default q3)")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("analyze", help="class stats, maximality, p-value histogram")
    p.add_argument("file")
    add_mode(p)
    p.add_argument("--forbid", default="q3")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("construct", help="build the colored product of a base graph")
    p.add_argument("base")
    add_mode(p)
    p.add_argument("--coloring", required=True,
                   help=f"builtin name ({', '.join(BUILTIN_NAMES)}) or a coloring file")
    p.add_argument("--direction", default="auto",
                   help="split class of the base, or 'auto' for the fullest")
    p.add_argument("--parity", type=int, choices=[0, 1], default=0)
    p.add_argument("--target", choices=["q3", "c4"], default="q3")
    p.add_argument("--no-verify", action="store_true")
    p.add_argument("--out", help="write the product's omitted edges here")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("recur", help="advance omitted-count bounds and print the table")
    p.add_argument("--seeds", default="7:56,8:128,9:352")
    p.add_argument("--coloring", default="q4_aeo")
    p.add_argument("--k-max", type=int, default=27)
    p.set_defaults(func=cmd_recur)

    p = sub.add_parser("general", help="Q3-free graph by dropping a residue class")
    p.add_argument("n", type=int)
    p.add_argument("--residue", default="best", help="0..3 or 'best' (smallest class)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_general)

    ps = sub.add_parser("search", help="exact and local search")
    ssub = ps.add_subparsers(dest="search_command", required=True)

    p = ssub.add_parser("exact", help="minimum omitted-edge set, branch and bound")
    p.add_argument("n", type=int)
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--node-limit", type=int, default=10_000_000)
    p.add_argument("--time-budget", type=float)
    p.add_argument("--checkpoint")
    p.set_defaults(func=cmd_search_exact)

    p = ssub.add_parser("perturb", help="remove-t / re-add local search")
    p.add_argument("file")
    add_mode(p)
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--sample", type=int, help="sample this many removal sets")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--node-limit", type=int, default=10_000_000)
    p.add_argument("--time-budget", type=float)
    p.add_argument("--checkpoint")
    p.add_argument("--require-improvement", action="store_true",
                   help="exit 1 if the search only returns the input graph")
    p.set_defaults(func=cmd_search_perturb)

    pc = sub.add_parser("coloring", help="builtin colorings and the e/o splitter")
    csub = pc.add_subparsers(dest="coloring_command", required=True)

    p = csub.add_parser("list")
    p.set_defaults(func=cmd_coloring_list)

    p = csub.add_parser("validate")
    p.add_argument("coloring", help="builtin name or coloring file")
    p.add_argument("--target", choices=["q3", "c4"], default="q3")
    p.set_defaults(func=cmd_coloring_validate)

    p = csub.add_parser("split", help="2-color the non-edges of a C4-free graph")
    p.add_argument("file")
    add_mode(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_coloring_split)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with make_client(args.server) as client:
            return args.func(args, client)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except httpx.HTTPError as exc:
        print(f"service error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
