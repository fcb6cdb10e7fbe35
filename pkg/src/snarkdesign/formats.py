"""Line-oriented text formats for graphs, design records and reports.

Graph files::

    graph G1 24
    e 0 1
    e 0 2
    ...

Design files::

    design g01-k136
    snark G1
    host complete 136 inf
    map a segments (0,135,3) fix inf
    map b segments (0,135,9) fix inf
    block a inf 1 96 44 ...

Lines starting with ``#`` are comments; leading comments are kept with the record.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

from .design import BaseBlock, DesignRecord, VerificationReport, make_map
from .graph import LabeledGraph, make_graph
from .host import HostGraph, make_complete, make_multipartite

BLOCK_SIZE = 24


class FormatError(ValueError):
    def __init__(self, message, line=None, source=None):
        where = ""
        if source:
            where += f"{source}:"
        if line is not None:
            where += f"{line}: "
        elif where:
            where += " "
        super().__init__(where + message)
        self.line = line


def _lines(text):
    for n, raw in enumerate(text.splitlines(), 1):
        s = raw.strip()
        if s:
            yield n, s


# --- graphs ---------------------------------------------------------------


def parse_graph(text: str, source=None) -> tuple[str, LabeledGraph]:
    name = None
    count = None
    edges = []
    prev = None
    for n, s in _lines(text):
        if s.startswith("#"):
            continue
        tok = s.split()
        if tok[0] == "graph":
            if name is not None:
                raise FormatError("second graph header", n, source)
            if len(tok) != 3 or not tok[2].isdigit():
                raise FormatError("expected 'graph <id> <vertex_count>'", n, source)
            name, count = tok[1], int(tok[2])
        elif tok[0] == "e":
            if name is None:
                raise FormatError("edge before graph header", n, source)
            if len(tok) != 3 or not (tok[1].isdigit() and tok[2].isdigit()):
                raise FormatError("expected 'e <u> <v>'", n, source)
            u, v = int(tok[1]), int(tok[2])
            if not u < v:
                raise FormatError(f"edge endpoints must satisfy u < v, got {u} {v}", n, source)
            if v >= count:
                raise FormatError(f"vertex {v} out of range", n, source)
            if prev is not None and (u, v) <= prev:
                raise FormatError("edges must be strictly ascending", n, source)
            prev = (u, v)
            edges.append((u, v))
        else:
            raise FormatError(f"unknown directive {tok[0]!r}", n, source)
    if name is None:
        raise FormatError("missing graph header", None, source)
    return name, make_graph(count, edges)


def emit_graph(name: str, g: LabeledGraph) -> str:
    out = [f"graph {name} {g.vertex_count}"]
    out += [f"e {u} {v}" for u, v in g.edges]
    return "\n".join(out) + "\n"


def read_graph(path) -> tuple[str, LabeledGraph]:
    path = Path(path)
    return parse_graph(path.read_text(), source=str(path))


# --- designs --------------------------------------------------------------

_SEGMENT = re.compile(r"\(\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\)")


def _parse_host(tok, n, source) -> HostGraph:
    if len(tok) >= 3 and tok[1] == "complete":
        if not tok[2].isdigit() or len(tok) > 4 or (len(tok) == 4 and tok[3] != "inf"):
            raise FormatError("expected 'host complete <n> [inf]'", n, source)
        return make_complete(int(tok[2]), len(tok) == 4)
    if len(tok) == 3 and tok[1] == "multipartite":
        try:
            return make_multipartite(tok[2])
        except ValueError as exc:
            raise FormatError(str(exc), n, source) from None
    raise FormatError("expected 'host complete <n> [inf]' or 'host multipartite <layout-id>'", n, source)


def _vertex(token, host, n, source) -> int:
    if token == "inf":
        if not host.infinity:
            raise FormatError("'inf' used on a host without infinity", n, source)
        return host.inf
    if not token.isdigit():
        raise FormatError(f"bad vertex {token!r}", n, source)
    return int(token)


def parse_design(text: str, source=None) -> DesignRecord:
    rid = snark = host = None
    maps = {}
    blocks = []
    comments = []
    for n, s in _lines(text):
        if s.startswith("#"):
            if rid is None:
                comments.append(s[1:].strip())
            continue
        tok = s.split()
        kw = tok[0]
        if kw == "design":
            if rid is not None:
                raise FormatError("second design header", n, source)
            if len(tok) != 2:
                raise FormatError("expected 'design <id>'", n, source)
            rid = tok[1]
        elif kw == "snark":
            m = re.fullmatch(r"G(\d+)", tok[1]) if len(tok) == 2 else None
            if m is None:
                raise FormatError("expected 'snark G<k>'", n, source)
            snark = int(m.group(1))
        elif kw == "host":
            if host is not None:
                raise FormatError("second host declaration", n, source)
            host = _parse_host(tok, n, source)
        elif kw == "map":
            if host is None:
                raise FormatError("map declared before host", n, source)
            m = re.fullmatch(r"map\s+(\S+)\s+segments\s+(.*?)(?:\s+fix\s+(.*))?", s)
            if m is None:
                raise FormatError("expected 'map <name> segments (<base>,<len>,<step>)[,...] [fix ...]'", n, source)
            name, segtext, fixtext = m.groups()
            if name in maps:
                raise FormatError(f"map {name!r} declared twice", n, source)
            segs = [tuple(int(x) for x in g) for g in _SEGMENT.findall(segtext)]
            if not segs or _SEGMENT.sub("", segtext).replace(",", "").strip():
                raise FormatError("malformed segment list", n, source)
            fixed = [_vertex(t, host, n, source) for t in (fixtext or "").replace(",", " ").split()]
            try:
                maps[name] = make_map(segs, fixed, host, name)
            except ValueError as exc:
                raise FormatError(str(exc), n, source) from None
        elif kw == "block":
            if len(tok) < 2 or tok[1] not in maps:
                raise FormatError(f"block references undeclared map {tok[1] if len(tok) > 1 else ''!r}", n, source)
            verts = tok[2:]
            if len(verts) != BLOCK_SIZE:
                raise FormatError(f"block has {len(verts)} vertices, expected {BLOCK_SIZE}", n, source)
            blocks.append(BaseBlock(tuple(_vertex(t, host, n, source) for t in verts), maps[tok[1]]))
        else:
            raise FormatError(f"unknown directive {kw!r}", n, source)
    for what, val in (("design", rid), ("snark", snark), ("host", host)):
        if val is None:
            raise FormatError(f"missing '{what}' line", None, source)
    if not blocks:
        raise FormatError("no block lines", None, source)
    return DesignRecord(rid, snark, host, blocks, comments)


def _emit_map(m, host: HostGraph) -> str:
    segs = ",".join(f"({b},{n},{s})" for b, n, s in m.segments)
    line = f"map {m.name} segments {segs}"
    if m.fixed_points:
        line += " fix " + " ".join(host.label(x) for x in m.fixed_points)
    return line


def emit_design(record: DesignRecord) -> str:
    host = record.host
    out = [f"# {c}" if c else "#" for c in record.comments]
    out += [f"design {record.id}", f"snark G{record.snark}", f"host {host.describe()}"]
    out += [_emit_map(m, host) for m in record.maps]
    for b in record.blocks:
        out.append(f"block {b.map.name} " + " ".join(host.label(v) for v in b.vertices))
    return "\n".join(out) + "\n"


def read_design(path) -> DesignRecord:
    path = Path(path)
    return parse_design(path.read_text(), source=str(path))


def write_design(record: DesignRecord, path) -> None:
    Path(path).write_text(emit_design(record))


# --- reports --------------------------------------------------------------

REPORT_FIELDS = ("pass", "blocks", "edges", "histogram", "violations")


def emit_report(report: VerificationReport, fmt: str = "human") -> str:
    if fmt == "machine":
        return json.dumps(report.to_dict(), sort_keys=True)
    status = "PASS" if report.passed else "FAIL"
    head = f"{report.record_id or '<record>'}: {status}"
    lines = [head, f"  developed blocks: {report.developed_block_count}", f"  host edges: {report.edge_count}"]
    hist = ", ".join(f"{k}x{v}" for k, v in sorted(report.histogram.items()))
    lines.append(f"  coverage histogram: {hist or '-'}")
    if report.cause:
        lines.append(f"  cause: {report.cause}")
    if report.violations:
        lines.append(f"  violations (first {len(report.violations)}):")
        lines += [f"    {{{u},{v}}} covered {m} times" for (u, v), m in report.violations]
    return "\n".join(lines)
