"""Line-based text formats for automata, processes, chains and games.

An automaton file::

    % anything after a percent sign is a comment
    states: p q
    input: a b
    stack: ⊥ X
    bottom: ⊥
    initial: p
    acceptance: parity p:0 q:1
    p , a , ⊥ -> push(q, X)
    q , _ , X -> pop(q)

``_`` is the lambda letter.  Acceptance is one of ``none``, ``final q..``,
``buchi q..``, ``muller {q q} {q}`` or ``parity q:c ..``.  A process file
drops ``input:`` and ``initial:``, has transition lines ``q , Z -> action``
and one ``owner: q -> Eve|Adam`` line per state.  Chains and games bundle
several of these under ``[automaton NAME]``, ``[terminal NAME]`` and
``[process NAME]`` section headers after a ``kind:`` line.
"""

from __future__ import annotations

import re
from pathlib import Path

from .automata import LAMBDA, Buchi, FinalStates, Muller, Parity, Pda, Pop, Push, Skip
from .games import ADAM, EVE, GameInstance, PushdownProcess
from .triangle import TriangleChain


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


_ACTION = re.compile(
    r"^(push|pop|skip)\s*\(\s*([^,()\s]+)\s*(?:,\s*([^,()\s]+)\s*)?\)$"
)
_DIRECTIVE = re.compile(r"^([A-Za-z]+)\s*:\s*(.*)$")
_SECTION = re.compile(r"^\[\s*(automaton|terminal|process)\s+([^\]\s]+)\s*\]$")

_AUTOMATON_KEYS = {"states", "input", "stack", "bottom", "initial", "acceptance"}
_PROCESS_KEYS = {"states", "stack", "bottom", "owner"}
_BUNDLE_KEYS = {"kind", "name", "realtime"}


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("%", 1)[0].strip()
        if line:
            yield no, line


def _action(text: str, no: int):
    m = _ACTION.match(text.strip())
    if not m:
        raise FormatError(f"bad action {text.strip()!r}", no)
    kind, target, sym = m.groups()
    if kind == "push":
        if sym is None:
            raise FormatError("push needs a target and a symbol", no)
        return Push(target, sym)
    if sym is not None:
        raise FormatError(f"{kind} takes a single target", no)
    return Pop(target) if kind == "pop" else Skip(target)


def _acceptance(text: str, no: int):
    parts = text.split(None, 1)
    if not parts:
        raise FormatError("empty acceptance", no)
    kind, rest = parts[0], parts[1] if len(parts) > 1 else ""
    if kind == "none":
        return None
    if kind == "final":
        return FinalStates(frozenset(rest.split()))
    if kind == "buchi":
        return Buchi(frozenset(rest.split()))
    if kind == "muller":
        if re.sub(r"\{[^{}]*\}", "", rest).strip():
            raise FormatError("muller sets must be written {q q ..}", no)
        sets = re.findall(r"\{([^{}]*)\}", rest)
        return Muller(frozenset(frozenset(s.split()) for s in sets))
    if kind == "parity":
        colors = {}
        for item in rest.split():
            q, sep, c = item.rpartition(":")
            if not sep or not q or not c.isdigit():
                raise FormatError(f"bad color entry {item!r}", no)
            colors[q] = int(c)
        return Parity.of(colors)
    raise FormatError(f"unknown acceptance kind {kind!r}", no)


def _parse_block(lines, process: bool):
    keys = _PROCESS_KEYS if process else _AUTOMATON_KEYS
    header: dict = {}
    delta: dict = {}
    owner: dict = {}
    for no, line in lines:
        m = _DIRECTIVE.match(line)
        if m and m.group(1) in keys:
            key, value = m.groups()
            if key == "owner":
                q, arrow, who = value.partition("->")
                who = who.strip()
                if not arrow or who not in (EVE, ADAM):
                    raise FormatError("owner lines read 'owner: q -> Eve|Adam'", no)
                owner[q.strip()] = who
                continue
            if key in header:
                raise FormatError(f"duplicate directive {key}", no)
            header[key] = (value.strip(), no)
            continue
        if "->" in line:
            left, _, right = line.partition("->")
            parts = [s.strip() for s in left.split(",")]
            if len(parts) != (2 if process else 3) or not all(parts):
                raise FormatError(f"bad transition {line!r}", no)
            if process:
                key = tuple(parts)
            else:
                q, a, z = parts
                key = (q, LAMBDA if a == "_" else a, z)
            delta.setdefault(key, set()).add(_action(right, no))
            continue
        if m:
            raise FormatError(f"unknown directive {m.group(1)!r}", no)
        raise FormatError(f"cannot read {line!r}", no)

    required = {"states", "stack", "bottom"} | (set() if process else {"input", "initial"})
    missing = sorted(required - set(header))
    if missing:
        raise FormatError(f"missing directive {missing[0]}")
    bottom = header["bottom"][0]
    states = set(header["states"][0].split())
    stack = set(header["stack"][0].split())
    if process:
        return PushdownProcess(states, stack, bottom, delta, owner)
    cond = None
    if "acceptance" in header:
        cond = _acceptance(*header["acceptance"])
    p = Pda(states, set(header["input"][0].split()), stack, bottom,
            header["initial"][0], delta)
    return p, cond


def parse_automaton(text: str) -> tuple:
    """``(Pda, condition or None)`` from the automaton format."""
    return _parse_block(_lines(text), process=False)


def parse_process(text: str) -> PushdownProcess:
    return _parse_block(_lines(text), process=True)


def _split_sections(text: str):
    head, sections = [], []
    for no, line in _lines(text):
        m = _SECTION.match(line)
        if m:
            sections.append((m.group(1), m.group(2), []))
        elif line.startswith("["):
            raise FormatError(f"bad section header {line!r}", no)
        elif sections:
            sections[-1][2].append((no, line))
        else:
            head.append((no, line))
    header = {}
    for no, line in head:
        m = _DIRECTIVE.match(line)
        if not m or m.group(1) not in _BUNDLE_KEYS:
            raise FormatError(f"unexpected line before the first section: {line!r}", no)
        header[m.group(1)] = m.group(2).strip()
    return header, sections


def _chain_from(header, sections) -> TriangleChain:
    chain, terminal = [], None
    for kind, _, lines in sections:
        if kind == "process":
            continue
        if terminal is not None:
            raise FormatError("the terminal section must come last")
        p, cond = _parse_block(lines, process=False)
        if kind == "automaton":
            chain.append(p)
        else:
            terminal = (p, cond)
    if terminal is None:
        raise FormatError("missing [terminal] section")
    realtime = header.get("realtime", "true")
    if realtime not in ("true", "false"):
        raise FormatError("realtime must be true or false")
    return TriangleChain(tuple(chain), terminal[0], terminal[1], realtime == "true")


def parse_chain(text: str) -> TriangleChain:
    header, sections = _split_sections(text)
    if header.get("kind", "chain") != "chain":
        raise FormatError("not a chain file")
    if any(kind == "process" for kind, _, _ in sections):
        raise FormatError("chain files have no [process] section")
    return _chain_from(header, sections)


def parse_game(text: str) -> GameInstance:
    header, sections = _split_sections(text)
    if header.get("kind") != "game":
        raise FormatError("not a game file")
    procs = [lines for kind, _, lines in sections if kind == "process"]
    if len(procs) != 1:
        raise FormatError("a game has exactly one [process] section")
    process = _parse_block(procs[0], process=True)
    return GameInstance(process, _chain_from(header, sections), header.get("name", ""))


def parse_any(text: str):
    """Dispatch on the ``kind:`` header; plain files are automata or processes."""
    header_kind = None
    for _, line in _lines(text):
        m = _DIRECTIVE.match(line)
        if m and m.group(1) == "kind":
            header_kind = m.group(2).strip()
        break
    if header_kind == "game":
        return parse_game(text)
    if header_kind == "chain":
        return parse_chain(text)
    if header_kind is not None:
        raise FormatError(f"unknown kind {header_kind!r}")
    if any(_DIRECTIVE.match(line) and _DIRECTIVE.match(line).group(1) == "owner"
           for _, line in _lines(text)):
        return parse_process(text)
    return parse_automaton(text)


def load(path) -> object:
    return parse_any(Path(path).read_text(encoding="utf-8"))


# ------------------------------------------------------------- emitters


def _join(items) -> str:
    return " ".join(sorted(items))


def format_acceptance(cond) -> str:
    if cond is None:
        return "none"
    if isinstance(cond, FinalStates):
        return f"final {_join(cond.states)}".rstrip()
    if isinstance(cond, Buchi):
        return f"buchi {_join(cond.states)}".rstrip()
    if isinstance(cond, Muller):
        sets = sorted("{" + _join(s) + "}" for s in cond.sets)
        return f"muller {' '.join(sets)}".rstrip()
    return "parity " + " ".join(f"{q}:{c}" for q, c in cond.colors)


def _key_order(key):
    return tuple("" if x is None else x for x in key)


def format_automaton(p: Pda, cond=None) -> str:
    out = [
        f"states: {_join(p.states)}",
        f"input: {_join(p.input_alphabet)}",
        f"stack: {_join(p.stack_alphabet)}",
        f"bottom: {p.bottom}",
        f"initial: {p.initial}",
        f"acceptance: {format_acceptance(cond)}",
    ]
    for key in sorted(p.delta, key=_key_order):
        q, a, z = key
        for act in sorted(p.delta[key], key=str):
            out.append(f"{q} , {'_' if a is LAMBDA else a} , {z} -> {act}")
    return "\n".join(out) + "\n"


def format_process(p: PushdownProcess) -> str:
    out = [
        f"states: {_join(p.states)}",
        f"stack: {_join(p.stack_alphabet)}",
        f"bottom: {p.bottom}",
    ]
    out += [f"owner: {q} -> {p.owner[q]}" for q in sorted(p.owner)]
    for key in sorted(p.delta):
        for act in sorted(p.delta[key], key=str):
            out.append(f"{key[0]} , {key[1]} -> {act}")
    return "\n".join(out) + "\n"


def _chain_sections(c: TriangleChain) -> list:
    out = []
    for i, p in enumerate(c.chain, 1):
        out += [f"[automaton A{i}]", format_automaton(p)]
    out += [f"[terminal A{len(c.chain) + 1}]", format_automaton(c.terminal, c.condition)]
    return out


def format_chain(c: TriangleChain) -> str:
    head = ["kind: chain", f"realtime: {'true' if c.real_time else 'false'}"]
    return "\n".join(head + _chain_sections(c))


def format_game(g: GameInstance) -> str:
    head = ["kind: game"]
    if g.name:
        head.append(f"name: {g.name}")
    head.append(f"realtime: {'true' if g.condition.real_time else 'false'}")
    body = ["[process P]", format_process(g.process)] + _chain_sections(g.condition)
    return "\n".join(head + body)


def format_any(obj) -> str:
    if isinstance(obj, GameInstance):
        return format_game(obj)
    if isinstance(obj, TriangleChain):
        return format_chain(obj)
    if isinstance(obj, PushdownProcess):
        return format_process(obj)
    if isinstance(obj, tuple) and len(obj) == 2 and isinstance(obj[0], Pda):
        return format_automaton(*obj)
    if isinstance(obj, Pda):
        return format_automaton(obj)
    raise TypeError(f"no text format for {type(obj).__name__}")
