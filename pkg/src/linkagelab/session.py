"""Line-oriented session files: ring, modules, ideals and tasks in one text.

Grammar sketch (full EBNF ships in docs/session-grammar.ebnf):

    format 1
    char 2
    vars x y
    order grevlex
    quotient x*y
    module R free 1
    module M rank 1 relations [x]
    ideal a x
    ideal I
    task link module=R a=a b=b i=I

Polynomials use the shared text form (terms joined by + and -, powers x^k
separated by *).  '#' starts a comment.  Quotient and ideal generators must
not carry a constant term, which keeps every session graded-local.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import SessionError
from .poly import Poly, Ring, Vec, is_prime
from .quotient import IdealHandle, PresentedModule, QuotientRing

FORMAT_VERSION = 1


@dataclass
class ModuleSpec:
    name: str
    rank: int
    relations: list  # rows, each a list of Poly (length = rank)
    free: bool


@dataclass
class SessionFile:
    char: int
    variables: tuple
    order: str
    quotient: list
    modules: dict
    ideals: dict
    tasks: list = field(default_factory=list)

    def ring(self) -> Ring:
        from .poly import make_order

        return Ring(self.char, self.variables, make_order(self.order))

    def pretty(self) -> str:
        lines = [f"format {FORMAT_VERSION}", f"char {self.char}"]
        lines.append("vars " + " ".join(self.variables))
        lines.append(f"order {self.order}")
        if self.quotient:
            lines.append("quotient " + ", ".join(str(g) for g in self.quotient))
        for spec in self.modules.values():
            if spec.free:
                lines.append(f"module {spec.name} free {spec.rank}")
            else:
                rows = "; ".join(
                    "[" + ", ".join(str(p) for p in row) + "]" for row in spec.relations
                )
                suffix = f" relations {rows}" if rows else ""
                lines.append(f"module {spec.name} rank {spec.rank}{suffix}")
        for name, gens in self.ideals.items():
            if gens:
                lines.append(f"ideal {name} " + ", ".join(str(g) for g in gens))
            else:
                lines.append(f"ideal {name}")
        for task in self.tasks:
            args = " ".join(f"{k}={v}" for k, v in task["args"].items())
            lines.append(f"task {task['op']}" + (f" {args}" if args else ""))
        return "\n".join(lines) + "\n"

    def build(self):
        """Instantiate the quotient ring and all named modules and ideals."""
        S = self.ring()
        ring = QuotientRing(S, self.quotient)
        modules = {}
        for spec in self.modules.values():
            rows = [Vec.from_polys(S, row) for row in spec.relations]
            modules[spec.name] = PresentedModule(ring, spec.rank, rows)
        ideals = {name: IdealHandle(ring, gens) for name, gens in self.ideals.items()}
        return ring, modules, ideals


def _fail(msg, line_no):
    raise SessionError(msg, line=line_no)


def _split_outside_brackets(text: str, sep: str):
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def parse_session(text: str) -> SessionFile:
    char = None
    variables = None
    order = "grevlex"
    quotient = []
    modules: dict = {}
    ideals: dict = {}
    tasks: list = []
    ring = None
    saw_format = False

    def parse_poly(src: str, line_no: int) -> Poly:
        if ring is None:
            _fail("polynomial before char/vars are set", line_no)
        src = src.strip()
        if src == "0":
            return ring.zero()
        try:
            return ring.parse_poly(src)
        except Exception as exc:
            _fail(f"bad polynomial {src!r}: {exc}", line_no)

    def graded_gen(f: Poly, what: str, line_no: int) -> Poly:
        if f.constant_coeff() != 0:
            _fail(f"non-graded {what} generator {f!r} (constant term)", line_no)
        return f

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split(None, 1)
        head = words[0]
        rest = words[1].strip() if len(words) > 1 else ""
        if head == "format":
            if rest != str(FORMAT_VERSION):
                _fail(f"unsupported format {rest!r} (expected {FORMAT_VERSION})", line_no)
            saw_format = True
        elif head == "char":
            if not rest.isdigit():
                _fail("char needs an integer", line_no)
            char = int(rest)
            if not is_prime(char) or char >= (1 << 16):
                _fail("characteristic must be prime (and < 2^16)", line_no)
        elif head == "vars":
            names = rest.replace(",", " ").split()
            if not names:
                _fail("vars needs at least one name", line_no)
            if len(set(names)) != len(names):
                _fail("duplicate variable name", line_no)
            variables = tuple(names)
        elif head == "order":
            if rest not in ("grevlex", "lex"):
                _fail(f"unknown order {rest!r}", line_no)
            order = rest
        elif head in ("quotient", "module", "ideal", "task"):
            if char is None or variables is None:
                _fail(f"{head} before char/vars are set", line_no)
            if ring is None:
                from .poly import make_order

                ring = Ring(char, variables, make_order(order))
            if head == "quotient":
                for part in _split_outside_brackets(rest, ","):
                    if part.strip() in ("", "0"):
                        continue
                    quotient.append(graded_gen(parse_poly(part, line_no), "quotient", line_no))
            elif head == "module":
                toks = rest.split(None, 2)
                if len(toks) < 2:
                    _fail("module needs a name and a kind", line_no)
                name = toks[0]
                if name in modules or name in ideals:
                    _fail(f"name {name!r} already defined", line_no)
                kind = toks[1]
                if kind == "free":
                    if len(toks) != 3 or not toks[2].isdigit():
                        _fail("module ... free needs a rank", line_no)
                    modules[name] = ModuleSpec(name, int(toks[2]), [], True)
                elif kind == "rank":
                    tail = toks[2] if len(toks) > 2 else ""
                    pieces = tail.split(None, 1)
                    if not pieces or not pieces[0].isdigit():
                        _fail("module ... rank needs an integer", line_no)
                    rank = int(pieces[0])
                    rows = []
                    if len(pieces) > 1:
                        relword = pieces[1].split(None, 1)
                        if relword[0] != "relations" or len(relword) < 2:
                            _fail("expected 'relations [..]; [..]'", line_no)
                        for row_src in _split_outside_brackets(relword[1], ";"):
                            row_src = row_src.strip()
                            if not row_src:
                                continue
                            if not (row_src.startswith("[") and row_src.endswith("]")):
                                _fail("relation rows are bracketed vectors", line_no)
                            comps = _split_outside_brackets(row_src[1:-1], ",")
                            if len(comps) != rank:
                                _fail(
                                    f"relation row has {len(comps)} components, rank is {rank}",
                                    line_no,
                                )
                            rows.append([parse_poly(c, line_no) for c in comps])
                    modules[name] = ModuleSpec(name, rank, rows, False)
                else:
                    _fail(f"unknown module kind {kind!r}", line_no)
            elif head == "ideal":
                toks = rest.split(None, 1)
                if not toks:
                    _fail("ideal needs a name", line_no)
                name = toks[0]
                if name in ideals or name in modules:
                    _fail(f"name {name!r} already defined", line_no)
                gens = []
                if len(toks) > 1 and toks[1].strip():
                    for part in _split_outside_brackets(toks[1], ","):
                        if part.strip() in ("", "0"):
                            continue
                        gens.append(graded_gen(parse_poly(part, line_no), "ideal", line_no))
                ideals[name] = gens
            else:  # task
                toks = rest.split()
                if not toks:
                    _fail("task needs an operation name", line_no)
                op = toks[0]
                args = {}
                for pair in toks[1:]:
                    if "=" not in pair:
                        _fail(f"task arguments look like key=value, got {pair!r}", line_no)
                    k, v = pair.split("=", 1)
                    args[k] = v
                for key in ("module", "m", "n"):
                    if key in args and args[key] not in modules:
                        _fail(f"undefined module {args[key]!r}", line_no)
                for key in ("a", "b", "i"):
                    if key in args and args[key] not in ideals:
                        _fail(f"undefined ideal {args[key]!r}", line_no)
                tasks.append({"op": op, "args": args})
        else:
            _fail(f"unknown directive {head!r}", line_no)
    if not saw_format:
        _fail("missing 'format 1' header", 1)
    if char is None or variables is None:
        _fail("session needs both char and vars", 1)
    return SessionFile(char, variables, order, quotient, modules, ideals, tasks)
