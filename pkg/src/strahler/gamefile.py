"""Text format for parity games (PGSolver-compatible).

Grammar::

    file    := [header] record+
    header  := "parity" INT ";"
    record  := INT INT INT succs [name] ";"
    succs   := INT ("," INT)*
    name    := '"' characters-without-quote '"'

One record per vertex: id, priority, owner bit, successor list and an
optional quoted display name.  Owner bit 0 is the Even player, 1 the
Odd player.  Ids must be unique; they need not be dense or sorted, the
loader re-indexes by sorted id.  Priorities may exceed the even
ceiling; the game computes its ceiling as the least even upper bound.
"""

from __future__ import annotations

import re
from typing import List, Optional, Tuple

from .core import ParityGame, Player
from .errors import DanglingSuccessor, DuplicateId, GameSyntaxError, NoSuccessor

_HEADER_RE = re.compile(r"^\s*parity\s+(\d+)\s*;")
_RECORD_RE = re.compile(
    r"^\s*(\d+)\s+(\d+)\s+(\d+)(?:\s+([0-9][0-9,\s]*?))?\s*(?:\"([^\"]*)\")?\s*;"
)


def _line_col(text: str, pos: int) -> Tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    start = text.rfind("\n", 0, pos) + 1
    return line, pos - start + 1


def parse_game(text: str) -> ParityGame:
    """Parse a game file; diagnostics carry a 1-based line/column."""
    pos = 0
    m = _HEADER_RE.match(text)
    if m:
        pos = m.end()
    records: List[Tuple[int, int, int, List[int], Optional[str], int]] = []
    seen = {}
    while True:
        rest = text[pos:]
        if not rest.strip():
            break
        m = _RECORD_RE.match(rest)
        if not m:
            line, col = _line_col(text, pos + len(rest) - len(rest.lstrip()))
            raise GameSyntaxError("malformed record", line, col)
        vid = int(m.group(1))
        prio = int(m.group(2))
        owner_bit = int(m.group(3))
        line, col = _line_col(text, pos + m.start(1))
        if owner_bit not in (0, 1):
            raise GameSyntaxError(f"owner bit must be 0 or 1, got {owner_bit}", line, col)
        if vid in seen:
            raise DuplicateId(f"vertex {vid} defined twice", line, col)
        seen[vid] = True
        succ_text = m.group(4) or ""
        succs = [int(s) for s in succ_text.replace(",", " ").split()]
        if not succs:
            raise NoSuccessor(f"vertex {vid} has no successors", line, col)
        records.append((vid, prio, owner_bit, succs, m.group(5), line))
        pos += m.end()
    if not records:
        raise GameSyntaxError("no vertex records", 1, 1)
    ids = sorted(seen)
    index = {vid: i for i, vid in enumerate(ids)}
    owner = [Player.EVEN] * len(ids)
    priority = [0] * len(ids)
    succ: List[List[int]] = [[] for _ in ids]
    names: List[Optional[str]] = [None] * len(ids)
    any_name = False
    for vid, prio, owner_bit, succs, name, line in records:
        i = index[vid]
        owner[i] = Player(owner_bit)
        priority[i] = prio
        for s in succs:
            if s not in index:
                raise DanglingSuccessor(f"vertex {vid} names undefined successor {s}", line, 1)
        succ[i] = [index[s] for s in succs]
        names[i] = name
        any_name = any_name or name is not None
    return ParityGame.create(
        owner,
        priority,
        succ,
        names=[nm if nm is not None else "" for nm in names] if any_name else None,
    )


def write_game(game: ParityGame) -> str:
    """Render a game in the text format (dense sorted ids)."""
    lines = [f"parity {game.n - 1};"]
    for v in game.vertices:
        succs = ",".join(str(u) for u in game.succ[v])
        name = ""
        if game.names is not None and game.names[v]:
            name = f' "{game.names[v]}"'
        lines.append(f"{v} {game.priority[v]} {int(game.owner[v])} {succs}{name};")
    return "\n".join(lines) + "\n"
