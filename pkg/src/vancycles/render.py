"""Plain-text rendering of JSON reports.

Hodge-Deligne diagrams become grids with p to the right and q upward.  A
cell reads "u+k~": u unipotent classes and k classes with eigenvalue
class alpha mod 1 != 0, which are listed below the grid.  Weighted spectra
become sums of [(alpha, w)] terms.
"""
from __future__ import annotations


def _is_diagram(v):
    return (isinstance(v, list) and v and all(isinstance(x, dict) for x in v)
            and all({"p", "q", "mult"} <= set(x) for x in v))


def _is_spectrum(v):
    return (isinstance(v, list) and v and all(isinstance(x, dict) for x in v)
            and all({"alpha", "w", "mult"} <= set(x) for x in v))


def diagram_grid(cells) -> list[str]:
    if not cells:
        return ["0"]
    uni: dict = {}
    other: dict = {}
    for c in cells:
        key = (c["p"], c["q"])
        if c.get("eig", "0") in ("0", 0):
            uni[key] = c["mult"]
        else:
            other.setdefault(key, []).append((c["eig"], c["mult"]))
    text = {}
    for key in set(uni) | set(other):
        parts = [str(uni[key])] if key in uni else []
        if key in other:
            n = sum(m for _, m in other[key] if isinstance(m, int))
            parts.append(f"{n}~")
        text[key] = "+".join(parts)
    ps = [p for p, _ in text]
    qs = [q for _, q in text]
    p_lo, p_hi, q_lo, q_hi = min(ps), max(ps), min(qs), max(qs)
    width = max(max(len(t) for t in text.values()), len(str(p_hi)), len(str(p_lo)))
    qw = max(len(str(q_lo)), len(str(q_hi)))
    lines = []
    for q in range(q_hi, q_lo - 1, -1):
        row = [text.get((p, q), ".").rjust(width) for p in range(p_lo, p_hi + 1)]
        lines.append(f"{str(q).rjust(qw)} | " + " ".join(row))
    lines.append(" " * qw + " +-" + "-" * ((width + 1) * (p_hi - p_lo + 1) - 1))
    lines.append(" " * qw + "   " + " ".join(str(p).rjust(width) for p in range(p_lo, p_hi + 1)))
    for key in sorted(other):
        eigs = ", ".join(e if m == 1 else f"{m}x{e}" for e, m in other[key])
        lines.append(f"~ at {key}: {eigs}")
    return lines


def spectrum_line(terms) -> str:
    if not terms:
        return "0"
    out = ""
    for i, t in enumerate(terms):
        m = t["mult"]
        body = f"[({t['alpha']},{t['w']})]"
        if isinstance(m, int):
            mag = abs(m)
            piece = body if mag == 1 else f"{mag}{body}"
            sign = "-" if m < 0 else "+"
        else:
            piece, sign = f"({m}){body}", "+"
        if i == 0:
            out = piece if sign == "+" else f"-{piece}"
        else:
            out += f" {sign} {piece}"
    return out


def render(obj, indent: int = 0) -> str:
    return "\n".join(_render(obj, indent)) + "\n"


def _render(obj, indent):
    pad = " " * indent
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if _is_diagram(v):
                lines.append(f"{pad}{k}:")
                lines += [pad + "  " + s for s in diagram_grid(v)]
            elif _is_spectrum(v):
                lines.append(f"{pad}{k}: {spectrum_line(v)}")
            elif isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines += _render(v, indent + 2)
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        if all(not isinstance(x, (dict, list)) for x in obj):
            lines.append(pad + ", ".join(_scalar(x) for x in obj))
        else:
            for i, x in enumerate(obj):
                lines.append(f"{pad}- [{i}]")
                lines += _render(x, indent + 2)
    else:
        lines.append(pad + _scalar(obj))
    return lines


def _scalar(v):
    if v is None:
        return "-"
    if v is True:
        return "yes"
    if v is False:
        return "no"
    if isinstance(v, (dict, list)):
        return "-"
    return str(v)
