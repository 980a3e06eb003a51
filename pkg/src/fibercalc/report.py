"""Report documents: canonical nested dicts with deterministic renderings.

Identical inputs (including seeds) must produce byte-identical output, so
every rendering sorts keys and never embeds timestamps, memory addresses or
hash-order-dependent text.
"""

from __future__ import annotations

import json


def render_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ": "), indent=1,
                      default=_fallback)


def _fallback(x):
    return repr(x)


def render_text(doc, indent=0) -> str:
    pad = "  " * indent
    if isinstance(doc, dict):
        lines = []
        for k in sorted(doc, key=str):
            v = doc[k]
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
        return "\n".join(lines)
    if isinstance(doc, list):
        lines = []
        for v in doc:
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}-")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {v}")
        return "\n".join(lines) if lines else f"{pad}(empty)"
    return f"{pad}{doc}"


def render(doc, fmt="text") -> str:
    if fmt == "structured":
        return render_json(doc) + "\n"
    return render_text(doc) + "\n"
