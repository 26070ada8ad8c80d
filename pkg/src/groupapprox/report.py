"""Structured text reports: one self-describing format for every command.

The format is a nested key-value tree with two-space indentation::

    groupapprox-report 1
    command: separate
    params:
      group: A4
      n: 8
    result:
      verdict: separated
      witness: none

Scalars are typed on load: integers, rationals written "p/q", booleans
"true"/"false", "none", everything else a string (double-quoted when it
would otherwise be mistyped).  Lists render as "- item" lines; a bare "-"
opens a nested mapping item.  Reports carry no timestamps, so identical
inputs produce byte-identical files.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ParseError
from .groups import FiniteGroup
from .perm import Permutation, cycle_string, parse_cycles

FORMAT_HEADER = "groupapprox-report"
FORMAT_VERSION = 1


def format_rational(value) -> str:
    f = Fraction(value)
    return f"{f.numerator}/{f.denominator}"


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if "/" in text:
        num, _, den = text.partition("/")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def _scalar_str(value) -> str:
    if value is None:
        return "none"
    if value is True:
        return "true"
    if value is False:
        return "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, Permutation):
        return cycle_string(value)
    if isinstance(value, str):
        if value in ("none", "true", "false", "[]", "{}") or _looks_typed(value) or (
            value != value.strip() or "\n" in value or value == ""
        ):
            return '"' + value.replace("\\", "\\\\").replace('"', '\\"') + '"'
        return value
    raise TypeError(f"cannot serialize {value!r} in a report")


def _looks_typed(text: str) -> bool:
    t = text.strip()
    if not t:
        return False
    try:
        int(t)
        return True
    except ValueError:
        pass
    if "/" in t:
        num, _, den = t.partition("/")
        try:
            int(num), int(den)
            return True
        except ValueError:
            pass
    return t.startswith('"')


def _parse_scalar(text: str):
    t = text.strip()
    if t.startswith('"'):
        if not t.endswith('"') or len(t) < 2:
            raise ParseError(f"unterminated string {t!r}")
        body = t[1:-1]
        return body.replace('\\"', '"').replace("\\\\", "\\")
    if t == "none":
        return None
    if t == "true":
        return True
    if t == "false":
        return False
    if t == "[]":
        return []
    if t == "{}":
        return {}
    try:
        return int(t)
    except ValueError:
        pass
    if "/" in t:
        num, _, den = t.partition("/")
        try:
            return Fraction(int(num), int(den))
        except ValueError:
            pass
    return t


def _dump_into(lines, data, indent):
    pad = "  " * indent
    for key, value in data.items():
        if isinstance(value, Permutation):
            lines.append(f"{pad}{key}: {_scalar_str(value)}")
        elif isinstance(value, dict):
            if value:
                lines.append(f"{pad}{key}:")
                _dump_into(lines, value, indent + 1)
            else:
                lines.append(f"{pad}{key}: {{}}")
        elif isinstance(value, (list, tuple)):
            if value:
                lines.append(f"{pad}{key}:")
                for item in value:
                    if isinstance(item, dict):
                        lines.append(f"{pad}  -")
                        _dump_into(lines, item, indent + 2)
                    else:
                        lines.append(f"{pad}  - {_scalar_str(item)}")
            else:
                lines.append(f"{pad}{key}: []")
        else:
            lines.append(f"{pad}{key}: {_scalar_str(value)}")


def dump_report(data: dict) -> str:
    lines = [f"{FORMAT_HEADER} {FORMAT_VERSION}"]
    _dump_into(lines, data, 0)
    return "\n".join(lines) + "\n"


def load_report(text: str, source=None) -> dict:
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty report", line=1, source=source)
    head = lines[0].split()
    if len(head) != 2 or head[0] != FORMAT_HEADER:
        raise ParseError("not a report file", line=1, source=source)
    if int(head[1]) != FORMAT_VERSION:
        raise ParseError(
            f"report format version {head[1]} unsupported", line=1, source=source
        )
    items = []
    for ln, raw in enumerate(lines[1:], start=2):
        if not raw.strip():
            continue
        indent = len(raw) - len(raw.lstrip(" "))
        if indent % 2:
            raise ParseError("odd indentation", line=ln, source=source)
        items.append((indent // 2, raw.strip(), ln))
    data, rest = _parse_block(items, 0, 0, source)
    if rest != len(items):
        raise ParseError("trailing content", line=items[rest][2], source=source)
    return data


def _parse_block(items, pos, level, source):
    out = {}
    while pos < len(items):
        depth, content, ln = items[pos]
        if depth < level:
            break
        if depth > level:
            raise ParseError("unexpected indentation", line=ln, source=source)
        if content.startswith("- ") or content == "-":
            raise ParseError("list item outside a list", line=ln, source=source)
        key, sep, rest = content.partition(":")
        if not sep:
            raise ParseError(f"expected 'key:' in {content!r}", line=ln, source=source)
        key = key.strip()
        rest = rest.strip()
        if rest:
            out[key] = _parse_scalar(rest)
            pos += 1
            continue
        # nested block: list when the first child is a dash
        pos += 1
        if pos < len(items) and items[pos][0] == level + 1 and (
            items[pos][1] == "-" or items[pos][1].startswith("- ")
        ):
            value, pos = _parse_list(items, pos, level + 1, source)
        else:
            value, pos = _parse_block(items, pos, level + 1, source)
        out[key] = value
    return out, pos


def _parse_list(items, pos, level, source):
    out = []
    while pos < len(items):
        depth, content, ln = items[pos]
        if depth < level:
            break
        if depth > level:
            raise ParseError("unexpected indentation", line=ln, source=source)
        if content == "-":
            sub, pos = _parse_block(items, pos + 1, level + 1, source)
            out.append(sub)
        elif content.startswith("- "):
            out.append(_parse_scalar(content[2:]))
            pos += 1
        else:
            break
    return out, pos


# --- domain object serialization ---------------------------------------------


def group_to_data(G: FiniteGroup) -> dict:
    data = {"name": G.name, "kind": G.kind, "degree": G.degree}
    if G.kind == "generated":
        data["generators"] = [cycle_string(g) for g in G.generators]
    if G.kind == "product":
        data["components"] = [group_to_data(c) for c in G.components]
    return data


def group_from_data(data: dict) -> FiniteGroup:
    kind = data["kind"]
    name = data.get("name")
    if kind == "symmetric":
        return FiniteGroup.symmetric(data["degree"], name=name)
    if kind == "alternating":
        return FiniteGroup.alternating(data["degree"], name=name)
    if kind == "generated":
        degree = data["degree"]
        gens = [parse_cycles(t, degree) for t in data.get("generators", [])]
        return FiniteGroup.generated(degree, gens, name=name)
    if kind == "product":
        return FiniteGroup.direct_product(
            [group_from_data(c) for c in data["components"]], name=name
        )
    raise ParseError(f"unknown group kind {kind!r}")


def length_table_to_data(ell) -> dict:
    """Standalone serialization of a length function as an explicit table."""
    return {
        "kind": "length-table",
        "group": group_to_data(ell.group),
        "values": {
            cycle_string(x): Fraction(v)
            for x, v in sorted(ell.table().items(), key=lambda kv: kv[0].sort_key())
        },
    }


def certificate_to_data(cert, verdict=None) -> dict:
    """Serialize an approximation certificate for later re-verification.

    When a verdict is supplied it is stored for audit; re-verification
    recomputes it from the rest of the data and flags disagreement.
    """
    from .approximation import Certificate, ConsequenceMode, MetricMode

    assert isinstance(cert, Certificate)
    window = cert.window
    names = window.names
    from .words import word_str

    data = {
        "kind": "approximation-certificate",
        "window": {
            "generators": " ".join(names),
            "words": [word_str(w, names) for w in window.words],
        },
        "target": group_to_data(cert.target),
        "images": [cycle_string(x) for x in cert.images],
    }
    if verdict is not None:
        data["verdict"] = "holds" if verdict else "fails"
    mode = cert.mode
    if isinstance(mode, ConsequenceMode):
        data["mode"] = {"type": "consequence", "depth": mode.depth}
    elif isinstance(mode, MetricMode):
        length = mode.length
        length_data = {"kind": length.kind}
        if length.kind == "cayley-conjugation":
            length_data["base"] = [
                cycle_string(x)
                for x in sorted(length.params["base"], key=lambda p: p.sort_key())
            ]
            length_data["scale"] = length.params["scale"]
        elif length.kind == "table":
            length_data["values"] = {
                cycle_string(x): Fraction(v) for x, v in sorted(
                    length.table().items(), key=lambda kv: kv[0].sort_key()
                )
            }
        data["mode"] = {
            "type": "metric",
            "epsilon": Fraction(mode.epsilon),
            "alpha": [Fraction(a) for a in mode.alpha],
            "length": length_data,
        }
    else:
        raise TypeError(f"unknown certificate mode {mode!r}")
    return data


def certificate_from_data(data: dict):
    from .approximation import Certificate, ConsequenceMode, MetricMode, window_from_texts
    from .lengths import cayley_conjugation_length, from_table, hamming

    if data.get("kind") != "approximation-certificate":
        raise ParseError("not an approximation certificate")
    names = tuple(data["window"]["generators"].split())
    window = window_from_texts(names, data["window"]["words"])
    target = group_from_data(data["target"])
    degree = target.degree
    images = tuple(parse_cycles(t, degree) for t in data["images"])
    mode_data = data["mode"]
    if mode_data["type"] == "consequence":
        mode = ConsequenceMode(depth=mode_data["depth"])
    elif mode_data["type"] == "metric":
        length_data = mode_data["length"]
        if length_data["kind"] == "hamming":
            ell = hamming(target)
        elif length_data["kind"] == "cayley-conjugation":
            base = [parse_cycles(t, degree) for t in length_data["base"]]
            ell = cayley_conjugation_length(target, base, length_data["scale"])
        elif length_data["kind"] == "table":
            values = {
                parse_cycles(k, degree): Fraction(v)
                for k, v in length_data["values"].items()
            }
            ell = from_table(target, values)
        else:
            raise ParseError(f"unknown length kind {length_data['kind']!r}")
        mode = MetricMode(
            length=ell,
            alpha=tuple(Fraction(a) for a in mode_data["alpha"]),
            epsilon=Fraction(mode_data["epsilon"]),
        )
    else:
        raise ParseError(f"unknown certificate mode {mode_data['type']!r}")
    return Certificate(window=window, target=target, images=images, mode=mode)


def sofic_certificate_to_data(cert) -> dict:
    from .words import word_str

    names = [f"g{i + 1}" for i in range(len(cert.images))]
    return {
        "kind": "sofic-certificate",
        "degree": cert.group_degree,
        "images": [cycle_string(x) for x in cert.images],
        "amplification": cert.amplification,
        "epsilon": cert.epsilon,
        "outside-word": word_str(cert.outside_word, names),
        "inside-words": [word_str(w, names) for w in cert.inside_words],
        "raw-outside-length": cert.raw_outside_length,
        "amplified-outside-length": cert.amplified_outside_length,
        "amplified-inside-lengths": list(cert.amplified_inside_lengths),
        "embedded": cert.embedded,
    }


def sofic_certificate_from_data(data: dict):
    from .approximation import SoficCertificate, SearchStats
    from .words import parse_word

    if data.get("kind") != "sofic-certificate":
        raise ParseError("not a sofic certificate")
    degree = data["degree"]
    images = tuple(parse_cycles(t, degree) for t in data["images"])
    names = [f"g{i + 1}" for i in range(len(images))]
    return SoficCertificate(
        group_degree=degree,
        images=images,
        amplification=data["amplification"],
        epsilon=Fraction(data["epsilon"]),
        outside_word=parse_word(data["outside-word"], names),
        inside_words=tuple(parse_word(t, names) for t in data["inside-words"]),
        raw_outside_length=Fraction(data["raw-outside-length"]),
        amplified_outside_length=Fraction(data["amplified-outside-length"]),
        amplified_inside_lengths=tuple(Fraction(v) for v in data["amplified-inside-lengths"]),
        stats=SearchStats(assignments=0, per_group=()),
        embedded=bool(data["embedded"]),
    )
