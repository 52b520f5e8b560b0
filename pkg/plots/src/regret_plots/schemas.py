"""Readers for the four documented harness CSV schemas.

Every mismatch raises SchemaError naming the offending column, so a file
from the wrong command (or a stale version) fails loudly instead of
producing a silently wrong figure.
"""

import csv


class SchemaError(ValueError):
    pass


def _optional(parse):
    # empty cells are legal only where the harness writes them
    def inner(s):
        return None if s == "" else parse(s)

    return inner


SCHEMAS = {
    "rates": [
        ("m", float),
        ("alpha", float),
        ("theta", float),
        ("minimax", float),
    ],
    "regimes": [
        ("run_id", int),
        ("regime", int),
        ("cells", int),
        ("length", int),
        ("regret", float),
        ("nu_mean", float),
    ],
    # summary_<env>.csv: the medzo row leaves alpha and kstar empty
    "appendix-e": [
        ("algo", str),
        ("alpha", _optional(float)),
        ("kstar", _optional(int)),
        ("final_mean", float),
        ("final_std", float),
        ("final_stderr", float),
        ("n", int),
    ],
    "hypotheses": [
        ("i", int),
        ("x", float),
        ("phi", float),
    ],
}


def read_table(path, kind):
    """Read path as a kind-schema CSV into a {column: list} dict.

    Raises SchemaError on a missing, unexpected, or reordered header
    column, a cell that does not parse, or a file with no data rows.
    """
    if kind not in SCHEMAS:
        raise ValueError(f"unknown schema kind '{kind}'")
    cols = SCHEMAS[kind]
    names = [c for c, _ in cols]
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header is None:
            raise SchemaError(f"{path}: empty file, expected header {','.join(names)}")
        for c in names:
            if c not in header:
                raise SchemaError(
                    f"{path}: missing column '{c}' (kind '{kind}' needs {','.join(names)})"
                )
        for c in header:
            if c not in names:
                raise SchemaError(f"{path}: unexpected column '{c}' for kind '{kind}'")
        if header != names:
            raise SchemaError(
                f"{path}: columns out of order, expected {','.join(names)}, got {','.join(header)}"
            )
        tab = {c: [] for c in names}
        for lineno, row in enumerate(reader, start=2):
            if len(row) != len(names):
                raise SchemaError(
                    f"{path}: line {lineno}: expected {len(names)} fields, got {len(row)}"
                )
            for (c, parse), cell in zip(cols, row):
                try:
                    tab[c].append(parse(cell))
                except ValueError:
                    raise SchemaError(
                        f"{path}: line {lineno}: bad value '{cell}' in column '{c}'"
                    ) from None
    if not tab[names[0]]:
        raise SchemaError(f"{path}: no data rows")
    return tab
