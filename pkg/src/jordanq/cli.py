"""Command-line front end.

Documents are JSON; every matrix entry is a scalar string such as ``"3"``,
``"-1/2"`` or ``"1/2+1/3i"``, never a float.

Exit codes: 0 ok, 1 negative verdict, 2 parse error, 3 eigenvalue hint
needed, 4 bad hint.
"""

import argparse
import json
import random
import sys

from .errors import InvalidHint, ParseError, RequiresEigenvalueHint
from .jordan import JordanChain, jordan_decompose, jordan_matrix
from .linalg import ExactMatrix, rank
from .scalar import format_scalar, parse_scalar
from .similarity import fingerprint, similarity_transform

__all__ = [
    "DocumentError",
    "read_matrix_document",
    "matrix_document",
    "decomposition_document",
    "parse_structure",
    "generate_matrix",
    "cmd_decompose",
    "cmd_similar",
    "cmd_fingerprint",
    "cmd_generate",
    "cmd_verify",
    "main",
]

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_PARSE = 2
EXIT_NEEDS_HINT = 3
EXIT_BAD_HINT = 4


class DocumentError(ParseError):
    """A document is not valid JSON or has the wrong shape."""


# documents -----------------------------------------------------------------


def _matrix_from_strings(rows, n=None, what="matrix"):
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise DocumentError(f"{what} must be an array of arrays")
    if n is None:
        n = len(rows)
    if len(rows) != n or any(len(r) != n for r in rows):
        raise DocumentError(f"{what} must be {n}x{n}")
    return ExactMatrix([[parse_scalar(x) for x in r] for r in rows], n)


def _parse_hints(hints):
    if hints is None:
        return None
    if not isinstance(hints, list):
        raise DocumentError("eigenvalue_hints must be an array")
    return [parse_scalar(h) for h in hints]


def read_matrix_document(doc):
    """``(matrix, hints)`` from a parsed MatrixDocument."""
    if not isinstance(doc, dict) or "entries" not in doc:
        raise DocumentError("matrix document needs an 'entries' field")
    n = doc.get("n", len(doc["entries"]))
    if not isinstance(n, int) or n < 0:
        raise DocumentError("'n' must be a non-negative integer")
    A = _matrix_from_strings(doc["entries"], n, "entries")
    return A, _parse_hints(doc.get("eigenvalue_hints"))


def matrix_document(A, hints=None):
    doc = {"n": A.rows, "entries": A.to_strings()}
    if hints:
        doc["eigenvalue_hints"] = [format_scalar(h) for h in hints]
    return doc


def _vector_strings(v):
    return [format_scalar(x) for x in v]


def decomposition_document(d):
    return {
        "structure": {format_scalar(lam): sizes for lam, sizes in d.structure.items()},
        "J": d.J.to_strings(),
        "P": d.P.to_strings(),
        "chains": [
            {"lambda": format_scalar(c.lam), "vectors": [_vector_strings(v) for v in c.vectors]}
            for c in d.chains
        ],
        "verified": True,
    }


def _load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: invalid JSON ({exc.msg})", position=exc.pos) from exc


def _merge_hints(doc_hints, flag_hints):
    if doc_hints is None and flag_hints is None:
        return None
    return list(doc_hints or []) + list(flag_hints or [])


# generator -----------------------------------------------------------------


def parse_structure(text):
    """Parse ``{"2": [2, 1], "3": [1]}`` or the compact ``2:2,1;3:1``.

    Returns a list of ``(eigenvalue, [sizes...])`` in canonical order.
    """
    if isinstance(text, dict):
        raw = text
    elif text.lstrip().startswith("{"):
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"invalid structure JSON ({exc.msg})", position=exc.pos) from exc
        if not isinstance(raw, dict):
            raise DocumentError("structure must be a JSON object")
    else:
        raw = {}
        for part in text.split(";"):
            lam, sep, sizes = part.partition(":")
            if not sep:
                raise DocumentError(f"structure entry {part!r} lacks ':'")
            try:
                raw[lam.strip()] = [int(s) for s in sizes.split(",")]
            except ValueError as exc:
                raise DocumentError(f"bad block sizes in {part!r}") from exc
    out = {}
    for key, sizes in raw.items():
        lam = parse_scalar(key.strip())
        if not isinstance(sizes, list) or not sizes:
            raise DocumentError(f"block sizes for {key} must be a non-empty list")
        if not all(isinstance(s, int) and not isinstance(s, bool) and s > 0 for s in sizes):
            raise DocumentError(f"block sizes for {key} must be positive integers")
        if lam in out:
            raise DocumentError(f"eigenvalue {key} listed twice")
        out[lam] = sorted(sizes, reverse=True)
    if not out:
        raise DocumentError("structure is empty")
    return sorted(out.items())


def _unimodular(n, rng, bound=3):
    """``(S, S^-1)`` built from row operations ``row_i += c*row_j``.

    Operations that would push an entry of ``S`` outside ``[-bound, bound]``
    are skipped, so ``S`` stays small and ``det S = 1``.
    """
    S = [[int(i == j) for j in range(n)] for i in range(n)]
    Sinv = [row[:] for row in S]
    if n < 2:
        return S, Sinv
    for _ in range(4 * n * n):
        i, j = rng.sample(range(n), 2)
        c = rng.choice([-3, -2, -1, 1, 2, 3])
        new_row = [a + c * b for a, b in zip(S[i], S[j])]
        if max(abs(x) for x in new_row) > bound:
            continue
        S[i] = new_row
        # inverse gains the column operation col_j -= c*col_i on the right
        for row in Sinv:
            row[j] -= c * row[i]
    return S, Sinv


def generate_matrix(structure, seed):
    """``S J S^-1`` for the canonical ``J`` of ``structure`` and a seeded unimodular ``S``."""
    if isinstance(structure, (str, dict)):
        structure = parse_structure(structure)
    blocks = [(lam, s) for lam, sizes in structure for s in sorted(sizes, reverse=True)]
    J = jordan_matrix(blocks)
    rng = random.Random(seed)
    S, Sinv = _unimodular(J.rows, rng)
    S, Sinv = ExactMatrix(S), ExactMatrix(Sinv)
    if S @ Sinv != ExactMatrix.identity(J.rows):
        raise AssertionError("generator produced a wrong inverse")
    return S @ J @ Sinv


# commands -------------------------------------------------------------------


def cmd_decompose(doc, hints=None):
    A, doc_hints = read_matrix_document(doc)
    d = jordan_decompose(A, _merge_hints(doc_hints, hints))
    return decomposition_document(d), EXIT_OK


def cmd_fingerprint(doc, hints=None):
    A, doc_hints = read_matrix_document(doc)
    f = fingerprint(A, _merge_hints(doc_hints, hints))
    return {"n": A.rows, "fingerprint": f.to_json()}, EXIT_OK


def cmd_similar(doc_a, doc_b, hints=None):
    A, ha = read_matrix_document(doc_a)
    B, hb = read_matrix_document(doc_b)
    ha, hb = _merge_hints(ha, hints), _merge_hints(hb, hints)
    fa = fingerprint(A, ha)
    fb = fingerprint(B, hb)
    similar = A.shape == B.shape and fa == fb
    out = {
        "similar": similar,
        "fingerprints": {"a": fa.to_json(), "b": fb.to_json()},
        "transform": None,
    }
    if similar:
        out["transform"] = similarity_transform(A, B, ha, hb).to_strings()
    return out, EXIT_OK if similar else EXIT_NEGATIVE


def cmd_generate(structure, seed):
    A = generate_matrix(structure, seed)
    return matrix_document(A), EXIT_OK


def _check_decomposition(A, doc):
    n = A.rows
    for key in ("P", "J", "chains"):
        if key not in doc:
            raise DocumentError(f"decomposition document lacks {key!r}")
    P = _matrix_from_strings(doc["P"], n, "P")
    J = _matrix_from_strings(doc["J"], n, "J")
    chains = []
    for entry in doc["chains"]:
        try:
            lam = parse_scalar(entry["lambda"])
            vectors = [tuple(parse_scalar(x) for x in v) for v in entry["vectors"]]
        except (KeyError, TypeError) as exc:
            raise DocumentError("malformed chain entry") from exc
        if any(len(v) != n for v in vectors) or not vectors:
            raise DocumentError("chain vectors must be non-empty and of length n")
        chains.append(JordanChain(lam, vectors))

    if rank(P) != n:
        return "P is not invertible"
    if A @ P != P @ J:
        return "A P != P J"
    for i, c in enumerate(chains):
        if not c.satisfies(A):
            return f"chain {i} (lambda {format_scalar(c.lam)}) violates A x^j = lambda x^j + x^(j-1)"
    columns = [v for c in chains for v in c.vectors]
    if columns != P.columns():
        return "columns of P differ from the chain vectors"
    if J != jordan_matrix([(c.lam, len(c)) for c in chains]):
        return "J does not match the chain eigenvalues and lengths"
    if "structure" in doc:
        listed = {}
        for c in chains:
            listed.setdefault(format_scalar(c.lam), []).append(len(c))
        if doc["structure"] != listed:
            return "structure does not match the chains"
    return None


def cmd_verify(matrix_doc, decomposition_doc):
    A, _ = read_matrix_document(matrix_doc)
    failure = _check_decomposition(A, decomposition_doc)
    if failure is None:
        return {"verified": True}, EXIT_OK
    return {"verified": False, "failure": failure}, EXIT_NEGATIVE


# entry point ------------------------------------------------------------------


def _hint_list(text):
    return [parse_scalar(h.strip()) for h in text.split(",") if h.strip()]


def build_parser():
    parser = argparse.ArgumentParser(
        prog="jordanq", description="Exact Jordan forms and similarity over Q(i)."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="Jordan form A P = P J")
    p.add_argument("file")
    p.add_argument("--hints", type=str, default=None)

    p = sub.add_parser("similar", help="decide similarity and give a transform")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("--hints", type=str, default=None)

    p = sub.add_parser("fingerprint", help="rank sequences of (A - lam)^k")
    p.add_argument("file")
    p.add_argument("--hints", type=str, default=None)

    p = sub.add_parser("generate", help="random matrix with a given Jordan structure")
    p.add_argument("--spec", required=True, help='e.g. \'{"2": [2, 1], "3": [1]}\' or 2:2,1;3:1')
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("verify", help="re-check a decomposition document")
    p.add_argument("matrix_file")
    p.add_argument("decomposition_file")
    return parser


def run(args):
    hints = _hint_list(args.hints) if getattr(args, "hints", None) else None
    if args.command == "decompose":
        return cmd_decompose(_load_json(args.file), hints)
    if args.command == "fingerprint":
        return cmd_fingerprint(_load_json(args.file), hints)
    if args.command == "similar":
        return cmd_similar(_load_json(args.file_a), _load_json(args.file_b), hints)
    if args.command == "generate":
        return cmd_generate(args.spec, args.seed)
    if args.command == "verify":
        return cmd_verify(_load_json(args.matrix_file), _load_json(args.decomposition_file))
    raise AssertionError(args.command)


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        doc, code = run(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except RequiresEigenvalueHint as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NEEDS_HINT
    except InvalidHint as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_HINT
    json.dump(doc, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
