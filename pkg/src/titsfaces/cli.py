"""Command-line front end.

Input is a JSON system document (from a path or stdin), output a JSON report
on stdout.  Indices are 1-based on the wire, rationals are strings.
Exit codes: 0 success, 1 selftest mismatch, 2 invalid input, 3 a search bound
was exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Iterable, Sequence

from . import cartan, facial, golden
from . import exactla as ex
from . import realization as rz
from .imagcone import ImaginaryCone, dual_imaginary, k_theta
from .subcone import BuiltinTits, FinitePolyhedral, InfiniteGroup, NotAChain, NotComparable, NotInCrossSection, SubFace
from .titscone import NotFound, NotInChamber, NotSpecialFacial, TitsCone, facet_of, interior_test, normalize

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2
EXIT_BOUND = 3


class InputError(ValueError):
    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field
        self.message = message


# -- wire formats ---------------------------------------------------------------


def q(x: Fraction) -> str:
    return str(Fraction(x))


def qvec(v: Iterable[Fraction]) -> list[str]:
    return [q(x) for x in v]


def iset(J: Iterable[int]) -> list[int]:
    return sorted(i + 1 for i in J)


def set_key(J: Iterable[int]) -> tuple:
    s = sorted(J)
    return (len(s), s)


def _rational(x: Any, field: str) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise InputError(field, "expected a rational written as a string or an integer")
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError):
        raise InputError(field, f"cannot parse {x!r} as a rational") from None


def _rows(doc: dict, key: str, width: int) -> list[tuple[Fraction, ...]]:
    raw = doc.get(key) or []
    if not isinstance(raw, list):
        raise InputError(key, "expected a list of rows")
    out = []
    for r, row in enumerate(raw):
        if not isinstance(row, list) or len(row) != width:
            raise InputError(f"{key}[{r}]", f"expected a row of length {width}")
        out.append(tuple(_rational(x, f"{key}[{r}][{c}]") for c, x in enumerate(row)))
    return out


def parse_vector(text: str, dim: int, field: str) -> tuple[Fraction, ...]:
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) != dim:
        raise InputError(field, f"expected {dim} comma-separated rationals")
    return tuple(_rational(p.strip(), field) for p in parts)


def parse_indices(text: str, n: int, field: str) -> frozenset:
    body = text.strip().strip("{}")
    out = set()
    for p in body.split(","):
        p = p.strip()
        if not p:
            continue
        if not p.isdigit() or not 1 <= int(p) <= n:
            raise InputError(field, f"index {p!r} is not in 1..{n}")
        out.add(int(p) - 1)
    return frozenset(out)


def parse_word(text: str, n: int, field: str) -> list[int]:
    word = []
    for p in text.split(","):
        p = p.strip()
        if not p:
            continue
        if not p.isdigit() or not 1 <= int(p) <= n:
            raise InputError(field, f"letter {p!r} is not in 1..{n}")
        word.append(int(p) - 1)
    return word


def split_handle(text: str, field: str) -> tuple[str, str]:
    """``"{1,2}@3,1"`` -> ``("{1,2}", "3,1")``; a missing ``@`` means the identity."""
    head, _, word = text.partition("@")
    if not head.strip():
        raise InputError(field, "empty face label")
    return head, word


class System:
    """A parsed and validated input document."""

    def __init__(self, doc: Any):
        if not isinstance(doc, dict):
            raise InputError("$", "expected a JSON object")
        if "cartan" not in doc:
            raise InputError("cartan", "missing")
        raw = doc["cartan"]
        if not isinstance(raw, list) or not raw:
            raise InputError("cartan", "expected a nonempty square array")
        n = doc.get("n", len(raw))
        if not isinstance(n, int) or n != len(raw):
            raise InputError("n", "does not match the number of rows of cartan")
        A = _rows(doc, "cartan", n)
        try:
            self.g = cartan.validate(A)
        except cartan.NotGCM as err:
            raise InputError(f"cartan[{err.i}][{err.j}]", str(err)) from None
        L_h = _rows(doc, "L_h", n)
        L_alpha = _rows(doc, "L_alpha", n)
        d = doc.get("defect", 0)
        if not isinstance(d, int) or isinstance(d, bool) or d < 0:
            raise InputError("defect", "expected a nonnegative integer")
        try:
            self.rb = rz.build(self.g, L_h, L_alpha, d)
        except rz.RootBaseViolation as err:
            raise InputError("L_h", str(err)) from None
        except rz.CharacteristicError as err:
            field = "L_h" if "L_h" in str(err) else "L_alpha" if "L_alpha" in str(err) else "defect"
            raise InputError(field, str(err)) from None
        self.n = n
        self.generators = _rows(doc, "generators", self.rb.dim) if "generators" in doc else None
        self._tits: TitsCone | None = None
        self._imag: ImaginaryCone | None = None

    @property
    def tits(self) -> TitsCone:
        if self._tits is None:
            self._tits = TitsCone(self.rb)
        return self._tits

    @property
    def imag(self) -> ImaginaryCone:
        if self._imag is None:
            self._imag = ImaginaryCone(self.rb, self.tits)
        return self._imag

    def theta(self, text: str, field: str) -> frozenset:
        J = parse_indices(text, self.n, field)
        if J not in self.tits._special_set:
            raise InputError(field, f"{iset(J)} is not special facial")
        return J

    def element(self, text: str, field: str):
        return self.tits.W.from_word(parse_word(text, self.n, field))


# -- commands ---------------------------------------------------------------------


def cmd_classify(sys_: System, args) -> dict:
    cl = cartan.classify(sys_.g)
    return {"components": [{"indices": iset(K), "type": t} for K, t in cl.components]}


def _hasse_dot(name: str, nodes: list[str], covers: list[tuple[int, int]]) -> str:
    lines = [f"digraph {name} {{"]
    lines += [f'  n{k} [label="{label}"];' for k, label in enumerate(nodes)]
    lines += [f"  n{a} -> n{b};" for a, b in covers]
    lines.append("}")
    return "\n".join(lines) + "\n"


def _set_covers(sets: list[frozenset]) -> list[tuple[int, int]]:
    """Hasse edges of ``sets`` ordered by inclusion."""
    out = []
    for a, A in enumerate(sets):
        for b, B in enumerate(sets):
            if A < B and not any(A < C < B for C in sets):
                out.append((a, b))
    return out


def _fmt_set(J) -> str:
    return "{" + ",".join(map(str, iset(J))) + "}"


def cmd_facial(sys_: System, args) -> dict | str:
    rb = sys_.rb
    fam = sys_.tits.family
    if args.action in ("list", "special"):
        sets = fam.all_facial if args.action == "list" else fam.special_facial
        ordered = sorted(sets, key=set_key)
        if args.dot:
            return _hasse_dot("facial", [_fmt_set(J) for J in ordered], _set_covers(ordered))
        return {"count": len(ordered), "sets": [iset(J) for J in ordered]}
    if args.action == "test":
        J = parse_indices(args.arg, sys_.n, "J")
        return {"set": iset(J), "facial": facial.is_facial(rb, J), "special": cartan.is_special(rb.g, J)}
    if args.action == "closure":
        L = parse_indices(args.arg, sys_.n, "L")
        return {"set": iset(L), "closure": iset(facial.facial_closure(rb, L))}
    if args.action == "arrangement":
        signs = sorted(facial.sign_vectors(rb), reverse=True)
        return {
            "relation_dim": rb.L_h.dim,
            "count": len(signs),
            "sign_vectors": ["".join("+" if x > 0 else "-" if x < 0 else "0" for x in s) for s in signs],
        }
    raise InputError("action", f"unknown facial action {args.action!r}")


def _tits_face(sys_: System, text: str, field: str):
    head, word = split_handle(text, field)
    return sys_.tits.face(sys_.theta(head, field), sys_.element(word, field))


def cmd_tits(sys_: System, args) -> dict:
    T = sys_.tits
    if args.action == "face":
        head = args.arg if args.arg is not None else "{}"
        f = _tits_face(sys_, head if "@" in head else head + "@" + (args.sigma or ""), "face")
        return T.describe(f)
    if args.action in ("meet", "join"):
        if args.arg is None or args.arg2 is None:
            raise InputError("faces", "two face labels are required")
        f1 = _tits_face(sys_, args.arg, "face1")
        f2 = _tits_face(sys_, args.arg2, "face2")
        m, j = T.meet_join(f1, f2)
        out = m if args.action == "meet" else j
        return {"faces": [f1.label(), f2.label()], "result": out.label(), **T.describe(out)}
    if args.action in ("normalize", "interior"):
        if args.arg is None:
            raise InputError("covector", "a covector is required")
        lam = parse_vector(args.arg, sys_.rb.dim, "covector")
        sigma, mu = normalize(T.W, lam, args.cap)
        J = facet_of(sys_.rb, mu)
        if args.action == "normalize":
            face = T.face_of_point(lam, args.cap)
            return {"sigma": sigma.word1(), "chamber_point": qvec(mu), "facet": iset(J), "face": face.label()}
        return {"covector": qvec(lam), "facet": iset(J), "interior": interior_test(sys_.rb, mu)}
    raise InputError("action", f"unknown tits action {args.action!r}")


def _cone_doc(K: ex.PolyCone) -> dict:
    return {
        "dim": K.dim,
        "generators": [qvec(v) for v in sorted(K.generators)],
        "lineality": [qvec(v) for v in K.lineality],
    }


def cmd_imaginary(sys_: System, args) -> dict:
    Z = sys_.imag
    if args.action == "k":
        return _cone_doc(Z.K)
    if args.action == "k-theta":
        theta = parse_indices(args.arg or "", sys_.n, "theta")
        kt = k_theta(sys_.rb, theta)
        out = {"theta": iset(theta), "nonempty": kt.nonempty}
        if kt.nonempty:
            out["interior_point"] = qvec(kt.interior_point(sys_.rb))
        return out
    if args.action == "face":
        head = args.arg if args.arg is not None else "{}"
        t = _tits_face(sys_, head if "@" in head else head + "@" + (args.sigma or ""), "face")
        return Z.describe(Z.from_tits(t))
    if args.action in ("meet", "join"):
        if args.arg is None or args.arg2 is None:
            raise InputError("faces", "two face labels are required")
        f1 = Z.from_tits(_tits_face(sys_, args.arg, "face1"))
        f2 = Z.from_tits(_tits_face(sys_, args.arg2, "face2"))
        m, j = Z.meet_join(f1, f2)
        out = m if args.action == "meet" else j
        return {"faces": [f1.label(), f2.label()], "result": out.label(), **Z.describe(out)}
    if args.action == "dual":
        return _cone_doc(dual_imaginary(sys_.rb))
    raise InputError("action", f"unknown imaginary action {args.action!r}")


def _subcone(sys_: System):
    if sys_.generators is None:
        return BuiltinTits(sys_.rb, sys_.tits)
    try:
        return FinitePolyhedral(sys_.rb, sys_.generators)
    except InfiniteGroup as err:
        raise InputError("cartan", str(err)) from None
    except NotInChamber as err:
        raise InputError("generators", str(err)) from None


def _cross_section_item(Y, R) -> str:
    return R if isinstance(R, int) else Y.label_of(R)


def _parse_R(Y, text: str, field: str):
    text = text.strip()
    if isinstance(Y, FinitePolyhedral):
        body = text[1:] if text[:1] in ("F", "f") else text
        if not body.isdigit() or int(body) not in Y.upsilon():
            raise InputError(field, f"{text!r} is not a cross-section face")
        return int(body)
    body = text[1:] if text[:1] in ("R", "r") else text
    J = parse_indices(body, Y.W.g.n, field)
    if J not in Y.tits._special_set:
        raise InputError(field, f"{iset(J)} is not special facial")
    return J


def _parse_subface(sys_: System, Y, text: str, field: str) -> SubFace:
    head, word = split_handle(text, field)
    return Y.face(_parse_R(Y, head, field), sys_.element(word, field))


def _types_doc(Y, R) -> dict:
    t = Y.types(R)
    return {
        "face": Y.label_of(R),
        "dim": Y.dim_of(R),
        "lower": iset(t.lower),
        "upper": iset(t.upper),
        "full": iset(t.full),
    }


def _ups_sorted(Y) -> list:
    return sorted(Y.upsilon(), key=lambda R: (Y.dim_of(R), Y.label_of(R)))


def _ups_covers(Y, ups: list) -> list[tuple[int, int]]:
    out = []
    for a, R1 in enumerate(ups):
        for b, R2 in enumerate(ups):
            if a != b and Y.upsilon_leq(R1, R2):
                if not any(c not in (a, b) and Y.upsilon_leq(R1, R3) and Y.upsilon_leq(R3, R2) for c, R3 in enumerate(ups)):
                    out.append((a, b))
    return out


def cmd_subcone(sys_: System, args) -> dict | str:
    Y = _subcone(sys_)
    kind = "polyhedral" if isinstance(Y, FinitePolyhedral) else "tits"
    ups = _ups_sorted(Y)
    if args.action in ("build", "cross-section"):
        if args.dot:
            return _hasse_dot("crosssection", [Y.label_of(R) for R in ups], _ups_covers(Y, ups))
        out: dict = {"kind": kind, "cross_section_size": len(ups)}
        if isinstance(Y, FinitePolyhedral):
            out["faces"] = Y.num_faces
            out["group_order"] = len(Y.elements)
            out["dim"] = Y.cone.dim
        out["faithful"] = Y.is_faithful()
        out["cross_section"] = [Y.label_of(R) for R in ups]
        if args.action == "cross-section":
            out["covers"] = [[Y.label_of(ups[a]), Y.label_of(ups[b])] for a, b in _ups_covers(Y, ups)]
        return out
    if args.action == "typemap":
        return {"kind": kind, "types": [_types_doc(Y, R) for R in ups]}
    if args.action == "renner-mul":
        if args.arg is None or args.arg2 is None:
            raise InputError("elements", "two monoid elements 'word:face' are required")
        xs = []
        for field, text in (("element1", args.arg), ("element2", args.arg2)):
            word, sep, face = text.partition(":")
            if not sep:
                raise InputError(field, "expected 'word:face'")
            xs.append(Y.renner(sys_.element(word, field), _parse_subface(sys_, Y, face, field)))
        z = Y.renner_mul(*xs)
        return {
            # sigma is only determined modulo the pointwise stabilizer of the face
            "product": {"kappa": z.kappa.word1(), "sigma": Y.renner_sigma(z).word1(), "face": Y.label(z.face)},
            "idempotent": Y.is_idempotent(z),
            "unit": Y.is_unit(z),
        }
    if args.action == "interval":
        if args.arg is None or args.arg2 is None:
            raise InputError("faces", "two cross-section faces are required")
        R1 = _parse_R(Y, args.arg, "face1")
        R2 = _parse_R(Y, args.arg2, "face2")
        J = Y.interval_index_set(R1, R2)
        lower, middle, full = Y.interval_stabilizer_bounds(R1, R2)
        out = {
            "interval": [Y.label_of(R1), Y.label_of(R2)],
            "index_set": iset(J),
            "pointwise_lower_bound": iset(lower),
            "middle": iset(middle),
            "setwise": iset(full),
        }
        if isinstance(Y, FinitePolyhedral):
            data = Y.interval(R1, R2)
            L = data.middle_components()
            out["members"] = [Y.label_of(f) for f in data.members]
            out["middle_components"] = None if L is None else iset(L)
            out["violations"] = data.check()
        return out
    if args.action == "chains":
        if args.arg is None:
            chains = Y.saturated_chains()
            return {"saturated_chains": [[Y.label_of(R) for R in c] for c in chains], "violations": Y.check_saturated_chains()}
        chain = [_parse_subface(sys_, Y, t, f"chain[{k}]") for k, t in enumerate(args.arg.split(";"))]
        sigma, S = Y.chain_normalize(chain)
        return {"sigma": sigma.word1(), "cross_section_chain": [Y.label_of(R) for R in S]}
    if args.action == "check-dimc":
        if not isinstance(Y, FinitePolyhedral):
            raise InputError("generators", "check-dimc needs a polyhedral subcone")
        out = {"faithful": Y.is_faithful()}
        if Y.is_faithful():
            out["contains_minus_dual_imaginary"] = Y.contains_dual_imaginary()
        out["orbit_hull_violations"] = [m for s in Y.S for m in Y.check_orbit_hull(s)]
        return out
    raise InputError("action", f"unknown subcone action {args.action!r}")


def selftest() -> tuple[bool, dict]:
    """Golden facial data plus the affine A1 imaginary cone."""
    results = {}
    ok = True
    for case in golden.CASES:
        fam = facial.enumerate_facial(case.root_base())
        checks = {
            "special_count": len(fam.special_facial) == case.n_special,
            "facial_count": len(fam.all_facial) == case.n_facial,
            "special_list": frozenset(fam.special_facial) == case.special_zero_based(),
        }
        results[f"case_{case.name}"] = checks
        ok &= all(checks.values())
    rb = rz.build(cartan.validate(golden.AFFINE_A1), (), golden.AFFINE_A1_ROOT_RELATION)
    Z = ImaginaryCone(rb)
    expected = ex.PolyCone.from_generators(rb.dim, [ex.add(rb.hvecs[0], rb.hvecs[1])])
    checks = {"K_is_ray": Z.K == expected, "ray_in_Z": Z.membership_Z(ex.add(rb.hvecs[0], rb.hvecs[1]), 3) is True}
    results["affine_A1"] = checks
    ok &= all(checks.values())
    return ok, results


# -- driver -------------------------------------------------------------------------

COMMANDS = {
    "classify": (cmd_classify, ()),
    "facial": (cmd_facial, ("list", "special", "test", "closure", "arrangement")),
    "tits": (cmd_tits, ("face", "meet", "join", "normalize", "interior")),
    "imaginary": (cmd_imaginary, ("k", "k-theta", "face", "meet", "join", "dual")),
    "subcone": (cmd_subcone, ("build", "cross-section", "typemap", "renner-mul", "interval", "chains", "check-dimc")),
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="titsfaces", description="Faces of Tits cones, imaginary cones and invariant subcones.")
    p.add_argument("--dot", action="store_true", help="emit a DOT digraph for lattice listings")
    p.add_argument("--depth", type=int, default=3, help="word-length bound for searches")
    p.add_argument("--cap", type=int, default=1000, help="step cap for moving points into the chamber")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("selftest", help="run the golden checks")
    sub.add_parser("classify", help="components of the Cartan matrix").add_argument("system", nargs="?", default="-")
    for name, (_, actions) in COMMANDS.items():
        if name == "classify":
            continue
        sp = sub.add_parser(name)
        sp.add_argument("action", choices=actions)
        sp.add_argument("system", help="system JSON file, '-' for stdin")
        sp.add_argument("arg", nargs="?")
        sp.add_argument("arg2", nargs="?")
        sp.add_argument("--sigma", help="group element as a 1-based word, e.g. 1,2,1")
    return p


def _emit(out, doc) -> None:
    if isinstance(doc, str):
        out.write(doc)
    else:
        out.write(json.dumps(doc, indent=2, sort_keys=False) + "\n")


def _load(path: str, stdin) -> Any:
    try:
        text = stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as err:
        raise InputError("system", str(err)) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise InputError("system", f"invalid JSON: {err}") from None


def run(argv: Sequence[str] | None = None, stdout=None, stdin=None) -> int:
    stdout = stdout or sys.stdout
    stdin = stdin or sys.stdin
    args = build_parser().parse_args(argv)
    if args.command == "selftest":
        ok, results = selftest()
        _emit(stdout, {"command": "selftest", "passed": ok, "results": results})
        return EXIT_OK if ok else EXIT_MISMATCH
    try:
        system = System(_load(args.system, stdin))
        handler = COMMANDS[args.command][0]
        if args.command == "classify":
            args.action = None
        result = handler(system, args)
    except InputError as err:
        _emit(stdout, {"error": err.message, "field": err.field})
        return EXIT_INPUT
    except (NotSpecialFacial, NotInChamber, NotInCrossSection, NotComparable, NotAChain) as err:
        _emit(stdout, {"error": str(err), "field": "arguments"})
        return EXIT_INPUT
    except (NotFound, facial.DimensionBound) as err:
        _emit(stdout, {"error": str(err), "bound": args.cap if isinstance(err, NotFound) else None})
        return EXIT_BOUND
    if isinstance(result, str):
        _emit(stdout, result)
    else:
        echo = {"command": args.command}
        if args.action:
            echo["action"] = args.action
        _emit(stdout, {**echo, "result": result})
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
