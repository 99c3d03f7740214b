"""Command line front end: act, matrix, verify and hn.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from dataclasses import dataclass
from typing import Callable

from . import reps
from .braid_action import BraidWord, apply_word, words_act_equally
from .complex import ProjComplex, cone
from .homotopy import hom, reduce
from .reps import Check
from .ring import matrix_to_json
from .stability import (ChargeParams, HNError, basis_tau0, classical_class, classical_from_hn,
                        extriang_axiom_suite, hn, identity_cone_map, k0_class, positive_roots, psi_check,
                        sample_objects, sample_thin_triangles, stable_k0, stable_tau0, stable_tau_k,
                        thin_check)


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    n: int = 2
    charge_file: str | None = None
    seed: int = 0
    fmt: str = "text"
    samples: int = 100
    random: int = 50

    def __post_init__(self):
        if self.n < 2:
            raise UsageError("--n must be at least 2")

    def charges(self) -> ChargeParams:
        return ChargeParams.load(self.n, self.charge_file)

    def basis(self):
        return basis_tau0(self.n, self.charges())


# ---------------------------------------------------------------------------
# object expressions

_TOKEN = re.compile(r"\s*(?:(?P<num>-?\d+)|(?P<name>[A-Za-z][A-Za-z0-9]*(?:\^-?1)?)|(?P<punct>[(),]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise UsageError(f"unexpected character {text[pos:].lstrip()[:1]!r} at position {pos}")
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str, n: int):
        self.text, self.n = text, n
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("end", "", len(self.text))

    def take(self, kind=None, value=None):
        tok = self.peek()
        if (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind
            raise UsageError(f"expected {want!r} at position {tok[2]}, found {tok[1] or 'end of input'!r}")
        self.i += 1
        return tok

    def parse(self) -> ProjComplex:
        x = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise UsageError(f"trailing input at position {tok[2]}")
        return x

    def integer(self) -> int:
        return int(self.take("num")[1])

    def args(self, parse_one) -> list:
        self.take("punct", "(")
        out = [parse_one()]
        while self.peek()[1] == ",":
            self.take("punct", ",")
            out.append(parse_one())
        self.take("punct", ")")
        return out

    def item(self):
        tok = self.peek()
        if tok[0] == "num":
            return self.integer()
        if tok[0] == "name" and (self.i + 1 >= len(self.toks) or self.toks[self.i + 1][1] != "("):
            self.i += 1
            return ("letter", tok[1], tok[2])
        return self.expr()

    def expr(self) -> ProjComplex:
        kind, name, pos = self.take("name")
        args = self.args(self.item)
        try:
            return self._build(name, args, pos)
        except UsageError:
            raise
        except (ValueError, IndexError, RuntimeError) as exc:
            raise UsageError(f"{name}(...) at position {pos}: {exc}") from exc

    def _ints(self, name, args, count, pos):
        if len(args) not in count or not all(isinstance(a, int) for a in args):
            raise UsageError(f"{name} at position {pos} expects {' or '.join(map(str, count))} integers")
        return args

    def _build(self, name, args, pos) -> ProjComplex:
        n = self.n
        if name == "P":
            a = self._ints(name, args, (1, 2), pos)
            if len(a) == 1:
                return ProjComplex.projective(n, a[0])
            return stable_tau0(n, *a)
        if name == "Pk":
            k, i, j = self._ints(name, args, (3,), pos)
            return stable_tau0(n, i, j) if k % n == 0 else stable_tau_k(n, k % n, i, j)
        if name == "shift":
            if len(args) != 3 or not isinstance(args[0], ProjComplex):
                raise UsageError(f"shift at position {pos} expects (object, k, l)")
            return args[0].shift(int(args[1]), int(args[2]))
        if name == "sum":
            if not all(isinstance(a, ProjComplex) for a in args):
                raise UsageError(f"sum at position {pos} expects objects")
            out = args[0]
            for a in args[1:]:
                out = out.direct_sum(a)
            return out
        if name == "act":
            *letters, x = args
            if not isinstance(x, ProjComplex) or not all(isinstance(a, tuple) for a in letters):
                raise UsageError(f"act at position {pos} expects braid letters followed by an object")
            word = BraidWord.parse(",".join(a[1] for a in letters), n)
            return apply_word(word, x)
        if name == "cone":
            # cone(X, Y [, k, l [, index]]): cone of a basis map X -> Y{k}<l>
            if len(args) < 2 or not isinstance(args[0], ProjComplex) or not isinstance(args[1], ProjComplex):
                raise UsageError(f"cone at position {pos} expects (source, target[, k, l[, index]])")
            k, l, idx = (list(args[2:]) + [0, 0, 0])[:3]
            hs = hom(args[0], args[1], k, l)
            if not hs.dimension:
                raise UsageError(f"cone at position {pos}: no nonzero map in that degree")
            if not 0 <= idx < hs.dimension:
                raise UsageError(f"cone at position {pos}: map index {idx} out of range 0..{hs.dimension - 1}")
            return reduce(cone(hs.basis[idx]).cone)
        raise UsageError(f"unknown constructor {name!r} at position {pos}")


def parse_object(text: str, n: int) -> ProjComplex:
    return _Parser(text, n).parse()


def parse_word(text: str, n: int) -> BraidWord:
    try:
        return BraidWord.parse(text or "", n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


# ---------------------------------------------------------------------------
# verification suites


def _braid_relations(cfg: RunConfig) -> list[Check]:
    n = cfg.n
    objs = [ProjComplex.projective(n, j) for j in range(1, n + 1)]
    objs += [stable_tau0(n, *r) for r in positive_roots(n)]
    out = []
    for a in range(1, n + 1):
        w = BraidWord(n, ((a, 1), (a, -1)))
        out.append(Check(f"s{a} s{a}^-1 acts trivially", words_act_equally(w, BraidWord(n, ()), objs)))
        for b in range(a + 1, n + 1):
            if b == a + 1:
                w1, w2 = BraidWord(n, ((a, 1), (b, 1), (a, 1))), BraidWord(n, ((b, 1), (a, 1), (b, 1)))
            else:
                w1, w2 = BraidWord(n, ((a, 1), (b, 1))), BraidWord(n, ((b, 1), (a, 1)))
            out.append(Check(f"{w1} = {w2} on projectives and stables", words_act_equally(w1, w2, objs)))
    return out


def _identification(cfg: RunConfig) -> list[Check]:
    rng = random.Random(cfg.seed)
    system = reps.IdentificationSystem(cfg.n)
    out = []
    for t in range(cfg.random):
        w = reps.random_word(cfg.n, rng, 8, 1)
        beta = reps.random_word(cfg.n, rng, 4)
        c = system.check_word(w, beta)
        out.append(Check(f"#{t:03d} {c.name}", c.ok, c.detail))
    for t in range(10):
        beta = reps.random_word(cfg.n, rng, 6)
        l = rng.choice([-2, -1, 1, 2])
        c = system.check_gamma_independence(beta, l)
        out.append(Check(f"#{t:03d} {c.name}", c.ok, c.detail))
    return out


def _extriang(cfg: RunConfig) -> list[Check]:
    b = cfg.basis()
    tris = sample_thin_triangles(b, cfg.samples, cfg.seed)
    rep = extriang_axiom_suite(b, cfg.samples, cfg.seed, tris)
    out = [
        Check("sampled thin triangles", len(tris) >= cfg.samples and rep.precondition_violations == 0,
              f"{len(tris)} sampled, {rep.precondition_violations} not thin"),
        Check("ET1 closure", not [c for c in rep.counterexamples if c[0] == "ET1"], f"{rep.et1} checked"),
        Check("ET1 dual closure", not [c for c in rep.counterexamples if c[0] == "ET1op"],
              f"{rep.et1_dual} checked"),
        Check("ET4 closure", not [c for c in rep.counterexamples if c[0] == "ET4"],
              f"{rep.et4} checked, {rep.et4_split_fallback} with a split second triangle"),
    ]
    idcone = all(not thin_check(identity_cone_map(ProjComplex.projective(cfg.n, i)), b)
                 for i in range(1, cfg.n + 1))
    out.append(Check("identity cone triangle is not thin", idcone))
    steps = [t for t in tris if t.origin == "hn-step"]
    out.append(Check("HN step triangles are thin", bool(steps) and all(thin_check(t.f, b) for t in steps),
                     f"{len(steps)} steps"))
    return out


def _psi(cfg: RunConfig) -> list[Check]:
    b = cfg.basis()
    tris = sample_thin_triangles(b, cfg.samples, cfg.seed)
    rep = psi_check(tris, b)
    return [Check("psi additive per root", rep.aggregated_ok == rep.checked, f"{rep.aggregated_ok}/{rep.checked}"),
            Check("psi additive on refined stables", rep.refined_ok == rep.checked,
                  f"{rep.refined_ok}/{rep.checked}")]


def _k0(cfg: RunConfig) -> list[Check]:
    b = cfg.basis()
    n = cfg.n
    out = [Check("stable basis has n(n+1)/2 members", len(b.members) == n * (n + 1) // 2)]
    ok = True
    for r in positive_roots(n):
        for k in (-2, 0, 1):
            for l in (-1, 0, 3):
                ok &= k0_class(b.members[r].shift(k, l), b) == stable_k0(r, k, l)
    out.append(Check("k0 class of shifted stables is t^k q^l alpha", ok))
    objs = sample_objects(n, b, max(20, cfg.samples // 5), cfg.seed)
    bad = [x for x in objs if classical_from_hn(hn(x, b), b) != classical_class(x)]
    out.append(Check("classical K0 cross-check", not bad, f"{len(objs) - len(bad)}/{len(objs)}"))
    zero = reduce(cone(_identity(ProjComplex.projective(n, 1))).cone)
    out.append(Check("cone of the identity has zero class", k0_class(zero, b) == {}))
    return out


def _identity(x):
    from .complex import ChainMap
    return ChainMap.identity(x)


SUITES: dict[str, tuple[str, Callable[[RunConfig], list[Check]]]] = {
    "braid-relations": ("braid and far commutation relations of the twist functors", _braid_relations),
    "action-table": ("s_k^-1 ... s_1^-1 on the tau_0 stables",
                     lambda cfg: reps.verify_action_table(cfg.n)),
    "homgamma": ("P_tau0 of s_n^-1 ... s_1^-1", lambda cfg: [reps.verify_homgamma(cfg.n)]),
    "gammalkb": ("closed form of rho(s_n ... s_1)",
                 lambda cfg: reps.verify_lkb_relations(cfg.n) + reps.verify_gamma_lkb(cfg.n)),
    "mgamma": ("M_tau0 and its conjugation of rho(s_n ... s_1)", lambda cfg: reps.verify_mgamma(cfg.n)),
    "condgamma": ("M_tau0 rho(g~) M_tau0^-1 = P_tau0(g)", lambda cfg: reps.verify_condgamma(cfg.n)),
    "alphalemma": ("P_tau0(s_k^-1 ... s_1^-1) M_tau0 = M_tau_k rho(s_k ... s_1)",
                   lambda cfg: [reps.verify_alpha_lemma(cfg.n, k) for k in range(1, cfg.n + 1)]),
    "identification": ("M_{w tau} rho(w~) = P_tau(w) M_tau", _identification),
    "perm": ("alpha = 0 generalized permutation representation", lambda cfg: reps.verify_perm(cfg.n)),
    "extriang": ("ET1 and ET4 closure of thin triangles", _extriang),
    "psi": ("additivity of psi on thin triangles", _psi),
    "k0": ("freeness of the extriangulated K0", _k0),
}


def run_suite(name: str, cfg: RunConfig) -> tuple[str, list[Check]]:
    if name not in SUITES:
        raise UsageError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    anchor, fn = SUITES[name]
    return anchor, sorted(fn(cfg), key=lambda c: c.name)


# ---------------------------------------------------------------------------
# rendering


def _matrix_text(m, labels) -> str:
    cells = [[str(c) for c in row] for row in m]
    width = max([len(s) for row in cells for s in row] + [len(str(lab)) for lab in labels] + [1])
    head = " " * (width + 1) + " ".join(str(lab).rjust(width) for lab in labels)
    rows = [str(labels[i]).rjust(width) + " " + " ".join(s.rjust(width) for s in row)
            for i, row in enumerate(cells)]
    return "\n".join([head] + rows)


def _emit(cfg: RunConfig, payload: dict, text: str) -> None:
    if cfg.fmt == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def cmd_act(args, cfg: RunConfig) -> int:
    word = parse_word(args.word, cfg.n)
    x = parse_object(args.object, cfg.n)
    y = apply_word(word, x)
    _emit(cfg, {"word": str(word), "complex": y.to_json()}, y.describe())
    return 0


def cmd_matrix(args, cfg: RunConfig) -> int:
    n = cfg.n
    rep = args.rep
    labels = positive_roots(n)
    word = parse_word(args.word, n)
    extra = {}
    if rep == "lkb":
        m = reps.lkb_word(word)
    elif rep == "ptau":
        m, tgt = reps.ptau_matrix(word, cfg.basis())
        extra["target_basis"] = tgt.label
    elif rep == "perm":
        m = reps.perm_rep_word(word)
    elif rep == "burau":
        m = reps.burau_matrix(word)
        labels = list(range(1, n + 1))
    elif rep == "m0":
        m = reps.m_tau0(n)[0]
    elif rep == "mk":
        m = reps.m_tau_k(n, args.k % n)
    else:
        raise UsageError(f"unknown representation {rep!r}")
    payload = {"rep": rep, "n": n, "word": str(word), "labels": [str(r) for r in labels],
               "matrix": matrix_to_json(m), **extra}
    _emit(cfg, payload, _matrix_text(m, labels))
    return 0


def cmd_verify(args, cfg: RunConfig) -> int:
    anchor, checks = run_suite(args.suite, cfg)
    ok = all(c.ok for c in checks)
    payload = {"suite": args.suite, "n": cfg.n, "seed": cfg.seed, "anchor": anchor, "ok": ok,
               "checks": [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in checks]}
    lines = [f"suite {args.suite} (n={cfg.n}, seed={cfg.seed}) anchor: {anchor}"]
    lines += [f"{'PASS' if c.ok else 'FAIL'} {c.name}" + (f"  [{c.detail}]" if c.detail else "")
              for c in checks]
    lines.append(f"{sum(c.ok for c in checks)}/{len(checks)} passed")
    _emit(cfg, payload, "\n".join(lines))
    return 0 if ok else 1


def _fmt_stable(idx, k, l) -> str:
    return f"P{idx}{{{k}}}<{l}>"


def cmd_hn(args, cfg: RunConfig) -> int:
    b = cfg.basis()
    x = parse_object(args.object, cfg.n)
    r = hn(x, b)
    factors = [{"stable": list(idx), "k": k, "l": l, "phase": round(b.phase_value(idx, k, l), 6)}
               for idx, k, l in r.factors]
    k0 = {str(idx): str(c) for idx, c in sorted(r.k0.items())}
    payload = {"object": x.describe(), "factors": factors,
               "mass": {str(idx): m for idx, m in sorted(r.aggregated.items())},
               "mass_refined": [[list(idx), k, l, m] for (idx, k, l), m in sorted(r.refined.items())],
               "k0": k0}
    lines = [f"object: {x.describe()}"]
    lines += [f"  {_fmt_stable(f['stable'], f['k'], f['l'])}  phase {f['phase']:.6f}" for f in factors]
    lines.append("mass: " + ", ".join(f"{k}: {v}" for k, v in payload["mass"].items()))
    lines.append("K0: " + (" + ".join(f"({c})*a{idx}" for idx, c in k0.items()) or "0"))
    _emit(cfg, payload, "\n".join(lines))
    return 0


# ---------------------------------------------------------------------------
# entry point


class _ArgParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=2, help="rank: the braid group is B_{n+1}")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--charge-file", default=None, help="JSON charge vectors or 'default'")
    common.add_argument("--format", dest="fmt", choices=["text", "json"], default="text")

    p = _ArgParser(prog="zlkb", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_ArgParser)

    a = sub.add_parser("act", parents=[common], help="apply a braid word to an object")
    a.add_argument("--word", default="")
    a.add_argument("--object", required=True)

    m = sub.add_parser("matrix", parents=[common], help="print a representation matrix")
    m.add_argument("--rep", required=True, choices=["lkb", "ptau", "perm", "burau", "m0", "mk"])
    m.add_argument("--word", default="")
    m.add_argument("--k", type=int, default=1, help="index for --rep mk")

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("--suite", required=True, choices=list(SUITES))
    v.add_argument("--samples", type=int, default=100)
    v.add_argument("--random", type=int, default=50)

    h = sub.add_parser("hn", parents=[common], help="Harder-Narasimhan data of an object")
    h.add_argument("--object", required=True)
    return p


COMMANDS = {"act": cmd_act, "matrix": cmd_matrix, "verify": cmd_verify, "hn": cmd_hn}


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        cfg = RunConfig(n=args.n, charge_file=args.charge_file, seed=args.seed, fmt=args.fmt,
                        samples=getattr(args, "samples", 100), random=getattr(args, "random", 50))
        return COMMANDS[args.command](args, cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except HNError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
