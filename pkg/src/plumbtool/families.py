"""Graph families built from fixture templates, and the claim harness.

Each family is a JSON template under ``fixtures/`` (see :mod:`.templates`).
:func:`generate` instantiates a template and re-checks the shape the family
is supposed to have, so a bad template fails loudly instead of quietly
producing the wrong graph.  :func:`verify_claims` evaluates the determinant
and boundary claims C1..C7 over a parameter range.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional, Sequence, Union

from .calculus import Verdict, reduce_to_normal_form, same_boundary
from .errors import DomainError, PlumbingError, TranscriptionError
from .form import graph_determinant, is_homology_sphere, is_negative_definite, is_unimodular
from .graph import PlumbingGraph, classify, is_isomorphic
from .seifert import brieskorn_plumbing, seifert_data_from_star
from .templates import instantiate, load_template

FixtureDir = Optional[Union[str, Path]]


class Family(enum.Enum):
    MARUYAMA_X = "MaruyamaX"
    MARUYAMA_X_PRIME = "MaruyamaXPrime"
    X_PRIME_TWO_PARAM = "XPrimeTwoParam"
    RAMANUJAM_W = "RamanujamW"
    CASSON_HARER_A = "CassonHarerA"
    CASSON_HARER_B = "CassonHarerB"
    FIG8_SIGMA_2_3_13 = "Fig8Sigma2_3_13"
    FIG8_SIGMA_2_3_25 = "Fig8Sigma2_3_25"


PARAM_NAMES: dict[Family, tuple[str, ...]] = {
    Family.MARUYAMA_X: ("n",),
    Family.MARUYAMA_X_PRIME: ("n",),
    Family.X_PRIME_TWO_PARAM: ("a", "b"),
    Family.RAMANUJAM_W: ("n",),
    Family.CASSON_HARER_A: ("p", "s"),
    Family.CASSON_HARER_B: ("p", "s"),
    Family.FIG8_SIGMA_2_3_13: (),
    Family.FIG8_SIGMA_2_3_25: (),
}


def parse_family(name: str) -> Family:
    for fam in Family:
        if fam.value.lower() == name.lower():
            return fam
    known = ", ".join(f.value for f in Family)
    raise DomainError(f"unknown family {name!r}; expected one of {known}")


@dataclass(frozen=True)
class FamilySpec:
    family: Family
    params: tuple[int, ...] = ()

    @classmethod
    def of(cls, family: Union[Family, str], *params: int) -> "FamilySpec":
        fam = family if isinstance(family, Family) else parse_family(family)
        return cls(fam, tuple(params))

    def env(self) -> dict[str, int]:
        return dict(zip(PARAM_NAMES[self.family], self.params))

    def __str__(self):
        args = ",".join(str(p) for p in self.params)
        return f"{self.family.value}({args})"


def check_domain(spec: FamilySpec) -> None:
    names = PARAM_NAMES[spec.family]
    if len(spec.params) != len(names):
        raise DomainError(f"{spec.family.value} takes {len(names)} parameter(s) {names}, got {len(spec.params)}")
    for x in spec.params:
        if not isinstance(x, int) or isinstance(x, bool):
            raise DomainError(f"parameters must be integers, got {x!r}")
    env = spec.env()
    fam = spec.family
    if fam in (Family.MARUYAMA_X, Family.MARUYAMA_X_PRIME, Family.RAMANUJAM_W):
        if env["n"] < 1:
            raise DomainError(f"{fam.value} needs n >= 1, got {env['n']}")
    elif fam is Family.X_PRIME_TWO_PARAM:
        if env["a"] < 1 or env["b"] < 1:
            raise DomainError(f"{fam.value} needs a, b >= 1, got {spec.params}")
    elif fam in (Family.CASSON_HARER_A, Family.CASSON_HARER_B):
        p, s = env["p"], env["s"]
        if p < 3 or p % 2 == 0:
            raise DomainError(f"{fam.value} needs odd p >= 3, got p = {p}")
        s_min = 2 if (fam is Family.CASSON_HARER_B and p >= 5) else 1
        if s < s_min:
            raise DomainError(f"{fam.value} needs s >= {s_min} for p = {p}, got s = {s}")


def _shape(g: PlumbingGraph) -> tuple[int, int]:
    c = classify(g)
    return len(c.node_ids), c.branch_count


def _postcheck(spec: FamilySpec, g: PlumbingGraph, fixtures: FixtureDir) -> None:
    fam = spec.family
    env = spec.env()

    def fail(msg):
        raise TranscriptionError(f"{spec}: {msg}")

    if len(g) == 0 or not g.is_connected():
        fail("template produced an empty or disconnected graph")
    if fam in (Family.MARUYAMA_X, Family.MARUYAMA_X_PRIME):
        # at n = 1 the second node loses an arm and the graph is a star
        want = (2, 5) if env["n"] >= 2 else (1, 3)
        if _shape(g) != want:
            fail(f"expected (nodes, branches) = {want}, got {_shape(g)}")
    elif fam is Family.X_PRIME_TWO_PARAM:
        want = (2, 5) if env["a"] >= 2 else (1, 3)
        if _shape(g) != want:
            fail(f"expected (nodes, branches) = {want}, got {_shape(g)}")
        if env["a"] == env["b"]:
            diag = generate(FamilySpec(Family.MARUYAMA_X_PRIME, (env["a"],)), fixtures)
            if not is_isomorphic(g, diag):
                fail("diagonal member is not isomorphic to the one-parameter family")
    elif fam is Family.RAMANUJAM_W:
        if _shape(g) != (3, 7):
            fail(f"expected 3 nodes and 7 branches, got {_shape(g)}")
    elif fam in (Family.CASSON_HARER_A, Family.CASSON_HARER_B):
        c = classify(g)
        if not (c.is_star or c.is_linear):
            fail("graph is not star-shaped")
        if not is_negative_definite(g):
            fail("graph is not negative definite")


def generate(spec: FamilySpec, fixtures: FixtureDir = None) -> PlumbingGraph:
    """Instantiate the family template for ``spec`` and check its shape.

    Raises DomainError for parameters outside the family's domain and
    TranscriptionError when the template yields the wrong shape.
    """
    check_domain(spec)
    template = load_template(spec.family.value, fixtures)
    g = instantiate(template, spec.env())
    _postcheck(spec, g, fixtures)
    return g


# ---------------------------------------------------------------------------
# Claim harness


@dataclass(frozen=True)
class ClaimReport:
    claim_id: str
    checked: str
    passed: bool
    witness: Optional[dict] = None
    note: str = ""
    data: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "claim": self.claim_id,
            "checked": self.checked,
            "pass": self.passed,
            "witness": self.witness,
            "note": self.note,
            "data": self.data,
        }


def _gen(fixtures: FixtureDir) -> Callable[..., PlumbingGraph]:
    def g(family: Family, *params: int) -> PlumbingGraph:
        return generate(FamilySpec(family, params), fixtures)

    return g


def expected_xprime_det(a: int, b: int) -> int:
    k = a - b - 1
    return (-1) ** (k % 2) * k * k


def claim_c1(bound: int, fixtures: FixtureDir = None) -> ClaimReport:
    gen = _gen(fixtures)
    zero, hs = [], []
    for a in range(1, bound + 1):
        for b in range(1, bound + 1):
            where = {"a": a, "b": b}
            try:
                g = gen(Family.X_PRIME_TWO_PARAM, a, b)
                d = graph_determinant(g)
            except PlumbingError as exc:
                return ClaimReport("C1", f"1 <= a, b <= {bound}", False, where, str(exc))
            if a > b and d != expected_xprime_det(a, b):
                note = f"det = {d}, expected {expected_xprime_det(a, b)}"
                return ClaimReport("C1", f"1 <= a, b <= {bound}", False, where, note)
            if (abs(d) == 1) != (a == b or a == b + 2):
                note = f"det = {d} disagrees with the homology-sphere condition"
                return ClaimReport("C1", f"1 <= a, b <= {bound}", False, where, note)
            if d == 0:
                zero.append([a, b])
            if abs(d) == 1:
                hs.append([a, b])
    data = {"det_zero": zero, "homology_spheres": hs}
    return ClaimReport("C1", f"1 <= a, b <= {bound}", True, None, "", data)


def claim_c2(bound: int, fixtures: FixtureDir = None) -> ClaimReport:
    gen = _gen(fixtures)
    for n in range(1, bound + 1):
        try:
            d = graph_determinant(gen(Family.MARUYAMA_X_PRIME, n))
        except PlumbingError as exc:
            return ClaimReport("C2", f"1 <= n <= {bound}", False, {"n": n}, str(exc))
        if d != -1:
            return ClaimReport("C2", f"1 <= n <= {bound}", False, {"n": n}, f"det = {d}")
    return ClaimReport("C2", f"1 <= n <= {bound}", True)


def claim_c3(bound: int, fixtures: FixtureDir = None) -> ClaimReport:
    """|det W(n)| = 1 with a sign that alternates with the parity of n."""
    gen = _gen(fixtures)
    dets = []
    for n in range(1, bound + 1):
        try:
            d = graph_determinant(gen(Family.RAMANUJAM_W, n))
        except PlumbingError as exc:
            return ClaimReport("C3", f"1 <= n <= {bound}", False, {"n": n}, str(exc))
        if abs(d) != 1:
            return ClaimReport("C3", f"1 <= n <= {bound}", False, {"n": n}, f"det = {d}")
        if dets and d != -dets[-1]:
            return ClaimReport("C3", f"1 <= n <= {bound}", False, {"n": n}, "sign does not alternate")
        dets.append(d)
    plus = "odd" if dets[0] == 1 else "even"
    return ClaimReport("C3", f"1 <= n <= {bound}", True, None, f"det = +1 for {plus} n", {"plus_parity": plus})


def claim_c4(bound: int, fixtures: FixtureDir = None) -> ClaimReport:
    gen = _gen(fixtures)
    for n in range(1, bound + 1):
        try:
            ok = is_homology_sphere(gen(Family.MARUYAMA_X, n))
        except PlumbingError as exc:
            return ClaimReport("C4", f"1 <= n <= {bound}", False, {"n": n}, str(exc))
        if not ok:
            return ClaimReport("C4", f"1 <= n <= {bound}", False, {"n": n}, "not unimodular")
    return ClaimReport("C4", f"1 <= n <= {bound}", True)


def claim_c5(bound: int = 1, fixtures: FixtureDir = None) -> ClaimReport:
    gen = _gen(fixtures)
    cases = [
        ("MaruyamaX(1)", lambda: gen(Family.MARUYAMA_X, 1), (2, 5, 7)),
        ("MaruyamaXPrime(1)", lambda: gen(Family.MARUYAMA_X_PRIME, 1), (3, 4, 5)),
        ("XPrimeTwoParam(1,1)", lambda: gen(Family.X_PRIME_TWO_PARAM, 1, 1), (3, 4, 5)),
    ]
    for name, make, exps in cases:
        try:
            v = same_boundary(make(), brieskorn_plumbing(*exps))
        except PlumbingError as exc:
            return ClaimReport("C5", "n = 1", False, {"graph": name}, str(exc))
        if v is not Verdict.SAME:
            note = f"{name} vs Sigma{exps}: {v.value}"
            return ClaimReport("C5", "n = 1", False, {"graph": name}, note)
    return ClaimReport("C5", "n = 1", True)


def casson_harer_range(bound: int) -> list[tuple[Family, int, int]]:
    """(family, p, s) for odd 3 <= p <= max(3, bound + 1) and 1 <= s <= bound."""
    out = []
    for fam in (Family.CASSON_HARER_A, Family.CASSON_HARER_B):
        for p in range(3, max(3, bound + 1) + 1, 2):
            for s in range(1, bound + 1):
                if fam is Family.CASSON_HARER_B and p >= 5 and s < 2:
                    continue
                out.append((fam, p, s))
    return out


def claim_c6(bound: int, fixtures: FixtureDir = None) -> ClaimReport:
    gen = _gen(fixtures)
    top = max(3, bound + 1)
    top -= 1 - top % 2
    checked = f"odd 3 <= p <= {top}, 1 <= s <= {bound}"
    for fam, p, s in casson_harer_range(bound):
        where = {"family": fam.value, "p": p, "s": s}
        try:
            ok = is_homology_sphere(gen(fam, p, s))
        except PlumbingError as exc:
            return ClaimReport("C6", checked, False, where, str(exc))
        if not ok:
            return ClaimReport("C6", checked, False, where, "not unimodular")
    return ClaimReport("C6", checked, True)


def claim_c7(bound: int = 1, fixtures: FixtureDir = None) -> ClaimReport:
    gen = _gen(fixtures)
    for fam, exps in ((Family.FIG8_SIGMA_2_3_13, (2, 3, 13)), (Family.FIG8_SIGMA_2_3_25, (2, 3, 25))):
        where = {"family": fam.value}
        try:
            g = gen(fam)
            if not is_unimodular(g):
                return ClaimReport("C7", "both fixtures", False, where, "not unimodular")
            if not is_negative_definite(g):
                return ClaimReport("C7", "both fixtures", False, where, "not negative definite")
            sd = seifert_data_from_star(g)
        except PlumbingError as exc:
            return ClaimReport("C7", "both fixtures", False, where, str(exc))
        if sd.multiplicities != exps or not sd.is_brieskorn():
            note = f"Seifert multiplicities {sd.multiplicities}, e = {sd.e}"
            return ClaimReport("C7", "both fixtures", False, where, note)
    return ClaimReport("C7", "both fixtures", True)


CLAIMS: dict[str, Callable[..., ClaimReport]] = {
    "C1": claim_c1,
    "C2": claim_c2,
    "C3": claim_c3,
    "C4": claim_c4,
    "C5": claim_c5,
    "C6": claim_c6,
    "C7": claim_c7,
}


def verify_claims(
    range_bound: int,
    fixtures: FixtureDir = None,
    claims: Optional[Sequence[str]] = None,
) -> list[ClaimReport]:
    """Evaluate the claims for parameters up to ``range_bound``.

    Failures are reported in the returned list, never raised.
    """
    if not isinstance(range_bound, int) or range_bound < 1:
        raise DomainError(f"range_bound must be a positive integer, got {range_bound!r}")
    ids = sorted(claims) if claims is not None else sorted(CLAIMS)
    unknown = [c for c in ids if c not in CLAIMS]
    if unknown:
        raise DomainError(f"unknown claim ids {unknown}")
    return [CLAIMS[c](range_bound, fixtures) for c in ids]


def normal_form(spec: FamilySpec, fixtures: FixtureDir = None) -> PlumbingGraph:
    return reduce_to_normal_form(generate(spec, fixtures)).final_graph
