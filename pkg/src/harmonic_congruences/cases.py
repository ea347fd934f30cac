"""Registry of congruence cases and the report record.

Each case family knows its modulus, its applicability predicate and how to
evaluate both sides on a ``PrimeContext`` with the O(p) kernels. The exact
rational counterparts live in :mod:`harmonic_congruences.oracle`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import comb
from typing import Callable, Iterable, Optional, Sequence

from .exact import s_coefficient
from .residues import Residue
from .sums import PairSum, SingleSum, TripleSum, evaluate_sum, rhs_bernoulli_multiple
from .tables import PrimeContext

Spec = SingleSum | PairSum | TripleSum
Combo = tuple[tuple[int, Spec], ...]


# --- report ---------------------------------------------------------------

PASS, FAIL, SKIP = "pass", "fail", "skip"


@dataclass(frozen=True)
class CongruenceReport:
    """Outcome of one (prime, case, params) check.

    ``skip_reason`` also carries the reason for a fail that came from an error
    or an oracle disagreement; plain lhs != rhs fails leave it empty.
    """

    prime: int
    case: str
    params: tuple[tuple[str, int], ...]
    modulus: int
    lhs: Optional[int]
    rhs: Optional[int]
    verdict: str
    skip_reason: str = ""
    micros: int = 0

    @property
    def params_text(self) -> str:
        return ",".join(f"{k}={v}" for k, v in self.params)

    @property
    def label(self) -> str:
        return case_label(self.case, self.params)

    def sort_key(self):
        return (self.prime, self.case, tuple(v for _, v in self.params))

    def same_outcome(self, other: CongruenceReport) -> bool:
        return (self.lhs, self.rhs, self.verdict, self.modulus) == (
            other.lhs,
            other.rhs,
            other.verdict,
            other.modulus,
        )


def case_label(case_id: str, params) -> str:
    if not params:
        return case_id
    return f"{case_id}(" + ",".join(f"{k}={v}" for k, v in params) + ")"


# --- cases ----------------------------------------------------------------


@dataclass(frozen=True)
class CongruenceCase:
    id: str
    params: tuple[tuple[str, int], ...]
    modulus_exponent: int
    skip_reason: Callable[[int], Optional[str]]
    lhs_fn: Callable[[PrimeContext], Residue]
    rhs_fn: Callable[[PrimeContext], Residue]
    anchor: str
    orders: frozenset[int]
    oracle_cap: Optional[int] = None
    rhs_shift: int = 0
    specs: tuple = ()

    @property
    def label(self) -> str:
        return case_label(self.id, self.params)

    @property
    def param_dict(self) -> dict[str, int]:
        return dict(self.params)

    def applicable(self, p: int) -> bool:
        return self.skip_reason(p) is None

    def modulus_for(self, ctx: PrimeContext):
        return ctx.mod2 if self.modulus_exponent == 2 else ctx.mod1

    def lhs(self, ctx: PrimeContext) -> Residue:
        return _to(self.lhs_fn(ctx), self.modulus_for(ctx))

    def rhs(self, ctx: PrimeContext) -> Residue:
        return _to(self.rhs_fn(ctx), self.modulus_for(ctx)) + self.rhs_shift

    def corrupted(self, shift: int = 1) -> CongruenceCase:
        """Test hook: the same case with its right-hand side moved by ``shift``."""
        return replace(self, rhs_shift=self.rhs_shift + shift)


def _to(r: Residue, mod) -> Residue:
    return r if r.modulus == mod else r.reduce_to(mod)


def _combo(terms: Combo) -> Callable[[PrimeContext], Residue]:
    def f(ctx):
        acc = ctx.mod2(0)
        for c, spec in terms:
            acc = acc + evaluate_sum(ctx, spec) * c
        return acc

    return f


def _bern(coeff, offset: int, p_factor: int, exponent: int):
    def f(ctx):
        return rhs_bernoulli_multiple(ctx, coeff, offset, p_factor, exponent)

    return f


def _zero(ctx):
    return ctx.mod2(0)


def _orders_of(*combos: Combo) -> frozenset[int]:
    out = {1}
    for combo in combos:
        for _, spec in combo:
            if isinstance(spec, SingleSum):
                if spec.power:
                    out.add(spec.power)
                if spec.h_exp:
                    out.add(spec.order)
            elif isinstance(spec, PairSum):
                out.update(x for x in (spec.a, spec.b) if x)
    return frozenset(out)


def _always(p):
    return None


def _make(id, modexp, lhs, rhs=None, *, bern=None, params=(), skip=_always, orders=None,
          oracle_cap=None):
    """Assemble a case. ``lhs``/``rhs`` are combos or callables; ``bern`` = (coeff, offset, p_factor)."""
    combos = []
    if isinstance(lhs, tuple):
        combos.append(lhs)
        lhs = _combo(lhs)
    if bern is not None:
        rhs = _bern(*bern, modexp)
    elif rhs is None:
        rhs = _zero
    elif isinstance(rhs, tuple):
        combos.append(rhs)
        rhs = _combo(rhs)
    return CongruenceCase(
        id=id,
        params=tuple(params),
        modulus_exponent=modexp,
        skip_reason=skip,
        lhs_fn=lhs,
        rhs_fn=rhs,
        anchor="",
        orders=frozenset(orders) if orders is not None else _orders_of(*combos),
        oracle_cap=oracle_cap,
        specs=tuple(spec for combo in combos for _, spec in combo),
    )


S, P, T = SingleSum, PairSum, TripleSum


def one(spec: Spec) -> Combo:
    return ((1, spec),)


# --- custom kernels -------------------------------------------------------


def _powmod_lhs(n):
    def f(ctx):
        p = ctx.p
        return ctx.mod1(sum(pow(k, n, p) for k in range(1, p)))

    return f


def _powmod_rhs(n):
    def f(ctx):
        return ctx.mod1(-1 if n % (ctx.p - 1) == 0 else 0)

    return f


def _hsym_lhs(ctx):
    """Number of k in 1..p-1 with H_{p-k} = H_k - 1/k mod p."""
    p, h, inv = ctx.p, ctx.harmonic_table(1), ctx.inv
    hits = sum(1 for k in range(1, p) if (h[p - k] - h[k] + inv[k]) % p == 0)
    return ctx.mod1(hits)


def _hsym_rhs(ctx):
    return ctx.mod1(ctx.p - 1)


def _zs_side(base_of_x: Callable[[int, int], int]):
    def f(ctx, x):
        table = ctx.geometric(base_of_x(x, ctx.p))
        return evaluate_sum(ctx, TripleSum(weight=table, strict=True))

    return f


_zs_lhs = _zs_side(lambda x, p: 1 - x)
_zs_rhs = _zs_side(lambda x, p: x)


def _s2_rhs(ctx):
    return ctx.mod2(-ctx.p if ctx.p == 5 else 0)


# --- families -------------------------------------------------------------


@dataclass(frozen=True)
class ParamBounds:
    max_n: int = 4
    max_m: int = 8
    psum_max: int = 10
    powmod_max: int = 12
    zs_full_upto: int = 61

    def __post_init__(self):
        if self.max_n < 1:
            raise ValueError("max_n must be >= 1")
        if self.max_m < 2 or self.max_m % 2:
            raise ValueError("max_m must be even and >= 2")


@dataclass(frozen=True)
class CaseFamily:
    id: str
    param: Optional[str]
    modulus_exponent: int
    anchor: str
    predicate: str
    build: Callable[..., CongruenceCase] = field(repr=False)

    def values(self, p: int, bounds: ParamBounds) -> list[int]:
        if self.param is None:
            return []
        if self.id in ("T1.3", "T1.4"):
            return list(range(1, bounds.max_n + 1))
        if self.id.startswith("L3."):
            return list(range(2, bounds.max_m + 1, 2))
        if self.id in ("KF.psum", "KF.psum0"):
            return list(range(2, bounds.psum_max + 1))
        if self.id == "KF.powmod":
            return list(range(1, bounds.powmod_max + 1))
        if self.id == "KF.zs":
            return zs_values(p, bounds.zs_full_upto)
        raise AssertionError(self.id)

    def instances(self, p: int, bounds: ParamBounds) -> list[CongruenceCase]:
        if self.param is None:
            return [self.instance()]
        return [self.instance(v) for v in self.values(p, bounds)]

    def instance(self, value: Optional[int] = None) -> CongruenceCase:
        if self.param is None:
            if value is not None:
                raise ValueError(f"{self.id} takes no parameter")
            case = self.build()
        elif value is None:
            raise ValueError(f"{self.id} needs parameter {self.param}")
        else:
            case = self.build(value)
        return replace(case, anchor=self.anchor)


def zs_values(p: int, full_upto: int) -> list[int]:
    """Every residue x for small p; a fixed spread of x otherwise."""
    if p <= full_upto:
        return list(range(p))
    return sorted({0, 1, 2, 3, (p + 1) // 2, p - 2, p - 1})


FAMILIES: dict[str, CaseFamily] = {}


def family(id, param, modexp, anchor, predicate):
    def deco(build):
        FAMILIES[id] = CaseFamily(id, param, modexp, anchor, predicate, build)
        return build

    return deco


# Weighted and squared harmonic sums

@family("T1.1", None, 2, "sum_{k=1}^{p-1} H_k/(k 2^k) = (7/24) p B_{p-3}", "p > 3")
def _t11():
    return _make("T1.1", 2, one(S(1, "half", 1, 1)), bern=(Fraction(7, 24), 2, 1))


@family("T1.2", None, 1, "sum_{k=1}^{p-1} H_{k,2}/(k 2^k) = -(3/8) B_{p-3}", "p > 3")
def _t12():
    return _make("T1.2", 1, one(S(1, "half", 2, 1)), bern=(Fraction(-3, 8), 2, 0))


@family("T1.3", "n", 1, "sum_{k=1}^{p-1} H_{k,2n}^2/k^{2n} = 0", "(p-1) does not divide 6n")
def _t13(n):
    def skip(p):
        return "(p-1) | 6n" if (6 * n) % (p - 1) == 0 else None

    return _make("T1.3", 1, one(S(2 * n, "one", 2 * n, 2)), params=[("n", n)], skip=skip)


@family("T1.4", "n", 2, "sum_{k=1}^{p-1} H_{k,2n}^2/k^{2n} = s(n)/(6n+1) p B_{p-1-6n}",
        "p > 6n+1")
def _t14(n):
    def skip(p):
        if p <= 6 * n + 1:
            return "p <= 6n+1"
        if (6 * n + 1) % p == 0:
            return "p divides 6n+1"
        return None

    coeff = Fraction(s_coefficient(n), 6 * n + 1)
    return _make("T1.4", 2, one(S(2 * n, "one", 2 * n, 2)), bern=(coeff, 6 * n, 1),
                 params=[("n", n)], skip=skip)


# Alternating and harmonic sums

@family("L2.1a", None, 2, "sum (-1)^k/k^2 = (p/2) B_{p-3}", "p > 3")
def _l21a():
    return _make("L2.1a", 2, one(S(2, "alt")), bern=(Fraction(1, 2), 2, 1))


@family("L2.1b", None, 1, "sum (-1)^k/k^3 = -B_{p-3}/2", "p > 3")
def _l21b():
    return _make("L2.1b", 1, one(S(3, "alt")), bern=(Fraction(-1, 2), 2, 0))


@family("L2.1c", None, 2, "sum H_k/k = (p/3) B_{p-3}", "p > 3")
def _l21c():
    return _make("L2.1c", 2, one(S(1, "one", 1, 1)), bern=(Fraction(1, 3), 2, 1))


@family("L2.1d", None, 1, "sum (-1)^k H_k/k^2 = -B_{p-3}/4", "p > 3")
def _l21d():
    return _make("L2.1d", 1, one(S(2, "alt", 1, 1)), bern=(Fraction(-1, 4), 2, 0))


@family("L2.3a", None, 1, "sum_{j<=k} 2^j (j+k)/(j^2 k^2) = sum (-1)^k/k^3", "p > 3")
def _l23a():
    lhs = ((1, P(1, 2, "two", strict=False)), (1, P(2, 1, "two", strict=False)))
    return _make("L2.3a", 1, lhs, one(S(3, "alt")))


@family("L2.3b", None, 1,
        "sum_{i<=j<=k} (2^i - (-1)^i)/(ijk) = sum ((-1)^k - 2^k)/k^3", "p > 3")
def _l23b():
    lhs = ((1, T("two")), (-1, T("alt")))
    rhs = ((1, S(3, "alt")), (-1, S(3, "two")))
    return _make("L2.3b", 1, lhs, rhs, oracle_cap=31)


# Double sums of powers

def _even_m_skip(m, *, vanish=False, p_gt=False):
    def skip(p):
        if m % 2:
            return "m odd"
        if vanish and (3 * m) % (p - 1) == 0:
            return "(p-1) | 3m"
        if p_gt and p <= 3 * m + 1:
            return "p <= 3m+1"
        return None

    return skip


def _sym_pair(m, sign) -> Combo:
    return ((1, P(m, 2 * m)), (sign, P(2 * m, m)))


@family("L3.1a", "m", 1, "sum_{j<k} (1/(j^m k^{2m}) + 1/(j^{2m} k^m)) = 0",
        "m even, (p-1) does not divide 3m")
def _l31a(m):
    return _make("L3.1a", 1, _sym_pair(m, 1), params=[("m", m)],
                 skip=_even_m_skip(m, vanish=True))


@family("L3.1b", "m", 2, "sum_{j<k} (1/(j^m k^{2m}) + 1/(j^{2m} k^m)) = -p 3m/(3m+1) B_{p-1-3m}",
        "m even, p > 3m+1")
def _l31b(m):
    return _make("L3.1b", 2, _sym_pair(m, 1), bern=(Fraction(-3 * m, 3 * m + 1), 3 * m, 1),
                 params=[("m", m)], skip=_even_m_skip(m, p_gt=True))


@family("L3.2a", "m", 1, "sum_{j<k} (1/(j^m k^{2m}) - 1/(j^{2m} k^m)) = 0", "m even")
def _l32a(m):
    return _make("L3.2a", 1, _sym_pair(m, -1), params=[("m", m)], skip=_even_m_skip(m))


def _l32_coeff(m):
    return Fraction(comb(3 * m, m), (m + 1) * (2 * m + 1))


@family("L3.2b", "m", 2,
        "sum_{j<k} (1/(j^m k^{2m}) - 1/(j^{2m} k^m)) = p m C(3m,m) B_{p-1-3m}/((m+1)(2m+1))",
        "m even, p > 3m+1")
def _l32b(m):
    return _make("L3.2b", 2, _sym_pair(m, -1), bern=(m * _l32_coeff(m), 3 * m, 1),
                 params=[("m", m)], skip=_even_m_skip(m, p_gt=True))


@family("L3.2c", "m", 1,
        "sum_{j<k} (1/(j^{2m} k^{m+1}) + 2/(j^{2m+1} k^m)) = C(3m,m) B_{p-1-3m}/((m+1)(2m+1))",
        "m even, p > 3m+1")
def _l32c(m):
    lhs = ((1, P(2 * m, m + 1)), (2, P(2 * m + 1, m)))
    return _make("L3.2c", 1, lhs, bern=(_l32_coeff(m), 3 * m, 0), params=[("m", m)],
                 skip=_even_m_skip(m, p_gt=True))


# Known facts used along the way

def _p_gt_5(p):
    return "p <= 5" if p <= 5 else None


@family("KF.wolstenholme", None, 2, "H_{p-1} = 0", "p > 3")
def _kf_w():
    return _make("KF.wolstenholme", 2, one(S(1)))


@family("KF.su1", None, 1, "sum H_k/(k 2^k) = 0", "p > 5")
def _kf_su1():
    return _make("KF.su1", 1, one(S(1, "half", 1, 1)), skip=_p_gt_5)


@family("KF.su2", None, 1, "sum H_k^2/k^2 = 0", "p > 5")
def _kf_su2():
    return _make("KF.su2", 1, one(S(2, "one", 1, 2)), skip=_p_gt_5)


@family("KF.mestrovic", None, 2, "sum H_k^2/k^2 = (4/5) p B_{p-5}", "p > 3")
def _kf_mes():
    return _make("KF.mestrovic", 2, one(S(2, "one", 1, 2)), bern=(Fraction(4, 5), 4, 1))


@family("KF.s1", None, 2, "sum 1/k^2 = (2/3) p B_{p-3}", "p > 3")
def _kf_s1():
    return _make("KF.s1", 2, one(S(2)), bern=(Fraction(2, 3), 2, 1))


@family("KF.s2", None, 2, "sum 1/k^3 = -p [p=5]", "p > 3")
def _kf_s2():
    return _make("KF.s2", 2, one(S(3)), _s2_rhs)


@family("KF.s3", None, 2, "sum_{k<=(p-1)/2} 1/k^2 = (7/3) p B_{p-3}", "p > 3")
def _kf_s3():
    return _make("KF.s3", 2, one(S(2, half=True)), bern=(Fraction(7, 3), 2, 1))


@family("KF.s4", None, 1, "sum_{k<=(p-1)/2} 1/k^3 = -2 B_{p-3}", "p > 3")
def _kf_s4():
    return _make("KF.s4", 1, one(S(3, half=True)), bern=(-2, 2, 0))


@family("KF.s5", None, 2, "sum_{j<k} 1/(jk) = -(p/3) B_{p-3}", "p > 3")
def _kf_s5():
    return _make("KF.s5", 2, one(P(1, 1, strict=True)), bern=(Fraction(-1, 3), 2, 1))


@family("KF.st", None, 1, "sum H_k/k^2 = B_{p-3}", "p > 3")
def _kf_st():
    return _make("KF.st", 1, one(S(2, "one", 1, 1)), bern=(1, 2, 0))


@family("KF.psum", "n", 2, "sum 1/k^n = p n/(n+1) B_{p-1-n}", "2 <= n <= p-3")
def _kf_psum(n):
    def skip(p):
        return None if 2 <= n <= p - 3 else "n outside 2..p-3"

    return _make("KF.psum", 2, one(S(n)), bern=(Fraction(n, n + 1), n, 1), params=[("n", n)],
                 skip=skip)


@family("KF.psum0", "n", 1, "sum 1/k^n = 0", "(p-1) does not divide n")
def _kf_psum0(n):
    def skip(p):
        return "(p-1) | n" if n % (p - 1) == 0 else None

    return _make("KF.psum0", 1, one(S(n)), params=[("n", n)], skip=skip)


@family("KF.powmod", "n", 1, "sum_{k=1}^{p-1} k^n = -1 if (p-1) | n else 0", "p > 3")
def _kf_powmod(n):
    return _make("KF.powmod", 1, _powmod_lhs(n), _powmod_rhs(n), params=[("n", n)],
                 orders={1})


@family("KF.hsym", None, 1,
        "H_{p-k} = H_k - 1/k for all k in 1..p-1 (lhs counts the k that satisfy it)", "p > 3")
def _kf_hsym():
    return _make("KF.hsym", 1, _hsym_lhs, _hsym_rhs, orders={1})


@family("KF.zs", "x", 1, "sum_{i<j<k} (1-x)^i/(ijk) = sum_{i<j<k} x^i/(ijk), x in Z/pZ",
        "p > 3")
def _kf_zs(x):
    return _make("KF.zs", 1, lambda ctx: _zs_lhs(ctx, x), lambda ctx: _zs_rhs(ctx, x),
                 params=[("x", x)], orders={1},
                 oracle_cap=31)


# --- selection ------------------------------------------------------------

_LABEL_RE = re.compile(r"^([A-Za-z0-9.]+?)(?:\((\w+)=(-?\d+)\))?$")

Selection = tuple[tuple[str, Optional[int]], ...]


def parse_selection(text: str | Iterable[str]) -> Selection:
    """'all', 'T1.1,T1.4' or 'T1.4(n=1)' style ids -> ((family, value|None), ...)."""
    items = text.split(",") if isinstance(text, str) else list(text)
    items = [s.strip() for s in items if s.strip()]
    if items == ["all"]:
        return tuple((fid, None) for fid in FAMILIES)
    out = []
    for item in items:
        m = _LABEL_RE.match(item)
        if not m or m.group(1) not in FAMILIES:
            raise KeyError(f"unknown case id {item!r}; valid ids: {', '.join(FAMILIES)}")
        fam = FAMILIES[m.group(1)]
        if m.group(2) is not None:
            if m.group(2) != fam.param:
                raise KeyError(f"{fam.id} takes parameter {fam.param!r}, not {m.group(2)!r}")
            out.append((fam.id, int(m.group(3))))
        else:
            out.append((fam.id, None))
    return tuple(out)


def expand_selection(selection: Selection, p: int, bounds: ParamBounds) -> list[CongruenceCase]:
    """Concrete case instances for prime p; a family without a value uses the bounds."""
    cases = []
    seen = set()
    for fid, value in selection:
        fam = FAMILIES[fid]
        batch = fam.instances(p, bounds) if value is None and fam.param else [fam.instance(value)]
        for case in batch:
            if case.label not in seen:
                seen.add(case.label)
                cases.append(case)
    return cases


def required_orders(cases: Sequence[CongruenceCase]) -> frozenset[int]:
    out = {1}
    for case in cases:
        out |= case.orders
    return frozenset(out)
