from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from harmonic_congruences.cases import (
    FAMILIES,
    ParamBounds,
    expand_selection,
    parse_selection,
    required_orders,
)
from harmonic_congruences.oracle import OracleBoundExceeded, oracle_evaluate, oracle_sides
from harmonic_congruences.residues import primes_in_range
from harmonic_congruences.suite import ORACLE_MISMATCH, evaluate_case, run_prime, run_suite
from harmonic_congruences.tables import MissingOrder, build_context


def case(label):
    (fid, value), = parse_selection(label)
    return FAMILIES[fid].instance(value)


def fast(label, p):
    c = case(label)
    return evaluate_case(c, build_context(p, c.orders))


@pytest.mark.parametrize(
    "label,p,modulus,value",
    [
        ("T1.1", 5, 25, 15),
        ("T1.2", 5, 5, 4),
        ("T1.3(n=1)", 5, 5, 0),
        ("L2.1a", 5, 25, 15),
        ("KF.mestrovic", 5, 25, 4),
        ("KF.wolstenholme", 13, 169, 0),
    ],
)
def test_spot_values(label, p, modulus, value):
    r = fast(label, p)
    assert (r.modulus, r.lhs, r.rhs, r.verdict) == (modulus, value, value, "pass")


def test_exact_sides_at_5():
    assert oracle_sides(case("T1.1"), 5) == (Fraction(1835, 2304), Fraction(35, 144))
    assert oracle_sides(case("T1.2"), 5)[1] == Fraction(-1, 16)
    assert oracle_sides(case("L2.1a"), 5) == (Fraction(-115, 144), Fraction(5, 12))


def test_skip_never_fails():
    r = fast("T1.3(n=1)", 7)
    assert r.verdict == "skip" and r.skip_reason == "(p-1) | 6n" and r.lhs is None


def test_missing_order_is_raised():
    c = case("T1.4(n=2)")
    with pytest.raises(MissingOrder):
        evaluate_case(c, build_context(29, {1}))


def test_required_orders_cover_cases():
    cases = expand_selection(parse_selection("all"), 101, ParamBounds())
    orders = required_orders(cases)
    assert {1, 2, 3, 4, 8, 16, 17, 9} <= orders


@pytest.mark.parametrize("label,p", [("T1.1", 5), ("L2.3b", 7), ("KF.wolstenholme", 13), ("T1.4(n=1)", 11)])
def test_oracle_agrees_with_fast_path(label, p):
    assert oracle_evaluate(case(label), p).same_outcome(fast(label, p))


def test_oracle_bounds():
    with pytest.raises(OracleBoundExceeded):
        oracle_evaluate(case("T1.1"), 101)
    with pytest.raises(OracleBoundExceeded):
        oracle_evaluate(case("L2.3b"), 37)


def test_run_suite_examples():
    reports = run_suite((5, 7), parse_selection("T1.1"))
    assert [(r.prime, r.verdict) for r in reports] == [(5, "pass"), (7, "pass")]
    reports = run_suite((5, 5), parse_selection("T1.3(n=1),T1.4(n=1)"))
    assert [(r.case, r.verdict) for r in reports] == [("T1.3", "pass"), ("T1.4", "skip")]
    assert reports[1].skip_reason == "p <= 6n+1"
    assert run_suite((5, 97), ()) == []


def test_run_suite_sorted_and_deduplicated():
    reports = run_suite([13, 7, 11], parse_selection("KF.psum,KF.s1,KF.psum(n=3)"))
    keys = [r.sort_key() for r in reports]
    assert keys == sorted(keys) and len(set(keys)) == len(keys)
    assert [r.params for r in reports if r.prime == 13 and r.case == "KF.psum"][:2] == [
        (("n", 2),),
        (("n", 3),),
    ]


def test_corrupted_rhs_fails_only_targets():
    sel = parse_selection("T1.1,T1.2,KF.s1")
    clean = run_suite((5, 41), sel, oracle_upto=41)
    dirty = run_suite((5, 41), sel, oracle_upto=41, corrupt={"T1.2"})
    for a, b in zip(clean, dirty):
        if a.case == "T1.2":
            assert b.verdict == "fail" and b.rhs == (a.rhs + 1) % a.modulus
        else:
            assert a.same_outcome(b) and a.skip_reason == b.skip_reason


def test_oracle_mismatch_is_reported(monkeypatch):
    from harmonic_congruences import suite

    c = case("KF.s1")
    real = suite.oracle_evaluate

    def lying(case_, p, bound):
        r = real(case_, p, bound)
        return r.__class__(**{**r.__dict__, "lhs": (r.lhs + 1) % r.modulus})

    monkeypatch.setattr(suite, "oracle_evaluate", lying)
    (r,) = run_prime(11, parse_selection("KF.s1"), oracle_upto=97)
    assert r.verdict == "fail" and r.skip_reason == ORACLE_MISMATCH
    assert c.id == r.case


def test_errors_become_fail_reports(monkeypatch):
    from harmonic_congruences import suite

    def boom(case_, ctx):
        raise RuntimeError("kaput")

    monkeypatch.setattr(suite, "evaluate_case", boom)
    (r,) = run_prime(11, parse_selection("KF.s1"))
    assert r.verdict == "fail" and "kaput" in r.skip_reason


def test_zs_mirror_pairs():
    for p in (7, 13, 23):
        ctx = build_context(p, {1})
        for x in range(p):
            a = evaluate_case(case(f"KF.zs(x={x})"), ctx)
            b = evaluate_case(case(f"KF.zs(x={(1 - x) % p})"), ctx)
            assert (a.lhs, a.rhs) == (b.rhs, b.lhs)


def test_zs_spread_for_large_primes():
    fam = FAMILIES["KF.zs"]
    assert fam.values(61, ParamBounds()) == list(range(61))
    assert fam.values(101, ParamBounds()) == [0, 1, 2, 3, 51, 99, 100]


@given(st.integers(1, 6), st.sampled_from(primes_in_range(5, 400)))
def test_t14_applicability_implies_t13(n, p):
    if case(f"T1.4(n={n})").applicable(p):
        assert case(f"T1.3(n={n})").applicable(p)


@given(st.sampled_from([2, 4, 6, 8]), st.sampled_from(primes_in_range(5, 400)))
def test_double_sum_predicates_nest(m, p):
    if case(f"L3.1b(m={m})").applicable(p):
        assert case(f"L3.1a(m={m})").applicable(p)


MOD_P2_TO_P = [("T1.4", "T1.3", "n", (1, 2, 3)), ("L3.1b", "L3.1a", "m", (2, 4, 6)), ("L3.2b", "L3.2a", "m", (2, 4, 6))]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(primes_in_range(5, 199)), st.sampled_from(MOD_P2_TO_P), st.data())
def test_mod_p_squared_cases_reduce_to_mod_p_cases(p, pair, data):
    strong, weak, name, values = pair
    v = data.draw(st.sampled_from(values))
    s, w = case(f"{strong}({name}={v})"), case(f"{weak}({name}={v})")
    if not s.applicable(p):
        return
    ctx = build_context(p, s.orders | w.orders)
    rs, rw = evaluate_case(s, ctx), evaluate_case(w, ctx)
    assert rs.lhs % p == rw.lhs and rs.rhs % p == rs.lhs % p
    assert rw.verdict == "pass"


def test_parse_selection():
    assert parse_selection("T1.1, T1.4(n=2)") == (("T1.1", None), ("T1.4", 2))
    assert len(parse_selection("all")) == len(FAMILIES)
    with pytest.raises(KeyError):
        parse_selection("T9.9")
    with pytest.raises(KeyError):
        parse_selection("T1.4(m=2)")
