"""Engine tests: validation, homology, d / d_lower / d_upper, tensor, JSON."""

from fractions import Fraction

import pytest

from cablecalc.errors import InternalCheckError, ValidationError
from cablecalc import iota
from cablecalc.iota import (
    GradedComplex,
    IotaComplex,
    brute_oracle,
    complex_from_dict,
    complex_to_dict,
    d_invariant,
    d_lower,
    d_results,
    d_upper,
    homology_summary,
    shift,
    tensor,
    validate,
)


def sphere_model() -> IotaComplex:
    """One free generator, trivial involution."""
    return IotaComplex(GradedComplex([("x0", 0)], {}), {"x0": [("x0", 0)]})


def swap_model() -> IotaComplex:
    """Two grading-0 cycles identified in homology; iota exchanges them."""
    cx = GradedComplex([("e1", 0), ("e2", 0), ("f", 1)], {"f": [("e1", 0), ("e2", 0)]})
    return IotaComplex(cx, {"e1": [("e2", 0)], "e2": [("e1", 0)], "f": [("f", 0)]})


def torsion_model(t: int = 1) -> IotaComplex:
    """Free class at 0 plus an order-t torsion class that iota mixes in.

    The involution sends the free generator a to a + c, so (id+iota)a only
    becomes a boundary after multiplying by U^t: d_lower drops to -2t while
    d and d_upper stay 0.
    """
    cx = GradedComplex(
        [("a", 0), ("c", 0), ("b", 1 - 2 * t)],
        {"b": [("c", t)]},
    )
    return IotaComplex(
        cx,
        {"a": [("a", 0), ("c", 0)], "c": [("c", 0)], "b": [("b", 0)]},
    )


def dual_model() -> IotaComplex:
    """Mirror-image behavior: torsion above the free class pushes d_upper up.

    The triple (b, 0, c) with dz = U x realizes the value gr(b) + 1 = 2.
    """
    cx = GradedComplex([("a", 0), ("b", 1), ("c", 0)], {"c": [("b", 1)]})
    return IotaComplex(
        cx,
        {"a": [("a", 0)], "b": [("b", 0)], "c": [("c", 0), ("a", 0)]},
    )


def all_fixtures():
    return [sphere_model(), swap_model(), torsion_model(1), torsion_model(2), dual_model()]


# ---------------------------------------------------------------------------
# validation


def test_validate_fixtures_all_pass():
    for ic in all_fixtures():
        report = validate(ic)
        assert report.ok, report.failures()


def test_validate_catches_differential_degree():
    cx = GradedComplex([("x", 0), ("y", 1)], {"y": [("x", 1)]})
    report = validate(IotaComplex(cx, {"x": [("x", 0)], "y": [("y", 0)]}))
    assert not report.ok
    assert any(c.name == "differential-degree" and not c.ok for c in report.checks)


def test_validate_catches_differential_squared():
    cx = GradedComplex(
        [("x", 0), ("y", 1), ("z", 2)],
        {"z": [("y", 0)], "y": [("x", 0)]},
    )
    ic = IotaComplex(cx, {g: [(g, 0)] for g in "xyz"})
    report = validate(ic)
    assert any(c.name == "differential-squared" and not c.ok for c in report.checks)


def test_validate_catches_non_chain_map():
    cx = GradedComplex([("e1", 0), ("e2", 0), ("f", 1)], {"f": [("e1", 0), ("e2", 0)]})
    ic = IotaComplex(
        cx,
        {"e1": [("e1", 0), ("e2", 0)], "e2": [("e2", 0)], "f": [("f", 0)]},
    )
    report = validate(ic)
    assert any(c.name == "iota-chain-map" and not c.ok for c in report.checks)


def test_validate_catches_iota_squared_not_homotopic_to_id():
    # iota = 0 is a chain map on the one-generator complex, but 0 is not
    # homotopic to the identity when the differential vanishes.
    ic = IotaComplex(GradedComplex([("x0", 0)], {}), {})
    report = validate(ic)
    names = {c.name: c.ok for c in report.checks}
    assert names["iota-chain-map"] is True
    assert names["iota-squared-homotopic-identity"] is False
    assert names["localized-rank-one"] is True


def test_validate_catches_rank_two():
    ic = IotaComplex(
        GradedComplex([("x", 0), ("y", 0)], {}),
        {"x": [("x", 0)], "y": [("y", 0)]},
    )
    report = validate(ic)
    assert any(c.name == "localized-rank-one" and not c.ok for c in report.checks)


def test_validate_accepts_strict_homotopy_involution():
    # perturb the tensor-square involution by d G + G d (G: bb -> ab); the
    # result squares to id only up to homotopy, never on the nose.
    ic = tensor(torsion_model(1), torsion_model(1), sep=".")
    pert = dict(ic.iota)
    name = "b.b"
    pert[name] = pert.get(name, frozenset()) ^ frozenset([("a.c", 1)])
    ic2 = IotaComplex(ic.complex, pert)
    sq = {
        g: iota.apply_map(ic2.iota, ic2.iota.get(g, frozenset()))
        for g in ic2.complex.generators
    }
    assert any(sq[g] != frozenset([(g, 0)]) for g in ic2.complex.generators)
    report = validate(ic2)
    assert report.ok, report.failures()
    res = d_results(ic2, check=False)
    assert (res.d, res.lower, res.upper) == (0, -2, 0)


def test_constructor_rejects_bad_input():
    with pytest.raises(ValidationError):
        GradedComplex([("x", 0), ("x", 1)], {})
    with pytest.raises(ValidationError):
        GradedComplex([], {})
    with pytest.raises(ValidationError):
        GradedComplex([("x", 0)], {"nope": [("x", 0)]})
    with pytest.raises(ValidationError):
        GradedComplex([("x", 0), ("y", 1)], {"y": [("x", -1)]})


# ---------------------------------------------------------------------------
# homology


def test_homology_sphere():
    s = homology_summary(sphere_model())
    assert s.free_grading == 0
    assert s.torsion == ()
    assert s.torsion_exponent == 0


def test_homology_swap_has_no_torsion():
    s = homology_summary(swap_model())
    assert s.free_grading == 0
    assert s.torsion == ()


def test_homology_torsion_model():
    for t in (1, 2, 3):
        s = homology_summary(torsion_model(t))
        assert s.free_grading == 0
        assert s.torsion == ((Fraction(0), t),)
        assert s.torsion_exponent == t


def test_homology_dual_model():
    s = homology_summary(dual_model())
    assert s.free_grading == 0
    assert s.torsion == ((Fraction(1), 1),)


def test_homology_rejects_rank_two():
    with pytest.raises(ValidationError):
        homology_summary(GradedComplex([("x", 0), ("y", 2)], {}))


# ---------------------------------------------------------------------------
# the three correction terms


def test_sphere_invariants():
    res = d_results(sphere_model())
    assert (res.d, res.lower, res.upper) == (0, 0, 0)


def test_swap_invariants():
    res = d_results(swap_model())
    assert (res.d, res.lower, res.upper) == (0, 0, 0)


def test_torsion_model_invariants():
    for t in (1, 2, 3):
        res = d_results(torsion_model(t))
        assert (res.d, res.lower, res.upper) == (0, -2 * t, 0)


def test_dual_model_invariants():
    res = d_results(dual_model())
    assert (res.d, res.lower, res.upper) == (0, 0, 2)


def test_window_slack_does_not_change_answers():
    for ic in all_fixtures():
        base = d_results(ic, check=False)
        wide = d_results(ic, check=False, window_slack=6, m_max=12)
        assert base == wide


def test_invariants_reject_invalid_complex():
    bad = IotaComplex(GradedComplex([("x0", 0)], {}), {})
    with pytest.raises(ValidationError):
        d_lower(bad)
    with pytest.raises(ValidationError):
        d_upper(bad)


# ---------------------------------------------------------------------------
# shift and tensor


def test_shift_covariance():
    for r in (Fraction(2), Fraction(-3), Fraction(1, 2)):
        for ic in (torsion_model(1), dual_model()):
            res = d_results(ic)
            sres = d_results(shift(ic, r))
            assert sres.d == res.d + r
            assert sres.lower == res.lower + r
            assert sres.upper == res.upper + r


def test_tensor_unit():
    unit = sphere_model()
    for ic in (swap_model(), torsion_model(2), dual_model()):
        prod = tensor(ic, unit)
        assert validate(prod).ok
        assert d_results(prod) == d_results(ic)


def test_tensor_torsion_square():
    # two copies of the figure-eight-like model: the lower invariant does
    # not add (stays at -2), matching connected-sum behavior.
    prod = tensor(torsion_model(1), torsion_model(1))
    assert validate(prod).ok
    res = d_results(prod, check=False)
    assert (res.d, res.lower, res.upper) == (0, -2, 0)


def test_tensor_inequalities():
    # d_lower(A)+d_lower(B) <= d_lower(A@B) <= d_lower(A)+d_upper(B)
    #                       <= d_upper(A@B) <= d_upper(A)+d_upper(B)
    pairs = [
        (torsion_model(1), dual_model()),
        (torsion_model(2), swap_model()),
        (dual_model(), dual_model()),
    ]
    for a, b in pairs:
        ra, rb = d_results(a), d_results(b)
        rp = d_results(tensor(a, b), check=False)
        assert ra.lower + rb.lower <= rp.lower <= ra.lower + rb.upper
        assert ra.lower + rb.upper <= rp.upper <= ra.upper + rb.upper
        assert rp.d == ra.d + rb.d


def test_tensor_name_collisions_get_renamed():
    # "p" x "q|r" and "p|q" x "r" would both be called "p|q|r"
    a = IotaComplex(GradedComplex([("p", 0), ("p|q", 0)], {}), {})
    b = IotaComplex(GradedComplex([("q|r", 0), ("r", 0)], {}), {})
    prod = tensor(a, b)
    assert len(prod.complex.generators) == 4
    assert len(set(prod.complex.generators)) == 4


# ---------------------------------------------------------------------------
# brute-force agreement


def test_brute_oracle_matches_engine_on_fixtures():
    for ic in all_fixtures():
        fast = d_results(ic, check=False)
        n = homology_summary(ic, check=False).torsion_exponent
        slow = brute_oracle(ic, truncation=n + len(ic.complex.generators) + 1, check=False)
        assert fast == slow, ic


def test_brute_oracle_rejects_small_truncation():
    ic = torsion_model(2)  # needs 2 + 3 = 5
    with pytest.raises(ValidationError):
        brute_oracle(ic, truncation=4, check=False)
    assert brute_oracle(ic, truncation=5, check=False) == d_results(ic, check=False)


# ---------------------------------------------------------------------------
# serialization


def test_json_roundtrip():
    for ic in all_fixtures():
        data = complex_to_dict(ic)
        back = complex_from_dict(data)
        assert back.complex.generators == ic.complex.generators
        assert back.complex.grading == ic.complex.grading
        assert back.complex.diff == ic.complex.diff
        assert back.iota == ic.iota


def test_json_file_roundtrip(tmp_path):
    path = tmp_path / "cx.json"
    ic = dual_model()
    iota.dump_complex(ic, str(path))
    back = iota.load_complex(str(path))
    assert d_results(back) == d_results(ic)


def test_from_dict_rejects_garbage():
    with pytest.raises(ValidationError):
        complex_from_dict([])
    with pytest.raises(ValidationError):
        complex_from_dict({"generators": []})
    with pytest.raises(ValidationError):
        complex_from_dict({"generators": [{"name": "x", "grading": "sqrt2"}]})
    with pytest.raises(ValidationError):
        complex_from_dict(
            {
                "generators": [{"name": "x", "grading": "0"}],
                "differential": {"x": [{"gen": "x", "upow": -1}]},
            }
        )
    with pytest.raises(ValidationError):
        complex_from_dict(
            {"generators": [{"name": "x", "grading": "0"}], "iota": {"x": "x"}}
        )


def test_to_dict_uses_rational_strings():
    data = complex_to_dict(shift(sphere_model(), Fraction(-1, 2)))
    assert data["generators"][0]["grading"] == "-1/2"
