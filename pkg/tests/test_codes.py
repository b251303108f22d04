import pytest

from lcdist.algebra import BinaryMatrix, PauliVector, kernel_basis, rank_gf2
from lcdist.codes import (
    CodeError,
    CssCode,
    GenerationError,
    SparsityProfile,
    StabilizerCode,
    circulant_check,
    five_qubit_code,
    from_css,
    hypergraph_product,
    is_logical,
    normalizer_basis,
    poly_from_string,
    random_stabilizer_code,
    steane_code,
    syndrome,
    toric_code,
    validate,
)

HAMMING = BinaryMatrix.from_strings(["0001111", "0110011", "1010101"])


def test_validate_commuting_pair():
    report = validate(StabilizerCode.from_labels(["XX", "ZZ"]))
    assert report.valid and report.r_eff == 2 and report.k == 0


def test_validate_reports_anticommuting_pair():
    report = validate(StabilizerCode.from_labels(["XI", "ZI"]))
    assert not report.valid
    assert report.violations == [(0, 1)]
    assert "(0,1)" in report.summary()


def test_steane_parameters():
    code = steane_code()
    report = validate(code)
    assert report.valid and code.k == 1 and code.n == 7
    assert code.profile == SparsityProfile(6, 4)


def test_syndrome_basics():
    code = steane_code()
    assert syndrome(code, PauliVector(7, 0, 0)) == 0
    for row in code.rows:
        assert syndrome(code, row) == 0
    assert syndrome(code, PauliVector.single(7, 0, "X")) != 0


def test_syndrome_length_mismatch():
    with pytest.raises(ValueError):
        syndrome(steane_code(), PauliVector(3, 0, 0))


def test_is_logical():
    code = steane_code()
    assert not is_logical(code, code.rows[0])
    assert not is_logical(code, PauliVector.single(7, 3, "Y"))
    assert is_logical(code, PauliVector.from_label("XXXXXXX"))


def test_toric_homology_cycle_is_logical():
    stab = from_css(toric_code(2))
    found = [
        (a, b)
        for a in range(8)
        for b in range(a + 1, 8)
        if is_logical(stab, PauliVector(8, 0, (1 << a) | (1 << b)))
    ]
    assert found
    assert all(not is_logical(stab, PauliVector.single(8, q, "X")) for q in range(8))


def test_normalizer_dimension():
    assert normalizer_basis(StabilizerCode.from_labels(["Z"])).dimension == 1
    assert normalizer_basis(StabilizerCode(1, [])).dimension == 2
    nb = normalizer_basis(steane_code())
    assert nb.dimension == 8
    for g in nb.gens:
        assert syndrome(steane_code(), g) == 0


def test_from_css():
    code = from_css(CssCode(BinaryMatrix.from_strings(["11"]), BinaryMatrix((), 2)))
    assert [r.label() for r in code.rows] == ["XX"] and code.k == 1
    steane = from_css(CssCode(HAMMING, HAMMING))
    assert steane.k == 1 and steane.n == 7
    with pytest.raises(CodeError):
        from_css(CssCode(BinaryMatrix.from_strings(["10"]), BinaryMatrix.from_strings(["10"])))


def test_circulant_rows():
    assert circulant_check(3, poly_from_string("11")).to_strings() == ["110", "011", "101"]
    m = circulant_check(5, poly_from_string("1101"))
    assert m.row_weights() == [3] * 5
    with pytest.raises(ValueError):
        circulant_check(3, 0)
    with pytest.raises(ValueError):
        circulant_check(3, poly_from_string("1001"))


def test_hypergraph_product_parameters():
    t2 = toric_code(2)
    assert (t2.n, t2.k) == (8, 2)
    h3 = circulant_check(3, poly_from_string("110"))
    hgp = hypergraph_product(h3, h3)
    assert (hgp.n, hgp.k) == (18, 2)
    assert hgp.orthogonality_violations() == []


@pytest.mark.parametrize("poly,n", [("11", 6), ("1101", 7), ("11001", 9)])
def test_hypergraph_product_is_regular(poly, n):
    w_h = poly.count("1")
    h = circulant_check(n, poly_from_string(poly))
    css = hypergraph_product(h, h)
    for m in (css.gx, css.gz):
        assert set(m.column_weights()) == {w_h}
        assert set(m.row_weights()) == {2 * w_h}


def test_five_qubit_code():
    code = five_qubit_code()
    assert validate(code).valid and code.k == 1


def test_random_code_empty():
    code = random_stabilizer_code(4, 0)
    assert code.k == 4 and code.rows == ()


def test_random_code_deterministic():
    a = random_stabilizer_code(10, 8, seed=5)
    b = random_stabilizer_code(10, 8, seed=5)
    assert a == b
    assert [r.label() for r in a.rows] == [r.label() for r in b.rows]


def test_random_code_respects_profile():
    code = random_stabilizer_code(10, 8, SparsityProfile(3, 4), seed=1)
    assert validate(code).valid
    supports = [r.support for r in code.rows]
    assert all(bin(s).count("1") <= 4 for s in supports)
    assert all(sum((s >> q) & 1 for s in supports) <= 3 for q in range(10))


def test_random_code_infeasible():
    with pytest.raises(GenerationError):
        random_stabilizer_code(6, 2, SparsityProfile(0, 3), seed=0)
    with pytest.raises(ValueError):
        random_stabilizer_code(3, 4)


def test_css_k_matches_rank():
    css = toric_code(3)
    assert css.k == css.n - rank_gf2(css.gx) - rank_gf2(css.gz)
    assert len(kernel_basis(css.gz)) == css.n - rank_gf2(css.gz)
