import random
import pytest

from fixtures import EX_BILINEAR_FORM, EX_DIAGONAL_FORM, EX_DIAGONAL_SOLUTION, form

from diophant.bilinear import (
    BilinearSolution,
    InvalidSeed,
    LinearFamily,
    NonSquareDeterminant,
    balance_parameters,
    bilinear_from_quaternary_seed,
    bilinear_from_ternary_seed,
    bilinear_general,
    find_seed,
    square_det_from_linear_family,
)
from diophant.exact import sqrt_exact
from diophant.poly import MPoly
from diophant.quadform import QuadForm4

m, n = MPoly.var("m"), MPoly.var("n")


def test_quaternary_seed_reproduces_reference_solution():
    sol = bilinear_from_quaternary_seed((1, -9, -1, 4), (1, 0, 1, 0), 6)
    assert sol.is_bilinear()
    assert sol.rename({"r": m / 18, "s": n / 18}) == tuple(MPoly.parse(t) for t in EX_DIAGONAL_SOLUTION)


def test_ternary_seed_route():
    a = (1, 2, -6, -3)
    sol = bilinear_from_ternary_seed(a, (2, 1, 1), 6)
    assert sol.is_bilinear() and sol.verify(QuadForm4.diagonal(a))
    with pytest.raises(InvalidSeed):
        bilinear_from_ternary_seed(a, (2, 1, 0), 6)
    with pytest.raises(InvalidSeed):
        bilinear_from_ternary_seed(a, (1, 1, 1), 6)


def test_quaternary_seed_guards():
    with pytest.raises(InvalidSeed):
        bilinear_from_quaternary_seed((1, -1, 1, -1), (1, 1, 1, 1), 1)
    with pytest.raises(ValueError):
        bilinear_from_quaternary_seed((1, -1, 1, 2), (1, 1, 0, 0), 1)


@pytest.mark.parametrize("seed", [(0, 2, -1, -1), None])
def test_general_form(seed):
    Q = form(EX_BILINEAR_FORM)
    sol = bilinear_general(Q, seed)
    assert sol.is_bilinear() and sol.verify(Q)
    fam = sol.specialize(1, 2)
    assert isinstance(fam, LinearFamily) and fam.rank() == 2 and fam.verify(Q)


def test_both_paths_agree_on_validity():
    Q = form(EX_DIAGONAL_FORM)
    for path in ("quaternary", "ternary"):
        sol = bilinear_general(Q, (1, 0, 1, 0), path=path)
        assert sol.verify(Q) and sol.is_bilinear()


def test_refusals():
    with pytest.raises(NonSquareDeterminant) as err:
        bilinear_general(QuadForm4.diagonal([1, -1, 2, -16]))
    assert err.value.det == 32
    with pytest.raises(NonSquareDeterminant):
        bilinear_general(QuadForm4.parse("x1^2 - x2^2 + x3^2"))  # singular
    with pytest.raises(InvalidSeed):
        bilinear_general(QuadForm4.diagonal([1, 1, 1, 1]))  # square det, anisotropic
    with pytest.raises(InvalidSeed):
        bilinear_general(form(EX_DIAGONAL_FORM), (1, 1, 1, 1))
    with pytest.raises(InvalidSeed):
        bilinear_general(form(EX_DIAGONAL_FORM), (0, 0, 0, 0))


def test_find_seed():
    Q = form(EX_BILINEAR_FORM)
    s = find_seed(Q)
    assert s is not None and Q.eval(s) == 0
    assert find_seed(QuadForm4.diagonal([1, 1, 1, 1])) is None


def test_nonsquare_determinant_refused_on_random_forms():
    rng = random.Random(2)
    names = ["x1^2", "x2^2", "x3^2", "x4^2", "x1*x2", "x1*x3", "x2*x4", "x3*x4"]
    successes = 0
    for _ in range(200):
        Q = QuadForm4.from_coeffs({k: rng.randint(-5, 5) for k in names})
        d = Q.det()
        try:
            sol = bilinear_general(Q)
        except NonSquareDeterminant:
            assert d == 0 or sqrt_exact(d) is None
            continue
        except InvalidSeed:
            continue
        assert sqrt_exact(d) is not None and d != 0
        assert sol.verify(Q)
        successes += 1
    assert successes > 0


def test_balance_preserves_solutions():
    sol = bilinear_from_quaternary_seed((1, -9, -1, 4), (1, 0, 1, 0), 6)
    bal = balance_parameters(sol.forms)
    Q = form(EX_DIAGONAL_FORM)
    assert Q.substitute(bal).is_zero()
    size = lambda fs: sum(abs(c) for F in fs for c in F.terms.values())  # noqa: E731
    assert size(bal) < size(sol.forms)
    assert BilinearSolution(bal).is_bilinear()


def test_square_det_from_linear_family():
    Q = form(EX_DIAGONAL_FORM)
    fam = BilinearSolution(tuple(MPoly.parse(t) for t in EX_DIAGONAL_SOLUTION)).rename({})
    lin = tuple(F.substitute({"p": 1, "q": 1}) for F in fam)
    assert square_det_from_linear_family(Q, lin) == 6
    with pytest.raises(ValueError):
        square_det_from_linear_family(Q, (m, m, m, m))


@pytest.mark.parametrize("path", ["quaternary", "ternary"])
def test_forced_paths_agree_on_validity(path):
    for text, seed in ((EX_BILINEAR_FORM, (0, 2, -1, -1)), (EX_DIAGONAL_FORM, (1, 0, 1, 0))):
        Q = QuadForm4.parse(text)
        sol = bilinear_general(Q, seed, path=path)
        assert sol.source["path"] == path
        assert sol.is_bilinear() and sol.verify(Q)
