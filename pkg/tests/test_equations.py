import pytest

from slimlat.builders import add_fork, grid
from slimlat.classify import is_patch
from slimlat.diagram import infer_diagram
from slimlat.equations import (
    EquationSampler,
    EquationSystem,
    algebraic_closedness_verdict,
    complement_system,
    evaluate,
    join,
    meet,
    minimize_system,
    par,
    render,
    solve_equations,
    transfer_failure,
    var,
)
from slimlat.enumerate import canonical_form
from slimlat.errors import BudgetExceeded
from slimlat.fixtures import b4, chain, g23, s7
from slimlat.lattice import FiniteLattice
from slimlat.maps import Category, LatticeMap
from slimlat.morphism import builder_extensions, embeddings
from slimlat.suites import closedness_rows


def test_terms():
    t = join(par(0), meet(var(0), par(1)))
    assert evaluate(b4(), t, (1, 2), (3,)) == 3
    assert evaluate(b4(), t, (1, 0), (3,)) == 1
    assert render(t) == "(a1 v (x1 ^ a2))"


def test_complements():
    assert solve_equations(b4(), complement_system(b4(), 1)) == (2,)
    assert solve_equations(chain(3), complement_system(chain(3), 1)) is None
    assert solve_equations(chain(3), complement_system(chain(3), 0)) == (2,)


def test_complement_transfers_from_chain_to_b4():
    iota = LatticeMap(chain(3), b4(), (0, 1, 3))
    system = complement_system(chain(3), 1)
    assert solve_equations(chain(3), system) is None
    assert solve_equations(b4(), system.image(iota)) == (2,)
    cex = transfer_failure(iota)
    assert cex is not None
    assert solve_equations(chain(3), cex.system) is None
    image = cex.system.image(iota)
    assert image.holds(cex.solution_in_target)


def test_minimize_keeps_unsolvable():
    sys3 = complement_system(chain(3), 1)
    small = minimize_system(chain(3), sys3)
    assert len(small.equations) <= len(sys3.equations)
    assert solve_equations(chain(3), small) is None


def test_validation():
    with pytest.raises(ValueError):
        EquationSystem(b4(), (1,), 1, ((var(1), par(0)),))
    with pytest.raises(ValueError):
        EquationSystem(b4(), (1,), 1, ((var(0), par(1)),))


def test_budget():
    system = EquationSystem(s7(), (), 6, ((var(0), var(5)),))
    with pytest.raises(BudgetExceeded):
        solve_equations(s7(), system, budget=1000)


def _codomains(L, extra_size=9):
    from slimlat.enumerate import generate_universe
    D = infer_diagram(L)
    return [m.lattice for m in generate_universe(extra_size)] + builder_extensions(D)


def test_s7_len_closed():
    v = algebraic_closedness_verdict(s7(), _codomains(s7()), Category.LEN)
    assert v and v.label == "closed-in-sample" and v.checked > 0


def test_chain_len_counterexample():
    v = algebraic_closedness_verdict(chain(3), _codomains(chain(3)), Category.LEN)
    assert not v and v.counterexample.embedding.source == chain(3)
    assert solve_equations(chain(3), v.counterexample.system) is None


def test_b4_zo_closed_and_fork_zo_counterexample():
    assert algebraic_closedness_verdict(b4(), _codomains(b4()), Category.ZO)
    D = grid(1, 2)
    forks = [add_fork(D, c)[0].lattice for c in [(0, 1, 2, 3)]]
    v = algebraic_closedness_verdict(g23(), forks + _codomains(g23()), Category.ZO)
    assert not v


def test_retractable_embeddings_are_skipped():
    iota = next(iter(embeddings(b4(), grid(1, 2).lattice, Category.ZO)))
    v = algebraic_closedness_verdict(b4(), [grid(1, 2).lattice], Category.ZO)
    assert v.skipped_by_retraction >= 1 and iota.source == b4()


def _small_or_patch(row):
    return row["n"] <= 2 or is_patch(FiniteLattice.from_json(row)).is_patch


def test_narrow_pool_does_not_separate(ctx):
    rows = closedness_rows(ctx, Category.LEN, 10, pool="dirr")
    wrong = [FiniteLattice.from_json(r) for r in rows if r["closed"] and not _small_or_patch(r)]
    assert canonical_form(g23()) in {canonical_form(L) for L in wrong}
    wide = closedness_rows(ctx, Category.LEN, 10)
    assert all(r["closed"] == _small_or_patch(r) for r in wide)


def test_sampler_pools():
    assert EquationSampler("dirr").parameters(s7()) == (0, 3, 5, 6)
    assert EquationSampler().parameters(b4()) == (0, 1, 2, 3)
    with pytest.raises(ValueError):
        EquationSampler("odd").parameters(b4())
