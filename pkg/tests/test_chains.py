"""Tests for constraint sets, the multistart driver, and the chains."""

import math

import numpy as np
import pytest

from qhlab import chains, reports

FAST = chains.ChainConfig(restarts=6, seed=42, tol=1e-8, max_iter=12)

COMMUTING_ANCHORS = (
    "commuting-chain:joint-search",
    "commuting-chain:normal-principal",
    "commuting-chain:reduced-form",
    "commuting-chain:contradiction",
    "commuting-chain:contradiction-measured",
    "commuting-chain:ablation",
)

PARALLEL_ANCHORS = (
    "parallel-chain:joint-search",
    "parallel-chain:principal-or-isotropic",
    "parallel-chain:isotropic-alpha-zero",
    "parallel-chain:isotropic-s-kernel",
    "parallel-chain:isotropic-degenerate-shape",
    "parallel-chain:principal-phi-s-zero",
    "parallel-chain:degenerate-case",
)

SOLITON_ANCHORS = (
    "soliton-chain:lambda-zero",
    "soliton-chain:hopf",
    "soliton-chain:symmetry",
    "soliton-chain:anti-commuting",
    "soliton-chain:isometric-or-alpha-zero",
    "soliton-chain:alpha-zero-principal",
    "soliton-chain:alpha-zero-isotropic",
    "soliton-chain:alpha-zero-isotropic-measured",
    "soliton-chain:tube-model",
    "soliton-chain:lambda-estimate",
    "soliton-chain:reeb-commutator",
)


def test_constraint_set_validation():
    c = chains.hopf_relation_constraint()
    with pytest.raises(ValueError):
        chains.ConstraintSet(())
    with pytest.raises(ValueError):
        chains.ConstraintSet((chains.Constraint("bad", c.func, weight=0.0),))
    cs = chains.ConstraintSet((c, chains.commuting_constraint()))
    assert cs.names == ("hopf-relation", "commuting-star-ricci")
    assert cs.without("hopf-relation").names == ("commuting-star-ricci",)


def test_constraint_set_residual_concatenates():
    cs = chains.ConstraintSet(
        (chains.hopf_relation_constraint(),
         chains.commuting_constraint())
    )
    state = chains.hopf_state(3, np.zeros(chains.hopf_param_dim(3)))
    res = cs.residual(state)
    parts = cs.breakdown(state)
    assert res.shape == (2 * 25,)
    assert abs(np.linalg.norm(res)
               - math.hypot(parts["hopf-relation"],
                            parts["commuting-star-ricci"])) < 1e-12


def test_hopf_state_structure():
    m = 3
    params = np.zeros(chains.hopf_param_dim(m))
    params[0] = 0.6
    params[1] = 1.2
    state = chains.hopf_state(m, params)
    assert abs(state.t - (math.pi / 4.0) * math.sin(0.6) ** 2) < 1e-12
    assert abs(state.alpha - 1.2) < 1e-14
    assert np.linalg.norm(state.shape.S @ state.frame.N) < 1e-12
    xi = state.frame.xi
    assert np.linalg.norm(state.shape.S @ xi - 1.2 * xi) < 1e-12


def test_infeasibility_search_trivial_and_incompatible():
    m = 3
    cfg = chains.ChainConfig(restarts=4, seed=7, tol=1e-10, max_iter=30)

    # Compatible: a single linear constraint on the alpha parameter.
    sat = chains.ConstraintSet(
        (chains.Constraint("alpha-is-one",
                           lambda s: np.array([s.alpha - 1.0])),)
    )
    rep = chains.infeasibility_search(sat, m, cfg)
    assert rep.best_residual < 1e-10
    assert rep.converged

    # Incompatible pair alpha = 1 and alpha = -1: the analytic floor is
    # sqrt(2), attained at alpha = 0.
    clash = chains.ConstraintSet(
        (chains.Constraint("alpha-plus", lambda s: np.array([s.alpha - 1.0])),
         chains.Constraint("alpha-minus", lambda s: np.array([s.alpha + 1.0])))
    )
    rep = chains.infeasibility_search(clash, m, cfg)
    assert abs(rep.best_residual - math.sqrt(2.0)) < 1e-6
    assert not rep.converged
    assert sum(rep.histogram.values()) == rep.executed == cfg.restarts


def test_infeasibility_search_deterministic_and_early_stop():
    cs = chains.ConstraintSet((chains.commuting_constraint(),))
    cfg = chains.ChainConfig(restarts=5, seed=3, tol=1e-8, max_iter=10)
    a = chains.infeasibility_search(cs, 3, cfg)
    b = chains.infeasibility_search(cs, 3, cfg)
    assert reports.payload_of(a) == reports.payload_of(b)
    stopped = chains.infeasibility_search(cs, 3, cfg, stop_below=1e-9)
    assert stopped.executed <= a.executed
    assert stopped.best_residual < 1e-9


def test_commuting_chain_report():
    rep = chains.run_commuting_chain(3, FAST)
    assert rep.theorem == "commuting-star-ricci"
    assert rep.m == 3
    assert tuple(s.anchor for s in rep.steps) == COMMUTING_ANCHORS
    by_anchor = {s.anchor: s for s in rep.steps}
    # The concluded contradiction scale is 4(m-1) * |phi| = 8 at m = 3.
    assert abs(by_anchor["commuting-chain:contradiction"].value - 8.0) < 1e-10
    assert by_anchor["commuting-chain:contradiction"].verdict == chains.PASS
    # Ablation: the commuting constraint alone is satisfiable.
    assert by_anchor["commuting-chain:ablation"].value < FAST.tol
    assert by_anchor["commuting-chain:ablation"].verdict == chains.PASS
    # Ablation monotonicity: removing a constraint cannot raise the floor.
    assert (by_anchor["commuting-chain:ablation"].value
            <= rep.best_search.best_residual + 1e-12)


def test_commuting_chain_deterministic():
    a = chains.run_commuting_chain(3, FAST)
    b = chains.run_commuting_chain(3, FAST)
    assert reports.payload_of(a) == reports.payload_of(b)


def test_parallel_chain_report():
    cfg = chains.ChainConfig(restarts=2, seed=42, tol=1e-8, max_iter=4)
    rep = chains.run_parallel_chain(3, cfg)
    assert rep.theorem == "parallel-star-ricci"
    assert tuple(s.anchor for s in rep.steps) == PARALLEL_ANCHORS
    by_anchor = {s.anchor: s for s in rep.steps}
    degenerate = by_anchor["parallel-chain:degenerate-case"]
    assert degenerate.value < cfg.tol
    assert degenerate.verdict == chains.PASS


def test_soliton_chain_report():
    cfg = chains.ChainConfig(restarts=3, seed=42, tol=1e-8, max_iter=10)
    rep = chains.run_soliton_chain(3, cfg)
    assert rep.theorem == "star-ricci-soliton"
    assert tuple(s.anchor for s in rep.steps) == SOLITON_ANCHORS
    by_anchor = {s.anchor: s for s in rep.steps}
    assert by_anchor["soliton-chain:lambda-zero"].verdict == chains.PASS
    # At m = 3 the concluded isotropic scale (m-3)|phi| is zero: the branch
    # is not excluded and the step stays EVIDENCE.
    iso = by_anchor["soliton-chain:alpha-zero-isotropic"]
    assert iso.value == 0.0
    assert iso.verdict == chains.EVIDENCE
    measured = by_anchor["soliton-chain:alpha-zero-isotropic-measured"]
    assert abs(measured.value - 6.0) < 1e-10


def test_chain_rejects_small_dimension():
    for runner in (chains.run_commuting_chain, chains.run_parallel_chain,
                   chains.run_soliton_chain):
        with pytest.raises(ValueError):
            runner(2, FAST)


def test_frame_at_angle_cached_and_consistent():
    f1, g1 = chains.frame_at_angle(3, 0.3)
    f2, g2 = chains.frame_at_angle(3, 0.3 + 1e-15)
    assert f1 is f2
    assert abs(g1.t - 0.3) < 1e-10
    f3, _ = chains.frame_at_angle(3, 0.0)
    assert np.linalg.norm(f3.N - np.eye(6)[:, 0]) < 1e-12
