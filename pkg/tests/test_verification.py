"""Plumbing checks for the self-verification runner.

The suites' numeric content is exercised through the CLI verify tests and the
acceptance run; here we only pin the registry and the runner's contract.
"""

import pytest

from wiretap_adc import ValidationError
from wiretap_adc import verification

EXPECTED_SUITES = (
    "z_rate_monotone",
    "entropy_identity",
    "entropy_gap_monotone",
    "fold_conditional_entropy",
    "folding_gap_signs",
    "construction_positivity",
    "limit_convergence",
    "qpsk",
    "closed_forms",
    "mi_oracle",
    "support_condition",
    "kkt",
)


def test_registry_names_are_frozen():
    assert tuple(name for name, _ in verification.SUITES) == EXPECTED_SUITES


def test_subset_run_and_result_shape():
    results = verification.run_verification(seed=2, names=["closed_forms"])
    assert len(results) == 1
    res = results[0]
    assert res.passed
    assert res.cases > 0
    assert res.worst is not None and res.worst < 1e-10
    payload = res.to_json()
    assert set(payload) == {"name", "passed", "worst", "detail", "cases"}


def test_unknown_suite_name_rejected():
    with pytest.raises(ValidationError):
        verification.run_verification(names=["closed_forms", "spectral"])


def test_same_seed_same_worst():
    a = verification.run_verification(seed=7, names=["entropy_identity"])[0]
    b = verification.run_verification(seed=7, names=["entropy_identity"])[0]
    assert a.worst == b.worst


def test_broken_sign_invariant_is_caught(monkeypatch):
    import wiretap_adc.optimizer as optimizer

    real_gap = optimizer.folding_gap
    monkeypatch.setattr(
        optimizer, "folding_gap", lambda chan, dist: -real_gap(chan, dist)
    )
    res = verification.run_verification(names=["folding_gap_signs"])[0]
    assert not res.passed
