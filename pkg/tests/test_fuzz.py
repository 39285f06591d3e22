import pytest

from eplab import InputError, SUITES, run_suite, run_trial


ALL_SUITES = sorted(SUITES)


@pytest.mark.parametrize("suite", ALL_SUITES)
def test_every_suite_clean_on_small_run(suite):
    outcome = run_suite(suite, 25, dims=range(2, 9), seed=97)
    assert outcome.ok, outcome.violations[:3]
    assert outcome.checks >= 25


def test_zero_trials_vacuous_pass():
    outcome = run_suite("hartwig_katz", 0, dims=[4], seed=0)
    assert outcome.ok
    assert outcome.trials == 0
    assert outcome.checks == 0


def test_unknown_suite():
    with pytest.raises(InputError):
        run_suite("nope", 1, dims=[4], seed=0)


def test_bad_dims():
    with pytest.raises(InputError):
        run_suite("collapse", 1, dims=[], seed=0)
    with pytest.raises(InputError):
        run_suite("collapse", 1, dims=[0], seed=0)


def test_trial_replay_is_identical():
    # replaying a trial from its seed must reproduce identical residuals
    for suite in ("hartwig_katz", "collapse", "block_kernels"):
        first = [run_trial(suite, 31, t, (2, 3, 4, 5, 6, 7, 8)) for t in range(10)]
        second = [run_trial(suite, 31, t, (2, 3, 4, 5, 6, 7, 8)) for t in range(10)]
        assert first == second


def test_block_kernel_inclusions_hold_at_scale():
    # the block-structure kernel inclusions must hold with zero violations
    # over at least a thousand generated commuting EP pairs
    outcome = run_suite("block_kernels", 1000, dims=range(2, 9), seed=4242)
    assert outcome.ok, outcome.violations[:3]


def test_parallel_matches_sequential():
    seq = run_suite("hartwig_katz", 40, dims=range(2, 7), seed=5, jobs=1)
    par = run_suite("hartwig_katz", 40, dims=range(2, 7), seed=5, jobs=2)
    assert seq.checks == par.checks
    assert seq.violations == par.violations


def test_outcome_is_order_independent_of_dims_container():
    a = run_suite("collapse", 12, dims=[2, 3, 4], seed=8)
    b = run_suite("collapse", 12, dims=(2, 3, 4), seed=8)
    assert a.checks == b.checks
    assert a.violations == b.violations
