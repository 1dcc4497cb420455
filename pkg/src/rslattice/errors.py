class WorkLimitExceeded(RuntimeError):
    """A DP table or enumeration would exceed the configured work limit."""


class VerificationFailed(RuntimeError):
    """A constructed object failed its own exhaustive re-verification."""


DEFAULT_WORK_LIMIT = 2_000_000_000


def check_work(amount, limit, what):
    if limit is not None and amount > limit:
        raise WorkLimitExceeded(f"{what}: {amount} exceeds work limit {limit}")
