"""Typed adapter errors so orchestration can tell misconfiguration from transient failures."""


class AdapterError(Exception):
    """Base class for all adapter failures."""


class AdapterUnavailableError(AdapterError):
    """Backend unreachable or misconfigured. Not retriable."""

    def __init__(self, adapter: str, detail: str = ""):
        self.adapter = adapter
        self.detail = detail
        super().__init__(f"adapter '{adapter}' unavailable" + (f": {detail}" if detail else ""))


class RateLimitError(AdapterError):
    """Backend rejected the call transiently. Retriable."""

    def __init__(self, adapter: str, detail: str = ""):
        self.adapter = adapter
        self.detail = detail
        super().__init__(f"adapter '{adapter}' rate limited" + (f": {detail}" if detail else ""))


class ContractViolationError(AdapterError, ValueError):
    """Caller violated an adapter precondition (e.g. empty category list)."""
