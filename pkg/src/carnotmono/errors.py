"""Error type shared by all modules.

Every failure carries a short machine-readable ``code`` so callers (and the
CLI) can branch on it without parsing messages.
"""


class CarnotError(ValueError):
    def __init__(self, code: str, message: str = ""):
        self.code = code
        super().__init__(f"{code}: {message}" if message else code)
