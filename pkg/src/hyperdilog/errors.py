"""Exception types shared across the package."""


class DomainError(ValueError):
    """Argument lies outside the domain of the requested function or map."""


class IntegrandError(ArithmeticError):
    """The integrand returned a non-finite value at an interior node."""


class UnknownIdentityError(KeyError):
    """Requested identity id is not in the registry."""

    def __init__(self, ident: str, valid: list[str]):
        self.ident = ident
        self.valid = list(valid)
        super().__init__(ident)

    def __str__(self) -> str:
        return f"unknown identity {self.ident!r}; valid ids: {', '.join(self.valid)}"
