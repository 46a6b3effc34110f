class BgsaError(Exception):
    pass


class ConfigError(BgsaError):
    pass


class InputError(BgsaError):
    """Invalid input file or inconsistent data. The message names the offending location."""


class ParameterDomainError(BgsaError, ValueError):
    pass


class InvalidStateError(BgsaError):
    pass


class DegenerateDensityError(BgsaError):
    pass


class ChainError(BgsaError):
    def __init__(self, iteration: int, cause: Exception):
        super().__init__(f"MCMC iteration {iteration} failed: {cause}")
        self.iteration = iteration
        self.cause = cause


class BenchmarkError(BgsaError):
    def __init__(self, scenario: str, replicate: int, method: str, cause: Exception):
        super().__init__(f"[scenario={scenario}, replicate={replicate}, method={method}] {cause}")
        self.scenario = scenario
        self.replicate = replicate
        self.method = method
        self.cause = cause
