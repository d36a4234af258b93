class MtlogError(Exception):
    """Base class for all reasoner errors."""


class ParseError(MtlogError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        where = f"{line}:{column}: " if line is not None else ""
        super().__init__(where + message)


class BottomInHeadError(ParseError):
    pass


class NonGroundFactError(ParseError):
    pass


class ArityError(ParseError):
    pass


class InfiniteHeadRangeError(ParseError):
    """A head box carries an unbounded interval."""


class SafetyError(MtlogError):
    def __init__(self, variable: str, rule):
        self.variable = variable
        self.rule = rule
        super().__init__(f"unsafe variable {variable} in rule: {rule}")


class NonTermination(MtlogError):
    def __init__(self, iterations: int, detail: str = ""):
        self.iterations = iterations
        self.detail = detail
        msg = f"no fixpoint after {iterations} iterations"
        super().__init__(msg + (f" ({detail})" if detail else ""))


class BudgetExceeded(MtlogError):
    def __init__(self, needed, budget: int, what: str = "candidates"):
        self.needed = needed
        self.budget = budget
        super().__init__(f"{what}: {needed} exceeds enumeration budget {budget}")
