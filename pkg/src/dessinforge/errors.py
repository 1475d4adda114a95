"""Exception hierarchy shared by all dessinforge modules."""


class DessinForgeError(Exception):
    """Base class; the CLI maps these to exit code 2."""


class NotAGroup(DessinForgeError):
    def __init__(self, axiom, witness):
        self.axiom = axiom
        self.witness = witness
        super().__init__(f"{axiom} fails at {witness}")


class TooLarge(DessinForgeError):
    pass


class DoesNotGenerate(DessinForgeError):
    pass


class IdentityInS(DessinForgeError):
    pass


class TrivialGroup(DessinForgeError):
    pass


class NotInGrammar(DessinForgeError):
    pass


class PreconditionViolated(DessinForgeError):
    pass


class TagMismatch(DessinForgeError):
    pass


class NotAdmissible(DessinForgeError):
    def __init__(self, message, values=None):
        self.values = values
        super().__init__(message)


class NoneFound(DessinForgeError):
    pass


class ConfigInvalid(DessinForgeError):
    pass


class OrbitError(DessinForgeError):
    pass


class Disconnected(DessinForgeError):
    pass


class HypothesisFailed(DessinForgeError):
    def __init__(self, message, report=None):
        self.report = report
        super().__init__(message)


class NotFree(DessinForgeError):
    pass
