"""Exception hierarchy shared by every module."""


class OrderlabError(Exception):
    pass


class CycleError(OrderlabError):
    """The supplied relation pairs force x <= y <= x for distinct x, y."""


class UnknownLabel(OrderlabError):
    pass


class SearchBudgetExceeded(OrderlabError):
    """A bounded exhaustive search ran past its configured budget."""


class PosetMismatch(OrderlabError):
    """Two group elements live over different posets."""


class NotInCone(OrderlabError):
    pass


class NotLowerSet(OrderlabError):
    pass


class EmptyPoset(OrderlabError):
    pass


class NotAnIdeal(OrderlabError):
    pass


class NotUpperSet(OrderlabError):
    pass


class NTooSmall(OrderlabError):
    """Truncation parameter n = 1 collapses every partition; n >= 2 required."""


class IndexMismatch(OrderlabError):
    pass


class MorphismError(OrderlabError):
    pass


class NotPosMorphism(MorphismError):
    pass


class NotInjective(MorphismError):
    pass


class NotIsotone(MorphismError):
    pass


class NotGraphMorphism(MorphismError):
    pass


class SchemaError(OrderlabError):
    def __init__(self, message, field=None):
        super().__init__(message if field is None else "%s (field: %s)" % (message, field))
        self.field = field
