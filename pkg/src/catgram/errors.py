"""Exception hierarchy shared by all catgram modules."""


class CatgramError(Exception):
    """Base class for every error raised by this package."""


class ParseError(CatgramError, ValueError):
    """Malformed category, category-string or grammar text."""


class ReservedNameError(ParseError):
    """A user-supplied name uses the reserved ``_`` prefix."""


class BudgetExceeded(CatgramError):
    """A search exceeded its configured resource cap."""


class GrammarError(CatgramError, ValueError):
    pass


class UndeclaredSymbol(GrammarError):
    pass


class EmptyRhs(GrammarError):
    pass


class EmptyLanguage(GrammarError):
    pass


class UnknownTerminal(GrammarError):
    pass


class GadgetError(CatgramError, ValueError):
    pass


class ShapeError(GadgetError):
    """Category is not of the form p, p/q or (p/q)/s."""


class FreshnessError(GadgetError):
    """A supposedly fresh primitive occurs elsewhere in the construction."""


class EqualCategories(GadgetError):
    pass


class DuplicateCategory(GadgetError):
    pass


class NotGnf2(GrammarError):
    pass


class UncoveredTerminal(GrammarError):
    pass


class UnknownSymbol(CatgramError, ValueError):
    pass
