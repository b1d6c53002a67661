"""Exception hierarchy shared across the package.

Every error a caller can trigger by passing bad input derives from
GptlabError, so the CLI can map them all to exit status 2.
"""


class GptlabError(Exception):
    """Base class for all gptlab input and validation errors."""


# -- linear algebra / polytope inputs ---------------------------------------


class DimensionMismatchInput(GptlabError):
    """Operands live in different ambient dimensions."""


class EmptyInput(GptlabError):
    """An operation that needs a nonempty set received an empty one."""


class UnboundedInput(GptlabError):
    """An inequality system describes an unbounded set where a polytope is required."""


class NotSupporting(GptlabError):
    """The given hyperplane does not support the polytope."""


class ZeroDimensionalInput(GptlabError):
    """Facet-level operations need a body of dimension at least one."""


# -- state-space construction ------------------------------------------------


class EmptyStateSet(GptlabError):
    """A state space needs at least one state."""


class NotNormalized(GptlabError):
    """Some listed state does not evaluate to 1 under the unit effect."""


class NotGenerating(GptlabError):
    """The states do not span the ambient space, so the cone is not generating."""


class NotAStateVertex(GptlabError):
    """A supplied point is not a vertex of the state polytope."""


# -- effects and transformations ----------------------------------------------


class NotPure(GptlabError):
    """The operation is defined for pure (extreme) effects only."""


class NotAFacet(GptlabError):
    """The supplied face is not a facet of the state polytope."""


class NotInTransformationSet(GptlabError):
    """The matrix is not a positive map inducing the given effect."""


class EmptyCertainFace(GptlabError):
    """The effect assigns probability one to no state."""


class IsClassical(GptlabError):
    """The operation expects a non-classical (non-simplex) theory."""


# -- serialization -------------------------------------------------------------


class ModelFormatError(GptlabError):
    """A model or report file violates the JSON schema; message names the field."""
