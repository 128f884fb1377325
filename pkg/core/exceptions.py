"""
Exceptions shared by every app.

Bad user-supplied values raise django's ValidationError, as elsewhere in the
project. The classes below are for failures of the mathematics itself:
- NotPlanarError: an embedding is not genus 0, or a face walk is bridged
- StructureError: objects that do not belong together (foreign cycle,
  parent mismatch, marker mismatch, wrong graph class)
- NotApplicableError: a construction whose hypotheses are not met
- ProofStepError: a step that the underlying proof guarantees has failed
- SearchLimitError: a bounded search ran out of nodes
"""


class CdcError(Exception):
    """Base class for domain failures."""


class NotPlanarError(CdcError):
    pass


class StructureError(CdcError):
    pass


class NotApplicableError(CdcError):
    pass


class ProofStepError(CdcError):
    """Raised when a structural claim of a constructive proof does not hold.

    Never caught inside the library: it signals a bug.
    """


class SearchLimitError(CdcError):
    pass
