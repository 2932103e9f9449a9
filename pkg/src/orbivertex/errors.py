"""Exception hierarchy. Every error carries a short machine-readable ``code``."""


class OrbivertexError(Exception):
    code = "error"

    def to_dict(self):
        return {"error": self.code, "message": str(self)}


class NonSL(OrbivertexError):
    code = "NonSL"


class Ineffective(OrbivertexError):
    code = "Ineffective"


class TrivialGroup(OrbivertexError):
    code = "TrivialGroup"


class TooLarge(OrbivertexError):
    code = "TooLarge"


class NotApplicable(OrbivertexError):
    code = "NotApplicable"


class InternalInconsistency(OrbivertexError):
    code = "InternalInconsistency"


class NotCompact(OrbivertexError):
    code = "NotCompact"


class NoBasisFound(OrbivertexError):
    code = "NoBasisFound"


class NotOnV1V2(OrbivertexError):
    code = "NotOnV1V2"


class NonIntegerDifference(OrbivertexError):
    code = "NonIntegerDifference"


class GammaPole(OrbivertexError):
    code = "GammaPole"


class TruncationMismatch(OrbivertexError):
    code = "TruncationMismatch"


class NonIntegralPhaseInComparison(OrbivertexError):
    code = "NonIntegralPhaseInComparison"


class WeightNotAdmissible(OrbivertexError):
    code = "WeightNotAdmissible"


class Singular(OrbivertexError):
    code = "Singular"


class NotEffective(OrbivertexError):
    code = "NotEffective"


class Mismatch(OrbivertexError):
    code = "Mismatch"


class SpecParseError(OrbivertexError):
    code = "SpecParseError"
