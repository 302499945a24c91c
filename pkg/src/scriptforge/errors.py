"""Exception hierarchy shared across the toolkit."""


class ScriptForgeError(Exception):
    """Base class for all toolkit errors."""


# --- corpus ---

class EmptyInput(ScriptForgeError):
    pass


class NoScenes(ScriptForgeError):
    def __init__(self, candidate_lines):
        self.candidate_lines = list(candidate_lines)[:3]
        super().__init__(
            "no heading marker matched; first candidate lines: "
            + " | ".join(self.candidate_lines)
        )


# --- backend ---

class MissingSlot(ScriptForgeError):
    def __init__(self, name):
        self.slot = name
        super().__init__(f"missing template slot: {name}")


class UnknownSlot(ScriptForgeError):
    def __init__(self, name):
        self.slot = name
        super().__init__(f"unknown template slot: {name}")


class BackendUnavailable(ScriptForgeError):
    pass


class ReplayMiss(ScriptForgeError):
    def __init__(self, digest):
        self.digest = digest
        super().__init__(f"no cached completion for digest {digest}")


class ResponseTooLong(ScriptForgeError):
    pass


# --- synthesis ---

class EmptyResponse(ScriptForgeError):
    pass


class NoSpeakers(ScriptForgeError):
    pass


class PartialDirectives(ScriptForgeError):
    def __init__(self, missing_fields):
        self.missing_fields = list(missing_fields)
        super().__init__(f"directive extraction failed for: {self.missing_fields}")


class DegenerateNovel(ScriptForgeError):
    pass


class IllegalTransition(ScriptForgeError):
    pass


class UnapprovedPair(ScriptForgeError):
    pass


class ModeMismatch(ScriptForgeError):
    pass


# --- dsr ---

class UnparseableStage1(ScriptForgeError):
    pass


class UnparseableScreenplay(ScriptForgeError):
    pass


# --- evalkit ---

class OutOfRange(ScriptForgeError):
    pass


class NoRatings(ScriptForgeError):
    pass


class NoScenesScored(ScriptForgeError):
    pass


class ZeroHuman(ScriptForgeError):
    pass


class IncompleteSuite(ScriptForgeError):
    pass


class TooFewCandidates(ScriptForgeError):
    pass


# --- service ---

class InvalidParams(ScriptForgeError):
    pass


class QueueEmpty(ScriptForgeError):
    pass


class NotLeased(ScriptForgeError):
    pass


class EditFailsAutoChecks(ScriptForgeError):
    def __init__(self, report):
        self.report = report
        super().__init__("edited pair fails automated checks")
