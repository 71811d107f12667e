from enum import Enum


class CommandName(str, Enum):
    BOX = "box"
    MULTISPLINE = "multispline"
    PARTITION = "partition"
    DM_BASIS = "dm-basis"
    VERTICES = "vertices"
    INVERT = "invert"
    BRION_VERGNE = "brion-vergne"
    INDEX = "index"
    VERIFY = "verify"
    SAMPLE = "sample"


class SuiteName(str, Enum):
    INVERSION = "inversion"
    PARTITION = "partition"
    DM = "dm"
    INDEX = "index"
    ALL = "all"


class RowStatus(str, Enum):
    PASSED = "passed"
    FAILED = "failed"  # verdict false
    ERROR = "error"  # the check raised
    SKIPPED = "skipped"  # a dependency did not pass
