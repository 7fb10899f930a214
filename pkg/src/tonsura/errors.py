"""Exception taxonomy.

Two failure families matter to callers: problems with the input data
(files, columns, alignment) and statistics that are undefined on the
data actually supplied (zero variance, all-tied pairs, too few
survivors).  The CLI maps them to distinct exit codes.
"""


class TonsuraError(Exception):
    """Base class for all errors raised by this package."""


class DataError(TonsuraError):
    """Input data could not be loaded, parsed, or aligned (CLI exit 2)."""


class NoSuchColumn(DataError):
    """The requested column name or index is not present in the file."""


class EmptyAfterCleaning(DataError):
    """No usable rows remain after dropping unparseable values."""


class NonPositiveLevel(DataError):
    """Log or percent returns requested on levels that are not strictly positive."""


class TooFewAligned(DataError):
    """Fewer than two observations survive the alignment policy."""


class DegenerateStatistics(TonsuraError):
    """The requested statistic is undefined on this data (CLI exit 3)."""


class ConstantSeries(DegenerateStatistics):
    """A marginal has zero scale, so standardized distances are undefined."""


class ConstantSubset(DegenerateStatistics):
    """A marginal is constant on the evaluated subset, so correlation is undefined."""


class DegenerateSubset(DegenerateStatistics):
    """All pair comparisons are ties; the concordance denominator is zero."""


class DegenerateOctants(DegenerateStatistics):
    """The reference octant group is empty, so the population ratio is undefined."""


class TooFewSurvivors(DegenerateStatistics):
    """Tonsuring (or thresholding) would leave fewer than two observations."""


class InvalidPercent(TonsuraError, ValueError):
    """Tonsure percentage outside the valid [0, 100) range (CLI exit 1)."""
