from shared.util import Error


class SchemaError(Error):
    pass


class EmptyDatasetError(Error):
    pass


class SplitError(Error):
    pass


class GroupCoverageError(Error):
    pass


class SyntheticSpecError(Error):
    pass
