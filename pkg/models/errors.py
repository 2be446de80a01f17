from shared.util import Error


class ShapeError(Error):
    pass


class DegenerateLabelsError(Error):
    pass


class DivergenceError(Error):
    pass


class UnsupportedModelError(Error):
    pass


class CheckpointError(Error):
    pass
