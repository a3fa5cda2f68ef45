class ServiceError(Exception):
    def __init__(self, error_msg: str):
        self.error_msg = error_msg
        super().__init__(self.error_msg)


class InputError(ServiceError):
    """Bad user input: paths, data files, configuration, feature indices."""


class ModelError(ServiceError):
    """A model file that cannot be read back."""


class DatasetNotFoundError(InputError):
    pass


class MissingColumnError(InputError):
    pass


class MalformedRowError(InputError):
    pass


class EmptyDatasetError(InputError):
    pass


class ConfigError(InputError):
    pass


class ArityError(InputError):
    pass


class GridSpecError(InputError):
    pass


class BoundPreconditionError(InputError):
    pass


class ModelFileError(ModelError):
    pass


class ModelVersionError(ModelError):
    pass


class ModelNotFoundError(InputError):
    pass


class UnknownLabelError(InputError):
    pass
