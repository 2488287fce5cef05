class ResourceError(RuntimeError):
    """A request exceeds a configured resource guard."""
