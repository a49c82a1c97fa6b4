__all__ = (
    "ConfigNotFoundError",
    "DegeneratePairingError",
    "InvalidInputError",
    "InvalidModuleError",
    "InvalidStructureError",
    "ResourceLimitError",
)


class InvalidInputError(ValueError):
    def __init__(self, message: str):
        super().__init__(message)


class DegeneratePairingError(InvalidInputError):
    def __init__(self, dim: int, rank: int):
        super().__init__(f"Bilinear pairing is degenerate: rank {rank} on a {dim}-dimensional space")


class InvalidModuleError(RuntimeError):
    def __init__(self, axiom: str, witness: tuple[int, ...]):
        self.witness = witness
        super().__init__(f"Module action violates {axiom} at basis triple {tuple(i + 1 for i in witness)}")


class InvalidStructureError(RuntimeError):
    def __init__(self, name: str, detail: str = ""):
        super().__init__(f"Structure `{name}` does not satisfy its structure equation{': ' + detail if detail else ''}")


class ResourceLimitError(RuntimeError):
    def __init__(self, size: int, cap: int):
        self.size = size
        self.cap = cap
        super().__init__(f"Cochain complex needs {size} coefficients, above the configured size cap of {cap}")


class ConfigNotFoundError(RuntimeError):
    def __init__(self, config_dir, calling_file):
        super().__init__(f"Could not find `{config_dir}` directory on or above: {calling_file}")
