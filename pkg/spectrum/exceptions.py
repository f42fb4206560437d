class CircleMapError(ValueError):
    """Base class for every rejection raised by the toolkit."""


class AliasingError(CircleMapError):
    pass


class ResolutionError(CircleMapError):
    """Consecutive samples are too far apart in phase to follow the map."""

    def __init__(self, max_step, N):
        self.max_step = max_step
        self.N = N
        super().__init__(
            f"insufficient resolution: phase step {max_step:.6f} rad >= pi at N={N}; "
            f"resample with a larger N (try {2 * N})"
        )


class PreconditionError(CircleMapError):
    pass


class ModulusCollapseError(CircleMapError):
    def __init__(self, min_modulus, floor):
        self.min_modulus = min_modulus
        self.floor = floor
        super().__init__(
            f"smoothing collapsed the modulus: min |h| = {min_modulus:.4g} <= floor {floor:.4g}; "
            "use a smaller epsilon, or the input is not in VMO at this resolution"
        )


class NotVMOError(CircleMapError):
    def __init__(self, tail_oscillation, threshold):
        self.tail_oscillation = tail_oscillation
        self.threshold = threshold
        super().__init__(
            f"not in VMO at grid resolution: oscillation {tail_oscillation:.4g} at the finest "
            f"scale exceeds {threshold:.4g}"
        )


class ReductionError(CircleMapError):
    def __init__(self, residual, delta0, required_cutoff, max_cutoff):
        self.residual = residual
        self.required_cutoff = required_cutoff
        super().__init__(
            f"cannot bring the argument below delta0={delta0} (residual {residual:.4g}) "
            f"within cutoff {max_cutoff}; input needs cutoff >= {required_cutoff}, "
            "which the grid cannot carry"
        )


class InputFormatError(CircleMapError):
    def __init__(self, path, line, message):
        self.path = path
        self.line = line
        super().__init__(f"{path}:{line}: {message}")
