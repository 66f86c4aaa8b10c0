"""Time-varying 2D current fields.

Every field is an immutable value object exposing ``velocity(x, y, t)``,
where the inputs may be scalars or broadcastable numpy arrays and the
output is the pair of current components, same shape.  All evaluation is
pure: identical arguments give bit-identical results, and positions
outside a field's nominal domain evaluate the same formulas (clipping a
route to a domain is the grid's job, not the field's).

Three models are provided:

* ``UniformField`` -- spatially constant, steady current.
* ``RiverField``   -- steady cross-channel profile: zero at both banks,
  parabolic in between, peaking mid channel.
* ``JetField``     -- dimensionless meandering eastward jet driven by a
  stream function whose meander amplitude oscillates in time; velocities
  are the skew gradient of the stream function, taken by central finite
  differences (the analytic partials are easy to get wrong, and the
  O(h^2) difference error sits far below every planner tolerance).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Protocol, runtime_checkable

import numpy as np

#: Default central-difference step for velocities and their gradients.
DEFAULT_FD_STEP = 1e-5


class FlowVector(NamedTuple):
    """Current components at one point and time."""

    u: float
    v: float


class FlowJacobian(NamedTuple):
    """Spatial partial derivatives of the current at one point and time."""

    u_x: float
    u_y: float
    v_x: float
    v_y: float


@runtime_checkable
class FlowField(Protocol):
    """Anything that can be sampled for a current vector."""

    time_varying: bool

    def velocity(self, x, y, t): ...


@dataclass(frozen=True)
class UniformField:
    """Spatially constant, steady current. Its gradient is identically zero."""

    u0: float = 0.0
    v0: float = 0.0

    time_varying = False

    def velocity(self, x, y, t):
        shape = np.broadcast_shapes(np.shape(x), np.shape(y), np.shape(t))
        return (
            np.broadcast_to(np.float64(self.u0), shape),
            np.broadcast_to(np.float64(self.v0), shape),
        )


@dataclass(frozen=True)
class RiverField:
    """Steady cross-channel current over ``x`` in [0, width].

    The along-channel component is zero everywhere; the cross component
    follows a parabola that vanishes at both banks (x = 0 and x = width)
    and reaches ``peak_speed`` at mid channel.
    """

    width: float
    peak_speed: float

    time_varying = False

    def __post_init__(self) -> None:
        if not self.width > 0:
            raise ValueError(f"river width must be positive, got {self.width}")

    def velocity(self, x, y, t):
        x = np.asarray(x, dtype=np.float64)
        v = (4.0 * self.peak_speed / (self.width * self.width)) * x * (self.width - x)
        shape = np.broadcast_shapes(v.shape, np.shape(y), np.shape(t))
        return np.broadcast_to(np.float64(0.0), shape), np.broadcast_to(v, shape)


@dataclass(frozen=True)
class JetField:
    """Meandering eastward jet, dimensionless.

    The jet core follows ``y = B(t) cos(k (x - c t))`` where the meander
    amplitude ``B(t) = B0 + eps cos(omega t + theta)`` oscillates in time
    and the whole pattern drifts east at phase speed ``c``.  The current is
    the skew gradient of the stream function (``u = -dphi/dy``,
    ``v = dphi/dx``), evaluated with central differences of step
    ``fd_step``.
    """

    mean_amplitude: float = 1.2
    oscillation_amplitude: float = 0.3
    oscillation_frequency: float = 0.4
    phase: float = math.pi / 2
    wavenumber: float = 0.84
    phase_speed: float = 0.12
    fd_step: float = DEFAULT_FD_STEP

    time_varying = True

    def __post_init__(self) -> None:
        if not self.fd_step > 0:
            raise ValueError(f"fd_step must be positive, got {self.fd_step}")

    def meander_amplitude(self, t):
        """Meander amplitude B(t); periodic with period 2*pi/frequency."""
        t = np.asarray(t, dtype=np.float64)
        return self.mean_amplitude + self.oscillation_amplitude * np.cos(
            self.oscillation_frequency * t + self.phase
        )

    def stream_function(self, x, y, t):
        """Stream function of the jet; equals 1 exactly on the jet core."""
        x = np.asarray(x, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        t = np.asarray(t, dtype=np.float64)
        amp = self.meander_amplitude(t)
        arg = self.wavenumber * (x - self.phase_speed * t)
        core = amp * np.cos(arg)
        slope = self.wavenumber * amp * np.sin(arg)
        return 1.0 - np.tanh((y - core) / np.sqrt(1.0 + slope * slope))

    def velocity(self, x, y, t):
        h = self.fd_step
        x = np.asarray(x, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        xs = np.stack([x, x, x + h, x - h])
        ys = np.stack([y + h, y - h, y, y])
        phi = self.stream_function(xs, ys, t)
        inv = 0.5 / h
        u = (phi[1] - phi[0]) * inv
        v = (phi[2] - phi[3]) * inv
        return u, v


def sample(field: FlowField, p, t) -> FlowVector:
    """Current vector of ``field`` at position ``p`` and time ``t``."""
    u, v = field.velocity(p[0], p[1], t)
    return FlowVector(float(u), float(v))


def jacobian(field: FlowField, p, t, h: float = DEFAULT_FD_STEP) -> FlowJacobian:
    """Central-difference estimate of the current's spatial gradient.

    For a constant field the differences cancel exactly, so the result is
    an exact zero matrix, not merely a small one.
    """
    if not h > 0:
        raise ValueError(f"finite-difference step must be positive, got {h}")
    x, y = float(p[0]), float(p[1])
    xs = np.array([x + h, x - h, x, x])
    ys = np.array([y, y, y + h, y - h])
    u, v = field.velocity(xs, ys, t)
    inv = 0.5 / h
    return FlowJacobian(
        u_x=float((u[0] - u[1]) * inv),
        u_y=float((u[2] - u[3]) * inv),
        v_x=float((v[0] - v[1]) * inv),
        v_y=float((v[2] - v[3]) * inv),
    )


def velocity_and_jacobian(field: FlowField, x, y, t, h: float = DEFAULT_FD_STEP):
    """Current and its gradient in one batched field call.

    Accepts scalar or array ``x``/``y`` and returns the six arrays
    ``(u, v, u_x, u_y, v_x, v_y)``.  Stacking the five stencil points into
    a single ``velocity`` call keeps the trajectory integrator's cost at
    one field evaluation per derivative call.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    xs = np.stack([x, x + h, x - h, x, x])
    ys = np.stack([y, y, y, y + h, y - h])
    u, v = field.velocity(xs, ys, t)
    inv = 0.5 / h
    return (
        u[0],
        v[0],
        (u[1] - u[2]) * inv,
        (u[3] - u[4]) * inv,
        (v[1] - v[2]) * inv,
        (v[3] - v[4]) * inv,
    )
