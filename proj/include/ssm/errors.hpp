#pragma once

#include <stdexcept>
#include <string>

namespace ssm {

/// Base class of every error thrown by this library.  All failure modes are
/// hard errors: evaluation outside a domain, a violated halfspace constraint,
/// an invalid parameter, or a solver that cannot meet its tolerance.  Nothing
/// is silently extrapolated or clamped.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Evaluation requested outside a profile interval or surface rectangle.
struct DomainError : Error { using Error::Error; };

/// A derivative order was requested that the profile cannot supply
/// (e.g. third derivatives of quadrature-defined profiles).
struct UnsupportedOrder : Error { using Error::Error; };

/// A constructor or solver parameter is invalid (zero where nonzero is
/// required, empty interval, non-unit direction, ...).
struct BadParam : Error { using Error::Error; };

/// A named per-family parameter constraint was violated; the message names
/// the offending constraint.
struct ConstraintError : Error { using Error::Error; };

/// The first fundamental form degenerated (defensive; cannot happen for
/// graph-type immersions with finite profile jets).
struct DegenerateMetric : Error { using Error::Error; };

/// A curve jet with zero speed was passed to a curvature operator.
struct DegenerateCurve : Error { using Error::Error; };

/// The supporting-halfspace constraint <position, u> > 0 failed at an
/// evaluation point.
struct HalfspaceViolation : Error { using Error::Error; };

/// The requested operation is only defined for a different connection
/// (e.g. first variation of the weighted energy needs the Levi-Civita one).
struct UnsupportedConnection : Error { using Error::Error; };

/// No closed-form curvature expression exists for this (surface type,
/// connection) combination; use the generic pipeline instead.
struct UnsupportedPair : Error { using Error::Error; };

/// The adaptive integrator could not continue (step size underflow near a
/// blow-up, step budget exhausted); the message carries the failing abscissa
/// and the last step size.
struct StepFailure : Error { using Error::Error; };

/// A structured-text surface description could not be parsed; the message
/// carries line/field diagnostics.
struct ParseError : Error { using Error::Error; };

/// Filesystem-level failure while reading or writing an artifact.
struct IoError : Error { using Error::Error; };

}  // namespace ssm
