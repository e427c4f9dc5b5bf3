#pragma once

#include <stdexcept>
#include <string>

namespace kgv {

// Base type for everything thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input data: dangling endpoints, duplicate ids, ill-typed squares.
// Distinct from axiom failures, which are reported (not thrown) by validators.
struct StructuralError : Error {
  using Error::Error;
};

// Degree arithmetic left the admissible range (negative coordinate where a
// nonnegative one is required, request outside [0, d], integer overflow).
struct DegreeError : Error {
  using Error::Error;
};

// compose() called on a non-composable pair.
struct CompositionError : Error {
  using Error::Error;
};

// An operation on a window-truncated graph needed data beyond the window.
// Callers treat this as "untested", never as a pass or a fail.
struct WindowExhausted : Error {
  using Error::Error;
};

// An operation ran into a violated graph axiom (e.g. a missing factorisation
// square) on a graph that was never validated.
struct AxiomError : Error {
  using Error::Error;
};

// Cayley table is not a group, or monoid data is inconsistent.
struct GroupError : Error {
  using Error::Error;
};

// Edge labelling is not a functor (square-inconsistent values).
struct FunctorError : Error {
  using Error::Error;
};

// Generator maps do not define an action (not a graph morphism, or the
// required commutation/invertibility fails on the window).
struct ActionError : Error {
  using Error::Error;
};

// A documented precondition of an algebra operation was violated
// (e.g. a path family with repeated sources or mixed degrees).
struct PreconditionError : Error {
  using Error::Error;
};

// Spec-file syntax error; message carries line number and context.
struct ParseError : Error {
  using Error::Error;
};

}  // namespace kgv
