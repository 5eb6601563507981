#pragma once

#include <stdexcept>
#include <string>

#include "common.h"

namespace devspline {

class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Parameter outside the curve's domain, or curves over different domains.
class DomainError : public Error
{
public:
    using Error::Error;
};

class MalformedKnotsError : public Error
{
public:
    using Error::Error;
};

/// Wrong arity, bad counts, unusable flags.
class ArgumentError : public Error
{
public:
    using Error::Error;
};

class InvalidInsertionError : public Error
{
public:
    using Error::Error;
};

/// Curves that should share degree and knots do not.
class StructuralError : public Error
{
public:
    using Error::Error;
};

/// M* coincides with a knot used as a divisor in the control recursion.
class PoleError : public Error
{
public:
    PoleError(const std::string& what, Index index) : Error(what), index_(index) {}
    Index index() const { return index_; }

private:
    Index index_;
};

class InvalidStripError : public Error
{
public:
    InvalidStripError(const std::string& what, Index worst_cell, double worst_residual)
        : Error(what), worst_cell_(worst_cell), worst_residual_(worst_residual)
    {}
    Index worst_cell() const { return worst_cell_; }
    double worst_residual() const { return worst_residual_; }

private:
    Index worst_cell_;
    double worst_residual_;
};

/// A root handed to the Cramer step does not make a(M*) - c_L coplanar with v, w.
class InconsistentRootError : public Error
{
public:
    using Error::Error;
};

class InfeasibleError : public Error
{
public:
    using Error::Error;
};

enum class DegenerateKind {
    Cylinder,      // parallel end rulings
    Cone,          // intersecting end rulings
    Planar,        // every M* satisfies the coplanarity equation
    ZeroRuling,    // a prescribed ruling vector vanishes
    ZeroScale,     // tau == 0, the last ruling collapses
    CollapsedApex, // apex velocity gives a zero first ruling
};

inline const char* to_string(DegenerateKind kind)
{
    switch (kind) {
    case DegenerateKind::Cylinder: return "cylinder";
    case DegenerateKind::Cone: return "cone";
    case DegenerateKind::Planar: return "planar";
    case DegenerateKind::ZeroRuling: return "zero-ruling";
    case DegenerateKind::ZeroScale: return "zero-scale";
    case DegenerateKind::CollapsedApex: return "collapsed-apex";
    }
    return "unknown";
}

class DegenerateCaseError : public Error
{
public:
    DegenerateCaseError(const std::string& what, DegenerateKind kind) : Error(what), kind_(kind) {}
    DegenerateKind kind() const { return kind_; }

private:
    DegenerateKind kind_;
};

} // namespace devspline
