#pragma once

#include <stdexcept>
#include <string>

namespace qtb {

struct QtbError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Interval data too wide to certify a required predicate at the precision cap.
struct CertificationFailed : QtbError {
    using QtbError::QtbError;
};

struct IndependenceNotCertified : CertificationFailed {
    using CertificationFailed::CertificationFailed;
};

struct ContinuityNotCertified : CertificationFailed {
    using CertificationFailed::CertificationFailed;
};

struct PositionNotCertified : CertificationFailed {
    using CertificationFailed::CertificationFailed;
};

struct UnsupportedDimension : QtbError {
    using QtbError::QtbError;
};

struct SubcomplexViolation : QtbError {
    using QtbError::QtbError;
};

struct AssemblyIncomplete : QtbError {
    using QtbError::QtbError;
};

struct ComponentMismatch : QtbError {
    using QtbError::QtbError;
};

struct OddBettiViolation : QtbError {
    using QtbError::QtbError;
};

struct ParseError : QtbError {
    using QtbError::QtbError;
};

}  // namespace qtb
