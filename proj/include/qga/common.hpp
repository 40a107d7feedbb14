#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace qga {

using Int = std::int64_t;
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Every named failure condition in the library. CLI maps spec violations to
// exit 2 and check failures to exit 1.
enum class Errc {
    InfiniteGroup,
    NotPGroup,
    NegativeMultiplicity,
    NotOddPrime,
    InvalidTuple,
    NotTau5,
    PrimeTooSmall,
    BadClass,
    InconsistentPresentation,
    NotNormal,
    NotAbelian,
    BoundExceeded,
    LiftFailure,
    SectionMismatch,
    CriterionMismatch,
    NotIdempotent,
    NotCentral,
    NonRationalCoefficients,
    NotOddPGroup,
    Overflow,
    BadSpec,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::InfiniteGroup: return "InfiniteGroup";
        case Errc::NotPGroup: return "NotPGroup";
        case Errc::NegativeMultiplicity: return "NegativeMultiplicity";
        case Errc::NotOddPrime: return "NotOddPrime";
        case Errc::InvalidTuple: return "InvalidTuple";
        case Errc::NotTau5: return "NotTau5";
        case Errc::PrimeTooSmall: return "PrimeTooSmall";
        case Errc::BadClass: return "BadClass";
        case Errc::InconsistentPresentation: return "InconsistentPresentation";
        case Errc::NotNormal: return "NotNormal";
        case Errc::NotAbelian: return "NotAbelian";
        case Errc::BoundExceeded: return "BoundExceeded";
        case Errc::LiftFailure: return "LiftFailure";
        case Errc::SectionMismatch: return "SectionMismatch";
        case Errc::CriterionMismatch: return "CriterionMismatch";
        case Errc::NotIdempotent: return "NotIdempotent";
        case Errc::NotCentral: return "NotCentral";
        case Errc::NonRationalCoefficients: return "NonRationalCoefficients";
        case Errc::NotOddPGroup: return "NotOddPGroup";
        case Errc::Overflow: return "Overflow";
        case Errc::BadSpec: return "BadSpec";
    }
    return "?";
}

/// p^k with overflow detection (throws Errc::Overflow).
Int ipow(Int base, Int exp);

/// Floor of log_p(n) for n a power of p; throws NotPGroup if n is not one.
Int plog(Int p, Int n);

bool is_prime(Int n);

/// Euler phi. Exact for any positive n (only small n occur here).
Int euler_phi(Int n);

Int gcd_int(Int a, Int b);

Int mod_pow(Int b, Int e, Int m);
Int mod_inv(Int a, Int m);

}  // namespace qga
