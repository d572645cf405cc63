// common.hpp -- shared aliases and the error taxonomy used across twistlab.
#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace twistlab {

using u32  = std::uint32_t;
using u64  = std::uint64_t;
using i64  = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;
using cplx = std::complex<double>;

// Every failure mode named by the public API. The CLI maps these to exit
// codes (config=2, constraint=3, cache=4).
enum class ErrorCode {
    NotInvertible,
    NonCoprimeModuli,
    DegreeZero,
    UnsupportedWeight,
    InsufficientSource,
    OutOfRange,
    CoefficientRangeExceeded,
    NonPrimitiveClass,
    RangeConstraintViolated,
    QuadratureFailure,
    TruncationNotConverged,
    DivisibilityViolated,
    InvalidParams,
    ModulusMismatch,
    CacheMiss,
    BadMagic,
    ChecksumMismatch,
    VersionUnsupported,
    ConfigError,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

// Global worker count for the parallel tabulation/summation drivers.
// Results are required to be identical for every value (fixed reduction
// trees everywhere), so this only affects wall time.
void set_thread_count(unsigned n);
unsigned thread_count();

} // namespace twistlab
