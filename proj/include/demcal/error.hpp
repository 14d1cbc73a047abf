#ifndef DEMCAL_ERROR_HPP
#define DEMCAL_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace demcal {

enum class ErrorCode {
    InvalidInput,
    DomainOverflow,
    Timeout,
    EmptyExperiment,
    DegeneratePile,
    NoSlide,
    Geometry,
    InvalidVolume,
    DegenerateData,
    DegenerateDesign,
    UnsupportedSize,
    CannotTest,
    NoSolution,
    AmbiguousSolution,
    PressUndefined,
    InvalidPlan,
    StageFailure,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Base exception for every failure reported by the library.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

namespace detail {
[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, const std::string& what, ErrorCode code = ErrorCode::InvalidInput) {
    if (!cond) fail(code, what);
}
}  // namespace detail

}  // namespace demcal

#endif  // DEMCAL_ERROR_HPP
