#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace amucd {

using Complex = std::complex<double>;

/// Failure categories surfaced by the library. The CLI maps these onto
/// distinct process exit codes (see io.hpp).
enum class ErrorCode {
    OrderCapExceeded,
    DomainViolation,
    SpaceMismatch,
    LinearDependence,
    AllCandidatesDependent,
    BandViolation,
    ParseError,
    SchemaError,
    SingularSystem,
    NumericalConsistency,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Raised when a new dictionary element is numerically in the span of the
/// accepted ones. Reports the index the element would have occupied.
class LinearDependenceError : public Error {
public:
    LinearDependenceError(std::size_t index, const std::string& what)
        : Error(ErrorCode::LinearDependence, what), index_(index) {}

    std::size_t element_index() const noexcept { return index_; }

private:
    std::size_t index_;
};

/// One entry of the complete dictionary: the `order`-th derivative of the
/// reproducing kernel in its conjugated parameter, taken at `center`.
/// Within an ordered element list, `order` must equal the number of earlier
/// elements sharing the same center.
struct DictionaryElement {
    Complex center;
    int order = 0;

    bool operator==(const DictionaryElement&) const = default;
};

}  // namespace amucd
