#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dflow {

enum class ErrorKind {
    GridTooShort,
    CoincidentPoints,
    SingularTangent,
    Blowup,
    NotArclengthPolarized,
    NonRegular,
    InvalidArgument,
};

/// Stable short identifier for an error kind, e.g. "coincident-points".
std::string_view error_code(ErrorKind kind) noexcept;

/// Library failure. Carries a machine-readable kind and, where it applies,
/// the grid node (or vertex / edge) at which the failure was detected.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message, std::optional<std::size_t> index = std::nullopt);

    ErrorKind kind() const noexcept { return kind_; }
    std::string_view code() const noexcept { return error_code(kind_); }
    std::optional<std::size_t> index() const noexcept { return index_; }

private:
    ErrorKind kind_;
    std::optional<std::size_t> index_;
};

} // namespace dflow
