#include "dflow/error.hpp"

#include <utility>

namespace dflow {

std::string_view error_code(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::GridTooShort: return "grid-too-short";
    case ErrorKind::CoincidentPoints: return "coincident-points";
    case ErrorKind::SingularTangent: return "singular-tangent";
    case ErrorKind::Blowup: return "blowup";
    case ErrorKind::NotArclengthPolarized: return "not-arclength-polarized";
    case ErrorKind::NonRegular: return "non-regular";
    case ErrorKind::InvalidArgument: return "invalid-argument";
    }
    return "unknown";
}

namespace {

std::string format_message(ErrorKind kind, const std::string& message, std::optional<std::size_t> index)
{
    std::string out(error_code(kind));
    if (index) {
        out += " at index " + std::to_string(*index);
    }
    if (!message.empty()) {
        out += ": " + message;
    }
    return out;
}

} // namespace

Error::Error(ErrorKind kind, std::string message, std::optional<std::size_t> index)
    : std::runtime_error(format_message(kind, message, index))
    , kind_(kind)
    , index_(index)
{
}

} // namespace dflow
