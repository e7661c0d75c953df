#pragma once

#include <stdexcept>
#include <string>

namespace steinberg {

// Base for every error raised by the library. kind() is the short tag
// (CapExceeded, BadParams, ...) that the CLI and the Python layer report.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define STEINBERG_ERROR(Name)                                               \
    class Name : public Error {                                             \
    public:                                                                 \
        explicit Name(const std::string& what) : Error(#Name, what) {}      \
    }

STEINBERG_ERROR(BadField);
STEINBERG_ERROR(CapExceeded);
STEINBERG_ERROR(NotInGroup);
STEINBERG_ERROR(Unsupported);
STEINBERG_ERROR(BadParams);
STEINBERG_ERROR(NotInvolutive);
STEINBERG_ERROR(NotRankOne);
STEINBERG_ERROR(UnsupportedType);
STEINBERG_ERROR(ZeroInput);
STEINBERG_ERROR(PrimeMismatch);
STEINBERG_ERROR(Singular);
STEINBERG_ERROR(SmallN);
STEINBERG_ERROR(BadTarget);
STEINBERG_ERROR(Unclassifiable);
STEINBERG_ERROR(InconsistentIncidence);
STEINBERG_ERROR(BadCharacter);

#undef STEINBERG_ERROR

}  // namespace steinberg
