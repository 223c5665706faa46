#pragma once

#include <stdexcept>
#include <string>

namespace gclink {

/// Base class for every domain error raised by the library.  The `code()`
/// string is stable and machine readable; the CLI copies it into its error
/// JSON.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define GCLINK_DEFINE_ERROR(Name)                                          \
    class Name : public Error {                                            \
    public:                                                                \
        explicit Name(const std::string& what) : Error(#Name, what) {}     \
    }

GCLINK_DEFINE_ERROR(NotOrthonormal);
GCLINK_DEFINE_ERROR(NotTransverse);
GCLINK_DEFINE_ERROR(BadLinking);
GCLINK_DEFINE_ERROR(TangentCircles);
GCLINK_DEFINE_ERROR(DegenerateTriple);
GCLINK_DEFINE_ERROR(UnsupportedSize);
GCLINK_DEFINE_ERROR(IndeterminateConfiguration);
GCLINK_DEFINE_ERROR(InvalidParams);
GCLINK_DEFINE_ERROR(RangeError);
GCLINK_DEFINE_ERROR(PremiseFailure);
GCLINK_DEFINE_ERROR(OddNumerator);
GCLINK_DEFINE_ERROR(ParseError);

#undef GCLINK_DEFINE_ERROR

}  // namespace gclink
