#pragma once

#include <stdexcept>
#include <string>

namespace iterforge {

/// Base class of every domain error raised by the library. The command line
/// front end maps these to exit code 3.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define ITERFORGE_DEFINE_ERROR(Name)          \
    class Name : public Error {               \
    public:                                   \
        using Error::Error;                   \
    }

ITERFORGE_DEFINE_ERROR(MalformedWord);
ITERFORGE_DEFINE_ERROR(OrderZero);
ITERFORGE_DEFINE_ERROR(PositionOutOfRange);
ITERFORGE_DEFINE_ERROR(IndexOutOfRange);
ITERFORGE_DEFINE_ERROR(UnknownLabel);
ITERFORGE_DEFINE_ERROR(OrderMismatch);
ITERFORGE_DEFINE_ERROR(InvalidSpec);
ITERFORGE_DEFINE_ERROR(OrderOverflow);
ITERFORGE_DEFINE_ERROR(BadArity);
ITERFORGE_DEFINE_ERROR(IllFoundedRecursion);
ITERFORGE_DEFINE_ERROR(NonIntegralTerm);

#undef ITERFORGE_DEFINE_ERROR

} // namespace iterforge
