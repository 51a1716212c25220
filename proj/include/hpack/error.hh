#ifndef HPACK_ERROR_HH
#define HPACK_ERROR_HH

#include <stdexcept>
#include <string>
#include <string_view>

namespace hpack
{
    enum class ErrorKind
    {
        EmptyGraph,
        DegenerateSet,
        OverlappingSets,
        BadSizes,
        BadParameter,
        PatternTooLarge,
        Degenerate,
        Timeout,
        Stuck,
        InternalError,
        Parse
    };

    auto to_string(ErrorKind kind) -> std::string_view;

    /// Every failure raised by the library. `stage` is set for Stuck errors raised
    /// from inside a multi-step procedure, and names the step that gave up.
    class Error : public std::runtime_error
    {
        public:
            Error(ErrorKind kind, const std::string & message, std::string stage = "");

            auto kind() const -> ErrorKind { return _kind; }
            auto stage() const -> const std::string & { return _stage; }

        private:
            ErrorKind _kind;
            std::string _stage;
    };
}

#endif
