#include <hpack/error.hh>

using std::string;
using std::string_view;

namespace hpack
{
    auto to_string(ErrorKind kind) -> string_view
    {
        switch (kind) {
            case ErrorKind::EmptyGraph:      return "EmptyGraph";
            case ErrorKind::DegenerateSet:   return "DegenerateSet";
            case ErrorKind::OverlappingSets: return "OverlappingSets";
            case ErrorKind::BadSizes:        return "BadSizes";
            case ErrorKind::BadParameter:    return "BadParameter";
            case ErrorKind::PatternTooLarge: return "PatternTooLarge";
            case ErrorKind::Degenerate:      return "Degenerate";
            case ErrorKind::Timeout:         return "Timeout";
            case ErrorKind::Stuck:           return "Stuck";
            case ErrorKind::InternalError:   return "InternalError";
            case ErrorKind::Parse:           return "Parse";
        }
        return "Unknown";
    }

    Error::Error(ErrorKind kind, const string & message, string stage) :
        std::runtime_error(string{ to_string(kind) } + ": " + message),
        _kind(kind),
        _stage(std::move(stage))
    {
    }
}
