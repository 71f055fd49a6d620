#include <wsx/error.hh>
#include <wsx/limits.hh>

#include <limits>

namespace wsx
{
    auto error_code_name(ErrorCode code) -> std::string_view
    {
        switch (code) {
            case ErrorCode::InvalidSignature:      return "InvalidSignature";
            case ErrorCode::MissingTable:          return "MissingTable";
            case ErrorCode::ArityMismatch:         return "ArityMismatch";
            case ErrorCode::EntryOutOfRange:       return "EntryOutOfRange";
            case ErrorCode::SizeMismatch:          return "SizeMismatch";
            case ErrorCode::SignatureMismatch:     return "SignatureMismatch";
            case ErrorCode::SearchBudgetExceeded:  return "SearchBudgetExceeded";
            case ErrorCode::SyntaxError:           return "SyntaxError";
            case ErrorCode::UnknownSymbol:         return "UnknownSymbol";
            case ErrorCode::UnboundVariable:       return "UnboundVariable";
            case ErrorCode::NotHomomorphism:       return "NotHomomorphism";
            case ErrorCode::InvalidExtension:      return "InvalidExtension";
            case ErrorCode::ThetaNotAdmissible:    return "ThetaNotAdmissible";
            case ErrorCode::AlphaAxiomFailed:      return "AlphaAxiomFailed";
            case ErrorCode::KernelPreimageMissing: return "KernelPreimageMissing";
            case ErrorCode::WitnessInvalid:        return "WitnessInvalid";
            case ErrorCode::WrongTheta:            return "WrongTheta";
            case ErrorCode::WrongSignature:        return "WrongSignature";
            case ErrorCode::MembershipDiscrepancy: return "MembershipDiscrepancy";
            case ErrorCode::ConditionsFailed:      return "ConditionsFailed";
            case ErrorCode::IotaNotInY:            return "IotaNotInY";
            case ErrorCode::InvalidMorphism:       return "InvalidMorphism";
            case ErrorCode::FileFormat:            return "FileFormat";
            case ErrorCode::Internal:              return "Internal";
        }
        return "Unknown";
    }

    Error::Error(ErrorCode code, const std::string & message) :
        std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        _code(code)
    {
    }

    SyntaxError::SyntaxError(std::size_t position, const std::string & message) :
        Error(ErrorCode::SyntaxError, "at offset " + std::to_string(position) + ": " + message),
        _position(position)
    {
    }

    void internal_error(const std::string & message)
    {
        throw Error{ ErrorCode::Internal, message };
    }

    void require_budget(const SearchLimits & limits, std::uint64_t cost, const char * what)
    {
        if (cost > limits.node_budget)
            throw Error{ ErrorCode::SearchBudgetExceeded, std::string(what) + " needs " + std::to_string(cost)
                + " steps, budget is " + std::to_string(limits.node_budget) };
    }

    auto saturating_mul(std::uint64_t a, std::uint64_t b) -> std::uint64_t
    {
        if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
            return std::numeric_limits<std::uint64_t>::max();
        return a * b;
    }

    auto saturating_pow(std::uint64_t base, std::uint64_t exp) -> std::uint64_t
    {
        std::uint64_t result = 1;
        for (std::uint64_t i = 0 ; i < exp ; ++i) {
            result = saturating_mul(result, base);
            if (result == std::numeric_limits<std::uint64_t>::max())
                break;
        }
        return result;
    }
}
