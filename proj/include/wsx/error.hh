#ifndef WSX_ERROR_HH
#define WSX_ERROR_HH 1

#include <stdexcept>
#include <string>
#include <string_view>

namespace wsx
{
    enum class ErrorCode
    {
        InvalidSignature,
        MissingTable,
        ArityMismatch,
        EntryOutOfRange,
        SizeMismatch,
        SignatureMismatch,
        SearchBudgetExceeded,
        SyntaxError,
        UnknownSymbol,
        UnboundVariable,
        NotHomomorphism,
        InvalidExtension,
        ThetaNotAdmissible,
        AlphaAxiomFailed,
        KernelPreimageMissing,
        WitnessInvalid,
        WrongTheta,
        WrongSignature,
        MembershipDiscrepancy,
        ConditionsFailed,
        IotaNotInY,
        InvalidMorphism,
        FileFormat,
        Internal
    };

    auto error_code_name(ErrorCode code) -> std::string_view;

    class Error : public std::runtime_error
    {
        private:
            ErrorCode _code;

        public:
            Error(ErrorCode code, const std::string & message);

            auto code() const noexcept -> ErrorCode
            {
                return _code;
            }
    };

    /// Thrown by the term parser; carries the byte offset of the offending token.
    class SyntaxError : public Error
    {
        private:
            std::size_t _position;

        public:
            SyntaxError(std::size_t position, const std::string & message);

            auto position() const noexcept -> std::size_t
            {
                return _position;
            }
    };

    [[noreturn]] void internal_error(const std::string & message);
}

#endif
