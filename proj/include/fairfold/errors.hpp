#pragma once

#include <stdexcept>
#include <string>

namespace fairfold {

/// Failure categories surfaced by the library. Tests match on the code,
/// messages are for humans.
enum class Errc {
    MissingColumn,
    UnparseableCell,
    EmptyAfterPolicy,
    SingleClass,
    EmptyRowSet,
    TooFewClassMembers,
    FoldOutOfRange,
    KTooLarge,
    MinoritySingleton,
    NoBorderline,
    MinorityExceedsMajority,
    DegenerateFeatures,
    DimensionMismatch,
    OneClassOnly,
    NonpositiveBaseline,
    BadCounts,
    UnknownFlag,
    InvalidValue,
    MissingDataset,
    IoError,
    Internal,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace fairfold
