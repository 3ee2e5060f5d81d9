#include "fairfold/errors.hpp"

namespace fairfold {

const char* errc_name(Errc code) {
    switch (code) {
        case Errc::MissingColumn: return "MissingColumn";
        case Errc::UnparseableCell: return "UnparseableCell";
        case Errc::EmptyAfterPolicy: return "EmptyAfterPolicy";
        case Errc::SingleClass: return "SingleClass";
        case Errc::EmptyRowSet: return "EmptyRowSet";
        case Errc::TooFewClassMembers: return "TooFewClassMembers";
        case Errc::FoldOutOfRange: return "FoldOutOfRange";
        case Errc::KTooLarge: return "KTooLarge";
        case Errc::MinoritySingleton: return "MinoritySingleton";
        case Errc::NoBorderline: return "NoBorderline";
        case Errc::MinorityExceedsMajority: return "MinorityExceedsMajority";
        case Errc::DegenerateFeatures: return "DegenerateFeatures";
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::OneClassOnly: return "OneClassOnly";
        case Errc::NonpositiveBaseline: return "NonpositiveBaseline";
        case Errc::BadCounts: return "BadCounts";
        case Errc::UnknownFlag: return "UnknownFlag";
        case Errc::InvalidValue: return "InvalidValue";
        case Errc::MissingDataset: return "MissingDataset";
        case Errc::IoError: return "IoError";
        case Errc::Internal: return "Internal";
    }
    return "Unknown";
}

}  // namespace fairfold
