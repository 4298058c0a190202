#include "liftmesh/error.hpp"

#include <sstream>

namespace liftmesh {

const char* to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::Io: return "Io";
    case ErrorCode::MissingColumn: return "MissingColumn";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::NonNumeric: return "NonNumeric";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::TooFewDimensions: return "TooFewDimensions";
    case ErrorCode::DegenerateAxis: return "DegenerateAxis";
    case ErrorCode::IdMismatch: return "IdMismatch";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::UnknownBin: return "UnknownBin";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::Collinear: return "Collinear";
    case ErrorCode::DuplicatePoint: return "DuplicatePoint";
    case ErrorCode::EmptyModel: return "EmptyModel";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidModel: return "InvalidModel";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

namespace {

std::string describe_mismatch(const std::vector<std::int64_t>& in_emb, const std::vector<std::int64_t>& in_highd) {
    auto list = [](const std::vector<std::int64_t>& ids) {
        std::ostringstream out;
        out << '[';
        const std::size_t shown = std::min<std::size_t>(ids.size(), 20);
        for (std::size_t i = 0; i < shown; ++i) {
            out << (i ? "," : "") << ids[i];
        }
        if (shown < ids.size()) {
            out << ",... (" << ids.size() << " total)";
        }
        out << ']';
        return out.str();
    };
    return "ID sets differ; missing_in_emb=" + list(in_emb) + " missing_in_highd=" + list(in_highd);
}

}  // namespace

IdMismatchError::IdMismatchError(std::vector<std::int64_t> missing_in_emb, std::vector<std::int64_t> missing_in_highd)
    : Error(ErrorCode::IdMismatch, describe_mismatch(missing_in_emb, missing_in_highd)),
      missing_in_emb_(std::move(missing_in_emb)),
      missing_in_highd_(std::move(missing_in_highd)) {}

}  // namespace liftmesh
