#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace liftmesh {

enum class ErrorCode {
    Io,
    MissingColumn,
    DuplicateId,
    NonNumeric,
    NonFinite,
    TooFewDimensions,
    DegenerateAxis,
    IdMismatch,
    InvalidParameter,
    UnknownBin,
    EmptyInput,
    TooFewPoints,
    Collinear,
    DuplicatePoint,
    EmptyModel,
    DimensionMismatch,
    InvalidModel,
};

const char* to_string(ErrorCode code);

/// Validation or input error raised by any stage of the pipeline.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// The two ID sets differ; both sides of the symmetric difference are reported.
class IdMismatchError : public Error {
public:
    IdMismatchError(std::vector<std::int64_t> missing_in_emb, std::vector<std::int64_t> missing_in_highd);

    const std::vector<std::int64_t>& missing_in_emb() const noexcept { return missing_in_emb_; }
    const std::vector<std::int64_t>& missing_in_highd() const noexcept { return missing_in_highd_; }

private:
    std::vector<std::int64_t> missing_in_emb_;
    std::vector<std::int64_t> missing_in_highd_;
};

}  // namespace liftmesh
