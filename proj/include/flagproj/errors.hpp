#pragma once

#include <stdexcept>
#include <string>

namespace flagproj {

/// Error taxonomy shared by all modules. Every condition that a caller can
/// reasonably recover from gets its own type so tests can assert on it.

struct DimMismatch : std::invalid_argument {
    explicit DimMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct RankDeficient : std::invalid_argument {
    explicit RankDeficient(const std::string& what) : std::invalid_argument(what) {}
};

struct IndexOutOfRange : std::out_of_range {
    explicit IndexOutOfRange(const std::string& what) : std::out_of_range(what) {}
};

struct OutOfRange : std::out_of_range {
    explicit OutOfRange(const std::string& what) : std::out_of_range(what) {}
};

struct DimZero : std::invalid_argument {
    explicit DimZero(const std::string& what) : std::invalid_argument(what) {}
};

/// A configuration sits inside the ambiguity band of a tolerance test, so
/// neither branch of a dimension/rank decision is trustworthy.
struct DegenerateConfiguration : std::runtime_error {
    explicit DegenerateConfiguration(const std::string& what) : std::runtime_error(what) {}
};

struct NotFullDimensional : std::invalid_argument {
    explicit NotFullDimensional(const std::string& what) : std::invalid_argument(what) {}
};

struct TooLarge : std::invalid_argument {
    explicit TooLarge(const std::string& what) : std::invalid_argument(what) {}
};

struct NotVerticesOfHull : std::invalid_argument {
    explicit NotVerticesOfHull(const std::string& what) : std::invalid_argument(what) {}
};

struct EmptyCone : std::runtime_error {
    explicit EmptyCone(const std::string& what) : std::runtime_error(what) {}
};

struct GeneralPositionViolated : std::runtime_error {
    explicit GeneralPositionViolated(const std::string& what) : std::runtime_error(what) {}
};

struct SingularMatrix : std::runtime_error {
    explicit SingularMatrix(const std::string& what) : std::runtime_error(what) {}
};

struct PoleEncountered : std::domain_error {
    explicit PoleEncountered(const std::string& what) : std::domain_error(what) {}
};

}  // namespace flagproj
