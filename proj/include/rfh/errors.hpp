#pragma once

#include <stdexcept>
#include <string>

namespace rfh {

struct math_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonSymmetricGenerator : math_error {
    using math_error::math_error;
};
struct SymplecticDriftExceeded : math_error {
    using math_error::math_error;
};
struct UnresolvedCrossingCluster : math_error {
    using math_error::math_error;
};
struct DegenerateCrossing : math_error {
    using math_error::math_error;
};
struct BoundViolated : math_error {
    using math_error::math_error;
};
struct UnsupportedGenerator : math_error {
    using math_error::math_error;
};

struct IndexOutOfRange : math_error {
    using math_error::math_error;
};
struct DimensionTooLow : math_error {
    using math_error::math_error;
};

struct SectionConstructionFailed : math_error {
    using math_error::math_error;
};
struct IsomorphismFailed : math_error {
    using math_error::math_error;
};

struct UnsupportedCriticalManifold : math_error {
    using math_error::math_error;
};
struct DegreeInForbiddenWindow : math_error {
    using math_error::math_error;
};

struct HessianDegenerate : math_error {
    using math_error::math_error;
};
struct ConstraintViolated : math_error {
    using math_error::math_error;
};
struct NoConvergence : math_error {
    using math_error::math_error;
};
struct ClusteringAmbiguous : math_error {
    using math_error::math_error;
};
struct MonotonicityViolated : math_error {
    using math_error::math_error;
};

struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace rfh
