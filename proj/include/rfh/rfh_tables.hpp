#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rfh/brieskorn.hpp"
#include "rfh/errors.hpp"

namespace rfh::tables {

// One generator class per (period L, homology degree j of the critical
// manifold); count is the GF(2) rank of that homology degree.
struct GeneratorClass {
    long long L = 0;
    long long j = 0;
    long long mu = 0;
    long long count = 1;
    double action() const;  // L*pi/2
};

// Graded, action-filtered generator census over |L| <= L_max.
struct RFHChainModel {
    brieskorn::BrieskornTuple a;
    long long L_max = 0;
    std::vector<GeneratorClass> classes;  // sorted by (L, j)

    long long chain_count(long long degree) const;
    // Count at a degree restricted to sign(L) = sign and |L| <= Labs_max.
    long long chain_count_signed(long long degree, int sign, long long Labs_max) const;
};

// GF(2) Betti numbers of a whitelisted critical manifold; throws
// UnsupportedCriticalManifold for sub-tuples outside the closed list.
std::map<long long, long long> manifold_homology(const std::vector<long long>& subtuple);

RFHChainModel chain_model(const brieskorn::BrieskornTuple& a, long long L_max);

enum class DimKind { exact, at_most, at_least, infinite_dim, unknown };

// Rule that licensed the value, strongest first.
enum class Policy {
    empty_chain,         // no generators at this degree at all
    forced_zero_action,  // boundary candidates all violate action monotonicity
    perfect_morse,       // equal-action pairs killed by a perfect Morse model
    symmetry,            // inside the proved symmetry-vanishing degree window
    census,              // bound from a complete finite generator census
    open,                // the differential cannot be resolved
};

struct DimValue {
    DimKind kind = DimKind::unknown;
    long long value = 0;       // meaningful unless kind is infinite/unknown
    Policy policy = Policy::open;
    double growth_slope = 0;   // set for infinite_dim entries
    std::string str() const;
    bool operator==(const DimValue&) const = default;
};

struct RFHTable {
    std::vector<long long> a;
    int n = 0;
    long long lo = 0, hi = 0;
    std::map<long long, DimValue> dims;

    const DimValue& at(long long degree) const;  // IndexOutOfRange outside [lo, hi]
};

// Per-degree homology dimension statement for the supported families.
DimValue rfh_dim_at(const RFHChainModel& model, long long degree);

RFHTable rfh_dims(const RFHChainModel& model, long long lo, long long hi);
RFHTable rfh_dims(const RFHChainModel& model);  // auto degree range

// Exact 2 in every degree of [lo, hi] for the tuple (2,2,2).
RFHTable sstar_s2_table(long long lo = -20, long long hi = 20);

enum class GrowthClass { identity, logarithm, exponential };

struct GrowthReport {
    std::vector<double> cutoffs;     // action cutoffs N*A*pi/2
    std::vector<long long> counts;   // cumulative generator counts
    double gamma = 0;                // may be +/-infinity
    bool exact_linear = false;       // counts == N * counts[0] exactly
};

// Growth of the degree-d census in the direction sign (+1: action in (0,c],
// -1: action in [-c,0)); cutoffs are multiples of lcm(a)*pi/2.
GrowthReport growth_rate(const RFHChainModel& model, long long degree, int sign,
                         GrowthClass f = GrowthClass::identity);

// Growth evaluation for externally supplied counts (synthetic inputs).
GrowthReport growth_from_counts(std::vector<long long> counts, std::vector<double> cutoffs,
                                GrowthClass f);

// Degreewise tables[0] + m * (tables[1] + tables[2] + ...) outside the
// middle window [-n+1, n]; all inputs must be exact at the used degrees.
long long connected_sum_dim_at(const std::vector<RFHTable>& tables, long long m,
                               long long degree);
RFHTable connected_sum_dims(const std::vector<RFHTable>& tables, long long m);

struct DistinguishWitness {
    long long degree = 0;
    DimValue lhs, rhs;
};

// Degree where the two tuples have provably different homology dimensions
// (exact-vs-exact mismatch, exact exceeding an upper bound, or infinite vs
// finite); scans degrees 0..span, then -1..-span.
std::optional<DistinguishWitness> distinguish(const brieskorn::BrieskornTuple& a1,
                                              const brieskorn::BrieskornTuple& a2,
                                              long long L_max = 120, long long span = 64);

}  // namespace rfh::tables
