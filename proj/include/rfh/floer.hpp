#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rfh/errors.hpp"
#include "rfh/gf2.hpp"

namespace rfh::floer {

inline constexpr long long NEG_INF = std::numeric_limits<long long>::min();
inline constexpr long long POS_INF = std::numeric_limits<long long>::max();

struct Generator {
    std::string name;
    long long action = 0;
    std::optional<long long> degree;
};

// Boundary pairs (target, source): m(target, source) = 1, i.e. the target
// appears in d(source) with d x = Sum_y m(y, x) y.
struct FloerTriple {
    std::vector<Generator> gens;
    std::vector<std::pair<int, int>> boundary;

    bool graded() const;
    int find(const std::string& name) const;  // -1 if absent
    gf2::Mat boundary_matrix() const;         // D(i,j) = m(i,j), column j = d(gen j)
};

struct ValidationReport {
    bool ok = true;
    std::string axiom;    // first violated axiom, empty if ok
    std::string witness;  // offending generators
};

ValidationReport validate(const FloerTriple& t);

// Homology of a windowed subcomplex with homogeneous representative cycles
// (coordinates local to the window basis).
struct HomologyData {
    std::vector<int> idx;  // global generator indices in the window, increasing
    gf2::Mat D;            // windowed boundary, local coordinates
    std::vector<gf2::Vec> cycles;  // representative cycles, local coords
    std::vector<std::optional<long long>> degrees;  // degree per representative
    std::vector<gf2::Vec> boundary_basis;           // basis of im D, local

    int dim() const { return static_cast<int>(cycles.size()); }
    // Coordinates of the class of a local cycle in the representative basis.
    gf2::Vec class_coords(const gf2::Vec& local_cycle) const;
};

struct WindowHomology {
    HomologyData data;
    int dim = 0;
    std::map<long long, int> dims_by_degree;  // empty if ungraded
};

WindowHomology homology_window(const FloerTriple& t, long long a, long long b);

struct ExactnessReport {
    bool exact = true;
    std::string detail;
    int dim_sub = 0, dim_total = 0, dim_quot = 0;
};

// Short sequence of windows [a,b] -> [a,c] -> (b,c]; verifies rank-exactness
// at all three spots of the induced triangle.
ExactnessReport les_check(const FloerTriple& t, long long a, long long b, long long c);

struct LimitReport {
    int stable_dim = 0;
    std::map<long long, int> dims_by_degree;
    std::vector<int> ladder_dims;  // per rung
    bool certified = false;        // dims and induced maps stabilized
};

LimitReport limit_homology(const FloerTriple& t);

struct LevelData {
    long long action = 0;            // original action value of this level
    std::vector<int> gen_idx;        // global indices at this level
    HomologyData level;              // homology of the level complex
    HomologyData window;             // homology of levels <= this one
    gf2::Mat Mpi;                    // window classes -> level classes
    gf2::Mat Miota;                  // previous window classes -> window classes
    gf2::Mat Mdelta;                 // level classes -> previous window classes
};

struct ReductionData {
    FloerTriple original;
    std::vector<LevelData> levels;
    std::vector<std::pair<int, int>> basis;  // (level, index into level homology)
    gf2::Mat del;                            // reduced boundary
    FloerTriple reduced;                     // reduced complex as a triple
    bool reverse_sections = false;
};

// Sections are pivot preimages; reverse_sections flips the pivot preference,
// giving a second valid choice for invariance tests.
ReductionData build_reduction(const FloerTriple& t, bool reverse_sections = false);

struct ReducedHomologyReport {
    int dim = 0;
    std::map<long long, int> dims_by_degree;
    bool iso_ok = false;  // witness map into FH is bijective degreewise
};

ReducedHomologyReport reduced_homology(const ReductionData& r);

// Seeded random valid graded triple with at most max_gens generators and
// actions in [0, 5]; used by property tests and the acceptance suite.
FloerTriple random_triple(std::uint64_t seed, int max_gens = 12);

// The worked 4-generator example reduced mod 2: f(a1)=f(b1)=1, f(a0)=f(b0)=0,
// d a1 = b0, everything else zero.
FloerTriple worked_example();

}  // namespace rfh::floer
