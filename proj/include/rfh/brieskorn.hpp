#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rfh/errors.hpp"

namespace rfh::brieskorn {

// Exponent tuple a = (a_0, ..., a_n); the manifold has dimension 2n-1.
struct BrieskornTuple {
    std::vector<long long> a;

    explicit BrieskornTuple(std::vector<long long> exps);
    int n() const { return static_cast<int>(a.size()) - 1; }
    int dim() const { return 2 * n() - 1; }
    bool operator==(const BrieskornTuple&) const = default;
    std::string str() const;
};

struct CriticalManifold {
    long long L = 0;  // period L*pi/2
    std::vector<long long> subtuple;
    int count = 0;     // n(a, L)
    int dim = -1;      // 2*count - 3 when nonempty
    bool nonempty = false;
};

CriticalManifold critical_manifold(const BrieskornTuple& a, long long L);

// Nonzero L with |L| <= L_max and nonempty critical manifold, sorted.
std::vector<long long> spectrum(const BrieskornTuple& a, long long L_max);

// mu = 2*Sum ceil(L/a_k) - 2L + ind_h - (n-1); exact integers throughout.
long long mu_index(const BrieskornTuple& a, long long L, long long ind_h);

// Closed-form CZ part Sum(floor(L/a_k) + ceil(L/a_k)) - 2L, cross-checked
// against the numeric engine on the path diag(e^{4it/a_k}) over [0, |L|pi/2].
long long mu_cz_oracle(const BrieskornTuple& a, long long L);
long long mu_cz_closed(const BrieskornTuple& a, long long L);

enum class Regime { index_positive, index_negative, index_bounded };

struct RegimeReport {
    std::pair<long long, long long> s;  // Sum 1/a_k - 1 as reduced fraction
    Regime regime = Regime::index_bounded;
    long long A = 1;  // product of the a_k
    std::pair<long long, long long> D_bounds;  // (-2A - n, 2nA + n)
};

RegimeReport regime(const BrieskornTuple& a);

// Brieskorn graph criterion; requires n >= 3 (dimension >= 5).
bool is_topological_sphere(const BrieskornTuple& a);

struct HomologyRank {
    bool known = false;
    long long rank = 0;  // meaningful only when known
};

// Possible nonzero degrees {0, n-1, n, 2n-1} with ranks where determined.
std::map<long long, HomologyRank> homology_support(const BrieskornTuple& a);

// Checks dim ker(D phi^{L pi/2} - 1) = 2 n(a,L) on the ambient space.
bool verify_mb(const BrieskornTuple& a, long long L);

long long floor_div(long long num, long long den);
long long ceil_div(long long num, long long den);

}  // namespace rfh::brieskorn
