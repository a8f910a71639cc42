#include "rfh/brieskorn.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>

#include "rfh/cz_index.hpp"

namespace rfh::brieskorn {

long long floor_div(long long num, long long den) {
    long long q = num / den;
    if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
    return q;
}

long long ceil_div(long long num, long long den) {
    return -floor_div(-num, den);
}

BrieskornTuple::BrieskornTuple(std::vector<long long> exps) : a(std::move(exps)) {
    if (a.size() < 2) throw math_error("Brieskorn tuple needs at least two exponents");
    for (long long e : a)
        if (e < 2) throw math_error("Brieskorn exponents must be >= 2");
}

std::string BrieskornTuple::str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(a[i]);
    }
    return s + ")";
}

CriticalManifold critical_manifold(const BrieskornTuple& a, long long L) {
    if (L == 0) throw math_error("L must be nonzero");
    CriticalManifold m;
    m.L = L;
    for (long long e : a.a)
        if (L % e == 0) m.subtuple.push_back(e);
    m.count = static_cast<int>(m.subtuple.size());
    m.nonempty = m.count >= 2;
    m.dim = m.nonempty ? 2 * m.count - 3 : -1;
    return m;
}

std::vector<long long> spectrum(const BrieskornTuple& a, long long L_max) {
    std::vector<long long> out;
    for (long long L = -L_max; L <= L_max; ++L) {
        if (L == 0) continue;
        if (critical_manifold(a, L).nonempty) out.push_back(L);
    }
    return out;
}

long long mu_index(const BrieskornTuple& a, long long L, long long ind_h) {
    const long long n = a.n();
    long long dim_N;
    if (L == 0) {
        dim_N = 2 * n - 1;
    } else {
        CriticalManifold m = critical_manifold(a, L);
        if (!m.nonempty) throw IndexOutOfRange("empty critical manifold");
        dim_N = m.dim;
    }
    if (ind_h < 0 || ind_h > dim_N)
        throw IndexOutOfRange("ind_h outside [0, dim N]");
    long long sum_ceil = 0;
    for (long long e : a.a) sum_ceil += ceil_div(L, e);
    return 2 * sum_ceil - 2 * L + ind_h - (n - 1);
}

long long mu_cz_closed(const BrieskornTuple& a, long long L) {
    long long s = 0;
    for (long long e : a.a) s += floor_div(L, e) + ceil_div(L, e);
    return s - 2 * L;
}

long long mu_cz_oracle(const BrieskornTuple& a, long long L) {
    if (L == 0) throw math_error("L must be nonzero");
    const double sgn = L > 0 ? 1.0 : -1.0;
    std::vector<cz::Block> blocks;
    for (long long e : a.a)
        blocks.push_back(cz::Block::rotation(sgn * 4.0 / static_cast<double>(e)));
    const double T = std::abs(L) * std::numbers::pi / 2.0;
    auto spec = cz::SymplecticPathSpec::from_blocks(std::move(blocks), T);
    cz::IndexResult res = cz::cz_index(spec);
    if (!res.mu_cz.is_integer())
        throw math_error("numeric CZ index of the Reeb path is not an integer");
    long long numeric = res.mu_cz.as_integer();
    long long closed = 0;
    for (long long e : a.a) closed += floor_div(L, e) + ceil_div(L, e);
    if (numeric != closed)
        throw math_error("numeric CZ index " + std::to_string(numeric) +
                         " disagrees with closed form " + std::to_string(closed) +
                         " for a=" + a.str() + ", L=" + std::to_string(L));
    return numeric - 2 * L;
}

RegimeReport regime(const BrieskornTuple& a) {
    RegimeReport r;
    long long num = -1, den = 1;  // running value of Sum 1/a_k - 1
    for (long long e : a.a) {
        // num/den + 1/e
        num = num * e + den;
        den *= e;
        long long g = std::gcd(std::abs(num), den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }
    r.s = {num, den};
    if (num > 0)
        r.regime = Regime::index_positive;
    else if (num < 0)
        r.regime = Regime::index_negative;
    else
        r.regime = Regime::index_bounded;

    long long A = 1;
    for (long long e : a.a) {
        if (A > (1LL << 62) / e) throw math_error("tuple product overflows");
        A *= e;
    }
    r.A = A;
    const long long n = a.n();
    r.D_bounds = {-2 * A - n, 2 * n * A + n};
    return r;
}

bool is_topological_sphere(const BrieskornTuple& a) {
    if (a.n() < 3)
        throw DimensionTooLow("sphere criterion needs dimension >= 5 (n >= 3)");
    const auto& v = a.a;
    const std::size_t m = v.size();
    int isolated = 0;
    for (std::size_t i = 0; i < m; ++i) {
        bool iso = true;
        for (std::size_t j = 0; j < m; ++j)
            if (i != j && std::gcd(v[i], v[j]) > 1) iso = false;
        if (iso) ++isolated;
    }
    if (isolated >= 2) return true;
    if (isolated != 1) return false;

    std::vector<long long> K;
    for (long long e : v)
        if (e % 2 == 0) K.push_back(e);
    if (K.size() % 2 == 0) return false;
    for (std::size_t i = 0; i < K.size(); ++i)
        for (std::size_t j = i + 1; j < K.size(); ++j)
            if (std::gcd(K[i], K[j]) != 2) return false;
    return true;
}

std::map<long long, HomologyRank> homology_support(const BrieskornTuple& a) {
    const long long n = a.n();
    if (n < 2) throw math_error("homology_support needs n >= 2");
    std::map<long long, HomologyRank> h;
    h[0] = {true, 1};
    h[2 * n - 1] = {true, 1};
    h[n - 1] = {false, 0};
    h[n] = {false, 0};

    if (a.a == std::vector<long long>{2, 2, 2}) {
        // S*S^2: one Z2 in each of the degrees 0..3
        h[n - 1] = {true, 1};
        h[n] = {true, 1};
        return h;
    }
    if (a.a.size() == 4 && a.a[0] == 2 && a.a[1] == 2 && a.a[2] == 2 &&
        a.a[3] % 2 == 0) {
        // S^2 x S^3 family
        h[n - 1] = {true, 1};
        h[n] = {true, 1};
        return h;
    }
    if (n >= 3 && is_topological_sphere(a)) {
        h[n - 1] = {true, 0};
        h[n] = {true, 0};
    }
    return h;
}

bool verify_mb(const BrieskornTuple& a, long long L) {
    CriticalManifold m = critical_manifold(a, L);
    int kernel_count = 0;
    for (long long e : a.a) {
        std::complex<double> ev =
            std::exp(std::complex<double>(0.0, 2.0 * std::numbers::pi * L / e));
        if (std::abs(ev - 1.0) < 1e-9) ++kernel_count;
    }
    return kernel_count == m.count;
}

}  // namespace rfh::brieskorn
