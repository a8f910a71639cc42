#include "rfh/rfh_tables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace rfh::tables {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Family { sstar, uebele, sphere223, sum_one, other };

bool all_twos(const std::vector<long long>& v) {
    return std::all_of(v.begin(), v.end(), [](long long x) { return x == 2; });
}

Family classify(const brieskorn::BrieskornTuple& a) {
    const auto& v = a.a;
    if (v.size() == 3 && all_twos(v)) return Family::sstar;
    if (v.size() == 4 && v[0] == 2 && v[1] == 2 && v[2] == 2 && v[3] % 2 == 0)
        return Family::uebele;
    if (v.size() >= 4 && v[0] == 2 && v[1] == 2 && v[2] == 2) {
        bool tail_ok = true;
        for (std::size_t k = 3; k < v.size(); ++k) {
            if (v[k] < 3 || (k > 3 && v[k] < v[k - 1])) tail_ok = false;
        }
        if (tail_ok) return Family::sphere223;
    }
    if (a.n() >= 3 && brieskorn::regime(a).regime == brieskorn::Regime::index_bounded)
        return Family::sum_one;
    return Family::other;
}

bool sum_of_reciprocals_is_one(const std::vector<long long>& v) {
    // Sum 1/a_k as an exact reduced fraction.
    long long num = 0, den = 1;
    for (long long x : v) {
        num = num * x + den;
        den *= x;
        long long g = std::gcd(num, den);
        num /= g;
        den /= g;
    }
    return num == den;
}

long long lcm_all(const std::vector<long long>& v) {
    long long l = 1;
    for (long long x : v) l = std::lcm(l, x);
    return l;
}

// All periods |L| > L_max miss the degree d census iff the index bounds
// mu >= 2sL - (n-1) (L > 0) and mu <= 2sL + 3n + 2 (L < 0) exclude d.
bool census_complete(const brieskorn::BrieskornTuple& a, long long L_max, long long d) {
    auto rep = brieskorn::regime(a);
    if (rep.regime != brieskorn::Regime::index_positive) return false;
    long long num = rep.s.first, den = rep.s.second;
    long long n = a.n();
    long long need = std::max(d + n - 1, 3 * n + 2 - d);
    return 2 * num * L_max >= den * need;
}

DimValue make(DimKind k, long long v, Policy p, double slope = 0) {
    return DimValue{k, v, p, slope};
}

DimValue census_dim(const RFHChainModel& m, long long d) {
    if (!census_complete(m.a, m.L_max, d)) return make(DimKind::unknown, 0, Policy::open);
    long long c = m.chain_count(d);
    if (c == 0) return make(DimKind::exact, 0, Policy::empty_chain);
    return make(DimKind::at_most, c, Policy::census);
}

}  // namespace

double GeneratorClass::action() const { return static_cast<double>(L) * kPi / 2.0; }

long long RFHChainModel::chain_count(long long degree) const {
    long long c = 0;
    for (const auto& g : classes)
        if (g.mu == degree) c += g.count;
    return c;
}

long long RFHChainModel::chain_count_signed(long long degree, int sign,
                                            long long Labs_max) const {
    long long c = 0;
    for (const auto& g : classes) {
        if (g.mu != degree) continue;
        if (sign > 0 && (g.L <= 0 || g.L > Labs_max)) continue;
        if (sign < 0 && (g.L >= 0 || -g.L > Labs_max)) continue;
        c += g.count;
    }
    return c;
}

std::map<long long, long long> manifold_homology(const std::vector<long long>& subtuple) {
    const long long c = static_cast<long long>(subtuple.size());
    if (c == 3 && all_twos(subtuple)) return {{0, 1}, {1, 1}, {2, 1}, {3, 1}};
    if (c == 4 && subtuple[0] == 2 && subtuple[1] == 2 && subtuple[2] == 2 &&
        subtuple[3] % 2 == 0)
        return {{0, 1}, {2, 1}, {3, 1}, {5, 1}};
    if (sum_of_reciprocals_is_one(subtuple))
        return {{0, 1}, {c - 2, 1}, {c - 1, 1}, {2 * c - 3, 1}};
    if (c >= 4 && brieskorn::is_topological_sphere(brieskorn::BrieskornTuple(subtuple)))
        return {{0, 1}, {2 * c - 3, 1}};
    std::string name = "(";
    for (std::size_t i = 0; i < subtuple.size(); ++i)
        name += (i ? "," : "") + std::to_string(subtuple[i]);
    throw UnsupportedCriticalManifold("no homology oracle for critical manifold " + name +
                                      ")");
}

RFHChainModel chain_model(const brieskorn::BrieskornTuple& a, long long L_max) {
    RFHChainModel m{a, L_max, {}};
    for (long long L : brieskorn::spectrum(a, L_max)) {
        auto cm = brieskorn::critical_manifold(a, L);
        for (auto [j, r] : manifold_homology(cm.subtuple))
            m.classes.push_back({L, j, brieskorn::mu_index(a, L, j), r});
    }
    return m;
}

std::string DimValue::str() const {
    switch (kind) {
        case DimKind::exact: return std::to_string(value);
        case DimKind::at_most: return "<=" + std::to_string(value);
        case DimKind::at_least: return ">=" + std::to_string(value);
        case DimKind::infinite_dim: return "inf";
        case DimKind::unknown: return "?";
    }
    return "?";
}

const DimValue& RFHTable::at(long long degree) const {
    auto it = dims.find(degree);
    if (it == dims.end())
        throw IndexOutOfRange("degree " + std::to_string(degree) + " outside table range [" +
                              std::to_string(lo) + "," + std::to_string(hi) + "]");
    return it->second;
}

DimValue rfh_dim_at(const RFHChainModel& model, long long degree) {
    const auto& a = model.a;
    const long long n = a.n();
    const long long d = degree;
    switch (classify(a)) {
        case Family::sstar:
            return make(DimKind::exact, 2, Policy::symmetry);
        case Family::uebele: {
            const long long l = a.a[3] / 2;
            const long long P = 2 * l + 2;
            const long long j = ((d + 2) % P + P) % P - 2;  // j in [-2, 2l-1]
            if (j >= -1 && j <= 2) return make(DimKind::at_most, 1, Policy::symmetry);
            if (j >= 5 && j <= 2 * l - 2) return make(DimKind::exact, 2, Policy::symmetry);
            return census_dim(model, d);
        }
        case Family::sphere223: {
            const long long a3 = a.a[3];
            if ((d >= n + 2 && d <= a3 + n - 5) || (d >= -a3 - n + 6 && d <= -n - 1))
                return make(DimKind::exact, 2, Policy::symmetry);
            return census_dim(model, d);
        }
        case Family::sum_one: {
            if (d <= -n || d >= n + 1 || d == -n + 2 || d == n - 1)
                return make(DimKind::exact, 0, Policy::empty_chain);
            if (d == -n + 1 || d == n) {
                const long long A = lcm_all(a.a);
                const long long Nmax = model.L_max / A;
                bool linear = Nmax >= 2;
                for (long long N = 1; N <= Nmax && linear; ++N)
                    linear = model.chain_count_signed(d, +1, N * A) == N &&
                             model.chain_count_signed(d, -1, N * A) == N;
                if (linear) return make(DimKind::infinite_dim, 0, Policy::census, 1.0);
                return make(DimKind::at_least, model.chain_count(d), Policy::census);
            }
            const bool equal_tuple =
                std::all_of(a.a.begin(), a.a.end(), [&](long long x) { return x == a.a[0]; });
            if (equal_tuple && d != 0 && d != 1)
                return make(DimKind::exact, 0, Policy::empty_chain);
            return make(DimKind::unknown, 0, Policy::open);
        }
        case Family::other:
            return census_dim(model, d);
    }
    return make(DimKind::unknown, 0, Policy::open);
}

RFHTable rfh_dims(const RFHChainModel& model, long long lo, long long hi) {
    RFHTable t;
    t.a = model.a.a;
    t.n = model.a.n();
    t.lo = lo;
    t.hi = hi;
    for (long long d = lo; d <= hi; ++d) t.dims[d] = rfh_dim_at(model, d);
    return t;
}

RFHTable rfh_dims(const RFHChainModel& model) {
    if (classify(model.a) == Family::sstar) return rfh_dims(model, -20, 20);
    long long lo = -2, hi = 2;
    for (const auto& g : model.classes) {
        lo = std::min(lo, g.mu - 2);
        hi = std::max(hi, g.mu + 2);
    }
    return rfh_dims(model, lo, hi);
}

RFHTable sstar_s2_table(long long lo, long long hi) {
    RFHTable t;
    t.a = {2, 2, 2};
    t.n = 2;
    t.lo = lo;
    t.hi = hi;
    for (long long d = lo; d <= hi; ++d)
        t.dims[d] = make(DimKind::exact, 2, Policy::symmetry);
    return t;
}

GrowthReport growth_rate(const RFHChainModel& model, long long degree, int sign,
                         GrowthClass f) {
    const long long A = lcm_all(model.a.a);
    const long long Nmax = model.L_max / A;
    std::vector<long long> counts;
    std::vector<double> cutoffs;
    for (long long N = 1; N <= Nmax; ++N) {
        counts.push_back(model.chain_count_signed(degree, sign, N * A));
        cutoffs.push_back(static_cast<double>(N * A) * kPi / 2.0);
    }
    return growth_from_counts(std::move(counts), std::move(cutoffs), f);
}

GrowthReport growth_from_counts(std::vector<long long> counts, std::vector<double> cutoffs,
                                GrowthClass f) {
    GrowthReport rep;
    rep.cutoffs = std::move(cutoffs);
    rep.counts = std::move(counts);
    const std::size_t m = rep.counts.size();
    if (m == 0 || std::all_of(rep.counts.begin(), rep.counts.end(),
                              [](long long c) { return c == 0; })) {
        rep.gamma = -kInf;
        return rep;
    }
    rep.exact_linear = rep.counts[0] > 0;
    for (std::size_t i = 0; i < m && rep.exact_linear; ++i)
        rep.exact_linear = rep.counts[i] == rep.counts[0] * static_cast<long long>(i + 1);
    if (rep.exact_linear && f == GrowthClass::identity) {
        rep.gamma = 1.0;  // limsup log(cN)/log(c'N) over the cutoff sequence
        return rep;
    }
    bool stabilized = rep.counts.back() > 0 && m >= 3;
    for (std::size_t i = m / 2; i < m && stabilized; ++i)
        stabilized = rep.counts[i] == rep.counts.back();
    if (stabilized && f == GrowthClass::identity) {
        rep.gamma = 0.0;  // finite nonzero dimension: growth rate 0 by convention
        return rep;
    }
    std::vector<double> ratios;
    for (std::size_t i = 0; i < m; ++i) {
        const double d = static_cast<double>(rep.counts[i]);
        const double la = std::log(rep.cutoffs[i]);
        if (d < 1 || la <= 0) continue;
        double num = 0;
        switch (f) {
            case GrowthClass::identity: num = std::log(d); break;
            case GrowthClass::logarithm: num = d; break;
            case GrowthClass::exponential:
                if (d < 2) continue;
                num = std::log(std::log(d));
                break;
        }
        ratios.push_back(num / la);
    }
    if (ratios.empty()) {
        rep.gamma = -kInf;
        return rep;
    }
    const std::size_t r = ratios.size();
    if (r >= 4 && ratios[r - 1] > 1.5 * ratios[r / 2] && ratios[r - 1] > 3) {
        rep.gamma = kInf;  // super-polynomial divergence of the ratio sequence
        return rep;
    }
    double g = -kInf;
    for (std::size_t i = r / 2; i < r; ++i) g = std::max(g, ratios[i]);
    rep.gamma = g;
    return rep;
}

long long connected_sum_dim_at(const std::vector<RFHTable>& tables, long long m,
                               long long degree) {
    if (tables.empty()) throw math_error("connected sum of an empty table list");
    int n = 0;
    for (const auto& t : tables) n = std::max(n, t.n);
    if (degree >= -n + 1 && degree <= n)
        throw DegreeInForbiddenWindow("degree " + std::to_string(degree) +
                                      " lies in the surgery-sensitive window [" +
                                      std::to_string(-n + 1) + "," + std::to_string(n) + "]");
    long long total = 0;
    for (std::size_t i = 0; i < tables.size(); ++i) {
        const DimValue& v = tables[i].at(degree);
        if (v.kind != DimKind::exact)
            throw math_error("connected sum requires exact dimensions at degree " +
                             std::to_string(degree));
        total += (i == 0 ? 1 : m) * v.value;
    }
    return total;
}

RFHTable connected_sum_dims(const std::vector<RFHTable>& tables, long long m) {
    if (tables.empty()) throw math_error("connected sum of an empty table list");
    RFHTable out;
    out.a = tables[0].a;
    for (const auto& t : tables) out.n = std::max(out.n, t.n);
    out.lo = tables[0].lo;
    out.hi = tables[0].hi;
    for (const auto& t : tables) {
        out.lo = std::max(out.lo, t.lo);
        out.hi = std::min(out.hi, t.hi);
    }
    for (long long d = out.lo; d <= out.hi; ++d) {
        if (d >= -out.n + 1 && d <= out.n) continue;
        out.dims[d] = make(DimKind::exact, connected_sum_dim_at(tables, m, d),
                           tables[0].at(d).policy);
    }
    return out;
}

namespace {

bool provably_different(const DimValue& x, const DimValue& y) {
    auto finite_upper = [](const DimValue& v) {
        return v.kind == DimKind::exact || v.kind == DimKind::at_most;
    };
    if (x.kind == DimKind::unknown || y.kind == DimKind::unknown) return false;
    if (x.kind == DimKind::infinite_dim || y.kind == DimKind::infinite_dim)
        return !(x.kind == y.kind) && finite_upper(x.kind == DimKind::infinite_dim ? y : x);
    if (x.kind == DimKind::exact && y.kind == DimKind::exact) return x.value != y.value;
    if (x.kind == DimKind::exact && y.kind == DimKind::at_most) return x.value > y.value;
    if (y.kind == DimKind::exact && x.kind == DimKind::at_most) return y.value > x.value;
    if (x.kind == DimKind::exact && y.kind == DimKind::at_least) return x.value < y.value;
    if (y.kind == DimKind::exact && x.kind == DimKind::at_least) return y.value < x.value;
    if (x.kind == DimKind::at_least && y.kind == DimKind::at_most) return x.value > y.value;
    if (y.kind == DimKind::at_least && x.kind == DimKind::at_most) return y.value > x.value;
    return false;
}

}  // namespace

std::optional<DistinguishWitness> distinguish(const brieskorn::BrieskornTuple& a1,
                                              const brieskorn::BrieskornTuple& a2,
                                              long long L_max, long long span) {
    RFHChainModel m1 = chain_model(a1, L_max);
    RFHChainModel m2 = chain_model(a2, L_max);
    std::vector<long long> order;
    for (long long d = 0; d <= span; ++d) order.push_back(d);
    for (long long d = -1; d >= -span; --d) order.push_back(d);
    for (long long d : order) {
        DimValue v1 = rfh_dim_at(m1, d);
        DimValue v2 = rfh_dim_at(m2, d);
        if (provably_different(v1, v2)) return DistinguishWitness{d, v1, v2};
    }
    return std::nullopt;
}

}  // namespace rfh::tables
