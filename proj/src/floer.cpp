#include "rfh/floer.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>

namespace rfh::floer {

namespace {

gf2::Vec embed(const gf2::Vec& local, const std::vector<int>& idx, int N) {
    gf2::Vec g(N, 0);
    for (std::size_t i = 0; i < idx.size(); ++i) g[idx[i]] = local[i];
    return g;
}

gf2::Vec restrict_to(const gf2::Vec& global, const std::vector<int>& idx) {
    gf2::Vec l(idx.size(), 0);
    for (std::size_t i = 0; i < idx.size(); ++i) l[i] = global[idx[i]];
    return l;
}

bool in_window(long long v, long long a, long long b) { return v >= a && v <= b; }

// Homology of the subcomplex spanned by idx, with the boundary truncated to
// the window. Representatives are homogeneous when the triple is graded.
HomologyData compute_homology(const FloerTriple& t, std::vector<int> idx) {
    HomologyData h;
    h.idx = std::move(idx);
    const int m = static_cast<int>(h.idx.size());
    std::vector<int> pos(t.gens.size(), -1);
    for (int i = 0; i < m; ++i) pos[h.idx[i]] = i;

    h.D = gf2::Mat(m, m);
    for (auto [tgt, src] : t.boundary) {
        if (pos[tgt] >= 0 && pos[src] >= 0) h.D.at(pos[tgt], pos[src]) = 1;
    }

    // Group columns by degree (single group when ungraded).
    std::map<long long, std::vector<int>> groups;
    const bool graded = t.graded();
    for (int i = 0; i < m; ++i) {
        long long key = graded ? *t.gens[h.idx[i]].degree : 0;
        groups[key].push_back(i);
    }

    gf2::SpanBasis span;
    for (int j = 0; j < m; ++j) {
        gf2::Vec col(m, 0);
        for (int i = 0; i < m; ++i) col[i] = h.D.at(i, j);
        bool zero = true;
        for (auto x : col)
            if (x) zero = false;
        if (!zero && span.add(col)) h.boundary_basis.push_back(col);
    }

    for (const auto& [deg, cols] : groups) {
        gf2::Mat sub = h.D.cols_subset(cols);
        for (const auto& coeff : gf2::nullspace(sub)) {
            gf2::Vec cyc(m, 0);
            for (std::size_t k = 0; k < cols.size(); ++k)
                if (coeff[k]) cyc[cols[k]] = 1;
            if (span.add(cyc)) {
                h.cycles.push_back(cyc);
                h.degrees.push_back(graded ? std::optional<long long>(deg) : std::nullopt);
            }
        }
    }
    return h;
}

}  // namespace

gf2::Vec HomologyData::class_coords(const gf2::Vec& local_cycle) const {
    const int m = static_cast<int>(idx.size());
    const int nb = static_cast<int>(boundary_basis.size());
    const int nc = static_cast<int>(cycles.size());
    gf2::Mat M(m, nb + nc);
    for (int j = 0; j < nb; ++j)
        for (int i = 0; i < m; ++i) M.at(i, j) = boundary_basis[j][i];
    for (int j = 0; j < nc; ++j)
        for (int i = 0; i < m; ++i) M.at(i, nb + j) = cycles[j][i];
    auto x = gf2::solve(M, local_cycle);
    if (!x) throw math_error("vector is not a cycle of the windowed complex");
    gf2::Vec c(nc, 0);
    for (int j = 0; j < nc; ++j) c[j] = (*x)[nb + j];
    return c;
}

bool FloerTriple::graded() const {
    if (gens.empty()) return false;
    for (const auto& g : gens)
        if (!g.degree) return false;
    return true;
}

int FloerTriple::find(const std::string& name) const {
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (gens[i].name == name) return static_cast<int>(i);
    return -1;
}

gf2::Mat FloerTriple::boundary_matrix() const {
    gf2::Mat D(static_cast<int>(gens.size()), static_cast<int>(gens.size()));
    for (auto [tgt, src] : boundary) D.at(tgt, src) = 1;
    return D;
}

ValidationReport validate(const FloerTriple& t) {
    const int n = static_cast<int>(t.gens.size());
    for (auto [tgt, src] : t.boundary) {
        if (tgt < 0 || tgt >= n || src < 0 || src >= n)
            return {false, "well-formedness", "boundary pair out of range"};
        if (t.gens[tgt].action > t.gens[src].action)
            return {false, "axiom ii (action monotonicity)",
                    t.gens[tgt].name + " in d(" + t.gens[src].name + ")"};
    }
    bool any_deg = false, all_deg = true;
    for (const auto& g : t.gens) {
        if (g.degree) any_deg = true;
        else all_deg = false;
    }
    if (any_deg && !all_deg)
        return {false, "grading", "only some generators carry a degree"};
    if (all_deg && n > 0) {
        for (auto [tgt, src] : t.boundary)
            if (*t.gens[tgt].degree != *t.gens[src].degree - 1)
                return {false, "grading (degree must drop by 1)",
                        t.gens[tgt].name + " in d(" + t.gens[src].name + ")"};
    }
    gf2::Mat D = t.boundary_matrix();
    gf2::Mat D2 = D * D;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (D2.at(i, j))
                return {false, "axiom iii (d^2 = 0)",
                        "d^2(" + t.gens[j].name + ") contains " + t.gens[i].name};
    return {true, "", ""};
}

WindowHomology homology_window(const FloerTriple& t, long long a, long long b) {
    std::vector<int> idx;
    for (std::size_t i = 0; i < t.gens.size(); ++i)
        if (in_window(t.gens[i].action, a, b)) idx.push_back(static_cast<int>(i));
    WindowHomology w;
    w.data = compute_homology(t, idx);
    w.dim = w.data.dim();
    if (t.graded())
        for (int i = 0; i < w.dim; ++i) ++w.dims_by_degree[*w.data.degrees[i]];
    return w;
}

namespace {

// Matrix of the induced map on homology: source representative -> global
// chain transform -> class in the target window.
gf2::Mat induced_map(const FloerTriple& t, const HomologyData& src,
                     const HomologyData& tgt,
                     const std::function<gf2::Vec(const gf2::Vec&)>& transform) {
    const int N = static_cast<int>(t.gens.size());
    gf2::Mat M(tgt.dim(), src.dim());
    for (int j = 0; j < src.dim(); ++j) {
        gf2::Vec g = embed(src.cycles[j], src.idx, N);
        gf2::Vec img = transform(g);
        gf2::Vec cls = tgt.class_coords(restrict_to(img, tgt.idx));
        for (int i = 0; i < tgt.dim(); ++i) M.at(i, j) = cls[i];
    }
    return M;
}

gf2::Vec apply_full_boundary(const FloerTriple& t, const gf2::Vec& chain) {
    gf2::Vec out(chain.size(), 0);
    for (auto [tgt, src] : t.boundary)
        if (chain[src]) out[tgt] ^= 1;
    return out;
}

}  // namespace

ExactnessReport les_check(const FloerTriple& t, long long a, long long b, long long c) {
    if (!(a <= b && b <= c)) throw math_error("need a <= b <= c");
    auto ident = [](const gf2::Vec& v) { return v; };
    auto bdry = [&t](const gf2::Vec& v) { return apply_full_boundary(t, v); };

    std::vector<int> sub_idx, tot_idx, quot_idx;
    for (std::size_t i = 0; i < t.gens.size(); ++i) {
        long long f = t.gens[i].action;
        if (in_window(f, a, b)) sub_idx.push_back(static_cast<int>(i));
        if (in_window(f, a, c)) tot_idx.push_back(static_cast<int>(i));
        if (f > b && f <= c) quot_idx.push_back(static_cast<int>(i));
    }
    HomologyData sub = compute_homology(t, sub_idx);
    HomologyData tot = compute_homology(t, tot_idx);
    HomologyData quot = compute_homology(t, quot_idx);

    gf2::Mat Mi = induced_map(t, sub, tot, ident);
    gf2::Mat Mp = induced_map(t, tot, quot, ident);
    gf2::Mat Md = induced_map(t, quot, sub, bdry);

    ExactnessReport rep;
    rep.dim_sub = sub.dim();
    rep.dim_total = tot.dim();
    rep.dim_quot = quot.dim();

    auto check = [&rep](const gf2::Mat& f, const gf2::Mat& g, int mid_dim,
                        const char* where) {
        if (!(g * f).is_zero()) {
            rep.exact = false;
            rep.detail += std::string("composite not zero at ") + where + "; ";
            return;
        }
        if (gf2::rank(f) + gf2::rank(g) != mid_dim) {
            rep.exact = false;
            rep.detail += std::string("rank defect at ") + where + "; ";
        }
    };
    check(Mi, Mp, tot.dim(), "H(total)");
    check(Mp, Md, quot.dim(), "H(quotient)");
    check(Md, Mi, sub.dim(), "H(sub)");
    return rep;
}

LimitReport limit_homology(const FloerTriple& t) {
    LimitReport rep;
    if (t.gens.empty()) {
        rep.certified = true;
        return rep;
    }
    long long lo = t.gens[0].action, hi = t.gens[0].action;
    for (const auto& g : t.gens) {
        lo = std::min(lo, g.action);
        hi = std::max(hi, g.action);
    }
    const long long rungs = hi - lo + 3;
    std::vector<HomologyData> ladder;
    for (long long r = 0; r < rungs; ++r) {
        std::vector<int> idx;
        for (std::size_t i = 0; i < t.gens.size(); ++i)
            if (in_window(t.gens[i].action, lo, lo + r)) idx.push_back(static_cast<int>(i));
        ladder.push_back(compute_homology(t, idx));
        rep.ladder_dims.push_back(ladder.back().dim());
    }
    auto ident = [](const gf2::Vec& v) { return v; };
    bool maps_stable = true;
    for (std::size_t r = ladder.size() - 3; r + 1 < ladder.size(); ++r) {
        gf2::Mat Mi = induced_map(t, ladder[r], ladder[r + 1], ident);
        int rk = gf2::rank(Mi);
        if (rk != ladder[r].dim() || rk != ladder[r + 1].dim()) maps_stable = false;
    }
    const std::size_t L = rep.ladder_dims.size();
    bool dims_stable = L >= 3 && rep.ladder_dims[L - 1] == rep.ladder_dims[L - 2] &&
                       rep.ladder_dims[L - 2] == rep.ladder_dims[L - 3];
    rep.certified = dims_stable && maps_stable;
    rep.stable_dim = rep.ladder_dims.back();
    const auto& last = ladder.back();
    if (t.graded())
        for (int i = 0; i < last.dim(); ++i) ++rep.dims_by_degree[*last.degrees[i]];
    return rep;
}

ReductionData build_reduction(const FloerTriple& t, bool reverse_sections) {
    ValidationReport v = validate(t);
    if (!v.ok) throw math_error("invalid Floer triple: " + v.axiom + " (" + v.witness + ")");

    ReductionData r;
    r.original = t;
    r.reverse_sections = reverse_sections;
    const int N = static_cast<int>(t.gens.size());

    std::set<long long> level_values;
    for (const auto& g : t.gens) level_values.insert(g.action);
    std::vector<long long> values(level_values.begin(), level_values.end());

    for (std::size_t li = 0; li < values.size(); ++li) {
        LevelData ld;
        ld.action = values[li];
        std::vector<int> widx;
        for (int i = 0; i < N; ++i) {
            if (t.gens[i].action == values[li]) ld.gen_idx.push_back(i);
            if (t.gens[i].action <= values[li]) widx.push_back(i);
        }
        ld.level = compute_homology(t, ld.gen_idx);
        ld.window = compute_homology(t, widx);

        auto ident = [](const gf2::Vec& v) { return v; };
        auto bdry = [&t](const gf2::Vec& v) { return apply_full_boundary(t, v); };
        ld.Mpi = induced_map(t, ld.window, ld.level, ident);
        if (li > 0) {
            const HomologyData& prev = r.levels[li - 1].window;
            ld.Miota = induced_map(t, prev, ld.window, ident);
            ld.Mdelta = induced_map(t, ld.level, prev, bdry);
        } else {
            ld.Miota = gf2::Mat(ld.window.dim(), 0);
            ld.Mdelta = gf2::Mat(0, ld.level.dim());
        }
        r.levels.push_back(std::move(ld));
    }

    std::vector<int> offset(r.levels.size(), 0);
    int total = 0;
    for (std::size_t li = 0; li < r.levels.size(); ++li) {
        offset[li] = total;
        for (int i = 0; i < r.levels[li].level.dim(); ++i)
            r.basis.emplace_back(static_cast<int>(li), i);
        total += r.levels[li].level.dim();
    }

    r.del = gf2::Mat(total, total);
    for (int col = 0; col < total; ++col) {
        auto [li, i] = r.basis[col];
        if (li == 0) continue;
        // kappa = delta(level class) lives in the homology below; run the
        // descent sigma^{c-1} = j(sigma^c - rho(pi(sigma^c))).
        gf2::Vec sigma(r.levels[li - 1].window.dim(), 0);
        for (int k = 0; k < r.levels[li].Mdelta.rows; ++k)
            sigma[k] = r.levels[li].Mdelta.at(k, i);
        for (int c = li - 1; c >= 0; --c) {
            const LevelData& lc = r.levels[c];
            gf2::Vec eta = lc.Mpi * sigma;
            for (int k = 0; k < static_cast<int>(eta.size()); ++k)
                if (eta[k]) r.del.at(offset[c] + k, col) = 1;
            if (c == 0) break;
            auto rho = gf2::solve(lc.Mpi, eta, reverse_sections);
            if (!rho) throw SectionConstructionFailed("rho: class not in im(pi)");
            gf2::Vec y = gf2::add(sigma, *rho);
            auto sig_prev = gf2::solve(lc.Miota, y, reverse_sections);
            if (!sig_prev) throw SectionConstructionFailed("j: class not in im(iota)");
            sigma = *sig_prev;
        }
    }

    if (!(r.del * r.del).is_zero())
        throw math_error("reduced boundary does not square to zero");

    const bool graded = t.graded();
    for (int k = 0; k < total; ++k) {
        auto [li, i] = r.basis[k];
        Generator g;
        g.name = "L" + std::to_string(li) + "#" + std::to_string(i);
        g.action = li;
        if (graded) g.degree = r.levels[li].level.degrees[i];
        r.reduced.gens.push_back(g);
    }
    for (int col = 0; col < total; ++col)
        for (int row = 0; row < total; ++row)
            if (r.del.at(row, col)) r.reduced.boundary.emplace_back(row, col);
    return r;
}

ReducedHomologyReport reduced_homology(const ReductionData& r) {
    ReducedHomologyReport rep;
    WindowHomology rh = homology_window(r.reduced, NEG_INF, POS_INF);
    rep.dim = rh.dim;
    rep.dims_by_degree = rh.dims_by_degree;

    WindowHomology full = homology_window(r.original, NEG_INF, POS_INF);
    if (full.dim != rh.dim) {
        rep.iso_ok = false;
        return rep;
    }

    const int N = static_cast<int>(r.original.gens.size());
    std::vector<int> offset(r.levels.size(), 0);
    {
        int total = 0;
        for (std::size_t li = 0; li < r.levels.size(); ++li) {
            offset[li] = total;
            total += r.levels[li].level.dim();
        }
    }

    // Psi: a reduced cycle has delta = 0 levelwise, so each level component
    // lies in im(pi); lift with rho and sum the representing chains.
    gf2::SpanBasis image_classes;
    for (const auto& xi : rh.data.cycles) {
        gf2::Vec chain(N, 0);
        for (std::size_t li = 0; li < r.levels.size(); ++li) {
            const LevelData& lc = r.levels[li];
            gf2::Vec eta(lc.level.dim(), 0);
            bool nonzero = false;
            for (int k = 0; k < lc.level.dim(); ++k) {
                eta[k] = xi[offset[li] + k];
                if (eta[k]) nonzero = true;
            }
            if (!nonzero) continue;
            auto rho = gf2::solve(lc.Mpi, eta, r.reverse_sections);
            if (!rho) throw IsomorphismFailed("reduced cycle component not in im(pi)");
            for (int k = 0; k < lc.window.dim(); ++k)
                if ((*rho)[k]) {
                    gf2::Vec part = embed(lc.window.cycles[k], lc.window.idx, N);
                    chain = gf2::add(chain, part);
                }
        }
        gf2::Vec dz = apply_full_boundary(r.original, chain);
        for (auto x : dz)
            if (x) throw IsomorphismFailed("Psi image is not a cycle");
        gf2::Vec cls = full.data.class_coords(restrict_to(chain, full.data.idx));
        if (!image_classes.add(cls))
            throw IsomorphismFailed("Psi images of reduced homology basis are dependent");
    }
    rep.iso_ok = image_classes.dim() == full.dim;
    if (r.original.graded() && rep.iso_ok)
        rep.iso_ok = rep.dims_by_degree == full.dims_by_degree;
    return rep;
}

FloerTriple random_triple(std::uint64_t seed, int max_gens) {
    std::mt19937_64 rng(seed);
    auto pick = [&rng](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };
    FloerTriple t;
    const int n = pick(3, std::max(3, max_gens));
    for (int i = 0; i < n; ++i) {
        Generator g;
        g.name = "g" + std::to_string(i);
        g.action = pick(0, 5);
        g.degree = pick(-2, 4);
        t.gens.push_back(g);
    }
    // Disjoint staircase arrows give d^2 = 0 for free; a filtration- and
    // degree-preserving change of basis then mixes the levels.
    std::vector<int> used(n, 0);
    gf2::Mat D0(n, n);
    const int tries = 3 * n;
    for (int s = 0; s < tries; ++s) {
        int src = pick(0, n - 1), tgt = pick(0, n - 1);
        if (src == tgt || used[src] || used[tgt]) continue;
        if (*t.gens[tgt].degree != *t.gens[src].degree - 1) continue;
        if (t.gens[tgt].action > t.gens[src].action) continue;
        D0.at(tgt, src) = 1;
        used[src] = used[tgt] = 1;
    }
    gf2::Mat Nmat(n, n);
    for (int s = 0; s < 2 * n; ++s) {
        int i = pick(0, n - 1), j = pick(0, n - 1);
        if (i == j) continue;
        if (t.gens[i].action >= t.gens[j].action) continue;  // strictly lower
        if (*t.gens[i].degree != *t.gens[j].degree) continue;
        Nmat.at(i, j) = 1;
    }
    gf2::Mat G = gf2::Mat::identity(n) + Nmat;
    // N is nilpotent (strictly action-decreasing), so invert by the series.
    gf2::Mat Ginv = gf2::Mat::identity(n);
    gf2::Mat P = Nmat;
    for (int s = 0; s < n && !P.is_zero(); ++s) {
        Ginv = Ginv + P;
        P = P * Nmat;
    }
    gf2::Mat D = G * D0 * Ginv;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (D.at(i, j)) t.boundary.emplace_back(i, j);
    return t;
}

FloerTriple worked_example() {
    FloerTriple t;
    t.gens.push_back({"a1", 1, std::nullopt});
    t.gens.push_back({"b1", 1, std::nullopt});
    t.gens.push_back({"a0", 0, std::nullopt});
    t.gens.push_back({"b0", 0, std::nullopt});
    t.boundary.emplace_back(t.find("b0"), t.find("a1"));  // d a1 = b0 over GF(2)
    return t;
}

}  // namespace rfh::floer
