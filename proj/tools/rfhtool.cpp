// Command-line front end: cz | brieskorn | floer | rfh | morse.
//
// Exit codes: 0 success, 1 parse/usage error, 2 mathematical failure,
// 3 I/O failure. Output is deterministic for a fixed (config, seed).

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rfh/brieskorn.hpp"
#include "rfh/cz_index.hpp"
#include "rfh/errors.hpp"
#include "rfh/floer.hpp"
#include "rfh/morse_flow.hpp"
#include "rfh/rfh_tables.hpp"
#include "rfh/triple_io.hpp"

using nlohmann::json;

namespace {

// Every numeric result carries the tag of the rule that produced it:
// "paper" (closed form / proved statement), "derived" (consequence of the
// closed forms), or "computed" (numerical engine output).
json tagged(const json& value, const char* tag) {
    return json{{"value", value}, {"tag", tag}};
}

std::vector<long long> parse_tuple(const std::string& text) {
    std::vector<long long> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            long long x = std::stoll(item, &pos);
            if (pos != item.size()) throw rfh::parse_error("");
            v.push_back(x);
        } catch (...) {
            throw rfh::parse_error("tuple entry '" + item + "' is not an integer");
        }
    }
    if (v.size() < 3) throw rfh::parse_error("tuple needs at least 3 entries");
    for (long long x : v)
        if (x < 2) throw rfh::parse_error("tuple entries must be >= 2");
    return v;
}

// Block DSL: "rot:1,hyp,rot:-2 T=6.2831853" (hyp takes an optional rate).
rfh::cz::SymplecticPathSpec parse_path_spec(const std::vector<std::string>& words) {
    std::vector<rfh::cz::Block> blocks;
    double T = 1.0;
    bool have_blocks = false;
    for (const auto& w : words) {
        if (w.rfind("T=", 0) == 0) {
            try {
                T = std::stod(w.substr(2));
            } catch (...) {
                throw rfh::parse_error("bad endpoint '" + w + "'");
            }
            continue;
        }
        std::stringstream ss(w);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.rfind("rot:", 0) == 0) {
                try {
                    blocks.push_back(rfh::cz::Block::rotation(std::stod(tok.substr(4))));
                } catch (...) {
                    throw rfh::parse_error("bad rotation block '" + tok + "'");
                }
            } else if (tok == "hyp") {
                blocks.push_back(rfh::cz::Block::hyperbolic());
            } else if (tok.rfind("hyp:", 0) == 0) {
                try {
                    blocks.push_back(rfh::cz::Block::hyperbolic(std::stod(tok.substr(4))));
                } catch (...) {
                    throw rfh::parse_error("bad hyperbolic block '" + tok + "'");
                }
            } else {
                throw rfh::parse_error("unknown block '" + tok + "'");
            }
        }
        have_blocks = true;
    }
    if (!have_blocks || blocks.empty()) throw rfh::parse_error("empty path spec");
    if (T <= 0) throw rfh::parse_error("endpoint T must be positive");
    return rfh::cz::SymplecticPathSpec::from_blocks(std::move(blocks), T);
}

void flatten(const json& j, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& rows) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), rows);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i)
            flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows);
    } else {
        rows.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
    }
}

void emit(const json& report, const std::string& format, const std::string& out_path) {
    std::ostringstream os;
    if (format == "json") {
        os << report.dump(2) << "\n";
    } else {
        std::vector<std::pair<std::string, std::string>> rows;
        flatten(report, "", rows);
        if (format == "csv") {
            os << "key,value\n";
            for (const auto& [k, v] : rows) os << k << "," << v << "\n";
        } else {
            std::size_t width = 0;
            for (const auto& [k, v] : rows) width = std::max(width, k.size());
            for (const auto& [k, v] : rows)
                os << k << std::string(width - k.size() + 2, ' ') << v << "\n";
        }
    }
    if (out_path.empty()) {
        std::cout << os.str();
    } else {
        std::ofstream f(out_path);
        if (!f) throw rfh::io_error("cannot write " + out_path);
        f << os.str();
    }
}

const char* policy_name(rfh::tables::Policy p) {
    using rfh::tables::Policy;
    switch (p) {
        case Policy::empty_chain: return "empty_chain";
        case Policy::forced_zero_action: return "forced_zero_action";
        case Policy::perfect_morse: return "perfect_morse";
        case Policy::symmetry: return "symmetry";
        case Policy::census: return "census";
        case Policy::open: return "open";
    }
    return "?";
}

const char* policy_tag(const rfh::tables::DimValue& d) {
    using rfh::tables::DimKind;
    using rfh::tables::Policy;
    if (d.kind == DimKind::unknown) return "computed";
    if (d.policy == Policy::symmetry || d.policy == Policy::perfect_morse ||
        d.kind == DimKind::infinite_dim)
        return "paper";
    return "derived";
}

json dim_table_json(const rfh::tables::RFHTable& table) {
    json rows = json::array();
    for (const auto& [deg, dv] : table.dims) {
        json r;
        r["degree"] = deg;
        r["dim"] = tagged(dv.str(), policy_tag(dv));
        r["policy"] = policy_name(dv.policy);
        rows.push_back(r);
    }
    return rows;
}

int run_cz(const std::vector<std::string>& words, double tol_crossing,
           double tol_kernel, const std::string& format, const std::string& out) {
    auto spec = parse_path_spec(words);
    rfh::cz::Tolerances tol;
    tol.crossing = tol_crossing;
    tol.kernel_rel = tol_kernel;
    auto res = rfh::cz::cz_index(spec, tol);
    json rep;
    rep["dim"] = spec.dim;
    rep["T"] = spec.T;
    rep["mu_cz"] = tagged(res.mu_cz.str(), "computed");
    if (res.mean_index)
        rep["mean_index"] = tagged(*res.mean_index, "derived");
    rep["crossings"] = json::array();
    for (const auto& c : res.crossings) {
        json e;
        e["t"] = tagged(c.t, "computed");
        e["kernel_dim"] = tagged(c.kernel_dim, "computed");
        e["signature"] = tagged(c.signature, "computed");
        e["at_boundary"] = c.at_boundary;
        rep["crossings"].push_back(e);
    }
    emit(rep, format, out);
    return 0;
}

int run_brieskorn(const std::string& tuple_text, long long lmax, bool with_rfh,
                  const std::string& format, const std::string& out) {
    rfh::brieskorn::BrieskornTuple a(parse_tuple(tuple_text));
    json rep;
    rep["tuple"] = a.a;
    rep["dim"] = a.dim();
    auto reg = rfh::brieskorn::regime(a);
    rep["regime"]["s"] = tagged(std::to_string(reg.s.first) + "/" +
                                    std::to_string(reg.s.second),
                                "derived");
    rep["regime"]["kind"] = reg.regime == rfh::brieskorn::Regime::index_positive
                                ? "index_positive"
                                : reg.regime == rfh::brieskorn::Regime::index_negative
                                      ? "index_negative"
                                      : "index_bounded";
    rep["sphere"] = tagged(rfh::brieskorn::is_topological_sphere(a), "paper");
    auto spec = rfh::brieskorn::spectrum(a, lmax);
    rep["spectrum"] = tagged(spec, "computed");
    rep["critical_manifolds"] = json::array();
    for (long long L : spec) {
        auto cm = rfh::brieskorn::critical_manifold(a, L);
        json e;
        e["L"] = L;
        e["subtuple"] = cm.subtuple;
        e["count"] = cm.count;
        e["manifold_dim"] = cm.dim;
        e["mu_min"] = tagged(rfh::brieskorn::mu_index(a, L, 0), "derived");
        e["mu_max"] = tagged(rfh::brieskorn::mu_index(a, L, cm.dim), "derived");
        rep["critical_manifolds"].push_back(e);
    }
    if (with_rfh) {
        auto model = rfh::tables::chain_model(a, lmax);
        rep["rfh"] = dim_table_json(rfh::tables::rfh_dims(model));
    }
    emit(rep, format, out);
    return 0;
}

int run_floer(const std::string& path, const std::string& format,
              const std::string& out) {
    auto t = rfh::floer::load_triple(path);
    auto v = rfh::floer::validate(t);
    if (!v.ok)
        throw rfh::math_error("axiom violated: " + v.axiom + " (" + v.witness + ")");
    json rep;
    rep["generators"] = static_cast<long long>(t.gens.size());
    auto full = rfh::floer::homology_window(t, rfh::floer::NEG_INF, rfh::floer::POS_INF);
    rep["homology"]["dim"] = tagged(full.dim, "computed");
    for (const auto& [deg, d] : full.dims_by_degree)
        rep["homology"]["by_degree"][std::to_string(deg)] = tagged(d, "computed");
    auto lim = rfh::floer::limit_homology(t);
    rep["limit"]["stable_dim"] = tagged(lim.stable_dim, "computed");
    rep["limit"]["certified"] = lim.certified;
    auto red = rfh::floer::build_reduction(t);
    auto rh = rfh::floer::reduced_homology(red);
    rep["reduction"]["dim"] = tagged(rh.dim, "computed");
    rep["reduction"]["iso_certified"] = rh.iso_ok;
    rep["reduction"]["basis_size"] = static_cast<long long>(red.basis.size());
    emit(rep, format, out);
    return 0;
}

int run_rfh(const std::string& tuple_text, long long lmax,
            const std::string& other_text, long long growth_degree,
            bool have_growth, const std::string& format, const std::string& out) {
    rfh::brieskorn::BrieskornTuple a(parse_tuple(tuple_text));
    auto model = rfh::tables::chain_model(a, lmax);
    json rep;
    rep["tuple"] = a.a;
    rep["L_max"] = lmax;
    rep["table"] = dim_table_json(rfh::tables::rfh_dims(model));
    if (have_growth) {
        auto g = rfh::tables::growth_rate(model, growth_degree, +1);
        rep["growth"]["degree"] = growth_degree;
        rep["growth"]["gamma"] = tagged(std::isinf(g.gamma)
                                            ? json(g.gamma > 0 ? "inf" : "-inf")
                                            : json(g.gamma),
                                        "derived");
        rep["growth"]["exact_linear"] = g.exact_linear;
    }
    if (!other_text.empty()) {
        rfh::brieskorn::BrieskornTuple b(parse_tuple(other_text));
        auto w = rfh::tables::distinguish(a, b, lmax);
        if (w) {
            rep["distinguish"]["degree"] = tagged(w->degree, "derived");
            rep["distinguish"]["lhs"] = tagged(w->lhs.str(), policy_tag(w->lhs));
            rep["distinguish"]["rhs"] = tagged(w->rhs.str(), policy_tag(w->rhs));
        } else {
            rep["distinguish"] = nullptr;
        }
    }
    emit(rep, format, out);
    return 0;
}

// "c4+" -> (axis 4, sign +1)
std::pair<int, int> parse_crit(const std::string& text) {
    if (text.size() != 3 || text[0] != 'c' || text[1] < '1' || text[1] > '4' ||
        (text[2] != '+' && text[2] != '-'))
        throw rfh::parse_error("bad critical point '" + text + "' (want e.g. c3+)");
    return {text[1] - '0', text[2] == '+' ? +1 : -1};
}

int run_morse(int n, double a, const std::string& count_spec, int starts,
              std::uint64_t seed, const std::string& format, const std::string& out) {
    json rep;
    rep["n"] = n;
    rep["a"] = a;
    if (!count_spec.empty()) {
        auto colon = count_spec.find(':');
        if (colon == std::string::npos)
            throw rfh::parse_error("count spec must look like c4+:c3+");
        auto [ax1, s1] = parse_crit(count_spec.substr(0, colon));
        auto [ax2, s2] = parse_crit(count_spec.substr(colon + 1));
        int lo = std::min(ax1, ax2), hi = std::max(ax1, ax2);
        auto cc = rfh::morse::count_connecting(rfh::morse::s3_setup(a), lo, hi);
        rep["count"]["pair"] = count_spec;
        rep["count"]["raw"] = tagged(cc.raw, "computed");
        rep["count"]["family"] = tagged(cc.family, "computed");
        rep["count"]["projected"] = tagged(cc.projected, "paper");
        if (out.empty())
            std::cout << cc.projected << "\n";
        else
            emit(rep, format, out);
        return 0;
    }
    json hom;
    for (const auto& [deg, c] : rfh::morse::morse_homology_counts(n))
        hom[std::to_string(deg)] = tagged(c, "paper");
    rep["homology"] = hom;
    if (n >= 3) {
        rep["critical_points"] = json::array();
        for (const auto& cp : rfh::morse::critical_points_psi(n, a)) {
            json e;
            e["name"] = cp.name;
            e["value"] = tagged(cp.value, "computed");
            e["index"] = tagged(cp.index, "computed");
            e["locate_residual"] = tagged(cp.locate_residual, "computed");
            rep["critical_points"].push_back(e);
        }
    }
    if (n == 3) {
        auto setup = rfh::morse::s3_setup(a);
        auto cov = rfh::morse::check_covering(1000, seed);
        rep["covering"]["ok"] = cov.ok;
        rep["covering"]["max_antipodal"] = tagged(cov.max_antipodal, "computed");
        rep["covering"]["max_frame_dev"] = tagged(cov.max_frame_dev, "computed");
        int nstarts = starts > 0 ? starts : 10;
        auto pts = rfh::morse::random_s3_points(nstarts, seed);
        auto trajs = rfh::morse::integrate_batch(setup, pts);
        int predicted_ok = 0;
        for (int i = 0; i < nstarts; ++i)
            if (trajs[i].limit_id == rfh::morse::predicted_limit_s3(pts[i]))
                ++predicted_ok;
        rep["flows"]["starts"] = nstarts;
        rep["flows"]["sign_rule_matches"] = tagged(predicted_ok, "computed");
        rep["symmetry"]["psi"] = rfh::morse::check_reflection_symmetry({3, a});
        rep["symmetry"]["f"] = rfh::morse::check_reflection_symmetry_s3(setup);
    }
    emit(rep, format, out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Brieskorn manifold Floer-theoretic invariants"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "json", out_path;
    long long lmax = 20;
    std::uint64_t seed = 1;
    double tol_crossing = 1e-9, tol_kernel = 1e-7;
    app.add_option("--format", format, "json | csv | table")
        ->check(CLI::IsMember({"json", "csv", "table"}));
    app.add_option("--out", out_path, "write output to a file");
    app.add_option("--lmax", lmax, "period bound |L| <= lmax")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "random seed");
    app.add_option("--tol-crossing", tol_crossing)->check(CLI::PositiveNumber);
    app.add_option("--tol-kernel", tol_kernel)->check(CLI::PositiveNumber);

    auto* cz = app.add_subcommand("cz", "Conley-Zehnder index of a block path");
    std::vector<std::string> cz_words;
    cz->add_option("spec", cz_words, "e.g. rot:1,hyp T=6.2831853")->required();

    auto* bk = app.add_subcommand("brieskorn", "spectrum, indices, sphere verdict");
    std::string bk_tuple;
    bool bk_rfh = false;
    bk->add_option("tuple", bk_tuple, "e.g. 2,2,2,3")->required();
    bk->add_flag("--rfh", bk_rfh, "append the homology dimension table");

    auto* fl = app.add_subcommand("floer", "homology of a triple file");
    std::string fl_path;
    fl->add_option("file", fl_path, "triple JSON file")->required();

    auto* rf = app.add_subcommand("rfh", "homology dimension table");
    std::string rf_tuple, rf_other;
    long long rf_growth_degree = 0;
    rf->add_option("tuple", rf_tuple, "e.g. 4,4,4,4")->required();
    rf->add_option("--distinguish", rf_other, "second tuple to compare against");
    auto* rf_growth = rf->add_option("--growth", rf_growth_degree,
                                     "growth rate at this degree");

    auto* mo = app.add_subcommand("morse", "Morse flow verification");
    int mo_n = 3, mo_starts = 0;
    double mo_a = 2.0;
    std::string mo_count;
    mo->add_option("--n", mo_n, "ambient sphere parameter (2..6)")
        ->check(CLI::Range(2, 6));
    mo->add_option("--a", mo_a, "Morse function parameter, a > 1");
    mo->add_option("--count", mo_count, "connecting count, e.g. c4+:c3+");
    mo->add_option("--starts", mo_starts, "number of random flow starts");

    try {
        app.parse(argc, argv);
        if (*cz) return run_cz(cz_words, tol_crossing, tol_kernel, format, out_path);
        if (*bk) return run_brieskorn(bk_tuple, lmax, bk_rfh, format, out_path);
        if (*fl) return run_floer(fl_path, format, out_path);
        if (*rf)
            return run_rfh(rf_tuple, lmax, rf_other, rf_growth_degree,
                           rf_growth->count() > 0, format, out_path);
        if (*mo) return run_morse(mo_n, mo_a, mo_count, mo_starts, seed, format, out_path);
        return 1;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const rfh::parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const rfh::io_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const rfh::math_error& e) {
        std::cerr << "math error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
