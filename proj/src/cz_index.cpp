#include "rfh/cz_index.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rfh::cz {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr double snap_tol = 1e-9;

Eigen::Matrix2d j2() {
    Eigen::Matrix2d j;
    j << 0.0, -1.0, 1.0, 0.0;
    return j;
}

void check_symmetric(const Matrix& S) {
    double scale = std::max(1.0, S.cwiseAbs().maxCoeff());
    if ((S - S.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw NonSymmetricGenerator("generator S(t) is not symmetric");
}

// One Newton step of M -> M(1 - D/2), D = J^{-1}(M^T J M - J); quadratic
// convergence to the symplectic group.
void project_symplectic(Matrix& M, const Matrix& J) {
    const Matrix I = Matrix::Identity(M.rows(), M.cols());
    for (int it = 0; it < 3; ++it) {
        Matrix D = -J * (M.transpose() * J * M) - I;
        if (D.cwiseAbs().maxCoeff() < 1e-15) break;
        M = M * (I - 0.5 * D);
    }
}

Matrix rk4_advance(const SymplecticPathSpec& spec, const Matrix& J,
                   const Matrix& Psi0, double t0, double dt) {
    auto F = [&](double t, const Matrix& P) -> Matrix { return J * spec.S(t) * P; };
    Matrix k1 = F(t0, Psi0);
    Matrix k2 = F(t0 + dt / 2, Psi0 + (dt / 2) * k1);
    Matrix k3 = F(t0 + dt / 2, Psi0 + (dt / 2) * k2);
    Matrix k4 = F(t0 + dt, Psi0 + dt * k3);
    return Psi0 + (dt / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
}

double det_gap(const Matrix& Psi) {
    return (Matrix::Identity(Psi.rows(), Psi.cols()) - Psi).determinant();
}

double max_block_speed(const SymplecticPathSpec& spec) {
    double s = 1.0;
    for (const auto& b : spec.blocks) {
        if (b.kind == BlockKind::rotation) s = std::max(s, std::abs(b.omega));
        if (b.kind == BlockKind::hyperbolic) s = std::max(s, std::abs(b.rate));
    }
    return s;
}

}  // namespace

long long snapped_floor(double x) {
    double r = std::round(x);
    if (std::abs(x - r) < snap_tol) return static_cast<long long>(r);
    return static_cast<long long>(std::floor(x));
}

long long snapped_ceil(double x) {
    double r = std::round(x);
    if (std::abs(x - r) < snap_tol) return static_cast<long long>(r);
    return static_cast<long long>(std::ceil(x));
}

Block Block::rotation(double omega) {
    Block b;
    b.kind = BlockKind::rotation;
    b.omega = omega;
    return b;
}

Block Block::hyperbolic(double rate) {
    Block b;
    b.kind = BlockKind::hyperbolic;
    b.rate = rate;
    return b;
}

Block Block::general(std::function<Eigen::Matrix2d(double)> S) {
    Block b;
    b.kind = BlockKind::general;
    b.S = std::move(S);
    return b;
}

Eigen::Matrix2d Block::generator(double t) const {
    Eigen::Matrix2d m;
    switch (kind) {
        case BlockKind::rotation:
            m = omega * Eigen::Matrix2d::Identity();
            break;
        case BlockKind::hyperbolic:
            m << 0.0, -rate, -rate, 0.0;
            break;
        case BlockKind::general:
            m = S(t);
            break;
    }
    return m;
}

Matrix SymplecticPathSpec::S(double t) const {
    if (block_form()) {
        Matrix m = Matrix::Zero(dim, dim);
        for (std::size_t j = 0; j < blocks.size(); ++j)
            m.block<2, 2>(2 * j, 2 * j) = blocks[j].generator(t);
        return m;
    }
    return generator_full(t);
}

SymplecticPathSpec SymplecticPathSpec::from_blocks(std::vector<Block> blocks, double T) {
    SymplecticPathSpec s;
    s.dim = 2 * static_cast<int>(blocks.size());
    s.T = T;
    s.blocks = std::move(blocks);
    return s;
}

SymplecticPathSpec SymplecticPathSpec::from_generator(int dim, double T,
                                                      std::function<Matrix(double)> S) {
    SymplecticPathSpec s;
    s.dim = dim;
    s.T = T;
    s.generator_full = std::move(S);
    return s;
}

SymplecticPathSpec SymplecticPathSpec::with_endpoint(double T_new) const {
    SymplecticPathSpec s = *this;
    s.T = T_new;
    return s;
}

Matrix standard_J(int dim) {
    Matrix J = Matrix::Zero(dim, dim);
    for (int j = 0; j < dim / 2; ++j) J.block<2, 2>(2 * j, 2 * j) = j2();
    return J;
}

Matrix SampledPath::eval(double time) const {
    const double h = t.size() > 1 ? t[1] - t[0] : spec.T;
    std::size_t base = 0;
    if (h > 0) {
        base = static_cast<std::size_t>(std::max(0.0, std::floor(time / h)));
        base = std::min(base, t.size() - 1);
        while (base > 0 && t[base] > time) --base;
    }
    Matrix P = Psi[base];
    double cur = t[base];
    double remaining = time - cur;
    if (remaining <= 0) return P;
    const Matrix J = standard_J(spec.dim);
    int sub = std::max(1, static_cast<int>(std::ceil(remaining / (h > 0 ? h / 4 : 1e-3))));
    double dt = remaining / sub;
    for (int i = 0; i < sub; ++i) {
        P = rk4_advance(spec, J, P, cur, dt);
        project_symplectic(P, J);
        cur += dt;
    }
    return P;
}

SampledPath integrate_path(const SymplecticPathSpec& spec, int grid_size) {
    if (grid_size < 2) throw math_error("grid_size must be >= 2");
    if (spec.dim < 2 || spec.dim % 2 != 0) throw math_error("dim must be even and positive");
    const Matrix J = standard_J(spec.dim);

    SampledPath path;
    path.spec = spec;
    path.t.resize(grid_size + 1);
    path.Psi.resize(grid_size + 1);
    const double h = spec.T / grid_size;

    Matrix P = Matrix::Identity(spec.dim, spec.dim);
    path.t[0] = 0.0;
    path.Psi[0] = P;
    check_symmetric(spec.S(0.0));
    for (int i = 0; i < grid_size; ++i) {
        double t0 = i * h;
        P = rk4_advance(spec, J, P, t0, h);
        project_symplectic(P, J);
        path.t[i + 1] = (i + 1 == grid_size) ? spec.T : t0 + h;
        path.Psi[i + 1] = P;
        check_symmetric(spec.S(path.t[i + 1]));
        double drift = (P.transpose() * J * P - J).cwiseAbs().maxCoeff();
        path.max_drift = std::max(path.max_drift, drift);
    }
    if (path.max_drift > 1e-8)
        throw SymplecticDriftExceeded("symplectic identity residual " +
                                      std::to_string(path.max_drift));
    return path;
}

Crossing crossing_form(const SymplecticPathSpec& spec, const SampledPath& path,
                       double t, const Tolerances& tol) {
    Matrix Psi = path.eval(t);
    Matrix M = Matrix::Identity(spec.dim, spec.dim) - Psi;
    Eigen::JacobiSVD<Matrix> svd(M, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double sigma_max = sv(0);
    // Absolute floor at kernel_rel times the path scale: near a time where
    // Psi(t) = 1 the whole matrix M is tiny and a purely relative threshold
    // would miss the kernel.
    double scale = std::max(1.0, Psi.cwiseAbs().maxCoeff());
    double thr = std::max(tol.kernel_rel * sigma_max, tol.kernel_rel * scale);
    int kdim = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) <= thr) ++kdim;
    if (kdim == 0) throw math_error("crossing_form called at a non-crossing time");

    Crossing c;
    c.t = t;
    c.kernel_dim = kdim;
    c.kernel = svd.matrixV().rightCols(kdim);
    Matrix form = c.kernel.transpose() * spec.S(t) * c.kernel;
    c.form = 0.5 * (form + form.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> es(c.form);
    double band = tol.zero_band * std::max(1.0, c.form.cwiseAbs().maxCoeff());
    int sig = 0;
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        double lam = es.eigenvalues()(i);
        if (std::abs(lam) < band)
            throw DegenerateCrossing("crossing form eigenvalue " + std::to_string(lam) +
                                     " inside zero band at t=" + std::to_string(t));
        sig += lam > 0 ? 1 : -1;
    }
    c.signature = sig;
    c.at_boundary = t < tol.boundary || t > spec.T - tol.boundary;
    return c;
}

namespace {

double refine_bisection(const SampledPath& path, double lo, double hi) {
    double glo = det_gap(path.eval(lo));
    for (int it = 0; it < 80 && hi - lo > 1e-13; ++it) {
        double mid = 0.5 * (lo + hi);
        double gm = det_gap(path.eval(mid));
        if ((glo <= 0) == (gm <= 0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Smallest singular value of 1 - Psi(t): vanishes linearly at a crossing,
// unlike det(1 - Psi), whose zero order equals the kernel dimension.
double sigma_min_gap(const SampledPath& path, double t) {
    Matrix M = Matrix::Identity(path.spec.dim, path.spec.dim) - path.eval(t);
    Eigen::JacobiSVD<Matrix> svd(M);
    return svd.singularValues().tail(1)(0);
}

double refine_min_abs(const SampledPath& path, double lo, double hi) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - gr * (b - a);
    double x2 = a + gr * (b - a);
    double f1 = sigma_min_gap(path, x1);
    double f2 = sigma_min_gap(path, x2);
    for (int it = 0; it < 90 && b - a > 1e-13; ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = sigma_min_gap(path, x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = sigma_min_gap(path, x2);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

std::vector<Crossing> find_crossings(const SampledPath& path, const Tolerances& tol) {
    const std::size_t n = path.t.size();
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = det_gap(path.Psi[i]);

    // An isolated zero of order m keeps |det| below the tolerance on a
    // neighborhood of width ~ tol^(1/m), which can cover several grid nodes;
    // only a determinant that vanishes along most of the path indicates a
    // genuinely non-isolated crossing set.
    std::size_t below = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (std::abs(g[i]) < tol.crossing) ++below;
    if (2 * below > n)
        throw UnresolvedCrossingCluster(
            "det(1-Psi) vanishes along most of the path; crossings are not isolated");

    // A candidate is a crossing iff 1 - Psi has a nontrivial kernel there;
    // the det tolerance alone is too loose near high-multiplicity crossings.
    double scale = 1.0;
    for (const auto& P : path.Psi) scale = std::max(scale, P.cwiseAbs().maxCoeff());
    auto is_crossing = [&](double s) {
        return sigma_min_gap(path, s) <= tol.kernel_rel * scale &&
               std::abs(det_gap(path.eval(s))) < tol.crossing;
    };

    std::vector<double> times;
    times.push_back(0.0);  // Psi(0) = 1 is always a crossing
    if (is_crossing(path.spec.T)) times.push_back(path.spec.T);

    for (std::size_t i = 1; i + 1 < n; ++i) {
        double cand = -1.0;
        if ((g[i] <= 0) != (g[i + 1] <= 0))
            cand = refine_bisection(path, path.t[i], path.t[i + 1]);
        else if (std::abs(g[i]) <= std::abs(g[i - 1]) && std::abs(g[i]) <= std::abs(g[i + 1]))
            cand = refine_min_abs(path, path.t[i - 1], path.t[i + 1]);
        if (cand < 0) continue;
        if (cand < tol.boundary || cand > path.spec.T - tol.boundary) continue;
        if (is_crossing(cand)) times.push_back(cand);
    }

    std::sort(times.begin(), times.end());
    std::vector<double> merged;
    for (double s : times) {
        if (!merged.empty() && s - merged.back() < 1e-6) continue;
        merged.push_back(s);
    }

    std::vector<Crossing> crossings;
    crossings.reserve(merged.size());
    for (double s : merged) crossings.push_back(crossing_form(path.spec, path, s, tol));
    return crossings;
}

IndexResult cz_index(const SymplecticPathSpec& spec_in, const Tolerances& tol,
                     double perturb_eps, int grid_size) {
    SymplecticPathSpec spec = spec_in;
    if (perturb_eps != 0.0) {
        SymplecticPathSpec base = spec_in;
        spec = SymplecticPathSpec::from_generator(
            base.dim, base.T, [base, perturb_eps](double t) -> Matrix {
                return base.S(t) + perturb_eps * Matrix::Identity(base.dim, base.dim);
            });
    }
    if (grid_size <= 0) {
        double speed = spec_in.block_form() ? max_block_speed(spec_in) : 1.0;
        // The accumulated RK4 phase error ~ T*omega^5*h^4 must stay well below
        // the kernel detection threshold at the endpoint.
        grid_size = std::max(1600, static_cast<int>(std::ceil(spec.T * 128.0 * speed)));
    }

    SampledPath path = integrate_path(spec, grid_size);
    IndexResult res;
    res.crossings = find_crossings(path, tol);
    std::int64_t num = 0;
    for (const auto& c : res.crossings) num += (c.at_boundary ? 1 : 2) * c.signature;
    res.mu_cz = HalfInt(num);
    res.all_regular = true;
    if (spec_in.block_form()) {
        bool supported = true;
        for (const auto& b : spec_in.blocks)
            if (b.kind == BlockKind::general) supported = false;
        if (supported) res.mean_index = mean_index(spec_in);
    }
    return res;
}

HalfInt cz_closed_form(ClosedFormKind kind, double T) {
    if (T <= 0) throw math_error("T must be positive");
    double x = T / two_pi;
    switch (kind) {
        case ClosedFormKind::rot_plus:
            return HalfInt::whole(snapped_floor(x) + snapped_ceil(x));
        case ClosedFormKind::rot_minus:
            return HalfInt::whole(-(snapped_floor(x) + snapped_ceil(x)));
        case ClosedFormKind::hyperbolic:
            return HalfInt::whole(0);
    }
    throw math_error("unknown closed-form kind");
}

double mean_index(const SymplecticPathSpec& spec) {
    if (!spec.block_form())
        throw UnsupportedGenerator("mean index requires a block generator");
    double delta = 0.0;
    for (const auto& b : spec.blocks) {
        switch (b.kind) {
            case BlockKind::rotation:
                delta += b.omega * spec.T / std::numbers::pi;
                break;
            case BlockKind::hyperbolic:
                break;
            case BlockKind::general:
                throw UnsupportedGenerator("mean index undefined for general blocks");
        }
    }
    return delta;
}

double iteration_check(const SymplecticPathSpec& spec, double tau, int k,
                       const Tolerances& tol) {
    double delta = mean_index(spec.with_endpoint(tau));
    IndexResult full = cz_index(spec.with_endpoint(k * tau), tol);
    double R = full.mu_cz.as_double() - k * delta;
    if (std::abs(R) > spec.dim + 1e-6)
        throw BoundViolated("iteration residual " + std::to_string(R) +
                            " exceeds 2n=" + std::to_string(spec.dim));
    return R;
}

long long handle_orbit_index(double alpha, const std::vector<double>& A,
                             double C_z, int k, int n) {
    if (k < 0 || k >= n) throw math_error("need 0 <= k < n");
    if (static_cast<int>(A.size()) != n - k)
        throw math_error("A must have length n-k");
    long long total = 0;
    for (double Aj : A) {
        double x = alpha * Aj * C_z / two_pi;
        total += snapped_floor(x) + snapped_ceil(x);
    }
    return total;
}

SymplecticPathSpec conjugate(const SymplecticPathSpec& spec, const Matrix& Phi) {
    Matrix PhiInv = Phi.inverse();
    SymplecticPathSpec base = spec;
    return SymplecticPathSpec::from_generator(
        spec.dim, spec.T, [base, PhiInv](double t) -> Matrix {
            return PhiInv.transpose() * base.S(t) * PhiInv;
        });
}

}  // namespace rfh::cz
