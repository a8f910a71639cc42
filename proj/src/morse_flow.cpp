#include "rfh/morse_flow.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace rfh::morse {

namespace {

Eigen::VectorXd solve_tangent_projection(const Eigen::MatrixXd& J,
                                         const Eigen::VectorXd& v) {
    // v minus its component in the row space of J.
    Eigen::MatrixXd G = J * J.transpose();
    Eigen::VectorXd lam = G.ldlt().solve(J * v);
    return v - J.transpose() * lam;
}

int nearest_point(const std::vector<Eigen::VectorXd>& pts, const Eigen::VectorXd& z,
                  double radius) {
    int best = -1;
    double best_d = radius;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        double d = (pts[i] - z).norm();
        if (d < best_d) {
            best_d = d;
            best = static_cast<int>(i);
        }
    }
    return best;
}

}  // namespace

Eigen::VectorXd EmbeddedMorseSetup::z_a() const {
    Eigen::VectorXd za = Eigen::VectorXd::Zero(2 * n);
    za(0) = a;
    za(n + 1) = 1.0;
    return za;
}

double EmbeddedMorseSetup::psi(const Eigen::VectorXd& z) const {
    return 0.5 * (z - z_a()).squaredNorm();
}

Eigen::VectorXd EmbeddedMorseSetup::psi_grad_ambient(const Eigen::VectorXd& z) const {
    return z - z_a();
}

Eigen::Vector3d EmbeddedMorseSetup::constraints(const Eigen::VectorXd& z) const {
    const auto x = z.head(n);
    const auto y = z.tail(n);
    return {x.squaredNorm() - 1.0, y.squaredNorm() - 1.0, x.dot(y)};
}

Eigen::MatrixXd EmbeddedMorseSetup::constraint_jacobian(const Eigen::VectorXd& z) const {
    const auto x = z.head(n);
    const auto y = z.tail(n);
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(3, 2 * n);
    J.row(0).head(n) = 2.0 * x;
    J.row(1).tail(n) = 2.0 * y;
    J.row(2).head(n) = y;
    J.row(2).tail(n) = x;
    return J;
}

Eigen::VectorXd EmbeddedMorseSetup::project(Eigen::VectorXd z) const {
    for (int it = 0; it < 50; ++it) {
        Eigen::Vector3d c = constraints(z);
        if (c.norm() < 1e-14) return z;
        Eigen::MatrixXd J = constraint_jacobian(z);
        Eigen::Vector3d delta = (J * J.transpose()).ldlt().solve(-c);
        z += J.transpose() * delta;
    }
    if (constraints(z).norm() < 1e-10) return z;
    throw NoConvergence("constraint projection failed to converge");
}

Eigen::MatrixXd EmbeddedMorseSetup::tangent_basis(const Eigen::VectorXd& z) const {
    Eigen::MatrixXd J = constraint_jacobian(z);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(J, Eigen::ComputeFullV);
    return svd.matrixV().rightCols(2 * n - 3);
}

Eigen::VectorXd EmbeddedMorseSetup::gradient(const Eigen::VectorXd& z) const {
    Eigen::VectorXd w = psi_grad_ambient(z);
    if (metric == Metric::pushforward_g) {
        // X = (y, -x); grad_g psi on the ambient space is 4(grad + grad_X).
        const auto x = z.head(n);
        const auto y = z.tail(n);
        Eigen::VectorXd X(2 * n);
        X.head(n) = y;
        X.tail(n) = -x;
        const double c = w.dot(X) / X.squaredNorm();
        w = 4.0 * (w + c * X);
    }
    // The constraint normals are g-orthogonal to the tangent space as well,
    // so the standard orthogonal projection realizes the g-projection.
    return solve_tangent_projection(constraint_jacobian(z), w);
}

bool EmbeddedMorseSetup::in_u0(const Eigen::VectorXd& z, double tol) const {
    for (int k = 2; k < n; ++k)
        if (std::abs(z(k)) > tol || std::abs(z(n + k)) > tol) return false;
    return true;
}

Eigen::VectorXd EmbeddedMorseSetup::reflect(const Eigen::VectorXd& z) const {
    Eigen::VectorXd r = z;
    for (int k = 2; k < n; ++k) {
        r(k) = -r(k);
        r(n + k) = -r(n + k);
    }
    return r;
}

namespace {

std::vector<CriticalPointReport> closed_form_points(int n, double a) {
    std::vector<CriticalPointReport> pts(4);
    const char* names[4] = {"z++", "z+-", "z-+", "z--"};
    const int sx[4] = {+1, +1, -1, -1};
    const int sy[4] = {+1, -1, +1, -1};
    const double base[2] = {(a - 1) * (a - 1) / 2.0, (a + 1) * (a + 1) / 2.0};
    const int idx[4] = {0, n - 2, n - 1, 2 * n - 3};
    for (int i = 0; i < 4; ++i) {
        pts[i].name = names[i];
        pts[i].z = Eigen::VectorXd::Zero(2 * n);
        pts[i].z(0) = sx[i];
        pts[i].z(n + 1) = sy[i];
        pts[i].value = base[i / 2] + (sy[i] > 0 ? 0.0 : 2.0);
        pts[i].index = idx[i];
    }
    return pts;
}

// Newton step on the Lagrange system grad psi = J^T lambda, c(z) = 0.
Eigen::VectorXd refine_critical(const EmbeddedMorseSetup& setup, Eigen::VectorXd z) {
    const int n = setup.n;
    const int m = 2 * n;
    Eigen::Vector3d lam = Eigen::Vector3d::Zero();
    for (int it = 0; it < 60; ++it) {
        Eigen::MatrixXd J = setup.constraint_jacobian(z);
        Eigen::VectorXd r1 = setup.psi_grad_ambient(z) - J.transpose() * lam;
        Eigen::Vector3d r2 = setup.constraints(z);
        if (r1.norm() + r2.norm() < 1e-13) break;
        Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m + 3, m + 3);
        Eigen::MatrixXd H = Eigen::MatrixXd::Identity(m, m);
        H.topLeftCorner(n, n) -= 2.0 * lam(0) * Eigen::MatrixXd::Identity(n, n);
        H.bottomRightCorner(n, n) -= 2.0 * lam(1) * Eigen::MatrixXd::Identity(n, n);
        H.topRightCorner(n, n) -= lam(2) * Eigen::MatrixXd::Identity(n, n);
        H.bottomLeftCorner(n, n) -= lam(2) * Eigen::MatrixXd::Identity(n, n);
        A.topLeftCorner(m, m) = H;
        A.topRightCorner(m, 3) = -J.transpose();
        A.bottomLeftCorner(3, m) = J;
        Eigen::VectorXd rhs(m + 3);
        rhs.head(m) = -r1;
        rhs.tail(3) = -r2;
        Eigen::VectorXd d = A.fullPivLu().solve(rhs);
        z += d.head(m);
        lam += d.tail(3);
    }
    return z;
}

}  // namespace

std::vector<CriticalPointReport> critical_points_psi(int n, double a, double fd_step,
                                                     double zero_band) {
    if (n < 3) throw DimensionTooLow("critical point analysis requires n >= 3");
    if (a <= 1.0) throw ConstraintViolated("parameter a must satisfy a > 1");
    EmbeddedMorseSetup setup{n, a};
    auto exact = closed_form_points(n, a);
    std::vector<CriticalPointReport> out;
    for (const auto& e : exact) {
        // Perturbed seed, Newton-refined back onto the critical set.
        Eigen::VectorXd seed = e.z;
        seed(1) += 0.02;
        seed(n) += 0.015;
        seed = setup.project(seed);
        Eigen::VectorXd z = refine_critical(setup, seed);
        CriticalPointReport rep;
        rep.name = e.name;
        rep.z = z;
        rep.value = setup.psi(z);
        rep.locate_residual = (z - e.z).norm();

        Eigen::MatrixXd B = setup.tangent_basis(z);
        const int k = static_cast<int>(B.cols());
        const double h = fd_step;
        Eigen::MatrixXd H(k, k);
        const double f0 = setup.psi(z);
        std::vector<double> fi(k);
        for (int i = 0; i < k; ++i) fi[i] = setup.psi(setup.project(z + h * B.col(i)));
        for (int i = 0; i < k; ++i)
            for (int j = i; j < k; ++j) {
                double fij = setup.psi(setup.project(z + h * (B.col(i) + B.col(j))));
                H(i, j) = H(j, i) = (fij - fi[i] - fi[j] + f0) / (h * h);
            }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
        int index = 0;
        for (int i = 0; i < k; ++i) {
            double ev = es.eigenvalues()(i);
            if (std::abs(ev) < zero_band)
                throw HessianDegenerate("tangent Hessian eigenvalue inside the zero band");
            if (ev < 0) ++index;
        }
        rep.index = index;
        out.push_back(std::move(rep));
    }
    return out;
}

double S3FlowSetup::f(const Eigen::Vector4d& s) const {
    double v = 0;
    for (int i = 0; i < 4; ++i) v += A[i] * s(i) * s(i);
    return v;
}

Eigen::Vector4d S3FlowSetup::gradient(const Eigen::Vector4d& s) const {
    const double fs = f(s);
    Eigen::Vector4d g;
    for (int i = 0; i < 4; ++i) g(i) = 2.0 * s(i) * (A[i] - fs);
    return g;
}

S3FlowSetup s3_setup(double a) {
    if (a <= 1.0) throw ConstraintViolated("parameter a must satisfy a > 1");
    const double lo = (a - 1) * (a - 1) / 2.0, hi = (a + 1) * (a + 1) / 2.0;
    return S3FlowSetup{{lo, lo + 2.0, hi, hi + 2.0}};
}

std::vector<Eigen::Vector4d> s3_critical_points() {
    std::vector<Eigen::Vector4d> pts;
    for (int axis = 0; axis < 4; ++axis)
        for (int sign : {+1, -1}) {
            Eigen::Vector4d p = Eigen::Vector4d::Zero();
            p(axis) = sign;
            pts.push_back(p);
        }
    return pts;
}

int s3_critical_id(int axis, int sign) {
    if (axis < 1 || axis > 4) throw IndexOutOfRange("critical point axis must be 1..4");
    return 2 * (axis - 1) + (sign > 0 ? 0 : 1);
}

int predicted_limit_s3(const Eigen::Vector4d& start, double zero_tol) {
    for (int axis = 4; axis >= 1; --axis) {
        double v = start(axis - 1);
        if (std::abs(v) > zero_tol) return s3_critical_id(axis, v > 0 ? +1 : -1);
    }
    throw ConstraintViolated("zero start vector has no predicted limit");
}

Eigen::Matrix<double, 6, 1> covering_map(const Eigen::Vector4d& s) {
    const double s1 = s(0), s2 = s(1), s3 = s(2), s4 = s(3);
    Eigen::Matrix<double, 6, 1> z;
    z << s1 * s1 + s2 * s2 - s3 * s3 - s4 * s4, 2 * (s2 * s3 + s1 * s4),
        2 * (s1 * s3 - s2 * s4), 2 * (s2 * s3 - s1 * s4),
        s1 * s1 + s3 * s3 - s2 * s2 - s4 * s4, -2 * (s1 * s2 + s3 * s4);
    return z;
}

Eigen::Matrix<double, 6, 4> covering_differential(const Eigen::Vector4d& s) {
    const double s1 = s(0), s2 = s(1), s3 = s(2), s4 = s(3);
    Eigen::Matrix<double, 6, 4> D;
    D << s1, s2, -s3, -s4,
        s4, s3, s2, s1,
        s3, -s4, s1, -s2,
        -s4, s3, s2, -s1,
        s1, -s2, s3, -s4,
        -s2, -s1, -s4, -s3;
    return 2.0 * D;
}

CoveringReport check_covering(int samples, std::uint64_t seed, double tol) {
    CoveringReport rep;
    EmbeddedMorseSetup sstar{3, 2.0};
    auto pts = random_s3_points(samples, seed);
    const double sqrt8 = std::sqrt(8.0);
    for (const auto& s : pts) {
        auto z = covering_map(s);
        rep.max_constraint = std::max(rep.max_constraint,
                                      static_cast<double>(sstar.constraints(z).norm()));
        rep.max_antipodal = std::max(
            rep.max_antipodal,
            static_cast<double>((covering_map(-s) - z).norm()));
        // Orthonormal frame v1, v2, v3 of T_s S^3 and its image norms (2,2,2*sqrt(2)).
        Eigen::Vector4d v1(s(1), -s(0), -s(3), s(2));
        Eigen::Vector4d v2(-s(2), -s(3), s(0), s(1));
        Eigen::Vector4d v3(-s(3), s(2), -s(1), s(0));
        auto D = covering_differential(s);
        Eigen::Matrix<double, 6, 1> w1 = D * v1, w2 = D * v2, w3 = D * v3;
        double dev = std::abs(w1.norm() - 2.0);
        dev = std::max(dev, std::abs(w2.norm() - 2.0));
        dev = std::max(dev, std::abs(w3.norm() - sqrt8));
        dev = std::max(dev, std::abs(w1.dot(w2)));
        dev = std::max(dev, std::abs(w1.dot(w3)));
        dev = std::max(dev, std::abs(w2.dot(w3)));
        rep.max_frame_dev = std::max(rep.max_frame_dev, dev);
    }
    rep.ok = rep.max_constraint < tol && rep.max_antipodal < tol && rep.max_frame_dev < tol;
    return rep;
}

namespace {

// Shared RK4 driver; normalize/project re-establishes the constraint set.
template <typename Vec, typename Grad, typename Renorm, typename Fval, typename Resid>
FlowTrajectory run_flow(Vec start, Grad grad, Renorm renorm, Fval fval, Resid resid,
                        Direction dir, double step, double T_max,
                        const std::vector<Eigen::VectorXd>& crit, double grad_tol) {
    FlowTrajectory traj;
    const double sgn = dir == Direction::forward ? 1.0 : -1.0;
    Vec s = renorm(start);
    double t = 0;
    double energy = 0;
    double prev_f = fval(s);
    double prev_g2 = grad(s).squaredNorm();
    traj.min_step_delta = 0;
    const double f_start = prev_f;
    long long k = 0;
    const long long sample_every = 16;
    auto record = [&](const Vec& p) {
        traj.t.push_back(t);
        traj.z.push_back(p);
        traj.f_values.push_back(fval(p));
    };
    record(s);
    while (t < T_max) {
        Eigen::VectorXd g = grad(s);
        if (g.norm() < grad_tol) break;
        Vec k1 = sgn * grad(s);
        Vec k2 = sgn * grad(renorm(s + 0.5 * step * k1));
        Vec k3 = sgn * grad(renorm(s + 0.5 * step * k2));
        Vec k4 = sgn * grad(renorm(s + step * k3));
        Vec next = s + (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        traj.max_constraint_residual =
            std::max(traj.max_constraint_residual, resid(next));
        s = renorm(next);
        t += step;
        ++k;
        const double f = fval(s);
        const double g2 = grad(s).squaredNorm();
        traj.min_step_delta = std::min(traj.min_step_delta, sgn * (f - prev_f));
        energy += 0.5 * step * (prev_g2 + g2);
        prev_f = f;
        prev_g2 = g2;
        if (k % sample_every == 0) record(s);
    }
    if (traj.t.back() != t) record(s);
    traj.converged = grad(s).norm() < 1e-6;
    traj.energy_gap = std::abs(sgn * (fval(s) - f_start) - energy);
    Eigen::VectorXd sz = s;
    traj.limit = sz;
    traj.limit_id = nearest_point(crit, sz, 1e-6);
    if (!traj.converged)
        throw NoConvergence("gradient flow did not reach a critical point before T_max");
    return traj;
}

}  // namespace

FlowTrajectory integrate_flow(const S3FlowSetup& setup, Eigen::Vector4d start,
                              Direction dir, double step, double T_max) {
    std::vector<Eigen::VectorXd> crit;
    for (const auto& c : s3_critical_points()) crit.push_back(c);
    return run_flow(
        start, [&](const Eigen::Vector4d& s) { return setup.gradient(s); },
        [](const Eigen::Vector4d& s) { return Eigen::Vector4d(s.normalized()); },
        [&](const Eigen::Vector4d& s) { return setup.f(s); },
        [](const Eigen::Vector4d& s) { return std::abs(s.norm() - 1.0); }, dir, step,
        T_max, crit, 1e-10);
}

FlowTrajectory integrate_flow(const EmbeddedMorseSetup& setup, Eigen::VectorXd start,
                              Direction dir, double step, double T_max) {
    std::vector<Eigen::VectorXd> crit;
    for (const auto& c : closed_form_points(setup.n, setup.a)) crit.push_back(c.z);
    return run_flow(
        start, [&](const Eigen::VectorXd& z) { return setup.gradient(z); },
        [&](const Eigen::VectorXd& z) { return setup.project(z); },
        [&](const Eigen::VectorXd& z) { return setup.psi(z); },
        [&](const Eigen::VectorXd& z) {
            return static_cast<double>(setup.constraints(z).norm());
        },
        dir, step, T_max, crit, 1e-10);
}

std::vector<FlowTrajectory> integrate_batch(const S3FlowSetup& setup,
                                            const std::vector<Eigen::Vector4d>& starts,
                                            double step, double T_max,
                                            ExecPolicy policy) {
    std::vector<FlowTrajectory> out(starts.size());
    parallel_for(
        starts.size(),
        [&](std::size_t i) {
            out[i] = integrate_flow(setup, starts[i], Direction::forward, step, T_max);
        },
        policy);
    return out;
}

ConnectingCount count_connecting(const S3FlowSetup& setup, int source_axis,
                                 int target_axis, double eps, double cluster_radius) {
    if (source_axis == target_axis) return {0, 0, 0};
    if (target_axis != source_axis + 1 || source_axis < 1 || target_axis > 4)
        throw math_error("connecting counts are defined for consecutive levels only");
    auto crit = s3_critical_points();
    // Seeds: eps-offsets from each signed source point along every unstable
    // coordinate direction, both orientations.
    std::vector<Eigen::Vector4d> seeds;
    std::vector<int> seed_source;
    for (int ssign : {+1, -1})
        for (int axis = source_axis + 1; axis <= 4; ++axis)
            for (int dsign : {+1, -1}) {
                Eigen::Vector4d s = Eigen::Vector4d::Zero();
                s(source_axis - 1) = ssign;
                s(axis - 1) = dsign * eps;
                seeds.push_back(s.normalized());
                seed_source.push_back(ssign);
            }
    auto trajs = integrate_batch(setup, seeds);
    int hits_pp = 0;  // c_source^+ -> c_target^+
    int family = 0;
    for (std::size_t i = 0; i < trajs.size(); ++i) {
        int id = nearest_point(
            std::vector<Eigen::VectorXd>(crit.begin(), crit.end()), trajs[i].limit,
            cluster_radius);
        if (id < 0) throw ClusteringAmbiguous("flow limit matches no critical point");
        const int axis = id / 2 + 1;
        const int tsign = id % 2 == 0 ? +1 : -1;
        if (axis != target_axis) continue;
        ++family;
        if (seed_source[i] > 0 && tsign > 0) ++hits_pp;
    }
    return {hits_pp, family, family / 2};
}

int intersection_dimension(int source_axis, int target_axis) {
    if (source_axis < 1 || source_axis > 4 || target_axis < 1 || target_axis > 4)
        throw IndexOutOfRange("critical point axis must be 1..4");
    if (target_axis <= source_axis) return source_axis == target_axis ? 0 : -1;
    // dim W^u(c_i) = 4 - i, dim W^s(c_j) = j - 1, transversal in S^3.
    return target_axis - source_axis;
}

double lyapunov_F(const Eigen::VectorXd& z, int n) {
    double v = 0;
    for (int i = 0; i < n; ++i) {
        v += (i == 0 ? (z(i) - 1) * (z(i) - 1) : z(i) * z(i));
        v += (i == 1 ? (z(n + i) - 1) * (z(n + i) - 1) : z(n + i) * z(n + i));
    }
    return v;
}

LyapunovReport lyapunov_check(const EmbeddedMorseSetup& setup,
                              const FlowTrajectory& traj, double tol) {
    LyapunovReport rep;
    rep.stayed_in_u0 = true;
    double prev = lyapunov_F(traj.z.front(), setup.n);
    const double first = prev;
    for (std::size_t i = 1; i < traj.z.size(); ++i) {
        double cur = lyapunov_F(traj.z[i], setup.n);
        rep.min_delta = std::min(rep.min_delta, cur - prev);
        prev = cur;
    }
    for (const auto& z : traj.z)
        if (!setup.in_u0(z, 1e-7)) rep.stayed_in_u0 = false;
    rep.total_increase = prev - first;
    if (rep.min_delta < -tol)
        throw MonotonicityViolated("Lyapunov function decreased along a trajectory");
    rep.ok = true;
    return rep;
}

std::map<long long, long long> morse_homology_counts(int n) {
    if (n < 2) throw DimensionTooLow("Morse homology counts require n >= 2");
    if (n == 2) return {{0, 2}, {1, 2}};
    std::map<long long, long long> h;
    for (long long k : {0LL, static_cast<long long>(n - 2),
                        static_cast<long long>(n - 1), static_cast<long long>(2 * n - 3)})
        h[k] += 1;
    return h;
}

bool check_reflection_symmetry(const EmbeddedMorseSetup& setup, int samples,
                               std::uint64_t seed, double tol) {
    for (const auto& z : random_sstar_points(setup.n, samples, seed))
        if (std::abs(setup.psi(setup.reflect(z)) - setup.psi(z)) > tol) return false;
    return true;
}

bool check_reflection_symmetry_s3(const S3FlowSetup& setup, int samples,
                                  std::uint64_t seed, double tol) {
    for (const auto& s : random_s3_points(samples, seed)) {
        Eigen::Vector4d r(s(0), -s(1), -s(2), s(3));
        if (std::abs(setup.f(r) - setup.f(s)) > tol) return false;
    }
    return true;
}

std::vector<Eigen::Vector4d> random_s3_points(int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Eigen::Vector4d> pts;
    while (static_cast<int>(pts.size()) < count) {
        Eigen::Vector4d v;
        for (int i = 0; i < 4; ++i) v(i) = gauss(rng);
        if (v.norm() < 1e-3) continue;
        pts.push_back(v.normalized());
    }
    return pts;
}

std::vector<Eigen::VectorXd> random_sstar_points(int n, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Eigen::VectorXd> pts;
    while (static_cast<int>(pts.size()) < count) {
        Eigen::VectorXd x(n), v(n);
        for (int i = 0; i < n; ++i) x(i) = gauss(rng);
        for (int i = 0; i < n; ++i) v(i) = gauss(rng);
        if (x.norm() < 1e-3) continue;
        x.normalize();
        Eigen::VectorXd y = v - v.dot(x) * x;
        if (y.norm() < 1e-3) continue;
        y.normalize();
        Eigen::VectorXd z(2 * n);
        z.head(n) = x;
        z.tail(n) = y;
        pts.push_back(z);
    }
    return pts;
}

}  // namespace rfh::morse
