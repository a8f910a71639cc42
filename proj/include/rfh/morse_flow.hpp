#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rfh/errors.hpp"
#include "rfh/parallel.hpp"

namespace rfh::morse {

// S*S^{n-1} = {(x,y) : |x|=|y|=1, <x,y>=0} embedded in R^{2n}, with the Morse
// function psi(z) = |z - z_a|^2 / 2, z_a = (a,0,...,0; 0,1,0,...,0).
enum class Metric { pushforward_g, ambient_standard };

struct EmbeddedMorseSetup {
    int n = 3;
    double a = 2.0;
    Metric metric = Metric::pushforward_g;

    Eigen::VectorXd z_a() const;
    double psi(const Eigen::VectorXd& z) const;
    Eigen::VectorXd psi_grad_ambient(const Eigen::VectorXd& z) const;
    // Gradient of psi in the chosen metric, tangent to the constraint set.
    Eigen::VectorXd gradient(const Eigen::VectorXd& z) const;
    Eigen::Vector3d constraints(const Eigen::VectorXd& z) const;
    Eigen::MatrixXd constraint_jacobian(const Eigen::VectorXd& z) const;
    // Newton projection onto the constraint set; throws NoConvergence.
    Eigen::VectorXd project(Eigen::VectorXd z) const;
    // Orthonormal basis of the tangent space (kernel of the constraint rows).
    Eigen::MatrixXd tangent_basis(const Eigen::VectorXd& z) const;
    bool in_u0(const Eigen::VectorXd& z, double tol = 1e-9) const;  // x_k=y_k=0, k>=3
    // Reflection of the trailing 2n-4 coordinates.
    Eigen::VectorXd reflect(const Eigen::VectorXd& z) const;
};

struct CriticalPointReport {
    std::string name;  // "z++", "z+-", "z-+", "z--"
    Eigen::VectorXd z;
    double value = 0;
    int index = -1;
    double locate_residual = 0;  // distance to the closed-form point
};

// Newton-refined critical points with finite-difference Morse indices.
std::vector<CriticalPointReport> critical_points_psi(int n, double a,
                                                     double fd_step = 1e-4,
                                                     double zero_band = 1e-6);

// f(s) = Sum A_i s_i^2 on S^3 with A_1 < A_2 < A_3 < A_4.
struct S3FlowSetup {
    std::array<double, 4> A{};

    double f(const Eigen::Vector4d& s) const;
    Eigen::Vector4d gradient(const Eigen::Vector4d& s) const;
};

// A-values matched to psi through the covering: (a-1)^2/2, +2, (a+1)^2/2, +2.
S3FlowSetup s3_setup(double a);

// Critical points c_i^+/- = +/- e_i, ordered (1,+),(1,-),(2,+),...,(4,-).
std::vector<Eigen::Vector4d> s3_critical_points();
int s3_critical_id(int axis, int sign);  // axis 1..4, sign +/-1

// Limit predicted by the sign rules: first nonzero of s4, s3, s2, s1 from the
// top decides the forward limit (0,..,sign,..,0).
int predicted_limit_s3(const Eigen::Vector4d& start, double zero_tol = 0.0);

Eigen::Matrix<double, 6, 1> covering_map(const Eigen::Vector4d& s);
Eigen::Matrix<double, 6, 4> covering_differential(const Eigen::Vector4d& s);

struct CoveringReport {
    bool ok = false;
    double max_constraint = 0;  // S*S^2 constraint residual of Phi(s)
    double max_antipodal = 0;   // |Phi(-s) - Phi(s)|
    double max_frame_dev = 0;   // frame norms (2,2,2*sqrt(2)) and orthogonality
};

CoveringReport check_covering(int samples = 1000, std::uint64_t seed = 1,
                              double tol = 1e-9);

enum class Direction { forward, backward };

struct FlowTrajectory {
    std::vector<double> t;
    std::vector<Eigen::VectorXd> z;
    std::vector<double> f_values;
    Eigen::VectorXd limit;
    int limit_id = -1;  // index into the critical point list, -1 if unresolved
    bool converged = false;
    double max_constraint_residual = 0;
    double min_step_delta = 0;       // most negative per-step change of f
    double energy_gap = 0;           // |f(end) - f(start) - int |grad|^2 dt|
};

FlowTrajectory integrate_flow(const S3FlowSetup& setup, Eigen::Vector4d start,
                              Direction dir, double step = 1e-3, double T_max = 400);
FlowTrajectory integrate_flow(const EmbeddedMorseSetup& setup, Eigen::VectorXd start,
                              Direction dir, double step = 1e-3, double T_max = 400);

// Batch of S^3 integrations (optionally OpenMP-parallel); deterministic order.
std::vector<FlowTrajectory> integrate_batch(const S3FlowSetup& setup,
                                            const std::vector<Eigen::Vector4d>& starts,
                                            double step = 1e-3, double T_max = 400,
                                            ExecPolicy policy = ExecPolicy::parallel);

struct ConnectingCount {
    int raw = 0;        // trajectories for one fixed pair of signs
    int family = 0;     // all four sign combinations on S^3
    int projected = 0;  // after the antipodal identification on S*S^2
};

// Connecting trajectories between the consecutive critical levels source ->
// target (axes 1..4, target = source + 1), counted by seeding eps-offsets in
// the unstable directions and clustering the forward limits.
ConnectingCount count_connecting(const S3FlowSetup& setup, int source_axis,
                                 int target_axis, double eps = 1e-3,
                                 double cluster_radius = 1e-2);

// Dimension of W^u(c_i) \cap W^s(c_j) on S^3 from the explicit descriptions.
int intersection_dimension(int source_axis, int target_axis);

struct LyapunovReport {
    bool ok = false;
    double min_delta = 0;        // most negative per-step change of F
    bool stayed_in_u0 = false;
    double total_increase = 0;
};

// F(x,y) = (x1-1)^2 + Sum_{i!=1} x_i^2 + (y2-1)^2 + Sum_{i!=2} y_i^2 is
// non-decreasing along forward trajectories, strictly off U_0.
LyapunovReport lyapunov_check(const EmbeddedMorseSetup& setup,
                              const FlowTrajectory& traj, double tol = 1e-6);

double lyapunov_F(const Eigen::VectorXd& z, int n);

// GF(2) Morse homology of S*S^{n-1}.
std::map<long long, long long> morse_homology_counts(int n);

// Invariance checks for the coordinate reflections used by the symmetry
// arguments: psi o r = psi on S*S^{n-1} and f o r = f on S^3.
bool check_reflection_symmetry(const EmbeddedMorseSetup& setup, int samples = 200,
                               std::uint64_t seed = 2, double tol = 1e-12);
bool check_reflection_symmetry_s3(const S3FlowSetup& setup, int samples = 200,
                                  std::uint64_t seed = 3, double tol = 1e-12);

// Deterministic random points on the constraint sets.
std::vector<Eigen::Vector4d> random_s3_points(int count, std::uint64_t seed);
std::vector<Eigen::VectorXd> random_sstar_points(int n, int count, std::uint64_t seed);

}  // namespace rfh::morse
