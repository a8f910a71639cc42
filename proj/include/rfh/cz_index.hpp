#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <vector>

#include "rfh/errors.hpp"
#include "rfh/halfint.hpp"

namespace rfh::cz {

using Matrix = Eigen::MatrixXd;

enum class BlockKind { rotation, hyperbolic, general };

struct Block {
    BlockKind kind = BlockKind::rotation;
    double omega = 0.0;  // rotation: angular speed
    double rate = 0.0;   // hyperbolic: rho'(t), constant
    std::function<Eigen::Matrix2d(double)> S;  // general: symmetric 2x2 family

    static Block rotation(double omega);
    static Block hyperbolic(double rate = 1.0);
    static Block general(std::function<Eigen::Matrix2d(double)> S);

    Eigen::Matrix2d generator(double t) const;
};

// Path Psi(t) in Sp(2n) determined by Psi' = J0 S(t) Psi, Psi(0) = 1.
struct SymplecticPathSpec {
    int dim = 2;  // 2n
    double T = 1.0;
    std::vector<Block> blocks;                      // block form when nonempty
    std::function<Matrix(double)> generator_full;   // otherwise

    bool block_form() const { return !blocks.empty(); }
    Matrix S(double t) const;

    static SymplecticPathSpec from_blocks(std::vector<Block> blocks, double T);
    static SymplecticPathSpec from_generator(int dim, double T,
                                             std::function<Matrix(double)> S);
    SymplecticPathSpec with_endpoint(double T_new) const;
};

// J0 = blockdiag([[0,-1],[1,0]]), coordinates paired as (q1,p1,q2,p2,...).
Matrix standard_J(int dim);

struct Tolerances {
    double crossing = 1e-9;        // |det(1 - Psi(t))| at an accepted crossing
    double kernel_rel = 1e-7;      // singular values below kernel_rel * sigma_max
    double zero_band = 1e-6;       // eigenvalue zero band of the restricted form
    double drift = 1e-8;           // symplectic identity residual
    double boundary = 1e-7;        // times within this of {0, T} count as endpoint
};

struct SampledPath {
    SymplecticPathSpec spec;
    std::vector<double> t;
    std::vector<Matrix> Psi;
    double max_drift = 0.0;

    // Re-integrates from the nearest grid node at or below `time`.
    Matrix eval(double time) const;
};

SampledPath integrate_path(const SymplecticPathSpec& spec, int grid_size);

struct Crossing {
    double t = 0.0;
    int kernel_dim = 0;
    Matrix kernel;    // dim x kernel_dim, orthonormal columns
    Matrix form;      // kernel_dim x kernel_dim symmetric
    int signature = 0;
    bool at_boundary = false;
};

std::vector<Crossing> find_crossings(const SampledPath& path,
                                     const Tolerances& tol = {});

// Restriction of S(t) to ker(1 - Psi(t)) with its signature.
Crossing crossing_form(const SymplecticPathSpec& spec, const SampledPath& path,
                       double t, const Tolerances& tol = {});

struct IndexResult {
    HalfInt mu_cz;
    std::optional<double> mean_index;  // block generators only
    std::vector<Crossing> crossings;
    bool all_regular = true;
};

// grid_size 0 picks a grid from T and the block speeds. perturb_eps != 0
// replaces S(t) by S(t) + eps*1 (retry knob for degenerate crossings).
IndexResult cz_index(const SymplecticPathSpec& spec, const Tolerances& tol = {},
                     double perturb_eps = 0.0, int grid_size = 0);

enum class ClosedFormKind { rot_plus, rot_minus, hyperbolic };

HalfInt cz_closed_form(ClosedFormKind kind, double T);

// Sum over blocks: rotation omega*T/pi, hyperbolic 0. Throws
// UnsupportedGenerator for general blocks or non-block specs.
double mean_index(const SymplecticPathSpec& spec);

// R = mu_cz over [0, k*tau] - k * mean index over [0, tau]; |R| <= dim.
double iteration_check(const SymplecticPathSpec& spec, double tau, int k,
                       const Tolerances& tol = {});

// Sum_{j} floor(alpha*A_j*C_z/2pi) + ceil(alpha*A_j*C_z/2pi), A of length n-k.
long long handle_orbit_index(double alpha, const std::vector<double>& A,
                             double C_z, int k, int n);

// Conjugated spec S~(t) = Phi^{-T} S(t) Phi^{-1} (path Phi Psi Phi^{-1}).
SymplecticPathSpec conjugate(const SymplecticPathSpec& spec, const Matrix& Phi);

// Floor/ceil with snapping of near-integer arguments (tolerance 1e-9).
long long snapped_floor(double x);
long long snapped_ceil(double x);

}  // namespace rfh::cz
