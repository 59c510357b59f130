#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kdvbbm/grid.hpp"
#include "kdvbbm/norms.hpp"
#include "kdvbbm/params.hpp"

namespace kdvbbm {

struct SampleRecord {
    double t = 0;
    Spectrum state;
    double energy = 0;
    double h2 = 0;      // sobolev_norm(state, 2)
    double gevrey = 0;  // gevrey_norm at (sigma(t), s)
    double sigma = 0;   // sigma used for the gevrey column
    std::optional<double> sigma_hat;
};

struct TrajectoryMeta {
    std::string solver;
    double dt = 0;
    double tol = 0;
    GevreyIndex gevrey;
};

struct Trajectory {
    CoefficientSet coeffs;
    GridPtr grid;
    std::vector<SampleRecord> records;
    TrajectoryMeta meta;
};

/// Linear group S(t): c_k -> exp(-i phi(xi_k) t) c_k. Unitary in every
/// weighted norm; phi is taken as zero on the unpaired mode.
Spectrum linear_propagate(const Spectrum& u, double t, const CoefficientSet& c);

/// N(eta) = -i [tau eta^2 - 1/8 psi eta^3 - 7/48 psi eta_x^2], so that
/// eta_t = -i phi eta + N(eta). Products are dealiased.
Spectrum nonlinear_rhs(const Spectrum& u, const CoefficientSet& c);

/// Precomputed symbol tables for one (grid, coefficients) pair.
class Model {
public:
    Model(GridPtr grid, const CoefficientSet& coeffs);

    const GridPtr& grid() const { return grid_; }
    const CoefficientSet& coeffs() const { return coeffs_; }

    /// exp(-i phi(xi_k) t) per mode.
    std::vector<cplx> phases(double t) const;
    Spectrum propagate(const Spectrum& u, double t) const;
    /// Writes N(u) into out (same grid). No symmetry check.
    void nonlinear(const Spectrum& u, Spectrum& out) const;

private:
    GridPtr grid_;
    CoefficientSet coeffs_;
    std::vector<double> phi_, psi_, tau_, xi_;
};

/// Hook called by the marcher at t = 0 and after every step.
class StepObserver {
public:
    virtual ~StepObserver() = default;
    virtual void on_step(double t, const Spectrum& u) = 0;
    /// An observer that tracks sigma(t) reports it here; records then carry
    /// the gevrey norm at that sigma.
    virtual std::optional<double> tracked_sigma() const { return std::nullopt; }
};

struct EvolveOptions {
    double dt = 1e-3;
    int record_stride = 1;
    double blowup_factor = 1e6;
    GevreyIndex gevrey{0.0, 2.0};
    double noise_floor = 1e-13;  // for the sigma_hat column
    std::vector<StepObserver*> observers;
};

/// Integrating-factor (Lawson) RK4 for the spectral system. Throws BlowUp if
/// the H^2 norm exceeds blowup_factor times its initial value.
Trajectory evolve_ifrk4(const Spectrum& eta0, double T, const CoefficientSet& c,
                        const EvolveOptions& opt);

struct PicardOptions {
    int nodes = 64;
    double tol = 1e-10;
    int max_iter = 100;
    GevreyIndex gevrey{0.0, 2.0};
    bool check_resolution = true;
};

struct PicardDiagnostics {
    int iterations = 0;
    std::vector<double> distances;  // sup_t |eta^(n+1) - eta^(n)|_G per iteration
    std::vector<double> ratios;     // distances[n] / distances[n-1]
    double final_ratio = 0;
    double max_ratio = 0;
    double resolution_change = 0;  // sup distance to the half-spacing solution
    double max_growth = 0;         // sup_t |eta(t)|_G / |eta0|_G
};

struct PicardResult {
    Trajectory trajectory;
    PicardDiagnostics diagnostics;
};

/// Fixed point of the Duhamel map on a uniform mesh of [0, T] with composite
/// trapezoid quadrature, starting from the free evolution.
PicardResult picard_solve(const Spectrum& eta0, double T, const CoefficientSet& c,
                          const PicardOptions& opt);

/// 1 / (8 C_s |eta0| (1 + |eta0|)); +infinity for zero data.
double local_existence_time(double norm0, double c_s);

/// Fills energy, h2 and gevrey of a record from its state.
SampleRecord make_record(double t, const Spectrum& u, const CoefficientSet& c, GevreyIndex g);

}  // namespace kdvbbm
