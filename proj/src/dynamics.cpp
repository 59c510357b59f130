#include "kdvbbm/dynamics.hpp"

#include <cmath>
#include <limits>

#include "kdvbbm/analyticity.hpp"
#include "kdvbbm/error.hpp"
#include "kdvbbm/simd/kernels.hpp"
#include "kdvbbm/spectral.hpp"
#include "kdvbbm/symbols.hpp"

namespace kdvbbm {

Model::Model(GridPtr grid, const CoefficientSet& coeffs)
    : grid_(std::move(grid)),
      coeffs_(coeffs),
      phi_(symbol_table(SymbolKind::phi, *grid_, coeffs)),
      psi_(symbol_table(SymbolKind::psi, *grid_, coeffs)),
      tau_(symbol_table(SymbolKind::tau, *grid_, coeffs)),
      xi_(grid_->xi().begin(), grid_->xi().end()) {
    xi_[static_cast<std::size_t>(grid_->nyquist_index())] = 0.0;
}

std::vector<cplx> Model::phases(double t) const {
    std::vector<cplx> e(phi_.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::polar(1.0, -phi_[i] * t);
    return e;
}

Spectrum Model::propagate(const Spectrum& u, double t) const {
    Spectrum out(u.grid());
    const auto e = phases(t);
    simd::active().rotate(out.coeffs().data(), u.coeffs().data(), e.data(), u.size());
    return out;
}

void Model::nonlinear(const Spectrum& u, Spectrum& out) const {
    const int n = grid_->n_modes();
    const int m = 2 * n;
    thread_local std::vector<double> eta, eta_x, sq, mix;
    eta.resize(static_cast<std::size_t>(m));
    eta_x.resize(eta.size());
    sq.resize(eta.size());
    mix.resize(eta.size());

    thread_local std::optional<Spectrum> deriv;
    if (!deriv || !same_grid(deriv->grid(), grid_)) deriv.emplace(grid_);
    for (std::size_t i = 0; i < u.size(); ++i) (*deriv)[i] = u[i] * cplx(0.0, xi_[i]);

    to_physical(u, m, eta);
    to_physical(*deriv, m, eta_x);
    simd::active().nonlinear_terms(eta.data(), eta_x.data(), sq.data(), mix.data(), eta.size());

    // reuse deriv as scratch for the cubic/gradient spectrum
    from_physical(sq, out);
    from_physical(mix, *deriv);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const cplx f = tau_[i] * out[i] - psi_[i] * (*deriv)[i];
        out[i] = cplx(f.imag(), -f.real());  // -i f
    }
    zero_nyquist(out);
}

Spectrum linear_propagate(const Spectrum& u, double t, const CoefficientSet& c) {
    return Model(u.grid(), c).propagate(u, t);
}

Spectrum nonlinear_rhs(const Spectrum& u, const CoefficientSet& c) {
    if (u.hermitian_defect() > kSymmetryTol)
        throw SymmetryViolation("nonlinear_rhs: input spectrum is not Hermitian");
    Spectrum out(u.grid());
    Model(u.grid(), c).nonlinear(u, out);
    if (!out.all_finite()) throw OverflowError("nonlinear_rhs: non-finite result");
    return out;
}

SampleRecord make_record(double t, const Spectrum& u, const CoefficientSet& c, GevreyIndex g) {
    SampleRecord r{t, u, energy(u, c), sobolev_norm(u, 2.0), gevrey_norm(u, g), g.sigma, std::nullopt};
    return r;
}

namespace {

int step_count(double T, double dt) {
    if (!(dt > 0)) throw RangeError("dt must be positive");
    if (!(T >= 0)) throw RangeError("T must be non-negative");
    const double ratio = T / dt;
    const double steps = std::round(ratio);
    if (std::abs(steps - ratio) > 1e-9 * std::max(1.0, ratio))
        throw RangeError("T/dt must be an integer (T=" + format_quantity(T) + ", dt=" + format_quantity(dt) + ")");
    return static_cast<int>(steps);
}

}  // namespace

Trajectory evolve_ifrk4(const Spectrum& eta0, double T, const CoefficientSet& c,
                        const EvolveOptions& opt) {
    const int steps = step_count(T, opt.dt);
    const int stride = std::max(1, opt.record_stride);
    const Model model(eta0.grid(), c);
    const auto& kern = simd::active();
    const std::size_t n = eta0.size();
    const double dt = opt.dt;

    Trajectory traj{c, eta0.grid(), {}, {"ifrk4", dt, 0.0, opt.gevrey}};

    auto tracked = [&]() -> GevreyIndex {
        for (auto* o : opt.observers)
            if (auto s = o->tracked_sigma()) return {*s, opt.gevrey.s};
        return opt.gevrey;
    };
    auto record = [&](double t, const Spectrum& u) {
        auto r = make_record(t, u, c, tracked());
        const auto fit = estimate_radius(u, opt.noise_floor);
        r.sigma_hat = fit.sigma_hat;
        traj.records.push_back(std::move(r));
    };
    auto notify = [&](double t, const Spectrum& u) {
        for (auto* o : opt.observers) o->on_step(t, u);
    };

    Spectrum u = eta0;
    notify(0.0, u);
    record(0.0, u);

    const double ceiling = opt.blowup_factor * sobolev_norm(eta0, 2.0);
    const auto full = model.phases(dt);
    const auto half = model.phases(0.5 * dt);
    Spectrum k1(u.grid()), k2(u.grid()), k3(u.grid()), k4(u.grid()), tmp(u.grid()), eu(u.grid());

    for (int step = 1; step <= steps; ++step) {
        // k1 = N(u)
        model.nonlinear(u, k1);
        // k2 = N(Eh (u + dt/2 k1))
        tmp = u;
        kern.axpy(tmp.coeffs().data(), 0.5 * dt, k1.coeffs().data(), n);
        kern.rotate(tmp.coeffs().data(), tmp.coeffs().data(), half.data(), n);
        model.nonlinear(tmp, k2);
        // k3 = N(Eh u + dt/2 k2)
        kern.rotate(eu.coeffs().data(), u.coeffs().data(), half.data(), n);
        tmp = eu;
        kern.axpy(tmp.coeffs().data(), 0.5 * dt, k2.coeffs().data(), n);
        model.nonlinear(tmp, k3);
        // k4 = N(E u + dt Eh k3)
        kern.rotate(tmp.coeffs().data(), k3.coeffs().data(), half.data(), n);
        kern.rotate(k4.coeffs().data(), u.coeffs().data(), full.data(), n);
        kern.axpy(k4.coeffs().data(), dt, tmp.coeffs().data(), n);
        tmp = k4;
        model.nonlinear(tmp, k4);
        // u <- E u + dt/6 (E k1 + 2 Eh (k2 + k3) + k4)
        kern.axpy(k2.coeffs().data(), 1.0, k3.coeffs().data(), n);
        kern.rotate(k2.coeffs().data(), k2.coeffs().data(), half.data(), n);
        kern.rotate(k1.coeffs().data(), k1.coeffs().data(), full.data(), n);
        kern.rotate(u.coeffs().data(), u.coeffs().data(), full.data(), n);
        kern.axpy(u.coeffs().data(), dt / 6.0, k1.coeffs().data(), n);
        kern.axpy(u.coeffs().data(), dt / 3.0, k2.coeffs().data(), n);
        kern.axpy(u.coeffs().data(), dt / 6.0, k4.coeffs().data(), n);

        const double t = step * dt;
        const double h2 = sobolev_norm(u, 2.0);
        if (!std::isfinite(h2) || h2 > ceiling)
            throw BlowUp("H2 norm " + format_quantity(h2) + " exceeded ceiling " + format_quantity(ceiling) +
                         " at t=" + format_quantity(t));
        notify(t, u);
        if (step % stride == 0 || step == steps) record(t, u);
    }
    return traj;
}

double local_existence_time(double norm0, double c_s) {
    if (norm0 < 0) throw RangeError("norm0 must be non-negative");
    if (!(c_s > 0)) throw RangeError("C_s must be positive");
    if (norm0 == 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / (8.0 * c_s * norm0 * (1.0 + norm0));
}

}  // namespace kdvbbm
