#include <algorithm>
#include <cmath>

#include "kdvbbm/dynamics.hpp"
#include "kdvbbm/error.hpp"
#include "kdvbbm/simd/kernels.hpp"

namespace kdvbbm {

namespace {

struct Mesh {
    std::vector<double> t;
    std::vector<std::vector<cplx>> forward;   // S(t_j) phases
    std::vector<std::vector<cplx>> backward;  // S(-t_j) phases
};

Mesh make_mesh(const Model& model, double T, int nodes) {
    Mesh m;
    for (int j = 0; j < nodes; ++j) {
        const double t = T * j / (nodes - 1);
        m.t.push_back(t);
        m.forward.push_back(model.phases(t));
        m.backward.push_back(model.phases(-t));
    }
    return m;
}

// Fixed point on one mesh. Returns states at the nodes.
std::vector<Spectrum> iterate(const Spectrum& eta0, const Model& model, const Mesh& mesh,
                              const PicardOptions& opt, PicardDiagnostics& diag) {
    const auto& kern = simd::active();
    const std::size_t n = eta0.size();
    const std::size_t nodes = mesh.t.size();
    const auto w = gevrey_weights(*eta0.grid(), opt.gevrey);

    std::vector<Spectrum> eta;
    for (std::size_t j = 0; j < nodes; ++j) {
        eta.emplace_back(eta0.grid());
        kern.rotate(eta[j].coeffs().data(), eta0.coeffs().data(), mesh.forward[j].data(), n);
    }

    std::vector<Spectrum> g(nodes, Spectrum(eta0.grid()));
    Spectrum nl(eta0.grid()), acc(eta0.grid()), next(eta0.grid()), diff(eta0.grid());

    for (int it = 1; it <= opt.max_iter; ++it) {
        // interaction-picture integrand g_j = S(-t_j) N(eta(t_j))
        for (std::size_t j = 0; j < nodes; ++j) {
            model.nonlinear(eta[j], nl);
            kern.rotate(g[j].coeffs().data(), nl.coeffs().data(), mesh.backward[j].data(), n);
        }
        acc = eta0;
        double dist = 0;
        for (std::size_t j = 0; j < nodes; ++j) {
            if (j > 0) {
                const double h = mesh.t[j] - mesh.t[j - 1];
                kern.axpy(acc.coeffs().data(), 0.5 * h, g[j - 1].coeffs().data(), n);
                kern.axpy(acc.coeffs().data(), 0.5 * h, g[j].coeffs().data(), n);
            }
            kern.rotate(next.coeffs().data(), acc.coeffs().data(), mesh.forward[j].data(), n);
            diff = next;
            diff -= eta[j];
            dist = std::max(dist, std::sqrt(kern.weighted_sum_sq(diff.coeffs().data(), w.data(), n)));
            eta[j] = next;
        }
        if (!std::isfinite(dist)) throw NoConvergence("picard iteration produced non-finite iterates");
        diag.iterations = it;
        diag.distances.push_back(dist);
        if (diag.distances.size() > 1) {
            const double prev = diag.distances[diag.distances.size() - 2];
            const double ratio = prev > 0 ? dist / prev : 0.0;
            diag.ratios.push_back(ratio);
            diag.max_ratio = std::max(diag.max_ratio, ratio);
            diag.final_ratio = ratio;
        }
        if (dist < opt.tol) return eta;
    }
    throw NoConvergence("picard iteration did not reach tol " + format_quantity(opt.tol) + " in " +
                        std::to_string(opt.max_iter) + " iterations (last distance " +
                        format_quantity(diag.distances.back()) + "); T may be too large for the data");
}

}  // namespace

PicardResult picard_solve(const Spectrum& eta0, double T, const CoefficientSet& c,
                          const PicardOptions& opt) {
    if (!(T > 0)) throw RangeError("picard_solve: T must be positive");
    if (opt.nodes < 2) throw RangeError("picard_solve: need at least 2 nodes");
    if (eta0.hermitian_defect() > 1e-10) throw SymmetryViolation("picard_solve: datum not Hermitian");
    const Model model(eta0.grid(), c);

    PicardResult result;
    auto& diag = result.diagnostics;
    const auto mesh = make_mesh(model, T, opt.nodes);
    auto states = iterate(eta0, model, mesh, opt, diag);

    if (opt.check_resolution) {
        PicardDiagnostics fine_diag;
        const auto fine_mesh = make_mesh(model, T, 2 * opt.nodes - 1);
        const auto fine = iterate(eta0, model, fine_mesh, opt, fine_diag);
        for (std::size_t j = 0; j < states.size(); ++j)
            diag.resolution_change =
                std::max(diag.resolution_change, gevrey_norm(states[j] - fine[2 * j], opt.gevrey));
        if (diag.resolution_change > opt.tol)
            throw QuadratureResolution("halving the picard mesh moved the fixed point by " +
                                       format_quantity(diag.resolution_change) + " > tol " +
                                       format_quantity(opt.tol) + "; increase nodes");
    }

    auto& traj = result.trajectory;
    traj.coeffs = c;
    traj.grid = eta0.grid();
    traj.meta = {"picard", T / (opt.nodes - 1), opt.tol, opt.gevrey};
    const double g0 = gevrey_norm(eta0, opt.gevrey);
    for (std::size_t j = 0; j < states.size(); ++j) {
        traj.records.push_back(make_record(mesh.t[j], states[j], c, opt.gevrey));
        if (g0 > 0) diag.max_growth = std::max(diag.max_growth, traj.records.back().gevrey / g0);
    }
    return result;
}

}  // namespace kdvbbm
