#include "t2dist/core.hpp"

#include <cmath>
#include <sstream>

#include "t2dist/errors.hpp"

namespace t2dist {

T2Grid make_t2_grid(GridKind kind, int n_points, double t2_min_ms, double t2_max_ms) {
    if (!(t2_min_ms > 0.0) || !(t2_min_ms < t2_max_ms))
        throw ParameterError("make_t2_grid: require 0 < t2_min < t2_max");
    T2Grid grid;
    grid.kind = kind;
    if (kind == GridKind::DenseLinear) {
        const int n = static_cast<int>(std::floor(t2_max_ms - t2_min_ms)) + 1;
        grid.values.resize(n);
        for (int i = 0; i < n; ++i) grid.values[i] = t2_min_ms + i;
    } else {
        if (n_points < 2) throw ParameterError("make_t2_grid: log-spaced grid needs n_points >= 2");
        grid.values.resize(n_points);
        const double log_lo = std::log(t2_min_ms);
        const double log_hi = std::log(t2_max_ms);
        for (int i = 0; i < n_points; ++i) {
            const double f = static_cast<double>(i) / (n_points - 1);
            grid.values[i] = std::exp(log_lo + f * (log_hi - log_lo));
        }
        grid.values.front() = t2_min_ms;
        grid.values.back() = t2_max_ms;
    }
    return grid;
}

const T2Grid& dense_grid() {
    static const T2Grid g = make_t2_grid(GridKind::DenseLinear, 0, 1.0, 2000.0);
    return g;
}

const T2Grid& inference_grid() {
    static const T2Grid g = make_t2_grid(GridKind::LogSpaced, 60, 10.0, 2000.0);
    return g;
}

T2Distribution T2Distribution::checked(T2Grid grid, Eigen::VectorXd weights) {
    if (weights.size() != grid.size())
        throw ParameterError("T2Distribution: weight count does not match grid size");
    if ((weights.array() < 0.0).any())
        throw ParameterError("T2Distribution: negative weight");
    const double sum = weights.sum();
    if (std::abs(sum - 1.0) > 1e-9) {
        std::ostringstream msg;
        msg << "T2Distribution: weights sum to " << sum << ", expected 1";
        throw ParameterError(msg.str());
    }
    return T2Distribution{std::move(grid), std::move(weights)};
}

T2Distribution T2Distribution::renormalized(T2Grid grid, Eigen::VectorXd weights) {
    if (weights.size() != grid.size())
        throw ParameterError("T2Distribution: weight count does not match grid size");
    const double max_w = weights.maxCoeff();
    if ((weights.array() < -1e-12 * std::max(1.0, max_w)).any())
        throw ParameterError("T2Distribution: negative weight");
    weights = weights.cwiseMax(0.0);
    const double sum = weights.sum();
    if (!(sum > 0.0) || !std::isfinite(sum))
        throw DegenerateInput("T2Distribution: total mass is zero or non-finite");
    weights /= sum;
    return T2Distribution{std::move(grid), std::move(weights)};
}

EchoTrain::EchoTrain(double delta_te, int echoes, double flip_deg, double t1)
    : delta_te_ms(delta_te), n_echoes(echoes), flip_angle_deg(flip_deg), t1_ms(t1) {
    if (!(delta_te_ms > 0.0)) throw ParameterError("EchoTrain: delta_te must be positive");
    if (n_echoes < 1) throw ParameterError("EchoTrain: need at least one echo");
    if (!(flip_angle_deg >= 90.0 && flip_angle_deg <= 180.0))
        throw ParameterError("EchoTrain: flip angle must lie in [90, 180] degrees");
    if (!(t1_ms > 0.0)) throw ParameterError("EchoTrain: T1 must be positive");
}

Eigen::VectorXd EchoTrain::te_vector_ms() const {
    Eigen::VectorXd te(n_echoes);
    for (int i = 0; i < n_echoes; ++i) te[i] = (i + 1) * delta_te_ms;
    return te;
}

T2Distribution downsample_distribution(const T2Distribution& dense, const T2Grid& target) {
    if (dense.grid.kind != GridKind::DenseLinear)
        throw ParameterError("downsample_distribution: source must live on the dense-linear grid");
    if (target.kind != GridKind::LogSpaced)
        throw ParameterError("downsample_distribution: target must be a log-spaced grid");

    const int nt = target.size();
    // Bin edges: geometric means between neighbours, grid bounds at the ends.
    std::vector<double> edges(nt + 1);
    edges[0] = target.values.front();
    for (int j = 1; j < nt; ++j)
        edges[j] = std::sqrt(target.values[j - 1] * target.values[j]);
    edges[nt] = target.values.back();

    Eigen::VectorXd binned = Eigen::VectorXd::Zero(nt);
    int bin = 0;
    for (int i = 0; i < dense.grid.size(); ++i) {
        const double t2 = dense.grid.values[i];
        if (t2 < edges.front() || t2 > edges.back()) continue;
        while (bin < nt - 1 && t2 >= edges[bin + 1]) ++bin;
        binned[bin] += dense.weights[i];
    }
    const double kept = binned.sum();
    if (!(kept > 0.0))
        throw DegenerateInput("downsample_distribution: no dense mass inside the target grid bounds");
    binned /= kept;
    return T2Distribution{target, std::move(binned)};
}

MultiEchoSignal normalize_signal(const MultiEchoSignal& raw) {
    if (raw.values.size() < 1) throw ParameterError("normalize_signal: empty signal");
    const double s1 = raw.values[0];
    if (!(s1 > 0.0) || !std::isfinite(s1))
        throw DegenerateInput("normalize_signal: first echo must be positive and finite");
    MultiEchoSignal out;
    out.echo_train = raw.echo_train;
    out.values = raw.values / s1;
    out.values[0] = 1.0;
    return out;
}

} // namespace t2dist
