#pragma once

#include <Eigen/Core>
#include <vector>

namespace t2dist {

enum class GridKind { DenseLinear, LogSpaced };

/// Discretized T2 axis in milliseconds. Values are strictly increasing and
/// positive; DenseLinear grids step by exactly 1 ms, LogSpaced grids have a
/// constant ratio between consecutive points.
struct T2Grid {
    GridKind kind = GridKind::LogSpaced;
    std::vector<double> values;

    int size() const { return static_cast<int>(values.size()); }
    bool operator==(const T2Grid& other) const {
        return kind == other.kind && values == other.values;
    }
};

/// Builds a T2 grid. DenseLinear ignores n_points and places points at
/// t2_min, t2_min+1, ... up to t2_max (1 ms spacing). LogSpaced places
/// n_points geometrically between t2_min and t2_max inclusive.
T2Grid make_t2_grid(GridKind kind, int n_points, double t2_min_ms, double t2_max_ms);

/// The two grids every pipeline stage shares: mixtures are rendered on the
/// dense 1 ms grid over [1, 2000] ms and estimators work on 60 log-spaced
/// points over [10, 2000] ms.
const T2Grid& dense_grid();
const T2Grid& inference_grid();

/// Nonnegative weights over a T2Grid, normalized to unit total mass.
/// Weights are bin masses, not density values, so partial sums of weights are
/// fractions of total water directly.
struct T2Distribution {
    T2Grid grid;
    Eigen::VectorXd weights;

    /// Validates nonnegativity and unit mass (1e-9) without modifying weights.
    static T2Distribution checked(T2Grid grid, Eigen::VectorXd weights);
    /// Clamps negative round-off to zero and rescales to unit mass. Rejects
    /// inputs with genuinely negative entries or non-positive total mass.
    static T2Distribution renormalized(T2Grid grid, Eigen::VectorXd weights);
};

/// Uniform multi-echo CPMG acquisition: echo i (1-based) is read at
/// i * delta_te milliseconds.
struct EchoTrain {
    double delta_te_ms = 12.0;
    int n_echoes = 20;
    double flip_angle_deg = 180.0; // refocusing pulse, in [90, 180]
    double t1_ms = 1000.0;

    EchoTrain() = default;
    EchoTrain(double delta_te, int echoes, double flip_deg, double t1);

    double te_ms(int echo_index_1based) const { return echo_index_1based * delta_te_ms; }
    Eigen::VectorXd te_vector_ms() const;
    bool operator==(const EchoTrain& o) const {
        return delta_te_ms == o.delta_te_ms && n_echoes == o.n_echoes &&
               flip_angle_deg == o.flip_angle_deg && t1_ms == o.t1_ms;
    }
};

/// One measured (or simulated) echo amplitude per echo time.
struct MultiEchoSignal {
    Eigen::VectorXd values;
    EchoTrain echo_train;
};

/// Rebins a distribution living on the dense grid onto a coarser log-spaced
/// grid. Each target bin collects the dense mass between its geometric bin
/// edges; the outermost edges sit at the target grid bounds, so dense mass
/// outside [target.min, target.max] is truncated and absorbed by the final
/// renormalization.
T2Distribution downsample_distribution(const T2Distribution& dense, const T2Grid& target);

/// Divides a signal by its first echo so the first value is exactly 1.
MultiEchoSignal normalize_signal(const MultiEchoSignal& raw);

} // namespace t2dist
