#pragma once

#include <Eigen/Core>

#include "t2dist/core.hpp"

namespace t2dist {

/// Dictionary of simulated echo decays: column j holds the echo amplitudes of
/// a pure-T2 spin population at grid.values[j] under the given echo train.
struct DecayMatrix {
    Eigen::MatrixXd entries; // n_echoes x n_t2
    EchoTrain echo_train;
    T2Grid grid;
};

/// Echo-top amplitudes of a CPMG train (ideal 90 degree excitation, n_echoes
/// refocusing pulses of echo_train.flip_angle_deg) for a single T2 species,
/// computed with the extended-phase-graph recursion over configuration states
/// (F+_k, F-_k, Z_k). Longitudinal magnetization relaxes toward zero rather
/// than regrowing, so amplitudes are relative to unit initial magnetization
/// and a 180 degree train reduces exactly to exp(-TE_i / T2).
Eigen::VectorXd epg_echo_amplitudes(const EchoTrain& echo_train, double t2_ms);

/// Builds the decay dictionary column by column. Columns are independent;
/// `threads` > 1 parallelizes over grid points with identical results.
DecayMatrix build_dictionary(const EchoTrain& echo_train, const T2Grid& grid, int threads = 1);

/// Mixes dictionary columns by the distribution weights: the discrete forward
/// model mapping p(T2) to a multi-echo signal.
MultiEchoSignal forward_signal(const DecayMatrix& dict, const T2Distribution& p);

} // namespace t2dist
