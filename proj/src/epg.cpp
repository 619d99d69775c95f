#include "t2dist/epg.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include "t2dist/errors.hpp"
#include "t2dist/parallel.hpp"

namespace t2dist {

namespace {

constexpr double kPi = 3.141592653589793238462643;

using cd = std::complex<double>;

// Workspace for one T2 evaluation; reused across grid points per thread.
struct EpgState {
    std::vector<cd> fp, fm, z;

    void reset(int n_states) {
        fp.assign(n_states, cd(0.0, 0.0));
        fm.assign(n_states, cd(0.0, 0.0));
        z.assign(n_states, cd(0.0, 0.0));
        fp[0] = cd(1.0, 0.0); // ideal 90 degree excitation of unit magnetization
    }
};

// Half-interval relaxation followed by one unit of gradient dephasing:
// F+ orders shift up, F- orders shift down, and the new F+_0 is the
// conjugate of the state arriving at F-_0 from order one.
void relax_and_shift(EpgState& s, int active, double e2, double e1) {
    for (int k = 0; k < active; ++k) {
        s.fp[k] *= e2;
        s.fm[k] *= e2;
        s.z[k] *= e1;
    }
    const int top = static_cast<int>(s.fp.size()) - 1;
    for (int k = std::min(active, top); k >= 1; --k) s.fp[k] = s.fp[k - 1];
    for (int k = 0; k < top; ++k) s.fm[k] = s.fm[k + 1];
    s.fm[top] = cd(0.0, 0.0);
    s.fp[0] = std::conj(s.fm[0]);
}

} // namespace

Eigen::VectorXd epg_echo_amplitudes(const EchoTrain& echo_train, double t2_ms) {
    if (!(t2_ms > 0.0)) throw ParameterError("epg_echo_amplitudes: T2 must be positive");
    if (!(echo_train.t1_ms > 0.0)) throw ParameterError("epg_echo_amplitudes: T1 must be positive");
    if (!(echo_train.delta_te_ms > 0.0) || echo_train.n_echoes < 1)
        throw ParameterError("epg_echo_amplitudes: invalid echo train");

    const int n = echo_train.n_echoes;
    const int n_states = n + 1; // orders above n cannot refocus within the train
    const double tau = echo_train.delta_te_ms / 2.0;
    const double e2 = std::exp(-tau / t2_ms);
    const double e1 = std::exp(-tau / echo_train.t1_ms);

    // Refocusing rotation about x by alpha, acting on (F+_k, F-_k, Z_k).
    const double alpha = echo_train.flip_angle_deg * kPi / 180.0;
    const double cos_half2 = std::cos(alpha / 2.0) * std::cos(alpha / 2.0);
    const double sin_half2 = std::sin(alpha / 2.0) * std::sin(alpha / 2.0);
    const double sin_a = std::sin(alpha);
    const double cos_a = std::cos(alpha);
    const cd t02(0.0, -sin_a), t12(0.0, sin_a);
    const cd t20(0.0, -0.5 * sin_a), t21(0.0, 0.5 * sin_a);

    EpgState s;
    s.reset(n_states);

    Eigen::VectorXd amplitudes(n);
    int active = 1; // number of populated orders; grows by one per shift
    for (int echo = 0; echo < n; ++echo) {
        relax_and_shift(s, active, e2, e1);
        active = std::min(active + 1, n_states);

        for (int k = 0; k < active; ++k) {
            const cd fp = s.fp[k], fm = s.fm[k], z = s.z[k];
            s.fp[k] = cos_half2 * fp + sin_half2 * fm + t02 * z;
            s.fm[k] = sin_half2 * fp + cos_half2 * fm + t12 * z;
            s.z[k] = t20 * fp + t21 * fm + cos_a * z;
        }

        relax_and_shift(s, active, e2, e1);
        active = std::min(active + 1, n_states);
        amplitudes[echo] = std::abs(s.fp[0]);
    }
    return amplitudes;
}

DecayMatrix build_dictionary(const EchoTrain& echo_train, const T2Grid& grid, int threads) {
    if (grid.size() < 1) throw ParameterError("build_dictionary: empty grid");
    DecayMatrix dict;
    dict.echo_train = echo_train;
    dict.grid = grid;
    dict.entries.resize(echo_train.n_echoes, grid.size());
    parallel_for(static_cast<std::size_t>(grid.size()), threads, [&](std::size_t j) {
        dict.entries.col(static_cast<Eigen::Index>(j)) =
            epg_echo_amplitudes(echo_train, grid.values[j]);
    });
    return dict;
}

MultiEchoSignal forward_signal(const DecayMatrix& dict, const T2Distribution& p) {
    if (!(p.grid == dict.grid))
        throw ParameterError("forward_signal: distribution grid does not match dictionary grid");
    MultiEchoSignal s;
    s.echo_train = dict.echo_train;
    s.values = dict.entries * p.weights;
    return s;
}

} // namespace t2dist
