#pragma once

// Independent reference implementations used only by tests. Each oracle
// computes the quantity a production module is responsible for via a
// different route (brute force, ensemble simulation, exhaustive search), so
// agreement is evidence rather than tautology.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "t2dist/core.hpp"

namespace t2dist::oracle {

/// Brute-force CPMG simulation over an ensemble of dephasing isochromats.
/// Each isochromat precesses by its own angle every half echo spacing;
/// relaxation matches the production model (no longitudinal regrowth).
inline Eigen::VectorXd isochromat_cpmg(const EchoTrain& train, double t2_ms, int n_iso) {
    const double tau = train.delta_te_ms / 2.0;
    const double e2 = std::exp(-tau / t2_ms);
    const double e1 = std::exp(-tau / train.t1_ms);
    const double alpha = train.flip_angle_deg * M_PI / 180.0;
    const double ca = std::cos(alpha), sa = std::sin(alpha);

    std::vector<double> mx(n_iso, 1.0), my(n_iso, 0.0), mz(n_iso, 0.0); // after ideal 90
    std::vector<double> cphi(n_iso), sphi(n_iso);
    for (int j = 0; j < n_iso; ++j) {
        const double phi = 2.0 * M_PI * (j + 0.5) / n_iso;
        cphi[j] = std::cos(phi);
        sphi[j] = std::sin(phi);
    }

    auto half_interval = [&] {
        for (int j = 0; j < n_iso; ++j) {
            double x = mx[j] * e2, y = my[j] * e2;
            mz[j] *= e1;
            mx[j] = x * cphi[j] - y * sphi[j];
            my[j] = x * sphi[j] + y * cphi[j];
        }
    };

    Eigen::VectorXd amps(train.n_echoes);
    for (int echo = 0; echo < train.n_echoes; ++echo) {
        half_interval();
        for (int j = 0; j < n_iso; ++j) { // rotate about x by alpha
            const double y = my[j], z = mz[j];
            my[j] = y * ca + z * sa;
            mz[j] = -y * sa + z * ca;
        }
        half_interval();
        double sx = 0.0, sy = 0.0;
        for (int j = 0; j < n_iso; ++j) {
            sx += mx[j];
            sy += my[j];
        }
        amps[echo] = std::hypot(sx / n_iso, sy / n_iso);
    }
    return amps;
}

/// Exhaustive-support nonnegative least squares: solves the unconstrained
/// problem on every column subset and keeps the feasible minimizer. Only
/// viable for small n.
inline Eigen::VectorXd nnls_by_enumeration(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
    const int n = static_cast<int>(A.cols());
    Eigen::VectorXd best = Eigen::VectorXd::Zero(n);
    double best_cost = b.squaredNorm(); // empty support
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<int> cols;
        for (int j = 0; j < n; ++j)
            if (mask & (1u << j)) cols.push_back(j);
        Eigen::MatrixXd As(A.rows(), cols.size());
        for (std::size_t c = 0; c < cols.size(); ++c) As.col(c) = A.col(cols[c]);
        Eigen::VectorXd z = As.colPivHouseholderQr().solve(b);
        if ((z.array() < -1e-12).any()) continue;
        const double cost = (As * z - b).squaredNorm();
        if (cost < best_cost - 1e-14) {
            best_cost = cost;
            best.setZero();
            for (std::size_t c = 0; c < cols.size(); ++c) best[cols[c]] = std::max(0.0, z[c]);
        }
    }
    return best;
}

/// Projected-gradient solver (FISTA with restart) for
/// min ||A x - b||^2 s.t. x >= 0. Independent route to the same optimum.
inline Eigen::VectorXd nnls_projected_gradient(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                               int max_iter = 200000, double tol = 1e-13) {
    const Eigen::MatrixXd AtA = A.transpose() * A;
    const Eigen::VectorXd Atb = A.transpose() * b;
    // Lipschitz constant of the gradient via a few power iterations.
    Eigen::VectorXd v = Eigen::VectorXd::Ones(A.cols()).normalized();
    double lip = 1.0;
    for (int it = 0; it < 50; ++it) {
        v = (AtA * v).eval();
        lip = v.norm();
        if (lip == 0.0) return Eigen::VectorXd::Zero(A.cols());
        v /= lip;
    }
    const double step = 1.0 / (2.0 * lip * 1.01);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(A.cols()), y = x, x_prev = x;
    double t = 1.0;
    for (int it = 0; it < max_iter; ++it) {
        Eigen::VectorXd grad = 2.0 * (AtA * y - Atb);
        x = (y - step * grad).cwiseMax(0.0);
        const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
        y = x + ((t - 1.0) / t_next) * (x - x_prev);
        if ((x - x_prev).lpNorm<Eigen::Infinity>() < tol && it > 100) break;
        if ((x - x_prev).dot(grad) > 0) { // restart acceleration
            y = x;
            t = 1.0;
        } else {
            t = t_next;
        }
        x_prev = x;
    }
    return x;
}

/// Exact minimum-cost transport between two histograms via successive
/// shortest augmenting paths on the bipartite supply/demand graph.
inline double min_cost_transport(const Eigen::VectorXd& supply, const Eigen::VectorXd& demand,
                                 const Eigen::MatrixXd& cost) {
    const int n = static_cast<int>(supply.size());
    const int m = static_cast<int>(demand.size());
    double total = 0.0;
    // Min-cost flow with Bellman-Ford path search; every augmentation
    // saturates a source or sink edge, so at most n + m rounds.
    struct Edge {
        int to;
        double cap;
        double cost;
        int rev;
    };
    const int source = n + m, sink = n + m + 1, nodes = n + m + 2;
    std::vector<std::vector<Edge>> g(nodes);
    auto add_edge = [&](int a, int b, double cap, double c) {
        g[a].push_back({b, cap, c, static_cast<int>(g[b].size())});
        g[b].push_back({a, 0.0, -c, static_cast<int>(g[a].size() - 1)});
    };
    for (int i = 0; i < n; ++i) add_edge(source, i, supply[i], 0.0);
    for (int j = 0; j < m; ++j) add_edge(n + j, sink, demand[j], 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) add_edge(i, n + j, std::numeric_limits<double>::infinity(), cost(i, j));

    const double eps = 1e-15;
    for (;;) {
        // Bellman-Ford shortest path from source on the residual graph.
        std::vector<double> dist(nodes, std::numeric_limits<double>::infinity());
        std::vector<int> prev_node(nodes, -1), prev_edge(nodes, -1);
        dist[source] = 0.0;
        for (int round = 0; round < nodes; ++round) {
            bool changed = false;
            for (int u = 0; u < nodes; ++u) {
                if (!std::isfinite(dist[u])) continue;
                for (int e = 0; e < static_cast<int>(g[u].size()); ++e) {
                    const Edge& ed = g[u][e];
                    if (ed.cap <= eps) continue;
                    if (dist[u] + ed.cost < dist[ed.to] - 1e-18) {
                        dist[ed.to] = dist[u] + ed.cost;
                        prev_node[ed.to] = u;
                        prev_edge[ed.to] = e;
                        changed = true;
                    }
                }
            }
            if (!changed) break;
        }
        if (!std::isfinite(dist[sink])) break;
        double push = std::numeric_limits<double>::infinity();
        for (int v2 = sink; v2 != source; v2 = prev_node[v2])
            push = std::min(push, g[prev_node[v2]][prev_edge[v2]].cap);
        if (push <= eps) break;
        for (int v2 = sink; v2 != source; v2 = prev_node[v2]) {
            Edge& ed = g[prev_node[v2]][prev_edge[v2]];
            ed.cap -= push;
            g[v2][ed.rev].cap += push;
            total += push * ed.cost;
        }
    }
    return total;
}

/// Dense-grid rebinning by direct edge search; independent of the production
/// single-pass implementation.
inline Eigen::VectorXd rebin_by_search(const T2Distribution& dense, const T2Grid& target) {
    const int nt = target.size();
    std::vector<double> edges(nt + 1);
    edges[0] = target.values.front();
    for (int j = 1; j < nt; ++j) edges[j] = std::sqrt(target.values[j - 1] * target.values[j]);
    edges[nt] = target.values.back();
    Eigen::VectorXd out = Eigen::VectorXd::Zero(nt);
    for (int i = 0; i < dense.grid.size(); ++i) {
        const double t2 = dense.grid.values[i];
        if (t2 < edges.front() || t2 > edges.back()) continue;
        int lo = 0, hi = nt - 1;
        while (lo < hi) { // last bin whose left edge is <= t2
            const int mid = (lo + hi + 1) / 2;
            if (edges[mid] <= t2)
                lo = mid;
            else
                hi = mid - 1;
        }
        out[lo] += dense.weights[i];
    }
    return out / out.sum();
}

} // namespace t2dist::oracle
