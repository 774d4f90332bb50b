// Copyright 2026 The cvmaser Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "cvmaser/phase_space.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include "cvmaser/error.hpp"
#include "cvmaser/rng.hpp"

namespace cvmaser {

namespace {

void check_axis(const AxisSpec &a, const char *name) {
    if (a.count < 2) {
        fail(ErrorKind::InvalidArgument, std::string("grid axis ") + name + " needs at least 2 points");
    }
    if (!(a.max > a.min)) {
        fail(ErrorKind::InvalidArgument, std::string("grid axis ") + name + " needs max > min");
    }
}

DensityOperator reduce(const DensityOperator &rho, std::size_t mode) {
    rho.space().require_mode(mode);
    if (rho.space().num_factors() == 1) {
        return rho;
    }
    return partial_trace(rho, {mode});
}

}  // namespace

QGrid husimi_q(const DensityOperator &rho_full, std::size_t mode, const GridSpec &grid, unsigned threads) {
    check_axis(grid.x, "x");
    check_axis(grid.p, "p");
    DensityOperator rho = reduce(rho_full, mode);
    const Matrix &m = rho.matrix();
    int d = rho.space().cutoff(0);
    QGrid out;
    out.spec = grid;
    out.values.resize(grid.x.count, grid.p.count);

    auto row = [&](int ix) {
        for (int ip = 0; ip < grid.p.count; ++ip) {
            Vector c = coherent_amplitudes(Complex(grid.x.at(ix), grid.p.at(ip)), d);
            double q = c.dot(m * c).real() / std::numbers::pi;
            out.values(ix, ip) = std::max(q, 0.0);
        }
    };
    unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(grid.x.count)));
    if (workers == 1) {
        for (int ix = 0; ix < grid.x.count; ++ix) {
            row(ix);
        }
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w]() {
                for (int ix = static_cast<int>(w); ix < grid.x.count; ix += static_cast<int>(workers)) {
                    row(ix);
                }
            });
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    for (double x : {grid.x.min, grid.x.max}) {
        for (double p : {grid.p.min, grid.p.max}) {
            out.corner_leakage = std::max(out.corner_leakage, coherent_truncation_leakage(Complex(x, p), d));
        }
    }
    return out;
}

QGrid husimi_q(const StateVector &psi, std::size_t mode, const GridSpec &grid, unsigned threads) {
    return husimi_q(DensityOperator::from_pure(psi), mode, grid, threads);
}

Eigen::Matrix2d quadrature_covariance(const DensityOperator &rho_full, std::size_t mode) {
    DensityOperator rho = reduce(rho_full, mode);
    QuadraturePair q = quadrature_ops(rho.space(), 0);
    double mx = expectation(q.x, rho).real();
    double mp = expectation(q.p, rho).real();
    OperatorMatrix sym(rho.space(), 0.5 * (q.x.matrix() * q.p.matrix() + q.p.matrix() * q.x.matrix()));
    Eigen::Matrix2d cov;
    cov(0, 0) = variance(q.x, rho);
    cov(1, 1) = variance(q.p, rho);
    cov(0, 1) = cov(1, 0) = expectation(sym, rho).real() - mx * mp;
    return cov;
}

double non_gaussianity_witness(const StateVector &psi, std::size_t mode) {
    return quadrature_covariance(DensityOperator::from_pure(psi), mode).determinant() - 1.0 / 16.0;
}

GridSpec default_grid(const DensityOperator &rho_full, std::size_t mode) {
    DensityOperator rho = reduce(rho_full, mode);
    QuadraturePair q = quadrature_ops(rho.space(), 0);
    double mx = expectation(q.x, rho).real();
    double mp = expectation(q.p, rho).real();
    Eigen::Matrix2d cov = quadrature_covariance(rho, 0);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(cov);
    double sigma = std::sqrt(std::max(es.eigenvalues()(1), 0.0) + 0.25);
    double half = 4.0 * sigma;
    GridSpec g;
    g.x = AxisSpec{mx - half, mx + half, 121};
    g.p = AxisSpec{mp - half, mp + half, 121};
    return g;
}

QSummary q_summary(const QGrid &grid) {
    const auto &v = grid.values;
    if (v.size() == 0) {
        fail(ErrorKind::InvalidArgument, "empty Q grid");
    }
    Index bx = 0, bp = 0;
    v.maxCoeff(&bx, &bp);
    double cell = grid.spec.x.step() * grid.spec.p.step();
    double mass = 0, sx = 0, sp = 0;
    for (int ix = 0; ix < grid.spec.x.count; ++ix) {
        for (int ip = 0; ip < grid.spec.p.count; ++ip) {
            double w = v(ix, ip);
            mass += w;
            sx += w * grid.spec.x.at(ix);
            sp += w * grid.spec.p.at(ip);
        }
    }
    QSummary s;
    s.argmax_x = grid.spec.x.at(static_cast<int>(bx));
    s.argmax_p = grid.spec.p.at(static_cast<int>(bp));
    s.total_mass = mass * cell;
    s.mean_x = mass > 0 ? sx / mass : 0.0;
    s.mean_p = mass > 0 ? sp / mass : 0.0;
    Eigen::Matrix2d c = Eigen::Matrix2d::Zero();
    for (int ix = 0; ix < grid.spec.x.count; ++ix) {
        for (int ip = 0; ip < grid.spec.p.count; ++ip) {
            double w = v(ix, ip);
            double dx = grid.spec.x.at(ix) - s.mean_x;
            double dp = grid.spec.p.at(ip) - s.mean_p;
            c(0, 0) += w * dx * dx;
            c(0, 1) += w * dx * dp;
            c(1, 1) += w * dp * dp;
        }
    }
    c(1, 0) = c(0, 1);
    s.covariance = mass > 0 ? Eigen::Matrix2d(c / mass) : c;
    return s;
}

double principal_variance_ratio(const Eigen::Matrix2d &cov) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(cov);
    return es.eigenvalues()(1) / es.eigenvalues()(0);
}

std::vector<double> homodyne_sample(const DensityOperator &rho_full, std::size_t mode, double theta,
                                    std::size_t n_samples, std::uint64_t seed) {
    if (n_samples == 0) {
        fail(ErrorKind::InvalidArgument, "homodyne sampling needs n_samples > 0");
    }
    DensityOperator rho = reduce(rho_full, mode);
    int d = rho.space().cutoff(0);
    Matrix xt = std::cos(theta) * local_x(d) + std::sin(theta) * local_p(d);
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (xt + xt.adjoint()));
    const Matrix &vecs = es.eigenvectors();
    std::vector<double> cdf(static_cast<std::size_t>(d));
    double acc = 0;
    for (int k = 0; k < d; ++k) {
        acc += std::max(0.0, vecs.col(k).dot(rho.matrix() * vecs.col(k)).real());
        cdf[static_cast<std::size_t>(k)] = acc;
    }
    Rng rng(seed);
    std::vector<double> out;
    out.reserve(n_samples);
    for (std::size_t s = 0; s < n_samples; ++s) {
        double u = rng.uniform() * acc;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
        out.push_back(es.eigenvalues()(static_cast<Index>(k)));
    }
    return out;
}

std::vector<double> homodyne_sample(const StateVector &psi, std::size_t mode, double theta, std::size_t n_samples,
                                    std::uint64_t seed) {
    return homodyne_sample(DensityOperator::from_pure(psi), mode, theta, n_samples, seed);
}

}  // namespace cvmaser
