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

#ifndef CVMASER_PHASE_SPACE_HPP
#define CVMASER_PHASE_SPACE_HPP

#include <cstdint>
#include <vector>

#include "cvmaser/fock.hpp"

namespace cvmaser {

struct AxisSpec {
    double min = -4.0;
    double max = 4.0;
    int count = 121;

    double step() const {
        return (max - min) / (count - 1);
    }
    double at(int k) const {
        return min + k * step();
    }
};

struct GridSpec {
    AxisSpec x;
    AxisSpec p;
};

/// Q(x, p) sampled on a grid; values(ix, ip).
struct QGrid {
    GridSpec spec;
    Eigen::MatrixXd values;
    /// Largest truncation leakage of the probe coherent states, which is
    /// attained at a grid corner.
    double corner_leakage = 0.0;
};

/// Q(α) = ⟨α|ρ|α⟩/π with α = x + ip, using truncated coherent vectors.
/// Other modes are traced out. Rows are split across `threads` workers.
QGrid husimi_q(const DensityOperator &rho, std::size_t mode, const GridSpec &grid, unsigned threads = 1);
QGrid husimi_q(const StateVector &psi, std::size_t mode, const GridSpec &grid, unsigned threads = 1);

/// 121 × 121 grid centred on the state's mean, spanning ±4 standard
/// deviations of its Q distribution along the wider axis.
GridSpec default_grid(const DensityOperator &rho, std::size_t mode);

struct QSummary {
    double argmax_x;
    double argmax_p;
    double total_mass;
    double mean_x;
    double mean_p;
    /// Covariance of the normalized grid distribution in (x, p).
    Eigen::Matrix2d covariance;
};

QSummary q_summary(const QGrid &grid);

/// Ratio of the larger to the smaller eigenvalue of a 2×2 covariance.
double principal_variance_ratio(const Eigen::Matrix2d &cov);

/// Covariance of (x̂, p̂) on one mode, symmetrized cross term.
Eigen::Matrix2d quadrature_covariance(const DensityOperator &rho, std::size_t mode);

/// det(cov) − 1/16. Zero for pure Gaussian states and positive for every
/// other pure state.
double non_gaussianity_witness(const StateVector &psi, std::size_t mode);

/// Samples of x̂^(θ) drawn from the spectral measure of the truncated
/// operator in the reduced state of the mode.
std::vector<double> homodyne_sample(const DensityOperator &rho, std::size_t mode, double theta,
                                    std::size_t n_samples, std::uint64_t seed);
std::vector<double> homodyne_sample(const StateVector &psi, std::size_t mode, double theta,
                                    std::size_t n_samples, std::uint64_t seed);

}  // namespace cvmaser

#endif
